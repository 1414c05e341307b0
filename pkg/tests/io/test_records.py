import json
from pathlib import Path

from sspt.engine import ParameterRanges, TrackingFlag
from sspt.exceptions import ErrorCode, FormatError, SsptIoError
from sspt.io import (
    ranges_path,
    read_ranges,
    read_records,
    record_to_dict,
    write_ranges,
    write_records,
)
from sspt.io.records import RECORD_FIELDS
from tests.sspt_testcase import SsptTestCase


class TestRecords(SsptTestCase):
    def setUp(self) -> None:
        super().setUp()
        self.records = [
            self.record(
                step_size=0.4321, radius=7.123456789, streamline_index=0
            ),
            self.record(
                accepted=False,
                flags=(TrackingFlag.TOO_SHORT, TrackingFlag.MISSED_INCLUSION),
            ),
            self.record(fod_threshold=0.15, streamline_index=1),
        ]

    def test_round_trip(self) -> None:
        path = self.create_temp_file(".jsonl")
        write_records(path, self.records)
        self.assertEqual(read_records(path), self.records)

    def test_one_object_per_line(self) -> None:
        path = self.create_temp_file(".jsonl")
        write_records(path, self.records)
        lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(len(lines), 3)
        for line in lines:
            self.assertEqual(tuple(json.loads(line)), RECORD_FIELDS)

    def test_dict_layout(self) -> None:
        data = record_to_dict(self.records[1])
        self.assertEqual(data["seed"], [1.0, 2.0, 3.0])
        self.assertEqual(data["flags"], ["MissedInclusion", "TooShort"])
        self.assertIs(data["accepted"], False)
        self.assertIsNone(data["streamline_index"])
        self.assertEqual(data["duration_us"], 150)

    def test_append(self) -> None:
        path = self.create_temp_file(".jsonl")
        write_records(path, self.records[:1])
        write_records(path, self.records[1:], append=True)
        self.assertEqual(read_records(path), self.records)

    def test_blank_lines_skipped(self) -> None:
        path = self.create_temp_file(".jsonl")
        write_records(path, self.records)
        content = path.read_text(encoding="utf-8").replace("\n", "\n\n")
        path.write_text(content, encoding="utf-8")
        self.assertEqual(read_records(path), self.records)

    def test_empty_file(self) -> None:
        path = self.create_temp_file(".jsonl")
        write_records(path, [])
        self.assertEqual(read_records(path), [])

    def test_malformed_line(self) -> None:
        valid = json.dumps(record_to_dict(self.records[0]))
        unknown_flag = record_to_dict(self.records[1])
        unknown_flag["flags"] = ["Wandered"]
        missing = record_to_dict(self.records[0])
        del missing["radius"]
        bad_seed = record_to_dict(self.records[0])
        bad_seed["seed"] = [1.0, 2.0]

        cases = [
            ("unknown flag", json.dumps(unknown_flag)),
            ("missing field", json.dumps(missing)),
            ("seed", json.dumps(bad_seed)),
            ("not json", "{accepted: true"),
            ("not an object", "[1, 2, 3]"),
        ]
        for name, line in cases:
            path = self.create_temp_file(".jsonl")
            path.write_text(f"{valid}\n{line}\n", encoding="utf-8")
            with self.subTest(name), self.assertRaises(
                FormatError
            ) as context:
                read_records(path)
            self.assertEqual(
                context.exception.code, ErrorCode.RecordFormatError
            )
            self.assertIn("at line 2", context.exception.log_message)

    def test_invalid_utf8(self) -> None:
        valid = json.dumps(record_to_dict(self.records[0])).encode()
        path = self.create_temp_file(".jsonl")
        path.write_bytes(valid + b'\n{"seed": "\xff\xfe"}\n')
        with self.assertRaises(FormatError) as context:
            read_records(path)
        self.assertEqual(context.exception.code, ErrorCode.RecordFormatError)
        self.assertIn("at line 2", context.exception.log_message)

    def test_missing_file(self) -> None:
        with self.assertRaises(SsptIoError):
            read_records(self.create_temp_file(".jsonl"))


class TestRanges(SsptTestCase):
    def test_round_trip(self) -> None:
        ranges = ParameterRanges(
            step_min=0.4,
            step_max=0.6,
            radius_min=2.0,
            radius_max=100.0,
            threshold_max=0.2,
            max_seeds=60,
            reject_at_max_length=False,
        )
        path = self.create_temp_file(".ranges.json")
        write_ranges(path, ranges)
        self.assertEqual(read_ranges(path), ranges)

    def test_sidecar_name(self) -> None:
        self.assertEqual(
            ranges_path(Path("/data/run/records.jsonl")),
            Path("/data/run/records.ranges.json"),
        )

    def test_malformed(self) -> None:
        cases = [
            ("not json", "{step_min: 0.4"),
            ("not an object", "[0.4, 0.6]"),
            ("unknown field", '{"step_min": 0.4, "curvature": 1}'),
            (
                "invalid ranges",
                '{"step_min": 0.6, "step_max": 0.4,'
                ' "radius_min": 2.0, "radius_max": 10.0}',
            ),
        ]
        for name, content in cases:
            path = self.create_temp_file(".ranges.json")
            path.write_text(content, encoding="utf-8")
            with self.subTest(name), self.assertRaises(
                FormatError
            ) as context:
                read_ranges(path)
            self.assertEqual(
                context.exception.code, ErrorCode.RecordFormatError
            )

    def test_missing_file(self) -> None:
        with self.assertRaises(SsptIoError):
            read_ranges(self.create_temp_file(".ranges.json"))
