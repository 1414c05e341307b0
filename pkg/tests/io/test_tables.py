import numpy as np

from sspt.analysis import (
    Cluster,
    RangeSuggestion,
    histogram,
    joint_histogram,
)
from sspt.engine import ParameterName
from sspt.exceptions import ErrorCode, FormatError
from sspt.io import (
    read_cluster_assignments,
    read_csv_rows,
    write_cluster_assignments,
    write_histogram,
    write_joint_histogram,
    write_suggestion,
)
from sspt.io.tables import (
    ASSIGNMENT_COLUMNS,
    HISTOGRAM_COLUMNS,
    JOINT_HISTOGRAM_COLUMNS,
    SUGGESTION_COLUMNS,
)
from tests.sspt_testcase import SsptTestCase


class TestTables(SsptTestCase):
    def setUp(self) -> None:
        super().setUp()
        self.records = [
            self.record(radius=radius, accepted=radius < 6.0)
            for radius in (2.5, 3.0, 5.5, 7.0, 9.5, 4.0)
        ]

    def test_histogram(self) -> None:
        hist = histogram(
            self.records, ParameterName.RADIUS, 4, value_range=(2.0, 10.0)
        )
        path = self.create_temp_file(".csv")
        write_histogram(path, hist)

        header = path.read_text(encoding="utf-8").splitlines()[0]
        self.assertEqual(header, ",".join(HISTOGRAM_COLUMNS))

        rows = read_csv_rows(path, HISTOGRAM_COLUMNS)
        self.assertEqual(len(rows), 4)
        self.assertEqual(float(rows[0]["bin_lo"]), 2.0)
        self.assertEqual(float(rows[-1]["bin_hi"]), 10.0)
        np.testing.assert_array_equal(
            [int(row["attempted"]) for row in rows], hist.attempted_counts
        )
        np.testing.assert_array_equal(
            [int(row["accepted"]) for row in rows], hist.accepted_counts
        )
        self.assertEqual(float(rows[0]["rate"]), 1.0)

    def test_joint_histogram(self) -> None:
        joint = joint_histogram(
            self.records, ParameterName.STEP_SIZE, ParameterName.RADIUS, 3
        )
        path = self.create_temp_file(".csv")
        write_joint_histogram(path, joint)
        rows = read_csv_rows(path, JOINT_HISTOGRAM_COLUMNS)
        self.assertEqual(len(rows), 9)
        self.assertEqual(sum(int(row["attempted"]) for row in rows), 6)

    def test_suggestion(self) -> None:
        path = self.create_temp_file(".csv")
        write_suggestion(
            path, RangeSuggestion(ParameterName.RADIUS, 2.0, 12.5, 0.96)
        )
        rows = read_csv_rows(path, SUGGESTION_COLUMNS)
        self.assertEqual(
            rows,
            [
                {
                    "param": "radius",
                    "suggested_min": "2.0",
                    "suggested_max": "12.5",
                    "support_fraction": "0.96",
                }
            ],
        )

    def test_cluster_assignments(self) -> None:
        path = self.create_temp_file(".csv")
        write_cluster_assignments(
            path, [Cluster(0, (0, 3, 4)), Cluster(1, (2, 1))]
        )

        lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], ",".join(ASSIGNMENT_COLUMNS))
        self.assertEqual(lines[1:], ["0,0", "1,1", "2,1", "3,0", "4,0"])

        clusters = read_cluster_assignments(path)
        self.assertEqual([cluster.id for cluster in clusters], [0, 1])
        self.assertEqual(clusters[0].member_indices, (0, 3, 4))
        self.assertEqual(clusters[1].member_indices, (1, 2))
        self.assertIsNone(clusters[0].centroid)

    def test_missing_columns(self) -> None:
        path = self.create_temp_file(".csv")
        path.write_text("streamline_index\n0\n", encoding="utf-8")
        with self.assertRaises(FormatError) as context:
            read_cluster_assignments(path)
        self.assertEqual(context.exception.code, ErrorCode.TableFormatError)

    def test_bad_value(self) -> None:
        path = self.create_temp_file(".csv")
        path.write_text(
            "streamline_index,cluster_id\n0,0\n1,one\n", encoding="utf-8"
        )
        with self.assertRaises(FormatError) as context:
            read_cluster_assignments(path)
        self.assertIn("at line 3", context.exception.log_message)
