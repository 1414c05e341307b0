import os
from typing import Optional


class SsptSettings:
    """Convenience class for working with application settings

    Values live in ``SSPT_*`` environment variables, so a setting changed
    through a setter is visible to every instance in the process.
    """

    __prefix: str

    def __init__(self, prefix: str = "SSPT_") -> None:
        self.__prefix = prefix

    @property
    def is_debug_enabled(self) -> bool:
        return self.__bool_value("DEBUG", default=False)

    @is_debug_enabled.setter
    def is_debug_enabled(self, value: bool) -> None:
        self.__set_value("DEBUG", "1" if value else "0")

    @property
    def batch_size(self) -> int:
        """Attempts dispatched per worker-pool round"""
        return max(1, self.__int_value("BATCH_SIZE", default=256))

    @batch_size.setter
    def batch_size(self, value: int) -> None:
        self.__set_value("BATCH_SIZE", str(value))

    @property
    def default_threads(self) -> int:
        return max(1, self.__int_value("THREADS", default=1))

    @default_threads.setter
    def default_threads(self, value: int) -> None:
        self.__set_value("THREADS", str(value))

    @property
    def histogram_bins(self) -> int:
        return max(1, self.__int_value("HISTOGRAM_BINS", default=20))

    @histogram_bins.setter
    def histogram_bins(self, value: int) -> None:
        self.__set_value("HISTOGRAM_BINS", str(value))

    @property
    def resample_points(self) -> int:
        """Points per streamline used by the clustering distance"""
        return max(2, self.__int_value("RESAMPLE_POINTS", default=12))

    @resample_points.setter
    def resample_points(self, value: int) -> None:
        self.__set_value("RESAMPLE_POINTS", str(value))

    def __value(self, key: str) -> Optional[str]:
        value = os.environ.get(self.__prefix + key)
        if value is None or value.strip() == "":
            return None
        return value.strip()

    def __set_value(self, key: str, value: str) -> None:
        os.environ[self.__prefix + key] = value

    def __bool_value(self, key: str, *, default: bool) -> bool:
        value = self.__value(key)
        if value is None:
            return default
        return value.lower() in ("1", "true", "yes", "on")

    def __int_value(self, key: str, *, default: int) -> int:
        value = self.__value(key)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            return default
