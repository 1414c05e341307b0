import logging
import sys
from pprint import pformat
from types import MethodType
from typing import Dict, List, Optional, Set, Union, cast

from sspt import APPLICATION_NAME
from sspt.settings import SsptSettings

if sys.version_info >= (3, 8):
    from typing import Protocol
else:
    Protocol = object


class SsptLoggerProtocol(Protocol):
    def setLevel(self, level: int) -> None: ...

    def debug(self, message: str, *args, **kwargs) -> None: ...
    def info(self, message: str, *args, **kwargs) -> None: ...
    def success(self, message: str, *args, **kwargs) -> None: ...
    def warning(self, message: str, *args, **kwargs) -> None: ...
    def error(self, message: str, *args, **kwargs) -> None: ...
    def exception(
        self,
        message: str,
        *args,
        exc_info: Optional[Exception] = None,
        **kwargs,
    ) -> None: ...
    def critical(self, message: str, *args, **kwargs) -> None: ...
    def fatal(self, message: str, *args, **kwargs) -> None: ...


SUCCESS_LEVEL = logging.INFO + 1
logging.addLevelName(SUCCESS_LEVEL, "SUCCESS")


def _log_success(self, message: str, *args, **kwargs) -> None:
    if self.isEnabledFor(SUCCESS_LEVEL):
        self._log(SUCCESS_LEVEL, message, args, **kwargs)


class SsptLoggerHandler(logging.StreamHandler):
    """Writes tagged records to stderr, stdout is kept for summaries"""

    def __init__(self) -> None:
        super().__init__(stream=sys.stderr)
        self.setFormatter(logging.Formatter("%(message)s"))

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        tag = f"[{record.levelname}]"
        return f"{record.name} {tag:<10} {message}"

    def emit(self, record: logging.LogRecord) -> None:
        # Streams swapped by test runners must be picked up
        self.stream = sys.stderr
        super().emit(record)


def format_container_data(data: Union[List, Set, Dict]) -> str:
    return pformat(data)


def init_logger() -> SsptLoggerProtocol:
    logger = logging.getLogger(APPLICATION_NAME)
    logger.propagate = False

    logger.success = MethodType(_log_success, logger)  # type: ignore

    if not any(
        isinstance(handler, SsptLoggerHandler) for handler in logger.handlers
    ):
        logger.addHandler(SsptLoggerHandler())

    is_debug_enabled = SsptSettings().is_debug_enabled
    logger.setLevel(logging.DEBUG if is_debug_enabled else logging.INFO)
    if is_debug_enabled:
        logger.warning("Debug messages are enabled")

    return cast(SsptLoggerProtocol, logger)


def update_level() -> None:
    is_debug_enabled = SsptSettings().is_debug_enabled
    logger.setLevel(logging.DEBUG if is_debug_enabled else logging.INFO)


logger = init_logger()
