import sys
import uuid
from enum import IntEnum, auto
from functools import lru_cache
from typing import Optional


class ErrorCode(IntEnum):
    NoError = -1

    SsptError = 0
    ContractViolation = auto()

    ParameterError = 100
    LevelOutOfRange = auto()
    OddShOrder = auto()
    RadiusBelowStep = auto()
    UnknownParameter = auto()
    PointCountMismatch = auto()
    DegenerateStreamline = auto()
    PhantomGeometry = auto()

    ConfigurationError = 200
    EmptySeedMask = auto()
    InvalidRanges = auto()
    MissingFlag = auto()

    FormatError = 300
    NiftiFormatError = auto()
    TckFormatError = auto()
    RecordFormatError = auto()
    TableFormatError = auto()
    ShCoefficientCount = auto()

    IoError = 400

    AnalysisError = 500
    ConsistencyError = auto()
    RefinementError = auto()

    @property
    def is_parameter_error(self) -> bool:
        return self.ParameterError <= self < self.ConfigurationError

    @property
    def is_configuration_error(self) -> bool:
        return self.ConfigurationError <= self < self.FormatError

    @property
    def is_format_error(self) -> bool:
        return self.FormatError <= self < self.IoError

    @property
    def is_io_error(self) -> bool:
        return self.IoError <= self < self.AnalysisError

    @property
    def is_analysis_error(self) -> bool:
        return self.AnalysisError <= self

    @property
    def is_usage_error(self) -> bool:
        return self.is_parameter_error or self.is_configuration_error

    @property
    def group(self) -> "ErrorCode":
        if self.is_parameter_error:
            return self.ParameterError

        if self.is_configuration_error:
            return self.ConfigurationError

        if self.is_format_error:
            return self.FormatError

        if self.is_io_error:
            return self.IoError

        if self.is_analysis_error:
            return self.AnalysisError

        return self.SsptError


class SsptException(Exception):
    __error_id: str
    __log_message: str
    __user_message: Optional[str]
    __detail: Optional[str]
    __code: ErrorCode

    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.SsptError,
    ) -> None:
        self.__error_id = str(uuid.uuid4())
        self.__code = code
        self.__log_message = (
            log_message
            if log_message is not None
            else _default_log_message(self.code)
        ).strip()

        super().__init__(self.__log_message)

        if self.code != ErrorCode.SsptError:
            self.add_note(f"Internal code: {self.code.name}")

        self.__user_message = (
            user_message
            if user_message is not None
            else default_user_message(self.code)
        )
        if self.__user_message is not None:
            self.__user_message = self.__user_message.strip()

        self.__detail = detail
        if self.__detail is not None:
            self.__detail = self.__detail.strip()
            self.add_note("Detail: " + self.__detail)

    @property
    def error_id(self) -> str:
        return self.__error_id

    @property
    def log_message(self) -> str:
        return self.__log_message

    @property
    def user_message(self) -> Optional[str]:
        return self.__user_message

    @property
    def detail(self) -> Optional[str]:
        return self.__detail

    @property
    def code(self) -> ErrorCode:
        return self.__code

    if sys.version_info < (3, 11):

        def add_note(self, note: str) -> None:
            if not isinstance(note, str):
                message = "Note must be a string"
                raise TypeError(message)

            message: str = self.args[0]
            self.args = (f"{message}\n{note}",)


class SsptError(SsptException):
    pass


class ContractViolation(SsptError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.ContractViolation,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )


class ParameterError(SsptError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.ParameterError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )


class ConfigurationError(SsptError):
    __flag: Optional[str]

    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        flag: Optional[str] = None,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.ConfigurationError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )
        self.__flag = flag
        if flag is not None:
            self.add_note(f"Flag: {flag}")

    @property
    def flag(self) -> Optional[str]:
        return self.__flag


class FormatError(SsptError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.FormatError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )


class SsptIoError(SsptError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.IoError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )

    @staticmethod
    def from_os_error(
        error: OSError, *, log_message: Optional[str] = None
    ) -> "SsptIoError":
        io_error = SsptIoError(
            log_message
            if log_message is not None
            else f"Can't access {error.filename}"
        )
        io_error.__cause__ = error
        if error.strerror is not None:
            io_error.add_note(f"Reason: {error.strerror}")
        return io_error


class AnalysisError(SsptError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.AnalysisError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )


class ConsistencyError(AnalysisError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.ConsistencyError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )


class RefinementError(AnalysisError):
    def __init__(
        self,
        log_message: Optional[str] = None,
        *,
        user_message: Optional[str] = None,
        detail: Optional[str] = None,
        code: ErrorCode = ErrorCode.RefinementError,
    ) -> None:
        super().__init__(
            log_message, user_message=user_message, detail=detail, code=code
        )


@lru_cache(maxsize=128)
def _default_log_message(code: ErrorCode) -> str:
    messages = {
        ErrorCode.SsptError: "Internal error",
        ErrorCode.ContractViolation: "Function called outside its contract",
        ErrorCode.ParameterError: "Invalid parameter",
        ErrorCode.LevelOutOfRange: "Sphere subdivision level out of range",
        ErrorCode.OddShOrder: "Spherical harmonic order must be even",
        ErrorCode.RadiusBelowStep: "Radius of curvature below step size",
        ErrorCode.UnknownParameter: "Unknown parameter name",
        ErrorCode.PointCountMismatch: "Streamline point counts differ",
        ErrorCode.DegenerateStreamline: "Streamline has zero length",
        ErrorCode.PhantomGeometry: "Phantom geometry does not fit",
        ErrorCode.ConfigurationError: "Invalid configuration",
        ErrorCode.EmptySeedMask: "Seed mask is empty",
        ErrorCode.InvalidRanges: "Invalid parameter ranges",
        ErrorCode.MissingFlag: "Required flag is missing",
        ErrorCode.FormatError: "Malformed file",
        ErrorCode.NiftiFormatError: "Malformed NIfTI file",
        ErrorCode.TckFormatError: "Malformed TCK file",
        ErrorCode.RecordFormatError: "Malformed tracking records file",
        ErrorCode.TableFormatError: "Malformed CSV table",
        ErrorCode.ShCoefficientCount: "Coefficient count matches no even lmax",
        ErrorCode.IoError: "Input/output error",
        ErrorCode.AnalysisError: "Analysis error",
        ErrorCode.ConsistencyError: "Records and clusters do not match",
        ErrorCode.RefinementError: "Parameter range can't be refined",
    }

    return messages.get(code, messages[code.group])


@lru_cache(maxsize=128)
def default_user_message(code: ErrorCode) -> Optional[str]:
    messages = {
        ErrorCode.EmptySeedMask: (
            "The seed mask has no nonzero voxels, nothing can be tracked."
        ),
        ErrorCode.RefinementError: (
            "No accepted streamlines in the records. Widen the sampling"
            " ranges or increase the number of seeds."
        ),
        ErrorCode.ShCoefficientCount: (
            "The image does not hold even-order spherical harmonic"
            " coefficients."
        ),
    }

    return messages.get(code)
