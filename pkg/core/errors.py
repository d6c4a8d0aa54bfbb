"""
Engine Errors - One exception hierarchy for every failure the engine reports
Each error knows the process exit status the command line maps it to
"""

from enum import IntEnum


class ExitCode(IntEnum):
    """Process exit statuses of the command line"""
    OK = 0
    USAGE = 1
    SIZE_CAP = 2
    REPLAY_FAILED = 3
    SURVIVOR = 4


class SteinerEngineError(Exception):
    """Base class for all engine errors"""
    exit_code: ExitCode = ExitCode.USAGE


class InvalidInputError(SteinerEngineError, ValueError):
    """Raised when an operation's precondition does not hold"""
    exit_code = ExitCode.USAGE


class UnsupportedFamilyError(InvalidInputError):
    """Raised when a group family/degree has no generator construction"""
    pass


class DesignFormatError(InvalidInputError):
    """Raised when a STEINER design file is malformed"""

    def __init__(self, path: str, line_no: int, message: str):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


class SizeCapExceeded(SteinerEngineError):
    """Raised when an enumeration would pass a configured desk-scale cap"""
    exit_code = ExitCode.SIZE_CAP

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class ReplayFailure(SteinerEngineError):
    """Raised when a certificate fails its independent recheck"""
    exit_code = ExitCode.REPLAY_FAILED

    def __init__(self, index: int, reason: str, message: str):
        self.index = index
        self.reason = reason
        super().__init__(f"certificate #{index} ({reason}): {message}")


class SurvivorFound(SteinerEngineError):
    """Raised by `scan --expect-none` when a case is not eliminated"""
    exit_code = ExitCode.SURVIVOR
