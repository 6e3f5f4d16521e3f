import logging
from .constants import *


class BaseError(Exception):
    logLevel = logging.ERROR

    def __init__(self, message: str, verboseMessage=None, errorType=None, exitCode=None):
        self.message = message or InternalErrorMessage
        self.verboseMessage = verboseMessage
        self.errorType = errorType or errorTypes["INTERNAL_ERROR"]
        self.exitCode = exitCode if exitCode is not None else exitCodes["INPUT_ERROR"]
        super().__init__(self.message)

        logging.log(self.logLevel, self.message)


class InputError(BaseError):
    def __init__(self, message, verboseMessage=None, errorType=None):
        super().__init__(
            message=message,
            verboseMessage=verboseMessage,
            errorType=errorType,
            exitCode=exitCodes["INPUT_ERROR"],
        )


class ParseError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or parseErrorMessage, verboseMessage, errorTypes["PARSE_ERROR"])


class DimensionMismatchError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or dimensionMismatchErrorMessage, verboseMessage, errorTypes["DIMENSION_MISMATCH"])


class IndexOutOfRangeError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or indexOutOfRangeErrorMessage, verboseMessage, errorTypes["INDEX_OUT_OF_RANGE"])


class ZeroStateError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or zeroStateErrorMessage, verboseMessage, errorTypes["ZERO_STATE"])


class NotUnitaryError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or notUnitaryErrorMessage, verboseMessage, errorTypes["NOT_UNITARY"])


class BadArityError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or badArityErrorMessage, verboseMessage, errorTypes["BAD_ARITY"])


class NotMagicBasisError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or notMagicBasisErrorMessage, verboseMessage, errorTypes["NOT_MAGIC_BASIS"])


class MalformedEnvironmentError(InputError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or malformedEnvironmentErrorMessage, verboseMessage, errorTypes["MALFORMED_ENVIRONMENT"])


class ConstructionError(BaseError):
    def __init__(self, message, verboseMessage=None, errorType=None):
        super().__init__(
            message=message,
            verboseMessage=verboseMessage,
            errorType=errorType,
            exitCode=exitCodes["CONSTRUCTION_FAILED"],
        )


class ConstructionFailedError(ConstructionError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or constructionFailedErrorMessage, verboseMessage, errorTypes["CONSTRUCTION_FAILED"])


class ZeroRayError(ConstructionError):
    # raised and recovered inside candidate scans
    logLevel = logging.DEBUG

    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or zeroRayErrorMessage, verboseMessage, errorTypes["ZERO_RAY"])


class DegenerateQuadraticError(ConstructionError):
    logLevel = logging.INFO

    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or degenerateQuadraticErrorMessage, verboseMessage, errorTypes["DEGENERATE_QUADRATIC"])


class MagicResidualTooLargeError(ConstructionError):
    logLevel = logging.WARNING

    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or magicResidualErrorMessage, verboseMessage, errorTypes["MAGIC_RESIDUAL_TOO_LARGE"])


class ProportionalityAmbiguousError(ConstructionError):
    logLevel = logging.DEBUG

    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or proportionalityAmbiguousErrorMessage, verboseMessage, errorTypes["PROPORTIONALITY_AMBIGUOUS"])


class LPNumericalFailureError(ConstructionError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or lpNumericalFailureErrorMessage, verboseMessage, errorTypes["LP_NUMERICAL_FAILURE"])


class InternalConsistencyError(ConstructionError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(message or InternalErrorMessage, verboseMessage, errorTypes["INTERNAL_ERROR"])


class NotFullyEntangledError(BaseError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(
            message=message or notFullyEntangledErrorMessage,
            verboseMessage=verboseMessage,
            errorType=errorTypes["NOT_FULLY_ENTANGLED"],
            exitCode=exitCodes["NOT_FULLY_ENTANGLED"],
        )


class NotEntangledError(BaseError):
    def __init__(self, message=None, verboseMessage=None):
        super().__init__(
            message=message or notEntangledErrorMessage,
            verboseMessage=verboseMessage,
            errorType=errorTypes["NOT_ENTANGLED"],
            exitCode=exitCodes["NOT_FULLY_ENTANGLED"],
        )
