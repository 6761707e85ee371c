import sys
import logging
from typing import Optional


def error_message_detail(error: Exception, error_detail: sys) -> str:
    _, _, exc_tb = error_detail.exc_info()

    if exc_tb is None:
        error_message = f"Error occured: {str(error)}"
    else:
        while exc_tb.tb_next is not None:
            exc_tb = exc_tb.tb_next
        file_name = exc_tb.tb_frame.f_code.co_filename
        line_number = exc_tb.tb_lineno
        error_message = f"Error occured in pythonScript : [{file_name}] at Line number [{line_number}]: {str(error)}"

    logging.error(error_message)

    return error_message


class MyException(Exception):
    def __init__(self, error_message: Exception, error_detail: sys):
        super().__init__(error_message)

        self.error_message = error_message_detail(error_message, error_detail)

    def __str__(self) -> str:
        '''
        Returns the string representation
        '''
        return self.error_message


class OperatorInequalityError(Exception):
    """Base class of every domain error raised by the numerical components."""


class InvalidMatrix(OperatorInequalityError):
    pass


class ShapeError(OperatorInequalityError):
    pass


class DomainViolation(OperatorInequalityError):
    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotPositiveDefinite(OperatorInequalityError):
    pass


class UnknownFunction(OperatorInequalityError):
    pass


class BadParameter(OperatorInequalityError):
    pass


class NonPositiveFunction(OperatorInequalityError):
    pass


class NonPositiveConstant(OperatorInequalityError):
    pass


class SpectrumNotEnclosed(OperatorInequalityError):
    pass


class DegenerateInterval(OperatorInequalityError):
    pass


class NotStrictlyConvex(OperatorInequalityError):
    pass


class SandwichViolated(OperatorInequalityError):
    pass


class MatrixFileError(OperatorInequalityError):
    pass


def reraise_domain_error(error: Exception) -> None:
    """Lets domain errors through unchanged; callers wrap everything else in MyException."""
    if isinstance(error, OperatorInequalityError):
        raise error
