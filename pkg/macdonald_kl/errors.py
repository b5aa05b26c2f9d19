# Copyright 2022 Ben Kehoe
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.

__all__ = (
    "MacdonaldKLError",
    "UnsupportedType",
    "InvalidJob",
    "NotAntiDominant",
    "DivisionByZero",
    "UnsupportedDenominator",
    "PoleAtLimit",
    "TruncationTooSmall",
    "ZeroNormalizer",
    "RecursionFailure",
    "CacheSchemaViolation",
    "EXIT_INVALID_INPUT",
    "EXIT_NO_FINITE_VALUE",
    "EXIT_INTERNAL",
)

import logging
from typing import Any, Callable, Dict, Optional, Tuple, Union

EXIT_INVALID_INPUT = 2
EXIT_NO_FINITE_VALUE = 3
EXIT_INTERNAL = 4


class MacdonaldKLError(Exception):
    """Base class for every error raised by this package.

    Each error carries the process exit code the command line uses for it in
    the EXIT_CODE class field: 2 for invalid input, 3 for a quantity with no
    finite value (a pole at a limit, a truncation that is too short), and 4
    for results that contradict a theorem the computation relies on. Exit
    code 4 is a bug report, never an expected outcome.

    Logging is handled through the MacdonaldKLError.LOGGER class field, which
    can be set to either a logging.Logger or a callable. To include a
    traceback, set MacdonaldKLError.LOGGER_TRACEBACK=True.

    Only subclasses may be instantiated. A subclass MUST set the EXIT_CODE
    class field. It MAY set the ERROR_CODE, ERROR_MESSAGE, or
    ERROR_MESSAGE_TEMPLATE class fields.

    A subclass SHOULD accept **kwargs for its constructor in addition to its
    own keyword-only arguments, allow the internal_message to be provided
    through these kwargs, and pass them on to the superclass constructor.
    """

    EXIT_CODE: int = NotImplemented

    ERROR_CODE: str = NotImplemented
    ERROR_MESSAGE: str = NotImplemented
    ERROR_MESSAGE_TEMPLATE: str = NotImplemented

    LOGGER: Union[None, logging.Logger, Callable] = None
    LOGGER_TRACEBACK: bool = False

    def __init__(self, internal_message: str, **kwargs) -> None:
        """Args:
        internal_message: A message intended for logging.
        **kwargs: Additional data that will be stored in the kwargs attribute.
        """
        if self.EXIT_CODE is NotImplemented:
            raise NotImplementedError("EXIT_CODE must be set")
        super().__init__(internal_message)
        self.internal_message = internal_message
        self.kwargs = kwargs

    def __str__(self) -> str:
        return f"{self.get_error_code()}: {self.internal_message}"

    def __repr__(self) -> str:
        kwargs = vars(self).copy()
        kwargs.pop("kwargs")
        kwargs.update(self.kwargs)
        parts = []
        for key, value in kwargs.items():
            parts.append(f"{key}={value!r}")
        return f"{self.__class__.__name__}({', '.join(parts)})"

    def get_error_code(self) -> str:
        """Get the error code for this exception.

        Returns the ERROR_CODE class field if it is set by the subclass,
        falling back to the class name if it is not.
        """
        if self.ERROR_CODE is NotImplemented:
            return self.__class__.__name__
        else:
            return self.ERROR_CODE

    def get_error_message(self) -> str:
        """Get the user-facing error message for this exception.

        A keyword argument named error_message wins, then the ERROR_MESSAGE
        class field, then ERROR_MESSAGE_TEMPLATE formatted with the instance
        fields.
        """
        if "error_message" in self.kwargs:
            return self.kwargs["error_message"]
        if self.ERROR_MESSAGE is not NotImplemented:
            return self.ERROR_MESSAGE
        if self.ERROR_MESSAGE_TEMPLATE is not NotImplemented:
            template_args: Dict[str, Any] = {}
            template_args.update(self.kwargs)
            template_args.update(vars(self))
            template_args.pop("kwargs")
            return self.ERROR_MESSAGE_TEMPLATE.format(**template_args)
        return "An error occurred."

    def get_report(self) -> Dict[str, Any]:
        """The error as a JSON-serializable dict, for --format json."""
        return {
            "Error": {
                "Code": self.get_error_code(),
                "Message": self.get_error_message(),
                "ExitCode": self.EXIT_CODE,
            }
        }

    def _log(self) -> None:
        if not self.LOGGER:
            return
        if isinstance(self.LOGGER, logging.Logger):
            self.LOGGER.error(str(self), exc_info=self.LOGGER_TRACEBACK)
        else:
            self.LOGGER(str(self))


class UnsupportedType(MacdonaldKLError):
    """The requested root system is not a reduced irreducible type of rank <= 8.

    Attributes:
        type_tag: The requested Cartan type letter.
        rank: The requested rank.
    """

    EXIT_CODE = EXIT_INVALID_INPUT
    ERROR_MESSAGE_TEMPLATE = "Unsupported root system {type_tag}{rank}."

    def __init__(self, *, type_tag: str, rank: int, **kwargs) -> None:
        self.type_tag = type_tag
        self.rank = rank
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = f"No reduced system {type_tag}{rank}"
        super().__init__(**kwargs)


class InvalidJob(MacdonaldKLError):
    """A command-line job specification is malformed.

    Attributes:
        field: The offending field.
        reason: What is wrong with it.
    """

    EXIT_CODE = EXIT_INVALID_INPUT
    ERROR_MESSAGE_TEMPLATE = "Invalid {field}: {reason}"

    def __init__(self, *, field: str, reason: str, **kwargs) -> None:
        self.field = field
        self.reason = reason
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = f"{field}: {reason}"
        super().__init__(**kwargs)


class NotAntiDominant(MacdonaldKLError):
    """An operation that needs an anti-dominant weight got another one.

    Attributes:
        weight: The coordinates of the weight.
    """

    EXIT_CODE = EXIT_INVALID_INPUT
    ERROR_MESSAGE = "The weight must be anti-dominant."

    def __init__(self, *, weight: Tuple[int, ...], **kwargs) -> None:
        self.weight = tuple(weight)
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = f"Weight {self.weight} is not anti-dominant"
        super().__init__(**kwargs)


class DivisionByZero(MacdonaldKLError):
    """Inversion of the zero coefficient."""

    EXIT_CODE = EXIT_INTERNAL
    ERROR_MESSAGE = "Division by zero."

    def __init__(self, **kwargs) -> None:
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = "Attempted to invert zero"
        super().__init__(**kwargs)


class UnsupportedDenominator(MacdonaldKLError):
    """Inversion of a polynomial that is not a unit times binomials (1 - m).

    Attributes:
        poly: Rendered text of the polynomial.
    """

    EXIT_CODE = EXIT_INTERNAL
    ERROR_MESSAGE = "Denominator does not factor into binomials."

    def __init__(self, *, poly: str, **kwargs) -> None:
        self.poly = poly
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = f"Cannot invert {poly}"
        super().__init__(**kwargs)


class PoleAtLimit(MacdonaldKLError):
    """A coefficient has no finite limit at the requested specialization.

    Attributes:
        variable: Name of the variable sent to zero.
        value: Rendered text of the offending coefficient, if known.
    """

    EXIT_CODE = EXIT_NO_FINITE_VALUE
    ERROR_MESSAGE_TEMPLATE = "No finite limit as {variable} goes to 0."

    def __init__(self, *, variable: str, value: Optional[str] = None, **kwargs) -> None:
        self.variable = variable
        self.value = value
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = f"Pole at {variable} -> 0 in {value}"
        super().__init__(**kwargs)


class TruncationTooSmall(MacdonaldKLError):
    """The truncated kernel does not determine the pairing to the requested accuracy.

    Attributes:
        order: Truncation order D of the kernel.
        accuracy: Requested number of exact powers of q^-1.
    """

    EXIT_CODE = EXIT_NO_FINITE_VALUE
    ERROR_MESSAGE_TEMPLATE = (
        "Truncation order {order} cannot give accuracy {accuracy}; increase it."
    )

    def __init__(self, *, order: int, accuracy: int, **kwargs) -> None:
        self.order = order
        self.accuracy = accuracy
        if "internal_message" not in kwargs:
            kwargs[
                "internal_message"
            ] = f"Kernel truncated at order {order} is too short for accuracy {accuracy}"
        super().__init__(**kwargs)


class ZeroNormalizer(MacdonaldKLError):
    """A normalized intertwiner was used outside its ascent precondition.

    Attributes:
        index: The simple affine reflection index.
        weight: The weight the intertwiner is attached to.
    """

    EXIT_CODE = EXIT_INTERNAL
    ERROR_MESSAGE = "Intertwiner normalizer vanishes."

    def __init__(self, *, index: int, weight: Tuple[int, ...], **kwargs) -> None:
        self.index = index
        self.weight = tuple(weight)
        if "internal_message" not in kwargs:
            kwargs[
                "internal_message"
            ] = f"Normalizer of I_{index} vanishes at weight {self.weight}"
        super().__init__(**kwargs)


class RecursionFailure(MacdonaldKLError):
    """The canonical basis recursion found no admissible solution.

    Attributes:
        weight: The weight whose canonical element was being computed.
        detail: Description of the failed step.
    """

    EXIT_CODE = EXIT_INTERNAL
    ERROR_MESSAGE = "Canonical basis recursion failed."

    def __init__(self, *, weight: Tuple[int, ...], detail: str, **kwargs) -> None:
        self.weight = tuple(weight)
        self.detail = detail
        if "internal_message" not in kwargs:
            kwargs["internal_message"] = f"At {self.weight}: {detail}"
        super().__init__(**kwargs)


class CacheSchemaViolation(MacdonaldKLError):
    """A cached result file does not conform to the result schema.

    Attributes:
        validation_error_message: Message from the schema validator.
        validation_error: The validator's exception, if any.
    """

    EXIT_CODE = EXIT_INVALID_INPUT

    def get_error_message(self) -> str:
        if "error_message" in self.kwargs:
            return self.kwargs["error_message"]
        return self.validation_error_message

    def __init__(
        self,
        *,
        validation_error_message: str,
        validation_error: Optional[Exception] = None,
        **kwargs,
    ) -> None:
        self.validation_error_message = validation_error_message
        self.validation_error = validation_error
        if "internal_message" not in kwargs:
            kwargs[
                "internal_message"
            ] = f"Cache file violates schema: {validation_error or validation_error_message}"
        super().__init__(**kwargs)
