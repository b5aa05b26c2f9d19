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

import pytest

import uuid
import json
import contextlib
from unittest.mock import MagicMock
import logging
import logging.handlers

from macdonald_kl import *

rand_str = lambda: uuid.uuid4().hex[:8]


@contextlib.contextmanager
def error_changes():
    fields = {}
    for field in dir(MacdonaldKLError):
        if field.upper() == field:
            fields[field] = getattr(MacdonaldKLError, field)

    yield MacdonaldKLError

    for field in fields:
        setattr(MacdonaldKLError, field, fields[field])


def test_base_class_requires_exit_code():
    with pytest.raises(NotImplementedError, match="EXIT_CODE"):
        MacdonaldKLError("foo")


def test_error_code_defaults_to_class_name():
    exc = InvalidJob(field="weight", reason="bad")
    assert exc.get_error_code() == "InvalidJob"
    assert str(exc) == "InvalidJob: weight: bad"

    class CustomError(MacdonaldKLError):
        EXIT_CODE = 4
        ERROR_CODE = "Custom"

    exc = CustomError("internal")
    assert exc.get_error_code() == "Custom"
    assert exc.get_error_message() == "An error occurred."


def test_error_message_template():
    exc = UnsupportedType(type_tag="BC", rank=2)
    assert exc.get_error_message() == "Unsupported root system BC2."
    assert exc.EXIT_CODE == EXIT_INVALID_INPUT

    exc = PoleAtLimit(variable="t")
    assert exc.get_error_message() == "No finite limit as t goes to 0."
    assert exc.EXIT_CODE == EXIT_NO_FINITE_VALUE

    exc = TruncationTooSmall(order=3, accuracy=5)
    assert "order 3" in exc.get_error_message()
    assert "accuracy 5" in exc.get_error_message()


def test_error_message_override():
    msg = rand_str()
    exc = NotAntiDominant(weight=(1, 0), error_message=msg)
    assert exc.get_error_message() == msg
    assert exc.weight == (1, 0)

    exc = NotAntiDominant(weight=[1, 0], internal_message=msg)
    assert exc.internal_message == msg
    assert exc.get_error_message() == "The weight must be anti-dominant."


def test_report():
    exc = RecursionFailure(weight=(-1,), detail="no solution")
    report = exc.get_report()
    assert report == {
        "Error": {
            "Code": "RecursionFailure",
            "Message": "Canonical basis recursion failed.",
            "ExitCode": EXIT_INTERNAL,
        }
    }
    json.dumps(report)


def test_cache_schema_violation_message():
    exc = CacheSchemaViolation(validation_error_message="missing terms")
    assert exc.get_error_message() == "missing terms"
    assert exc.EXIT_CODE == EXIT_INVALID_INPUT


def test_exit_codes():
    assert DivisionByZero().EXIT_CODE == EXIT_INTERNAL
    assert UnsupportedDenominator(poly="1 + q").EXIT_CODE == EXIT_INTERNAL
    assert ZeroNormalizer(index=0, weight=(0,)).EXIT_CODE == EXIT_INTERNAL
    assert issubclass(InvalidJob, MacdonaldKLError)


def test_repr():
    exc = InvalidJob(field="radius", reason="negative")
    text = repr(exc)
    assert text.startswith("InvalidJob(")
    assert "field='radius'" in text
    assert "reason='negative'" in text


def test_logging():
    exc = InvalidJob(field="weight", reason=rand_str())

    with error_changes():
        MacdonaldKLError.LOGGER = None
        exc._log()

        mock = MagicMock()
        MacdonaldKLError.LOGGER = mock
        exc._log()
        mock.assert_called_once_with(str(exc))

        logger = logging.getLogger(rand_str())
        logger.propagate = False
        handler = logging.handlers.BufferingHandler(10)
        logger.addHandler(handler)
        MacdonaldKLError.LOGGER = logger
        exc._log()
        assert len(handler.buffer) == 1
        assert handler.buffer[0].getMessage() == str(exc)
        assert handler.buffer[0].levelno == logging.ERROR
        assert not handler.buffer[0].exc_info
