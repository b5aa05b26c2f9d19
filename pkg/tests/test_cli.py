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

import contextlib
import json

from macdonald_kl import *
from macdonald_kl.cli import JobSpec, job_from_args, build_parser, main, parse_weight, run

E_MINUS_ONE = "e[-1] + ((1 - t^-1)/(1 - q^-1 t^-1)) e[1]"


@pytest.fixture(autouse=True)
def restore_logger():
    logger = MacdonaldKLError.LOGGER
    traceback = MacdonaldKLError.LOGGER_TRACEBACK
    try:
        yield
    finally:
        MacdonaldKLError.LOGGER = logger
        MacdonaldKLError.LOGGER_TRACEBACK = traceback


@contextlib.contextmanager
def cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    yield code, captured.out.strip(), captured.err


def test_parse_weight():
    assert parse_weight("1,-2") == Weight((1, -2))
    assert parse_weight(" -1 ") == Weight((-1,))
    with pytest.raises(InvalidJob, match="weight"):
        parse_weight("a,b")


def test_job_spec():
    job = JobSpec(command="E", weight=Weight((-1,)))
    assert job.root_system() is parse_system("A1")
    assert job.require_weight(parse_system("A1")) == Weight((-1,))

    with pytest.raises(InvalidJob, match="command"):
        JobSpec(command="bogus")
    with pytest.raises(InvalidJob, match="format"):
        JobSpec(command="E", format="yaml")
    with pytest.raises(InvalidJob, match="truncation"):
        JobSpec(command="pair", truncation=0)
    with pytest.raises(InvalidJob, match="jobs"):
        JobSpec(command="verify", jobs=0)

    with pytest.raises(InvalidJob, match="needs --other"):
        JobSpec(command="pair", weight=Weight((-1,))).require_weight(parse_system("A1"), "other")
    with pytest.raises(InvalidJob, match="rank"):
        JobSpec(command="E", weight=Weight((1, 2))).require_weight(parse_system("A1"))


def test_job_from_args():
    parser = build_parser()
    job = job_from_args(parser.parse_args(["E", "--system", "A2", "--weight=1,-1", "--word", "0,1"]))
    assert job.command == "E"
    assert job.system == "A2"
    assert job.weight == Weight((1, -1))
    assert job.word == (0, 1)
    assert job.spec_tag == "exact"

    job = job_from_args(parser.parse_args(["verify", "--system", "A1", "--system", "B2"]))
    assert job.systems == ("A1", "B2")
    assert job.suites == ("all",)


def test_E(capsys):
    with cli(capsys, "E", "--system", "A1", "--weight", "-1") as (code, out, err):
        assert code == 0
        assert out == E_MINUS_ONE

    with cli(capsys, "E", "--system", "A1", "--weight", "-1", "--spec", "qinf") as (code, out, err):
        assert code == 0
        assert out == "e[-1] + (1 - t^-1) e[1]"


def test_E_json(capsys):
    with cli(capsys, "E", "--system", "A1", "--weight=-1", "--format", "json") as (code, out, err):
        assert code == 0
        document = json.loads(out)
        assert document["system"] == "A1"
        assert document["weight"] == [-1]
        validate_result_document(document)


def test_E_cache(capsys, tmp_path):
    argv = ["E", "--system", "A1", "--weight", "-1", "--cache-dir", str(tmp_path)]
    with cli(capsys, *argv) as (code, out, err):
        assert code == 0
        assert out == E_MINUS_ONE
    assert (tmp_path / "A1" / "-1" / "exact.json").is_file()

    with cli(capsys, *argv) as (code, out, err):
        assert code == 0
        assert out == E_MINUS_ONE


def test_P(capsys):
    with cli(capsys, "P", "--system", "A1", "--weight", "-1") as (code, out, err):
        assert code == 0
        assert out == "e[-1] + e[1]"

    with cli(capsys, "P", "--system", "A1", "--weight", "1") as (code, out, err):
        assert code == 2
        assert "NotAntiDominant" in err


def test_spec(capsys):
    with cli(capsys, "spec", "--system", "A1", "--weight", "-1") as (code, out, err):
        assert code == 0
        lines = out.splitlines()
        assert "qinf: e[-1] + (1 - t^-1) e[1]" in lines
        assert "zero_zero: e[-1]" in lines


def test_pair(capsys):
    with cli(capsys, "pair", "--system", "A1", "--weight", "-1", "--other", "1") as (code, out, err):
        assert code == 0
        assert out == "0"
    with cli(capsys, "pair", "--system", "A1", "--weight", "-1", "--other", "-1") as (code, out, err):
        assert code == 0
        assert out == "1"


def test_kl(capsys):
    with cli(capsys, "kl", "--system", "A1", "--weight", "-1") as (code, out, err):
        assert code == 0
        assert out.splitlines()[0] == "C'[-1] = e[-1] + e[1]"

    with cli(capsys, "kl", "--system", "A1", "--weight", "-1", "--format", "json") as (code, out, err):
        document = json.loads(out)
        assert [row["p_at_one"] for row in document["rows"]] == [1, 1]


def test_info(capsys):
    with cli(capsys, "info", "--system", "B2", "--format", "json") as (code, out, err):
        assert code == 0
        assert json.loads(out)["type"] == "B"


def test_invalid_input(capsys):
    with cli(capsys, "E", "--system", "BC2", "--weight", "-1") as (code, out, err):
        assert code == 2
        assert out == ""
        assert "UnsupportedType" in err

    with cli(capsys, "E", "--system", "A1", "--weight", "a") as (code, out, err):
        assert code == 2
        assert "InvalidJob" in err

    with cli(capsys, "E", "--system", "A1", "--weight", "1,2") as (code, out, err):
        assert code == 2

    with cli(capsys, "E", "--system", "A1") as (code, out, err):
        assert code == 2
        assert "needs --weight" in err


def test_error_report_json(capsys):
    with cli(capsys, "E", "--system", "BC2", "--weight", "-1", "--format", "json") as (code, out, err):
        assert code == 2
        report = json.loads(err[err.index("{") :])
        assert report["Error"]["Code"] == "UnsupportedType"
        assert report["Error"]["ExitCode"] == 2


def test_run_returns_code():
    code, output = run(JobSpec(command="E", system="A1", weight=Weight((2, 2))))
    assert code == 2
    assert output.startswith("InvalidJob")


def test_verify(capsys):
    with cli(capsys, "verify", "--system", "A1", "--suite", "kappa") as (code, out, err):
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("kappa A1 r=1:")
        assert lines[0].endswith("ok")
        assert lines[-1] == "1/1 suites passed"

    with cli(capsys, "verify", "--system", "A1", "--suite", "nonexistent") as (code, out, err):
        assert code == 2
        assert "unknown suite" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main([])
    assert exc_info.value.code == 2
