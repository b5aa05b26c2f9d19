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

from macdonald_kl import *
from macdonald_kl.verification import _Checks


@pytest.mark.parametrize("suite", sorted(SUITES))
@pytest.mark.parametrize("system", ["A1", "A2"])
def test_suite_passes(suite, system):
    result = run_suite(suite, system, 1)
    assert result.suite == suite
    assert result.system == system
    assert result.passed, result.render()


@pytest.mark.parametrize("suite", ["kl", "relations", "orthogonality"])
@pytest.mark.parametrize("system", ["B2", "G2"])
def test_suite_passes_unequal_parameters(suite, system):
    result = run_suite(suite, system, 1)
    assert result.checked > 0
    assert result.passed, result.render()


def test_suite_passes_rank_three():
    result = run_suite("orthogonality", "A3", 1)
    assert result.checked > 0
    assert result.passed, result.render()
    # the q-pairing is not run above rank 2, and says so
    assert result.skipped
    assert all("rank 2" in label for label in result.skipped)
    assert "skipped" in result.render()


def test_suite_counts_checks():
    result = run_suite("orthogonality", "A1", 1)
    assert result.checked > 0
    assert not result.skipped

    result = run_suite("orthogonality", "B2", 1)
    assert result.checked > 0
    assert not result.skipped


def test_relations_scale_by_monomial():
    A1 = parse_system("A1")
    f = GroupAlgebraElement.monomial(A1, Weight((1,)))
    q_inverse = A1.scale.q(-1)
    assert f.scale(q_inverse) == f.scale(CoeffFraction.from_monomial(q_inverse))
    assert (f * q_inverse).coefficient(Weight((1,))) == CoeffFraction.from_monomial(q_inverse)


def test_checks_record_crashes():
    checks = _Checks()

    def crash():
        raise AttributeError("no attribute 'qe'")

    def invalid():
        raise InvalidJob(field="weight", reason="bad")

    checks.check("crash", crash)
    checks.check("invalid", invalid)
    checks.check("fine", lambda: True)
    checks.check("false", lambda: False)
    result = checks.result("relations", parse_system("A1"), 1)
    assert result.checked == 4
    assert len(result.failures) == 3
    assert result.failures[0] == "crash: AttributeError: no attribute 'qe'"
    assert result.failures[1].startswith("invalid: ")
    assert result.failures[2] == "false"


def test_run_suite_unknown():
    with pytest.raises(InvalidJob, match="suite"):
        run_suite("nonexistent", "A1", 1)
    with pytest.raises(UnsupportedType):
        run_suite("kl", "BC2", 1)


def test_expand_suites():
    assert expand_suites(["all"]) == list(SUITES)
    assert expand_suites(["kl", "kappa", "kl"]) == ["kl", "kappa"]
    assert expand_suites(["kl", "all"])[0] == "kl"
    assert len(expand_suites(["kl", "all"])) == len(SUITES)
    assert "A3" in DEFAULT_SYSTEMS


def test_suite_result():
    result = SuiteResult(suite="kl", system="A2", radius=1, checked=5, failures=())
    assert result.passed
    assert result.key == ("kl", "A2")
    assert result.render() == "kl A2 r=1: 5 checks, ok"

    failed = SuiteResult(suite="kl", system="A2", radius=1, checked=5, failures=("P*[0,0]",))
    assert not failed.passed
    assert failed.render() == "kl A2 r=1: 5 checks, FAILED\n  P*[0,0]"
    assert failed.to_json() == {
        "suite": "kl",
        "system": "A2",
        "radius": 1,
        "checked": 5,
        "failures": ["P*[0,0]"],
        "skipped": [],
    }

    skipped = SuiteResult(
        suite="orthogonality", system="A3", radius=1, checked=2, failures=(), skipped=("pair (too big)",)
    )
    assert skipped.passed
    assert skipped.render() == "orthogonality A3 r=1: 2 checks, 1 skipped, ok\n  skipped pair (too big)"
    assert skipped.to_json()["skipped"] == ["pair (too big)"]
