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
import importlib

import macdonald_kl
from macdonald_kl import *


def w(*coords):
    return Weight(coords)


@contextlib.contextmanager
def pairing_config(config):
    set_default_pairing_config(config)
    try:
        yield get_default_pairing_config()
    finally:
        set_default_pairing_config(None)


def test_E_a1(A1):
    result = compute_E(A1, w(-1))
    assert result.poly.render() == "e[-1] + ((1 - t^-1)/(1 - q^-1 t^-1)) e[1]"
    assert result.e_lambda == CoeffFraction.from_poly(
        ParamPoly.binomial(ParamMonomial(-2, -2, 0))
    )
    assert normalizer_e(A1, w(-1)) == result.e_lambda
    assert result.normalized == result.poly.scale(result.e_lambda)
    assert result.chain == AffineWord((1,), w(0))
    assert result.support_is_triangular()

    assert compute_E(A1, w(1)).poly.render() == "e[1]"
    assert compute_E(A1, w(0)).poly == GroupAlgebraElement.one(A1)


def test_E_leading_coefficient(A2, B2, G2, box):
    for system in (A2, B2, G2):
        for lam in box(system):
            result = compute_E(system, lam)
            assert result.poly.coefficient(lam) == 1
            assert result.support_is_triangular()


def test_E_word_validation(A1):
    with pytest.raises(InvalidJob, match="word"):
        compute_E(A1, w(-1), word=(0,))
    with pytest.raises(InvalidJob, match="length"):
        compute_E(A1, w(-1), word=(1, 0))
    assert compute_E(A1, w(-2), word=(1, 0)).poly == compute_E(A1, w(-2)).poly


@pytest.mark.parametrize(
    "spec,expected",
    [
        ("exact", "e[-1] + ((1 - t^-1)/(1 - q^-1 t^-1)) e[1]"),
        ("qinf", "e[-1] + (1 - t^-1) e[1]"),
        ("q0", "e[-1]"),
        ("tinf", "e[-1] + e[1]"),
        ("t0", "e[-1] + q e[1]"),
        ("inf_inf", "e[-1] + e[1]"),
        ("zero_zero", "e[-1]"),
        ("t=4", "e[-1] + (3/4) e[1]"),
    ],
)
def test_specialize_a1(A1, spec, expected):
    assert specialize(compute_E(A1, w(-1)).poly, spec).render() == expected


@pytest.mark.parametrize("spec", ["t=abc", "t=-1", "t=0", "bogus"])
def test_specialize_invalid(A1, spec):
    with pytest.raises(InvalidJob, match="spec"):
        specialize(compute_E(A1, w(-1)).poly, spec)


def test_specialize_integral_powers(A1):
    # t = 2 has no rational square root, but only integer powers of t occur
    E = compute_E(A1, w(-1)).poly
    assert specialize(E, "t=2").render() == "e[-1] + (1/2) e[1]"
    assert specialize(E, "t=3").render() == "e[-1] + (2/3) e[1]"

    half = standard_basis(A1, w(1))
    assert specialize(half, "t=9").render() == "(1/3) e[1]"
    with pytest.raises(InvalidJob, match="half-integer"):
        specialize(half, "t=2")


def test_limits_agree_with_direct_formulas(A1, A2, B2, box):
    for system in (A1, A2, B2):
        for lam in box(system):
            E = compute_E(system, lam).poly
            assert specialize(E, "qinf") == E_infinity_direct(system, lam)
            assert E_infinity_via_alcove(system, lam) == E_infinity_direct(system, lam)
            assert E_tilde(system, lam, "q0") == E_tilde_zero_direct(system, lam)
            assert specialize(E, "zero_zero") == E_zero_zero_direct(system, lam)
            assert specialize(E, "inf_inf") == E_infinity_infinity_demazure(system, lam)


def test_E_tilde_zero_is_a_finite_word(A2, box):
    for lam in box(A2):
        data = orbit_data(A2, lam)
        assert 0 not in data.w_ring
        assert E_tilde_zero_direct(A2, lam) == dual_standard_basis(A2, lam)


@pytest.mark.parametrize(
    "module", ["coeffs", "roots", "weyl", "heckeops", "macdonald", "klbases", "verification"]
)
def test_package_exports(module):
    for name in importlib.import_module(f"macdonald_kl.{module}").__all__:
        assert hasattr(macdonald_kl, name), name


def test_E_tilde_chain(A1, A2, box):
    for system in (A1, A2):
        for lam in box(system):
            assert E_tilde_chain(system, lam) == E_tilde(system, lam)


def test_P_a1(A1):
    assert compute_P(A1, w(-1)) == GroupAlgebraElement(A1, {w(-1): 1, w(1): 1})
    P = compute_P(A1, w(-2))
    assert P.coefficient(w(2)) == 1
    assert P.coefficient(w(-2)) == 1
    assert specialize(P, "inf_inf") == weyl_character_oracle(A1, w(-2))

    with pytest.raises(NotAntiDominant):
        compute_P(A1, w(1))


def test_P_normalized(A2):
    lam = w(-1, 0)
    e_lambda = normalizer_e(A2, lam)
    assert compute_P_normalized(A2, lam) == compute_P(A2, lam).scale(e_lambda)


def test_P_infinity_identities(A1, A2, B2):
    for system, lam in ((A1, w(-2)), (A2, w(-1, -1)), (B2, w(0, -1))):
        report = P_infinity_identities(system, lam)
        assert report.agree


def test_weyl_character_oracle(A1, A2):
    assert weyl_character_oracle(A1, w(-2)).render() == "e[-2] + e[0] + e[2]"
    adjoint = weyl_character_oracle(A2, w(-1, -1))
    assert adjoint.coefficient(w(0, 0)) == 2
    assert len(adjoint) == 7
    assert sum(int(adjoint.coefficient(mu).num.render()) for mu in adjoint.support()) == 8

    with pytest.raises(NotAntiDominant):
        weyl_character_oracle(A2, w(1, 0))


def test_pairing_config():
    assert get_default_pairing_config() == PairingConfig()
    with pairing_config(PairingConfig(truncation_order=4, accuracy=2)) as config:
        assert get_default_pairing_config().truncation_order == 4
        assert config.accuracy == 2
    assert get_default_pairing_config().truncation_order is None

    with pytest.raises(InvalidJob, match="truncation"):
        PairingConfig(truncation_order=0)
    with pytest.raises(TruncationTooSmall):
        PairingConfig(truncation_order=2, accuracy=3).resolve_order()


def test_cherednik_pairing_orthogonal(A1):
    config = PairingConfig(truncation_order=6)
    E_minus = compute_E(A1, w(-1)).poly
    E_plus = compute_E(A1, w(1)).poly
    assert cherednik_pairing(E_minus, E_plus, config).is_zero()
    assert not cherednik_pairing(E_plus, E_plus, config).is_zero()


def test_degenerate_pairing_t(A1):
    E_minus = E_infinity_direct(A1, w(-1))
    E_plus = E_infinity_direct(A1, w(1))
    assert degenerate_pairing_t(E_minus, E_plus) == 0
    assert degenerate_pairing_t(E_plus, E_plus) != 0


def test_result_document(A1):
    document = compute_E(A1, w(-1)).to_document()
    assert document["system"] == "A1"
    assert document["weight"] == [-1]
    assert document["spec"] == "exact"
    assert document["m_star"] == 2
    validate_result_document(document)
