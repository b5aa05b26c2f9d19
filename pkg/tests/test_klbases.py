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
from macdonald_kl.klbases import _is_negative, _negative_part

T_HALF = ParamMonomial(0, 1, 0)


def w(*coords):
    return Weight(coords)


def e(system, *coords, coeff=1):
    return GroupAlgebraElement.monomial(system, Weight(coords), coeff)


def test_standard_bases_a1(A1):
    assert standard_basis(A1, w(-1)) == e(A1, -1) + e(
        A1, 1, coeff=CoeffFraction(ParamPoly.binomial(ParamMonomial(0, -2, 0)))
    )
    assert standard_basis(A1, w(1)) == e(A1, 1, coeff=CoeffFraction.from_monomial(T_HALF.inverse()))
    assert dual_standard_basis(A1, w(-1)) == e(A1, -1)

    family = basis_family(A1, BasisKind.DUAL_STANDARD, [w(-1), w(1)])
    assert family.kind is BasisKind.DUAL_STANDARD
    assert family.entries[w(-1)] == e(A1, -1)


def test_r_polynomials_a1(A1):
    expected = {w(-1): ParamPoly.one(), w(1): ParamPoly({T_HALF.inverse(): 1, T_HALF: -1})}
    assert r_polynomials(A1, w(-1)) == expected
    assert r_polynomials(A1, w(-1), "pairing") == expected

    with pytest.raises(InvalidJob, match="method"):
        r_polynomials(A1, w(-1), "bogus")


def test_expand_triangular(A1):
    expansion = expand_triangular(e(A1, -1), lambda nu: standard_basis(A1, nu))
    assert expansion[w(-1)] == 1
    assert expansion[w(1)] == CoeffFraction.from_poly(ParamPoly({T_HALF.inverse(): 1, T_HALF: -1}))


def test_canonical_basis_a1(A1):
    result = canonical_basis(A1, w(-1))
    assert result.element == e(A1, -1) + e(A1, 1)
    assert set(result.polynomials) == {w(-1), w(1)}

    top = result.polynomials[w(-1)]
    assert top.pstar == ParamPoly.one()
    assert top.value_at_one() == 1

    lower = result.polynomials[w(1)]
    assert lower.pstar == ParamPoly({T_HALF.inverse(): 1})
    assert lower.has_no_constant_term()
    assert lower.p == ParamPoly.one()
    assert lower.p_is_integral()
    assert lower.value_at_one() == 1
    assert lower.coefficients_nonnegative()


def test_negative_part_is_a_total_order():
    poly = ParamPoly(
        {
            ParamMonomial(0, 0, 0): 1,
            ParamMonomial(0, -1, -1): 2,
            ParamMonomial(0, -1, 1): 3,
            ParamMonomial(0, 1, -1): 4,
            ParamMonomial(0, 1, 1): 5,
            ParamMonomial(0, -2, 0): 6,
        }
    )
    negative = _negative_part(poly)
    assert negative == ParamPoly(
        {ParamMonomial(0, -1, -1): 2, ParamMonomial(0, -1, 1): 3, ParamMonomial(0, -2, 0): 6}
    )
    # every nonconstant monomial or its inverse is negative, never both
    for m in poly.terms:
        if not m.is_one():
            assert _is_negative(m) != _is_negative(m.inverse())


def test_canonical_basis_mixed_parameters(B2):
    result = canonical_basis(B2, w(-1, 1))
    assert result.polynomials[w(-1, 1)].pstar == ParamPoly.one()
    assert result.polynomials[w(0, 1)].pstar == ParamPoly(
        {ParamMonomial(0, -1, -1): 1, ParamMonomial(0, -1, 1): 1}
    )
    assert kl_involution_check(B2, w(-1, 1))
    for mu in result.polynomials:
        assert kl_pairing_extraction(B2, w(-1, 1), mu) == result.polynomials[mu].pstar


@pytest.mark.parametrize("coords", [(-1, 1), (1, 1)])
def test_canonical_basis_b2(B2, coords):
    lam = w(*coords)
    result = canonical_basis(B2, lam)
    assert result.polynomials[lam].pstar == ParamPoly.one()
    for mu, kl in result.polynomials.items():
        if mu != lam:
            assert kl.has_no_constant_term()
    assert kl_involution_check(B2, lam)


@pytest.mark.parametrize("coords", [(1, -1), (1, 1)])
def test_canonical_basis_g2(G2, coords):
    lam = w(*coords)
    result = canonical_basis(G2, lam)
    assert result.polynomials[lam].pstar == ParamPoly.one()
    for mu, kl in result.polynomials.items():
        if mu != lam:
            assert kl.has_no_constant_term()
            assert all(_is_negative(m) for m in kl.pstar.terms)
    assert kl_involution_check(G2, lam)


def test_canonical_basis_box(A2, B2, box):
    for system in (A2, B2):
        for lam in box(system):
            result = canonical_basis(system, lam)
            assert result.polynomials[lam].pstar == ParamPoly.one()
            for mu, kl in result.polynomials.items():
                assert kl.p_is_integral()
                if mu != lam:
                    assert kl.has_no_constant_term()


def test_antidominant_character(A1, A2):
    assert verify_antidominant_character(A1, w(-1))
    assert verify_antidominant_character(A2, w(-1, 0))


def test_kl_involution(A1, A2):
    assert kl_involution_check(A1, w(-1))
    assert kl_involution_check(A2, w(1, -1))


def test_kl_pairing_extraction(A1):
    assert kl_pairing_extraction(A1, w(-1), w(1)) == ParamPoly({T_HALF.inverse(): 1})


def test_conjecture_report(A1, B2):
    report = conjecture_report(A1, w(-1))
    assert report.marker == CONJECTURE_MARKER
    assert report.rows == [(w(-1), 1, True), (w(1), 1, True)]
    data = report.to_json()
    assert data["marker"] == CONJECTURE_MARKER
    assert data["rows"][1] == {"mu": [1], "p_at_one": 1, "nonnegative": True}

    with pytest.raises(UnsupportedType, match="equal parameters") as exc_info:
        conjecture_report(B2, w(0, -1))
    assert exc_info.value.get_error_message() == "The report is defined for equal parameters only."


def test_kl_element(A1):
    s = simple_reflection(A1, 1)
    identity = ExtendedWeylElement.identity(A1)
    c_s = kl_element(s)
    assert c_s == HeckeElement(A1, {s: ParamPoly.one(), identity: ParamPoly({T_HALF.inverse(): 1})})

    # C'_s C'_s = (t^(1/2) + t^(-1/2)) C'_s
    assert c_s * c_s == c_s.scale(ParamPoly({T_HALF: 1, T_HALF.inverse(): 1}))

    assert kl_element(identity) == HeckeElement.basis(A1, identity)


def test_kl_element_scope(B2, A3):
    with pytest.raises(UnsupportedType):
        kl_element(simple_reflection(B2, 1))
    with pytest.raises(UnsupportedType):
        lemma_factorization(A3, w(0, 0, -1))


def test_lemma_factorization(A1, A2):
    for system, lam in ((A1, w(-1)), (A1, w(1)), (A2, w(-1, 0)), (A2, w(1, -1))):
        left, right = lemma_factorization(system, lam)
        assert left == right


def test_support_observation(A1):
    observation = support_observation(A1, w(-1))
    assert observation.marker == CONJECTURE_MARKER
    data = observation.to_json()
    assert data["weight"] == [-1]
    assert set(data) == {"weight", "marker", "coefficients", "poles"}
