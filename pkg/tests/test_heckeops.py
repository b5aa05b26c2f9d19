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

T_HALF = ParamMonomial(0, 1, 0)


def e(system, *coords, coeff=1):
    return GroupAlgebraElement.monomial(system, Weight(coords), coeff)


def t_difference():
    return CoeffFraction.from_poly(ParamPoly({T_HALF: 1, T_HALF.inverse(): -1}))


def test_group_algebra_element(A1):
    x = e(A1, 1) + e(A1, -1)
    assert len(x) == 2
    assert x.support() == [Weight((-1,)), Weight((1,))]
    assert x.coefficient(Weight((3,))) == 0
    assert (x - x).is_zero()
    assert x + x == x.scale(2)
    assert 2 * x == x * 2
    assert e(A1, 1) * e(A1, -1) == GroupAlgebraElement.one(A1)
    assert x.is_parameter_free()
    assert str(x) == "e[-1] + e[1]"
    assert (-x).render() == "-e[-1] - e[1]"
    assert GroupAlgebraElement.zero(A1).render() == "0"
    assert x.to_json()[0]["weight"] == [-1]


def test_render_coefficients(A1):
    x = e(A1, 0, coeff=CoeffFraction.from_monomial(T_HALF, 2))
    assert x.render() == "2 t^(1/2) e[0]"
    x = e(A1, 1, coeff=CoeffFraction(ParamPoly.binomial(ParamMonomial(0, -2, 0))))
    assert x.render() == "(1 - t^-1) e[1]"


def test_apply_Ti_a1(A1):
    assert apply_Ti(GroupAlgebraElement.one(A1), 1) == e(
        A1, 0, coeff=CoeffFraction.from_monomial(T_HALF)
    )
    assert apply_Ti(e(A1, -1), 1) == e(A1, 1, coeff=CoeffFraction.from_monomial(T_HALF.inverse()))
    assert apply_Ti(e(A1, 1), 1) == e(
        A1, -1, coeff=CoeffFraction.from_monomial(T_HALF)
    ) + e(A1, 1, coeff=t_difference())

    with pytest.raises(ValueError):
        apply_Ti(e(A1, 1), 2)


def test_quadratic_relation(A1, A2):
    for system, f in ((A1, e(A1, 3)), (A2, e(A2, 2, -1))):
        for i in range(1, system.rank + 1):
            once = apply_Ti(f, i)
            twice = apply_Ti(once, i)
            assert twice == once.scale(t_difference()) + f
            assert apply_Ti_inverse(once, i) == f


def test_braid_relation(A2):
    f = e(A2, 1, -2) + e(A2, 0, 1)
    assert apply_word(f, [1, 2, 1]) == apply_word(f, [2, 1, 2])


def test_omega_inverse(A1, A2):
    f = e(A1, 2) + e(A1, -1)
    assert apply_omega(apply_omega(f, Weight((1,))), Weight((1,)), inverse=True) == f
    g = e(A2, 1, -1)
    assert apply_omega(apply_omega(g, Weight((0, 1)), inverse=True), Weight((0, 1))) == g

    with pytest.raises(InvalidJob):
        apply_omega(g, Weight((1, 1)))


def test_affine_generators_invert(A1, A2):
    for system, f in ((A1, e(A1, 2)), (A2, e(A2, 1, 1))):
        for op in (apply_T01, apply_T02, apply_T03):
            assert op(op(f), inverse=True) == f


def test_apply_Tw_inverse(A2):
    f = e(A2, 1, 0)
    x = ExtendedWeylElement.from_word(A2, [0, 1], Weight((1, 0)))
    assert apply_Tw(apply_Tw(f, x), x, inverse=True) == f


def test_apply_Y_root_lattice(A1):
    with pytest.raises(InvalidJob, match="root lattice"):
        apply_Y(e(A1, 0), Weight((1,)))
    assert apply_Y(e(A1, 1), Weight((0,))) == e(A1, 1)


def test_zero_hecke(A1, A2):
    assert zero_hecke_N(e(A1, -1), 1) == e(A1, 1)
    assert zero_hecke_N(e(A1, 1), 1) == -e(A1, 1)
    assert N_prime(e(A1, 1), 1).is_zero()

    f = e(A2, -1, -1)
    for i in (1, 2):
        once = zero_hecke_N(f, i)
        assert zero_hecke_N(once, i) == -once
    assert apply_N_word(f, [1, 2, 1]) == apply_N_word(f, [2, 1, 2])

    with pytest.raises(ValueError):
        zero_hecke_N(f, 0)


def test_demazure(A1):
    assert demazure(e(A1, 1), 1) == e(A1, 1) + e(A1, -1)
    assert demazure(e(A1, -1), 1).is_zero()
    assert demazure(GroupAlgebraElement.one(A1), 1) == GroupAlgebraElement.one(A1)
    assert apply_demazure_word(e(A1, 2), [1]) == e(A1, 2) + e(A1, 0) + e(A1, -2)


def test_chi_and_xi(A1):
    assert chi(A1, [1, 0]) == CoeffFraction.from_monomial(ParamMonomial(0, 2, 0))
    assert chi(A1, ExtendedWeylElement.identity(A1)) == 1
    assert xi(A1, [1]) == CoeffFraction.from_monomial(T_HALF)
    with pytest.raises(ValueError):
        xi(A1, omega_element(A1, Weight((1,))))


def test_spectral_vector(A1):
    alpha = AffineRoot((1,), 0)
    assert spectral_t(A1, alpha, Weight((-1,))) == ParamMonomial(0, 2, 0)
    assert spectral_q(A1, alpha, Weight((-1,))) == ParamMonomial(-2, -2, 0)


def test_kl_involution_on_polynomials(A1, A2):
    for f in (e(A1, -1), e(A1, 2), e(A1, 1) + e(A1, -2)):
        assert kappa(kappa(f)) == f
    assert kappa(e(A1, -1)) == e(A1, -1) + e(
        A1, 1, coeff=CoeffFraction(ParamPoly.binomial(ParamMonomial(0, -2, 0)))
    )
    assert varsigma(e(A2, 1, 0)) == e(A2, 0, 1)
    assert varsigma(e(A1, 1)) == e(A1, 1)
