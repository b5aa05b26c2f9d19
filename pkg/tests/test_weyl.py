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


def w(*coords):
    return Weight(coords)


def test_finite_group(A2):
    assert FiniteWeylElement.from_word(A2, [1, 2, 1]) == FiniteWeylElement.from_word(A2, [2, 1, 2])
    assert FiniteWeylElement.from_word(A2, [1, 1]).is_identity()
    longest = finite_longest(A2)
    assert longest.length() == 3
    assert len(longest.reduced_word()) == 3
    assert longest.act(w(1, 0)) == w(0, -1)
    assert longest.inverse() == longest
    assert len(longest.inversion_set()) == 3

    assert finite_longest(parse_system("A3")).length() == 6
    assert finite_longest(parse_system("G2")).length() == 6


def test_simple_reflections_a1(A1):
    s0 = simple_reflection(A1, 0)
    s1 = simple_reflection(A1, 1)
    assert s1.dot(w(3)) == w(-3)
    assert s0.dot(w(0)) == w(2)
    assert s0.dot(w(1)) == w(1)
    assert (s0 * s0) == ExtendedWeylElement.identity(A1)
    assert s0.length() == 1
    assert (s1 * s0).length() == 2
    assert (s1 * s0).translation == w(-2)


def test_reduced_word(A1):
    x = ExtendedWeylElement.translation_by(A1, w(-2))
    assert x.reduced_word() == AffineWord((1, 0), w(0))
    assert ExtendedWeylElement.from_word(A1, [1, 0]) == x
    assert x.reduced_word().render() == "s1 s0 | omega=0"
    assert AffineWord((), w(1)).render() == "e | omega=1"
    assert x.reduced_word().to_json() == {"letters": [1, 0], "omega": [0]}


def test_omega(A1, A2):
    omega = omega_element(A1, w(1))
    assert omega.is_omega()
    assert omega.length() == 0
    assert omega * omega == ExtendedWeylElement.identity(A1)
    assert omega.dot(w(0)) == w(1)

    omega = omega_element(A2, w(1, 0))
    assert omega.is_omega()
    assert omega * omega * omega == ExtendedWeylElement.identity(A2)

    with pytest.raises(ValueError):
        omega_element(A2, w(1, 1))


def test_affine_dot_action(A1):
    assert affine_dot_action(A1, AffineWord((1,), w(1)), w(0)) == w(-1)
    assert affine_dot_action(A1, AffineWord((1, 0), w(0)), w(0)) == w(-2)


def test_orbit_data_a1(A1):
    data = orbit_data(A1, w(-1))
    assert data.lambda_minus == w(-1)
    assert data.lambda_plus == w(1)
    assert data.lambda_tilde == w(1)
    assert data.w_ring == ()
    assert data.w_lambda == AffineWord((1,), w(0))
    assert data.omega_tilde == omega_element(A1, w(1))

    data = orbit_data(A1, w(2))
    assert data.lambda_minus == w(-2)
    assert data.w_ring == (1,)
    assert data.lambda_tilde == w(0)
    assert data.w_lambda == AffineWord((0,), w(0))

    data = orbit_data(A1, w(-2))
    assert data.w_lambda == AffineWord((1, 0), w(0))


def test_orbit_data_box(A2, B2, G2, box):
    for system in (A2, B2, G2):
        for lam in box(system):
            data = orbit_data(system, lam)
            element = data.w_lambda_element
            assert element.dot(data.lambda_tilde) == lam
            assert element.length() == len(data.w_lambda)
            assert system.alcove_contains(data.lambda_tilde)
            assert data.lambda_minus.is_antidominant()
            assert data.w_ring_element.act(data.lambda_minus) == lam
            assert data.w_ring_element.length() == len(data.w_ring)
            assert len(data.v_lambda) >= len(data.w_lambda)


def test_alcove_interval(A1):
    assert alcove_interval(A1, w(-2)) == frozenset([w(-2), w(0), w(2)])
    assert alcove_interval(A1, w(2)) == frozenset([w(0), w(2)])
    assert bruhat_leq_weights(A1, w(0), w(-2))
    assert bruhat_leq_weights(A1, w(2), w(-2))
    assert not bruhat_leq_weights(A1, w(-2), w(2))
    assert not bruhat_leq_weights(A1, w(1), w(-2))


def test_bruhat_order(A1):
    s0 = simple_reflection(A1, 0)
    s1 = simple_reflection(A1, 1)
    e = ExtendedWeylElement.identity(A1)
    assert bruhat_leq(e, s1 * s0)
    assert bruhat_leq(s1, s1 * s0)
    assert bruhat_leq(s0, s1 * s0)
    assert not bruhat_leq(s0 * s1, s1 * s0)
    assert not bruhat_leq(s1 * s0, s1)
    assert bruhat_lower_set(s1 * s0) == frozenset([e, s1, s0, s1 * s0])


def test_bruhat_interval_in_orbit(A1):
    assert bruhat_interval_in_orbit(A1, w(-2)) == [w(-2), w(2)]
    assert bruhat_interval_in_orbit(A1, w(0)) == [w(0)]


def test_affine_inversion_set(A1, A2):
    x = ExtendedWeylElement.translation_by(A1, w(-2))
    assert len(affine_inversion_set(x)) == x.length()
    for root in affine_inversion_set(x):
        assert root.is_positive()
        assert not x.act_affine_root(root).is_positive()

    y = ExtendedWeylElement.from_word(A2, [0, 1, 2, 0])
    assert len(affine_inversion_set(y)) == y.length()
