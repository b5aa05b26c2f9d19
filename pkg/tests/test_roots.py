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

import json
from fractions import Fraction

from macdonald_kl import *


def test_weight_arithmetic():
    x = Weight((1, -2))
    y = Weight((0, 3))
    assert x + y == Weight((1, 1))
    assert x - y == Weight((1, -5))
    assert -x == Weight((-1, 2))
    assert x.scale(2) == Weight((2, -4))
    assert str(x) == "1,-2"
    assert x.to_json() == [1, -2]
    assert Weight.zero(2).is_zero()
    assert Weight.fundamental(3, 2) == Weight((0, 1, 0))
    assert Weight((0, 1)).is_dominant()
    assert Weight((0, -1)).is_antidominant()
    assert not x.is_dominant() and not x.is_antidominant()


def test_affine_root():
    root = AffineRoot((1, 0), 2)
    assert -root == AffineRoot((-1, 0), -2)
    assert root.is_positive()
    assert AffineRoot((-1, 0), 1).is_positive()
    assert not AffineRoot((-1, 0), 0).is_positive()
    assert AffineRoot((0, 0), 0) == AffineRoot([0, 0])


@pytest.mark.parametrize(
    "label,count,theta,r,m_star",
    [
        ("A1", 1, (1,), 1, 2),
        ("A2", 3, (1, 1), 1, 3),
        ("A3", 6, (1, 1, 1), 1, 4),
        ("B2", 4, (1, 1), 2, 1),
        ("G2", 6, (2, 1), 3, 1),
    ],
)
def test_root_system_data(label, count, theta, r, m_star):
    system = parse_system(label)
    assert system.name == label
    assert len(system.positive_roots) == count
    assert system.theta == theta
    assert system.r == r
    assert system.m_star == m_star
    assert system.c0 == 1
    assert all(system.norm(b) in (2, 2 * r) for b in system.positive_roots)
    assert system.norm(system.theta) == 2


def test_parse_system():
    assert parse_system(" a2 ") is build_root_system("A", 2)
    assert parse_system("A2") == build_root_system("A", 2)

    with pytest.raises(UnsupportedType, match="BC2"):
        parse_system("BC2")
    with pytest.raises(UnsupportedType):
        parse_system("E9")
    with pytest.raises(UnsupportedType):
        parse_system("D3")
    with pytest.raises(InvalidJob, match="system"):
        parse_system("X")


def test_pairings(A2, B2):
    assert A2.pairing((1, 0), (1, 0)) == 2
    assert A2.pairing((1, 0), (0, 1)) == -1
    assert A2.weight_weight_pairing(Weight((1, 0)), Weight((1, 0))) == Fraction(2, 3)
    assert A2.coroot_pairing(Weight((1, 0)), (1, 0)) == 1
    assert A2.coroot_pairing(Weight((1, 1)), (1, 1)) == 2

    # alpha_1 is long in B2
    assert B2.is_long((1, 0))
    assert not B2.is_long((0, 1))
    assert B2.t_half((1, 0)) == ParamMonomial(0, 0, 1)
    assert B2.t_half((0, 1)) == ParamMonomial(0, 1, 0)
    assert not B2.is_long_simple(0)
    assert B2.is_long_simple(1)
    assert B2.coroot_pairing(Weight((0, 1)), (0, 1)) == 1


def test_reflections(A2):
    assert A2.reflect_weight(Weight((1, 0)), 1) == Weight((-1, 1))
    assert A2.reflect_weight(Weight((0, 1)), 1) == Weight((0, 1))
    assert A2.reflect_root((1, 0), 1) == (-1, 0)
    assert A2.reflect_root((0, 1), 1) == (1, 1)
    assert A2.reflect_weight_by_root(Weight((1, 0)), (1, 1)) == Weight((0, -1))
    assert A2.root_to_weight((1, 0)) == Weight((2, -1))
    assert A2.theta_weight == Weight((1, 1))
    assert A2.rho() == Weight((1, 1))


def test_simple_affine_root(A2):
    assert A2.simple_affine_root(0) == AffineRoot((-1, -1), 1)
    assert A2.simple_affine_root(2) == AffineRoot((0, 1), 0)
    assert A2.affine_pairing(Weight((1, 0)), A2.simple_affine_root(0)) == 0


def test_minuscule_weights(A2, B2, G2):
    assert A2.minuscule_weights() == (Weight((0, 0)), Weight((1, 0)), Weight((0, 1)))
    assert B2.minuscule_weights() == (Weight((0, 0)), Weight((0, 1)))
    assert G2.minuscule_weights() == (Weight((0, 0)),)
    for weight in A2.minuscule_weights():
        assert A2.alcove_contains(weight)
    assert not A2.alcove_contains(Weight((1, 1)))


def test_affine_roots_negative_on(A1):
    assert enumerate_affine_roots_negative_on(A1, Weight((1,))) == []
    assert enumerate_affine_roots_negative_on(A1, Weight((-1,))) == [AffineRoot((1,), 0)]
    assert enumerate_affine_roots_negative_on(A1, Weight((2,))) == [AffineRoot((-1,), 1)]
    assert enumerate_affine_roots_negative_on(A1, Weight((-2,))) == [
        AffineRoot((1,), 0),
        AffineRoot((1,), 1),
    ]
    for root in enumerate_affine_roots_negative_on(A1, Weight((3,))):
        assert root.is_positive()
        assert A1.affine_pairing(Weight((3,)), root) < 0


def test_iter_weight_box():
    box = list(iter_weight_box(2, 1))
    assert len(box) == 9
    assert box[0] == Weight((-1, -1))
    assert box[-1] == Weight((1, 1))


def test_to_json(B2):
    data = B2.to_json()
    assert data["type"] == "B"
    assert data["rank"] == 2
    assert data["theta"] == [1, 1]
    assert {"root": [1, 0], "length": "long"} in data["positive_roots"]
    assert data["fundamental_weights"][1] == ["1/2", "1"]
    json.dumps(data)
