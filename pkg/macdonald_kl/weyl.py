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

"""Finite and extended affine Weyl groups.

An extended affine element is stored in the normal form tau_mu w, acting on
weights by the dot action x -> w(x) + mu. Simple affine reflections are
s_i for i in 1..n and s_0 = tau_theta s_theta. A word (l1, ..., lk) with
component omega stands for s_l1 ... s_lk omega.
"""

__all__ = (
    "FiniteWeylElement",
    "ExtendedWeylElement",
    "AffineWord",
    "WeightOrbitData",
    "simple_reflection",
    "omega_element",
    "finite_longest",
    "affine_dot_action",
    "level_zero_action",
    "orbit_data",
    "alcove_interval",
    "bruhat_leq_weights",
    "bruhat_leq",
    "bruhat_lower_set",
    "bruhat_interval_in_orbit",
    "descend_to_alcove",
    "finite_descent_word",
    "stabilizer_longest",
    "affine_inversion_set",
)

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .roots import AffineRoot, RootSystemData, Weight

LOGGER = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _apply(m: Matrix, coords: Sequence[Any]) -> Tuple[Any, ...]:
    n = len(m)
    return tuple(sum(m[i][j] * coords[j] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class FiniteWeylElement:
    """A finite Weyl group element, as its matrix on fundamental-weight coordinates.

    Column j of the matrix is w(lambda_j).
    """

    system: RootSystemData
    matrix: Matrix

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, FiniteWeylElement):
            return NotImplemented
        return self.system == other.system and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.system.name, self.matrix))

    @classmethod
    def identity(cls, system: RootSystemData) -> "FiniteWeylElement":
        return cls(system, _identity_matrix(system.rank))

    @classmethod
    def simple(cls, system: RootSystemData, i: int) -> "FiniteWeylElement":
        n = system.rank
        columns = [system.reflect_weight(Weight.fundamental(n, j + 1), i).coords for j in range(n)]
        return cls(system, tuple(tuple(columns[j][k] for j in range(n)) for k in range(n)))

    @classmethod
    def reflection(cls, system: RootSystemData, b: Sequence[int]) -> "FiniteWeylElement":
        """s_beta for a finite root beta in simple-root coordinates."""
        n = system.rank
        columns = [
            system.reflect_weight_by_root(Weight.fundamental(n, j + 1), b).coords
            for j in range(n)
        ]
        return cls(system, tuple(tuple(columns[j][k] for j in range(n)) for k in range(n)))

    @classmethod
    def from_word(cls, system: RootSystemData, word: Iterable[int]) -> "FiniteWeylElement":
        """s_w1 s_w2 ... s_wk"""
        result = cls.identity(system)
        for i in word:
            result = result * cls.simple(system, i)
        return result

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return FiniteWeylElement(self.system, _matmul(self.matrix, other.matrix))

    def act(self, weight: Weight) -> Weight:
        return Weight(_apply(self.matrix, weight.coords))

    def act_point(self, coords: Sequence[Any]) -> Tuple[Any, ...]:
        return _apply(self.matrix, coords)

    def act_root(self, b: Sequence[Any]) -> Tuple[Any, ...]:
        """w(beta) for beta in simple-root coordinates."""
        image = self.act(self.system.root_to_weight([int(c) for c in b]))
        coords = self.system.weight_to_root(image)
        return tuple(int(c) if c.denominator == 1 else c for c in coords)

    def is_identity(self) -> bool:
        return self.matrix == _identity_matrix(self.system.rank)

    def left_descents(self) -> List[int]:
        rho_image = self.act(self.system.rho())
        return [i + 1 for i, c in enumerate(rho_image.coords) if c < 0]

    def reduced_word(self, prefer_largest: bool = False) -> Tuple[int, ...]:
        """A reduced word (l1, ..., lk) with self = s_l1 ... s_lk."""
        letters = []
        w = self
        while True:
            descents = w.left_descents()
            if not descents:
                break
            i = descents[-1] if prefer_largest else descents[0]
            letters.append(i)
            w = FiniteWeylElement.simple(self.system, i) * w
        return tuple(letters)

    def length(self) -> int:
        return len(self.reduced_word())

    def inverse(self) -> "FiniteWeylElement":
        return FiniteWeylElement.from_word(self.system, reversed(self.reduced_word()))

    def inversion_set(self) -> FrozenSet[Tuple[int, ...]]:
        """{alpha > 0 : w(alpha) < 0}"""
        result = set()
        for b in self.system.positive_roots:
            image = self.act_root(b)
            if all(c <= 0 for c in image):
                result.add(b)
        return frozenset(result)

    def __repr__(self) -> str:
        return f"FiniteWeylElement({self.system.name}, {list(self.reduced_word())})"


@functools.lru_cache(maxsize=None)
def finite_longest(system: RootSystemData) -> FiniteWeylElement:
    """The longest element w_o of the finite Weyl group."""
    w = FiniteWeylElement.identity(system)
    while True:
        rho_image = w.act(system.rho())
        ascents = [i + 1 for i, c in enumerate(rho_image.coords) if c > 0]
        if not ascents:
            return w
        w = FiniteWeylElement.simple(system, ascents[0]) * w


@dataclass(frozen=True)
class ExtendedWeylElement:
    """tau_mu w, with mu in the weight lattice and w finite."""

    translation: Weight
    finite: FiniteWeylElement

    @property
    def system(self) -> RootSystemData:
        return self.finite.system

    @classmethod
    def identity(cls, system: RootSystemData) -> "ExtendedWeylElement":
        return cls(Weight.zero(system.rank), FiniteWeylElement.identity(system))

    @classmethod
    def translation_by(cls, system: RootSystemData, mu: Weight) -> "ExtendedWeylElement":
        return cls(mu, FiniteWeylElement.identity(system))

    @classmethod
    def from_finite(cls, w: FiniteWeylElement) -> "ExtendedWeylElement":
        return cls(Weight.zero(w.system.rank), w)

    @classmethod
    def from_word(
        cls, system: RootSystemData, letters: Iterable[int], omega: Optional[Weight] = None
    ) -> "ExtendedWeylElement":
        return AffineWord(tuple(letters), omega or Weight.zero(system.rank)).evaluate(system)

    def __mul__(self, other: "ExtendedWeylElement") -> "ExtendedWeylElement":
        return ExtendedWeylElement(
            self.translation + self.finite.act(other.translation), self.finite * other.finite
        )

    def multiply(self, other: "ExtendedWeylElement") -> "ExtendedWeylElement":
        return self * other

    def inverse(self) -> "ExtendedWeylElement":
        finite_inverse = self.finite.inverse()
        return ExtendedWeylElement(-finite_inverse.act(self.translation), finite_inverse)

    def dot(self, weight: Weight) -> Weight:
        return self.finite.act(weight) + self.translation

    def dot_point(self, coords: Sequence[Any]) -> Tuple[Any, ...]:
        image = self.finite.act_point(coords)
        return tuple(a + b for a, b in zip(image, self.translation.coords))

    def act_affine_root(self, root: AffineRoot) -> AffineRoot:
        """Level zero action; tau_mu(x) = x - (x, mu) delta."""
        image = self.finite.act_root(root.beta)
        beta = tuple(int(c) for c in image)
        return AffineRoot(
            beta, root.k - self.system.weight_root_pairing(self.translation, beta)
        )

    def length(self) -> int:
        """Sum over alpha > 0 of |<lambda, alpha^vee> + 1| on Pi(w), |<lambda, alpha^vee>| off it.

        Here self = w tau_lambda with lambda = w^-1(mu).
        """
        system = self.system
        lam = self.finite.inverse().act(self.translation)
        inversions = self.finite.inversion_set()
        total = 0
        for b in system.positive_roots:
            p = system.coroot_pairing(lam, b)
            total += abs(p + 1) if b in inversions else abs(p)
        return total

    def is_left_descent(self, i: int) -> bool:
        """Whether s_i self < self."""
        system = self.system
        image = self.dot_point(_alcove_center(system))
        if i == 0:
            theta = system.theta
            value = 1 - sum(theta[j] * system.d[j] * image[j] for j in range(system.rank))
        else:
            value = system.d[i - 1] * image[i - 1]
        return value < 0

    def left_descents(self) -> List[int]:
        return [i for i in range(self.system.rank + 1) if self.is_left_descent(i)]

    def reduced_word(self, prefer_largest: bool = False) -> "AffineWord":
        letters = []
        w = self
        while True:
            descents = w.left_descents()
            if not descents:
                break
            i = descents[-1] if prefer_largest else descents[0]
            letters.append(i)
            w = simple_reflection(self.system, i) * w
        # w now has length zero and lies in Omega
        omega = w.dot(Weight.zero(self.system.rank))
        return AffineWord(tuple(letters), omega)

    def is_omega(self) -> bool:
        return not self.left_descents()

    def __repr__(self) -> str:
        return f"ExtendedWeylElement({self.reduced_word()})"


@functools.lru_cache(maxsize=None)
def _alcove_center(system: RootSystemData) -> Tuple[Fraction, ...]:
    """rho / (1 + (rho, theta)), an interior point of the fundamental alcove."""
    height = system.weight_root_pairing(system.rho(), system.theta)
    return tuple(Fraction(1, 1 + height) for _ in range(system.rank))


@functools.lru_cache(maxsize=None)
def simple_reflection(system: RootSystemData, i: int) -> ExtendedWeylElement:
    if i == 0:
        return ExtendedWeylElement(
            system.theta_weight, FiniteWeylElement.reflection(system, system.theta)
        )
    return ExtendedWeylElement.from_finite(FiniteWeylElement.simple(system, i))


@functools.lru_cache(maxsize=None)
def omega_element(system: RootSystemData, weight: Weight) -> ExtendedWeylElement:
    """omega_lambda = tau_lambda w_lambda for lambda minuscule or zero."""
    if weight not in system.minuscule_weights():
        raise ValueError(f"{weight} is not minuscule")
    w_ring, _ = finite_descent_word(system, weight)
    return ExtendedWeylElement(weight, FiniteWeylElement.from_word(system, w_ring))


@dataclass(frozen=True)
class AffineWord:
    """s_l1 ... s_lk omega, with omega indexed by a minuscule weight or 0."""

    letters: Tuple[int, ...]
    omega: Weight

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def evaluate(self, system: RootSystemData) -> ExtendedWeylElement:
        result = ExtendedWeylElement.identity(system)
        for i in self.letters:
            result = result * simple_reflection(system, i)
        if not self.omega.is_zero():
            result = result * omega_element(system, self.omega)
        return result

    def render(self) -> str:
        letters = " ".join(f"s{i}" for i in self.letters) or "e"
        return f"{letters} | omega={self.omega}"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {"letters": list(self.letters), "omega": list(self.omega.coords)}


def affine_dot_action(system: RootSystemData, word: AffineWord, weight: Weight) -> Weight:
    """Apply s_l1 ... s_lk omega to a weight by the level one action."""
    if not word.omega.is_zero():
        weight = omega_element(system, word.omega).dot(weight)
    for i in reversed(word.letters):
        weight = simple_reflection(system, i).dot(weight)
    return weight


def level_zero_action(system: RootSystemData, word: AffineWord, root: AffineRoot) -> AffineRoot:
    return word.evaluate(system).act_affine_root(root)


def finite_descent_word(system: RootSystemData, weight: Weight) -> Tuple[Tuple[int, ...], Weight]:
    """Descend lambda to lambda_- with the smallest index having c_i > 0.

    Returns the letters (i1, ..., ik), so w_lambda = s_i1 ... s_ik, and lambda_-.
    """
    letters = []
    while True:
        positive = [i for i, c in enumerate(weight.coords) if c > 0]
        if not positive:
            return tuple(letters), weight
        i = positive[0] + 1
        letters.append(i)
        weight = system.reflect_weight(weight, i)


def _affine_pairing_simple(system: RootSystemData, weight: Weight, i: int) -> int:
    """(alpha_i, lambda + Lambda_0)"""
    if i == 0:
        return 1 - system.weight_root_pairing(weight, system.theta)
    return system.d[i - 1] * weight.coords[i - 1]


def descend_to_alcove(
    system: RootSystemData, weight: Weight, prefer_largest: bool = False
) -> Tuple[Tuple[int, ...], Weight]:
    """Greedy affine descent of lambda to the fundamental alcove.

    Returns letters (i1, ..., ip) with lambda = s_i1 . ... . s_ip . lambda_tilde.
    """
    letters = []
    indices = list(range(system.rank + 1))
    if prefer_largest:
        indices.reverse()
    while True:
        for i in indices:
            if _affine_pairing_simple(system, weight, i) < 0:
                break
        else:
            return tuple(letters), weight
        letters.append(i)
        weight = simple_reflection(system, i).dot(weight)


def stabilizer_longest(system: RootSystemData, weight: Weight) -> ExtendedWeylElement:
    """Longest element of the parabolic subgroup fixing an alcove weight."""
    fixing = [i for i in range(system.rank + 1) if _affine_pairing_simple(system, weight, i) == 0]
    x = ExtendedWeylElement.identity(system)
    while True:
        for j in fixing:
            if not x.is_left_descent(j):
                x = simple_reflection(system, j) * x
                break
        else:
            return x


@dataclass(frozen=True)
class WeightOrbitData:
    """Distinguished weights and coset representatives attached to lambda.

    Attributes:
        lam: The weight.
        lambda_minus: Anti-dominant element of its finite orbit.
        lambda_plus: Dominant element of its finite orbit.
        lambda_tilde: Representative of its affine orbit in the fundamental alcove.
        w_ring: Reduced word of the minimal w with w(lambda_minus) = lambda.
        w_ring_element: That finite element.
        w_lambda: Reduced word of the minimal w with w . lambda_tilde = lambda.
        v_lambda: Reduced word of w_lambda times the longest stabilizer element.
        omega_tilde: omega for lambda_tilde.
    """

    lam: Weight
    lambda_minus: Weight
    lambda_plus: Weight
    lambda_tilde: Weight
    w_ring: Tuple[int, ...]
    w_ring_element: FiniteWeylElement
    w_lambda: AffineWord
    v_lambda: AffineWord
    omega_tilde: ExtendedWeylElement

    @property
    def w_lambda_element(self) -> ExtendedWeylElement:
        return self.w_lambda.evaluate(self.w_ring_element.system)


@functools.lru_cache(maxsize=None)
def orbit_data(system: RootSystemData, weight: Weight) -> WeightOrbitData:
    w_ring, lambda_minus = finite_descent_word(system, weight)
    letters, lambda_tilde = descend_to_alcove(system, weight)
    zero = Weight.zero(system.rank)
    w_lambda = AffineWord(letters, zero)
    v_element = w_lambda.evaluate(system) * stabilizer_longest(system, lambda_tilde)
    return WeightOrbitData(
        lam=weight,
        lambda_minus=lambda_minus,
        lambda_plus=finite_longest(system).act(lambda_minus),
        lambda_tilde=lambda_tilde,
        w_ring=w_ring,
        w_ring_element=FiniteWeylElement.from_word(system, w_ring),
        w_lambda=w_lambda,
        v_lambda=v_element.reduced_word(),
        omega_tilde=omega_element(system, lambda_tilde),
    )


@functools.lru_cache(maxsize=None)
def alcove_interval(system: RootSystemData, weight: Weight) -> FrozenSet[Weight]:
    """{x . lambda_tilde : x <= w_lambda}"""
    data = orbit_data(system, weight)
    reached: Set[Weight] = {data.lambda_tilde}
    for i in reversed(data.w_lambda.letters):
        s = simple_reflection(system, i)
        reached |= {s.dot(mu) for mu in reached}
    return frozenset(reached)


def bruhat_leq_weights(system: RootSystemData, mu: Weight, lam: Weight) -> bool:
    """mu <= lambda: same alcove representative and w_mu <= w_lambda."""
    if orbit_data(system, mu).lambda_tilde != orbit_data(system, lam).lambda_tilde:
        return False
    return mu in alcove_interval(system, lam)


@functools.lru_cache(maxsize=None)
def bruhat_leq(x: ExtendedWeylElement, y: ExtendedWeylElement) -> bool:
    """Bruhat order on the extended affine Weyl group."""
    descents = y.left_descents()
    if not descents:
        return x == y
    s = simple_reflection(y.system, descents[0])
    if x.is_left_descent(descents[0]):
        return bruhat_leq(s * x, s * y)
    return bruhat_leq(x, s * y)


def bruhat_lower_set(w: ExtendedWeylElement) -> FrozenSet[ExtendedWeylElement]:
    """{x : x <= w}, as products of subwords of a reduced word."""
    system = w.system
    word = w.reduced_word()
    tail = omega_element(system, word.omega)
    reached: Set[ExtendedWeylElement] = {tail}
    for i in reversed(word.letters):
        s = simple_reflection(system, i)
        reached |= {s * x for x in reached}
    return frozenset(reached)


def bruhat_interval_in_orbit(system: RootSystemData, weight: Weight) -> List[Weight]:
    """{mu : w_o(lambda) <= mu <= lambda_-}, sorted by coordinates."""
    data = orbit_data(system, weight)
    bottom = finite_longest(system).act(weight)
    return sorted(
        mu
        for mu in alcove_interval(system, data.lambda_minus)
        if bruhat_leq_weights(system, bottom, mu)
    )


def affine_inversion_set(w: ExtendedWeylElement) -> FrozenSet[AffineRoot]:
    """{alpha in R^+ : w(alpha) < 0}"""
    system = w.system
    bound = 1 + max(
        abs(system.weight_root_pairing(w.translation, b)) for b in system.positive_roots
    )
    result = set()
    for b in system.positive_roots:
        step = system.r if system.is_long(b) else 1
        neg = tuple(-c for c in b)
        for k in range(0, bound + 1, step):
            for root in (AffineRoot(b, k), AffineRoot(neg, k)):
                if root.is_positive() and not w.act_affine_root(root).is_positive():
                    result.add(root)
    return frozenset(result)
