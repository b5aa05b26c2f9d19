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

"""Static data of a reduced irreducible root system and its affine roots.

Simple roots are numbered as in Bourbaki. Roots are stored in simple-root
coordinates, weights in fundamental-weight coordinates. The invariant form
gives short roots squared length 2, so (alpha_i, alpha_i) = 2 d_i with
d_i = 1 for short simple roots and d_i = r for long ones.
"""

__all__ = (
    "Weight",
    "AffineRoot",
    "RootSystemData",
    "build_root_system",
    "parse_system",
    "enumerate_affine_roots_negative_on",
    "iter_weight_box",
)

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import sympy

from .coeffs import ParamMonomial, ParameterScale
from .errors import InvalidJob, UnsupportedType

LOGGER = logging.getLogger(__name__)

RootVector = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Weight:
    """An element of the weight lattice, in fundamental-weight coordinates."""

    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, rank: int, i: int) -> "Weight":
        """lambda_i, for i in 1..rank."""
        return cls(tuple(1 if j == i - 1 else 0 for j in range(rank)))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_antidominant(self) -> bool:
        return all(c <= 0 for c in self.coords)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def to_json(self) -> List[int]:
        return list(self.coords)


@dataclass(frozen=True, order=True)
class AffineRoot:
    """beta + k delta, with beta a finite root in simple-root coordinates."""

    beta: RootVector
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(int(c) for c in self.beta))

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(tuple(-b for b in self.beta), -self.k)

    def finite_is_positive(self) -> bool:
        return all(b >= 0 for b in self.beta)

    def is_positive(self) -> bool:
        if self.finite_is_positive():
            return self.k >= 0
        return self.k > 0


def _gram_matrix(type_tag: str, n: int) -> List[List[int]]:
    """(alpha_i, alpha_j) for the simple roots, Bourbaki numbering."""
    d = [1] * n
    edges: List[Tuple[int, int, int]] = []
    if type_tag == "A":
        edges = [(i, i + 1, -1) for i in range(n - 1)]
    elif type_tag == "B":
        d = [2] * (n - 1) + [1]
        edges = [(i, i + 1, -2) for i in range(n - 1)]
    elif type_tag == "C":
        d = [1] * (n - 1) + [2]
        edges = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -2)]
    elif type_tag == "D":
        edges = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 3, n - 1, -1)]
    elif type_tag == "E":
        edges = [(0, 2, -1), (1, 3, -1)] + [(i, i + 1, -1) for i in range(2, n - 1)]
    elif type_tag == "F":
        d = [2, 2, 1, 1]
        edges = [(0, 1, -2), (1, 2, -2), (2, 3, -1)]
    elif type_tag == "G":
        d = [1, 3]
        edges = [(0, 1, -3)]
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = 2 * d[i]
    for i, j, value in edges:
        gram[i][j] = gram[j][i] = value
    return gram


_VALID_RANKS = {
    "A": range(1, 9),
    "B": range(2, 9),
    "C": range(2, 9),
    "D": range(4, 9),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}


class RootSystemData:
    """All static data of one reduced irreducible root system.

    Attributes:
        type_tag: Cartan type letter.
        rank: Number of simple roots.
        gram: (alpha_i, alpha_j) as integers.
        cartan: <alpha_i^vee, alpha_j> as integers.
        d: Half squared lengths of the simple roots.
        r: Lace number, the ratio of long to short squared lengths.
        positive_roots: Positive roots in simple-root coordinates,
            sorted by height then coordinates.
        theta: The highest short root.
        m_star: Lowest common denominator of the (lambda_j, lambda_k).
        m_literal: Lowest common denominator of the (alpha_j, lambda_k).
        c0: Always 1 for reduced systems.
    """

    def __init__(self, type_tag: str, rank: int) -> None:
        if type_tag not in _VALID_RANKS or rank not in _VALID_RANKS[type_tag]:
            raise UnsupportedType(type_tag=type_tag, rank=rank)
        self.type_tag = type_tag
        self.rank = rank
        n = rank
        gram = _gram_matrix(type_tag, n)
        self.gram: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in gram)
        self.d: Tuple[int, ...] = tuple(gram[i][i] // 2 for i in range(n))
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(gram[i][j] // self.d[i] for j in range(n)) for i in range(n)
        )
        self.r = max(self.d)
        self.c0 = 1

        inverse = sympy.Matrix(self.cartan).inv()
        # column j of A^-1 is lambda_j in simple-root coordinates
        self._cartan_inverse: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(n))
            for i in range(n)
        )

        self.roots: Tuple[RootVector, ...] = self._enumerate_roots()
        self.positive_roots: Tuple[RootVector, ...] = tuple(
            sorted(
                (b for b in self.roots if all(c >= 0 for c in b)),
                key=lambda b: (sum(b), b),
            )
        )
        self._positive_set = frozenset(self.positive_roots)
        short = [b for b in self.positive_roots if self.norm(b) == 2]
        self.theta: RootVector = max(short, key=lambda b: (sum(b), b))
        self.highest_root: RootVector = max(self.positive_roots, key=lambda b: (sum(b), b))
        self.theta_weight = self.root_to_weight(self.theta)

        denominators = 1
        literal = 1
        for j in range(n):
            for k in range(n):
                value = self.weight_weight_pairing(
                    Weight.fundamental(n, j + 1), Weight.fundamental(n, k + 1)
                )
                denominators = denominators * value.denominator // math.gcd(
                    denominators, value.denominator
                )
                alpha_lambda = Fraction(self.d[j] if j == k else 0)
                literal = literal * alpha_lambda.denominator // math.gcd(
                    literal, alpha_lambda.denominator
                )
        self.m_star = denominators
        self.m_literal = literal
        self.scale = ParameterScale(m_star=self.m_star, simply_laced=self.r == 1)
        LOGGER.debug(
            "Built %s: %d positive roots, m*=%d", self.name, len(self.positive_roots), self.m_star
        )

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystemData({self.type_tag!r}, {self.rank})"

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RootSystemData):
            return NotImplemented
        return (self.type_tag, self.rank) == (other.type_tag, other.rank)

    def __hash__(self) -> int:
        return hash((self.type_tag, self.rank))

    def __reduce__(self):
        return (build_root_system, (self.type_tag, self.rank))

    def _enumerate_roots(self) -> Tuple[RootVector, ...]:
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for b in frontier:
                for i in range(n):
                    image = self.reflect_root(b, i + 1)
                    if image not in seen:
                        seen.add(image)
                        new.append(image)
            frontier = new
        return tuple(sorted(seen))

    # simple roots and fundamental weights as ambient vectors

    @property
    def simple_roots(self) -> Tuple[Tuple[Fraction, ...], ...]:
        n = self.rank
        return tuple(
            tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n)
        )

    @property
    def fundamental_weights(self) -> Tuple[Tuple[Fraction, ...], ...]:
        n = self.rank
        return tuple(
            tuple(self._cartan_inverse[i][j] for i in range(n)) for j in range(n)
        )

    # pairings

    def pairing(self, x: Sequence[Any], y: Sequence[Any]) -> Fraction:
        """The invariant form on ambient vectors in simple-root coordinates."""
        n = self.rank
        total = Fraction(0)
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if y[j] and self.gram[i][j]:
                    total += Fraction(x[i]) * Fraction(y[j]) * self.gram[i][j]
        return total

    def norm(self, b: Sequence[Any]) -> Fraction:
        return self.pairing(b, b)

    def coroot(self, y: Sequence[Any]) -> Tuple[Fraction, ...]:
        """2y/(y,y)"""
        factor = Fraction(2) / self.norm(y)
        return tuple(Fraction(c) * factor for c in y)

    def weight_to_ambient(self, weight: Weight) -> Tuple[Fraction, ...]:
        n = self.rank
        return tuple(
            sum((self._cartan_inverse[i][j] * weight.coords[j] for j in range(n)), Fraction(0))
            for i in range(n)
        )

    def root_to_weight(self, b: Sequence[int]) -> Weight:
        """Fundamental-weight coordinates of a root lattice vector."""
        n = self.rank
        return Weight(
            tuple(sum(self.cartan[k][j] * b[j] for j in range(n)) for k in range(n))
        )

    def weight_to_root(self, weight: Weight) -> Tuple[Fraction, ...]:
        return self.weight_to_ambient(weight)

    def weight_root_pairing(self, weight: Weight, b: Sequence[Any]) -> Any:
        """(lambda, beta) for a weight and a root-coordinate vector."""
        return sum(b[j] * self.d[j] * weight.coords[j] for j in range(self.rank))

    def weight_weight_pairing(self, x: Weight, y: Weight) -> Fraction:
        return self.weight_root_pairing(x, self.weight_to_ambient(y))

    def coroot_pairing(self, weight: Weight, b: Sequence[int]) -> int:
        """<lambda, beta^vee> for a root beta."""
        value = Fraction(2 * self.weight_root_pairing(weight, b), self.norm(b))
        if value.denominator != 1:
            raise ValueError(f"{b} is not a root")
        return int(value)

    def affine_pairing(self, weight: Weight, root: AffineRoot) -> int:
        """(beta + k delta, lambda + Lambda_0)"""
        return self.weight_root_pairing(weight, root.beta) + root.k

    # roots

    def is_root(self, b: Sequence[int]) -> bool:
        return tuple(b) in self._positive_set or tuple(-c for c in b) in self._positive_set

    def is_positive_root(self, b: Sequence[int]) -> bool:
        return tuple(b) in self._positive_set

    def is_long(self, b: Sequence[int]) -> bool:
        return self.r > 1 and self.norm(b) > 2

    def is_long_simple(self, i: int) -> bool:
        """i in 0..n; alpha_0 = delta - theta is always short."""
        if i == 0:
            return False
        return self.r > 1 and self.d[i - 1] > 1

    def simple_affine_root(self, i: int) -> AffineRoot:
        if i == 0:
            return AffineRoot(tuple(-c for c in self.theta), 1)
        return AffineRoot(tuple(1 if j == i - 1 else 0 for j in range(self.rank)), 0)

    def height(self, b: Sequence[Any]) -> Any:
        return sum(b)

    def t_half(self, b: Sequence[int]) -> ParamMonomial:
        """t_beta^(1/2) for a finite root beta."""
        if self.is_long(b):
            return ParamMonomial(0, 0, 1)
        return ParamMonomial(0, 1, 0)

    def t_half_simple(self, i: int) -> ParamMonomial:
        """t_i^(1/2) for i in 0..n."""
        if self.is_long_simple(i):
            return ParamMonomial(0, 0, 1)
        return ParamMonomial(0, 1, 0)

    def reflect_root(self, b: Sequence[int], i: int) -> RootVector:
        """s_i(beta) for i in 1..n, in simple-root coordinates."""
        n = self.rank
        c = sum(self.cartan[i - 1][j] * b[j] for j in range(n))
        return tuple(b[j] - (c if j == i - 1 else 0) for j in range(n))

    def reflect_weight(self, weight: Weight, i: int) -> Weight:
        """s_i(lambda) for i in 1..n."""
        c = weight.coords[i - 1]
        if not c:
            return weight
        n = self.rank
        return Weight(
            tuple(weight.coords[k] - c * self.cartan[k][i - 1] for k in range(n))
        )

    def reflect_weight_by_root(self, weight: Weight, b: Sequence[int]) -> Weight:
        """s_beta(lambda) = lambda - <lambda, beta^vee> beta"""
        c = self.coroot_pairing(weight, b)
        if not c:
            return weight
        return weight - self.root_to_weight(b).scale(c)

    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    def alcove_contains(self, weight: Weight) -> bool:
        """Whether lambda lies in the closed fundamental alcove."""
        return weight.is_dominant() and self.weight_root_pairing(weight, self.theta) <= 1

    def minuscule_weights(self) -> Tuple[Weight, ...]:
        """The weights in the fundamental alcove, 0 included."""
        result = [Weight.zero(self.rank)]
        for i in range(self.rank):
            if self.d[i] * self.theta[i] == 1:
                result.append(Weight.fundamental(self.rank, i + 1))
        return tuple(result)

    def to_json(self) -> Dict[str, Any]:
        def frac(x: Fraction) -> str:
            return str(x)

        return {
            "type": self.type_tag,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "gram": [list(row) for row in self.gram],
            "simple_roots": [[frac(c) for c in v] for v in self.simple_roots],
            "fundamental_weights": [[frac(c) for c in v] for v in self.fundamental_weights],
            "positive_roots": [
                {"root": list(b), "length": "long" if self.is_long(b) else "short"}
                for b in self.positive_roots
            ],
            "theta": list(self.theta),
            "r": self.r,
            "m_star": self.m_star,
            "m_literal": self.m_literal,
            "c0": self.c0,
        }


@functools.lru_cache(maxsize=None)
def build_root_system(type_tag: str, rank: int) -> RootSystemData:
    return RootSystemData(type_tag, rank)


def parse_system(text: str) -> RootSystemData:
    """Parse a label such as "A2" or "G2"."""
    text = text.strip().upper()
    if text.startswith("BC") and text[2:].isdigit():
        raise UnsupportedType(type_tag="BC", rank=int(text[2:]))
    if len(text) < 2 or not text[1:].isdigit():
        raise InvalidJob(field="system", reason=f"{text!r} is not of the form <type><rank>")
    return build_root_system(text[0], int(text[1:]))


def enumerate_affine_roots_negative_on(
    system: RootSystemData, weight: Weight
) -> List[AffineRoot]:
    """Positive affine roots alpha with (alpha, lambda + Lambda_0) < 0, sorted by (k, beta)."""
    result = []
    for b in system.positive_roots:
        step = system.r if system.is_long(b) else 1
        p = system.weight_root_pairing(weight, b)
        # beta + k delta with k >= 0
        for k in range(0, -p, step):
            result.append(AffineRoot(b, k))
        # -beta + k delta with k > 0
        neg = tuple(-c for c in b)
        for k in range(step, p, step):
            result.append(AffineRoot(neg, k))
    result.sort(key=lambda root: (root.k, root.beta))
    return result


def iter_weight_box(rank: int, radius: int) -> Iterable[Weight]:
    """All weights with |coords| <= radius, in lexicographic order."""
    for coords in itertools.product(range(-radius, radius + 1), repeat=rank):
        yield Weight(coords)
