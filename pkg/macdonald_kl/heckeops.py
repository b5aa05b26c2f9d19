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

"""Operators on the group algebra of the weight lattice.

Conventions:
    e^(mu + k delta) = q^-k e^mu, so delta never appears in a weight.
    For a word (l1, ..., lk), T_w = T_l1 ... T_lk and the operator applies
    T_lk first. On the X side the affine letter acts by T_03, on the Y side
    by T_01.
    omega_lambda . f = e^lambda T^-1_(w_lambda^-1) . f for lambda minuscule.
"""

__all__ = (
    "GroupAlgebraElement",
    "Side",
    "apply_Ti",
    "apply_Ti_inverse",
    "apply_T01",
    "apply_T02",
    "apply_T03",
    "apply_generator",
    "apply_X",
    "apply_word",
    "apply_omega",
    "apply_Tw",
    "apply_Y",
    "spectral_q",
    "spectral_t",
    "chi",
    "xi",
    "intertwiner_G",
    "intertwiner_G_tilde",
    "normalized_intertwiner_I",
    "zero_hecke_N",
    "N_prime",
    "demazure",
    "apply_N_word",
    "apply_N_prime_word",
    "apply_demazure_word",
    "act_finite",
    "kappa",
    "varsigma",
    "iota",
)

import enum
import functools
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .coeffs import CoeffFraction, ParamMonomial, ParamPoly, ONE
from .errors import InvalidJob, ZeroNormalizer
from .roots import AffineRoot, RootSystemData, Weight
from .weyl import (
    AffineWord,
    ExtendedWeylElement,
    FiniteWeylElement,
    finite_descent_word,
    finite_longest,
    orbit_data,
)

LOGGER = logging.getLogger(__name__)

Coefficient = Union[CoeffFraction, ParamPoly, ParamMonomial, int]


def _as_coeff(c: Coefficient) -> CoeffFraction:
    if isinstance(c, int):
        return CoeffFraction.from_int(c)
    if isinstance(c, ParamMonomial):
        return CoeffFraction.from_monomial(c)
    if isinstance(c, ParamPoly):
        return CoeffFraction.from_poly(c)
    return c


class GroupAlgebraElement:
    """A finite sum of c_lambda e^lambda with exact coefficients.

    Treated as immutable once built; zero coefficients are never stored.
    """

    __slots__ = ("system", "terms")

    __hash__ = None  # type: ignore

    def __init__(
        self,
        system: RootSystemData,
        terms: Optional[Dict[Weight, Coefficient]] = None,
    ) -> None:
        self.system = system
        self.terms: Dict[Weight, CoeffFraction] = {}
        if terms:
            for weight, c in terms.items():
                c = _as_coeff(c)
                if not c.is_zero():
                    self.terms[weight] = c

    @classmethod
    def zero(cls, system: RootSystemData) -> "GroupAlgebraElement":
        return cls(system)

    @classmethod
    def one(cls, system: RootSystemData) -> "GroupAlgebraElement":
        return cls.monomial(system, Weight.zero(system.rank))

    @classmethod
    def monomial(
        cls, system: RootSystemData, weight: Weight, coeff: Coefficient = 1
    ) -> "GroupAlgebraElement":
        return cls(system, {weight: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def support(self) -> List[Weight]:
        return sorted(self.terms)

    def coefficient(self, weight: Weight) -> CoeffFraction:
        return self.terms.get(weight, CoeffFraction.zero())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    def __ne__(self, other: Any) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __neg__(self) -> "GroupAlgebraElement":
        return self.map_coefficients(lambda c: -c)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        result = dict(self.terms)
        for weight, c in other.terms.items():
            if weight in result:
                value = result[weight] + c
                if value.is_zero():
                    del result[weight]
                else:
                    result[weight] = value
            else:
                result[weight] = c
        return GroupAlgebraElement._from_dict(self.system, result)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __mul__(self, other: Union["GroupAlgebraElement", Coefficient]) -> "GroupAlgebraElement":
        if isinstance(other, (int, CoeffFraction, ParamPoly, ParamMonomial)):
            return self.scale(other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        result: Dict[Weight, CoeffFraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                result[w] = result.get(w, CoeffFraction.zero()) + c1 * c2
        return GroupAlgebraElement(self.system, result)

    def __rmul__(self, other: Coefficient) -> "GroupAlgebraElement":
        return self.scale(other)

    @classmethod
    def _from_dict(
        cls, system: RootSystemData, terms: Dict[Weight, CoeffFraction]
    ) -> "GroupAlgebraElement":
        element = cls.__new__(cls)
        element.system = system
        element.terms = terms
        return element

    def scale(self, c: Coefficient) -> "GroupAlgebraElement":
        c = _as_coeff(c)
        if c.is_zero():
            return GroupAlgebraElement(self.system)
        return self.map_coefficients(lambda x: x * c)

    def map_coefficients(
        self, fn: Callable[[CoeffFraction], CoeffFraction]
    ) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.system, {w: fn(c) for w, c in self.terms.items()})

    def map_weights(self, fn: Callable[[Weight], Weight]) -> "GroupAlgebraElement":
        result: Dict[Weight, CoeffFraction] = {}
        for w, c in self.terms.items():
            image = fn(w)
            result[image] = result.get(image, CoeffFraction.zero()) + c
        return GroupAlgebraElement(self.system, result)

    def conj(self) -> "GroupAlgebraElement":
        """Invert the parameters in every coefficient; weights are unchanged."""
        return self.map_coefficients(lambda c: c.conj())

    def is_parameter_free(self) -> bool:
        return all(
            c.is_polynomial() and all(m == ONE for m in c.num.terms)
            for c in self.terms.values()
        )

    def sorted_terms(self) -> List[Tuple[Weight, CoeffFraction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].coords)

    def render(self) -> str:
        if not self.terms:
            return "0"
        scale = self.system.scale
        out = ""
        for weight, c in self.sorted_terms():
            base = f"e[{weight}]"
            negative = False
            if c.is_monomial():
                mono, value = c.num.single_term()
                negative = value < 0
                magnitude = CoeffFraction.from_monomial(mono, abs(value)).render(scale)
                term = base if magnitude == "1" else f"{magnitude} {base}"
            else:
                term = f"({c.render(scale)}) {base}"
            if not out:
                out = ("-" + term) if negative else term
            else:
                out += (" - " if negative else " + ") + term
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GroupAlgebraElement({self.system.name}, {self.render()!r})"

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"weight": weight.to_json(), "coeff": c.to_json()}
            for weight, c in self.sorted_terms()
        ]


def _linear(
    f: GroupAlgebraElement, image: Callable[[Weight], Dict[Weight, ParamPoly]]
) -> GroupAlgebraElement:
    """Extend a map e^lambda -> sum of Laurent-polynomial multiples linearly."""
    result: Dict[Weight, CoeffFraction] = {}
    for weight, c in f.terms.items():
        for target, poly in image(weight).items():
            if not poly:
                continue
            value = c * CoeffFraction.from_poly(poly)
            if target in result:
                result[target] = result[target] + value
            else:
                result[target] = value
    return GroupAlgebraElement(f.system, result)


def _accumulate(out: Dict[Weight, ParamPoly], weight: Weight, poly: ParamPoly) -> None:
    if weight in out:
        out[weight] = out[weight] + poly
    else:
        out[weight] = poly


def _divided_difference(
    weight: Weight, b: Weight, n: int, q_step: ParamMonomial
) -> Dict[Weight, ParamPoly]:
    """(e^lambda - e^(s lambda)) / (1 - e^-alpha) for alpha = b + k delta.

    n is the pairing of lambda with the coroot of alpha and q_step = q^k,
    so e^-alpha = q^k e^-b.
    """
    out: Dict[Weight, ParamPoly] = {}
    if n > 0:
        for j in range(n):
            _accumulate(out, weight - b.scale(j), ParamPoly.monomial(q_step.power(j)))
    elif n < 0:
        for j in range(1, -n + 1):
            _accumulate(out, weight + b.scale(j), ParamPoly.monomial(q_step.power(-j), -1))
    return out


def _t_difference(t_half: ParamMonomial) -> ParamPoly:
    """t^(1/2) - t^(-1/2)"""
    return ParamPoly({t_half: 1, t_half.inverse(): -1})


def _hecke_image(
    weight: Weight, b: Weight, n: int, q_step: ParamMonomial, t_half: ParamMonomial
) -> Dict[Weight, ParamPoly]:
    out: Dict[Weight, ParamPoly] = {}
    _accumulate(
        out, weight - b.scale(n), ParamPoly.monomial(t_half.mul(q_step.power(n)))
    )
    difference = _t_difference(t_half)
    for target, poly in _divided_difference(weight, b, n, q_step).items():
        _accumulate(out, target, poly * difference)
    return {w: p for w, p in out.items() if p}


@functools.lru_cache(maxsize=None)
def _simple_root_weight(system: RootSystemData, i: int) -> Weight:
    return system.root_to_weight(tuple(1 if j == i - 1 else 0 for j in range(system.rank)))


def _inverse_from(
    f: GroupAlgebraElement, forward: GroupAlgebraElement, t_half: ParamMonomial
) -> GroupAlgebraElement:
    """T^-1 = T - (t^(1/2) - t^(-1/2))"""
    return forward - f.scale(CoeffFraction.from_poly(_t_difference(t_half)))


def apply_Ti(f: GroupAlgebraElement, i: int) -> GroupAlgebraElement:
    """T_i for a finite simple root, i in 1..n."""
    system = f.system
    if not 1 <= i <= system.rank:
        raise ValueError(f"{i} is not a finite simple root index")
    b = _simple_root_weight(system, i)
    t_half = system.t_half_simple(i)
    return _linear(f, lambda w: _hecke_image(w, b, w.coords[i - 1], ONE, t_half))


def apply_Ti_inverse(f: GroupAlgebraElement, i: int) -> GroupAlgebraElement:
    return _inverse_from(f, apply_Ti(f, i), f.system.t_half_simple(i))


def _apply_affine(f: GroupAlgebraElement, level_one: bool) -> GroupAlgebraElement:
    system = f.system
    theta = system.theta
    b = -system.theta_weight
    q_step = system.scale.q(1)
    t_half = system.t_half_simple(0)

    def image(weight: Weight) -> Dict[Weight, ParamPoly]:
        n = -system.weight_root_pairing(weight, theta)
        if level_one:
            n += 1
        return _hecke_image(weight, b, n, q_step, t_half)

    return _linear(f, image)


def apply_T01(f: GroupAlgebraElement, inverse: bool = False) -> GroupAlgebraElement:
    """T_01, built on the level zero reflection s_0."""
    result = _apply_affine(f, level_one=False)
    if inverse:
        return _inverse_from(f, result, f.system.t_half_simple(0))
    return result


def apply_T02(f: GroupAlgebraElement, inverse: bool = False) -> GroupAlgebraElement:
    """T_02, built on the level one reflection s_0 . lambda."""
    result = _apply_affine(f, level_one=True)
    if inverse:
        return _inverse_from(f, result, f.system.t_half_simple(0))
    return result


@functools.lru_cache(maxsize=None)
def _theta_reflection_word(system: RootSystemData) -> Tuple[int, ...]:
    return FiniteWeylElement.reflection(system, system.theta).reduced_word()


def apply_T03(f: GroupAlgebraElement, inverse: bool = False) -> GroupAlgebraElement:
    """T_03 = X_theta T_(s_theta)^-1."""
    system = f.system
    word = _theta_reflection_word(system)
    if inverse:
        f = apply_X(f, -system.theta_weight)
        return apply_word(f, word)
    f = apply_word(f, tuple(reversed(word)), inverse=True)
    return apply_X(f, system.theta_weight)


class Side(enum.Enum):
    """Which affine Hecke algebra a word is read in."""

    X = "X"
    Y = "Y"


def apply_generator(
    f: GroupAlgebraElement, i: int, inverse: bool = False, side: Side = Side.X
) -> GroupAlgebraElement:
    if i == 0:
        if side == Side.X:
            return apply_T03(f, inverse=inverse)
        return apply_T01(f, inverse=inverse)
    if inverse:
        return apply_Ti_inverse(f, i)
    return apply_Ti(f, i)


def apply_X(f: GroupAlgebraElement, mu: Weight) -> GroupAlgebraElement:
    """Multiplication by e^mu."""
    return GroupAlgebraElement._from_dict(
        f.system, {weight + mu: c for weight, c in f.terms.items()}
    )


def apply_word(
    f: GroupAlgebraElement,
    letters: Sequence[int],
    inverse: bool = False,
    side: Side = Side.X,
) -> GroupAlgebraElement:
    """T_l1^e ... T_lk^e . f with e = -1 when inverse, applying the last letter first."""
    for i in reversed(tuple(letters)):
        f = apply_generator(f, i, inverse=inverse, side=side)
    return f


def apply_omega(
    f: GroupAlgebraElement, weight: Weight, inverse: bool = False
) -> GroupAlgebraElement:
    """omega_lambda . f, or its inverse, for lambda minuscule or zero."""
    if weight.is_zero():
        return f
    system = f.system
    if weight not in system.minuscule_weights():
        raise InvalidJob(field="omega", reason=f"{weight} is not minuscule")
    w_ring, _ = finite_descent_word(system, weight)
    if inverse:
        f = apply_X(f, -weight)
        return apply_word(f, tuple(reversed(w_ring)))
    f = apply_word(f, w_ring, inverse=True)
    return apply_X(f, weight)


def _as_word(system: RootSystemData, w: Union[ExtendedWeylElement, AffineWord]) -> AffineWord:
    if isinstance(w, AffineWord):
        return w
    return w.reduced_word()


def apply_Tw(
    f: GroupAlgebraElement,
    w: Union[ExtendedWeylElement, AffineWord],
    inverse: bool = False,
    side: Side = Side.X,
) -> GroupAlgebraElement:
    """T_w . f, or T_w^-1 . f, along a reduced word of w with its omega component."""
    word = _as_word(f.system, w)
    if side == Side.Y and not word.omega.is_zero():
        raise InvalidJob(field="word", reason="Y-side words carry no omega component")
    if inverse:
        f = apply_word(f, tuple(reversed(word.letters)), inverse=True, side=side)
        return apply_omega(f, word.omega, inverse=True)
    f = apply_omega(f, word.omega)
    return apply_word(f, word.letters, side=side)


@functools.lru_cache(maxsize=None)
def _translation_word(system: RootSystemData, mu: Weight) -> AffineWord:
    return ExtendedWeylElement.translation_by(system, mu).reduced_word()


def _check_root_lattice(system: RootSystemData, mu: Weight) -> None:
    if any(c.denominator != 1 for c in system.weight_to_root(mu)):
        raise InvalidJob(field="mu", reason=f"{mu} is not in the root lattice")


def apply_Y(f: GroupAlgebraElement, mu: Weight) -> GroupAlgebraElement:
    """Y_mu . f for mu in the root lattice.

    Anti-dominant nu act by T_(tau_nu) and dominant nu by T_(tau_-nu)^-1,
    both read on the Y side.
    """
    system = f.system
    if mu.is_zero():
        return f
    _check_root_lattice(system, mu)
    top = max(mu.coords)
    if top > 0:
        shift = system.rho().scale(2 * ((top + 1) // 2))
        f = apply_Tw(f, _translation_word(system, -shift), inverse=True, side=Side.Y)
        mu = mu - shift
    return apply_Tw(f, _translation_word(system, mu), side=Side.Y)


@functools.lru_cache(maxsize=None)
def _w_ring_inverse(system: RootSystemData, lam: Weight) -> FiniteWeylElement:
    return orbit_data(system, lam).w_ring_element.inverse()


def _gamma(system: RootSystemData, gamma: Union[AffineRoot, Weight]) -> Tuple[Weight, int]:
    if isinstance(gamma, AffineRoot):
        return system.root_to_weight(gamma.beta), gamma.k
    return gamma, 0


def _half_units(value: Fraction, what: str) -> int:
    doubled = 2 * value
    if doubled.denominator != 1:
        raise ValueError(f"{what} is not a half-integral power")
    return int(doubled)


def spectral_t(
    system: RootSystemData, gamma: Union[AffineRoot, Weight], lam: Weight
) -> ParamMonomial:
    """The t-monomial prod t_i^((gamma, w_lambda(lambda_i^vee)))."""
    weight, _ = _gamma(system, gamma)
    coords = system.weight_to_root(_w_ring_inverse(system, lam).act(weight))
    short = Fraction(0)
    long = Fraction(0)
    for i, c in enumerate(coords):
        if system.is_long_simple(i + 1):
            long += c
        else:
            short += c
    return ParamMonomial(0, _half_units(short, "t_s"), _half_units(long, "t_l"))


def spectral_q(
    system: RootSystemData, gamma: Union[AffineRoot, Weight], lam: Weight
) -> ParamMonomial:
    """q^((gamma, lambda + Lambda_0)) times the inverse of spectral_t."""
    weight, k = _gamma(system, gamma)
    q_part = system.scale.q(system.weight_weight_pairing(weight, lam) + k)
    return q_part.mul(spectral_t(system, gamma, lam).inverse())


def _letters(
    w: Union[ExtendedWeylElement, AffineWord, FiniteWeylElement, Sequence[int]]
) -> Tuple[Tuple[int, ...], bool]:
    if isinstance(w, ExtendedWeylElement):
        word = w.reduced_word()
        return word.letters, not word.omega.is_zero()
    if isinstance(w, AffineWord):
        return w.letters, not w.omega.is_zero()
    if isinstance(w, FiniteWeylElement):
        return w.reduced_word(), False
    return tuple(w), False


def chi(
    system: RootSystemData,
    w: Union[ExtendedWeylElement, AffineWord, FiniteWeylElement, Sequence[int]],
) -> CoeffFraction:
    """The character sending every generator to the square root of its parameter.

    Omega components contribute 1. Words are assumed reduced.
    """
    letters, _ = _letters(w)
    m = ONE
    for i in letters:
        m = m.mul(system.t_half_simple(i))
    return CoeffFraction.from_monomial(m)


def xi(
    system: RootSystemData,
    w: Union[ExtendedWeylElement, AffineWord, FiniteWeylElement, Sequence[int]],
) -> CoeffFraction:
    """xi(T_w) for w in the affine Weyl group, with xi(T_03) = t_0^(1/2)."""
    _, has_omega = _letters(w)
    if has_omega:
        raise ValueError("xi is defined on the affine Weyl group only")
    return chi(system, w)


def _one_minus_t_inverse(t_half: ParamMonomial) -> CoeffFraction:
    return CoeffFraction.binomial(t_half.power(-2))


def intertwiner_G(f: GroupAlgebraElement, i: int, lam: Weight) -> GroupAlgebraElement:
    """G_(i, lambda) . f; the affine index uses T_02."""
    system = f.system
    t_half = system.t_half_simple(i)
    Q = spectral_q(system, system.simple_affine_root(i), lam).inverse()
    if i == 0:
        prefactor = CoeffFraction.from_monomial(
            system.scale.q(-(1 - system.weight_root_pairing(lam, system.theta)))
        )
        moved = apply_T02(f)
    else:
        prefactor = CoeffFraction.one()
        moved = apply_Ti(f, i)
    first = CoeffFraction.binomial(Q).shift(t_half.inverse())
    second = CoeffFraction.from_monomial(Q) * _one_minus_t_inverse(t_half)
    return (moved.scale(first) + f.scale(second)).scale(prefactor)


def _affine_parts(system: RootSystemData, lam: Weight) -> Tuple[ParamMonomial, ParamMonomial]:
    """(t^((theta, lambda-bar)), q^(-(alpha_0, lambda + Lambda_0)))"""
    t_theta = spectral_t(system, AffineRoot(system.theta, 0), lam)
    q_part = system.scale.q(-(1 - system.weight_root_pairing(lam, system.theta)))
    return t_theta, q_part


def intertwiner_G_tilde(f: GroupAlgebraElement, lam: Weight) -> GroupAlgebraElement:
    """The affine intertwiner written with T_03."""
    system = f.system
    t_half = system.t_half_simple(0)
    t_theta, q_part = _affine_parts(system, lam)
    first = CoeffFraction.from_poly(ParamPoly({t_theta: 1}) - ParamPoly({q_part: 1}))
    first = first.shift(t_half.inverse())
    second = CoeffFraction.from_monomial(q_part) * _one_minus_t_inverse(t_half)
    return apply_T03(f).scale(first) + f.scale(second)


def normalized_intertwiner_I(
    f: GroupAlgebraElement, i: int, lam: Weight
) -> GroupAlgebraElement:
    """The intertwiner scaled so that it carries E-tilde_lambda to E-tilde_(s_i . lambda)."""
    system = f.system
    t_half = CoeffFraction.from_monomial(system.t_half_simple(i))
    if i == 0:
        t_theta, q_part = _affine_parts(system, lam)
        if t_theta == q_part:
            raise ZeroNormalizer(index=i, weight=lam.coords)
        normalizer = CoeffFraction.from_poly(ParamPoly({t_theta: 1}) - ParamPoly({q_part: 1}))
        return intertwiner_G_tilde(f, lam).scale(t_half / normalizer)
    Q = spectral_q(system, system.simple_affine_root(i), lam).inverse()
    if Q.is_one():
        raise ZeroNormalizer(index=i, weight=lam.coords)
    return intertwiner_G(f, i, lam).scale(t_half / CoeffFraction.binomial(Q))


def _check_finite_index(system: RootSystemData, i: int) -> None:
    if not 1 <= i <= system.rank:
        raise ValueError(f"{i} is not a finite simple root index")


def zero_hecke_N(f: GroupAlgebraElement, i: int) -> GroupAlgebraElement:
    """N_i . e^lambda = -(e^lambda - e^(s_i lambda)) / (1 - e^-alpha_i)"""
    system = f.system
    _check_finite_index(system, i)
    b = _simple_root_weight(system, i)
    return _linear(
        f,
        lambda w: {
            target: -poly
            for target, poly in _divided_difference(w, b, w.coords[i - 1], ONE).items()
        },
    )


def N_prime(f: GroupAlgebraElement, i: int) -> GroupAlgebraElement:
    return zero_hecke_N(f, i) + f


def demazure(f: GroupAlgebraElement, i: int) -> GroupAlgebraElement:
    """Delta_i . e^lambda = e^(s_i lambda) + (e^lambda - e^(s_i lambda)) / (1 - e^-alpha_i)"""
    system = f.system
    _check_finite_index(system, i)
    b = _simple_root_weight(system, i)

    def image(w: Weight) -> Dict[Weight, ParamPoly]:
        out = _divided_difference(w, b, w.coords[i - 1], ONE)
        _accumulate(out, system.reflect_weight(w, i), ParamPoly.one())
        return out

    return _linear(f, image)


def _apply_letters(
    f: GroupAlgebraElement,
    letters: Iterable[int],
    op: Callable[[GroupAlgebraElement, int], GroupAlgebraElement],
) -> GroupAlgebraElement:
    for i in reversed(tuple(letters)):
        f = op(f, i)
    return f


def apply_N_word(f: GroupAlgebraElement, letters: Sequence[int]) -> GroupAlgebraElement:
    return _apply_letters(f, letters, zero_hecke_N)


def apply_N_prime_word(f: GroupAlgebraElement, letters: Sequence[int]) -> GroupAlgebraElement:
    return _apply_letters(f, letters, N_prime)


def apply_demazure_word(f: GroupAlgebraElement, letters: Sequence[int]) -> GroupAlgebraElement:
    return _apply_letters(f, letters, demazure)


def act_finite(f: GroupAlgebraElement, w: FiniteWeylElement) -> GroupAlgebraElement:
    """e^lambda -> e^(w lambda), coefficients unchanged."""
    return f.map_weights(w.act)


def kappa(f: GroupAlgebraElement) -> GroupAlgebraElement:
    """The Kazhdan-Lusztig involution on the polynomial representation.

    kappa(c e^lambda) = c-bar chi(w_o)^-1 T_(w_o) . e^(w_o lambda), where
    c-bar inverts q, ts and tl.
    """
    system = f.system
    w_o = finite_longest(system)
    moved = act_finite(f.conj(), w_o)
    return apply_word(moved, w_o.reduced_word()).scale(chi(system, w_o).inv())


def varsigma(f: GroupAlgebraElement) -> GroupAlgebraElement:
    """e^lambda -> e^(-w_o lambda), parameters fixed."""
    w_o = finite_longest(f.system)
    return f.map_weights(lambda w: -w_o.act(w))


def iota(f: GroupAlgebraElement) -> GroupAlgebraElement:
    """chi(w_o) T_(w_o)^-1 varsigma"""
    system = f.system
    w_o = finite_longest(system)
    moved = apply_word(varsigma(f), tuple(reversed(w_o.reduced_word())), inverse=True)
    return moved.scale(chi(system, w_o))
