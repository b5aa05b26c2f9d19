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

"""Nonsymmetric and symmetric Macdonald polynomials, their limits and pairings."""

__all__ = (
    "SpectralVector",
    "q_monomial",
    "t_monomial",
    "normalizer_e",
    "MacdonaldResult",
    "compute_E",
    "normalized_E",
    "compute_P",
    "compute_P_normalized",
    "SPEC_TAGS",
    "specialize",
    "limit_sequence",
    "invert_t",
    "E_infinity_direct",
    "E_infinity_via_alcove",
    "E_tilde_zero_direct",
    "E_zero_direct",
    "E_zero_zero_direct",
    "E_infinity_infinity_demazure",
    "w0_E_infinity_t_inverse_direct",
    "f_normalizer",
    "E_tilde",
    "E_tilde_chain",
    "PInfinityReport",
    "P_infinity_identities",
    "weyl_character_oracle",
    "dominant_conjugate",
    "degenerate_pairing_t",
    "PairingConfig",
    "set_default_pairing_config",
    "get_default_pairing_config",
    "TruncatedKernel",
    "truncated_kernel",
    "cherednik_pairing",
)

import functools
import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .coeffs import (
    CoeffFraction,
    Indeterminate,
    ParamMonomial,
    ParamPoly,
    TruncatedSeries,
    expand_in_q_inverse,
    has_integral_t_powers,
    limit_at_zero,
    substitute_t,
    substitute_t_value,
)
from .errors import InvalidJob, NotAntiDominant, RecursionFailure, TruncationTooSmall
from .heckeops import (
    GroupAlgebraElement,
    apply_demazure_word,
    apply_N_word,
    apply_word,
    chi,
    intertwiner_G,
    intertwiner_G_tilde,
    normalized_intertwiner_I,
    spectral_q,
    spectral_t,
    xi,
)
from .roots import (
    AffineRoot,
    RootSystemData,
    Weight,
    enumerate_affine_roots_negative_on,
)
from .serialization import result_document
from .weyl import (
    AffineWord,
    FiniteWeylElement,
    affine_dot_action,
    finite_longest,
    orbit_data,
    simple_reflection,
)

LOGGER = logging.getLogger(__name__)

Gamma = Union[AffineRoot, Weight]


@dataclass(frozen=True)
class SpectralVector:
    """The spectral point lambda-bar attached to a weight.

    Attributes:
        system: The root system.
        lam: The weight.
    """

    system: RootSystemData
    lam: Weight

    @property
    def w_ring(self) -> Tuple[int, ...]:
        return orbit_data(self.system, self.lam).w_ring

    def q(self, gamma: Gamma) -> ParamMonomial:
        return spectral_q(self.system, gamma, self.lam)

    def t(self, gamma: Gamma) -> ParamMonomial:
        return spectral_t(self.system, gamma, self.lam)


def q_monomial(system: RootSystemData, gamma: Gamma, lam: Weight) -> CoeffFraction:
    """q-bold^(gamma, lambda-bar)"""
    return CoeffFraction.from_monomial(spectral_q(system, gamma, lam))


def t_monomial(system: RootSystemData, gamma: Gamma, lam: Weight) -> CoeffFraction:
    """t-bold^(gamma, lambda-bar)"""
    return CoeffFraction.from_monomial(spectral_t(system, gamma, lam))


@functools.lru_cache(maxsize=None)
def normalizer_e(system: RootSystemData, lam: Weight) -> CoeffFraction:
    """Product of (1 - q-bold^(alpha, lambda-bar)) over positive affine roots negative on lambda."""
    product = ParamPoly.one()
    for root in enumerate_affine_roots_negative_on(system, lam):
        product = product * ParamPoly.binomial(spectral_q(system, root, lam))
    return CoeffFraction.from_poly(product)


@dataclass(frozen=True)
class MacdonaldResult:
    """E_lambda(q, t) together with the data of its computation.

    Attributes:
        system: The root system.
        lam: The weight.
        poly: E_lambda(q, t), with e^lambda coefficient 1.
        normalized: e_lambda E_lambda(q, t).
        e_lambda: The normalizer.
        f_lambda: The normalizer of the q -> infinity limit.
        chain: The reduced word of w_lambda the intertwiners followed.
    """

    system: RootSystemData
    lam: Weight
    poly: GroupAlgebraElement
    normalized: GroupAlgebraElement
    e_lambda: CoeffFraction
    f_lambda: CoeffFraction
    chain: AffineWord

    def support_is_triangular(self) -> bool:
        """Every support weight is Bruhat below lambda or lies in a lower orbit."""
        from .weyl import bruhat_leq_weights

        top = dominant_conjugate(self.system, self.lam)
        for mu in self.poly.support():
            if bruhat_leq_weights(self.system, mu, self.lam):
                continue
            difference = self.system.weight_to_root(top - dominant_conjugate(self.system, mu))
            if all(c.denominator == 1 and c >= 0 for c in difference) and any(difference):
                continue
            return False
        return True

    def to_document(self, spec: str = "exact") -> dict:
        return element_document(self.system, self.lam, spec, self.poly)


def element_document(
    system: RootSystemData, lam: Weight, spec: str, element: GroupAlgebraElement
) -> dict:
    return result_document(
        system=system.name,
        weight=lam.coords,
        spec=spec,
        m_star=system.m_star,
        terms=[(w.coords, c) for w, c in element.sorted_terms()],
    )


def _check_word(system: RootSystemData, lam: Weight, letters: Tuple[int, ...]) -> None:
    data = orbit_data(system, lam)
    if len(letters) != len(data.w_lambda.letters):
        raise InvalidJob(field="word", reason=f"{letters} does not have the length of w_lambda")
    zero = Weight.zero(system.rank)
    if affine_dot_action(system, AffineWord(letters, zero), data.lambda_tilde) != lam:
        raise InvalidJob(field="word", reason=f"{letters} does not carry lambda_tilde to {lam}")


@functools.lru_cache(maxsize=None)
def compute_E(
    system: RootSystemData, lam: Weight, word: Optional[Tuple[int, ...]] = None
) -> MacdonaldResult:
    """E_lambda(q, t) by intertwiners along a reduced word of w_lambda.

    The chain starts from e^lambda_tilde, applies G_(i, mu) from the right
    end of the word, and divides by e_lambda at the end. The affine letter
    uses the T_03 form of the intertwiner.
    """
    data = orbit_data(system, lam)
    if word is None:
        letters = data.w_lambda.letters
    else:
        letters = tuple(word)
        _check_word(system, lam, letters)

    f = GroupAlgebraElement.monomial(system, data.lambda_tilde)
    mu = data.lambda_tilde
    for i in reversed(letters):
        if system.affine_pairing(mu, system.simple_affine_root(i)) <= 0:
            raise RecursionFailure(weight=lam.coords, detail=f"s_{i} does not ascend from {mu}")
        if i == 0:
            f = intertwiner_G_tilde(f, mu)
        else:
            f = intertwiner_G(f, i, mu)
        mu = simple_reflection(system, i).dot(mu)
        LOGGER.debug("%s: applied G_%d, now at %s with %d terms", system.name, i, mu, len(f))

    e_lambda = normalizer_e(system, lam)
    if f.coefficient(lam) != e_lambda:
        raise RecursionFailure(
            weight=lam.coords, detail="leading coefficient differs from e_lambda"
        )
    return MacdonaldResult(
        system=system,
        lam=lam,
        poly=f.scale(e_lambda.inv()),
        normalized=f,
        e_lambda=e_lambda,
        f_lambda=f_normalizer(system, lam),
        chain=AffineWord(letters, Weight.zero(system.rank)),
    )


def normalized_E(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """e_lambda E_lambda(q, t)"""
    return compute_E(system, lam).normalized


def _finite_orbit(system: RootSystemData, lam: Weight) -> List[Weight]:
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for i in range(1, system.rank + 1):
            nu = system.reflect_weight(mu, i)
            if nu not in seen:
                seen.add(nu)
                queue.append(nu)
    return sorted(seen)


def _check_antidominant(lam: Weight) -> None:
    if not lam.is_antidominant():
        raise NotAntiDominant(weight=lam.coords)


def _positive_on(system: RootSystemData, mu: Weight) -> List[Tuple[int, ...]]:
    return [b for b in system.positive_roots if system.weight_root_pairing(mu, b) > 0]


def _symmetrizer_numerator(system: RootSystemData, mu: Weight) -> Tuple[ParamPoly, ParamPoly]:
    """(prod (t_alpha^-1 - Q_alpha), prod (1 - Q_alpha)) with Q_alpha = q-bold^-(alpha, mu-bar)"""
    numerator = ParamPoly.one()
    denominator = ParamPoly.one()
    for b in _positive_on(system, mu):
        Q = spectral_q(system, AffineRoot(b, 0), mu).inverse()
        t_inverse = system.t_half(b).power(-2)
        numerator = numerator * ParamPoly({t_inverse: 1, Q: -1})
        denominator = denominator * ParamPoly.binomial(Q)
    return numerator, denominator


@functools.lru_cache(maxsize=None)
def compute_P(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """P_lambda(q, t) as the symmetrization of the E_mu over the finite orbit of lambda."""
    _check_antidominant(lam)
    total = GroupAlgebraElement.zero(system)
    for mu in _finite_orbit(system, lam):
        numerator, denominator = _symmetrizer_numerator(system, mu)
        a_mu = CoeffFraction.from_poly(numerator) / CoeffFraction.from_poly(denominator)
        total = total + compute_E(system, mu).poly.scale(a_mu)
    return total


def compute_P_normalized(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """e_lambda P_lambda(q, t) = sum of b_mu e_mu E_mu."""
    _check_antidominant(lam)
    total = GroupAlgebraElement.zero(system)
    for mu in _finite_orbit(system, lam):
        numerator, _ = _symmetrizer_numerator(system, mu)
        total = total + normalized_E(system, mu).scale(CoeffFraction.from_poly(numerator))
    return total


SPEC_TAGS: Dict[str, Tuple[Indeterminate, ...]] = {
    "exact": (),
    "qinf": (Indeterminate.Q_INV,),
    "q0": (Indeterminate.Q,),
    "tinf": (Indeterminate.T_INV,),
    "t0": (Indeterminate.T,),
    "inf_inf": (Indeterminate.Q_INV, Indeterminate.T_INV),
    "zero_zero": (Indeterminate.Q, Indeterminate.T),
}


def limit_sequence(
    f: GroupAlgebraElement, variables: Iterable[Indeterminate]
) -> GroupAlgebraElement:
    """Take coefficientwise limits, one variable after the other."""
    for var in variables:
        f = f.map_coefficients(lambda c: limit_at_zero(c, var))
    return f


def _numeric_t(text: str) -> Tuple[Fraction, Optional[Fraction]]:
    """t and its rational square root, if it has one."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidJob(field="spec", reason=f"t={text} is not a rational number")
    if value <= 0:
        raise InvalidJob(field="spec", reason=f"t={text} must be positive")
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return value, None
    return value, Fraction(num, den)


def specialize(f: GroupAlgebraElement, spec: str) -> GroupAlgebraElement:
    """Specialize coefficientwise.

    spec is a key of SPEC_TAGS or t=<value> for a positive rational; numeric
    t is substituted after q -> infinity. A t that is not a rational square
    needs every coefficient to hold integer powers of t only.
    """
    if spec in SPEC_TAGS:
        return limit_sequence(f, SPEC_TAGS[spec])
    if spec.startswith("t="):
        t, t_half = _numeric_t(spec[2:])
        f = limit_sequence(f, (Indeterminate.Q_INV,))
        if t_half is not None:
            return f.map_coefficients(lambda c: substitute_t(c, t_half))
        if not all(has_integral_t_powers(c) for c in f.terms.values()):
            raise InvalidJob(
                field="spec",
                reason=f"t={spec[2:]} is not the square of a rational and half-integer powers of t occur",
            )
        return f.map_coefficients(lambda c: substitute_t_value(c, t))
    raise InvalidJob(field="spec", reason=f"unknown specialization {spec!r}")


def invert_t(f: GroupAlgebraElement) -> GroupAlgebraElement:
    """Replace ts, tl by their inverses, q fixed."""
    return f.map_coefficients(
        lambda c: c.map_monomials(lambda m: ParamMonomial(m.qe, -m.ae, -m.be))
    )


def _w_ring_times_longest(system: RootSystemData, lam: Weight) -> FiniteWeylElement:
    return orbit_data(system, lam).w_ring_element * finite_longest(system)


def E_infinity_direct(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """E_lambda(infinity, t) = xi(w_lambda w_o)^-1 T_(w_lambda w_o) e^lambda_+"""
    data = orbit_data(system, lam)
    x = _w_ring_times_longest(system, lam)
    f = GroupAlgebraElement.monomial(system, data.lambda_plus)
    return apply_word(f, x.reduced_word()).scale(xi(system, x).inv())


def E_infinity_via_alcove(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """E_lambda(infinity, t) from T_(w_lambda) f_lambda_tilde e^lambda_tilde = f_lambda E_lambda(infinity, t)."""
    data = orbit_data(system, lam)
    start = GroupAlgebraElement.monomial(
        system, data.lambda_tilde, f_normalizer(system, data.lambda_tilde)
    )
    return apply_word(start, data.w_lambda.letters).scale(f_normalizer(system, lam).inv())


def E_tilde_zero_direct(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """E-tilde_lambda(0, t) = T_(w_ring) e^lambda_-

    w_ring is the shortest finite word with w_ring . lambda_- = lambda.
    """
    data = orbit_data(system, lam)
    return apply_word(GroupAlgebraElement.monomial(system, data.lambda_minus), data.w_ring)


def E_zero_direct(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    return E_tilde_zero_direct(system, lam).scale(xi(system, orbit_data(system, lam).w_ring))


def E_zero_zero_direct(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """E_lambda(0, 0) = N_(w_ring) e^lambda_-"""
    data = orbit_data(system, lam)
    return apply_N_word(GroupAlgebraElement.monomial(system, data.lambda_minus), data.w_ring)


def E_infinity_infinity_demazure(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """E_lambda(infinity, infinity) = Delta_(w_lambda w_o) e^lambda_+"""
    data = orbit_data(system, lam)
    x = _w_ring_times_longest(system, lam)
    return apply_demazure_word(
        GroupAlgebraElement.monomial(system, data.lambda_plus), x.reduced_word()
    )


def w0_E_infinity_t_inverse_direct(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """chi(w_o w_lambda) T^-1_((w_o w_lambda)^-1) e^lambda_-, equal to w_o E_lambda(infinity, t^-1)."""
    data = orbit_data(system, lam)
    x = finite_longest(system) * data.w_ring_element
    letters = x.inverse().reduced_word()
    f = GroupAlgebraElement.monomial(system, data.lambda_minus)
    return apply_word(f, tuple(reversed(letters)), inverse=True).scale(chi(system, x))


@functools.lru_cache(maxsize=None)
def f_normalizer(system: RootSystemData, lam: Weight) -> CoeffFraction:
    """f_lambda = xi(w_lambda) t-bold^(lambda, lambda-bar)"""
    data = orbit_data(system, lam)
    return xi(system, data.w_lambda) * t_monomial(system, lam, lam)


def E_tilde(system: RootSystemData, lam: Weight, spec: str = "exact") -> GroupAlgebraElement:
    """E-tilde_lambda = xi(w_lambda)^-1 E_lambda, then specialized."""
    scale = xi(system, orbit_data(system, lam).w_ring).inv()
    return specialize(compute_E(system, lam).poly.scale(scale), spec)


def E_tilde_chain(
    system: RootSystemData, lam: Weight, word: Optional[Tuple[int, ...]] = None
) -> GroupAlgebraElement:
    """E-tilde_lambda by normalized intertwiners from E-tilde_lambda_tilde."""
    data = orbit_data(system, lam)
    letters = data.w_lambda.letters if word is None else tuple(word)
    if word is not None:
        _check_word(system, lam, letters)
    mu = data.lambda_tilde
    f = GroupAlgebraElement.monomial(
        system, mu, xi(system, orbit_data(system, mu).w_ring).inv()
    )
    for i in reversed(letters):
        f = normalized_intertwiner_I(f, i, mu)
        mu = simple_reflection(system, i).dot(mu)
    return f


@dataclass(frozen=True)
class PInfinityReport:
    """Three routes to P_lambda(infinity, t) and their t -> infinity limit.

    Attributes:
        lam: The anti-dominant weight.
        limit: P_lambda(q, t) at q -> infinity.
        e_sum: sum of xi(w_mu)^-2 E_mu(infinity, t).
        hecke_sum: xi(w_o)^-1 sum of xi(w_mu)^-1 T_(w_mu w_o) e^lambda_+.
        t_infinity: limit at t -> infinity.
        character: The Weyl character oracle.
    """

    lam: Weight
    limit: GroupAlgebraElement
    e_sum: GroupAlgebraElement
    hecke_sum: GroupAlgebraElement
    t_infinity: GroupAlgebraElement
    character: GroupAlgebraElement

    @property
    def agree(self) -> bool:
        return (
            self.limit == self.e_sum
            and self.limit == self.hecke_sum
            and self.t_infinity == self.character
        )


def P_infinity_identities(system: RootSystemData, lam: Weight) -> PInfinityReport:
    _check_antidominant(lam)
    w_o = finite_longest(system)
    lambda_plus = w_o.act(lam)
    e_sum = GroupAlgebraElement.zero(system)
    hecke_sum = GroupAlgebraElement.zero(system)
    for mu in _finite_orbit(system, lam):
        data = orbit_data(system, mu)
        weight = xi(system, data.w_ring).inv()
        e_sum = e_sum + E_infinity_direct(system, mu).scale(weight * weight)
        x = data.w_ring_element * w_o
        moved = apply_word(GroupAlgebraElement.monomial(system, lambda_plus), x.reduced_word())
        hecke_sum = hecke_sum + moved.scale(weight)
    hecke_sum = hecke_sum.scale(xi(system, w_o).inv())
    limit = specialize(compute_P(system, lam), "qinf")
    return PInfinityReport(
        lam=lam,
        limit=limit,
        e_sum=e_sum,
        hecke_sum=hecke_sum,
        t_infinity=specialize(limit, "tinf"),
        character=weyl_character_oracle(system, lam),
    )


def dominant_conjugate(system: RootSystemData, mu: Weight) -> Weight:
    return orbit_data(system, mu).lambda_plus


def _in_root_cone(system: RootSystemData, mu: Weight) -> bool:
    coords = system.weight_to_root(mu)
    return all(c.denominator == 1 and c >= 0 for c in coords)


@functools.lru_cache(maxsize=None)
def weyl_character_oracle(system: RootSystemData, lambda_minus: Weight) -> GroupAlgebraElement:
    """Character of the irreducible module with lowest weight lambda_minus, by Freudenthal."""
    _check_antidominant(lambda_minus)
    top = finite_longest(system).act(lambda_minus)
    simple = [system.root_to_weight(tuple(int(i == j) for j in range(system.rank)))
              for i in range(system.rank)]

    weights = {top}
    queue = deque([top])
    while queue:
        mu = queue.popleft()
        for alpha in simple:
            nu = mu - alpha
            if nu in weights:
                continue
            if _in_root_cone(system, top - dominant_conjugate(system, nu)):
                weights.add(nu)
                queue.append(nu)

    rho = system.rho()
    top_norm = system.weight_weight_pairing(top + rho, top + rho)
    positive = [system.root_to_weight(b) for b in system.positive_roots]

    def depth(mu: Weight) -> Fraction:
        return sum(system.weight_to_root(top - mu), Fraction(0))

    multiplicity: Dict[Weight, int] = {top: 1}
    for mu in sorted((w for w in weights if w.is_dominant() and w != top), key=depth):
        total = Fraction(0)
        for alpha in positive:
            k = 1
            while True:
                nu = mu + alpha.scale(k)
                if nu not in weights:
                    break
                total += multiplicity[dominant_conjugate(system, nu)] * system.weight_weight_pairing(
                    nu, alpha
                )
                k += 1
        value = 2 * total / (top_norm - system.weight_weight_pairing(mu + rho, mu + rho))
        if value.denominator != 1:
            raise RecursionFailure(weight=lambda_minus.coords, detail=f"multiplicity {value}")
        multiplicity[mu] = int(value)

    return GroupAlgebraElement(
        system,
        {mu: multiplicity[dominant_conjugate(system, mu)] for mu in weights},
    )


def _root_box(
    system: RootSystemData, weights: Iterable[Weight]
) -> Tuple[Dict[Weight, Tuple[int, ...]], Tuple[int, ...]]:
    """Root coordinates of -nu for each nu in the root lattice, and their componentwise max."""
    targets: Dict[Weight, Tuple[int, ...]] = {}
    for nu in weights:
        coords = system.weight_to_root(-nu)
        if all(c.denominator == 1 for c in coords):
            targets[nu] = tuple(int(c) for c in coords)
    bound = tuple(
        max([0] + [coords[j] for coords in targets.values()]) for j in range(system.rank)
    )
    return targets, bound


def _geometric_factor(
    t_inverse: ParamMonomial, step: Tuple[int, ...], q_step: ParamMonomial, count: int
) -> Dict[Tuple[int, ...], ParamPoly]:
    """(1 - x)/(1 - t^-1 x) = 1 + sum_j (t^-j - t^-(j-1)) x^j up to j = count, x = q_step e^step."""
    factor = {tuple(0 for _ in step): ParamPoly.one()}
    for j in range(1, count + 1):
        key = tuple(j * s for s in step)
        factor[key] = ParamPoly(
            {t_inverse.power(j).mul(q_step.power(j)): 1, t_inverse.power(j - 1).mul(q_step.power(j)): -1}
        )
    return factor


def _multiply_truncated(
    left: Dict[Tuple[int, ...], ParamPoly],
    right: Dict[Tuple[int, ...], ParamPoly],
    bound: Tuple[int, ...],
    cutoff: Optional[int] = None,
) -> Dict[Tuple[int, ...], ParamPoly]:
    result: Dict[Tuple[int, ...], ParamPoly] = {}
    for k1, p1 in left.items():
        for k2, p2 in right.items():
            key = tuple(a + b for a, b in zip(k1, k2))
            if any(c > b for c, b in zip(key, bound)):
                continue
            product = p1 * p2
            if cutoff is not None:
                product = ParamPoly({m: c for m, c in product.terms.items() if m.qe > cutoff})
            if not product:
                continue
            result[key] = result[key] + product if key in result else product
    return {k: p for k, p in result.items() if p}


@functools.lru_cache(maxsize=None)
def _kernel_at_infinity(
    system: RootSystemData, bound: Tuple[int, ...]
) -> Dict[Tuple[int, ...], ParamPoly]:
    kernel = {tuple(0 for _ in bound): ParamPoly.one()}
    one = ParamMonomial(0, 0, 0)
    for b in system.positive_roots:
        count = min(bound[j] // b[j] for j in range(system.rank) if b[j] > 0)
        if count == 0:
            continue
        factor = _geometric_factor(system.t_half(b).power(-2), b, one, count)
        kernel = _multiply_truncated(kernel, factor, bound)
    return kernel


def degenerate_pairing_t(f: GroupAlgebraElement, g: GroupAlgebraElement) -> CoeffFraction:
    """<f, g>_t, the constant term of f iota(g) C(infinity, t)."""
    from .heckeops import iota

    system = f.system
    h = f * iota(g)
    targets, bound = _root_box(system, h.support())
    kernel = _kernel_at_infinity(system, bound)
    total = CoeffFraction.zero()
    for nu, key in targets.items():
        if key in kernel:
            total = total + h.coefficient(nu) * CoeffFraction.from_poly(kernel[key])
    return total


@dataclass(frozen=True)
class PairingConfig:
    """Truncation of the q-pairing.

    truncation_order is D: the kernel is kept modulo q^(-(D+1)/m*). None
    picks 2 * (largest |coordinate| in the supports) + 2. accuracy is the
    number of q^(-1/m*) orders the caller needs exact; it may not exceed D.
    """

    truncation_order: Optional[int] = None
    accuracy: int = 1

    def __post_init__(self):
        if self.truncation_order is not None and self.truncation_order < 1:
            raise InvalidJob(field="truncation", reason="truncation order must be at least 1")

    def resolve_order(self, *elements: GroupAlgebraElement) -> int:
        if self.truncation_order is not None:
            order = self.truncation_order
        else:
            largest = max(
                [0] + [abs(c) for f in elements for w in f.terms for c in w.coords]
            )
            order = 2 * largest + 2
        if self.accuracy > order:
            raise TruncationTooSmall(order=order, accuracy=self.accuracy)
        return order


_DEFAULT_PAIRING_CONFIG: PairingConfig = PairingConfig()


def set_default_pairing_config(config: Optional[PairingConfig]) -> None:
    """Set the default pairing config. None restores the initial default."""
    global _DEFAULT_PAIRING_CONFIG
    if config is None:
        config = PairingConfig()
    _DEFAULT_PAIRING_CONFIG = config


def get_default_pairing_config() -> PairingConfig:
    global _DEFAULT_PAIRING_CONFIG
    return _DEFAULT_PAIRING_CONFIG


@dataclass(frozen=True)
class TruncatedKernel:
    """Coefficients of C(q, t) = K(q, t)/K_0 at finitely many weights.

    Attributes:
        order: D; coefficients are exact above q^(-(D+1)/m*).
        coefficients: Root coordinates of a weight to its coefficient.
    """

    system: RootSystemData
    order: int
    coefficients: Dict[Tuple[int, ...], TruncatedSeries]

    @property
    def cutoff(self) -> int:
        return -(self.order + 1)

    def coefficient(self, weight: Weight) -> TruncatedSeries:
        coords = self.system.weight_to_root(weight)
        zero = TruncatedSeries(ParamPoly(), self.cutoff)
        if any(c.denominator != 1 for c in coords):
            return zero
        return self.coefficients.get(tuple(int(c) for c in coords), zero)


def truncated_kernel(
    system: RootSystemData, order: int, weights: Iterable[Weight]
) -> TruncatedKernel:
    """C(q, t) at the given weights, modulo q^(-(order+1)/m*)."""
    weights = list(weights) + [Weight.zero(system.rank)]
    cutoff = -(order + 1)
    keys = {}
    for w in weights:
        coords = system.weight_to_root(w)
        if all(c.denominator == 1 for c in coords):
            keys[w] = tuple(int(c) for c in coords)
    bound = tuple(max(k[j] for k in keys.values()) for j in range(system.rank))
    loose = tuple(10 ** 9 for _ in range(system.rank))

    # factors with k >= 1 first; each term costs at least q^-1
    kernel = {tuple(0 for _ in bound): ParamPoly.one()}
    m_star = system.m_star
    for b in system.positive_roots:
        step = system.r if system.is_long(b) else 1
        t_inverse = system.t_half(b).power(-2)
        neg = tuple(-c for c in b)
        for root_vector in (b, neg):
            k = step
            while k * m_star <= order:
                count = order // (k * m_star)
                q_step = system.scale.q(-k)
                factor = _geometric_factor(t_inverse, root_vector, q_step, count)
                kernel = _multiply_truncated(kernel, factor, loose, cutoff)
                k += step
    kernel = {key: p for key, p in kernel.items() if all(c <= b for c, b in zip(key, bound))}

    # k = 0 factors only raise coordinates
    for b in system.positive_roots:
        count = max(bound) + 3 * order
        factor = _geometric_factor(system.t_half(b).power(-2), b, ParamMonomial(0, 0, 0), count)
        kernel = _multiply_truncated(kernel, factor, bound, cutoff)

    zero_key = tuple(0 for _ in bound)
    inverse_constant = TruncatedSeries(kernel.get(zero_key, ParamPoly.one()), cutoff).inverse()
    coefficients = {
        key: TruncatedSeries(kernel[key], cutoff) * inverse_constant
        for key in set(keys.values())
        if key in kernel
    }
    LOGGER.debug("Kernel for %s to order %d at %d weights", system.name, order, len(coefficients))
    return TruncatedKernel(system=system, order=order, coefficients=coefficients)


def _bar(g: GroupAlgebraElement) -> GroupAlgebraElement:
    """e^lambda -> e^-lambda with q, ts, tl inverted."""
    return g.conj().map_weights(lambda w: -w)


def cherednik_pairing(
    f: GroupAlgebraElement,
    g: GroupAlgebraElement,
    config: Optional[PairingConfig] = None,
) -> TruncatedSeries:
    """<f, g>_(q, t) = CT(f g-bar C(q, t)), modulo q^(-(D+1)/m*)."""
    if config is None:
        config = get_default_pairing_config()
    system = f.system
    order = config.resolve_order(f, g)
    cutoff = -(order + 1)
    h = f * _bar(g)
    kernel = truncated_kernel(system, order, [-nu for nu in h.support()])
    total = TruncatedSeries(ParamPoly(), cutoff)
    for nu, c in h.terms.items():
        coefficient = kernel.coefficient(-nu)
        if coefficient.is_zero():
            continue
        total = total + expand_in_q_inverse(c, cutoff) * coefficient
    return total
