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

"""Standard, dual standard and canonical bases of the parabolic module.

Weights are ordered inside one affine orbit by the Bruhat order of their
minimal representatives w_lambda; the canonical basis element C'_lambda is
the kappa-fixed element

    C'_lambda = sum over mu <= lambda of P*_mu E-tilde_mu(infinity, t)

with P*_lambda = 1 and every other P*_mu free of constant terms.
"""

__all__ = (
    "BasisKind",
    "BasisFamily",
    "standard_basis",
    "dual_standard_basis",
    "basis_family",
    "expand_triangular",
    "r_polynomials",
    "KLPolynomial",
    "CanonicalBasisResult",
    "canonical_basis",
    "verify_antidominant_character",
    "kl_pairing_extraction",
    "CONJECTURE_MARKER",
    "ConjectureReport",
    "conjecture_report",
    "kl_involution_check",
    "HeckeElement",
    "kl_element",
    "lemma_factorization",
    "SupportObservation",
    "support_observation",
)

import enum
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from .coeffs import CoeffFraction, ParamMonomial, ParamPoly
from .errors import DivisionByZero, InvalidJob, RecursionFailure, UnsupportedType
from .heckeops import (
    GroupAlgebraElement,
    apply_omega,
    apply_Ti,
    apply_Tw,
    apply_word,
    chi,
    kappa,
)
from .macdonald import (
    E_tilde,
    degenerate_pairing_t,
    dominant_conjugate,
    weyl_character_oracle,
)
from .roots import RootSystemData, Weight
from .weyl import (
    AffineWord,
    ExtendedWeylElement,
    alcove_interval,
    bruhat_lower_set,
    finite_longest,
    omega_element,
    orbit_data,
    simple_reflection,
)

LOGGER = logging.getLogger(__name__)


class BasisKind(enum.Enum):
    STANDARD = "standard"
    DUAL_STANDARD = "dual_standard"
    CANONICAL = "canonical"


@functools.lru_cache(maxsize=None)
def standard_basis(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """T_(w_lambda) omega_(lambda_tilde) . 1"""
    data = orbit_data(system, lam)
    word = AffineWord(data.w_lambda.letters, data.lambda_tilde)
    return apply_Tw(GroupAlgebraElement.one(system), word)


@functools.lru_cache(maxsize=None)
def dual_standard_basis(system: RootSystemData, lam: Weight) -> GroupAlgebraElement:
    """T^-1_(w_lambda^-1) omega_(lambda_tilde) . 1"""
    data = orbit_data(system, lam)
    f = apply_omega(GroupAlgebraElement.one(system), data.lambda_tilde)
    return apply_word(f, data.w_lambda.letters, inverse=True)


@dataclass(frozen=True)
class BasisFamily:
    """Basis elements of one kind at a set of weights.

    Attributes:
        kind: Which basis.
        entries: Weight to basis element.
    """

    kind: BasisKind
    entries: Dict[Weight, GroupAlgebraElement]


def basis_family(
    system: RootSystemData, kind: BasisKind, weights: Iterable[Weight]
) -> BasisFamily:
    builders: Dict[BasisKind, Callable[[RootSystemData, Weight], GroupAlgebraElement]] = {
        BasisKind.STANDARD: standard_basis,
        BasisKind.DUAL_STANDARD: dual_standard_basis,
        BasisKind.CANONICAL: lambda s, w: canonical_basis(s, w).element,
    }
    build = builders[kind]
    return BasisFamily(kind=kind, entries={w: build(system, w) for w in weights})


def _triangular_key(system: RootSystemData, mu: Weight) -> Tuple[Any, ...]:
    height = sum(system.weight_to_root(dominant_conjugate(system, mu)), Fraction(0))
    return (height, -len(orbit_data(system, mu).w_ring), mu.coords)


def expand_triangular(
    f: GroupAlgebraElement,
    basis: Callable[[Weight], GroupAlgebraElement],
) -> Dict[Weight, CoeffFraction]:
    """Coefficients of f in a basis unitriangular up to its leading coefficients.

    basis(nu) must have e^nu as its largest term, where larger means a higher
    dominant conjugate, then a shorter w_nu.
    """
    system = f.system
    result: Dict[Weight, CoeffFraction] = {}
    remainder = f
    while not remainder.is_zero():
        nu = max(remainder.terms, key=lambda mu: _triangular_key(system, mu))
        element = basis(nu)
        c = remainder.coefficient(nu) / element.coefficient(nu)
        result[nu] = c
        remainder = remainder - element.scale(c)
    return result


def _as_poly(c: CoeffFraction, what: str) -> ParamPoly:
    c = c.reduce()
    if not c.is_polynomial() or c.den_scalar != 1:
        raise RecursionFailure(weight=(), detail=f"{what} is not a Laurent polynomial")
    return c.num


@functools.lru_cache(maxsize=None)
def _r_polynomials_triangular(system: RootSystemData, lam: Weight) -> Dict[Weight, ParamPoly]:
    expansion = expand_triangular(
        dual_standard_basis(system, lam), lambda nu: standard_basis(system, nu)
    )
    return {mu: _as_poly(c, f"R*({mu}, {lam})") for mu, c in expansion.items()}


def r_polynomials(
    system: RootSystemData, lam: Weight, method: str = "triangular"
) -> Dict[Weight, ParamPoly]:
    """R*_(v_mu, v_lambda) for every mu with a nonzero value.

    method is "triangular" (change of basis) or "pairing" (degenerate pairing
    against the standard basis over the alcove interval of lambda).
    """
    if method == "triangular":
        return dict(_r_polynomials_triangular(system, lam))
    if method == "pairing":
        dual = dual_standard_basis(system, lam)
        result = {}
        for mu in sorted(alcove_interval(system, lam)):
            value = degenerate_pairing_t(dual, standard_basis(system, mu))
            if not value.is_zero():
                result[mu] = _as_poly(value, f"R*({mu}, {lam})")
        return result
    raise InvalidJob(field="method", reason=f"unknown method {method!r}")


@dataclass(frozen=True)
class KLPolynomial:
    """P*_(v_mu, v_lambda) with its normalized form.

    Attributes:
        mu: The lower weight.
        lam: The upper weight.
        pstar: A polynomial in the t^(-1/2).
        shift: chi(v_lambda) / chi(v_mu), as a monomial.
    """

    mu: Weight
    lam: Weight
    pstar: ParamPoly
    shift: ParamMonomial

    @property
    def p(self) -> ParamPoly:
        """P = chi(v_mu)^-1 chi(v_lambda) P*"""
        return self.pstar.shift(self.shift)

    def has_no_constant_term(self) -> bool:
        return all(not m.is_one() for m in self.pstar.terms)

    def p_is_integral(self) -> bool:
        """Whether P lies in Z[t_s, t_l]."""
        return all(
            m.qe == 0 and m.ae >= 0 and m.be >= 0 and m.ae % 2 == 0 and m.be % 2 == 0
            for m in self.p.terms
        )

    def value_at_one(self) -> int:
        return sum(self.p.terms.values())

    def coefficients_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.p.terms.values())


@dataclass(frozen=True)
class CanonicalBasisResult:
    """C'_lambda and its expansion in the standard basis.

    Attributes:
        lam: The weight.
        element: C'_lambda.
        polynomials: mu to P*_(v_mu, v_lambda), for mu <= lambda.
    """

    lam: Weight
    element: GroupAlgebraElement
    polynomials: Dict[Weight, KLPolynomial]


def _is_negative(m: ParamMonomial) -> bool:
    """Total order on ts^(a/2) tl^(b/2): by a + b, then by a."""
    degree = m.ae + m.be
    if degree != 0:
        return degree < 0
    return m.ae < 0


def _negative_part(poly: ParamPoly) -> ParamPoly:
    return ParamPoly({m: c for m, c in poly.terms.items() if _is_negative(m)})


def _chi_v(system: RootSystemData, mu: Weight) -> ParamMonomial:
    return chi(system, orbit_data(system, mu).v_lambda).num.single_term()[0]


@functools.lru_cache(maxsize=None)
def canonical_basis(system: RootSystemData, lam: Weight) -> CanonicalBasisResult:
    """C'_lambda by the self-duality recursion over the interval below lambda.

    With kappa(E-tilde_nu(infinity, t)) = E-tilde_nu(0, t) and
    E-tilde_nu(0, t) = sum_mu R*_(mu, nu) E-tilde_mu(infinity, t), the
    kappa-fixed condition reads P*_mu - conj(P*_mu) = sum over mu < nu <= lambda
    of conj(P*_nu) R*_(mu, nu); P*_mu is the negative-degree part of the right side.
    """
    interval = sorted(
        alcove_interval(system, lam),
        key=lambda mu: (-len(orbit_data(system, mu).w_lambda), mu.coords),
    )
    pstar: Dict[Weight, ParamPoly] = {lam: ParamPoly.one()}
    r_tables = {nu: _r_polynomials_triangular(system, nu) for nu in interval}
    for mu in interval:
        if mu == lam:
            continue
        total = ParamPoly()
        for nu, p_nu in pstar.items():
            r = r_tables[nu].get(mu)
            if r is not None and nu != mu:
                total = total + p_nu.conj() * r
        candidate = _negative_part(total)
        if candidate - candidate.conj() != total:
            raise RecursionFailure(
                weight=lam.coords, detail=f"no degree-bounded solution at {mu}"
            )
        if candidate:
            pstar[mu] = candidate
        LOGGER.debug("P*(%s, %s) = %s", mu, lam, candidate.render(system.scale))

    element = GroupAlgebraElement.zero(system)
    top_chi = _chi_v(system, lam)
    polynomials = {}
    for mu, p in sorted(pstar.items()):
        element = element + standard_basis(system, mu).scale(CoeffFraction.from_poly(p))
        polynomials[mu] = KLPolynomial(
            mu=mu, lam=lam, pstar=p, shift=top_chi.div(_chi_v(system, mu))
        )
    return CanonicalBasisResult(lam=lam, element=element, polynomials=polynomials)


def verify_antidominant_character(system: RootSystemData, lam: Weight) -> bool:
    """Whether C'_lambda is the Weyl character with lowest weight lambda."""
    element = canonical_basis(system, lam).element
    if not element.is_parameter_free():
        return False
    for i in range(1, system.rank + 1):
        t_half = CoeffFraction.from_monomial(system.t_half_simple(i))
        if not (apply_Ti(element, i) - element.scale(t_half)).is_zero():
            return False
    return element == weyl_character_oracle(system, lam)


def kl_pairing_extraction(system: RootSystemData, lam: Weight, mu: Weight) -> ParamPoly:
    """<C'_lambda, E-tilde_mu(infinity, t)>_t"""
    value = degenerate_pairing_t(
        canonical_basis(system, lam).element, standard_basis(system, mu)
    )
    return _as_poly(value, f"<C'({lam}), E({mu})>")


CONJECTURE_MARKER = "conjectural - not asserted"


@dataclass(frozen=True)
class ConjectureReport:
    """P_(v_mu, v_lambda)(1) values and coefficient signs, for observation only."""

    lam: Weight
    rows: List[Tuple[Weight, int, bool]]
    marker: str = CONJECTURE_MARKER

    def to_json(self) -> Dict[str, Any]:
        return {
            "weight": self.lam.to_json(),
            "marker": self.marker,
            "rows": [
                {"mu": mu.to_json(), "p_at_one": value, "nonnegative": nonnegative}
                for mu, value, nonnegative in self.rows
            ],
        }


def conjecture_report(system: RootSystemData, lam: Weight) -> ConjectureReport:
    if system.r != 1:
        raise UnsupportedType(
            type_tag=system.type_tag,
            rank=system.rank,
            internal_message=f"{system.name} has unequal parameters; the report needs equal parameters",
            error_message="The report is defined for equal parameters only.",
        )
    result = canonical_basis(system, lam)
    rows = [
        (mu, kl.value_at_one(), kl.coefficients_nonnegative())
        for mu, kl in sorted(result.polynomials.items())
    ]
    return ConjectureReport(lam=lam, rows=rows)


def kl_involution_check(system: RootSystemData, lam: Weight) -> bool:
    """kappa swaps the standard and dual standard elements and fixes C'_lambda."""
    if kappa(standard_basis(system, lam)) != dual_standard_basis(system, lam):
        return False
    element = canonical_basis(system, lam).element
    return kappa(element) == element


class HeckeElement:
    """A finite sum of c_w T_w over the extended affine Weyl group, equal parameters."""

    __slots__ = ("system", "terms")

    __hash__ = None  # type: ignore

    def __init__(
        self,
        system: RootSystemData,
        terms: Optional[Dict[ExtendedWeylElement, ParamPoly]] = None,
    ) -> None:
        self.system = system
        self.terms = {w: p for w, p in (terms or {}).items() if p}

    @classmethod
    def basis(cls, system: RootSystemData, w: ExtendedWeylElement) -> "HeckeElement":
        return cls(system, {w: ParamPoly.one()})

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        terms = dict(self.terms)
        for w, p in other.terms.items():
            terms[w] = terms[w] + p if w in terms else p
        return HeckeElement(self.system, terms)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(ParamPoly.constant(-1))

    def scale(self, c: ParamPoly) -> "HeckeElement":
        return HeckeElement(self.system, {w: p * c for w, p in self.terms.items()})

    def coefficient(self, w: ExtendedWeylElement) -> ParamPoly:
        return self.terms.get(w, ParamPoly())

    def _left_generator(self, i: int) -> "HeckeElement":
        s = simple_reflection(self.system, i)
        t_half = self.system.t_half_simple(i)
        difference = ParamPoly({t_half: 1, t_half.inverse(): -1})
        terms: Dict[ExtendedWeylElement, ParamPoly] = {}
        for w, p in self.terms.items():
            sw = s * w
            terms[sw] = terms[sw] + p if sw in terms else p
            if w.is_left_descent(i):
                terms[w] = terms[w] + p * difference if w in terms else p * difference
        return HeckeElement(self.system, terms)

    def left_multiply_basis(self, x: ExtendedWeylElement) -> "HeckeElement":
        """T_x times self."""
        word = x.reduced_word()
        omega = omega_element(self.system, word.omega)
        result = HeckeElement(self.system, {omega * w: p for w, p in self.terms.items()})
        for i in reversed(word.letters):
            result = result._left_generator(i)
        return result

    def right_multiply_omega(self, omega: ExtendedWeylElement) -> "HeckeElement":
        return HeckeElement(self.system, {w * omega: p for w, p in self.terms.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        result = HeckeElement(self.system)
        for x, p in self.terms.items():
            result = result + other.left_multiply_basis(x).scale(p)
        return result


def _check_lemma_scope(system: RootSystemData) -> None:
    if system.r != 1 or system.rank > 2:
        raise UnsupportedType(
            type_tag=system.type_tag,
            rank=system.rank,
            error_message="Affine Kazhdan-Lusztig elements are built for simply-laced rank <= 2.",
        )


@functools.lru_cache(maxsize=None)
def kl_element(w: ExtendedWeylElement) -> HeckeElement:
    """C'_w = T_w + sum over y < w of P*_(y, w) T_y in the affine Hecke algebra."""
    system = w.system
    _check_lemma_scope(system)
    word = w.reduced_word()
    if not word.omega.is_zero():
        omega = omega_element(system, word.omega)
        return kl_element(w * omega.inverse()).right_multiply_omega(omega)
    if not word.letters:
        return HeckeElement.basis(system, w)
    i = word.letters[0]
    s = simple_reflection(system, i)
    t_half = system.t_half_simple(i)
    c_s = HeckeElement(
        system,
        {s: ParamPoly.one(), ExtendedWeylElement.identity(system): ParamPoly({t_half.inverse(): 1})},
    )
    product = c_s * kl_element(s * w)
    while True:
        pending = [
            y
            for y, p in product.terms.items()
            if y != w and any(m.ae >= 0 for m in p.terms)
        ]
        if not pending:
            return product
        y = max(pending, key=lambda x: (x.length(), repr(x)))
        coefficient = product.coefficient(y)
        if any(m.ae > 0 for m in coefficient.terms):
            raise RecursionFailure(weight=(), detail=f"positive degree at {y!r}")
        constant = ParamPoly({m: c for m, c in coefficient.terms.items() if m.ae == 0})
        product = product - kl_element(y).scale(constant)


def lemma_factorization(system: RootSystemData, lam: Weight) -> Tuple[HeckeElement, HeckeElement]:
    """Both sides of the factorization of C'_(v_lambda) through the parabolic P*."""
    _check_lemma_scope(system)
    data = orbit_data(system, lam)
    left = kl_element(data.v_lambda.evaluate(system))

    omega = omega_element(system, data.lambda_tilde)
    first = HeckeElement(system)
    for mu, kl in canonical_basis(system, lam).polynomials.items():
        w_mu = orbit_data(system, mu).w_lambda_element
        first = first + HeckeElement(system, {w_mu * omega: kl.pstar})
    w_o = finite_longest(system)
    symmetrizer_terms = {}
    for x in bruhat_lower_set(ExtendedWeylElement.from_finite(w_o)):
        symmetrizer_terms[x] = chi(system, x).num
    symmetrizer = HeckeElement(system, symmetrizer_terms).scale(
        chi(system, w_o).inv().num
    )
    right = (first * symmetrizer).right_multiply_omega(omega.inverse())
    return left, right


@dataclass(frozen=True)
class SupportObservation:
    """C'_lambda expanded in E-tilde_mu(q, t) at q = t, t_l = t^r; observation only.

    Attributes:
        lam: The weight.
        coefficients: mu to the rendered coefficient.
        poles: Weights whose basis element has no value at q = t.
    """

    lam: Weight
    coefficients: Dict[Weight, str]
    poles: List[Weight]
    marker: str = CONJECTURE_MARKER

    def to_json(self) -> Dict[str, Any]:
        return {
            "weight": self.lam.to_json(),
            "marker": self.marker,
            "coefficients": [
                {"mu": mu.to_json(), "coeff": text}
                for mu, text in sorted(self.coefficients.items())
            ],
            "poles": [mu.to_json() for mu in self.poles],
        }


def _collapse_to_one_t(system: RootSystemData) -> Callable[[ParamMonomial], ParamMonomial]:
    def collapse(m: ParamMonomial) -> ParamMonomial:
        q_half_units = Fraction(2 * m.qe, system.m_star)
        if q_half_units.denominator != 1:
            raise ValueError(f"q exponent {m.qe}/{system.m_star} is not a half integer")
        return ParamMonomial(0, int(q_half_units) + m.ae + system.r * m.be, 0)

    return collapse


def support_observation(system: RootSystemData, lam: Weight) -> SupportObservation:
    collapse = _collapse_to_one_t(system)
    poles: List[Weight] = []

    @functools.lru_cache(maxsize=None)
    def basis(nu: Weight) -> GroupAlgebraElement:
        element = E_tilde(system, nu)
        try:
            return element.map_coefficients(lambda c: c.map_monomials(collapse))
        except DivisionByZero:
            poles.append(nu)
            raise

    element = canonical_basis(system, lam).element.map_coefficients(
        lambda c: c.map_monomials(collapse)
    )
    try:
        expansion = expand_triangular(element, basis)
    except DivisionByZero:
        return SupportObservation(lam=lam, coefficients={}, poles=sorted(set(poles)))
    return SupportObservation(
        lam=lam,
        coefficients={mu: c.render(system.scale) for mu, c in expansion.items()},
        poles=[],
    )
