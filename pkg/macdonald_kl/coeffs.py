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

"""Exact coefficients: Laurent polynomials in q^(1/m*), ts^(1/2), tl^(1/2)
over the integers, and fractions of those with binomial denominators.

Exponents are stored as integers: qe counts powers of q^(1/m*), ae counts
powers of ts^(1/2) and be counts powers of tl^(1/2). The scale m* only
matters for rendering and is carried by ParameterScale.
"""

__all__ = (
    "ParamMonomial",
    "ParamPoly",
    "CoeffFraction",
    "Indeterminate",
    "ParameterScale",
    "TruncatedSeries",
    "limit_at_zero",
    "is_polynomial_in",
    "substitute_t",
    "substitute_t_value",
    "has_integral_t_powers",
    "collapse_t",
    "expand_in_q_inverse",
)

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

from .errors import DivisionByZero, InvalidJob, PoleAtLimit, UnsupportedDenominator


class ParamMonomial(NamedTuple):
    """q^(qe/m*) ts^(ae/2) tl^(be/2)."""

    qe: int = 0
    ae: int = 0
    be: int = 0

    def mul(self, other: "ParamMonomial") -> "ParamMonomial":
        return ParamMonomial(self.qe + other.qe, self.ae + other.ae, self.be + other.be)

    def div(self, other: "ParamMonomial") -> "ParamMonomial":
        return ParamMonomial(self.qe - other.qe, self.ae - other.ae, self.be - other.be)

    def inverse(self) -> "ParamMonomial":
        return ParamMonomial(-self.qe, -self.ae, -self.be)

    def power(self, k: int) -> "ParamMonomial":
        return ParamMonomial(self.qe * k, self.ae * k, self.be * k)

    def degree(self, grading: Tuple[int, int, int]) -> int:
        return self.qe * grading[0] + self.ae * grading[1] + self.be * grading[2]

    def is_one(self) -> bool:
        return self.qe == 0 and self.ae == 0 and self.be == 0

    def is_lex_positive(self) -> bool:
        for e in self:
            if e:
                return e > 0
        return False


ONE = ParamMonomial(0, 0, 0)


@dataclass(frozen=True)
class ParameterScale:
    """How to read and render exponents for one root system.

    m_star is the denominator of q-exponents. simply_laced systems render
    the single parameter as t, others as ts and tl. q_symbol names q in
    rendered text.
    """

    m_star: int = 1
    simply_laced: bool = True
    q_symbol: str = "q"

    def q(self, k: Union[int, Fraction]) -> ParamMonomial:
        """The monomial q^k for rational k with denominator dividing m*."""
        value = Fraction(k) * self.m_star
        if value.denominator != 1:
            raise ValueError(f"q^{k} is not a power of q^(1/{self.m_star})")
        return ParamMonomial(int(value), 0, 0)


DEFAULT_SCALE = ParameterScale()

# raw exponents, Q = q^(1/m*)
RAW_SCALE = ParameterScale(q_symbol="Q")


def _render_exponent(value: Fraction) -> str:
    if value == 1:
        return ""
    if value.denominator == 1:
        return f"^{value.numerator}"
    return f"^({value.numerator}/{value.denominator})"


def _render_monomial(m: ParamMonomial, scale: ParameterScale) -> str:
    parts = []
    if m.qe:
        parts.append(scale.q_symbol + _render_exponent(Fraction(m.qe, scale.m_star)))
    if scale.simply_laced:
        if m.ae or m.be:
            parts.append("t" + _render_exponent(Fraction(m.ae + m.be, 2)))
    else:
        if m.ae:
            parts.append("ts" + _render_exponent(Fraction(m.ae, 2)))
        if m.be:
            parts.append("tl" + _render_exponent(Fraction(m.be, 2)))
    return " ".join(parts)


def _render_term(c: int, m: ParamMonomial, scale: ParameterScale) -> str:
    mono = _render_monomial(m, scale)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c} {mono}"


class ParamPoly:
    """Sparse Laurent polynomial: ParamMonomial -> nonzero integer.

    Treated as immutable once built.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[ParamMonomial, int]] = None) -> None:
        self.terms: Dict[ParamMonomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[ParamMonomial(*m)] = int(c)

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls()

    @classmethod
    def one(cls) -> "ParamPoly":
        return cls({ONE: 1})

    @classmethod
    def constant(cls, c: int) -> "ParamPoly":
        return cls({ONE: c})

    @classmethod
    def monomial(cls, m: ParamMonomial, c: int = 1) -> "ParamPoly":
        return cls({m: c})

    @classmethod
    def binomial(cls, m: ParamMonomial) -> "ParamPoly":
        """1 - m"""
        if m.is_one():
            return cls()
        return cls({ONE: 1, m: -1})

    @classmethod
    def _from_dict(cls, terms: Dict[ParamMonomial, int]) -> "ParamPoly":
        # caller guarantees no zero coefficients
        poly = cls.__new__(cls)
        poly.terms = terms
        return poly

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single_term(self) -> Tuple[ParamMonomial, int]:
        if len(self.terms) != 1:
            raise ValueError("Not a single term")
        return next(iter(self.terms.items()))

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = ParamPoly.constant(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"ParamPoly({self.render(RAW_SCALE)!r}, Q=q^(1/m*))"

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._from_dict({m: -c for m, c in self.terms.items()})

    def __add__(self, other: Union["ParamPoly", int]) -> "ParamPoly":
        if isinstance(other, int):
            other = ParamPoly.constant(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        result = dict(self.terms)
        for m, c in other.terms.items():
            value = result.get(m, 0) + c
            if value:
                result[m] = value
            else:
                result.pop(m, None)
        return ParamPoly._from_dict(result)

    __radd__ = __add__

    def __sub__(self, other: Union["ParamPoly", int]) -> "ParamPoly":
        if isinstance(other, int):
            other = ParamPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "ParamPoly":
        return ParamPoly.constant(other) - self

    def __mul__(self, other: Union["ParamPoly", int]) -> "ParamPoly":
        if isinstance(other, int):
            if not other:
                return ParamPoly()
            return ParamPoly._from_dict({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        result: Dict[ParamMonomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                result[m] = result.get(m, 0) + c1 * c2
        return ParamPoly({m: c for m, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamPoly":
        if k < 0:
            raise ValueError("Negative power of a polynomial")
        result = ParamPoly.one()
        for _ in range(k):
            result = result * self
        return result

    def shift(self, m: ParamMonomial) -> "ParamPoly":
        """Multiply by the monomial m."""
        return ParamPoly._from_dict({k.mul(m): c for k, c in self.terms.items()})

    def conj(self) -> "ParamPoly":
        """Invert q, ts and tl."""
        return ParamPoly._from_dict({m.inverse(): c for m, c in self.terms.items()})

    def map_monomials(self, f: Callable[[ParamMonomial], ParamMonomial]) -> "ParamPoly":
        result: Dict[ParamMonomial, int] = {}
        for m, c in self.terms.items():
            k = f(m)
            result[k] = result.get(k, 0) + c
        return ParamPoly({m: c for m, c in result.items() if c})

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    def exact_scalar_div(self, d: int) -> "ParamPoly":
        result = {}
        for m, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise ValueError(f"{d} does not divide {c}")
            result[m] = q
        return ParamPoly._from_dict(result)

    def min_degree(self, grading: Tuple[int, int, int]) -> int:
        return min(m.degree(grading) for m in self.terms)

    def max_degree(self, grading: Tuple[int, int, int]) -> int:
        return max(m.degree(grading) for m in self.terms)

    def part_of_degree(self, grading: Tuple[int, int, int], degree: int) -> "ParamPoly":
        return ParamPoly._from_dict(
            {m: c for m, c in self.terms.items() if m.degree(grading) == degree}
        )

    def max_q(self) -> int:
        return max(m.qe for m in self.terms)

    def divide_by_binomial(self, m: ParamMonomial) -> Optional["ParamPoly"]:
        """Exact quotient by (1 - m), or None if (1 - m) does not divide.

        Terms split into chains k, k m, k m^2, ...; along a chain the quotient
        is the running sum of the coefficients, which must end at zero.
        """
        if m.is_one():
            raise DivisionByZero()
        if not self.terms:
            return ParamPoly()
        axis = next(i for i, e in enumerate(m) if e)
        chains: Dict[ParamMonomial, Dict[int, int]] = {}
        for k, c in self.terms.items():
            j = k[axis] // m[axis]
            chains.setdefault(k.div(m.power(j)), {})[j] = c
        quotient: Dict[ParamMonomial, int] = {}
        for base, chain in chains.items():
            exponents = sorted(chain)
            running = 0
            for j, following in zip(exponents, exponents[1:] + [None]):
                running += chain[j]
                if following is None:
                    if running:
                        return None
                    break
                if running:
                    for i in range(j, following):
                        quotient[base.mul(m.power(i))] = running
        return ParamPoly._from_dict(quotient)

    def factor_binomials(
        self,
    ) -> Optional[Tuple[int, ParamMonomial, Dict[ParamMonomial, int]]]:
        """Write self as c * u * prod (1 - m)^k with lex-positive m.

        Returns (c, u, {m: k}), or None when self is not of that shape.
        """
        if not self.terms:
            return None
        g = self.content()
        work = self.exact_scalar_div(g)
        factors: Dict[ParamMonomial, int] = {}
        while len(work.terms) > 1:
            ordered = sorted(work.terms)
            m = ordered[1].div(ordered[0])
            quotient = work.divide_by_binomial(m)
            if quotient is None:
                return None
            factors[m] = factors.get(m, 0) + 1
            work = quotient
        unit, c = work.single_term()
        return g * c, unit, factors

    def sorted_terms(self) -> List[Tuple[ParamMonomial, int]]:
        """Terms in descending (qe, ae, be) order."""
        return sorted(self.terms.items(), key=lambda item: item[0], reverse=True)

    def render(self, scale: ParameterScale = DEFAULT_SCALE) -> str:
        if not self.terms:
            return "0"
        out = ""
        for m, c in self.sorted_terms():
            term = _render_term(c, m, scale)
            if not out:
                out = term
            elif term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def to_json(self) -> List[Dict[str, int]]:
        return [
            {"q": m.qe, "ts": m.ae, "tl": m.be, "c": c} for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, int]]) -> "ParamPoly":
        return cls({ParamMonomial(d["q"], d["ts"], d["tl"]): d["c"] for d in data})


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _orient(m: ParamMonomial) -> Tuple[bool, ParamMonomial]:
    """Orient a denominator binomial so its monomial is lex-negative.

    Returns (flipped, m') with 1 - m = -m (1 - m') when flipped.
    """
    if m.is_one():
        raise DivisionByZero()
    if m.is_lex_positive():
        return True, m.inverse()
    return False, m


class CoeffFraction:
    """num / (den_scalar * prod (1 - m)^k).

    Every monomial m in den_factors is lex-negative (first nonzero exponent
    negative) and den_scalar is positive. Unit monomials never stay in the
    denominator; they are moved into the numerator.
    """

    __slots__ = ("num", "den_scalar", "den_factors")

    __hash__ = None  # type: ignore

    def __init__(
        self,
        num: Union[ParamPoly, int] = 0,
        den_scalar: int = 1,
        den_factors: Optional[Mapping[ParamMonomial, int]] = None,
        *,
        reduce: bool = True,
    ) -> None:
        if isinstance(num, int):
            num = ParamPoly.constant(num)
        if den_scalar == 0:
            raise DivisionByZero()
        factors: Dict[ParamMonomial, int] = {}
        if den_factors:
            for m, k in den_factors.items():
                if k <= 0:
                    continue
                flipped, m2 = _orient(ParamMonomial(*m))
                if flipped:
                    # 1/(1-m) = -m^-1 / (1 - m^-1)
                    num = num.shift(m2.power(k))
                    if k % 2:
                        num = -num
                factors[m2] = factors.get(m2, 0) + k
        if den_scalar < 0:
            num = -num
            den_scalar = -den_scalar
        self.num: ParamPoly = num
        self.den_scalar: int = den_scalar
        self.den_factors: Dict[ParamMonomial, int] = factors
        if reduce:
            self._reduce()

    @classmethod
    def _raw(
        cls, num: ParamPoly, den_scalar: int, den_factors: Dict[ParamMonomial, int]
    ) -> "CoeffFraction":
        x = cls.__new__(cls)
        x.num = num
        x.den_scalar = den_scalar
        x.den_factors = den_factors
        return x

    @classmethod
    def zero(cls) -> "CoeffFraction":
        return cls._raw(ParamPoly(), 1, {})

    @classmethod
    def one(cls) -> "CoeffFraction":
        return cls._raw(ParamPoly.one(), 1, {})

    @classmethod
    def from_int(cls, c: int) -> "CoeffFraction":
        return cls._raw(ParamPoly.constant(c), 1, {})

    @classmethod
    def from_poly(cls, poly: ParamPoly) -> "CoeffFraction":
        return cls._raw(poly, 1, {})

    @classmethod
    def from_monomial(cls, m: ParamMonomial, c: int = 1) -> "CoeffFraction":
        return cls._raw(ParamPoly.monomial(m, c), 1, {})

    @classmethod
    def binomial(cls, m: ParamMonomial) -> "CoeffFraction":
        """1 - m"""
        return cls._raw(ParamPoly.binomial(m), 1, {})

    @classmethod
    def inverse_binomial(cls, m: ParamMonomial) -> "CoeffFraction":
        """1 / (1 - m)"""
        return cls(ParamPoly.one(), 1, {m: 1}, reduce=False)

    def _reduce(self) -> None:
        if not self.num.terms:
            self.den_scalar = 1
            self.den_factors = {}
            return
        for m in list(self.den_factors):
            k = self.den_factors[m]
            while k:
                quotient = self.num.divide_by_binomial(m)
                if quotient is None:
                    break
                self.num = quotient
                k -= 1
            if k:
                self.den_factors[m] = k
            else:
                del self.den_factors[m]
        if self.den_scalar != 1:
            g = math.gcd(self.num.content(), self.den_scalar)
            if g > 1:
                self.num = self.num.exact_scalar_div(g)
                self.den_scalar //= g

    def reduce(self) -> "CoeffFraction":
        x = CoeffFraction._raw(self.num, self.den_scalar, dict(self.den_factors))
        x._reduce()
        return x

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_polynomial(self) -> bool:
        return not self.den_factors and self.den_scalar == 1

    def is_monomial(self) -> bool:
        """True for c * m with an integer c and a monomial m."""
        return self.is_polynomial() and self.num.is_monomial()

    def _expanded_den(self, factors: Mapping[ParamMonomial, int]) -> ParamPoly:
        result = ParamPoly.one()
        for m, k in factors.items():
            result = result * ParamPoly.binomial(m) ** k
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = CoeffFraction.from_int(other)
        if not isinstance(other, CoeffFraction):
            return NotImplemented
        if (
            self.den_scalar == other.den_scalar
            and self.den_factors == other.den_factors
        ):
            return self.num == other.num
        left = self.num * other.den_scalar
        right = other.num * self.den_scalar
        for m in set(self.den_factors) | set(other.den_factors):
            k = self.den_factors.get(m, 0) - other.den_factors.get(m, 0)
            if k > 0:
                right = right * ParamPoly.binomial(m) ** k
            elif k < 0:
                left = left * ParamPoly.binomial(m) ** (-k)
        return left == right

    def __ne__(self, other: Any) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __neg__(self) -> "CoeffFraction":
        return CoeffFraction._raw(-self.num, self.den_scalar, dict(self.den_factors))

    def __add__(self, other: Union["CoeffFraction", int]) -> "CoeffFraction":
        if isinstance(other, int):
            other = CoeffFraction.from_int(other)
        if not isinstance(other, CoeffFraction):
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den_factors == other.den_factors:
            if self.den_scalar == other.den_scalar:
                num = self.num + other.num
                x = CoeffFraction._raw(num, self.den_scalar, dict(self.den_factors))
                if self.den_factors or self.den_scalar != 1:
                    x._reduce()
                elif not num.terms:
                    x.den_scalar = 1
                return x
        scalar = _lcm(self.den_scalar, other.den_scalar)
        factors: Dict[ParamMonomial, int] = {}
        for m in set(self.den_factors) | set(other.den_factors):
            factors[m] = max(self.den_factors.get(m, 0), other.den_factors.get(m, 0))

        def lift(x: CoeffFraction) -> ParamPoly:
            extra = {m: k - x.den_factors.get(m, 0) for m, k in factors.items()}
            return x.num * (scalar // x.den_scalar) * x._expanded_den(extra)

        result = CoeffFraction._raw(lift(self) + lift(other), scalar, factors)
        result._reduce()
        return result

    __radd__ = __add__

    def __sub__(self, other: Union["CoeffFraction", int]) -> "CoeffFraction":
        if isinstance(other, int):
            other = CoeffFraction.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "CoeffFraction":
        return CoeffFraction.from_int(other) - self

    def __mul__(self, other: Union["CoeffFraction", int]) -> "CoeffFraction":
        if isinstance(other, int):
            other = CoeffFraction.from_int(other)
        if not isinstance(other, CoeffFraction):
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return CoeffFraction.zero()
        factors = dict(self.den_factors)
        for m, k in other.den_factors.items():
            factors[m] = factors.get(m, 0) + k
        result = CoeffFraction._raw(
            self.num * other.num, self.den_scalar * other.den_scalar, factors
        )
        if factors or result.den_scalar != 1:
            result._reduce()
        return result

    __rmul__ = __mul__

    def shift(self, m: ParamMonomial) -> "CoeffFraction":
        """Multiply by the monomial m."""
        return CoeffFraction._raw(self.num.shift(m), self.den_scalar, dict(self.den_factors))

    def inv(self) -> "CoeffFraction":
        if not self.num.terms:
            raise DivisionByZero()
        factored = self.num.factor_binomials()
        if factored is None:
            raise UnsupportedDenominator(poly=self.num.render())
        c, unit, num_factors = factored
        num = self._expanded_den(self.den_factors) * self.den_scalar
        num = num.shift(unit.inverse())
        return CoeffFraction(num, c, num_factors)

    def __truediv__(self, other: Union["CoeffFraction", int]) -> "CoeffFraction":
        if isinstance(other, int):
            other = CoeffFraction.from_int(other)
        if not isinstance(other, CoeffFraction):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: int) -> "CoeffFraction":
        return CoeffFraction.from_int(other) * self.inv()

    def __pow__(self, k: int) -> "CoeffFraction":
        base = self if k >= 0 else self.inv()
        result = CoeffFraction.one()
        for _ in range(abs(k)):
            result = result * base
        return result

    def conj(self) -> "CoeffFraction":
        """Invert q, ts and tl."""
        factors = {m.inverse(): k for m, k in self.den_factors.items()}
        return CoeffFraction(self.num.conj(), self.den_scalar, factors, reduce=False)

    def map_monomials(self, f: Callable[[ParamMonomial], ParamMonomial]) -> "CoeffFraction":
        """Apply a monomial substitution to numerator and denominator."""
        factors: Dict[ParamMonomial, int] = {}
        for m, k in self.den_factors.items():
            m2 = f(m)
            if m2.is_one():
                raise DivisionByZero()
            factors[m2] = factors.get(m2, 0) + k
        return CoeffFraction(self.num.map_monomials(f), self.den_scalar, factors)

    def render(self, scale: ParameterScale = DEFAULT_SCALE) -> str:
        num = self.num.render(scale)
        if self.is_polynomial():
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = ""
        if self.den_scalar != 1:
            den = str(self.den_scalar)
        for m in sorted(self.den_factors):
            k = self.den_factors[m]
            den += f"({ParamPoly.binomial(m).render(scale)})"
            if k > 1:
                den += f"^{k}"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"CoeffFraction({self.render(RAW_SCALE)!r}, Q=q^(1/m*))"

    def to_json(self) -> Dict[str, Any]:
        return {
            "num": self.num.to_json(),
            "den": {
                "scalar": self.den_scalar,
                "factors": [
                    {"q": m.qe, "ts": m.ae, "tl": m.be, "mult": self.den_factors[m]}
                    for m in sorted(self.den_factors)
                ],
            },
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CoeffFraction":
        factors = {
            ParamMonomial(f["q"], f["ts"], f["tl"]): f["mult"]
            for f in data["den"]["factors"]
        }
        return cls(ParamPoly.from_json(data["num"]), data["den"]["scalar"], factors)


class Indeterminate(enum.Enum):
    """A variable that can be sent to zero or used as a polynomial generator.

    T and T_INV stand for ts and tl together, along the diagonal ts = tl.
    """

    Q = "q"
    Q_INV = "q^-1"
    TS = "ts"
    TS_INV = "ts^-1"
    TL = "tl"
    TL_INV = "tl^-1"
    T = "t"
    T_INV = "t^-1"

    @property
    def grading(self) -> Tuple[int, int, int]:
        return _GRADINGS[self]

    @property
    def is_joint(self) -> bool:
        return self in (Indeterminate.T, Indeterminate.T_INV)


_GRADINGS: Dict[Indeterminate, Tuple[int, int, int]] = {
    Indeterminate.Q: (1, 0, 0),
    Indeterminate.Q_INV: (-1, 0, 0),
    Indeterminate.TS: (0, 1, 0),
    Indeterminate.TS_INV: (0, -1, 0),
    Indeterminate.TL: (0, 0, 1),
    Indeterminate.TL_INV: (0, 0, -1),
    Indeterminate.T: (0, 1, 1),
    Indeterminate.T_INV: (0, -1, -1),
}


def collapse_t(x: CoeffFraction) -> CoeffFraction:
    """Substitute tl = ts."""
    try:
        return x.map_monomials(lambda m: ParamMonomial(m.qe, m.ae + m.be, 0))
    except DivisionByZero:
        raise PoleAtLimit(variable="t", value=x.render())


def limit_at_zero(x: CoeffFraction, var: Indeterminate) -> CoeffFraction:
    """The limit of x as var goes to zero, all other variables fixed.

    Raises PoleAtLimit if x has a pole there.
    """
    if var.is_joint:
        x = collapse_t(x)
        var = Indeterminate.TS if var == Indeterminate.T else Indeterminate.TS_INV
    if not x.num.terms:
        return x
    grading = var.grading
    num_degree = x.num.min_degree(grading)
    den_degree = 0
    den_unit = ONE
    flips = 0
    kept: Dict[ParamMonomial, int] = {}
    for m, k in x.den_factors.items():
        d = m.degree(grading)
        if d < 0:
            den_degree += d * k
            den_unit = den_unit.mul(m.power(k))
            flips += k
        elif d == 0:
            kept[m] = k
    if num_degree < den_degree:
        raise PoleAtLimit(variable=var.value, value=x.render())
    if num_degree > den_degree:
        return CoeffFraction.zero()
    lead = x.num.part_of_degree(grading, num_degree).shift(den_unit.inverse())
    if flips % 2:
        lead = -lead
    return CoeffFraction(lead, x.den_scalar, kept)


def is_polynomial_in(x: CoeffFraction, variables: Iterable[Indeterminate]) -> bool:
    """Whether x is a polynomial in the given variables.

    Coordinates not covered by any given variable are treated as coefficients
    and may appear freely, including in binomial denominators.
    """
    variables = set(variables)
    allowed_signs: List[set] = [set(), set(), set()]
    for var in variables:
        for i, g in enumerate(var.grading):
            if g:
                allowed_signs[i].add(1 if g > 0 else -1)
    x = x.reduce()
    if x.den_scalar != 1:
        return False
    for m in x.den_factors:
        for i, e in enumerate(m):
            if e and allowed_signs[i]:
                return False
    for m in x.num.terms:
        for i, e in enumerate(m):
            if not e or not allowed_signs[i]:
                continue
            if (1 if e > 0 else -1) not in allowed_signs[i]:
                return False
    return True


def _substitute(x: CoeffFraction, value: Callable[[ParamMonomial], Fraction]) -> CoeffFraction:
    scalar = Fraction(x.den_scalar)
    factors: Dict[ParamMonomial, int] = {}
    for m, k in x.den_factors.items():
        v = value(m)
        if m.qe == 0:
            if v == 1:
                raise PoleAtLimit(variable="t", value=x.render())
            scalar *= (1 - v) ** k
        elif v == 1:
            factors[ParamMonomial(m.qe, 0, 0)] = factors.get(ParamMonomial(m.qe, 0, 0), 0) + k
        else:
            raise UnsupportedDenominator(poly=ParamPoly.binomial(m).render())
    terms: Dict[ParamMonomial, Fraction] = {}
    for m, c in x.num.terms.items():
        k = ParamMonomial(m.qe, 0, 0)
        terms[k] = terms.get(k, Fraction(0)) + value(m) * c
    multiplier = scalar.denominator
    for c in terms.values():
        multiplier = _lcm(multiplier, c.denominator)
    num = ParamPoly({m: int(c * multiplier) for m, c in terms.items()})
    return CoeffFraction(num, int(scalar * multiplier), factors)


def substitute_t(x: CoeffFraction, t_half: Fraction) -> CoeffFraction:
    """Substitute ts^(1/2) = tl^(1/2) = t_half, a nonzero rational.

    Denominator binomials whose q part survives must become pure q binomials,
    which holds whenever t_half is 1 or -1.
    """
    t_half = Fraction(t_half)
    if not t_half:
        raise DivisionByZero()
    return _substitute(x, lambda m: t_half ** (m.ae + m.be))


def has_integral_t_powers(x: CoeffFraction) -> bool:
    """Whether every monomial of x carries an integer power of t = ts = tl."""
    monomials = list(x.num.terms) + list(x.den_factors)
    return all((m.ae + m.be) % 2 == 0 for m in monomials)


def substitute_t_value(x: CoeffFraction, t: Fraction) -> CoeffFraction:
    """Substitute ts = tl = t; x may only hold integer powers of t."""
    t = Fraction(t)
    if not t:
        raise DivisionByZero()
    if not has_integral_t_powers(x):
        raise InvalidJob(field="t", reason=f"half-integer powers of t occur in {x.render()}")
    return _substitute(x, lambda m: t ** ((m.ae + m.be) // 2))


@dataclass(frozen=True)
class TruncatedSeries:
    """A series in q^(-1/m*) known exactly for q-exponents above a cutoff.

    cutoff is None for an exact (finite) value; otherwise terms with
    qe <= cutoff are unknown and are never stored.
    """

    poly: ParamPoly
    cutoff: Optional[int] = None

    def __post_init__(self):
        if self.cutoff is not None and any(m.qe <= self.cutoff for m in self.poly.terms):
            object.__setattr__(
                self,
                "poly",
                ParamPoly({m: c for m, c in self.poly.terms.items() if m.qe > self.cutoff}),
            )

    @classmethod
    def exact(cls, poly: ParamPoly) -> "TruncatedSeries":
        return cls(poly, None)

    def _top(self) -> Optional[int]:
        if self.poly.terms:
            return self.poly.max_q()
        return self.cutoff

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cutoffs = [c for c in (self.cutoff, other.cutoff) if c is not None]
        return TruncatedSeries(self.poly + other.poly, max(cutoffs) if cutoffs else None)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.poly, self.cutoff)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        candidates = []
        if self.cutoff is not None:
            top = other._top()
            if top is not None:
                candidates.append(self.cutoff + top)
        if other.cutoff is not None:
            top = self._top()
            if top is not None:
                candidates.append(other.cutoff + top)
        cutoff = max(candidates) if candidates else None
        if cutoff is None:
            return TruncatedSeries(self.poly * other.poly, None)
        product: Dict[ParamMonomial, int] = {}
        for m1, c1 in self.poly.terms.items():
            for m2, c2 in other.poly.terms.items():
                if m1.qe + m2.qe <= cutoff:
                    continue
                m = m1.mul(m2)
                product[m] = product.get(m, 0) + c1 * c2
        return TruncatedSeries(ParamPoly(product), cutoff)

    def is_zero(self) -> bool:
        return not self.poly.terms

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a series 1 + u with u of negative q-degree."""
        if self.cutoff is None:
            raise ValueError("Inverse of an exact series needs a cutoff")
        one = ParamPoly.one()
        constant = self.poly.part_of_degree((1, 0, 0), 0)
        if constant != one or self.poly.max_q() > 0:
            raise ValueError("Only series of the form 1 + O(q^-1) can be inverted")
        u = TruncatedSeries(self.poly - one, self.cutoff)
        result = TruncatedSeries(one, self.cutoff)
        power = TruncatedSeries(one, self.cutoff)
        while True:
            # keep every power at the original cutoff so the loop ends
            power = TruncatedSeries((power * (-u)).poly, self.cutoff)
            if power.is_zero():
                break
            result = result + power
        return result

    def render(self, scale: ParameterScale = DEFAULT_SCALE) -> str:
        text = self.poly.render(scale)
        if self.cutoff is None:
            return text
        return f"{text} + O(q{_render_exponent(Fraction(self.cutoff, scale.m_star)) or '^1'})"


def expand_in_q_inverse(x: CoeffFraction, cutoff: int) -> TruncatedSeries:
    """Expand x as a series in q^(-1/m*), exact for q-exponents above cutoff.

    Every denominator binomial must involve q.
    """
    if x.den_scalar != 1:
        raise UnsupportedDenominator(poly=f"{x.den_scalar}")
    if not x.den_factors:
        return TruncatedSeries(x.num, cutoff)
    num_top = x.num.max_q() if x.num.terms else 0
    factor_cutoff = cutoff - max(0, num_top)
    result = TruncatedSeries.exact(x.num)
    for m, k in x.den_factors.items():
        if m.qe == 0:
            raise UnsupportedDenominator(poly=ParamPoly.binomial(m).render())
        # oriented monomials are lex-negative, so qe < 0 here
        terms: Dict[ParamMonomial, int] = {}
        power = ONE
        while power.qe > factor_cutoff:
            terms[power] = 1
            power = power.mul(m)
        geometric = TruncatedSeries(ParamPoly(terms), factor_cutoff)
        for _ in range(k):
            result = result * geometric
    final = cutoff if result.cutoff is None else max(cutoff, result.cutoff)
    return TruncatedSeries(result.poly, final)
