"""
Exact and numeric scalars for the SU_q(2) engine.

Exact scalars live in Q(i)(q). They are stored as a pair (re, im) of
elements of the rational function field Q(q) built with sympy's sparse
``field``; q is a real parameter, so conjugation only negates ``im``.
Numeric values are plain complex numbers tagged with the evaluation
point q0.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Sequence, Union

from sympy import QQ
from sympy.polys.fields import FracElement, field

from Qsu2.exceptions import BackendError, DimensionMismatchError, PoleError, UnpairedRootError

logger = logging.getLogger(__name__)

FIELD, Q = field("q", QQ)

Point = Union[float, int, Fraction, str]


def _to_field(value: Any) -> FracElement:
    if isinstance(value, FracElement):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return FIELD(value)
    if isinstance(value, Fraction):
        return FIELD(QQ(value.numerator, value.denominator))
    raise TypeError(f"cannot coerce {type(value).__name__} to an exact scalar")


def _qq_to_fraction(coeff: Any) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def as_point(q0: Point) -> Fraction:
    """Exact rational form of an evaluation point ("p/r", float or Fraction)."""
    if isinstance(q0, Fraction):
        return q0
    if isinstance(q0, str):
        return Fraction(q0.strip())
    return Fraction(q0)


def _poly_at(poly: Any, point: Fraction) -> Fraction:
    total = Fraction(0)
    for (exp,), coeff in poly.terms():
        total += _qq_to_fraction(coeff) * point ** exp
    return total


def _frac_at(value: FracElement, point: Fraction) -> Fraction:
    den = _poly_at(value.denom, point)
    if den == 0:
        raise PoleError(f"denominator {value.denom.as_expr()} vanishes at q = {point}")
    return _poly_at(value.numer, point) / den


class ExactScalar:
    """An element re + i*im of Q(i)(q); immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = _to_field(re)
        self.im = _to_field(im)

    # construction helpers

    @classmethod
    def lift(cls, value: Any) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return cls(value)

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero

    # arithmetic

    def __add__(self, other: Any) -> "ExactScalar":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.re, -self.im)

    def __sub__(self, other: Any) -> "ExactScalar":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Any) -> "ExactScalar":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "ExactScalar":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return ExactScalar(self.re * other.re, FIELD.zero)
        return ExactScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero scalar")
        if not self.im:
            return ExactScalar(1 / self.re, FIELD.zero)
        norm = self.re * self.re + self.im * self.im
        return ExactScalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other: Any) -> "ExactScalar":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "ExactScalar":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "ExactScalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    # comparison

    def __eq__(self, other: Any) -> bool:
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    # evaluation

    def evaluate(self, q0: Point) -> complex:
        """Numeric value at q = q0; raises PoleError if a denominator vanishes."""
        point = as_point(q0)
        re = _frac_at(self.re, point)
        im = _frac_at(self.im, point) if self.im else Fraction(0)
        return complex(float(re), float(im))

    def exact_at(self, q0: Point) -> tuple:
        """(re, im) as Fractions at a rational point."""
        point = as_point(q0)
        return _frac_at(self.re, point), _frac_at(self.im, point)

    def at(self, q0: Point) -> "NumericScalar":
        return NumericScalar(self.evaluate(q0), float(as_point(q0)))

    # serialization

    def to_json(self) -> Dict[str, List[List[Any]]]:
        den = self.re.denom.lcm(self.im.denom)
        re_num = self.re.numer * den.exquo(self.re.denom)
        im_num = self.im.numer * den.exquo(self.im.denom)
        lc = den.LC
        den, re_num, im_num = den.quo_ground(lc), re_num.quo_ground(lc), im_num.quo_ground(lc)

        num_terms: Dict[int, List[Fraction]] = {}
        for (exp,), coeff in re_num.terms():
            num_terms.setdefault(exp, [Fraction(0), Fraction(0)])[0] = _qq_to_fraction(coeff)
        for (exp,), coeff in im_num.terms():
            num_terms.setdefault(exp, [Fraction(0), Fraction(0)])[1] = _qq_to_fraction(coeff)
        return {
            "num": [[exp, str(re), str(im)] for exp, (re, im) in sorted(num_terms.items())],
            "den": [[exp, str(_qq_to_fraction(c)), "0"] for (exp,), c in sorted(den.terms())],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Sequence[Sequence[Any]]]) -> "ExactScalar":
        def build(terms, part):
            total = FIELD.zero
            for term in terms:
                coeff = Fraction(str(term[part]))
                if coeff:
                    total += _to_field(coeff) * Q ** int(term[0])
            return total

        den_re, den_im = build(payload["den"], 1), build(payload["den"], 2)
        if den_im:
            den = ExactScalar(den_re, den_im)
        else:
            den = ExactScalar(den_re)
        if den.is_zero:
            raise PoleError("serialized scalar has a zero denominator")
        return ExactScalar(build(payload["num"], 1), build(payload["num"], 2)) / den

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        re = str(self.re.as_expr())
        if not self.im:
            return re
        im = str(self.im.as_expr())
        if not self.re:
            return f"({im})*I"
        return f"{re} + ({im})*I"


def _lift_or_none(value: Any):
    if isinstance(value, ExactScalar):
        return value
    try:
        return ExactScalar(value)
    except TypeError:
        return None


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I_UNIT = ExactScalar(0, 1)
QS = ExactScalar(Q)


@lru_cache(maxsize=512)
def q_power(exponent: int) -> ExactScalar:
    return ExactScalar(Q ** exponent)


def q_half_power(twice_exponent: Fraction) -> ExactScalar:
    """q**(2x) for a half-integer x, given as 2x."""
    return q_power(int(twice_exponent))


@lru_cache(maxsize=256)
def qnum(x: int) -> ExactScalar:
    """The q-number [x]_q = (q^x - q^-x)/(q - q^-1)."""
    return (q_power(x) - q_power(-x)) / (QS - q_power(-1))


def evaluate(s: ExactScalar, q0: Point) -> complex:
    return s.evaluate(q0)


@dataclass(frozen=True)
class NumericScalar:
    value: complex
    q0: float

    def __post_init__(self):
        if not 0.0 < self.q0 < 1.0:
            raise BackendError(f"numeric evaluation point must lie in (0, 1), got {self.q0}")

    def to_json(self) -> Dict[str, float]:
        return {"re": self.value.real, "im": self.value.imag, "q": self.q0}


class RootScalar:
    """value * sqrt(radicand) with an exact, positive radicand.

    Radicands are only ever paired (equal or reciprocal) back into the
    exact field; anything else stays symbolic until evaluated.
    """

    __slots__ = ("value", "radicand")

    def __init__(self, value: Any = 0, radicand: Any = 1):
        self.value = ExactScalar.lift(value)
        self.radicand = ONE if self.value.is_zero else ExactScalar.lift(radicand)

    @property
    def is_exact(self) -> bool:
        return self.radicand == ONE

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def exact(self) -> ExactScalar:
        if not self.is_exact:
            raise UnpairedRootError(f"sqrt({self.radicand}) has no partner in this product")
        return self.value

    def __mul__(self, other: Any) -> "RootScalar":
        if isinstance(other, RootScalar):
            value = self.value * other.value
            if self.radicand == other.radicand:
                return RootScalar(value * self.radicand)
            product = self.radicand * other.radicand
            return RootScalar(value, product)
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return RootScalar(self.value * other, self.radicand)

    __rmul__ = __mul__

    def __add__(self, other: Any) -> "RootScalar":
        if not isinstance(other, RootScalar):
            other = RootScalar(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.radicand != other.radicand:
            raise UnpairedRootError("cannot add values carrying different square-root prefactors")
        return RootScalar(self.value + other.value, self.radicand)

    __radd__ = __add__

    def __neg__(self) -> "RootScalar":
        return RootScalar(-self.value, self.radicand)

    def __sub__(self, other: Any) -> "RootScalar":
        if not isinstance(other, RootScalar):
            other = RootScalar(other)
        return self + (-other)

    def conj(self) -> "RootScalar":
        return RootScalar(self.value.conj(), self.radicand)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RootScalar):
            other = _lift_or_none(other)
            if other is None:
                return NotImplemented
            other = RootScalar(other)
        return self.value == other.value and self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash((self.value, self.radicand))

    def evaluate(self, q0: Point) -> complex:
        value = self.value.evaluate(q0)
        if self.is_exact:
            return value
        return value * math.sqrt(self.radicand.evaluate(q0).real)

    def to_json(self) -> Dict[str, Any]:
        return {"value": self.value.to_json(), "radicand": self.radicand.to_json()}

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "RootScalar":
        return cls(ExactScalar.from_json(payload["value"]), ExactScalar.from_json(payload["radicand"]))

    def __repr__(self) -> str:
        if self.is_exact:
            return f"RootScalar({self.value})"
        return f"RootScalar({self.value} * sqrt({self.radicand}))"


# half-integer bookkeeping

def half(value: Union[str, int, float, Fraction]) -> Fraction:
    """Parse a level or weight index and check it is a half-integer."""
    result = as_point(value)
    if (2 * result).denominator != 1:
        raise DimensionMismatchError(f"{value} is not a half-integer")
    return result


def dim(level: Fraction) -> int:
    return int(2 * level) + 1


def weights(level: Fraction) -> List[Fraction]:
    """Weight indices j = -l, -l+1, ..., l (row order of every block)."""
    return [Fraction(k, 1) - level for k in range(dim(level))]


def levels(top: Fraction) -> List[Fraction]:
    """0, 1/2, 1, ..., top."""
    return [Fraction(k, 2) for k in range(int(2 * top) + 1)]


def fmt_half(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class QWeight:
    level: Fraction
    entries: tuple

    @classmethod
    def of(cls, level: Fraction) -> "QWeight":
        return cls(level, tuple(q_power(int(-2 * j)) for j in weights(level)))


def qweight(level: Fraction) -> QWeight:
    return QWeight.of(level)


def q_trace(matrix: Sequence[Sequence[Any]], level: Fraction) -> Any:
    """Tr(D_q A) with D_q = diag(q^{-2j}), j = -l..l in row order."""
    size = dim(level)
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise DimensionMismatchError(f"q_trace expects a {size}x{size} matrix at level {level}")
    total = ZERO
    for weight, k in zip(qweight(level).entries, range(size)):
        entry = matrix[k][k]
        if entry:
            total = total + entry * weight
    return total


def to_exact_matrix(rows: Iterable[Iterable[Any]]) -> List[List[ExactScalar]]:
    return [[ExactScalar.lift(x) for x in row] for row in rows]
