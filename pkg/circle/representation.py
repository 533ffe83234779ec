"""
Woronowicz's infinite-dimensional representations of SU_q(2) realized as
periodic pseudo-differential operators on L^2(S^1).

The circle basis is reordered as e_0, e_1, e_2, ... with
e_2n = exp(-i n theta) and e_2n-1 = exp(i n theta), so that

    pi(c) e_N = q^N nu e_N,    pi(a) e_N = sqrt(1 - q^2N) e_N-1,    e_-1 = 0.

Symbols are rules n -> (amplitude, frequency shift): the theta-dependence
of a periodic symbol is a pure phase exp(i k theta), so it only moves the
output frequency. Truncations keep e_0..e_2K; a column whose image leaves
that range is a boundary column and is excluded from residuals.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hopf.algebra import AlgElem, Monomial
from hopf.scalars import ONE, ZERO, ExactScalar, NumericScalar, Point, as_point
from Qsu2.exceptions import ConfigurationError, DimensionMismatchError

logger = logging.getLogger(__name__)

Rule = Callable[[int], Tuple[complex, int]]

PHASES = ("corrected", "printed")


def frequency(index: int) -> int:
    """Circle frequency carried by e_index."""
    if index % 2 == 0:
        return -index // 2
    return (index + 1) // 2


def basis_index(freq: int) -> int:
    return -2 * freq if freq <= 0 else 2 * freq - 1


def _check_unit(value: complex, name: str) -> complex:
    value = complex(value)
    if abs(abs(value) - 1) > 1e-12:
        raise ConfigurationError(f"{name} must lie on the unit circle, got {value}")
    return value


def _check_q(q0: Point) -> float:
    point = float(as_point(q0))
    if not 0 < point < 1:
        raise ConfigurationError(f"the circle representation needs 0 < q < 1, got {q0}")
    return point


# symbols

@dataclass(frozen=True)
class PeriodicSymbol:
    """n -> (amplitude, shift); the symbol's value is amplitude * exp(i shift theta)."""

    rule: Rule = field(compare=False)
    nu: complex
    q0: float
    name: str = ""

    def __call__(self, n: int) -> Tuple[complex, int]:
        return self.rule(n)

    def value(self, n: int, theta: float) -> complex:
        amplitude, shift = self.rule(n)
        return amplitude * cmath.exp(1j * shift * theta)


def symbol_c(nu: complex, q0: Point) -> PeriodicSymbol:
    """q^-2n nu for n <= 0, q^(2n-1) nu for n > 0."""
    nu, q = _check_unit(nu, "nu"), _check_q(q0)

    def rule(n):
        exponent = -2 * n if n <= 0 else 2 * n - 1
        return q ** exponent * nu, 0

    return PeriodicSymbol(rule, nu, q, "c")


def symbol_a(nu: complex, q0: Point, phase: str = "corrected") -> PeriodicSymbol:
    """The a-symbol; its amplitude does not depend on nu.

    For n > 0 the ``printed`` phase is exp(-(2n+1) i theta); the
    ``corrected`` one, exp(-(2n-1) i theta), lowers every basis index by one.
    """
    if phase not in PHASES:
        raise ConfigurationError(f"unknown phase convention {phase!r}; choose one of {', '.join(PHASES)}")
    nu, q = _check_unit(nu, "nu"), _check_q(q0)

    def rule(n):
        if n > 0:
            shift = -(2 * n - 1) if phase == "corrected" else -(2 * n + 1)
            return math.sqrt(1 - q ** (2 * (2 * n - 1))), shift
        if n < 0:
            return math.sqrt(1 - q ** (-4 * n)), -2 * n
        return 0.0, 0

    return PeriodicSymbol(rule, nu, q, f"a[{phase}]")


def apply_periodic(
    symbol: PeriodicSymbol,
    coeffs: Dict[int, complex],
    cutoff: int,
) -> Tuple[Dict[int, complex], List[int]]:
    """T f for f = sum coeffs[n] exp(i n theta), |n| <= K.

    Returns the output coefficients and the input frequencies whose image
    left the cutoff.
    """
    if any(abs(n) > cutoff for n in coeffs):
        raise DimensionMismatchError(f"coefficients must be supported in |n| <= {cutoff}")
    out: Dict[int, complex] = {}
    lost = []
    for n, value in sorted(coeffs.items()):
        amplitude, shift = symbol(n)
        if amplitude == 0 or value == 0:
            continue
        target = n + shift
        if abs(target) > cutoff:
            lost.append(n)
            continue
        out[target] = out.get(target, 0j) + amplitude * value
    return out, lost


# truncated operators

@dataclass
class TruncatedOperator:
    """Matrix of an operator on e_0..e_2K; ``boundary`` lists columns that lost mass."""

    cutoff: int
    matrix: np.ndarray
    boundary: frozenset = frozenset()

    @property
    def size(self) -> int:
        return 2 * self.cutoff + 1

    @property
    def interior(self) -> range:
        return range(0, self.size - 2)

    def adjoint(self) -> "TruncatedOperator":
        # images of e_2K+1, e_2K+2, ... are missing from the last column
        return TruncatedOperator(self.cutoff, self.matrix.conj().T, self.boundary | {self.size - 1})

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return TruncatedOperator(self.cutoff, self.matrix @ other.matrix, self.boundary | other.boundary)

    def __add__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return TruncatedOperator(self.cutoff, self.matrix + other.matrix, self.boundary | other.boundary)

    def __sub__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return TruncatedOperator(self.cutoff, self.matrix - other.matrix, self.boundary | other.boundary)

    def scale(self, factor: complex) -> "TruncatedOperator":
        return TruncatedOperator(self.cutoff, factor * self.matrix, self.boundary)

    def apply(self, index: int) -> np.ndarray:
        return self.matrix[:, index]


def identity(cutoff: int) -> TruncatedOperator:
    return TruncatedOperator(cutoff, np.eye(2 * cutoff + 1, dtype=complex))


def truncate(symbol: PeriodicSymbol, cutoff: int) -> TruncatedOperator:
    if cutoff < 1:
        raise ConfigurationError("cutoff K must be at least 1")
    size = 2 * cutoff + 1
    matrix = np.zeros((size, size), dtype=complex)
    boundary = set()
    for column in range(size):
        n = frequency(column)
        amplitude, shift = symbol(n)
        if amplitude == 0:
            continue
        row = basis_index(n + shift)
        if row >= size:
            boundary.add(column)
            continue
        matrix[row, column] = amplitude
    return TruncatedOperator(cutoff, matrix, frozenset(boundary))


def interior_residual(operator: TruncatedOperator, expected: np.ndarray) -> float:
    """max over interior columns of the column-norm of the difference."""
    columns = list(operator.interior)
    difference = operator.matrix[:, columns] - expected[:, columns]
    if not columns:
        return 0.0
    return float(np.max(np.linalg.norm(difference, axis=0)))


def woronowicz_tables(q0: Point, nu: complex, cutoff: int) -> Dict[str, np.ndarray]:
    """Target matrices of pi(c), pi(a), pi(a*), pi(c*) on e_0..e_2K."""
    q, nu = _check_q(q0), _check_unit(nu, "nu")
    size = 2 * cutoff + 1
    c = np.diag([q ** n * nu for n in range(size)]).astype(complex)
    a = np.zeros((size, size), dtype=complex)
    a_star = np.zeros((size, size), dtype=complex)
    for n in range(1, size):
        a[n - 1, n] = math.sqrt(1 - q ** (2 * n))
    for n in range(size - 1):
        a_star[n + 1, n] = math.sqrt(1 - q ** (2 * n + 2))
    return {"c": c, "a": a, "a_star": a_star, "c_star": c.conj()}


@dataclass
class Represented:
    """pi_nu of the four generators, built from the circle symbols."""

    cutoff: int
    a: TruncatedOperator
    c: TruncatedOperator

    @property
    def a_star(self) -> TruncatedOperator:
        return self.a.adjoint()

    @property
    def c_star(self) -> TruncatedOperator:
        return self.c.adjoint()


def represent(q0: Point, nu: complex, cutoff: int, phase: str = "corrected") -> Represented:
    return Represented(cutoff, truncate(symbol_a(nu, q0, phase), cutoff), truncate(symbol_c(nu, q0), cutoff))


def _record(name: str, residual: float, q0: Point, cutoff: int) -> Dict[str, object]:
    return {
        "relation": name,
        "max_residual": residual,
        "K": cutoff,
        "q0": float(as_point(q0)),
        "interior_range": [0, 2 * cutoff - 2],
    }


def woronowicz_residuals(q0: Point, nu: complex, cutoff: int, phase: str = "corrected") -> List[Dict[str, object]]:
    if cutoff < 8:
        raise ConfigurationError("the Woronowicz table check needs K >= 8")
    pi = represent(q0, nu, cutoff, phase)
    targets = woronowicz_tables(q0, nu, cutoff)
    records = [
        _record(f"pi({name})", interior_residual(operator, targets[name]), q0, cutoff)
        for name, operator in (("c", pi.c), ("a", pi.a), ("a_star", pi.a_star), ("c_star", pi.c_star))
    ]
    worst = max(record["max_residual"] for record in records)
    if worst > 1e-12:
        logger.warning("%s phase misses the Woronowicz action by %.3g", phase, worst)
    return records


def relation_residuals(q0: Point, nu: complex, cutoff: int, phase: str = "corrected") -> List[Dict[str, object]]:
    """The seven defining relations on interior columns."""
    q = _check_q(q0)
    pi = represent(q0, nu, cutoff, phase)
    a, a_star, c, c_star = pi.a, pi.a_star, pi.c, pi.c_star
    one = identity(cutoff)
    relations = {
        "a c* = q c* a": (a @ c_star) - (c_star @ a).scale(q),
        "c a* = q a* c": (c @ a_star) - (a_star @ c).scale(q),
        "c* a* = q a* c*": (c_star @ a_star) - (a_star @ c_star).scale(q),
        "c* c = c c*": (c_star @ c) - (c @ c_star),
        "a a* + q^2 c* c = 1": (a @ a_star) + (c_star @ c).scale(q * q) - one,
        "a* a + c* c = 1": (a_star @ a) + (c_star @ c) - one,
        "a c = q c a": (a @ c) - (c @ a).scale(q),
    }
    zero = np.zeros((one.size, one.size), dtype=complex)
    return [_record(name, interior_residual(op, zero), q0, cutoff) for name, op in relations.items()]


# the 2x2 matrices X_z

@dataclass
class SUMatrix:
    """X_z = [[pi_z(a), -q pi_z(c*)], [pi_z(c), pi_z(a*)]]."""

    z: complex
    blocks: List[List[TruncatedOperator]]

    def __matmul__(self, other: "SUMatrix") -> List[List[TruncatedOperator]]:
        return [
            [self.blocks[i][0] @ other.blocks[0][j] + self.blocks[i][1] @ other.blocks[1][j] for j in range(2)]
            for i in range(2)
        ]


def su_matrix(z: complex, q0: Point, cutoff: int) -> SUMatrix:
    q = _check_q(q0)
    pi = represent(q0, _check_unit(z, "z"), cutoff)
    return SUMatrix(complex(z), [[pi.a, pi.c_star.scale(-q)], [pi.c, pi.a_star]])


def _stated_entries(z: complex, z_prime: complex, q0: Point, cutoff: int) -> Tuple[np.ndarray, np.ndarray]:
    """X11 and X21 of the product as stated, column by column."""
    q = _check_q(q0)
    size = 2 * cutoff + 1
    pi = represent(q0, z * z_prime, cutoff)
    x11 = np.zeros((size, size), dtype=complex)
    x21 = np.zeros((size, size), dtype=complex)
    for n in range(size - 1):
        vector_11 = np.zeros(size, dtype=complex)
        vector_21 = np.zeros(size, dtype=complex)
        if n >= 1:
            vector_11[n - 1] = math.sqrt(1 - q ** (2 * n))
            vector_21[n - 1] = math.sqrt(1 - q ** (2 * n)) * z_prime.conjugate()
        vector_11[n + 1] = -z.conjugate() * z_prime * q ** (2 * n + 1) / math.sqrt(1 - q ** (2 * n + 2))
        vector_21[n + 1] = math.sqrt(1 - q ** (2 * n + 2)) * z.conjugate() / q
        x11[:, n] = pi.a.matrix @ vector_11
        x21[:, n] = pi.c.matrix @ vector_21
    return x11, x21


def su_matrix_product(z: complex, z_prime: complex, q0: Point, cutoff: int) -> Dict[str, object]:
    """Direct block product X_z X_z' against [[X11, -X21*], [X21, X11*]] built from the stated entries."""
    z, z_prime = _check_unit(z, "z"), _check_unit(z_prime, "z'")
    direct = su_matrix(z, q0, cutoff) @ su_matrix(z_prime, q0, cutoff)
    x11, x21 = _stated_entries(z, z_prime, q0, cutoff)
    stated = [[x11, -x21.conj().T], [x21, x11.conj().T]]
    residuals = {}
    for i in range(2):
        for j in range(2):
            residuals[f"X{i + 1}{j + 1}"] = interior_residual(direct[i][j], stated[i][j])
    mismatched = sorted(name for name, value in residuals.items() if value > 1e-10)
    if mismatched:
        logger.warning("X_z X_z' differs from the stated block form at %s", ", ".join(mismatched))
    return {
        "z": [z.real, z.imag],
        "z_prime": [z_prime.real, z_prime.imag],
        "q0": float(as_point(q0)),
        "K": cutoff,
        "residuals": residuals,
        "agrees": not mismatched,
    }


# the regular representation and the characters

@dataclass
class NumericElem:
    """An algebra element with complex coefficients, evaluated at q0."""

    terms: Dict[Monomial, complex]
    q0: float

    @classmethod
    def of(cls, f, q0: Point) -> "NumericElem":
        if isinstance(f, NumericElem):
            return f
        return cls({mono: coeff.evaluate(q0) for mono, coeff in f.terms.items()}, float(as_point(q0)))

    def distance(self, other: "NumericElem") -> float:
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0j) - other.terms.get(k, 0j)) for k in keys), default=0.0)


def _unit(v) -> Union[ExactScalar, complex]:
    """An exact unit when v is one, else a unimodular complex number."""
    if isinstance(v, ExactScalar):
        if v * v.conj() != ONE:
            raise ConfigurationError(f"{v} is not a unit scalar")
        return v
    if isinstance(v, NumericScalar):
        v = v.value
    value = complex(v)
    exact = ExactScalar(Fraction(value.real).limit_denominator(10 ** 9), Fraction(value.imag).limit_denominator(10 ** 9))
    if exact * exact.conj() == ONE and abs(exact.evaluate(1) - value) < 1e-15:
        return exact
    if abs(abs(value) - 1) >= 1e-12:
        raise ConfigurationError(f"{v} is not a unit scalar")
    return value


def _numeric_point(f, q0) -> Point:
    if isinstance(f, NumericElem):
        return f.q0
    if q0 is None:
        raise ConfigurationError("a numeric unit needs an evaluation point q0")
    return q0


def regular_rep(v, f, q0: Optional[Point] = None):
    """phi_v: c -> v c, c* -> conj(v) c*, a and a* fixed.

    Exact units act on AlgElem exactly; any other unimodular number gives
    a NumericElem at q0.
    """
    v = _unit(v)
    if isinstance(v, ExactScalar) and isinstance(f, AlgElem):
        v_bar = v.conj()
        return AlgElem({mono: coeff * v ** mono.n * v_bar ** mono.m for mono, coeff in f.terms.items()})
    if isinstance(v, ExactScalar):
        v = v.evaluate(1)
    f = NumericElem.of(f, _numeric_point(f, q0))
    v_bar = v.conjugate()
    return NumericElem({mono: coeff * v ** mono.n * v_bar ** mono.m for mono, coeff in f.terms.items()}, f.q0)


def one_dimensional_rep(u, f, q0: Optional[Point] = None):
    """The character a -> u, c -> 0; complex for a numeric unit."""
    u = _unit(u)
    if isinstance(u, ExactScalar) and isinstance(f, AlgElem):
        total = ZERO
        for mono, coeff in f.terms.items():
            if mono.n or mono.m:
                continue
            total = total + coeff * (u.conj() if mono.starred else u) ** mono.k
        return total
    if isinstance(u, ExactScalar):
        u = u.evaluate(1)
    f = NumericElem.of(f, _numeric_point(f, q0))
    return sum(
        (coeff * (u.conjugate() if mono.starred else u) ** mono.k
         for mono, coeff in f.terms.items() if not (mono.n or mono.m)),
        0j,
    )


def transcendence_demo(coeffs: Sequence, q0: Point, u: complex = 1, cutoff: int = 8) -> Dict[str, object]:
    """P(pi_u(c)) for P = sum coeffs[k] x^k; at u = 1 a rational root q0 of P kills e_1."""
    point = as_point(q0)
    exact = sum((Fraction(r) * point ** k for k, r in enumerate(coeffs)), Fraction(0))
    pi_c = represent(q0, u, cutoff).c
    operator = np.zeros((pi_c.size, pi_c.size), dtype=complex)
    power = np.eye(pi_c.size, dtype=complex)
    for r in coeffs:
        operator = operator + float(Fraction(r)) * power
        power = power @ pi_c.matrix
    diagonal = np.abs(np.diag(operator))
    singular = [int(n) for n in np.flatnonzero(diagonal < 1e-12)]
    return {
        "coeffs": [str(Fraction(r)) for r in coeffs],
        "q0": str(point),
        "P_at_q": str(exact),
        "e1_residual": float(diagonal[1]),
        "singular_indices": singular,
        "invertible": not singular,
    }
