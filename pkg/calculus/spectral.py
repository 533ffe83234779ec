"""
Spectral properties of global pseudo-differential operators.

Operators are assembled on the coordinate space of the raw basis
M^l_ij, l <= L, and ranks are computed exactly with sympy's sparse
matrices, over Q(q) or over Q at a rational point. Complex matrices are
realified first.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices.sdm import SDM

from calculus import psido
from calculus.psido import PsDOp, as_operator
from calculus.symbols import Symbol, from_rule, identity_block, zero_block
from hopf import algebra
from hopf.algebra import A, ZERO_ELEM, AlgElem
from hopf.corep import corep
from hopf.scalars import FIELD, ExactScalar, Point, as_point, dim, half, levels, q_power, qnum
from Qsu2.exceptions import DimensionMismatchError, RowSumError, SymbolKindError, TailNotInvertibleError

logger = logging.getLogger(__name__)

BasisKey = Tuple[Fraction, Fraction, Fraction]


def basis_keys(top: Any, source: Optional[Iterable[Fraction]] = None) -> List[BasisKey]:
    chosen = levels(half(top)) if source is None else [half(level) for level in source]
    keys = []
    for level in chosen:
        for i in corep(level).weights:
            for j in corep(level).weights:
                keys.append((level, i, j))
    return keys


@dataclass
class TruncatedBlockOperator:
    """Raw-coordinate matrix of an operator on the span of M^l_ij, l <= max_level."""

    max_level: Fraction
    rows: List[BasisKey]
    columns: List[BasisKey]
    entries: Dict[int, Dict[int, ExactScalar]] = field(default_factory=dict)
    dropped: bool = False

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.columns)

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def numeric(self, q0: Point) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for row, values in self.entries.items():
            for col, value in values.items():
                out[row, col] = value.evaluate(q0)
        return out


def truncated_operator(
    op: Any,
    max_level: Any,
    source: Optional[Iterable[Fraction]] = None,
    target_level: Optional[Any] = None,
) -> TruncatedBlockOperator:
    """Columns are the coordinates of op(M^l_ij) for the source levels (default 0..max_level)."""
    operator = as_operator(op)
    top = half(max_level)
    target = top if target_level is None else half(target_level)
    rows = basis_keys(target)
    columns = basis_keys(top, source)
    row_index = {key: k for k, key in enumerate(rows)}
    matrix = TruncatedBlockOperator(top, rows, columns)
    for col, (level, i, j) in enumerate(columns):
        for key, value in operator.coordinates(level, i, j).items():
            if value.is_zero:
                continue
            if key not in row_index:
                matrix.dropped = True
                continue
            matrix.entries.setdefault(row_index[key], {})[col] = value
    if matrix.dropped:
        logger.warning("truncation at level %s dropped components of the image; ranks are of the clipped operator",
                       target)
    return matrix


def _to_domain(value: ExactScalar, at: Optional[Point]):
    if at is None:
        return value.re, value.im
    re, im = value.exact_at(at)
    return QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator)


def _rank(entries: Dict[int, Dict[int, ExactScalar]], shape: Tuple[int, int], at: Optional[Point] = None) -> int:
    domain = QQ if at is not None else FIELD.to_domain()
    real: Dict[int, Dict[int, Any]] = {}
    imag: Dict[int, Dict[int, Any]] = {}
    for row, values in entries.items():
        for col, value in values.items():
            re, im = _to_domain(value, at)
            if re:
                real.setdefault(row, {})[col] = re
            if im:
                imag.setdefault(row, {})[col] = im
    rows, cols = shape
    if not imag:
        return len(SDM(real, shape, domain).rref()[1])
    # [[A, -B], [B, A]] has twice the complex rank
    stacked: Dict[int, Dict[int, Any]] = {}
    for row, values in real.items():
        for col, value in values.items():
            stacked.setdefault(row, {})[col] = value
            stacked.setdefault(row + rows, {})[col + cols] = value
    for row, values in imag.items():
        for col, value in values.items():
            stacked.setdefault(row, {})[col + cols] = -value
            stacked.setdefault(row + rows, {})[col] = value
    return len(SDM(stacked, (2 * rows, 2 * cols), domain).rref()[1]) // 2


def exact_rank(operator: TruncatedBlockOperator, at: Optional[Point] = None) -> int:
    return _rank(operator.entries, operator.shape, at)


def block_rank(block: List[List[Any]], at: Optional[Point] = None) -> int:
    entries = {}
    for r, row in enumerate(block):
        for c, value in enumerate(row):
            if isinstance(value, AlgElem):
                if not value.is_scalar:
                    raise SymbolKindError("block_rank needs constant entries")
                value = value.scalar_value()
            if value:
                entries.setdefault(r, {})[c] = ExactScalar.lift(value)
    return _rank(entries, (len(block), len(block)), at)


def truncated_rank(symbol: Symbol, max_level: Any, at: Optional[Point] = None) -> Tuple[int, bool]:
    """Rank of the truncation, and whether the truncation clipped the image."""
    operator = truncated_operator(PsDOp(symbol), max_level)
    return exact_rank(operator, at), operator.dropped


def rank_of(symbol: Symbol, max_level: Any, at: Optional[Point] = None) -> int:
    return truncated_rank(symbol, max_level, at)[0]


# compactness

@dataclass
class CompactnessReport:
    lhs: float
    rhs: float
    unweighted_norm: float
    unweighted_norm_sq: float
    trials: int
    exact_trials: int = 0
    model_residual: float = 0.0

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-9) + 1e-15

    def to_json(self) -> Dict[str, Any]:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "unweighted_norm": self.unweighted_norm,
            "unweighted_norm_sq": self.unweighted_norm_sq,
            "trials": self.trials,
            "exact_trials": self.exact_trials,
            "model_residual": self.model_residual,
            "holds": self.holds,
        }


def rayleigh_quotient(symbol: Symbol, f: AlgElem, q0: Point) -> float:
    """||T_sigma f||^2 / ||f||^2 at q0, through psido.apply and the Haar norm."""
    den = algebra.norm_sq(f).evaluate(q0).real
    if not den:
        return 0.0
    return algebra.norm_sq(psido.apply(symbol, f)).evaluate(q0).real / den


def unitary_coordinates(raw: Dict[BasisKey, Any], q0: Point) -> Dict[Fraction, np.ndarray]:
    """Coordinates in t^l_ij of sum c_ij M^l_ij; M_ij = sqrt(rho_j/rho_i) t_ij."""
    out: Dict[Fraction, np.ndarray] = {}
    for (level, i, j), value in raw.items():
        matrix = corep(level)
        block = out.setdefault(level, np.zeros((matrix.size, matrix.size), dtype=complex))
        scale = math.sqrt((matrix.ratio(j) / matrix.ratio(i)).evaluate(q0).real)
        block[matrix.index(i), matrix.index(j)] += ExactScalar.lift(value).evaluate(q0) * scale
    return out


def _action(symbol: Symbol, level: Fraction, q0: Point) -> Tuple[np.ndarray, np.ndarray]:
    """T t_ij = sum_m action[m, j] t_im, and the Haar norms of t_ij by column j."""
    matrix = corep(level)
    point = float(as_point(q0))
    w = np.array([float(j) for j in matrix.weights])
    action = point ** (2 * (w[None, :] - w[:, None])) * symbol.unitary_block(level, q0)
    norms = point ** (2 * w) / qnum(matrix.size).evaluate(q0).real
    return action, norms


def model_quotient(symbol: Symbol, coords: Dict[Fraction, np.ndarray], q0: Point) -> float:
    """||T_sigma f||^2 / ||f||^2 from unitary coordinates, in numpy."""
    num = den = 0.0
    for level, x in coords.items():
        action, norms = _action(symbol, level, q0)
        y = x @ action.T
        den += float(np.sum(np.abs(x) ** 2 * norms[None, :]))
        num += float(np.sum(np.abs(y) ** 2 * norms[None, :]))
    return num / den if den else 0.0


def _random_raw(rng: np.random.Generator, window: List[Fraction], terms: int) -> Dict[BasisKey, int]:
    keys = basis_keys(max(window), source=window)
    raw: Dict[BasisKey, int] = {}
    for _ in range(terms):
        key = keys[int(rng.integers(len(keys)))]
        raw[key] = raw.get(key, 0) + int(rng.choice([-3, -2, -1, 1, 2, 3]))
    return raw


def compactness_gap(
    symbol: Symbol,
    n: Any,
    max_level: Any,
    q0: Point,
    trials: int = 50,
    seed: int = 0,
    exact_trials: int = 2,
) -> CompactnessReport:
    """max ||(sigma - g_n sigma) f||^2/||f||^2 over random f in levels (n, L]
    against sup ||W^1/2 sigma W^-1/2||_op^2.

    ``trials`` random f go through the numpy model; ``exact_trials`` sparse
    exact f go through psido.apply as well, and ``model_residual`` is the
    largest disagreement between the two quotients on them.
    """
    if not symbol.is_scalar:
        raise SymbolKindError("compactness_gap needs a scalar-valued symbol")
    n, top = half(n), half(max_level)
    point = float(as_point(q0))
    rng = np.random.default_rng(seed)
    window = [level for level in levels(top) if level > n]

    bounds, plain = [0.0], [0.0]
    for level in window:
        matrix = corep(level)
        sigma = symbol.unitary_block(level, q0)
        w = np.array([float(j) for j in matrix.weights])
        weighted = point ** (w[None, :] - w[:, None]) * sigma
        bounds.append(float(np.linalg.norm(weighted, 2)) ** 2)
        plain.append(float(np.linalg.norm(sigma, 2)))

    lhs = 0.0
    for _ in range(trials if window else 0):
        coords = {}
        for level in window:
            size = dim(level)
            coords[level] = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        lhs = max(lhs, model_quotient(symbol, coords, q0))

    # f lives in levels above n, so sigma and sigma - g_n sigma agree on it
    residual = 0.0
    for _ in range(exact_trials if window else 0):
        raw = _random_raw(rng, window, terms=3)
        f = ZERO_ELEM
        for (level, i, j), value in raw.items():
            f = f + corep(level).entry(i, j).scale(value)
        exact = rayleigh_quotient(symbol, f, q0)
        residual = max(residual, abs(exact - model_quotient(symbol, unitary_coordinates(raw, q0), q0)))
        lhs = max(lhs, exact)

    report = CompactnessReport(
        lhs, max(bounds), max(plain), max(plain) ** 2, trials,
        exact_trials=exact_trials if window else 0, model_residual=residual,
    )
    if residual > 1e-9 * max(1.0, report.rhs):
        logger.warning("numeric compactness model disagrees with apply by %.3g", residual)
    if not report.holds:
        logger.warning("compactness bound violated: %.6g > %.6g", report.lhs, report.rhs)
    return report


# eigenvalues from row sums

@dataclass
class RowSumReport:
    level: Fraction
    eigenvalue: ExactScalar
    residuals_zero: Dict[Fraction, bool]
    unweighted_residual: Optional[float] = None

    @property
    def multiplicity(self) -> int:
        return sum(1 for ok in self.residuals_zero.values() if ok)

    def to_json(self) -> Dict[str, Any]:
        return {
            "l": str(self.level),
            "eigenvalue": str(self.eigenvalue),
            "residual_zero": {str(i): ok for i, ok in self.residuals_zero.items()},
            "multiplicity": self.multiplicity,
            "unweighted_residual": self.unweighted_residual,
        }


def row_sum_eigenvector(level: Any, i: Any) -> AlgElem:
    """sum_j q^-2j rho_j^-1 M_ij."""
    matrix = corep(level)
    total = ZERO_ELEM
    for j in matrix.weights:
        total = total + matrix.entry(i, j).scale(q_power(int(-2 * j)) / matrix.ratio(j))
    return total


def row_sum_eigencheck(symbol: Symbol, level: Any, i: Optional[Any] = None, q0: Optional[Point] = None) -> RowSumReport:
    if not symbol.is_scalar:
        raise SymbolKindError("the row-sum eigenvalue test needs a scalar-valued symbol")
    level = half(level)
    matrix = corep(level)
    block = symbol.block(level)
    sums = []
    for row in block:
        total = ExactScalar(0)
        for value in row:
            total = total + value
        sums.append(total)
    if any(value != sums[0] for value in sums):
        raise RowSumError(f"row sums of the level-{level} block are not all equal")
    eigenvalue = sums[0]
    operator = PsDOp(symbol)
    rows = matrix.weights if i is None else [half(i)]
    residuals = {}
    for row in rows:
        vector = row_sum_eigenvector(level, row)
        residual = operator(vector) - vector.scale(eigenvalue)
        residuals[row] = residual.is_zero
    report = RowSumReport(level, eigenvalue, residuals)
    if q0 is not None:
        report.unweighted_residual = max(_unweighted_residual(operator, eigenvalue, level, row, q0) for row in rows)
    return report


def _unweighted_residual(operator: PsDOp, eigenvalue: ExactScalar, level: Fraction, i: Fraction, q0: Point) -> float:
    """|T(sum_j t_ij) - lambda sum_j t_ij| at q0."""
    matrix = corep(level)
    value = eigenvalue.evaluate(q0)
    image: Dict[Any, complex] = {}
    vector: Dict[Any, complex] = {}
    for j in matrix.weights:
        root = math.sqrt((matrix.ratio(i) / matrix.ratio(j)).evaluate(q0).real)
        for mono, coeff in operator.on_basis(level, i, j).evaluate(q0).items():
            image[mono] = image.get(mono, 0j) + root * coeff
        for mono, coeff in matrix.entry(i, j).evaluate(q0).items():
            vector[mono] = vector.get(mono, 0j) + root * coeff
    keys = set(image) | set(vector)
    return max((abs(image.get(k, 0j) - value * vector.get(k, 0j)) for k in keys), default=0.0)


# Fredholm index

@dataclass
class IndexReport:
    N: Fraction
    m: Fraction
    max_level: Fraction
    oracle: int
    oracle_next: int
    kernel_dim: int
    cokernel_dim: int
    restricted_index: int
    restricted_kernel_dim: int
    restricted_cokernel_dim: int
    sum_formula: int
    closed_form: Fraction
    dropped: bool = False

    @property
    def agree_sum(self) -> bool:
        return self.oracle == self.sum_formula

    @property
    def agree_closed(self) -> bool:
        return self.oracle == self.closed_form

    @property
    def reproducible(self) -> bool:
        return self.oracle == self.oracle_next

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": str(self.N),
            "m": str(self.m),
            "L": str(self.max_level),
            "oracle": self.oracle,
            "oracle_next": self.oracle_next,
            "reproducible": self.reproducible,
            "kernel_dim": self.kernel_dim,
            "cokernel_dim": self.cokernel_dim,
            "restricted_index": self.restricted_index,
            "restricted_kernel_dim": self.restricted_kernel_dim,
            "restricted_cokernel_dim": self.restricted_cokernel_dim,
            "sum_formula": self.sum_formula,
            "closed_form": str(self.closed_form),
            "agree_sum": self.agree_sum,
            "agree_closed": self.agree_closed,
            "dropped": self.dropped,
        }


def sum_formula(N: Any, m: Any) -> int:
    """sum_{l=N}^{N+m} (2l+1)^2 in half steps."""
    N, m = half(N), half(m)
    return sum(j * j for j in range(int(2 * N) + 1, int(2 * N + 2 * m) + 2))


def closed_form(N: Any, m: Any) -> Fraction:
    N, m = half(N), half(m)
    return Fraction(4, 3) * m * m * (m - 1) + 4 * N * (2 * N + N * m - 1)


def index_symbol(N: Any, m: Any, tail: Optional[Symbol] = None) -> Symbol:
    """a^(2m) I below level N, then the tail (identity by default)."""
    N, m = half(N), half(m)
    power = A ** int(2 * m)

    def rule(level):
        if level < N:
            block = zero_block("algebra", level)
            for k in range(dim(level)):
                block[k][k] = power
            return block
        if tail is None:
            return identity_block("algebra", level)
        return [[AlgElem.lift(value) for value in row] for row in tail.block(level)]

    return from_rule("algebra", rule, f"index({N}, {m})")


def _kernel_and_cokernel(operator: TruncatedBlockOperator, at: Optional[Point]) -> Tuple[int, int]:
    rank = exact_rank(operator, at)
    rows, cols = operator.shape
    return cols - rank, rows - rank


def fredholm_index(
    N: Any,
    m: Any,
    max_level: Optional[Any] = None,
    tail: Optional[Symbol] = None,
    at: Optional[Point] = None,
) -> IndexReport:
    N, m = half(N), half(m)
    top = N + m + 2 if max_level is None else half(max_level)
    if top < N + m + 1:
        raise DimensionMismatchError("the index truncation needs L >= N + m + 1")
    if tail is not None:
        for level in levels(top + Fraction(1, 2)):
            if level >= N and block_rank(tail.block(level), at) < dim(level):
                raise TailNotInvertibleError(f"tail block at level {level} is singular")
    operator = PsDOp(index_symbol(N, m, tail))

    square = truncated_operator(operator, top)
    square_next = truncated_operator(operator, top + Fraction(1, 2))
    kernel, cokernel = _kernel_and_cokernel(square, at)
    kernel_next, cokernel_next = _kernel_and_cokernel(square_next, at)

    low = [level for level in levels(top) if level < N]
    restricted = truncated_operator(operator, N - Fraction(1, 2) + m, source=low) if low else None
    if restricted is not None:
        restricted_kernel, restricted_cokernel = _kernel_and_cokernel(restricted, at)
    else:
        restricted_kernel = restricted_cokernel = 0
    report = IndexReport(
        N=N,
        m=m,
        max_level=top,
        oracle=kernel - cokernel,
        oracle_next=kernel_next - cokernel_next,
        kernel_dim=kernel,
        cokernel_dim=cokernel,
        restricted_index=restricted_kernel - restricted_cokernel,
        restricted_kernel_dim=restricted_kernel,
        restricted_cokernel_dim=restricted_cokernel,
        sum_formula=sum_formula(N, m),
        closed_form=closed_form(N, m),
        dropped=square.dropped or square_next.dropped or (restricted is not None and restricted.dropped),
    )
    if not (report.agree_sum and report.agree_closed):
        logger.warning(
            "index comparison for N=%s, m=%s: oracle %s, sum %s, closed form %s",
            N, m, report.oracle, report.sum_formula, report.closed_form,
        )
    return report
