"""
Global pseudo-differential operators T_sigma = F^-1 o sigma o F on SU_q(2).

Two routes to T_sigma f are kept side by side:

* ``apply`` goes through the Fourier transform, multiplies every block on
  the left by the symbol and inverts with the q-weighted trace;
* ``PsDOp`` acts on the raw basis with the closed form

      T(M_rs) = sum_m q^(2(s-m)) (rho_s/rho_m) S_ms M_rm,

  the algebra entry S_ms standing on the left.

Symbols are recovered from any linear map through the antipode,
kappa_ps = sum_r T(M_rs) S^-1(M_pr), and S_ps = q^(2(p-s)) (rho_p/rho_s) kappa_ps.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from calculus.symbols import Block, FourierOrder, Symbol, from_rule, zero_block
from hopf import algebra, fourier
from hopf.algebra import ZERO_ELEM, AlgElem
from hopf.corep import Coordinates, PrefixedElem, cg_table, corep, expand, synthesize
from hopf.scalars import ONE, ZERO, ExactScalar, Point, as_point, dim, half, levels, q_power, qnum, qweight
from Qsu2.exceptions import SymbolKindError

logger = logging.getLogger(__name__)

Element = Union[AlgElem, PrefixedElem]


def _frame_factor(level: Fraction, m: Fraction, s: Fraction) -> ExactScalar:
    """q^(2(s-m)) rho_s/rho_m."""
    matrix = corep(level)
    return q_power(int(2 * (s - m))) * matrix.ratio(s) / matrix.ratio(m)


def _times(entry: Any, element: AlgElem) -> AlgElem:
    """entry * element with an algebra entry on the left."""
    if isinstance(entry, AlgElem):
        return algebra.multiply(entry, element)
    return element.scale(entry)


@lru_cache(maxsize=4096)
def _inverse_antipode_entry(twice_level: int, p: int, r: int) -> AlgElem:
    return algebra.antipode(corep(Fraction(twice_level, 2)).raw[p][r], inverse=True)


# operators known through their values on the raw basis

class BasisOperator:
    """A linear map on O(SU_q(2)) given by its images of the M^l_rs."""

    def __init__(self):
        self._table: Dict[Tuple[Fraction, Fraction, Fraction], AlgElem] = {}

    def compute(self, level: Fraction, r: Fraction, s: Fraction) -> AlgElem:
        raise NotImplementedError

    def on_basis(self, level: Any, r: Any, s: Any) -> AlgElem:
        key = (half(level), half(r), half(s))
        if key not in self._table:
            self._table[key] = self.compute(*key)
        return self._table[key]

    def coordinates(self, level: Any, r: Any, s: Any) -> Coordinates:
        return expand(self.on_basis(level, r, s))

    def __call__(self, f: Element) -> Element:
        element = f.element if isinstance(f, PrefixedElem) else AlgElem.lift(f)
        total = ZERO_ELEM
        for (level, r, s), coeff in expand(element).items():
            total = total + self.on_basis(level, r, s).scale(coeff)
        if isinstance(f, PrefixedElem):
            return PrefixedElem(total, f.radicand)
        return total


class FunctionOperator(BasisOperator):
    def __init__(self, function: Callable[[AlgElem], AlgElem]):
        super().__init__()
        self.function = function

    def compute(self, level, r, s):
        return AlgElem.lift(self.function(corep(level).entry(r, s)))


class ComposedOperator(BasisOperator):
    """outer o inner."""

    def __init__(self, outer: BasisOperator, inner: BasisOperator):
        super().__init__()
        self.outer = outer
        self.inner = inner

    def compute(self, level, r, s):
        return self.outer(self.inner.on_basis(level, r, s))


class PsDOp(BasisOperator):
    """T_sigma acting through the closed form; basis images are cached."""

    def __init__(self, symbol: Symbol):
        super().__init__()
        self.symbol = symbol

    def compute(self, level, r, s):
        matrix = corep(level)
        block = self.symbol.block(level)
        column = matrix.index(s)
        total = ZERO_ELEM
        for m in matrix.weights:
            entry = block[matrix.index(m)][column]
            if not entry:
                continue
            term = _times(entry, matrix.entry(r, m))
            total = total + term.scale(_frame_factor(level, m, s))
        return total

    def coordinates(self, level, r, s):
        level, r, s = half(level), half(r), half(s)
        block = self.symbol.block(level)
        if not self.symbol.is_scalar and not all(entry.is_scalar for row in block for entry in row):
            return super().coordinates(level, r, s)
        # constant entries keep the image inside level l
        matrix = corep(level)
        out: Coordinates = {}
        for m in matrix.weights:
            entry = block[matrix.index(m)][matrix.index(s)]
            if entry:
                value = entry if self.symbol.is_scalar else entry.scalar_value()
                out[(level, r, m)] = value * _frame_factor(level, m, s)
        return out


def as_operator(op: Union[BasisOperator, Symbol, Callable[[AlgElem], AlgElem]]) -> BasisOperator:
    if isinstance(op, BasisOperator):
        return op
    if isinstance(op, Symbol):
        return PsDOp(op)
    return FunctionOperator(op)


# application

def apply(symbol: Symbol, f: Element, max_level: Optional[Any] = None, trace: str = "weighted") -> Element:
    """T_sigma f = F^-1(sigma F(f)) with blockwise left multiplication.

    ``trace="plain"`` drops the q-weights from the inversion step; the
    neutral symbol then no longer acts as the identity.
    """
    if trace not in ("weighted", "plain"):
        raise SymbolKindError(f"unknown trace convention {trace!r}")
    coeffs = fourier.transform(f, max_level)
    total = ZERO_ELEM
    for level, block in coeffs.blocks.items():
        matrix = corep(level)
        sigma = symbol.block(level)
        size = matrix.size
        w = qweight(level).entries if trace == "weighted" else (ONE,) * size
        rho = matrix.ratios
        dimension = qnum(size)
        for m in range(size):
            for n in range(size):
                entry = ZERO_ELEM
                for k in range(size):
                    if block[k][n].is_zero or not sigma[m][k]:
                        continue
                    entry = entry + AlgElem.lift(sigma[m][k]).scale(block[k][n])
                if entry.is_zero:
                    continue
                factor = dimension * w[m] * rho[n] / rho[m]
                total = total + algebra.multiply(entry, matrix.raw[n][m]).scale(factor)
    if isinstance(f, PrefixedElem):
        return PrefixedElem(total, f.radicand)
    return total


def act(symbol: Symbol, f: Element) -> Element:
    return PsDOp(symbol)(f)


def raw_basis_action(symbol: Symbol, level: Any, r: Any, s: Any) -> AlgElem:
    return PsDOp(symbol).on_basis(level, r, s)


def basis_action(symbol: Symbol, level: Any, i: Any, j: Any) -> PrefixedElem:
    """T_sigma(t^l_ij) as sqrt(rho_i/rho_j) times an exact element."""
    matrix = corep(level)
    return PrefixedElem(raw_basis_action(symbol, level, i, j), matrix.ratio(i) / matrix.ratio(j))


# symbols from operators

def _collapse(blocks: Dict[Fraction, Block]) -> Tuple[str, Dict[Fraction, Block]]:
    if all(entry.is_scalar for block in blocks.values() for row in block for entry in row):
        return "scalar", {
            level: [[entry.scalar_value() for entry in row] for row in block]
            for level, block in blocks.items()
        }
    return "algebra", blocks


def symbol_of(op: Union[BasisOperator, Symbol, Callable[[AlgElem], AlgElem]], max_level: Any) -> Symbol:
    """The symbol of a linear map, blocks 0..max_level."""
    operator = as_operator(op)
    blocks: Dict[Fraction, Block] = {}
    for level in levels(half(max_level)):
        matrix = corep(level)
        twice = int(2 * level)
        size = matrix.size
        images = [[operator.on_basis(level, r, s) for s in matrix.weights] for r in matrix.weights]
        block = zero_block("algebra", level)
        for p in range(size):
            for s in range(size):
                kappa = ZERO_ELEM
                for r in range(size):
                    if images[r][s].is_zero:
                        continue
                    kappa = kappa + algebra.multiply(images[r][s], _inverse_antipode_entry(twice, p, r))
                if kappa.is_zero:
                    continue
                weight_p, weight_s = matrix.weights[p], matrix.weights[s]
                block[p][s] = kappa.scale(_frame_factor(level, weight_s, weight_p))
        blocks[level] = block
    kind, blocks = _collapse(blocks)
    return Symbol(kind, blocks, name="extracted")


def blocks_equal(left: Symbol, right: Symbol, max_level: Any) -> bool:
    for level in levels(half(max_level)):
        for row_a, row_b in zip(left.block(level), right.block(level)):
            for a, b in zip(row_a, row_b):
                if AlgElem.lift(a) != AlgElem.lift(b):
                    return False
    return True


# composition and adjoints

def compose_scalar(sigma_a: Symbol, sigma_b: Symbol) -> Symbol:
    """sigma_A(l) sigma_B(l), valid when sigma_B is scalar-valued."""
    if not sigma_b.is_scalar:
        raise SymbolKindError("blockwise composition needs a scalar-valued right factor")

    def rule(level):
        a, b = sigma_a.block(level), sigma_b.block(level)
        size = dim(level)
        product = zero_block(sigma_a.kind, level)
        for m in range(size):
            for s in range(size):
                total = product[m][s]
                for k in range(size):
                    if a[m][k] and b[k][s]:
                        total = total + a[m][k] * b[k][s]
                product[m][s] = total
        return product

    bounds = [x.support_bound for x in (sigma_a, sigma_b) if x.support_bound is not None]
    return from_rule(sigma_a.kind, rule, f"{sigma_a.name}*{sigma_b.name}", min(bounds) if bounds else None)


def compose(sigma: Symbol, beta: Symbol, max_level: Any) -> Symbol:
    """Symbol of T_sigma o T_beta through max_level, by extraction."""
    return symbol_of(ComposedOperator(PsDOp(sigma), PsDOp(beta)), max_level)


def scalar_adjoint(symbol: Symbol) -> Symbol:
    if not symbol.is_scalar:
        raise SymbolKindError("the closed-form adjoint needs a scalar-valued symbol")

    def rule(level):
        matrix = corep(level)
        block = symbol.block(level)
        weights_ = matrix.weights
        size = matrix.size
        out = zero_block("scalar", level)
        for j in range(size):
            for s in range(size):
                if block[s][j]:
                    out[j][s] = _frame_factor(level, weights_[s], weights_[j]) * block[s][j].conj()
        return out

    return from_rule("scalar", rule, f"adjoint({symbol.name})", symbol.support_bound)


class AdjointOperator(BasisOperator):
    """T* determined by h(T(f) g*) = h(f T*(g)*) on basis pairs."""

    def __init__(self, symbol: Symbol, reach: Fraction):
        super().__init__()
        self.operator = PsDOp(symbol)
        self.reach = reach

    def compute(self, level, r, s):
        target = corep(level).entry(r, s)
        total = ZERO_ELEM
        low = max(Fraction(0), level - self.reach)
        for other in levels(level + self.reach):
            if other < low:
                continue
            matrix = corep(other)
            for i in matrix.weights:
                for j in matrix.weights:
                    value = algebra.inner(self.operator.on_basis(other, i, j), target)
                    if value.is_zero:
                        continue
                    total = total + matrix.entry(i, j).scale(value / matrix.gram_value(i, j))
        return total


def adjoint_operator(symbol: Symbol, max_level: Any) -> AdjointOperator:
    top = half(max_level)
    reach = Fraction(symbol.max_degree(top), 2)
    reach = max(reach, Fraction(symbol.max_degree(top + reach), 2))
    return AdjointOperator(symbol, reach)


def adjoint(symbol: Symbol, max_level: Any, method: str = "auto") -> Symbol:
    """Symbol of (T_sigma)*; scalar symbols use the closed form unless ``method="pairing"``."""
    if symbol.is_scalar and method == "auto":
        return scalar_adjoint(symbol)
    return symbol_of(adjoint_operator(symbol, max_level), max_level)


# Fourier order

def fourier_order(symbol: Symbol, max_level: Any) -> FourierOrder:
    psi: Dict[Fraction, Dict[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]] = {}
    support = set()
    single = True
    for level in levels(half(max_level)):
        matrix = corep(level)
        block = symbol.block(level)
        for m, row in zip(matrix.weights, block):
            for n, entry in zip(matrix.weights, row):
                if not entry:
                    continue
                coords = expand(AlgElem.lift(entry))
                support.update(p for (p, _, _) in coords)
                if len(coords) == 1:
                    ((p, a, b),) = coords
                    psi.setdefault(level, {})[(m, n)] = (a, b)
                else:
                    single = False
    value = max(support, default=Fraction(0))
    homogeneous = single and len(support) <= 1
    return FourierOrder(value, homogeneous, psi, tuple(sorted(support)))


def principal_part(symbol: Symbol, order: Any) -> Symbol:
    """Every entry projected onto the level-``order`` Peter-Weyl block."""
    order = half(order)
    if symbol.is_scalar:
        if order == 0:
            return symbol
        return from_rule("scalar", lambda level: zero_block("scalar", level), "zero")

    def rule(level):
        block = zero_block("algebra", level)
        for m, row in enumerate(symbol.block(level)):
            for n, entry in enumerate(row):
                if not entry:
                    continue
                kept = {key: coeff for key, coeff in expand(entry).items() if key[0] == order}
                block[m][n] = synthesize(kept)
        return block

    return from_rule("algebra", rule, f"principal({symbol.name}, {order})", symbol.support_bound)


class CGRouteOperator(BasisOperator):
    """T_sigma o T_beta with the products M^p_uv M^l_rm read off Clebsch-Gordan tables."""

    def __init__(self, sigma: Symbol, beta: Symbol):
        super().__init__()
        self.sigma_op = PsDOp(sigma)
        self.beta = beta

    def compute(self, level, r, s):
        return _cg_image(self.sigma_op, self.beta, level, r, s)


def _cg_image(sigma_op: PsDOp, beta: Symbol, level: Fraction, r: Fraction, s: Fraction) -> AlgElem:
    matrix = corep(level)
    block = beta.block(level)
    total = ZERO_ELEM
    for m in matrix.weights:
        entry = block[matrix.index(m)][matrix.index(s)]
        if not entry:
            continue
        factor = _frame_factor(level, m, s)
        for (p, u, v), coeff in expand(AlgElem.lift(entry)).items():
            table = cg_table(p, level)
            target = abs(p - level)
            while target <= p + level:
                value = table.coefficient(target, u, v, r, m)
                if not value.is_zero:
                    image = sigma_op.on_basis(target, u + r, v + m)
                    total = total + image.scale(value * coeff * factor)
                target += 1
    return total


def principal_symbol_compose(sigma: Symbol, beta: Symbol, max_level: Any) -> Symbol:
    """Top-order part of the symbol of T_sigma o T_beta, sigma homogeneous."""
    top = half(max_level)
    order_sigma = fourier_order(sigma, top + Fraction(beta.max_degree(top), 2))
    if not order_sigma.homogeneous:
        raise SymbolKindError("principal_symbol_compose needs a homogeneous left symbol")
    order_beta = fourier_order(beta, top)
    gamma = symbol_of(CGRouteOperator(sigma, beta), top)
    return principal_part(gamma, order_sigma.value + order_beta.value).materialize(top)


def composition_report(sigma: Symbol, beta: Symbol, max_level: Any, q0: Point) -> Dict[str, Any]:
    """Clebsch-Gordan principal symbol against the principal part of the extracted composite."""
    top = half(max_level)
    order = fourier_order(sigma, top).value + fourier_order(beta, top).value
    routed = principal_symbol_compose(sigma, beta, top)
    oracle_op = FunctionOperator(lambda f: apply(sigma, apply(beta, f)))
    oracle = principal_part(symbol_of(oracle_op, top), order)
    residual = 0.0
    mismatches: List[Tuple[str, str, str]] = []
    for level in levels(top):
        matrix = corep(level)
        for p, (row_a, row_b) in enumerate(zip(routed.block(level), oracle.block(level))):
            for s, (a, b) in enumerate(zip(row_a, row_b)):
                difference = AlgElem.lift(a) - AlgElem.lift(b)
                if difference.is_zero:
                    continue
                mismatches.append((str(level), str(matrix.weights[p]), str(matrix.weights[s])))
                residual = max(residual, difference.max_abs(q0))
    if mismatches:
        logger.warning("principal symbol differs from the extracted composite at %d entries", len(mismatches))
    return {
        "order": str(order),
        "exact_match": not mismatches,
        "residual": residual,
        "mismatches": mismatches,
    }


def order_of_composition(sigma: Symbol, beta: Symbol, max_level: Any) -> Fraction:
    return fourier_order(compose(sigma, beta, max_level), max_level).value


def inverse_witness(sigma: Symbol, beta: Symbol, max_level: Any) -> Optional[Fraction]:
    """-order(beta) when T_beta is a two-sided inverse of T_sigma through max_level, else None."""
    left = ComposedOperator(PsDOp(beta), PsDOp(sigma))
    right = ComposedOperator(PsDOp(sigma), PsDOp(beta))
    for level in levels(half(max_level)):
        matrix = corep(level)
        for r in matrix.weights:
            for s in matrix.weights:
                target = matrix.entry(r, s)
                if left.on_basis(level, r, s) != target or right.on_basis(level, r, s) != target:
                    return None
    return -fourier_order(beta, max_level).value


# norms and the basis-action layout

def norm_corollary(symbol: Symbol, level: Any, j: Any) -> ExactScalar:
    """||T_sigma t^l_ij||^2 from the symbol alone; independent of i."""
    if not symbol.is_scalar:
        raise SymbolKindError("the norm formula needs a scalar-valued symbol")
    level, j = half(level), half(j)
    matrix = corep(level)
    column = matrix.index(j)
    block = symbol.block(level)
    total = ZERO
    for m in matrix.weights:
        entry = block[matrix.index(m)][column]
        if not entry:
            continue
        weight = q_power(int(4 * (j - m))) * matrix.ratio(j) / matrix.ratio(m)
        total = total + weight * entry * entry.conj() * q_power(int(2 * m))
    return total / qnum(matrix.size)


def norm_oracle(symbol: Symbol, level: Any, i: Any, j: Any) -> ExactScalar:
    matrix = corep(level)
    image = raw_basis_action(symbol, level, i, j)
    return matrix.ratio(i) / matrix.ratio(j) * algebra.norm_sq(image)


def printed_norm_corollary(symbol: Symbol, level: Any, j: Any, q0: Point) -> float:
    """The single-term version sigma_{-j,j}^2 [2l+1]^-1 q^-2j, numerically."""
    level, j = half(level), half(j)
    matrix = corep(level)
    unitary = symbol.unitary_block(level, q0)
    point = float(as_point(q0))
    value = abs(unitary[matrix.index(-j), matrix.index(j)]) ** 2
    return value / qnum(matrix.size).evaluate(q0).real * point ** (-2 * float(j))


def key_lemma_report(symbol: Symbol, level: Any, q0: Point) -> Dict[str, Any]:
    """Derived basis-action layout against the symbol block, in row order and row-reversed."""
    level = half(level)
    matrix = corep(level)
    size = matrix.size
    point = float(as_point(q0))
    unitary = symbol.unitary_block(level, q0)
    weights_ = [float(w) for w in matrix.weights]
    derived = np.array([
        [point ** (2 * (weights_[j] - weights_[m])) * unitary[m, j] for j in range(size)]
        for m in range(size)
    ])
    row_reversed = unitary[::-1, :]
    residual_row_reversed = float(np.max(np.abs(derived - row_reversed)))
    residual_unreversed = float(np.max(np.abs(derived - unitary)))

    agrees = True
    norms_agree = True
    printed_norm_residual = 0.0
    for i in matrix.weights:
        for j in matrix.weights:
            closed = basis_action(symbol, level, i, j)
            defined = apply(symbol, matrix.t(i, j), level)
            if closed.element != defined.element or closed.radicand != defined.radicand:
                agrees = False
            if norm_corollary(symbol, level, j) != norm_oracle(symbol, level, i, j):
                norms_agree = False
            exact = norm_corollary(symbol, level, j).evaluate(q0).real
            printed_norm_residual = max(printed_norm_residual, abs(exact - printed_norm_corollary(symbol, level, j, q0)))
    if min(residual_row_reversed, residual_unreversed) > 1e-12:
        logger.warning(
            "basis-action layout matches neither row order at level %s (%.3g reversed, %.3g unreversed)",
            level, residual_row_reversed, residual_unreversed,
        )
    return {
        "l": str(level),
        "closed_form_matches_definition": agrees,
        "row_reversed_layout_residual": residual_row_reversed,
        "unreversed_layout_residual": residual_unreversed,
        "norm_formula_exact": norms_agree,
        "printed_norm_residual": printed_norm_residual,
        "q": point,
    }
