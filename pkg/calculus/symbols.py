"""
Symbol blocks for operators acting levelwise on the Peter-Weyl decomposition of SU_q(2).

A symbol assigns to every level l a (2l+1)x(2l+1) matrix whose entries are
scalars or algebra elements. Blocks are stored in the raw frame
S(l) = D^(1/2) sigma(l) D^(-1/2), D = diag(rho), which keeps every
operation inside Q(i)(q); ``unitary_block`` gives sigma(l) numerically.

Blocks come from an explicit table, a generating rule l -> block, or a
support bound N beyond which every block vanishes.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from hopf.algebra import ONE_ELEM, ZERO_ELEM, AlgElem
from hopf.corep import corep
from hopf.scalars import ONE, QS, ZERO, ExactScalar, Point, dim, half, q_power
from Qsu2.exceptions import DimensionMismatchError, SymbolKindError

logger = logging.getLogger(__name__)

KINDS = ("scalar", "algebra")

Block = List[List[Any]]
Rule = Callable[[Fraction], Block]


def _lift_entry(kind: str, value: Any) -> Any:
    if kind == "scalar":
        if isinstance(value, AlgElem):
            if not value.is_scalar:
                raise SymbolKindError(f"scalar symbol entry {value} is not a multiple of 1")
            return value.scalar_value()
        return ExactScalar.lift(value)
    return AlgElem.lift(value)


def _check_block(kind: str, level: Fraction, block: Sequence[Sequence[Any]]) -> Block:
    size = dim(level)
    if len(block) != size or any(len(row) != size for row in block):
        raise DimensionMismatchError(f"symbol block at level {level} must be {size}x{size}")
    return [[_lift_entry(kind, value) for value in row] for row in block]


def zero_block(kind: str, level: Fraction) -> Block:
    size = dim(level)
    zero = ZERO if kind == "scalar" else ZERO_ELEM
    return [[zero] * size for _ in range(size)]


def identity_block(kind: str, level: Fraction) -> Block:
    size = dim(level)
    one = ONE if kind == "scalar" else ONE_ELEM
    block = zero_block(kind, level)
    for k in range(size):
        block[k][k] = one
    return block


@dataclass
class Symbol:
    kind: str
    blocks: Dict[Fraction, Block] = field(default_factory=dict)
    support_bound: Optional[Fraction] = None
    rule: Optional[Rule] = field(default=None, compare=False, repr=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SymbolKindError(f"unknown symbol kind {self.kind!r}")
        self.blocks = {half(level): _check_block(self.kind, half(level), block) for level, block in self.blocks.items()}
        if self.support_bound is not None:
            self.support_bound = half(self.support_bound)
        self._generated: Dict[Fraction, Block] = {}

    @property
    def is_scalar(self) -> bool:
        return self.kind == "scalar"

    def block(self, level: Any) -> Block:
        level = half(level)
        if self.support_bound is not None and level > self.support_bound:
            return zero_block(self.kind, level)
        if level in self.blocks:
            return self.blocks[level]
        if self.rule is not None:
            if level not in self._generated:
                self._generated[level] = _check_block(self.kind, level, self.rule(level))
            return self._generated[level]
        raise DimensionMismatchError(f"symbol {self.name or '<anonymous>'} has no block at level {level}")

    def entry(self, level: Any, m: Any, n: Any) -> Any:
        matrix = corep(level)
        return self.block(level)[matrix.index(m)][matrix.index(n)]

    def has_block(self, level: Any) -> bool:
        level = half(level)
        return (
            level in self.blocks
            or self.rule is not None
            or (self.support_bound is not None and level > self.support_bound)
        )

    def unitary_block(self, level: Any, q0: Point) -> np.ndarray:
        """sigma(l) in the orthonormal frame, evaluated at q0."""
        if not self.is_scalar:
            raise SymbolKindError("unitary_block needs a scalar-valued symbol")
        level = half(level)
        matrix = corep(level)
        roots = [math.sqrt(r.evaluate(q0).real) for r in matrix.ratios]
        block = self.block(level)
        size = matrix.size
        out = np.zeros((size, size), dtype=complex)
        for m in range(size):
            for j in range(size):
                if block[m][j]:
                    out[m, j] = block[m][j].evaluate(q0) * roots[j] / roots[m]
        return out

    def max_degree(self, top: Any) -> int:
        """Largest degree of an entry over the levels 0..top."""
        if self.is_scalar:
            return 0
        degree = 0
        for twice in range(int(2 * half(top)) + 1):
            for row in self.block(Fraction(twice, 2)):
                for entry in row:
                    degree = max(degree, entry.degree)
        return degree

    def materialize(self, top: Any) -> "Symbol":
        """Explicit blocks for every level up to top."""
        blocks = {Fraction(t, 2): self.block(Fraction(t, 2)) for t in range(int(2 * half(top)) + 1)}
        return Symbol(self.kind, blocks, self.support_bound, name=self.name)

    def to_json(self, top: Any) -> Dict[str, Any]:
        def encode(value):
            return value.to_json()

        return {
            "kind": self.kind,
            "blocks": [
                {"l": str(level), "entries": [[encode(v) for v in row] for row in self.block(level)]}
                for level in (Fraction(t, 2) for t in range(int(2 * half(top)) + 1))
            ],
            "support_bound": str(self.support_bound) if self.support_bound is not None else None,
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any], parse: Optional[Callable[[str], AlgElem]] = None) -> "Symbol":
        """Build a symbol from JSON; string entries are rationals or, with ``parse``, expressions."""
        kind = payload.get("kind", "scalar")
        if kind not in KINDS:
            raise SymbolKindError(f"unknown symbol kind {kind!r}")

        def decode(value):
            if isinstance(value, dict) and "terms" in value:
                return AlgElem.from_json(value)
            if isinstance(value, dict):
                return ExactScalar.from_json(value)
            if isinstance(value, int):
                return ExactScalar(value)
            if isinstance(value, str):
                try:
                    return ExactScalar(Fraction(value))
                except (ValueError, ZeroDivisionError):
                    if parse is None:
                        raise SymbolKindError(f"cannot read symbol entry {value!r}") from None
                    return parse(value)
            raise SymbolKindError(f"cannot read symbol entry {value!r}")

        blocks = {
            half(item["l"]): [[decode(v) for v in row] for row in item["entries"]]
            for item in payload.get("blocks", [])
        }
        bound = payload.get("support_bound")
        if bound is None and blocks:
            # explicit blocks with no rule: zero above the last given level
            bound = max(blocks)
        return cls(kind, blocks, half(bound) if bound is not None else None)


@dataclass(frozen=True)
class FourierOrder:
    value: Fraction
    homogeneous: bool
    psi: Dict[Fraction, Dict[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]] = field(compare=False)
    levels: Tuple[Fraction, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "value": str(self.value),
            "homogeneous": self.homogeneous,
            "levels": [str(level) for level in self.levels],
            "psi": [
                {"l": str(level), "map": [[str(i), str(j), str(a), str(b)] for (i, j), (a, b) in sorted(table.items())]}
                for level, table in sorted(self.psi.items())
            ],
        }


# constructors

def from_rule(kind: str, rule: Rule, name: str = "", support_bound: Optional[Any] = None) -> Symbol:
    return Symbol(kind, {}, support_bound, rule=rule, name=name)


def neutral(support_bound: Optional[Any] = None) -> Symbol:
    return from_rule("scalar", lambda level: identity_block("scalar", level), "neutral", support_bound)


def diagonal_symbol(values: Callable[[Fraction], ExactScalar], name: str = "diagonal") -> Symbol:
    """lambda(l) * I."""
    def rule(level):
        block = zero_block("scalar", level)
        value = ExactScalar.lift(values(level))
        for k in range(dim(level)):
            block[k][k] = value
        return block

    return from_rule("scalar", rule, name)


def _naive_eigenvalue(level: Fraction) -> ExactScalar:
    # [l]_q [l+1]_q with only integer powers of q
    e = int(2 * level) + 1
    q1 = q_power(1)
    q_inv = q_power(-1)
    return (q_power(e) + q_power(-e) - q1 - q_inv) / ((QS - q_inv) * (QS - q_inv))


def dirac_symbol(variant: str = "true") -> Symbol:
    """lambda(l) = 2l+1 ("true"), [l]_q [l+1]_q ("naive") or 1/(2l+1) ("inverse")."""
    if variant == "true":
        return diagonal_symbol(lambda level: ExactScalar(int(2 * level) + 1), "dirac")
    if variant == "inverse":
        return diagonal_symbol(lambda level: ExactScalar(Fraction(1, int(2 * level) + 1)), "inverse-dirac")
    if variant == "naive":
        return diagonal_symbol(_naive_eigenvalue, "dirac-naive")
    raise SymbolKindError(f"unknown Dirac variant {variant!r}")


def multiplication_symbol(g: AlgElem, name: str = "") -> Symbol:
    """g * I, the symbol of f -> g f."""
    g = AlgElem.lift(g)

    def rule(level):
        block = zero_block("algebra", level)
        for k in range(dim(level)):
            block[k][k] = g
        return block

    return from_rule("algebra", rule, name or f"mult({g})")


def truncated(symbol: Symbol, bound: Any) -> Symbol:
    """The same symbol with every block above ``bound`` set to zero."""
    bound = half(bound)
    if symbol.support_bound is not None:
        bound = min(bound, symbol.support_bound)
    return Symbol(symbol.kind, dict(symbol.blocks), bound, rule=symbol.rule, name=symbol.name)


def single_entry_symbol(level: Any, m: Any, n: Any, value: Any = 1) -> Symbol:
    level = half(level)
    matrix = corep(level)
    block = zero_block("scalar", level)
    block[matrix.index(m)][matrix.index(n)] = ExactScalar.lift(value)
    blocks = {Fraction(t, 2): zero_block("scalar", Fraction(t, 2)) for t in range(int(2 * level))}
    blocks[level] = block
    return Symbol("scalar", blocks, level, name="single-entry")
