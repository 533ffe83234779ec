"""
q-Fourier transform on O(SU_q(2)).

For f in the algebra the transform at level l is the matrix
f^(l)_mn = h(f t^l_nm*). Blocks are stored in raw form, F_mn = h(f M^l_nm*),
so that f^(l)_mn = sqrt(r * rho_n / rho_m) F_mn where r is the radicand
of the input (1 for a plain AlgElem). Inversion

    f = sum_l [2l+1]_q Tr(D_q f^(l) T^l),   D_q = diag(q^-2j), j = -l..l,

and Plancherel are then exact: the square roots pair up.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hopf import algebra
from hopf.algebra import AlgElem
from hopf.corep import PrefixedElem, corep, expand
from hopf.scalars import (
    ONE,
    ZERO,
    ExactScalar,
    Point,
    RootScalar,
    dim,
    half,
    qnum,
    qweight,
)
from Qsu2.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

Block = List[List[ExactScalar]]


@dataclass
class FourierCoeffs:
    blocks: Dict[Fraction, Block]
    max_level: Fraction
    radicand: ExactScalar = field(default=ONE)

    def block(self, level: Any) -> Block:
        level = half(level)
        if level in self.blocks:
            return self.blocks[level]
        size = dim(level)
        return [[ZERO] * size for _ in range(size)]

    def entry(self, level: Any, m: Any, n: Any) -> RootScalar:
        """f^(l)_mn including its square-root prefactor."""
        level = half(level)
        matrix = corep(level)
        value = self.block(level)[matrix.index(m)][matrix.index(n)]
        radicand = self.radicand * matrix.ratio(n) / matrix.ratio(m)
        return RootScalar(value, radicand)

    def numeric_block(self, level: Any, q0: Point) -> np.ndarray:
        level = half(level)
        weights_ = corep(level).weights
        return np.array(
            [[self.entry(level, m, n).evaluate(q0) for n in weights_] for m in weights_],
            dtype=complex,
        )

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for block in self.blocks.values() for row in block for v in row)

    def to_json(self) -> Dict[str, Any]:
        return {
            "max_level": str(self.max_level),
            "radicand": self.radicand.to_json(),
            "frame": "raw",
            "blocks": [
                {"l": str(level), "matrix": [[v.to_json() for v in row] for row in block]}
                for level, block in sorted(self.blocks.items())
            ],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "FourierCoeffs":
        blocks = {}
        for item in payload["blocks"]:
            level = half(item["l"])
            block = [[ExactScalar.from_json(v) for v in row] for row in item["matrix"]]
            if len(block) != dim(level) or any(len(row) != dim(level) for row in block):
                raise DimensionMismatchError(f"block at level {level} must be {dim(level)}x{dim(level)}")
            blocks[level] = block
        radicand = ExactScalar.from_json(payload["radicand"]) if "radicand" in payload else ONE
        top = half(payload.get("max_level", max(blocks, default=0)))
        return cls(blocks, top, radicand)


def _unwrap(f: Union[AlgElem, PrefixedElem]) -> Tuple[AlgElem, ExactScalar]:
    if isinstance(f, PrefixedElem):
        return f.element, f.radicand
    return f, ONE


def transform(f: Union[AlgElem, PrefixedElem], max_level: Optional[Any] = None) -> FourierCoeffs:
    element, radicand = _unwrap(f)
    top = half(max_level) if max_level is not None else Fraction(element.degree, 2)
    blocks: Dict[Fraction, Block] = {}
    for (level, i, j), coeff in expand(element, top).items():
        matrix = corep(level)
        block = blocks.setdefault(level, [[ZERO] * matrix.size for _ in range(matrix.size)])
        # F_mn = h(f M_nm*) is the (i, j) coordinate times the Gram value, stored transposed
        block[matrix.index(j)][matrix.index(i)] = coeff * matrix.gram_value(i, j)
    return FourierCoeffs(blocks, top, radicand)


def inverse(coeffs: FourierCoeffs) -> Union[AlgElem, PrefixedElem]:
    total = algebra.ZERO_ELEM
    for level, block in coeffs.blocks.items():
        matrix = corep(level)
        dimension = qnum(matrix.size)
        w = qweight(level).entries
        rho = matrix.ratios
        for m in range(matrix.size):
            for n in range(matrix.size):
                value = block[m][n]
                if value.is_zero:
                    continue
                factor = dimension * w[m] * rho[n] / rho[m] * value
                total = total + matrix.raw[n][m].scale(factor)
    if coeffs.radicand == ONE:
        return total
    return PrefixedElem(total, coeffs.radicand)


def _plancherel_sum(fc: FourierCoeffs, gc: FourierCoeffs) -> ExactScalar:
    total = ZERO
    for level in set(fc.blocks) & set(gc.blocks):
        matrix = corep(level)
        w = qweight(level).entries
        rho = matrix.ratios
        f_block, g_block = fc.blocks[level], gc.blocks[level]
        level_total = ZERO
        for m in range(matrix.size):
            for n in range(matrix.size):
                if f_block[m][n].is_zero or g_block[m][n].is_zero:
                    continue
                level_total = level_total + w[m] * rho[n] / rho[m] * f_block[m][n] * g_block[m][n].conj()
        total = total + qnum(matrix.size) * level_total
    return total


def plancherel_pair(f: AlgElem, g: AlgElem, max_level: Optional[Any] = None) -> Tuple[ExactScalar, ExactScalar]:
    """(h(f g*), sum_l [2l+1]_q Tr_q(f^(l) g^(l)*))."""
    top = max_level if max_level is not None else Fraction(max(f.degree, g.degree), 2)
    lhs = algebra.haar(algebra.multiply(f, algebra.star(g)))
    rhs = _plancherel_sum(transform(f, top), transform(g, top))
    return lhs, rhs


def prefixed_plancherel_pair(f: PrefixedElem, g: PrefixedElem, max_level: Optional[Any] = None) -> Tuple[RootScalar, RootScalar]:
    top = max_level if max_level is not None else Fraction(max(f.element.degree, g.element.degree), 2)
    lhs, rhs = plancherel_pair(f.element, g.element, top)
    prefix = RootScalar(ONE, f.radicand) * RootScalar(ONE, g.radicand)
    return prefix * lhs, prefix * rhs


def plancherel_residual(
    fs: Sequence[PrefixedElem],
    gs: Sequence[PrefixedElem],
    q0: Point,
    max_level: Optional[Any] = None,
) -> float:
    """|lhs - rhs| at q0 for f = sum fs, g = sum gs, expanded bilinearly."""
    lhs = rhs = 0j
    for f in fs:
        for g in gs:
            left, right = prefixed_plancherel_pair(f, g, max_level)
            lhs += left.evaluate(q0)
            rhs += right.evaluate(q0)
    return abs(lhs - rhs)


def nc_integral(f: AlgElem) -> ExactScalar:
    """Tr^0(f) = f^(0), which is h(f)."""
    return transform(f, 0).block(0)[0][0]


def kms_pair(f: AlgElem, g: AlgElem) -> Tuple[ExactScalar, ExactScalar]:
    """(h(fg), h(g theta(f))); the Haar state is a theta-twisted trace."""
    return (
        algebra.haar(algebra.multiply(f, g)),
        algebra.haar(algebra.multiply(g, algebra.modular_automorphism(f))),
    )


def block_trace(matrix: Sequence[Sequence[AlgElem]]) -> ExactScalar:
    """Tr^l(A) = sum_i h(A_ii) for an algebra-valued square matrix."""
    if any(len(row) != len(matrix) for row in matrix):
        raise DimensionMismatchError("block_trace expects a square matrix")
    total = ZERO
    for i, row in enumerate(matrix):
        total = total + algebra.haar(AlgElem.lift(row[i]))
    return total


def round_trip(f: AlgElem, max_level: Optional[Any] = None) -> bool:
    return inverse(transform(f, max_level)) == f


def levels_of(coeffs: FourierCoeffs) -> List[Fraction]:
    return sorted(level for level, block in coeffs.blocks.items() if any(v for row in block for v in row))


def zero_coeffs(max_level: Any) -> FourierCoeffs:
    top = half(max_level)
    return FourierCoeffs({}, top)
