"""
Irreducible corepresentations of SU_q(2) from the quantum-plane coaction.

The quantum plane is generated by x, y with xy = q yx and carries the
coaction R(x) = x(x)a + y(x)c, R(y) = x(x)(-q c*) + y(x)a*. On the
degree-2l component with basis e_j = x^(2l-k) y^k, j = k - l, it gives
the raw matrix M^l through R(e_j) = sum_i e_i (x) M^l_ij.

The unitary matrix coefficients are t^l_ij = sqrt(rho_i / rho_j) M^l_ij.
The ratios rho are exact; square roots only appear as the radicand of a
PrefixedElem and are consumed in pairs.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from hopf import algebra
from hopf.algebra import A, A_STAR, C, C_STAR, AlgElem, Monomial, TensorElem
from hopf.cache import default_cache
from hopf.scalars import (
    ONE,
    ZERO,
    ExactScalar,
    Point,
    RootScalar,
    dim,
    half,
    levels,
    q_power,
    qnum,
    weights,
)
from Qsu2.exceptions import InconsistentRatioError, UnpairedRootError

logger = logging.getLogger(__name__)


# quantum plane

class QPlanePoly:
    """Polynomial in x, y (xy = q yx), x-powers left.

    Coefficients are scalars or, for coaction values, algebra elements;
    they commute with x and y.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Any]] = None):
        self.terms = {key: value for key, value in (terms or {}).items() if value}

    @classmethod
    def x(cls) -> "QPlanePoly":
        return cls({(1, 0): ONE})

    @classmethod
    def y(cls) -> "QPlanePoly":
        return cls({(0, 1): ONE})

    @classmethod
    def monomial(cls, i: int, j: int, coeff: Any = ONE) -> "QPlanePoly":
        return cls({(i, j): coeff})

    def __add__(self, other: "QPlanePoly") -> "QPlanePoly":
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms[key] + value if key in terms else value
        return QPlanePoly(terms)

    def __mul__(self, other: "QPlanePoly") -> "QPlanePoly":
        terms: Dict[Tuple[int, int], Any] = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                # y^j1 x^i2 = q^(-j1*i2) x^i2 y^j1
                value = v1 * v2 * q_power(-j1 * i2)
                key = (i1 + i2, j1 + j2)
                terms[key] = terms[key] + value if key in terms else value
        return QPlanePoly(terms)

    def __pow__(self, exponent: int) -> "QPlanePoly":
        result = QPlanePoly({(0, 0): ONE})
        for _ in range(exponent):
            result = result * self
        return result

    def coefficient(self, i: int, j: int) -> Any:
        return self.terms.get((i, j), ZERO)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, QPlanePoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"QPlanePoly({self.terms!r})"


def coaction(poly: QPlanePoly) -> QPlanePoly:
    """R as an algebra map into QPlanePoly with AlgElem coefficients."""
    rx = QPlanePoly({(1, 0): A, (0, 1): C})
    ry = QPlanePoly({(1, 0): C_STAR.scale(-q_power(1)), (0, 1): A_STAR})
    result = QPlanePoly()
    for (i, j), coeff in poly.terms.items():
        image = (rx ** i) * (ry ** j)
        result = result + QPlanePoly({key: value * coeff for key, value in image.terms.items()})
    return result


# matrices

def bidegree(i: Fraction, j: Fraction) -> Tuple[int, int]:
    """Z^2-grading of M^l_ij, read off the generators a, c, c*, a*."""
    return int(-2 * j), int(-2 * i)


def monomial_bidegree(mono: Monomial) -> Tuple[int, int]:
    signed = -mono.k if mono.starred else mono.k
    return signed + mono.n - mono.m, signed - mono.n + mono.m


@dataclass(frozen=True)
class CorepMatrix:
    level: Fraction
    raw: Tuple[Tuple[AlgElem, ...], ...]
    gram: Optional[Tuple[Tuple[ExactScalar, ...], ...]] = None
    ratios: Optional[Tuple[ExactScalar, ...]] = None
    schur_exponent: Optional[int] = None
    residuals: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return dim(self.level)

    @property
    def weights(self) -> List[Fraction]:
        return weights(self.level)

    def index(self, weight: Any) -> int:
        return int(half(weight) + self.level)

    def entry(self, i: Any, j: Any) -> AlgElem:
        return self.raw[self.index(i)][self.index(j)]

    def ratio(self, i: Any) -> ExactScalar:
        if self.ratios is None:
            raise InconsistentRatioError(f"level {self.level} has not been unitarized")
        return self.ratios[self.index(i)]

    def gram_value(self, i: Any, j: Any) -> ExactScalar:
        if self.gram is None:
            raise InconsistentRatioError(f"level {self.level} has not been unitarized")
        return self.gram[self.index(i)][self.index(j)]

    def schur_constant(self, j: Any) -> ExactScalar:
        """[2l+1]^-1 q^(e*j) with the exponent e fixed by unitarize."""
        exponent = self.schur_exponent if self.schur_exponent is not None else 2
        return q_power(int(exponent * half(j))) / qnum(self.size)

    def t(self, i: Any, j: Any) -> "PrefixedElem":
        return PrefixedElem(self.entry(i, j), self.ratio(i) / self.ratio(j))

    def to_json(self) -> Dict[str, Any]:
        return {
            "l": str(self.level),
            "raw": [[entry.to_json() for entry in row] for row in self.raw],
            "gram": [[g.to_json() for g in row] for row in self.gram] if self.gram else None,
            "ratios": [r.to_json() for r in self.ratios] if self.ratios else None,
            "schur_exponent": self.schur_exponent,
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "CorepMatrix":
        return cls(
            level=half(payload["l"]),
            raw=tuple(tuple(AlgElem.from_json(entry) for entry in row) for row in payload["raw"]),
            gram=(
                tuple(tuple(ExactScalar.from_json(g) for g in row) for row in payload["gram"])
                if payload.get("gram") else None
            ),
            ratios=tuple(ExactScalar.from_json(r) for r in payload["ratios"]) if payload.get("ratios") else None,
            schur_exponent=payload.get("schur_exponent"),
        )


def coaction_matrix(level: Any) -> CorepMatrix:
    level = half(level)
    degree = int(2 * level)
    columns = []
    for k in range(degree + 1):
        image = coaction(QPlanePoly.monomial(degree - k, k))
        columns.append([algebra.AlgElem.lift(image.coefficient(degree - r, r)) for r in range(degree + 1)])
    raw = tuple(tuple(columns[col][row] for col in range(degree + 1)) for row in range(degree + 1))
    return CorepMatrix(level=level, raw=raw)


def check_corep_identity(matrix: CorepMatrix) -> bool:
    """Delta(M_ij) = sum_k M_ik (x) M_kj, exactly, for every entry."""
    size = matrix.size
    for i in range(size):
        for j in range(size):
            expected = TensorElem()
            for k in range(size):
                expected = expected + TensorElem.simple(matrix.raw[i][k], matrix.raw[k][j])
            if algebra.coproduct(matrix.raw[i][j]) != expected:
                return False
    return True


def check_counit(matrix: CorepMatrix) -> bool:
    size = matrix.size
    return all(
        algebra.counit(matrix.raw[i][j]) == (ONE if i == j else ZERO)
        for i in range(size)
        for j in range(size)
    )


def entry_signatures(matrix: CorepMatrix) -> List[List[set]]:
    """The (branch, k, n - m) signatures present in each raw entry."""
    return [
        [{(mono.starred, mono.k, mono.n - mono.m) for mono in entry.terms} for entry in row]
        for row in matrix.raw
    ]


def unitarize(matrix: CorepMatrix, q0: Optional[Point] = None) -> CorepMatrix:
    """Exact Gram data, the ratios rho and the Schur exponent; numeric residual at q0."""
    size = matrix.size
    gram = tuple(
        tuple(algebra.haar(algebra.multiply(entry, algebra.star(entry))) for entry in row)
        for row in matrix.raw
    )
    if any(g.is_zero for row in gram for g in row):
        raise InconsistentRatioError(f"level {matrix.level} has an entry of zero norm")
    ratios = tuple(gram[0][0] / gram[i][0] for i in range(size))
    exponent = None
    for candidate in (2, -2):
        if all(
            ratios[i] / ratios[j] * gram[i][j] == q_power(int(candidate * w)) / qnum(size)
            for i in range(size)
            for j, w in enumerate(weights(matrix.level))
        ):
            exponent = candidate
            break
    if exponent is None:
        raise InconsistentRatioError(f"Gram values at level {matrix.level} do not factor as rho_i/rho_j")
    logger.debug("level %s unitarized, Schur exponent %+d", matrix.level, exponent)
    result = replace(matrix, gram=gram, ratios=ratios, schur_exponent=exponent, residuals={})
    if q0 is not None:
        result.residuals.update(unitarity_residuals(result, q0))
    return result


def unitarity_defects(matrix: CorepMatrix) -> List[Tuple[str, int, int]]:
    """Exact two-sided unitarity in raw coordinates; returns failing (side, i, j)."""
    size = matrix.size
    rho = matrix.ratios
    stars = [[algebra.star(entry) for entry in row] for row in matrix.raw]
    defects = []
    for i in range(size):
        for j in range(size):
            left = algebra.ZERO_ELEM
            right = algebra.ZERO_ELEM
            for k in range(size):
                left = left + algebra.multiply(stars[k][i], matrix.raw[k][j]).scale(rho[k])
                right = right + algebra.multiply(matrix.raw[i][k], stars[j][k]).scale(rho[k].inverse())
            if left != AlgElem.scalar(rho[i] if i == j else ZERO):
                defects.append(("columns", i, j))
            if right != AlgElem.scalar(rho[i].inverse() if i == j else ZERO):
                defects.append(("rows", i, j))
    return defects


def unitarity_residuals(matrix: CorepMatrix, q0: Point) -> Dict[str, float]:
    """max |T*T - I| and |TT* - I| over monomial coefficients, in floating point at q0."""
    size = matrix.size
    roots = [math.sqrt(r.evaluate(q0).real) for r in matrix.ratios]
    stars = [[algebra.star(entry) for entry in row] for row in matrix.raw]
    worst = {"columns": 0.0, "rows": 0.0}
    for i in range(size):
        for j in range(size):
            sums: Dict[str, Dict[Monomial, complex]] = {"columns": {}, "rows": {}}
            for k in range(size):
                pairs = {
                    "columns": (algebra.multiply(stars[k][i], matrix.raw[k][j]),
                                roots[k] * roots[k] / (roots[i] * roots[j])),
                    "rows": (algebra.multiply(matrix.raw[i][k], stars[j][k]),
                             roots[i] * roots[j] / (roots[k] * roots[k])),
                }
                for side, (product, weight) in pairs.items():
                    for mono, value in product.evaluate(q0).items():
                        sums[side][mono] = sums[side].get(mono, 0j) + weight * value
            for side, totals in sums.items():
                if i == j:
                    totals[algebra.UNIT] = totals.get(algebra.UNIT, 0j) - 1.0
                worst[side] = max([worst[side]] + [abs(v) for v in totals.values()])
    return worst


def check_inverse_identity(matrix: CorepMatrix) -> bool:
    """sum_r M_rm S^-1(M_pr) = delta_pm."""
    size = matrix.size
    inverses = [[algebra.antipode(entry, inverse=True) for entry in row] for row in matrix.raw]
    for p in range(size):
        for m in range(size):
            total = algebra.ZERO_ELEM
            for r in range(size):
                total = total + algebra.multiply(matrix.raw[r][m], inverses[p][r])
            if total != (algebra.ONE_ELEM if p == m else algebra.ZERO_ELEM):
                return False
    return True


def _corep_table_name(level: Fraction) -> str:
    return f"corep_{int(2 * level)}"


@lru_cache(maxsize=None)
def _corep(twice_level: int) -> CorepMatrix:
    level = Fraction(twice_level, 2)
    cache = default_cache()
    name = _corep_table_name(level)
    if cache is not None:
        payload = cache.load(name)
        if payload is not None:
            matrix = CorepMatrix.from_json(payload)
            if matrix.level == level and matrix.ratios is not None and check_counit(matrix):
                return matrix
            cache.discard(name)
    logger.info("building corepresentation table for l = %s", level)
    matrix = unitarize(coaction_matrix(level))
    if cache is not None:
        cache.store(name, matrix.to_json())
    return matrix


def corep(level: Any) -> CorepMatrix:
    """The unitarized corepresentation of level l, built once per process."""
    return _corep(int(2 * half(level)))


# unitary basis elements

@dataclass(frozen=True)
class PrefixedElem:
    """sqrt(radicand) * element with an exact positive radicand."""

    element: AlgElem
    radicand: ExactScalar = ONE

    @property
    def is_exact(self) -> bool:
        return self.radicand == ONE

    def exact(self) -> AlgElem:
        if not self.is_exact:
            raise UnpairedRootError(f"sqrt({self.radicand}) has no partner")
        return self.element

    def scale(self, factor: Any) -> "PrefixedElem":
        return PrefixedElem(self.element.scale(factor), self.radicand)

    def __add__(self, other: "PrefixedElem") -> "PrefixedElem":
        if other.element.is_zero:
            return self
        if self.element.is_zero:
            return other
        if self.radicand != other.radicand:
            raise UnpairedRootError("cannot add elements carrying different square-root prefactors")
        return PrefixedElem(self.element + other.element, self.radicand)

    def __mul__(self, other: "PrefixedElem") -> "PrefixedElem":
        product = algebra.multiply(self.element, other.element)
        if self.radicand == other.radicand:
            return PrefixedElem(product.scale(self.radicand))
        return PrefixedElem(product, self.radicand * other.radicand)

    def star(self) -> "PrefixedElem":
        return PrefixedElem(algebra.star(self.element), self.radicand)

    def evaluate(self, q0: Point) -> Dict[Monomial, complex]:
        root = math.sqrt(self.radicand.evaluate(q0).real)
        return {mono: root * value for mono, value in self.element.evaluate(q0).items()}

    def to_json(self) -> Dict[str, Any]:
        return {"element": self.element.to_json(), "radicand": self.radicand.to_json()}

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.element)
        return f"sqrt({self.radicand})*({self.element})"


def prefixed_inner(y: PrefixedElem, x: PrefixedElem) -> RootScalar:
    """<y, x> = h(x y*) keeping the joint prefactor."""
    value = algebra.inner(y.element, x.element)
    return RootScalar(value) * RootScalar(ONE, y.radicand) * RootScalar(ONE, x.radicand)


def basis_element(level: Any, i: Any, j: Any) -> PrefixedElem:
    return corep(level).t(i, j)


class BasisEntry(NamedTuple):
    level: Fraction
    row: Fraction
    col: Fraction
    entry: PrefixedElem


def peter_weyl_basis(top: Any) -> List[BasisEntry]:
    """Every t^l_ij with l <= top, levels ascending, rows then columns."""
    out = []
    for level in levels(half(top)):
        matrix = corep(level)
        for i in matrix.weights:
            for j in matrix.weights:
                out.append(BasisEntry(level, i, j, matrix.t(i, j)))
    return out


# Peter-Weyl expansion

Coordinates = Dict[Tuple[Fraction, Fraction, Fraction], ExactScalar]


@lru_cache(maxsize=4096)
def _star_entry(twice_level: int, row: int, col: int) -> AlgElem:
    return algebra.star(_corep(twice_level).raw[row][col])


def _grouped_by_bidegree(f: AlgElem) -> Dict[Tuple[int, int], AlgElem]:
    groups: Dict[Tuple[int, int], Dict[Monomial, ExactScalar]] = {}
    for mono, coeff in f.terms.items():
        groups.setdefault(monomial_bidegree(mono), {})[mono] = coeff
    return {key: AlgElem(terms) for key, terms in groups.items()}


def raw_pairing(f: AlgElem, level: Fraction, i: Fraction, j: Fraction) -> ExactScalar:
    """h(f M^l_ij*)."""
    twice = int(2 * level)
    star_entry = _star_entry(twice, int(i + level), int(j + level))
    component = _grouped_by_bidegree(f).get(bidegree(i, j))
    if component is None:
        return ZERO
    return algebra.haar(algebra.multiply(component, star_entry))


def expand(f: AlgElem, max_level: Optional[Any] = None) -> Coordinates:
    """Raw Peter-Weyl coordinates: f = sum coeff(p, a, b) M^p_ab."""
    top = half(max_level) if max_level is not None else Fraction(f.degree, 2)
    out: Coordinates = {}
    for (g1, g2), component in _grouped_by_bidegree(f).items():
        j, i = Fraction(-g1, 2), Fraction(-g2, 2)
        level = max(abs(i), abs(j))
        while level <= top:
            matrix = corep(level)
            twice = int(2 * level)
            star_entry = _star_entry(twice, int(i + level), int(j + level))
            value = algebra.haar(algebra.multiply(component, star_entry))
            if not value.is_zero:
                out[(level, i, j)] = value / matrix.gram_value(i, j)
            level += 1
    return out


def synthesize(coords: Coordinates) -> AlgElem:
    total = algebra.ZERO_ELEM
    for (level, i, j), coeff in coords.items():
        total = total + corep(level).entry(i, j).scale(coeff)
    return total


def support_levels(f: AlgElem) -> List[Fraction]:
    return sorted({level for (level, _, _) in expand(f)})


# Clebsch-Gordan data

def clebsch_gordan_raw(m: Any, n: Any, r: Any, s: Any, i: Any, j: Any) -> Coordinates:
    """M^m_rs M^n_ij in raw coordinates."""
    m, n = half(m), half(n)
    product = algebra.multiply(corep(m).entry(r, s), corep(n).entry(i, j))
    return expand(product, m + n)


def clebsch_gordan(m: Any, n: Any, r: Any, s: Any, i: Any, j: Any) -> Dict[Tuple[Fraction, Fraction, Fraction], RootScalar]:
    """t^m_rs t^n_ij = sum C(p, a, b) t^p_ab."""
    left, right = corep(m), corep(n)
    prefactor = (left.ratio(r) / left.ratio(s)) * (right.ratio(i) / right.ratio(j))
    out = {}
    for (p, a, b), coeff in clebsch_gordan_raw(m, n, r, s, i, j).items():
        target = corep(p)
        radicand = prefactor * target.ratio(b) / target.ratio(a)
        out[(p, a, b)] = RootScalar(coeff, radicand) if radicand != ONE else RootScalar(coeff)
    return out


@dataclass
class CGTable:
    m: Fraction
    n: Fraction
    entries: Dict[Tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction, Fraction], ExactScalar]

    def coefficient(self, p: Any, r: Any, s: Any, i: Any, j: Any) -> ExactScalar:
        key = (self.m, self.n, half(p), half(r), half(s), half(i), half(j))
        return self.entries.get(key, ZERO)

    def reconstruct(self, r: Any, s: Any, i: Any, j: Any) -> AlgElem:
        r, s, i, j = half(r), half(s), half(i), half(j)
        total = algebra.ZERO_ELEM
        for (m, n, p, r2, s2, i2, j2), coeff in self.entries.items():
            if (r2, s2, i2, j2) == (r, s, i, j):
                total = total + corep(p).entry(r + i, s + j).scale(coeff)
        return total

    def to_json(self) -> Dict[str, Any]:
        return {
            "m": str(self.m),
            "n": str(self.n),
            "entries": [
                {"key": [str(part) for part in key], "coeff": coeff.to_json()}
                for key, coeff in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "CGTable":
        entries = {
            tuple(half(part) for part in item["key"]): ExactScalar.from_json(item["coeff"])
            for item in payload["entries"]
        }
        return cls(half(payload["m"]), half(payload["n"]), entries)


def _build_cg_table(m: Fraction, n: Fraction) -> CGTable:
    entries = {}
    for r in weights(m):
        for s in weights(m):
            for i in weights(n):
                for j in weights(n):
                    for (p, a, b), coeff in clebsch_gordan_raw(m, n, r, s, i, j).items():
                        if (a, b) != (r + i, s + j) or not abs(n - m) <= p <= n + m:
                            raise InconsistentRatioError(
                                f"product t^{m}_{r},{s} t^{n}_{i},{j} leaves its Clebsch-Gordan band at ({p}, {a}, {b})"
                            )
                        entries[(m, n, p, r, s, i, j)] = coeff
    return CGTable(m, n, entries)


def check_cg_table(table: CGTable) -> bool:
    """Band rule on every key, and one product recomputed from scratch."""
    m, n = table.m, table.n
    outer, inner = set(weights(m)), set(weights(n))
    for (km, kn, p, r, s, i, j) in table.entries:
        if (km, kn) != (m, n) or not abs(n - m) <= p <= n + m:
            return False
        if r not in outer or s not in outer or i not in inner or j not in inner:
            return False
    r, s, i, j = m, -m, -n, n
    expected = {(m, n, p, r, s, i, j): coeff for (p, _, _), coeff in clebsch_gordan_raw(m, n, r, s, i, j).items()}
    stored = {key: coeff for key, coeff in table.entries.items() if key[3:] == (r, s, i, j)}
    return stored == expected


@lru_cache(maxsize=None)
def _cg_table(twice_m: int, twice_n: int) -> CGTable:
    m, n = Fraction(twice_m, 2), Fraction(twice_n, 2)
    cache = default_cache()
    name = f"cg_{twice_m}_{twice_n}"
    if cache is not None:
        payload = cache.load(name)
        if payload is not None:
            try:
                table = CGTable.from_json(payload)
            except (KeyError, TypeError, ValueError):
                table = None
            if table is not None and (table.m, table.n) == (m, n) and check_cg_table(table):
                return table
            cache.discard(name)
    logger.info("building Clebsch-Gordan table for m = %s, n = %s", m, n)
    table = _build_cg_table(m, n)
    if cache is not None:
        cache.store(name, table.to_json())
    return table


def cg_table(m: Any, n: Any) -> CGTable:
    """Raw Clebsch-Gordan coefficients for every r, s, i, j."""
    return _cg_table(int(2 * half(m)), int(2 * half(n)))
