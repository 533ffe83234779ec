"""
The polynomial Hopf *-algebra O(SU_q(2)).

Elements are sparse combinations of normal-form monomials
``a^k c^n c*^m`` or ``a*^k c^n c*^m``. Products are normal-ordered with
the oriented rewrite system

    c a   -> q^-1 a c        c* a  -> q^-1 a c*
    c a*  -> q a* c          c* a* -> q a* c*
    c* c  -> c c*            a a*  -> 1 - q^2 c* c
    a* a  -> 1 - c* c

either literally (``reduce_word``) or through its closed form
(``multiply``); both agree.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from hopf.scalars import ONE, ZERO, ExactScalar, Point, q_power

logger = logging.getLogger(__name__)


class Monomial(NamedTuple):
    k: int
    n: int
    m: int
    starred: bool = False

    @property
    def degree(self) -> int:
        return self.k + self.n + self.m

    @property
    def branch(self) -> str:
        return "ASTAR" if self.starred else "A"

    def text(self) -> str:
        parts = []
        if self.k:
            base = "a'" if self.starred else "a"
            parts.append(base if self.k == 1 else f"{base}^{self.k}")
        if self.n:
            parts.append("c" if self.n == 1 else f"c^{self.n}")
        if self.m:
            parts.append("c'" if self.m == 1 else f"c'^{self.m}")
        return "*".join(parts) or "1"


def monomial(k: int = 0, n: int = 0, m: int = 0, starred: bool = False) -> Monomial:
    """Canonical monomial; k = 0 collapses both branches to A."""
    if min(k, n, m) < 0:
        raise ValueError("monomial exponents are nonnegative")
    return Monomial(k, n, m, bool(starred and k))


UNIT = Monomial(0, 0, 0, False)


def _accumulate(target: Dict[Any, ExactScalar], key: Any, coeff: ExactScalar) -> None:
    total = target.get(key)
    total = coeff if total is None else total + coeff
    if total.is_zero:
        target.pop(key, None)
    else:
        target[key] = total


class AlgElem:
    """Finite combination of normal-form monomials; treat as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Any]] = None):
        self.terms: Dict[Monomial, ExactScalar] = {}
        for mono, coeff in (terms or {}).items():
            coeff = ExactScalar.lift(coeff)
            if not coeff.is_zero:
                self.terms[mono] = coeff

    @classmethod
    def _raw(cls, terms: Dict[Monomial, ExactScalar]) -> "AlgElem":
        elem = cls.__new__(cls)
        elem.terms = terms
        return elem

    @classmethod
    def scalar(cls, value: Any) -> "AlgElem":
        return cls({UNIT: value})

    @classmethod
    def of(cls, mono: Monomial, coeff: Any = 1) -> "AlgElem":
        return cls({mono: coeff})

    @classmethod
    def lift(cls, value: Any) -> "AlgElem":
        if isinstance(value, AlgElem):
            return value
        return cls.scalar(value)

    # structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_scalar(self) -> bool:
        return all(mono == UNIT for mono in self.terms)

    def scalar_value(self) -> ExactScalar:
        if not self.is_scalar:
            raise ValueError(f"{self} is not a scalar multiple of 1")
        return self.terms.get(UNIT, ZERO)

    @property
    def degree(self) -> int:
        return max((mono.degree for mono in self.terms), default=0)

    def coefficient(self, mono: Monomial) -> ExactScalar:
        return self.terms.get(mono, ZERO)

    # arithmetic

    def __add__(self, other: Any) -> "AlgElem":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            _accumulate(terms, mono, coeff)
        return AlgElem._raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "AlgElem":
        return AlgElem._raw({mono: -coeff for mono, coeff in self.terms.items()})

    def __sub__(self, other: Any) -> "AlgElem":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "AlgElem":
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, factor: Any) -> "AlgElem":
        factor = ExactScalar.lift(factor)
        if factor.is_zero:
            return ZERO_ELEM
        return AlgElem._raw({mono: coeff * factor for mono, coeff in self.terms.items()})

    def __mul__(self, other: Any) -> "AlgElem":
        if isinstance(other, AlgElem):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: Any) -> "AlgElem":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, exponent: int) -> "AlgElem":
        result = ONE_ELEM
        for _ in range(exponent):
            result = multiply(result, self)
        return result

    def __eq__(self, other: Any) -> bool:
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # the *-structure as methods, for chaining

    def star(self) -> "AlgElem":
        return star(self)

    # numerics and output

    def evaluate(self, q0: Point) -> Dict[Monomial, complex]:
        return {mono: coeff.evaluate(q0) for mono, coeff in self.terms.items()}

    def max_abs(self, q0: Point) -> float:
        return max((abs(v) for v in self.evaluate(q0).values()), default=0.0)

    def sorted_terms(self) -> List[Tuple[Monomial, ExactScalar]]:
        return sorted(self.terms.items(), key=lambda item: (item[0].degree, item[0].starred, item[0][:3]))

    def to_json(self) -> Dict[str, Any]:
        return {
            "text": str(self),
            "terms": [
                {"branch": mono.branch, "k": mono.k, "n": mono.n, "m": mono.m, "coeff": coeff.to_json()}
                for mono, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "AlgElem":
        terms: Dict[Monomial, ExactScalar] = {}
        for term in payload["terms"]:
            mono = monomial(term["k"], term["n"], term["m"], term["branch"] == "ASTAR")
            _accumulate(terms, mono, ExactScalar.from_json(term["coeff"]))
        return cls._raw(terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            if mono == UNIT:
                pieces.append(f"({coeff})")
            elif coeff == ONE:
                pieces.append(mono.text())
            elif coeff == -ONE:
                pieces.append(f"-{mono.text()}")
            else:
                pieces.append(f"({coeff})*{mono.text()}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"AlgElem({self})"


def _lift_or_none(value: Any) -> Optional[AlgElem]:
    if isinstance(value, AlgElem):
        return value
    try:
        return AlgElem.scalar(value)
    except TypeError:
        return None


ZERO_ELEM = AlgElem()
ONE_ELEM = AlgElem.of(UNIT)
A = AlgElem.of(monomial(1))
A_STAR = AlgElem.of(monomial(1, starred=True))
C = AlgElem.of(monomial(0, 1, 0))
C_STAR = AlgElem.of(monomial(0, 0, 1))

GENERATORS = {"a": A, "a*": A_STAR, "c": C, "c*": C_STAR}


# multiplication

@lru_cache(maxsize=None)
def _a_then_astar(k: int, kp: int) -> Tuple[Tuple[Tuple[bool, int, int], ExactScalar], ...]:
    """a^k a*^kp as terms ((starred, power, x-power), coeff) with x = c c*."""
    if k == 0:
        return (((kp > 0, kp, 0), ONE),)
    if kp == 0:
        return (((False, k, 0), ONE),)
    # a^k a*^kp = a^{k-1}(1 - q^2 x)a*^{kp-1}, and x a* = q^2 a* x
    terms: Dict[Tuple[bool, int, int], ExactScalar] = {}
    factor = -q_power(2 * kp)
    for (starred, power, x), coeff in _a_then_astar(k - 1, kp - 1):
        _accumulate(terms, (starred, power, x), coeff)
        _accumulate(terms, (starred, power, x + 1), coeff * factor)
    return tuple(terms.items())


@lru_cache(maxsize=None)
def _astar_then_a(k: int, kp: int) -> Tuple[Tuple[Tuple[bool, int, int], ExactScalar], ...]:
    """a*^k a^kp, same encoding as _a_then_astar."""
    if k == 0:
        return (((False, kp, 0), ONE),)
    if kp == 0:
        return (((True, k, 0), ONE),)
    # a*^k a^kp = a*^{k-1}(1 - x)a^{kp-1}, and x a = q^-2 a x
    terms: Dict[Tuple[bool, int, int], ExactScalar] = {}
    factor = -q_power(-2 * (kp - 1))
    for (starred, power, x), coeff in _astar_then_a(k - 1, kp - 1):
        _accumulate(terms, (starred, power, x), coeff)
        _accumulate(terms, (starred, power, x + 1), coeff * factor)
    return tuple(terms.items())


@lru_cache(maxsize=1 << 16)
def monomial_product(left: Monomial, right: Monomial) -> Tuple[Tuple[Monomial, ExactScalar], ...]:
    """Normal form of left*right."""
    # move c^n c*^m of the left factor past the a-part of the right factor
    shift = right.k * (left.n + left.m)
    base = q_power(shift if right.starred else -shift)
    if left.k == 0 or right.k == 0 or left.starred == right.starred:
        starred = left.starred if left.k else right.starred
        parts: Iterable = (((starred, left.k + right.k, 0), ONE),)
    elif not left.starred:
        parts = _a_then_astar(left.k, right.k)
    else:
        parts = _astar_then_a(left.k, right.k)
    out: Dict[Monomial, ExactScalar] = {}
    for (starred, power, x), coeff in parts:
        mono = monomial(power, left.n + right.n + x, left.m + right.m + x, starred)
        _accumulate(out, mono, coeff * base)
    return tuple(out.items())


def multiply(f: AlgElem, g: AlgElem) -> AlgElem:
    if not f.terms or not g.terms:
        return ZERO_ELEM
    terms: Dict[Monomial, ExactScalar] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            coeff = c1 * c2
            for mono, c in monomial_product(m1, m2):
                _accumulate(terms, mono, coeff * c)
    return AlgElem._raw(terms)


REWRITE_RULES: Dict[Tuple[str, str], Tuple[Tuple[ExactScalar, Tuple[str, ...]], ...]] = {
    ("c", "a"): ((q_power(-1), ("a", "c")),),
    ("c*", "a"): ((q_power(-1), ("a", "c*")),),
    ("c", "a*"): ((q_power(1), ("a*", "c")),),
    ("c*", "a*"): ((q_power(1), ("a*", "c*")),),
    ("c*", "c"): ((ONE, ("c", "c*")),),
    ("a", "a*"): ((ONE, ()), (-q_power(2), ("c*", "c"))),
    ("a*", "a"): ((ONE, ()), (-ONE, ("c*", "c"))),
}


def reduce_word(word: Sequence[str], coeff: Any = 1) -> AlgElem:
    """Normal-order a word in a, a*, c, c* by leftmost rewriting."""
    pending: Dict[Tuple[str, ...], ExactScalar] = {tuple(word): ExactScalar.lift(coeff)}
    done: Dict[Monomial, ExactScalar] = {}
    while pending:
        current, value = pending.popitem()
        for pos in range(len(current) - 1):
            rule = REWRITE_RULES.get((current[pos], current[pos + 1]))
            if rule is not None:
                for factor, replacement in rule:
                    rewritten = current[:pos] + replacement + current[pos + 2:]
                    _accumulate(pending, rewritten, value * factor)
                break
        else:
            k = sum(1 for g in current if g in ("a", "a*"))
            mono = monomial(k, current.count("c"), current.count("c*"), "a*" in current)
            _accumulate(done, mono, value)
    return AlgElem._raw(done)


# *-structure and Hopf maps on monomials

def _reorder_factor(k: int, n_plus_m: int, starred: bool) -> ExactScalar:
    """c^n c*^m A^k = factor * A^k c^n c*^m, A = a* if starred else a."""
    shift = k * n_plus_m
    return q_power(shift if starred else -shift)


def _map_monomials(f: AlgElem, image) -> AlgElem:
    terms: Dict[Monomial, ExactScalar] = {}
    for mono, coeff in f.terms.items():
        new_mono, factor = image(mono)
        _accumulate(terms, new_mono, factor * coeff)
    return AlgElem._raw(terms)


def _star_monomial(mono: Monomial) -> Tuple[Monomial, ExactScalar]:
    # (A^k c^n c*^m)* = c^m c*^n A'^k
    starred = not mono.starred
    return monomial(mono.k, mono.m, mono.n, starred), _reorder_factor(mono.k, mono.n + mono.m, starred)


def star(f: AlgElem) -> AlgElem:
    """Conjugate-linear anti-homomorphism with a <-> a*, c <-> c*."""
    terms: Dict[Monomial, ExactScalar] = {}
    for mono, coeff in f.terms.items():
        new_mono, factor = _star_monomial(mono)
        _accumulate(terms, new_mono, factor * coeff.conj())
    return AlgElem._raw(terms)


def counit(f: AlgElem) -> ExactScalar:
    total = ZERO
    for mono, coeff in f.terms.items():
        if mono.n == 0 and mono.m == 0:
            total = total + coeff
    return total


def _antipode_monomial(mono: Monomial, inverse: bool) -> Tuple[Monomial, ExactScalar]:
    # S(c) = -q c, S(c*) = -q^-1 c*; S^-1 swaps the two q-powers
    starred = not mono.starred
    sign = -ONE if (mono.n + mono.m) % 2 else ONE
    power = (mono.m - mono.n) if inverse else (mono.n - mono.m)
    factor = sign * q_power(power) * _reorder_factor(mono.k, mono.n + mono.m, starred)
    return monomial(mono.k, mono.n, mono.m, starred), factor


def antipode(f: AlgElem, inverse: bool = False) -> AlgElem:
    """Anti-homomorphism S with S(a) = a*, S(a*) = a, S(c) = -q c, S(c*) = -q^-1 c*."""
    return _map_monomials(f, lambda mono: _antipode_monomial(mono, inverse))


def modular_automorphism(f: AlgElem, power: int = 1) -> AlgElem:
    """theta^power, theta(a) = q^-2 a, theta(a*) = q^2 a*, c and c* fixed."""
    def image(mono: Monomial):
        exponent = 2 * mono.k * power
        return mono, q_power(exponent if mono.starred else -exponent)

    return _map_monomials(f, image)


@lru_cache(maxsize=None)
def haar_basis_value(n: int) -> ExactScalar:
    """h((c c*)^n) = (1 - q^2)/(1 - q^(2n+2))."""
    return (ONE - q_power(2)) / (ONE - q_power(2 * n + 2))


def haar(f: AlgElem) -> ExactScalar:
    total = ZERO
    for mono, coeff in f.terms.items():
        if mono.k == 0 and mono.n == mono.m:
            total = total + coeff * haar_basis_value(mono.n)
    return total


def inner(y: AlgElem, x: AlgElem) -> ExactScalar:
    """<y, x> = h(x y*)."""
    return haar(multiply(x, star(y)))


def norm_sq(f: AlgElem) -> ExactScalar:
    return inner(f, f)


def degree(f: AlgElem) -> int:
    return f.degree


# tensor square

class TensorElem:
    """Finite combination of (Monomial, Monomial) pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[Monomial, Monomial], Any]] = None):
        self.terms: Dict[Tuple[Monomial, Monomial], ExactScalar] = {}
        for key, coeff in (terms or {}).items():
            coeff = ExactScalar.lift(coeff)
            if not coeff.is_zero:
                self.terms[key] = coeff

    @classmethod
    def simple(cls, left: AlgElem, right: AlgElem) -> "TensorElem":
        terms: Dict[Tuple[Monomial, Monomial], ExactScalar] = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                _accumulate(terms, (m1, m2), c1 * c2)
        return cls(terms)

    def __add__(self, other: "TensorElem") -> "TensorElem":
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            _accumulate(terms, key, coeff)
        return TensorElem(terms)

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return self + other.scale(-ONE)

    def scale(self, factor: Any) -> "TensorElem":
        factor = ExactScalar.lift(factor)
        return TensorElem({key: coeff * factor for key, coeff in self.terms.items()})

    def __mul__(self, other: "TensorElem") -> "TensorElem":
        terms: Dict[Tuple[Monomial, Monomial], ExactScalar] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                coeff = c1 * c2
                rights = monomial_product(r1, r2)
                for lm, lc in monomial_product(l1, l2):
                    for rm, rc in rights:
                        _accumulate(terms, (lm, rm), coeff * lc * rc)
        return TensorElem(terms)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{l.text()}(x){r.text()}" for (l, r), c in self.terms.items())
        return f"TensorElem({body or '0'})"

    # slice maps

    def apply_right(self, functional) -> AlgElem:
        """(id (x) phi) for a scalar functional phi on AlgElem."""
        terms: Dict[Monomial, ExactScalar] = {}
        for (left, right), coeff in self.terms.items():
            value = functional(AlgElem.of(right))
            if not value.is_zero:
                _accumulate(terms, left, coeff * value)
        return AlgElem._raw(terms)

    def apply_left(self, functional) -> AlgElem:
        """(phi (x) id)."""
        terms: Dict[Monomial, ExactScalar] = {}
        for (left, right), coeff in self.terms.items():
            value = functional(AlgElem.of(left))
            if not value.is_zero:
                _accumulate(terms, right, coeff * value)
        return AlgElem._raw(terms)

    def contract(self, left_map=None, right_map=None) -> AlgElem:
        """m o (left_map (x) right_map)."""
        total = ZERO_ELEM
        for (left, right), coeff in self.terms.items():
            lhs = AlgElem.of(left)
            rhs = AlgElem.of(right)
            if left_map is not None:
                lhs = left_map(lhs)
            if right_map is not None:
                rhs = right_map(rhs)
            total = total + multiply(lhs, rhs).scale(coeff)
        return total


ONE_TENSOR = TensorElem({(UNIT, UNIT): ONE})

_GENERATOR_COPRODUCTS = {
    "a": TensorElem.simple(A, A) - TensorElem.simple(C_STAR, C).scale(q_power(1)),
    "a*": TensorElem.simple(A_STAR, A_STAR) - TensorElem.simple(C, C_STAR).scale(q_power(1)),
    "c": TensorElem.simple(C, A) + TensorElem.simple(A_STAR, C),
    "c*": TensorElem.simple(C_STAR, A_STAR) + TensorElem.simple(A, C_STAR),
}


@lru_cache(maxsize=None)
def _coproduct_power(generator: str, exponent: int) -> TensorElem:
    if exponent == 0:
        return ONE_TENSOR
    return _coproduct_power(generator, exponent - 1) * _GENERATOR_COPRODUCTS[generator]


@lru_cache(maxsize=4096)
def coproduct_monomial(mono: Monomial) -> TensorElem:
    a_part = _coproduct_power("a*" if mono.starred else "a", mono.k)
    return a_part * _coproduct_power("c", mono.n) * _coproduct_power("c*", mono.m)


def coproduct(f: AlgElem) -> TensorElem:
    """Algebra map with Delta(a) = a(x)a - q c*(x)c, Delta(c) = c(x)a + a*(x)c."""
    result = TensorElem()
    for mono, coeff in f.terms.items():
        result = result + coproduct_monomial(mono).scale(coeff)
    return result


def check_hopf_axioms(f: AlgElem) -> Dict[str, bool]:
    """Counit and antipode axioms on one element, exactly."""
    delta = coproduct(f)
    eps = counit(f)
    unit = ONE_ELEM.scale(eps)
    return {
        "counit_left": delta.apply_left(counit) == f,
        "counit_right": delta.apply_right(counit) == f,
        "antipode_left": delta.contract(left_map=antipode) == unit,
        "antipode_right": delta.contract(right_map=antipode) == unit,
    }


def check_haar_invariance(f: AlgElem) -> bool:
    delta = coproduct(f)
    expected = ONE_ELEM.scale(haar(f))
    return delta.apply_right(haar) == expected and delta.apply_left(haar) == expected


def monomials_up_to(max_degree: int) -> List[Monomial]:
    out = []
    for total in range(max_degree + 1):
        for k in range(total + 1):
            for n in range(total - k + 1):
                m = total - k - n
                out.append(monomial(k, n, m))
                if k:
                    out.append(monomial(k, n, m, True))
    return out
