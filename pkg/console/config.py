"""
Per-run configuration assembled from command-line flags and settings.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional

from django.conf import settings

from hopf.scalars import ExactScalar, NumericScalar, RootScalar, as_point, half
from Qsu2.exceptions import ConfigurationError, DimensionMismatchError

logger = logging.getLogger(__name__)

BACKENDS = ("exact", "numeric")


@dataclass
class RunConfig:
    backend: str = "exact"
    q: str = "1/2"
    max_level: Fraction = Fraction(3)
    cutoff: int = 32
    seed: int = 0
    out: Optional[str] = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ConfigurationError(f"unknown backend {self.backend!r}; choose one of {', '.join(BACKENDS)}")
        try:
            point = as_point(self.q)
        except (ValueError, ZeroDivisionError):
            raise ConfigurationError(f"q must be a rational 'p/r' or a float, got {self.q!r}") from None
        if self.backend == "numeric" and not 0 < point < 1:
            raise ConfigurationError(f"the numeric backend requires 0 < q < 1, got {self.q}")
        try:
            self.max_level = half(self.max_level)
        except (DimensionMismatchError, ValueError):
            raise ConfigurationError(f"level must be a half-integer, got {self.max_level!r}") from None
        if self.max_level < 0:
            raise ConfigurationError("level must be nonnegative")
        if self.cutoff < 1:
            raise ConfigurationError("cutoff K must be at least 1")

    @classmethod
    def from_options(cls, options: Mapping[str, Any]) -> "RunConfig":
        def pick(name, setting):
            value = options.get(name)
            return getattr(settings, setting) if value is None else value

        return cls(
            backend=pick("backend", "QSU2_BACKEND"),
            q=str(pick("q", "QSU2_Q")),
            max_level=pick("level", "QSU2_MAX_LEVEL"),
            cutoff=int(pick("cutoff", "QSU2_CUTOFF")),
            seed=int(pick("seed", "QSU2_SEED")),
            out=options.get("out"),
        )

    @property
    def point(self) -> Fraction:
        return as_point(self.q)

    @property
    def q_float(self) -> float:
        return float(self.point)

    def render(self, value: Any) -> Dict[str, Any]:
        """JSON form of a scalar: exact and numeric parts per backend."""
        if isinstance(value, NumericScalar):
            return value.to_json()
        if isinstance(value, RootScalar):
            payload = {"numeric": _complex_json(value.evaluate(self.point))}
            if self.backend == "exact":
                payload["exact"] = value.to_json()
            return payload
        value = ExactScalar.lift(value)
        if self.backend == "numeric":
            return {"numeric": value.at(self.point).to_json()}
        re, im = value.exact_at(self.point)
        return {
            "exact": str(value),
            "json": value.to_json(),
            "at_q": str(re) if not im else f"{re} + ({im})*I",
            "numeric": _complex_json(value.evaluate(self.point)),
        }


def _complex_json(value: complex) -> Dict[str, float]:
    return {"re": value.real, "im": value.imag}
