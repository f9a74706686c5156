"""Arguments and runtime knobs of the G_r evaluator."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from src.mpnum.bigcomplex import BigComplex, Scalar, guard_bits

logger = logging.getLogger(__name__)

TRANSLATION_ORDERS = ("largest", "smallest")


@dataclass(frozen=True)
class GammaSettings:
    """Tuning knobs shared by every evaluation.

    Attributes:
        guard_bits: Extra working bits; None means max(32, prec/10)
        min_decay: Smallest admissible decay rate y of a series
        max_translations: Budget of translation steps per gr() call
        max_terms: Hard cap on the length of any series
        translation_order: Translate by the parameter with the "largest" or
            "smallest" imaginary part first
    """

    guard_bits: Optional[int] = None
    min_decay: float = 1e-6
    max_translations: int = 10 ** 6
    max_terms: int = 10 ** 7
    translation_order: str = "largest"

    def __post_init__(self) -> None:
        if self.guard_bits is not None and self.guard_bits < 0:
            raise ValueError(f"guard_bits must be >= 0, got {self.guard_bits}")
        if self.min_decay <= 0:
            raise ValueError(f"min_decay must be > 0, got {self.min_decay}")
        if self.max_translations < 1:
            raise ValueError(f"max_translations must be >= 1, got {self.max_translations}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.translation_order not in TRANSLATION_ORDERS:
            raise ValueError(
                f"translation_order must be one of {TRANSLATION_ORDERS}, got {self.translation_order!r}"
            )

    def working_prec(self, prec: int) -> int:
        extra = guard_bits(prec) if self.guard_bits is None else self.guard_bits
        return prec + extra


DEFAULT_SETTINGS = GammaSettings()


@dataclass(frozen=True)
class GammaPoint:
    """Argument z and parameters tau_0 ... tau_r of G_r.

    Example:
        p = GammaPoint.from_values("0.2+0.1j", ["0.3j", "0.5j"], prec=128)
        p.r        # 1
    """

    z: BigComplex
    taus: Tuple[BigComplex, ...]

    def __post_init__(self) -> None:
        if not self.taus:
            raise ValueError("at least one parameter tau is required")
        object.__setattr__(self, "taus", tuple(self.taus))

    @classmethod
    def from_values(cls, z: Scalar, taus: Sequence[Scalar], prec: int) -> "GammaPoint":
        return cls(
            BigComplex.from_value(z, prec),
            tuple(BigComplex.from_value(t, prec) for t in taus),
        )

    @property
    def r(self) -> int:
        return len(self.taus) - 1

    @property
    def prec(self) -> int:
        return min([self.z.prec] + [t.prec for t in self.taus])
