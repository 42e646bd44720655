from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class RecoveryConfig:
    """Knobs for morphism recovery.

    ``density`` is the number of equal parts each finite edge is cut into
    when building the skeleton; ``infinite_probe`` is the offset of the
    extra skeleton point on each infinite edge.
    """

    density: int = 4
    infinite_probe: Fraction = Fraction(1)
    paranoid: bool = False
    check_laws: bool = True
    law_samples: int = 12
    coverage_samples: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.density < 2:
            raise ValueError("skeleton density must be at least 2")
        if not self.infinite_probe > 0:
            raise ValueError("infinite probe offset must be positive")


@dataclass(frozen=True)
class SamplingConfig:
    terms: int = 3
    max_den: int = 4
    seed: int = 0
