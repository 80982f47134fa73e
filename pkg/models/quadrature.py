from dataclasses import dataclass, field
from typing import Optional, Tuple

from config.constants import (
    QUADRATURE_DEFAULT_NODES,
    QUADRATURE_DEFAULT_TOLERANCE,
    QUADRATURE_MAX_REFINEMENTS,
)
from models.errors import DomainError

TRANSFORMS = ('truncate', 'exp-map')


@dataclass(frozen=True)
class QuadratureSpec:
    """Pengaturan integral di [0, inf)."""
    node_count: int = QUADRATURE_DEFAULT_NODES
    transform: str = 'truncate'
    tolerance: float = QUADRATURE_DEFAULT_TOLERANCE
    x_max: Optional[float] = None  # truncation point, searched when absent
    x_min: Optional[float] = None  # first geometric panel edge; linear panels when absent
    scale: float = 1.0  # length scale of the exp-map
    max_refinements: int = QUADRATURE_MAX_REFINEMENTS

    def __post_init__(self):
        if self.node_count < 8:
            raise DomainError(f"node_count must be >= 8, got {self.node_count}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")
        if self.transform not in TRANSFORMS:
            raise DomainError(f"transform must be one of {TRANSFORMS}, got {self.transform!r}")
        if self.x_max is not None and not self.x_max > 0:
            raise DomainError(f"x_max must be positive, got {self.x_max}")
        if self.x_min is not None and not (self.x_min > 0 and (self.x_max is None or self.x_min < self.x_max)):
            raise DomainError(f"x_min must lie in (0, x_max), got {self.x_min}")
        if not self.scale > 0:
            raise DomainError(f"scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class PermutationFamily:
    """Permutasi 1..n yang naik di 1..split-1 dan di split..n."""
    n: int
    split: int
    members: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)

    def upper_sets(self):
        """Indeks kolom pada run pertama (gamma tak lengkap atas) tiap anggota."""
        return [frozenset(mu[:self.split - 1]) for mu in self.members]

    def __len__(self):
        return len(self.members)
