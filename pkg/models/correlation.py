from dataclasses import dataclass
from typing import Optional

import numpy as np

from models.errors import ConfigurationError


@dataclass(frozen=True)
class CorrelationSpec:
    """Parameter fisik satu array penerima (sudut dalam derajat)."""
    antennas: int
    spacing_d: float
    mean_aoa: float
    ras: float

    def __post_init__(self):
        if int(self.antennas) != self.antennas or self.antennas < 1:
            raise ConfigurationError(f"antennas must be a positive integer, got {self.antennas!r}")
        if not self.spacing_d > 0:
            raise ConfigurationError(f"spacing_d must be positive, got {self.spacing_d!r}")
        if not 0 < self.mean_aoa < 180:
            raise ConfigurationError(f"mean_aoa must lie in (0, 180) degrees, got {self.mean_aoa!r}")
        if self.ras < 0:
            raise ConfigurationError(f"ras must be nonnegative, got {self.ras!r}")

    def to_dict(self):
        return {
            'antennas': self.antennas,
            'spacing_d': self.spacing_d,
            'mean_aoa': self.mean_aoa,
            'ras': self.ras,
        }


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Matriks korelasi penerima beserta spektrumnya.

    ``raw_eigenvalues`` langsung dari dekomposisi; ``eigenvalues`` turun tegas
    dengan trace sama dengan dimensi.
    """
    entries: np.ndarray
    eigenvalues: np.ndarray
    raw_eigenvalues: np.ndarray
    regularized: bool = False
    spec: Optional[CorrelationSpec] = None

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def sigma_key(self):
        """Tampilan hashable dari spektrum teregularisasi (kunci cache)."""
        return tuple(float(s) for s in self.eigenvalues)

    def format_message(self):
        sigma = ', '.join(f"{s:.4g}" for s in self.eigenvalues)
        flag = ' (regularized)' if self.regularized else ''
        return f"R[{self.size}x{self.size}] sigma=({sigma}){flag}"
