from dataclasses import dataclass
from typing import Tuple

import numpy as np

from models.errors import DomainError

MIN_RELATIVE_GAP = 1e-8


@dataclass(frozen=True)
class WishartParams:
    """Hukum Wishart sentral berkorelasi di sisi penerima W_n(m, 0, R_a).

    ``a`` dimensi yang berkorelasi, ``b`` dimensi bebas; ``sigma`` berisi
    eigenvalue R_a yang turun tegas.
    """
    a: int
    b: int
    sigma: Tuple[float, ...]

    def __post_init__(self):
        if int(self.a) != self.a or self.a < 1:
            raise DomainError(f"a must be a positive integer, got {self.a!r}")
        if int(self.b) != self.b or self.b < 1:
            raise DomainError(f"b must be a positive integer, got {self.b!r}")
        sigma = tuple(float(s) for s in self.sigma)
        object.__setattr__(self, 'sigma', sigma)
        if len(sigma) != self.a:
            raise DomainError(f"sigma must have length a={self.a}, got {len(sigma)}")
        if sigma[-1] <= 0:
            raise DomainError(f"sigma must be positive, got {sigma}")
        gaps = np.diff(sigma)
        if np.any(-gaps < MIN_RELATIVE_GAP * sigma[0]):
            raise DomainError(f"sigma must be strictly descending with separated values, got {sigma}")

    @classmethod
    def from_correlation(cls, correlation, b: int) -> 'WishartParams':
        return cls(a=correlation.size, b=b, sigma=correlation.sigma_key())

    @property
    def n(self) -> int:
        return min(self.a, self.b)

    @property
    def m(self) -> int:
        return max(self.a, self.b)

    @property
    def sigma_array(self) -> np.ndarray:
        return np.asarray(self.sigma, dtype=float)


@dataclass(frozen=True)
class EigenvalueDensity:
    """Hukum marginal eigenvalue terbesar ke-k."""
    params: WishartParams
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or not 1 <= self.k <= self.params.n:
            raise DomainError(f"k must lie in 1..n={self.params.n}, got {self.k!r}")
