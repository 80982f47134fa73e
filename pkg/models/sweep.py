from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from config.constants import CSV_SIGNIFICANT_DIGITS, METHODS, MIN_SWEEP_TRIALS, SWEEP_VARIABLES
from models.errors import ConfigurationError
from models.system import SystemConfig


@dataclass(frozen=True)
class SweepSpec:
    """Satu section recipe: grid atas satu variabel, split dan method."""
    variable: str
    grid: Tuple[float, ...]
    s1_values: Tuple[int, ...]
    base: SystemConfig
    trials: int
    seed: int
    methods: Tuple[str, ...] = ('exact',)
    name: str = 'sweep'

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigurationError(f"unknown sweep variable {self.variable!r}")
        if not self.grid:
            raise ConfigurationError("grid must not be empty")
        if np.any(np.diff(self.grid) <= 0):
            raise ConfigurationError(f"grid must be strictly increasing, got {self.grid}")
        if not self.s1_values:
            raise ConfigurationError("s1_values must not be empty")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown or not self.methods:
            raise ConfigurationError(f"methods must be a nonempty subset of {METHODS}, got {self.methods}")
        if 'monte-carlo' in self.methods and self.trials < MIN_SWEEP_TRIALS:
            raise ConfigurationError(f"monte-carlo needs at least {MIN_SWEEP_TRIALS} trials, got {self.trials}")

    @property
    def row_count(self) -> int:
        return len(self.grid) * len(self.s1_values) * len(self.methods)


def _fmt(value: float) -> str:
    return f"{value:.{CSV_SIGNIFICANT_DIGITS}g}"


@dataclass
class SweepRow:
    """Satu baris CSV dari sebuah sweep."""
    variable: str
    value: float
    s1: int
    method: str
    rate: float
    stderr: Optional[float] = None
    wall_time_ms: int = 0
    error: Optional[str] = field(default=None, compare=False)

    def to_csv_row(self, record_time: bool = False):
        """Nilai dalam urutan CSV_HEADER, diformat dengan digit signifikan tetap."""
        return [
            self.variable,
            _fmt(self.value),
            str(self.s1),
            self.method,
            'nan' if self.rate is None or np.isnan(self.rate) else _fmt(self.rate),
            '' if self.stderr is None else _fmt(self.stderr),
            str(self.wall_time_ms if record_time else 0),
        ]
