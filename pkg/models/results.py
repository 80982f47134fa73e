from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from models.errors import ContractError


@dataclass(frozen=True, eq=False)
class PrecoderPair:
    """Precoder pesan B (t x s1), precoder AN Z (t x s2) dan spektrum H^H H."""
    B: np.ndarray
    Z: np.ndarray
    eigvals: np.ndarray

    @property
    def U(self) -> np.ndarray:
        return np.concatenate([self.B, self.Z], axis=-1)

    @property
    def s1(self) -> int:
        return self.B.shape[-1]

    @property
    def s2(self) -> int:
        return self.Z.shape[-1]


@dataclass(frozen=True)
class CapacityTerms:
    """Rate satu realisasi kanal, bits/s/Hz."""
    c_main: float
    c_wiretap: float
    secrecy: float

    @classmethod
    def from_rates(cls, c_main: float, c_wiretap: float) -> 'CapacityTerms':
        return cls(c_main=c_main, c_wiretap=c_wiretap, secrecy=max(c_main - c_wiretap, 0.0))


@dataclass(frozen=True)
class RateBreakdown:
    """Ergodic secrecy rate dipecah menjadi tiga suku kapasitasnya."""
    c_main_ergodic: float
    c_h3: float
    c_h4: float
    secrecy_rate: float
    method: str

    def __post_init__(self):
        expected = max(self.c_main_ergodic + self.c_h3 - self.c_h4, 0.0)
        if abs(self.secrecy_rate - expected) > 1e-12 * max(1.0, abs(expected)):
            raise ContractError(f"secrecy_rate {self.secrecy_rate} != clamp of terms {expected}")

    @classmethod
    def assemble(cls, c_main_ergodic: float, c_h3: float, c_h4: float, method: str) -> 'RateBreakdown':
        """Clamp setelah dijumlah, tidak per suku."""
        secrecy = max(c_main_ergodic + c_h3 - c_h4, 0.0)
        return cls(c_main_ergodic, c_h3, c_h4, secrecy, method)

    @property
    def unclamped(self) -> float:
        return self.c_main_ergodic + self.c_h3 - self.c_h4

    def to_dict(self):
        return {
            'method': self.method,
            'c_main': self.c_main_ergodic,
            'c_h3': self.c_h3,
            'c_h4': self.c_h4,
            'secrecy_rate': self.secrecy_rate,
        }


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Statistik sampel secrecy rate per tarikan."""
    mean: float
    stderr: float
    unclamped_mean: float
    unclamped_stderr: float
    mean_main: float
    mean_wiretap: float
    clamp_frequency: float
    trials: int

    def to_dict(self):
        return {
            'mean': self.mean,
            'stderr': self.stderr,
            'unclamped_mean': self.unclamped_mean,
            'unclamped_stderr': self.unclamped_stderr,
            'mean_main': self.mean_main,
            'mean_wiretap': self.mean_wiretap,
            'clamp_frequency': self.clamp_frequency,
            'trials': self.trials,
        }


@dataclass(frozen=True)
class InvarianceReport:
    """Deviasi kovarians baris He F dari R, dengan pembanding sampling langsung."""
    max_cov_error: float
    direct_cov_error: float
    trials: int
    f: int


@dataclass(frozen=True)
class S1SearchResult:
    s1_star: int
    rates: Tuple[float, ...]
    snr_db: float

    def format_message(self):
        lines = [f"📈 SNR {self.snr_db:.2f} dB -> best s1 = {self.s1_star}"]
        for s1, rate in enumerate(self.rates, start=1):
            marker = ' *' if s1 == self.s1_star else ''
            lines.append(f"  s1={s1}: {rate:.6f} bits/s/Hz{marker}")
        return '\n'.join(lines)


@dataclass(frozen=True)
class ValidationEntry:
    s1: int
    exact: float
    mc_mean: float
    mc_stderr: float
    z: float
    passed: bool


@dataclass
class ValidationReport:
    entries: List[ValidationEntry] = field(default_factory=list)
    trials: int = 0
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def format_message(self):
        status = '✅ PASS' if self.passed else '❌ FAIL'
        lines = [f"{status} ({self.trials} trials, seed={self.seed})",
                 "  s1      exact    mc_mean     stderr        z"]
        for entry in self.entries:
            lines.append(
                f"  {entry.s1:>2} {entry.exact:>10.6f} {entry.mc_mean:>10.6f} "
                f"{entry.mc_stderr:>10.6f} {entry.z:>8.3f}{'' if entry.passed else '  <-'}"
            )
        return '\n'.join(lines)
