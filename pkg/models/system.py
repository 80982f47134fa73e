from dataclasses import dataclass, replace

import numpy as np

from models.correlation import CorrelationSpec
from models.errors import ConfigurationError

UINT64_LIMIT = 2 ** 64


@dataclass(frozen=True)
class SystemConfig:
    """Skenario AN lengkap: jumlah antena, daya, split stream dan kedua array."""
    t: int
    r: int
    e: int
    power_P: float
    s1: int
    s2: int
    bob_corr: CorrelationSpec
    eve_corr: CorrelationSpec
    eve_corr_known: bool = True

    def __post_init__(self):
        for name in ('t', 'r'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
        if int(self.e) != self.e or self.e < 0:
            raise ConfigurationError(f"e must be a nonnegative integer, got {self.e!r}")
        if self.t <= self.e:
            raise ConfigurationError(
                f"AN cannot be concealed from Eve unless t > e (t={self.t}, e={self.e})"
            )
        if not self.power_P > 0:
            raise ConfigurationError(f"power_P must be positive, got {self.power_P!r}")
        if self.s1 + self.s2 != self.t:
            raise ConfigurationError(f"s1 + s2 must equal t ({self.s1} + {self.s2} != {self.t})")
        if not 1 <= self.s1 <= min(self.t, self.r):
            raise ConfigurationError(
                f"s1 must lie in 1..min(t, r) = 1..{min(self.t, self.r)}, got {self.s1}"
            )
        if self.bob_corr.antennas != self.r:
            raise ConfigurationError(
                f"Bob's array has {self.bob_corr.antennas} antennas but r={self.r}"
            )
        if self.e and self.eve_corr.antennas != self.e:
            raise ConfigurationError(
                f"Eve's array has {self.eve_corr.antennas} antennas but e={self.e}"
            )

    @classmethod
    def from_snr_db(cls, t, r, e, snr_db, s1, bob_corr, eve_corr, eve_corr_known=True):
        """Bangun skenario dari SNR kirim dalam dB (daya noise satu)."""
        return cls(
            t=t, r=r, e=e,
            power_P=float(10.0 ** (snr_db / 10.0)),
            s1=s1, s2=t - s1,
            bob_corr=bob_corr, eve_corr=eve_corr,
            eve_corr_known=eve_corr_known,
        )

    @property
    def rho(self) -> float:
        """Daya per antena P/t."""
        return self.power_P / self.t

    @property
    def snr_db(self) -> float:
        return float(10.0 * np.log10(self.power_P))

    @property
    def n1(self) -> int:
        return min(self.s2, self.e)

    def with_s1(self, s1: int) -> 'SystemConfig':
        return replace(self, s1=s1, s2=self.t - s1)

    def format_message(self):
        eve = 'known' if self.eve_corr_known else 'unknown (identity)'
        return (
            f"t={self.t} r={self.r} e={self.e} SNR={self.snr_db:.2f} dB "
            f"s1={self.s1} s2={self.s2} Eve correlation {eve}"
        )


@dataclass(frozen=True)
class RngStream:
    """Stream acak reproducible: (seed, stream_id) yang sama memberi sampel yang sama."""
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ('seed', 'stream_id'):
            value = getattr(self, name)
            if int(value) != value or not 0 <= value < UINT64_LIMIT:
                raise ConfigurationError(f"{name} must be an unsigned 64-bit integer, got {value!r}")


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """Satu tarikan kanal Bob H (r x t) dan kanal Eve He (e x t)."""
    H: np.ndarray
    He: np.ndarray

    def __post_init__(self):
        if not (np.all(np.isfinite(self.H)) and np.all(np.isfinite(self.He))):
            raise ConfigurationError("channel realization has non-finite entries")
        if self.H.shape[-1] != self.He.shape[-1]:
            raise ConfigurationError(
                f"H and He disagree on t ({self.H.shape[-1]} vs {self.He.shape[-1]})"
            )
