"""Precoding artificial noise: precoder dari dekomposisi eigen H^H H,
pra-pemroses Bob yang membuang AN, rate per realisasi dan estimasi
Monte Carlo untuk ergodic secrecy rate."""
import logging
import math

import numpy as np

from config.constants import MC_BLOCK_TRIALS, RANK_TOLERANCE
from models.errors import ConfigurationError, DomainError, RankError, validate_positive_integer
from models.results import CapacityTerms, MonteCarloEstimate, PrecoderPair
from models.system import ChannelRealization, RngStream, SystemConfig
from services.channel import RandomSource, as_generator, derive_stream, sample_iid_cn
from services.correlation import scenario_correlations
from services.numerics import hermitian_eig, hermitian_sqrt

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


def _hermitian_transpose(A: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


def _log2det_identity_plus(rho: float, A: np.ndarray) -> np.ndarray:
    """log2 det(I + rho A A^H) untuk satu matriks atau tumpukan."""
    size = A.shape[-2]
    if size == 0:
        return np.zeros(A.shape[:-2]) if A.ndim > 2 else 0.0
    gram = np.eye(size) + rho * (A @ _hermitian_transpose(A))
    _, logdet = np.linalg.slogdet(gram)
    return logdet / LN2


def build_precoders(H: np.ndarray, s1: int) -> PrecoderPair:
    """B = s1 eigenvektor teratas H^H H, Z = sisa t - s1."""
    H = np.asarray(H, dtype=complex)
    r, t = H.shape
    if int(s1) != s1 or not 1 <= s1 <= min(t, r):
        raise DomainError(f"s1 must lie in 1..min(t, r) = 1..{min(t, r)}, got {s1!r}")
    eigvals, V = hermitian_eig(H.conj().T @ H)
    eigvals = np.clip(eigvals, 0.0, None)
    rank = int(np.count_nonzero(eigvals > RANK_TOLERANCE * max(eigvals[0], np.finfo(float).tiny)))
    if s1 > rank:
        raise RankError(f"s1={s1} exceeds the channel rank {rank}")
    return PrecoderPair(B=V[:, :s1], Z=V[:, s1:], eigvals=eigvals)


def main_capacity(H: np.ndarray, B: np.ndarray, rho: float) -> float:
    """C_m = log2 det(I + rho H1 H1^H), H1 = H B."""
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    return max(float(_log2det_identity_plus(rho, H @ B)), 0.0)


def main_capacity_eigen(eigvals: np.ndarray, s1: int, rho: float) -> float:
    """Bentuk eigen C_m: jumlah log2(1 + rho lambda_i) atas s1 subkanal terkuat."""
    return float(np.sum(np.log2(1.0 + rho * np.asarray(eigvals)[:s1])))


def wiretap_capacity(He: np.ndarray, B: np.ndarray, Z: np.ndarray, rho: float) -> float:
    """C_w = log2 det(I + rho H4 H4^H) - log2 det(I + rho H3 H3^H), H3 = He Z, H4 = He [B, Z]."""
    t, e = B.shape[0], He.shape[0]
    if t <= e:
        raise ConfigurationError(f"Eve can remove the AN unless t > e (t={t}, e={e})")
    H4 = He @ np.concatenate([B, Z], axis=1)
    H3 = He @ Z
    value = float(_log2det_identity_plus(rho, H4) - _log2det_identity_plus(rho, H3))
    return max(value, 0.0)


def wiretap_capacity_ratio_form(He: np.ndarray, B: np.ndarray, Z: np.ndarray, rho: float) -> float:
    """Bentuk MMSE-SIC: log2 det(I + rho (I + rho H3 H3^H)^{-1} H2 H2^H)."""
    e = He.shape[0]
    H2, H3 = He @ B, He @ Z
    interference = np.eye(e) + rho * (H3 @ H3.conj().T)
    signal = np.linalg.solve(interference, H2 @ H2.conj().T)
    _, logdet = np.linalg.slogdet(np.eye(e) + rho * signal)
    return max(float(logdet / LN2), 0.0)


def preprocess_receive(y: np.ndarray, H: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(H B)^H y: membuang suku AN dan menyisakan Lambda_s1 x ditambah noise."""
    return (H @ B).conj().T @ y


def capacity_terms(realization: ChannelRealization, s1: int, rho: float) -> CapacityTerms:
    precoders = build_precoders(realization.H, s1)
    c_main = main_capacity(realization.H, precoders.B, rho)
    if realization.He.shape[0] == 0:
        return CapacityTerms.from_rates(c_main, 0.0)
    c_wiretap = wiretap_capacity(realization.He, precoders.B, precoders.Z, rho)
    return CapacityTerms.from_rates(c_main, c_wiretap)


def block_rates(H: np.ndarray, He: np.ndarray, s1: int, rho: float):
    """C_m dan C_w tervektorisasi untuk tumpukan H (n, r, t) dan He (n, e, t)."""
    w, V = np.linalg.eigh(_hermitian_transpose(H) @ H)
    w = np.clip(w[:, ::-1], 0.0, None)
    V = V[:, :, ::-1]
    c_main = np.sum(np.log2(1.0 + rho * w[:, :s1]), axis=1)
    if He.shape[1] == 0:
        return c_main, np.zeros_like(c_main)
    full = _log2det_identity_plus(rho, He)
    partial = _log2det_identity_plus(rho, He @ V[:, :, s1:])
    return c_main, np.maximum(full - partial, 0.0)


def monte_carlo_secrecy(config: SystemConfig, trials: int, rng: RandomSource) -> MonteCarloEstimate:
    """Rata-rata sampel dan standard error [C_m - C_w]^+ atas tarikan (H, He) independen.

    Trial berjalan per blok; dengan RngStream tiap blok menarik dari stream
    turunannya sendiri, jadi hasil tidak bergantung pada penjadwalan blok.
    """
    trials = validate_positive_integer(trials, 'trials')
    bob, eve = scenario_correlations(config)
    root_bob = hermitian_sqrt(bob.entries)
    root_eve = None if eve is None else hermitian_sqrt(eve.entries)
    rho = config.rho

    totals = np.zeros(7)
    for block, start in enumerate(range(0, trials, MC_BLOCK_TRIALS)):
        count = min(MC_BLOCK_TRIALS, trials - start)
        gen = as_generator(derive_stream(rng, block) if isinstance(rng, RngStream) else rng)
        H = root_bob @ sample_iid_cn(config.r, config.t, gen, count)
        if root_eve is None:
            He = np.zeros((count, 0, config.t), dtype=complex)
        else:
            He = root_eve @ sample_iid_cn(config.e, config.t, gen, count)
        c_main, c_wiretap = block_rates(H, He, config.s1, rho)
        difference = c_main - c_wiretap
        secrecy = np.maximum(difference, 0.0)
        totals += [
            secrecy.sum(), (secrecy ** 2).sum(),
            difference.sum(), (difference ** 2).sum(),
            c_main.sum(), c_wiretap.sum(),
            np.count_nonzero(difference < 0),
        ]

    def _moments(total, total_sq):
        mean = total / trials
        if trials == 1:
            return mean, 0.0
        variance = max(total_sq - trials * mean ** 2, 0.0) / (trials - 1)
        return mean, math.sqrt(variance / trials)

    mean, stderr = _moments(totals[0], totals[1])
    unclamped_mean, unclamped_stderr = _moments(totals[2], totals[3])
    estimate = MonteCarloEstimate(
        mean=float(mean),
        stderr=float(stderr),
        unclamped_mean=float(unclamped_mean),
        unclamped_stderr=float(unclamped_stderr),
        mean_main=float(totals[4] / trials),
        mean_wiretap=float(totals[5] / trials),
        clamp_frequency=float(totals[6] / trials),
        trials=trials,
    )
    logger.debug(f"monte carlo {config.format_message()}: {estimate.to_dict()}")
    return estimate
