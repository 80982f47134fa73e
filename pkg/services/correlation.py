"""Matriks korelasi spasial sisi penerima dari geometri array dan statistik AoA."""
import itertools
import logging
from functools import lru_cache

import numpy as np

from config.constants import DEGENERACY_TOLERANCE, EIGEN_GAP_EPSILON
from models.correlation import CorrelationMatrix, CorrelationSpec
from models.errors import DegenerateCorrelationError, validate_positive_integer
from services.numerics import hermitian_eig, lu_determinant

logger = logging.getLogger(__name__)


def coupling(spec: CorrelationSpec) -> float:
    """c = 2 pi d delta sin(theta); spektrum R bergantung pada d, theta dan delta hanya lewat c."""
    return float(2 * np.pi * spec.spacing_d * np.deg2rad(spec.ras) * np.sin(np.deg2rad(spec.mean_aoa)))


def regularize_spectrum(raw: np.ndarray):
    """Renggangkan eigenvalue dari bawah agar setiap celah dan sigma_a >= 1e-6 sigma_1.

    Mengembalikan spektrum yang turun tegas, diskalakan ulang ke trace semula,
    dan apakah ada nilai yang digeser.
    """
    a = raw.size
    sigma = np.clip(np.asarray(raw, dtype=float), 0.0, None)
    eps = EIGEN_GAP_EPSILON * sigma[0]
    if sigma[-1] >= eps and np.all(-np.diff(sigma) >= eps):
        return sigma * (a / sigma.sum()), False
    sigma[-1] = max(sigma[-1], eps)
    for i in range(a - 2, -1, -1):
        sigma[i] = max(sigma[i], sigma[i + 1] + eps)
    return sigma * (a / sigma.sum()), True


def correlation_from_entries(entries: np.ndarray, spec: CorrelationSpec = None) -> CorrelationMatrix:
    entries = np.array(entries, dtype=complex)
    a = entries.shape[0]
    raw, _ = hermitian_eig(entries)
    if not np.all(np.isfinite(raw)) or raw[-1] < -DEGENERACY_TOLERANCE * a:
        raise DegenerateCorrelationError(f"correlation spectrum is not positive semidefinite: {raw}")
    sigma, regularized = regularize_spectrum(raw)
    if regularized:
        logger.debug(f"eigenvalue diregularisasi: {raw} -> {sigma}")
    # shared through the lru caches below
    for array in (entries, raw, sigma):
        array.setflags(write=False)
    return CorrelationMatrix(
        entries=entries,
        eigenvalues=sigma,
        raw_eigenvalues=raw,
        regularized=regularized,
        spec=spec,
    )


@lru_cache(maxsize=256)
def build_correlation(spec: CorrelationSpec) -> CorrelationMatrix:
    """Matriks korelasi array linear seragam dengan AoA Gaussian.

    [R]_{u,v} = exp(-j 2 pi d (u-v) cos theta) * exp(-1/2 [2 pi d delta (u-v) sin theta]^2)
    """
    theta = np.deg2rad(spec.mean_aoa)
    delta = np.deg2rad(spec.ras)
    index = np.arange(spec.antennas)
    lag = np.subtract.outer(index, index)
    phase = np.exp(-2j * np.pi * spec.spacing_d * lag * np.cos(theta))
    spread = np.exp(-0.5 * (2 * np.pi * spec.spacing_d * delta * lag * np.sin(theta)) ** 2)
    return correlation_from_entries(phase * spread, spec)


@lru_cache(maxsize=16)
def identity_correlation(a: int) -> CorrelationMatrix:
    """I_a, kasus terburuk untuk Eve bila korelasinya tidak diketahui."""
    a = validate_positive_integer(a, 'a')
    return correlation_from_entries(np.eye(a, dtype=complex))


def largest_eigenvalue(R: CorrelationMatrix) -> float:
    return float(R.raw_eigenvalues[0])


def determinant(R: CorrelationMatrix) -> float:
    return float(np.prod(R.raw_eigenvalues))


def principal_minor_sums(R: CorrelationMatrix) -> np.ndarray:
    """rho_k = jumlah semua minor utama k x k, k = 1..a."""
    a = R.size
    sums = np.zeros(a)
    for k in range(1, a + 1):
        for rows in itertools.combinations(range(a), k):
            sums[k - 1] += np.real(lu_determinant(R.entries[np.ix_(rows, rows)]))
    return sums


def scenario_correlations(config):
    """(R_r, R_e) sebuah skenario; R_e = I_e bila korelasi Eve tidak diketahui, None bila e = 0."""
    bob = build_correlation(config.bob_corr)
    if config.e == 0:
        return bob, None
    if not config.eve_corr_known:
        return bob, identity_correlation(config.e)
    return bob, build_correlation(config.eve_corr)
