"""Sampling kanal Rayleigh model Kronecker dan pengecekan invariansi uniter."""
import hashlib
import logging
from typing import Optional, Union

import numpy as np

from config.constants import MC_BLOCK_TRIALS
from models.correlation import CorrelationMatrix
from models.errors import validate_positive_integer, DomainError
from models.results import InvarianceReport
from models.system import ChannelRealization, RngStream, SystemConfig
from services.correlation import scenario_correlations
from services.numerics import hermitian_sqrt

logger = logging.getLogger(__name__)

RandomSource = Union[RngStream, np.random.Generator]


def as_generator(rng: RandomSource) -> np.random.Generator:
    """Generator numpy untuk sebuah stream; Generator diteruskan apa adanya."""
    if isinstance(rng, np.random.Generator):
        return rng
    sequence = np.random.SeedSequence(entropy=rng.seed, spawn_key=(rng.stream_id,))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_stream(rng: RngStream, *indices: int) -> RngStream:
    """Stream anak dengan id hash 64-bit dari id induk dan indeks."""
    key = ','.join(str(int(i)) for i in (rng.stream_id,) + indices)
    digest = hashlib.blake2b(key.encode('ascii'), digest_size=8).digest()
    return RngStream(seed=rng.seed, stream_id=int.from_bytes(digest, 'little'))


def sample_iid_cn(rows: int, cols: int, rng: RandomSource, trials: Optional[int] = None) -> np.ndarray:
    """Entri CN(0, 1) i.i.d.: bagian real dan imajiner masing-masing N(0, 1/2)."""
    validate_positive_integer(rows, 'rows')
    validate_positive_integer(cols, 'cols')
    gen = as_generator(rng)
    shape = (rows, cols) if trials is None else (trials, rows, cols)
    scale = np.sqrt(0.5)
    real = gen.normal(0.0, scale, shape)
    imag = gen.normal(0.0, scale, shape)
    return real + 1j * imag


def sample_channel(R: CorrelationMatrix, t: int, rng: RandomSource, trials: Optional[int] = None) -> np.ndarray:
    """H = R^{1/2} W dengan W i.i.d. CN(0, 1) berukuran a x t."""
    validate_positive_integer(t, 't')
    root = hermitian_sqrt(R.entries)
    return root @ sample_iid_cn(R.size, t, rng, trials)


def sample_realization(config: SystemConfig, rng: RandomSource, trials: Optional[int] = None) -> ChannelRealization:
    """Tarik (H, He) untuk sebuah skenario; He tanpa baris bila e = 0."""
    gen = as_generator(rng)
    bob, eve = scenario_correlations(config)
    H = sample_channel(bob, config.t, gen, trials)
    if eve is None:
        shape = (0, config.t) if trials is None else (trials, 0, config.t)
        He = np.zeros(shape, dtype=complex)
    else:
        He = sample_channel(eve, config.t, gen, trials)
    return ChannelRealization(H=H, He=He)


def haar_semi_unitary(t: int, f: int, rng: RandomSource, trials: Optional[int] = None) -> np.ndarray:
    """Matriks t x f berkolom ortonormal, berdistribusi Haar (QR dengan koreksi fase)."""
    if not 1 <= f <= t:
        raise DomainError(f"need 1 <= f <= t, got t={t}, f={f}")
    Q, upper = np.linalg.qr(sample_iid_cn(t, f, rng, trials))
    diagonal = np.diagonal(upper, axis1=-2, axis2=-1)
    return Q * (diagonal / np.abs(diagonal))[..., None, :]


def sample_wishart_eigenvalues(R: CorrelationMatrix, b: int, trials: int, rng: RandomSource) -> np.ndarray:
    """Eigenvalue taknol (turun) dari A A^H, A ~ CN(0, R (x) I_b); shape (trials, n)."""
    gen = as_generator(rng)
    n = min(R.size, b)
    blocks = []
    for start in range(0, trials, MC_BLOCK_TRIALS):
        count = min(MC_BLOCK_TRIALS, trials - start)
        A = sample_channel(R, b, gen, count)
        w = np.linalg.eigvalsh(A @ np.conj(np.swapaxes(A, -1, -2)))
        blocks.append(w[:, ::-1][:, :n])
    return np.concatenate(blocks, axis=0)


def verify_unitary_invariance(R: CorrelationMatrix, t: int, f: int, trials: int,
                              rng: RandomSource, unitary: Optional[np.ndarray] = None) -> InvarianceReport:
    """Bandingkan kovarians baris He F (F independen, kolom ortonormal) dengan R.

    Statistik yang sama untuk sampling langsung CN(0, R (x) I_f) dilaporkan
    sebagai pembanding; keduanya mengecil seperti 1/sqrt(trials).
    """
    if not 1 <= f <= t:
        raise DomainError(f"need t >= f >= 1, got t={t}, f={f}")
    trials = validate_positive_integer(trials, 'trials')
    gen = as_generator(rng)
    a = R.size
    root = hermitian_sqrt(R.entries)
    rotated = np.zeros((a, a), dtype=complex)
    direct = np.zeros((a, a), dtype=complex)
    for start in range(0, trials, MC_BLOCK_TRIALS):
        count = min(MC_BLOCK_TRIALS, trials - start)
        He = root @ sample_iid_cn(a, t, gen, count)
        F = unitary if unitary is not None else haar_semi_unitary(t, f, gen, count)
        Y = He @ F
        rotated += np.einsum('nif,njf->ij', Y, Y.conj())
        D = root @ sample_iid_cn(a, f, gen, count)
        direct += np.einsum('nif,njf->ij', D, D.conj())
    rotated /= trials * f
    direct /= trials * f
    report = InvarianceReport(
        max_cov_error=float(np.max(np.abs(rotated - R.entries))),
        direct_cov_error=float(np.max(np.abs(direct - R.entries))),
        trials=trials,
        f=f,
    )
    logger.debug(f"invariansi uniter: diputar {report.max_cov_error:.4g} vs langsung {report.direct_cov_error:.4g}")
    return report
