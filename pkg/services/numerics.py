"""Kernel numerik bersama: gamma tak lengkap berorde bulat, permutasi
berurut, kuadratur semi-tak-hingga dan aljabar linear Hermitian kecil."""
import itertools
import logging
import math
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from config.constants import (
    EULER_MASCHERONI,
    HERMITIAN_TOLERANCE,
    PSD_TOLERANCE,
    QUADRATURE_PANEL_ORDER,
    QUADRATURE_TAIL_FACTOR,
)
from models.errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    NotPositiveSemidefiniteError,
    validate_positive_integer,
)
from models.quadrature import PermutationFamily, QuadratureSpec

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(QUADRATURE_PANEL_ORDER)


def _gamma_arguments(eps, x) -> Tuple[int, np.ndarray]:
    if isinstance(eps, bool) or int(eps) != eps or eps < 1:
        raise DomainError(f"incomplete gamma order must be a positive integer, got {eps!r}")
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)) or np.any(x < 0):
        raise DomainError(f"incomplete gamma argument must be nonnegative, got {x!r}")
    return int(eps), x


def _as_result(value: np.ndarray) -> ArrayLike:
    return float(value) if value.ndim == 0 else value


def upper_incomplete_gamma(eps: int, x: ArrayLike) -> ArrayLike:
    """Gamma(eps, x) = (eps-1)! e^{-x} sum_{k<eps} x^k/k! untuk eps bulat."""
    eps, x = _gamma_arguments(eps, x)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, eps):
        term = term * x / k
        total = total + term
    with np.errstate(invalid='ignore', over='ignore'):
        value = math.factorial(eps - 1) * np.exp(-x) * total
    value = np.where(np.isposinf(x), 0.0, value)
    return _as_result(value)


def lower_incomplete_gamma(eps: int, x: ArrayLike) -> ArrayLike:
    """gamma(eps, x) = (eps-1)! - Gamma(eps, x)."""
    eps, x = _gamma_arguments(eps, x)
    value = math.factorial(eps - 1) - np.asarray(upper_incomplete_gamma(eps, x))
    return _as_result(value)


def digamma_integer(x: int) -> float:
    """psi(x) = -xi + sum_{i=1}^{x-1} 1/i untuk x bulat >= 1."""
    x = validate_positive_integer(x, 'x')
    return -EULER_MASCHERONI + sum(1.0 / i for i in range(1, x))


def enumerate_permutations(n: int, split: int) -> PermutationFamily:
    """Semua permutasi 1..n dengan mu_1<..<mu_{split-1} dan mu_split<..<mu_n.

    Anggota diurutkan leksikografis menurut run pertamanya.
    """
    n = validate_positive_integer(n, 'n')
    if int(split) != split or not 1 <= split <= n:
        raise DomainError(f"split must lie in 1..{n}, got {split!r}")
    indices = range(1, n + 1)
    members = []
    for head in itertools.combinations(indices, split - 1):
        tail = tuple(i for i in indices if i not in head)
        members.append(head + tail)
    return PermutationFamily(n=n, split=int(split), members=tuple(members))


def check_permutation(mu, n: int, split: int) -> Tuple[int, ...]:
    """ContractError kecuali mu anggota keluarga (n, split)."""
    mu = tuple(int(v) for v in mu)
    if sorted(mu) != list(range(1, n + 1)):
        raise ContractError(f"{mu} is not a permutation of 1..{n}")
    head, tail = mu[:split - 1], mu[split - 1:]
    if list(head) != sorted(head) or list(tail) != sorted(tail):
        raise ContractError(f"{mu} does not have ascending runs around split {split}")
    return mu


def _square(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {M.shape}")
    return M


def hermitian_eig(M) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalue terurut turun beserta matriks eigenvektor uniternya."""
    M = _square(M).astype(complex)
    asymmetry = np.max(np.abs(M - M.conj().T)) if M.size else 0.0
    if asymmetry > HERMITIAN_TOLERANCE:
        raise ContractError(f"matrix is not Hermitian (max |M - M^H| = {asymmetry:.3g})")
    w, V = linalg.eigh((M + M.conj().T) / 2)
    order = np.argsort(-w, kind='stable')
    return w[order], V[:, order]


def hermitian_sqrt(M) -> np.ndarray:
    """Akar kuadrat utama S dari matriks PSD, S S^H = M."""
    w, V = hermitian_eig(M)
    if w.size and w[-1] < -PSD_TOLERANCE:
        raise NotPositiveSemidefiniteError(f"smallest eigenvalue {w[-1]:.3g} is negative")
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)) @ V.conj().T


def lu_determinant(M):
    """Determinan lewat faktorisasi LU berpivot."""
    M = _square(M)
    if M.shape[0] == 0:
        return 1.0
    lu, piv = linalg.lu_factor(M)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    det = np.prod(np.diag(lu)) * (-1.0) ** swaps
    return det if np.iscomplexobj(det) else float(det)


def _panel_edges(lo: float, hi: float, panels: int, x_min: Optional[float]) -> np.ndarray:
    """Batas panel: linear, atau [0, x_min] lalu geometris sampai hi bila x_min diisi."""
    if x_min is None or not lo < x_min < hi:
        return np.linspace(lo, hi, panels + 1)
    return np.concatenate(([lo], np.geomspace(x_min, hi, max(panels, 2))))


def _composite_gauss(g: Callable[[np.ndarray], np.ndarray], edges: np.ndarray) -> float:
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return float(np.dot(w, g(x)))


def _search_truncation(f: Callable[[np.ndarray], np.ndarray], tolerance: float) -> float:
    bound = tolerance / QUADRATURE_TAIL_FACTOR
    x_max = 1.0
    for _ in range(64):
        window = np.linspace(x_max, 2.0 * x_max, 17)
        if np.max(np.abs(f(window))) * x_max < bound:
            return x_max
        x_max *= 2.0
    raise ConvergenceError("integrand tail never fell below the tolerance", None, None)


def integrate_semi_infinite(f: Callable, spec: QuadratureSpec = QuadratureSpec(), vectorized: bool = True) -> float:
    """Integral f di [0, inf) dengan panel Gauss-Legendre yang digandakan sampai dua estimasi sepakat.

    Berhenti saat |selisih| <= tolerance * max(1, |estimasi|). ``f`` menerima
    array 1-D absis kecuali ``vectorized`` False.
    """
    g = f if vectorized else np.vectorize(f, otypes=[float])
    x_min = None
    if spec.transform == 'truncate':
        hi = spec.x_max if spec.x_max is not None else _search_truncation(g, spec.tolerance)
        integrand, lo, x_min = g, 0.0, spec.x_min
    else:
        scale = spec.scale

        def integrand(u):
            x = scale * u / (1.0 - u)
            return g(x) * scale / (1.0 - u) ** 2

        lo, hi = 0.0, 1.0

    panels = max(1, spec.node_count // QUADRATURE_PANEL_ORDER)
    previous = None
    latest = _composite_gauss(integrand, _panel_edges(lo, hi, panels, x_min))
    for _ in range(spec.max_refinements):
        panels *= 2
        previous, latest = latest, _composite_gauss(integrand, _panel_edges(lo, hi, panels, x_min))
        if abs(latest - previous) <= spec.tolerance * max(1.0, abs(latest)):
            logger.debug(f"kuadratur stabil dengan {panels} panel di [{lo}, {hi:.4g}]: {latest:.12g}")
            return latest
    raise ConvergenceError(
        f"quadrature did not converge after {spec.max_refinements} refinements",
        previous=previous, latest=latest,
    )
