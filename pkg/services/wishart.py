"""Distribusi marginal eigenvalue terurut dari matriks Wishart kompleks sentral
yang berkorelasi di sisi penerima, plus integral kapasitas per eigenchannel.

Dua bentuk evaluasi tersedia. Bentuk literal ('vandermonde') menjumlahkan
determinan [G, Psi] dan [G, Omega] per permutasi dalam float64 lalu membagi
dengan normalizer Vandermonde. Bentuk default ('extended') membaca jumlah yang
sama sebagai koefisien polinomial pembangkit det[G, L + wU] dan menghitungnya
dengan presisi yang diperluas (mpmath), sehingga spektrum yang sangat lebar
atau eigenvalue yang berdekatan tidak menghilangkan digit.
"""
import logging
import math
from dataclasses import replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Tuple

import mpmath
import numpy as np
from scipy.special import gammaln

from config.constants import CDF_BOUND_SLACK, GRADED_PANEL_FLOOR, GUARD_DIGITS, PDF_NEGATIVE_CLAMP
from models.correlation import CorrelationMatrix
from models.errors import (
    DegenerateCorrelationError,
    DomainError,
    NumericalIntegrityError,
    validate_positive_integer,
)
from models.quadrature import QuadratureSpec
from models.wishart import EigenvalueDensity, WishartParams
from services.numerics import (
    check_permutation,
    enumerate_permutations,
    integrate_semi_infinite,
    lower_incomplete_gamma,
    upper_incomplete_gamma,
)

logger = logging.getLogger(__name__)

FORMS = ('extended', 'vandermonde')


# Bentuk determinan literal

def log_normalization_K(params: WishartParams) -> float:
    """log dari prod_{i<j<=a}(sigma_i - sigma_j) * prod_{i=1}^{n} (b-i)!."""
    sigma = params.sigma_array
    gaps = (sigma[:, None] - sigma[None, :])[np.triu_indices(params.a, 1)]
    if np.any(gaps <= 0):
        raise DegenerateCorrelationError(f"repeated or unordered eigenvalues: {params.sigma}")
    factorials = sum(gammaln(params.b - i + 1) for i in range(1, params.n + 1))
    return float(np.sum(np.log(gaps)) + factorials)


def normalization_K(params: WishartParams) -> float:
    return math.exp(log_normalization_K(params))


def vandermonde_sign(a: int) -> int:
    """Tanda det[sigma_u^{j-1}] untuk sigma yang turun tegas."""
    return -1 if (a * (a - 1) // 2) % 2 else 1


def build_G(params: WishartParams) -> np.ndarray:
    """[G]_{u,j} = sigma_u^{j-1}, j = 1..a-n; tanpa kolom bila b >= a."""
    powers = np.arange(params.a - params.n)
    return params.sigma_array[:, None] ** powers[None, :]


def _column_orders(params: WishartParams, column: int) -> Tuple[int, int]:
    """(orde gamma, pangkat sigma) kolom Psi ke-1..n."""
    order = params.b - params.n + column
    power = params.a - params.n + column - 1
    return order, power


def _check_split(params: WishartParams, mu, i: int):
    if int(i) != i or not 1 <= i <= params.n:
        raise DomainError(f"split i must lie in 1..{params.n}, got {i!r}")
    mu = check_permutation(mu, params.n, int(i))
    return set(mu[:int(i) - 1])


def _check_point(x) -> float:
    x = float(x)
    if not np.isfinite(x) or x < 0:
        raise DomainError(f"x must be finite and nonnegative, got {x!r}")
    return x


def build_Psi(params: WishartParams, mu, i: int, x: float) -> np.ndarray:
    """Kolom mu_v berisi sigma_u^{a-n+mu_v-1} kali Gamma (v < i) atau gamma (v >= i)
    berorde b-n+mu_v di x/sigma_u."""
    upper = _check_split(params, mu, i)
    x = _check_point(x)
    sigma = params.sigma_array
    psi = np.empty((params.a, params.n))
    for column in range(1, params.n + 1):
        order, power = _column_orders(params, column)
        gamma = upper_incomplete_gamma if column in upper else lower_incomplete_gamma
        psi[:, column - 1] = sigma ** power * gamma(order, x / sigma)
    return psi


def build_Omega(params: WishartParams, mu, i: int, j: int, x: float, k: int = None) -> np.ndarray:
    """Psi dengan kolom j diganti turunannya terhadap x:
    -sigma^{a-b-1} e^{-x/sigma} x^{order-1} untuk kolom atas, + untuk kolom bawah."""
    if k is not None and not i <= k <= params.n:
        raise DomainError(f"split i={i} must not exceed k={k} <= n={params.n}")
    if int(j) != j or not 1 <= j <= params.n:
        raise DomainError(f"column j must lie in 1..{params.n}, got {j!r}")
    omega = build_Psi(params, mu, i, x)
    upper = set(tuple(mu)[:i - 1])
    sigma = params.sigma_array
    order, _ = _column_orders(params, int(j))
    sign = -1.0 if j in upper else 1.0
    omega[:, j - 1] = sign * sigma ** (params.a - params.b - 1) * np.exp(-x / sigma) * x ** (order - 1)
    return omega


def _literal_values(params: WishartParams, x: float, derivative: bool) -> np.ndarray:
    """[F_1..F_n](x) atau [f_1..f_n](x) langsung dari jumlah determinan."""
    G = build_G(params)
    scale = vandermonde_sign(params.a) * normalization_K(params)
    per_split = np.zeros(params.n)
    for i in range(1, params.n + 1):
        for mu in enumerate_permutations(params.n, i).members:
            if derivative:
                for j in range(1, params.n + 1):
                    per_split[i - 1] += np.linalg.det(np.hstack([G, build_Omega(params, mu, i, j, x)]))
            else:
                per_split[i - 1] += np.linalg.det(np.hstack([G, build_Psi(params, mu, i, x)]))
    return np.cumsum(per_split) / scale


# Bentuk polinomial pembangkit

def working_digits(params: WishartParams) -> int:
    """Digit desimal agar determinan pembangkit tetap akurat sampai GUARD_DIGITS.

    Pembulatan pada determinan a x a dengan entri <= n+2 berorde
    10^-dps (sqrt(a)(n+2))^a, lalu dibagi Vandermonde dari sigma/sigma_1;
    interpolasi di w = 1..n+1 menambah sekitar (n+1) log10(n+2) digit.
    """
    a, n = params.a, params.n
    sigma = params.sigma_array / params.sigma[0]
    gaps = (sigma[:, None] - sigma[None, :])[np.triu_indices(a, 1)]
    lost = -np.sum(np.log10(gaps)) + a * math.log10(math.sqrt(a) * (n + 2)) + (n + 1) * math.log10(n + 2)
    return GUARD_DIGITS + int(math.ceil(max(lost, 0.0)))


class EigenvalueDistribution:
    """Cdf dan pdf semua eigenvalue terurut dari satu hukum Wishart.

    Dengan L dan U kolom gamma tak lengkap bawah dan atas (teregularisasi),
    det[G, L + wU] / det[G, L + U] = sum_j w^j P_j(x), P_j = peluang tepat j
    eigenvalue di atas x; jumlah determinan per permutasi adalah koefisien
    polinomial ini. Polinomial dievaluasi di w = 1..n+1 dengan presisi
    ``digits`` lalu diinterpolasi. F_k = P_0 + ... + P_{k-1}.
    """

    def __init__(self, params: WishartParams):
        self.params = params
        self.digits = working_digits(params)
        a, b, n = params.a, params.b, params.n
        # law is scale-free: work with sigma / sigma_1 and x / sigma_1
        self._scale = params.sigma[0]
        with mpmath.workdps(self.digits):
            top = mpmath.mpf(params.sigma[0])
            self._sigma = [mpmath.mpf(s) / top for s in params.sigma]
            self._vandermonde = mpmath.fprod(
                self._sigma[v] - self._sigma[u] for u in range(a) for v in range(u + 1, a)
            )
            self._gram = [[s ** p for p in range(a - n)] for s in self._sigma]
            self._powers = [[s ** (a - n + j) for j in range(n)] for s in self._sigma]
            nodes = mpmath.matrix([[mpmath.mpf(w) ** j for j in range(n + 1)] for w in range(1, n + 2)])
            self._interpolation = mpmath.inverse(nodes)
        self._first_order = b - n + 1
        self._counts: Dict[float, np.ndarray] = {}
        self._rates: Dict[float, np.ndarray] = {}
        logger.debug(f"wishart a={a} b={b}: {self.digits} digit, sigma_a/sigma_1 = {params.sigma[-1] / self._scale:.3g}")

    def _columns(self, x):
        """Per baris: sigma_u^{pangkat_j} Q(orde_j, z) dan turunan kolom bawah ke-j, z = x/sigma_u."""
        tails, slopes = [], []
        for s, powers in zip(self._sigma, self._powers):
            z = x / s
            decay = mpmath.exp(-z)
            term = mpmath.mpf(1)
            partial = mpmath.mpf(0)
            row_tail, row_slope = [], []
            for order in range(1, self.params.b + 1):
                # term = z^(order-1) / (order-1)!
                partial += term
                if order >= self._first_order:
                    power = powers[order - self._first_order]
                    row_tail.append(power * decay * partial)
                    row_slope.append(power / s * term * decay)
                term = term * z / order
            tails.append(row_tail)
            slopes.append(row_slope)
        return tails, slopes

    def _point(self, x: float, derivative: bool) -> np.ndarray:
        """[P_0..P_n](x), atau turunannya terhadap x."""
        a, n = self.params.a, self.params.n
        offset = a - n
        if x == 0.0 and not derivative:
            return np.eye(n + 1)[n]
        with mpmath.workdps(self.digits):
            tails, slopes = self._columns(mpmath.mpf(x) / self._scale)
            # p(1) = 1 and p'(1) = 0
            values = [mpmath.mpf(0) if derivative else mpmath.mpf(1)]
            for w in range(2, n + 2):
                rows = [
                    gram + [p + (w - 1) * t for p, t in zip(powers, tail)]
                    for gram, powers, tail in zip(self._gram, self._powers, tails)
                ]
                if not derivative:
                    values.append(mpmath.det(mpmath.matrix(rows)) / self._vandermonde)
                    continue
                total = mpmath.mpf(0)
                for j in range(n):
                    column = offset + j
                    replaced = [row[:column] + [slope[j]] + row[column + 1:] for row, slope in zip(rows, slopes)]
                    total += mpmath.det(mpmath.matrix(replaced))
                values.append((1 - w) * total / self._vandermonde)
            coefficients = self._interpolation * mpmath.matrix(values)
            result = np.array([float(coefficients[j]) for j in range(n + 1)])
        return result / self._scale if derivative else result

    def _table(self, x, derivative: bool) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(~np.isfinite(x)) or np.any(x < 0):
            raise DomainError("x must be finite and nonnegative")
        cache = self._rates if derivative else self._counts
        out = np.empty((x.size, self.params.n + 1))
        for index, point in enumerate(x):
            key = float(point)
            if key not in cache:
                cache[key] = self._point(key, derivative)
            out[index] = cache[key]
        return out

    def counts(self, x) -> np.ndarray:
        """P_j(x) = P(tepat j eigenvalue > x) untuk j = 0..n, shape (len(x), n+1)."""
        return self._table(x, derivative=False)

    def cdf(self, x) -> np.ndarray:
        """F_k(x) untuk k = 1..n, shape (len(x), n)."""
        values = np.cumsum(self.counts(x)[:, :-1], axis=1)
        return _checked_cdf(values, self.params)

    def pdf(self, x) -> np.ndarray:
        """f_k(x) untuk k = 1..n, shape (len(x), n)."""
        values = np.cumsum(self._table(x, derivative=True)[:, :-1], axis=1)
        return _checked_pdf(values, self.params)

    def exceedance(self, x, eta: int) -> np.ndarray:
        """sum_{k<=eta} P(lambda_k > x) = E[min(N_x, eta)], N_x jumlah eigenvalue di atas x."""
        self.cdf(x)  # integrity check on the cached counts
        weights = np.minimum(np.arange(self.params.n + 1), eta)
        return np.clip(self.counts(x), 0.0, 1.0) @ weights

    def survival(self, x, k: int) -> np.ndarray:
        """P(lambda_k > x)."""
        return 1.0 - self.cdf(x)[:, k - 1]


def _checked_cdf(values: np.ndarray, params: WishartParams) -> np.ndarray:
    if np.any(~np.isfinite(values)) or values.min() < -CDF_BOUND_SLACK or values.max() > 1 + CDF_BOUND_SLACK:
        raise NumericalIntegrityError(
            f"cdf left [0, 1] for a={params.a} b={params.b} sigma={params.sigma}: "
            f"range [{np.nanmin(values):.3g}, {np.nanmax(values):.3g}]"
        )
    return np.clip(values, 0.0, 1.0)


def _checked_pdf(values: np.ndarray, params: WishartParams) -> np.ndarray:
    # threshold follows the height of the density
    limit = -PDF_NEGATIVE_CLAMP * max(1.0, float(np.max(np.abs(values), initial=0.0)))
    if np.any(~np.isfinite(values)) or values.min() < limit:
        raise NumericalIntegrityError(
            f"negative pdf for a={params.a} b={params.b} sigma={params.sigma}: "
            f"min {np.nanmin(values):.3g}"
        )
    return np.clip(values, 0.0, None)


@lru_cache(maxsize=64)
def distribution_for(params: WishartParams) -> EigenvalueDistribution:
    return EigenvalueDistribution(params)


def _marginal(density: EigenvalueDensity, x, form: str, derivative: bool):
    if form not in FORMS:
        raise DomainError(f"form must be one of {FORMS}, got {form!r}")
    scalar = np.ndim(x) == 0
    if form == 'extended':
        dist = distribution_for(density.params)
        values = dist.pdf(x) if derivative else dist.cdf(x)
    else:
        points = np.atleast_1d(np.asarray(x, dtype=float))
        raw = np.array([_literal_values(density.params, point, derivative) for point in points])
        values = _checked_pdf(raw, density.params) if derivative else _checked_cdf(raw, density.params)
    column = values[:, density.k - 1]
    return float(column[0]) if scalar else column


def eigenvalue_pdf(density: EigenvalueDensity, x, form: str = 'extended'):
    """f_{lambda_k}(x); skalar masuk, skalar keluar."""
    return _marginal(density, x, form, derivative=True)


def eigenvalue_cdf(density: EigenvalueDensity, x, form: str = 'extended'):
    """F_{lambda_k}(x) = P(lambda_k <= x)."""
    return _marginal(density, x, form, derivative=False)


# Integral

def truncation_point(params: WishartParams) -> float:
    """sigma_1 (m + 10 sqrt(m) + 40): di atasnya ekor e^{-x/sigma_1} x^{m-1} dapat diabaikan."""
    m = params.m
    return params.sigma[0] * (m + 10.0 * math.sqrt(m) + 40.0)


def quadrature_for(params: WishartParams, quad: QuadratureSpec) -> QuadratureSpec:
    """Lengkapi x_max dan x_min: panel geometris dari GRADED_PANEL_FLOOR * sigma_a,
    supaya eigenvalue berskala sigma_a tetap teresolusi."""
    if quad.transform != 'truncate':
        return quad
    x_max = quad.x_max if quad.x_max is not None else truncation_point(params)
    x_min = quad.x_min if quad.x_min is not None else min(GRADED_PANEL_FLOOR * params.sigma[-1], 0.5 * x_max)
    return replace(quad, x_max=x_max, x_min=x_min)


def eigenchannel_capacity(R: CorrelationMatrix, b: int, rho: float, eta: int,
                          quad: QuadratureSpec = QuadratureSpec()) -> float:
    """sum_{k<=eta} E[log2(1 + rho lambda_k)] untuk W ~ CN Wishart dengan R di sisi a."""
    b = validate_positive_integer(b, 'b')
    return eigenchannel_capacity_for(WishartParams.from_correlation(R, b), rho, eta, quad)


def eigenchannel_capacity_for(params: WishartParams, rho: float, eta: int,
                              quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral log2(1 + rho x) sum_k f_k(x), dihitung setelah integrasi parsial sebagai
    integral rho / ((1 + rho x) ln 2) * sum_k P(lambda_k > x)."""
    if int(eta) != eta or not 1 <= eta <= params.n:
        raise DomainError(f"eta must lie in 1..n={params.n}, got {eta!r}")
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    dist = distribution_for(params)

    def integrand(x):
        return rho / ((1.0 + rho * x) * math.log(2.0)) * dist.exceedance(x, int(eta))

    value = integrate_semi_infinite(integrand, quadrature_for(params, quad))
    logger.debug(f"C(a={params.a}, b={params.b}, rho={rho:.4g}, eta={eta}) = {value:.10g}")
    return max(value, 0.0)


def eigenvalue_mean(params: WishartParams, k: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """E[lambda_k] = integral P(lambda_k > x) dx."""
    EigenvalueDensity(params, k)
    dist = distribution_for(params)
    return integrate_semi_infinite(lambda x: dist.survival(x, k), quadrature_for(params, quad))


def dump_pdf_table(params: WishartParams, xs, directory) -> List[Path]:
    """Tulis file pdf_k<k>.txt berisi baris 'x f(x)', satu file per indeks eigenvalue."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    xs = np.asarray(xs, dtype=float)
    values = distribution_for(params).pdf(xs)
    paths = []
    for k in range(1, params.n + 1):
        path = directory / f"pdf_k{k}.txt"
        lines = [f"{x:.9g} {f:.9g}" for x, f in zip(xs, values[:, k - 1])]
        path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
        paths.append(path)
    logger.info(f"📝 {len(paths)} tabel pdf ditulis ke {directory}")
    return paths
