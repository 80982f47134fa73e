"""Ergodic secrecy rate eksak, aproksimasi dan asimtotik dari skema AN."""
import logging
import math
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from config.constants import METHODS
from models.errors import DomainError, validate_positive_real
from models.quadrature import QuadratureSpec
from models.results import RateBreakdown, S1SearchResult
from models.system import SystemConfig
from models.wishart import WishartParams
from services.an_scheme import monte_carlo_secrecy
from services.channel import RandomSource
from services.correlation import determinant, principal_minor_sums, scenario_correlations
from services.numerics import digamma_integer
from services.wishart import eigenchannel_capacity_for, eigenvalue_mean

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1024)
def _capacity(params: WishartParams, rho: float, eta: int, quad: QuadratureSpec) -> float:
    return eigenchannel_capacity_for(params, rho, eta, quad)


@lru_cache(maxsize=1024)
def _mean(params: WishartParams, k: int, quad: QuadratureSpec) -> float:
    return eigenvalue_mean(params, k, quad)


def exact_ergodic_secrecy_rate(config: SystemConfig, quad: QuadratureSpec = QuadratureSpec()) -> RateBreakdown:
    """[C_H(R_r, s1) + C_H3(R_e, n1) - C_H4(R_e, e)]^+ lewat marginal eigenvalue."""
    bob, eve = scenario_correlations(config)
    rho = config.rho
    c_main = _capacity(WishartParams.from_correlation(bob, config.t), rho, config.s1, quad)
    c_h3 = c_h4 = 0.0
    if eve is not None:
        if config.s2 > 0:
            c_h3 = _capacity(WishartParams.from_correlation(eve, config.s2), rho, config.n1, quad)
        c_h4 = _capacity(WishartParams.from_correlation(eve, config.t), rho, config.e, quad)
    breakdown = RateBreakdown.assemble(c_main, c_h3, c_h4, 'exact')
    logger.debug(f"rate eksak {config.format_message()}: {breakdown.to_dict()}")
    return breakdown


def _minor_series(rho: float, minors: np.ndarray, top: int) -> float:
    """1 + sum_k rho^k prod_{i<k}(top - i) rho_k."""
    total = 1.0
    falling = 1.0
    for k, minor in enumerate(minors, start=1):
        falling *= top - (k - 1)
        total += rho ** k * falling * minor
    return total


def approx_ergodic_secrecy_rate(config: SystemConfig, quad: QuadratureSpec = QuadratureSpec()) -> RateBreakdown:
    """[chi1 + chi2]^+ dengan chi1 dari rata-rata eigenvalue (Jensen) dan chi2 dari
    jumlah minor utama R_e."""
    bob, eve = scenario_correlations(config)
    rho = config.rho
    bob_params = WishartParams.from_correlation(bob, config.t)
    chi1 = sum(math.log2(1.0 + rho * _mean(bob_params, i, quad)) for i in range(1, config.s1 + 1))
    c_h3 = c_h4 = 0.0
    if eve is not None:
        minors = principal_minor_sums(eve)
        if config.s2 > 0:
            c_h3 = math.log2(_minor_series(rho, minors, max(config.e, config.s2)))
        c_h4 = math.log2(_minor_series(rho, minors, config.t))
    breakdown = RateBreakdown.assemble(chi1, c_h3, c_h4, 'approx')
    logger.debug(f"rate aproksimasi {config.format_message()}: {breakdown.to_dict()}")
    return breakdown


def asymptotic_largest_eigen_mean(c: float, sigma1: float) -> float:
    """Limit array besar E[lambda_1(H H^H / t)] untuk r/t -> c dengan R_r ber-spike."""
    if not 0 < c < 1:
        raise DomainError(f"c must lie in (0, 1), got {c!r}")
    sigma1 = validate_positive_real(sigma1, 'sigma1')
    edge = 1.0 + math.sqrt(c)
    if sigma1 > edge:
        return sigma1 * (1.0 + c / (sigma1 - 1.0))
    return edge ** 2


def chi1_high_low_snr(config: SystemConfig, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """n log2(rho) + hbar + log2 det R_r, berlaku bila setiap subkanal membawa pesan."""
    n, m = min(config.t, config.r), max(config.t, config.r)
    if config.s1 != n:
        raise DomainError(f"the high/low SNR form needs s1 = min(t, r) = {n}, got s1={config.s1}")
    bob, _ = scenario_correlations(config)
    rho = config.rho
    weakest = _mean(WishartParams.from_correlation(bob, config.t), n, quad)
    if rho * weakest >= 1.0:
        hbar = sum(math.log2(m - i) for i in range(n))
        regime = 'tinggi'
    else:
        hbar = sum(digamma_integer(m - i) for i in range(n)) / math.log(2.0)
        regime = 'rendah'
    value = n * math.log2(rho) + hbar + math.log2(determinant(bob))
    logger.debug(f"chi1 bentuk SNR {regime}: {value:.6f} (rho E[lambda_n] = {rho * weakest:.4g})")
    return value


def search_best_s1(template: SystemConfig, quad: QuadratureSpec = QuadratureSpec()) -> S1SearchResult:
    """Rate eksak untuk setiap s1 = 1..min(t, r); seri dimenangkan s1 yang lebih kecil."""
    rates = []
    best, best_rate = 1, -math.inf
    for s1 in range(1, min(template.t, template.r) + 1):
        rate = exact_ergodic_secrecy_rate(template.with_s1(s1), quad).secrecy_rate
        rates.append(rate)
        if rate > best_rate:
            best, best_rate = s1, rate
    result = S1SearchResult(s1_star=best, rates=tuple(rates), snr_db=template.snr_db)
    logger.info(f"🔎 s1 terbaik = {best} pada {template.snr_db:.2f} dB")
    return result


def secrecy_rate_for_method(config: SystemConfig, method: str, quad: QuadratureSpec = QuadratureSpec(),
                            trials: Optional[int] = None, rng: Optional[RandomSource] = None) -> Tuple[float, Optional[float]]:
    """(rate, stderr) untuk satu method; stderr None untuk method deterministik."""
    if method == 'exact':
        return exact_ergodic_secrecy_rate(config, quad).secrecy_rate, None
    if method == 'approx':
        return approx_ergodic_secrecy_rate(config, quad).secrecy_rate, None
    if method == 'monte-carlo':
        if trials is None or rng is None:
            raise DomainError("monte-carlo needs trials and a random stream")
        estimate = monte_carlo_secrecy(config, trials, rng)
        return estimate.mean, estimate.stderr
    raise DomainError(f"method must be one of {METHODS}, got {method!r}")
