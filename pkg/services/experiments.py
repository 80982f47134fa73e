"""Sweep parameter atas satu variabel skenario dan pengecekan teori lawan simulasi."""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import List, Optional

from config.constants import MIN_VALIDATION_TRIALS, VALIDATION_Z_LIMIT
from models.errors import ConfigurationError
from models.quadrature import QuadratureSpec
from models.results import ValidationEntry, ValidationReport
from models.sweep import SweepRow, SweepSpec
from models.system import RngStream, SystemConfig
from services.an_scheme import monte_carlo_secrecy
from services.channel import derive_stream
from services.rate import exact_ergodic_secrecy_rate, secrecy_rate_for_method

logger = logging.getLogger(__name__)


def apply_variable(base: SystemConfig, variable: str, value: float, s1: Optional[int] = None) -> SystemConfig:
    """Skenario dengan satu variabel sweep diisi ``value`` (dan split dipindah ke ``s1``)."""
    split = {} if s1 is None else {'s1': s1, 's2': base.t - s1}
    if variable == 'snr_db':
        return replace(base, power_P=float(10.0 ** (value / 10.0)), **split)
    if variable == 'r_antennas':
        r = int(round(value))
        return replace(base, r=r, bob_corr=replace(base.bob_corr, antennas=r), **split)
    side, _, who = variable.rpartition('_')
    field = {'d': 'spacing_d', 'aoa': 'mean_aoa', 'ras': 'ras'}.get(side)
    if field is None or who not in ('bob', 'eve'):
        raise ConfigurationError(f"unknown sweep variable {variable!r}")
    attribute = 'bob_corr' if who == 'bob' else 'eve_corr'
    corr = replace(getattr(base, attribute), **{field: float(value)})
    return replace(base, **{attribute: corr}, **split)


def _evaluate_row(task) -> SweepRow:
    """Satu sel (titik grid, s1, method); error tetap di barisnya."""
    index, value, s1, method, spec, quad = task
    started = time.perf_counter()
    rate, stderr, error = math.nan, None, None
    try:
        config = apply_variable(spec.base, spec.variable, value, s1)
        rng = derive_stream(RngStream(spec.seed), index, s1)
        rate, stderr = secrecy_rate_for_method(config, method, quad, spec.trials, rng)
    except Exception as e:
        error = f"{type(e).__name__}: {e}"
        logger.warning(f"⚠️  {spec.variable}={value} s1={s1} {method}: {error}")
    elapsed = int(round((time.perf_counter() - started) * 1000))
    return SweepRow(
        variable=spec.variable, value=value, s1=s1, method=method,
        rate=rate, stderr=stderr, wall_time_ms=elapsed, error=error,
    )


def run_sweep(spec: SweepSpec, quad: QuadratureSpec = QuadratureSpec(), jobs: int = 1) -> List[SweepRow]:
    """Satu baris per titik grid x s1 x method, dengan urutan bersarang itu."""
    tasks = [
        (index, value, s1, method, spec, quad)
        for index, value in enumerate(spec.grid)
        for s1 in spec.s1_values
        for method in spec.methods
    ]
    logger.info(f"🚀 Sweep '{spec.name}': {len(tasks)} baris atas {spec.variable}, {jobs} worker")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate_row, tasks))
    else:
        rows = [_evaluate_row(task) for task in tasks]
    failed = sum(row.error is not None for row in rows)
    if failed:
        logger.warning(f"⚠️  {failed} dari {len(rows)} baris gagal")
    else:
        logger.info(f"✅ Sweep '{spec.name}' selesai")
    return rows


def validate(config: SystemConfig, trials: int, seed: int, quad: QuadratureSpec = QuadratureSpec(),
             theory_config: Optional[SystemConfig] = None) -> ValidationReport:
    """Rate eksak lawan rata-rata Monte Carlo tanpa clamp untuk setiap s1.

    ``theory_config`` mengganti skenario hanya di sisi teori, sehingga model
    yang sengaja salah bisa dicek gagal.
    """
    if trials < MIN_VALIDATION_TRIALS:
        raise ConfigurationError(f"validation needs at least {MIN_VALIDATION_TRIALS} trials, got {trials}")
    theory = theory_config or config
    root = RngStream(seed)
    report = ValidationReport(trials=trials, seed=seed)
    for s1 in range(1, min(config.t, config.r) + 1):
        exact = exact_ergodic_secrecy_rate(theory.with_s1(s1), quad).unclamped
        estimate = monte_carlo_secrecy(config.with_s1(s1), trials, derive_stream(root, s1))
        gap = exact - estimate.unclamped_mean
        if estimate.unclamped_stderr > 0:
            z = gap / estimate.unclamped_stderr
        else:
            z = 0.0 if gap == 0 else math.copysign(math.inf, gap)
        entry = ValidationEntry(
            s1=s1, exact=exact, mc_mean=estimate.unclamped_mean,
            mc_stderr=estimate.unclamped_stderr, z=z, passed=abs(z) <= VALIDATION_Z_LIMIT,
        )
        report.entries.append(entry)
        logger.info(f"{'✅' if entry.passed else '❌'} s1={s1}: z = {z:.3f}")
    return report
