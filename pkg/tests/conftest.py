import pytest

from models.correlation import CorrelationSpec
from models.system import RngStream, SystemConfig


@pytest.fixture
def default_spec():
    """Four-antenna array of the SNR sweep: d=0.8, AoA 30 deg, RAS 10 deg."""
    return CorrelationSpec(antennas=4, spacing_d=0.8, mean_aoa=30.0, ras=10.0)


@pytest.fixture
def default_config(default_spec):
    return SystemConfig.from_snr_db(6, 4, 4, 5.0, 2, default_spec, default_spec)


@pytest.fixture
def small_config():
    """t=4, r=e=2: cheap enough for Monte Carlo checks."""
    spec = CorrelationSpec(antennas=2, spacing_d=0.8, mean_aoa=30.0, ras=10.0)
    return SystemConfig.from_snr_db(4, 2, 2, 5.0, 1, spec, spec)


@pytest.fixture
def rng():
    return RngStream(seed=20190417)
