from dataclasses import replace

import numpy as np
import pytest

from models.correlation import CorrelationSpec
from models.errors import ConfigurationError, DegenerateCorrelationError
from services.correlation import (
    build_correlation,
    correlation_from_entries,
    coupling,
    determinant,
    identity_correlation,
    largest_eigenvalue,
    principal_minor_sums,
    regularize_spectrum,
    scenario_correlations,
)

SPACING_GRID = np.round(np.arange(0.3, 3.01, 0.3), 12)
AOA_GRID = np.arange(10.0, 90.1, 10.0)
RAS_GRID = np.arange(2.0, 40.1, 2.0)


def test_matrix_structure(default_spec):
    R = build_correlation(default_spec)
    np.testing.assert_allclose(R.entries, R.entries.conj().T, atol=1e-15)
    np.testing.assert_allclose(np.diag(R.entries), np.ones(4))
    assert np.all(np.diff(R.eigenvalues) < 0)
    assert R.eigenvalues.sum() == pytest.approx(4.0)
    assert R.raw_eigenvalues.sum() == pytest.approx(4.0)


def test_spec_validation():
    with pytest.raises(ConfigurationError):
        CorrelationSpec(antennas=4, spacing_d=0.8, mean_aoa=180.0, ras=10.0)
    with pytest.raises(ConfigurationError):
        CorrelationSpec(antennas=0, spacing_d=0.8, mean_aoa=30.0, ras=10.0)


def test_spectrum_depends_only_on_coupling():
    first = CorrelationSpec(antennas=4, spacing_d=0.8, mean_aoa=30.0, ras=10.0)
    second = CorrelationSpec(antennas=4, spacing_d=0.4, mean_aoa=90.0, ras=10.0)
    assert coupling(first) == pytest.approx(coupling(second))
    np.testing.assert_allclose(
        build_correlation(first).raw_eigenvalues,
        build_correlation(second).raw_eigenvalues,
        atol=1e-9,
    )


@pytest.mark.parametrize("field,grid", [
    ('spacing_d', SPACING_GRID),
    ('mean_aoa', AOA_GRID),
    ('ras', RAS_GRID),
])
def test_largest_eigenvalue_falls_and_determinant_rises(default_spec, field, grid):
    tops, dets = [], []
    for value in grid:
        R = build_correlation(CorrelationSpec(**{**default_spec.to_dict(), field: float(value)}))
        tops.append(largest_eigenvalue(R))
        dets.append(determinant(R))
    assert np.all(np.diff(tops) <= 1e-9)
    assert np.all(np.diff(dets) >= -1e-9)


def test_principal_minor_identity(default_spec):
    R = build_correlation(default_spec)
    minors = principal_minor_sums(R)
    direct = np.real(np.linalg.det(np.eye(4) + R.entries))
    assert direct == pytest.approx(1.0 + minors.sum(), abs=1e-9)
    assert minors[0] == pytest.approx(4.0)
    assert minors[-1] == pytest.approx(np.real(np.linalg.det(R.entries)), abs=1e-12)


def test_identity_minors_are_binomials():
    np.testing.assert_allclose(principal_minor_sums(identity_correlation(4)), [4, 6, 4, 1])


def test_identity_is_regularized_but_reports_raw_spectrum():
    R = identity_correlation(3)
    assert R.regularized
    assert np.all(np.diff(R.eigenvalues) < 0)
    assert R.eigenvalues.sum() == pytest.approx(3.0)
    assert largest_eigenvalue(R) == pytest.approx(1.0)
    assert determinant(R) == pytest.approx(1.0)


def test_regularize_spectrum_separates_rank_deficient_values():
    sigma, moved = regularize_spectrum(np.array([2.0, 1.0, 1.0, 0.0]))
    assert moved
    gaps = -np.diff(sigma)
    assert np.all(gaps > 0.5e-6 * sigma[0])
    assert sigma[-1] > 0
    assert sigma.sum() == pytest.approx(4.0)


def test_regularize_spectrum_keeps_separated_values():
    raw = np.array([2.5, 1.0, 0.5])
    sigma, moved = regularize_spectrum(raw)
    assert not moved
    np.testing.assert_allclose(sigma, raw * 3.0 / raw.sum())


def test_not_semidefinite_is_rejected():
    with pytest.raises(DegenerateCorrelationError):
        correlation_from_entries(np.diag([1.0, -1.0]))


def test_caller_array_stays_writable():
    entries = np.eye(2, dtype=complex)
    correlation_from_entries(entries)
    entries[0, 0] = 2.0


def test_unknown_eve_correlation_is_identity(default_config):
    bob, eve = scenario_correlations(replace(default_config, eve_corr_known=False))
    np.testing.assert_allclose(eve.entries, np.eye(4))
    assert bob.size == 4


def _random_correlation(gen, size):
    A = gen.normal(size=(size, size + 2)) + 1j * gen.normal(size=(size, size + 2))
    M = A @ A.conj().T
    scale = 1.0 / np.sqrt(np.real(np.diag(M)))
    return M * scale[:, None] * scale[None, :] * gen.uniform(0.5, 2.0)


def _schur_pairs():
    gen = np.random.default_rng(17)
    specs = [
        CorrelationSpec(antennas=4, spacing_d=d, mean_aoa=aoa, ras=ras)
        for d, aoa, ras in [(0.8, 30.0, 10.0), (1.5, 60.0, 20.0), (2.4, 45.0, 35.0), (0.9, 80.0, 25.0)]
    ]
    pairs = [(build_correlation(a).entries, build_correlation(b).entries) for a in specs for b in specs]
    pairs += [(_random_correlation(gen, 5), _random_correlation(gen, 5)) for _ in range(20)]
    return pairs


def test_schur_product_does_not_raise_the_top_eigenvalue():
    for A, B in _schur_pairs():
        top = np.linalg.eigvalsh(A * B).max()
        bound = np.real(np.diag(A)).max() * np.linalg.eigvalsh(B).max()
        assert top <= bound * (1 + 1e-12)


def test_schur_product_determinant_bound():
    for A, B in _schur_pairs():
        product = np.prod(np.linalg.eigvalsh(A * B))
        bound = np.prod(np.linalg.eigvalsh(B)) * np.prod(np.real(np.diag(A)))
        assert product >= bound * (1 - 1e-8)
