from dataclasses import replace

import numpy as np
import pytest

from models.errors import ConfigurationError, DomainError, RankError
from models.system import ChannelRealization, RngStream
from services.an_scheme import (
    build_precoders,
    capacity_terms,
    main_capacity,
    main_capacity_eigen,
    monte_carlo_secrecy,
    preprocess_receive,
    wiretap_capacity,
    wiretap_capacity_ratio_form,
)
from services.channel import as_generator, sample_iid_cn, sample_realization


@pytest.fixture
def gen():
    return as_generator(RngStream(seed=99))


def test_message_and_noise_directions_decouple_at_bob(gen):
    worst = 0.0
    for _ in range(1000):
        H = sample_iid_cn(4, 6, gen)
        pair = build_precoders(H, 2)
        worst = max(worst, np.max(np.abs((H @ pair.B).conj().T @ (H @ pair.Z))))
    assert worst < 1e-9


def test_eve_still_sees_the_noise_directions(gen):
    # AN is orthogonal to the message only through Bob's channel
    smallest_bob = smallest_eve = np.inf
    for _ in range(200):
        H, He = sample_iid_cn(4, 6, gen), sample_iid_cn(4, 6, gen)
        pair = build_precoders(H, 2)
        smallest_bob = min(smallest_bob, np.linalg.norm((H @ pair.B).conj().T @ (He @ pair.Z)))
        smallest_eve = min(smallest_eve, np.linalg.norm((He @ pair.B).conj().T @ (He @ pair.Z)))
    assert smallest_bob > 1e-3
    assert smallest_eve > 1e-3


def test_precoder_shapes_and_unitarity(gen):
    H = sample_iid_cn(4, 6, gen)
    pair = build_precoders(H, 3)
    assert pair.B.shape == (6, 3) and pair.Z.shape == (6, 3)
    assert pair.s1 == 3 and pair.s2 == 3
    np.testing.assert_allclose(pair.U.conj().T @ pair.U, np.eye(6), atol=1e-12)
    assert np.all(np.diff(pair.eigvals) <= 0)


def test_identity_channel_gives_orthonormal_message_basis():
    pair = build_precoders(np.eye(4), 2)
    np.testing.assert_allclose(pair.eigvals, np.ones(4))
    np.testing.assert_allclose(pair.B.conj().T @ pair.B, np.eye(2), atol=1e-12)


def test_rank_and_domain_errors(gen):
    left = sample_iid_cn(4, 2, gen)
    right = sample_iid_cn(2, 6, gen)
    with pytest.raises(RankError):
        build_precoders(left @ right, 3)
    with pytest.raises(DomainError):
        build_precoders(sample_iid_cn(4, 6, gen), 0)
    with pytest.raises(DomainError):
        build_precoders(sample_iid_cn(4, 6, gen), 5)


def test_main_capacity_matches_eigen_form(gen):
    H = sample_iid_cn(4, 6, gen)
    pair = build_precoders(H, 2)
    assert main_capacity(H, pair.B, 3.0) == pytest.approx(main_capacity_eigen(pair.eigvals, 2, 3.0), abs=1e-9)


def test_wiretap_forms_agree(gen):
    H = sample_iid_cn(4, 6, gen)
    He = sample_iid_cn(4, 6, gen)
    pair = build_precoders(H, 2)
    direct = wiretap_capacity(He, pair.B, pair.Z, 2.5)
    assert direct == pytest.approx(wiretap_capacity_ratio_form(He, pair.B, pair.Z, 2.5), abs=1e-9)


def test_wiretap_needs_more_transmit_antennas(gen):
    H = sample_iid_cn(4, 4, gen)
    pair = build_precoders(H, 2)
    with pytest.raises(ConfigurationError):
        wiretap_capacity(sample_iid_cn(4, 4, gen), pair.B, pair.Z, 1.0)


def test_more_noise_streams_never_help_eve(gen):
    H = sample_iid_cn(4, 6, gen)
    He = sample_iid_cn(4, 6, gen)
    rates = []
    for s1 in range(1, 5):
        pair = build_precoders(H, s1)
        rates.append(wiretap_capacity(He, pair.B, pair.Z, 3.0))
    assert np.all(np.diff(rates) >= -1e-9)


def test_preprocessing_removes_artificial_noise(gen):
    H = sample_iid_cn(4, 6, gen)
    pair = build_precoders(H, 2)
    x = sample_iid_cn(2, 1, gen)[:, 0]
    v = sample_iid_cn(4, 1, gen)[:, 0]
    received = H @ (pair.B @ x + pair.Z @ v)
    np.testing.assert_allclose(preprocess_receive(received, H, pair.B), pair.eigvals[:2] * x, atol=1e-9)


def test_capacity_terms_clamp(default_config, rng):
    realization = sample_realization(default_config, rng)
    terms = capacity_terms(realization, 2, default_config.rho)
    assert terms.secrecy == pytest.approx(max(terms.c_main - terms.c_wiretap, 0.0))
    without_eve = ChannelRealization(H=realization.H, He=np.zeros((0, 6), dtype=complex))
    assert capacity_terms(without_eve, 2, default_config.rho).c_wiretap == 0.0


def test_monte_carlo_statistics(small_config, rng):
    estimate = monte_carlo_secrecy(small_config, 4_000, rng)
    assert estimate.trials == 4_000
    assert estimate.mean >= estimate.unclamped_mean
    assert 0.0 <= estimate.clamp_frequency <= 1.0
    assert estimate.unclamped_mean == pytest.approx(estimate.mean_main - estimate.mean_wiretap)
    assert estimate.stderr > 0


def test_monte_carlo_is_reproducible(small_config, rng):
    first = monte_carlo_secrecy(small_config, 12_000, rng)
    second = monte_carlo_secrecy(small_config, 12_000, rng)
    assert first == second


def test_monte_carlo_without_eve(small_config, rng):
    config = replace(small_config, e=0)
    estimate = monte_carlo_secrecy(config, 2_000, rng)
    assert estimate.mean_wiretap == 0.0
    assert estimate.clamp_frequency == 0.0
    assert estimate.mean == pytest.approx(estimate.mean_main)


def test_monte_carlo_rejects_bad_trials(small_config, rng):
    with pytest.raises(DomainError):
        monte_carlo_secrecy(small_config, 0, rng)
