import math

import numpy as np
import pytest
from scipy import special

from models.errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    NotPositiveSemidefiniteError,
    validate_positive_integer,
)
from models.quadrature import QuadratureSpec
from services.numerics import (
    check_permutation,
    digamma_integer,
    enumerate_permutations,
    hermitian_eig,
    hermitian_sqrt,
    integrate_semi_infinite,
    lower_incomplete_gamma,
    lu_determinant,
    upper_incomplete_gamma,
)


@pytest.mark.parametrize("eps", range(1, 11))
def test_gamma_pair_sums_to_factorial(eps):
    x = np.array([0.0, 0.5, 3.0, 20.0])
    total = upper_incomplete_gamma(eps, x) + lower_incomplete_gamma(eps, x)
    np.testing.assert_allclose(total, math.factorial(eps - 1), rtol=1e-12)


@pytest.mark.parametrize("eps", [1, 2, 5, 9])
def test_upper_gamma_matches_scipy(eps):
    x = np.linspace(0.0, 25.0, 11)
    regularized = upper_incomplete_gamma(eps, x) / math.factorial(eps - 1)
    np.testing.assert_allclose(regularized, special.gammaincc(eps, x), rtol=1e-12, atol=1e-300)


def test_gamma_limits():
    assert upper_incomplete_gamma(4, 0.0) == pytest.approx(6.0)
    assert lower_incomplete_gamma(4, 0.0) == 0.0
    assert upper_incomplete_gamma(3, np.inf) == 0.0
    assert isinstance(upper_incomplete_gamma(2, 1.0), float)


@pytest.mark.parametrize("eps,x", [(0, 1.0), (2.5, 1.0), (2, -1.0), (2, np.nan)])
def test_gamma_domain(eps, x):
    with pytest.raises(DomainError):
        upper_incomplete_gamma(eps, x)


def test_digamma_integer():
    assert digamma_integer(1) == pytest.approx(-0.5772156649)
    assert digamma_integer(4) == pytest.approx(-0.5772156649 + 1 + 1 / 2 + 1 / 3)
    assert digamma_integer(7) == pytest.approx(special.digamma(7), abs=1e-9)


def test_enumerate_permutations():
    family = enumerate_permutations(3, 2)
    assert family.members == ((1, 2, 3), (2, 1, 3), (3, 1, 2))
    assert family.upper_sets() == [frozenset({1}), frozenset({2}), frozenset({3})]
    assert enumerate_permutations(4, 1).members == ((1, 2, 3, 4),)
    for n in range(1, 6):
        for split in range(1, n + 1):
            assert len(enumerate_permutations(n, split)) == math.comb(n, split - 1)


def test_enumerate_permutations_domain():
    with pytest.raises(DomainError):
        enumerate_permutations(3, 4)
    with pytest.raises(DomainError):
        enumerate_permutations(0, 1)


def test_check_permutation():
    assert check_permutation((3, 1, 2), 3, 2) == (3, 1, 2)
    with pytest.raises(ContractError):
        check_permutation((2, 1, 3), 3, 1)
    with pytest.raises(ContractError):
        check_permutation((1, 1, 3), 3, 2)


def test_hermitian_eig_orders_and_reconstructs():
    gen = np.random.default_rng(7)
    A = gen.normal(size=(5, 5)) + 1j * gen.normal(size=(5, 5))
    M = A @ A.conj().T
    w, V = hermitian_eig(M)
    assert np.all(np.diff(w) <= 0)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(5), atol=1e-12)
    np.testing.assert_allclose((V * w) @ V.conj().T, M, atol=1e-10)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ContractError):
        hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ContractError):
        hermitian_eig(np.ones((2, 3)))


def test_hermitian_sqrt():
    M = np.array([[2.0, 1j], [-1j, 2.0]])
    S = hermitian_sqrt(M)
    np.testing.assert_allclose(S @ S.conj().T, M, atol=1e-12)
    with pytest.raises(NotPositiveSemidefiniteError):
        hermitian_sqrt(np.diag([1.0, -1.0]))


def test_hermitian_sqrt_on_random_psd_matrices():
    gen = np.random.default_rng(2024)
    for _ in range(1000):
        size = int(gen.integers(2, 9))
        rank = int(gen.integers(1, size + 1))
        A = gen.normal(size=(size, rank)) + 1j * gen.normal(size=(size, rank))
        M = A @ A.conj().T
        S = hermitian_sqrt(M)
        np.testing.assert_allclose(S @ S.conj().T, M, atol=1e-9 * max(1.0, np.abs(M).max()))
        np.testing.assert_allclose(S, S.conj().T, atol=1e-10 * max(1.0, np.abs(S).max()))
        assert np.linalg.eigvalsh(S).min() > -1e-7


def test_lu_determinant():
    gen = np.random.default_rng(3)
    M = gen.normal(size=(4, 4))
    assert lu_determinant(M) == pytest.approx(np.linalg.det(M), rel=1e-12)
    assert lu_determinant(np.empty((0, 0))) == 1.0


def test_integrate_exponential_with_searched_truncation():
    assert integrate_semi_infinite(lambda x: np.exp(-x)) == pytest.approx(1.0, abs=1e-9)


def test_integrate_exp_map():
    spec = QuadratureSpec(transform='exp-map', scale=2.0)
    assert integrate_semi_infinite(lambda x: x * np.exp(-x / 2), spec) == pytest.approx(4.0, abs=1e-8)


def test_integrate_scalar_integrand():
    spec = QuadratureSpec(x_max=40.0)
    value = integrate_semi_infinite(lambda x: math.exp(-2 * x), spec, vectorized=False)
    assert value == pytest.approx(0.5, abs=1e-9)


def test_integrate_reports_both_estimates_on_failure():
    spec = QuadratureSpec(x_max=10.0, tolerance=1e-15, max_refinements=1)
    with pytest.raises(ConvergenceError) as info:
        integrate_semi_infinite(lambda x: np.cos(40 * x) * np.exp(-x), spec)
    assert info.value.previous is not None
    assert info.value.latest is not None
    assert info.value.previous != info.value.latest


def test_geometric_panels_resolve_a_narrow_spike():
    width = 1e-5
    spec = QuadratureSpec(x_max=60.0, x_min=1e-8, tolerance=1e-10)
    value = integrate_semi_infinite(lambda x: np.exp(-x / width) / width + np.exp(-x), spec)
    assert value == pytest.approx(2.0, abs=1e-8)


def test_stopping_rule_is_relative_for_large_integrals():
    spec = QuadratureSpec(x_max=50.0, tolerance=1e-9)
    value = integrate_semi_infinite(lambda x: 1e6 * np.exp(-x), spec)
    assert value == pytest.approx(1e6, rel=1e-8)


def test_quadrature_spec_rejects_misplaced_x_min():
    with pytest.raises(DomainError):
        QuadratureSpec(x_max=1.0, x_min=2.0)
    with pytest.raises(DomainError):
        QuadratureSpec(x_min=0.0)


def test_positive_integer_validation():
    assert validate_positive_integer(3.0, 'n') == 3
    for bad in (0, -2, 2.5, True):
        with pytest.raises(DomainError):
            validate_positive_integer(bad, 'n')
    with pytest.raises(TypeError):
        validate_positive_integer(9, 'n', 8)
