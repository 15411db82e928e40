from dataclasses import replace

import pytest

from bipartite_maps.coords.kernel import count_small_zeros, kernel_build, lower_hull
from bipartite_maps.coords.taylor import lattice_oracles, taylor_closed, taylor_kernel
from bipartite_maps.series.univariate import uni


@pytest.mark.parametrize("K", [2, 3, 4, 5])
def test_kernel_structure(K):
    kernel = kernel_build(K)
    assert kernel.nu_degree() == 2 * (K - 1)
    assert kernel.factorization_holds()
    assert kernel.antisymmetry_holds()


def test_factorization_is_checked_against_the_defining_kernel():
    kernel = kernel_build(3)
    assert kernel.y_cleared() == kernel.u * (1 + kernel.u * kernel.z) * kernel.y_num
    assert not replace(kernel, theta_num=kernel.theta_num + kernel.u).factorization_holds()
    assert not replace(kernel, nu=kernel.nu + kernel.z).factorization_holds()


@pytest.mark.parametrize("K", [2, 3, 4, 5])
@pytest.mark.parametrize("seed", [0, 1])
def test_small_zero_count(K, seed):
    small, large = count_small_zeros(kernel_build(K), seed)
    assert small == K - 1
    assert small + large == 2 * (K - 1)


def test_kernel_rejects_empty_cutoff():
    with pytest.raises(ValueError):
        kernel_build(0)


def test_lower_hull():
    assert lower_hull([(0, 2), (1, 0), (2, 1), (3, 0)]) == [(0, 2), (1, 0), (3, 0)]


def test_first_taylor_coefficients():
    assert taylor_closed(1, 0) == {"1": 4, "gamma": 4}
    assert taylor_closed(1, 1) == {"1": -2, "eta": 2}
    assert taylor_closed(-1, 1) == {"1": 2, "zeta": 2}
    assert taylor_closed(-1, 0) == {}


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("a", [2, 3, 4])
def test_taylor_closed_form_matches_direct_expansion(sign, a):
    assert taylor_kernel(sign, a, check=True) == taylor_closed(sign, a)


def test_taylor_kernel_rejects_bad_arguments():
    with pytest.raises(ValueError):
        taylor_kernel(2, 1)
    with pytest.raises(ValueError):
        taylor_kernel(1, -1)


@pytest.mark.parametrize("a", [2, 3, 4])
def test_lattice_series(a):
    series = lattice_oracles(a, 10)
    assert series.closed == series.direct
    assert series.closed["D"][:2] == uni([0, 0], 1)


def test_lattice_series_needs_a_at_least_two():
    with pytest.raises(ValueError):
        lattice_oracles(1, 5)
