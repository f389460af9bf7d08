import math

import numpy as np
import pytest

from hmulab.quadrature import adaptive_panels, composite_rule, gauss_legendre, tail_cutoff


def test_gauss_legendre_exact_for_polynomials():
    x, w = gauss_legendre(16)
    for k in range(0, 31, 2):
        assert np.dot(w, x**k) == pytest.approx(2 / (k + 1), rel=1e-14)


def test_composite_rule_integrates_exp():
    nodes, weights = composite_rule(np.linspace(0, 3, 5), 16)
    assert np.dot(weights, np.exp(nodes)) == pytest.approx(math.expm1(3), rel=1e-14)


def test_adaptive_vector_integrand():
    res = adaptive_panels(lambda u: np.stack([np.exp(-u), u * np.exp(-2 * u)], axis=1), 0, 40)
    assert res.converged
    np.testing.assert_allclose(res.value, [1 - math.exp(-40), 0.25], rtol=1e-12)
    # the returned panel set reproduces the value
    n, w = res.rule()
    assert np.dot(w, np.exp(-n)) == pytest.approx(res.value[0], rel=1e-14)


def test_adaptive_handles_peaked_integrand():
    res = adaptive_panels(lambda u: np.exp(-1000 * (u - 0.3) ** 2), 0, 1)
    assert float(res.value) == pytest.approx(math.sqrt(math.pi / 1000), rel=1e-12)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        adaptive_panels(np.exp, 1.0, 1.0)


@pytest.mark.parametrize("s,alpha", [(1.0, 0.0), (1.0, 2.0), (0.5, -1.5), (3.0, -4.0)])
def test_tail_cutoff_discards_negligible_mass(s, alpha):
    U = tail_cutoff(s, alpha, 0.0, 1e-15)
    env = lambda u: math.exp(-s * u) * (math.log(2) + u) ** (-alpha)
    assert env(U) <= 1e-15 * max(env(u) for u in np.linspace(0, U, 2000))
