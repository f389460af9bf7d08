import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from hmulab.errors import DomainError, WellDefinednessError
from hmulab.measure import (
    Atomic,
    Lebesgue,
    LogPowerDensity,
    Measure,
    PowerLogDensity,
    WeightedSum,
    _Canonical,
    _Term,
    log_weight,
    moments,
)
from hmulab.operator import (
    BLOCH_BMOA_QS,
    Besov,
    MomentCache,
    _size_class,
    agreement_check,
    hankel_apply,
    hankel_sums,
    integral_apply,
    log_moment,
    well_definedness_test,
)
from hmulab.series import TaylorPolynomial, evaluate, log_series

small = arrays(np.float64, st.integers(1, 60), elements=st.floats(-5, 5, allow_nan=False))


class _BareLogDensity(Measure):
    """``log(2/(1-t))^-alpha dt/(1-t)``: finite mass for alpha > 1 but not a
    supported kind; used only to reach the non-integrable branches."""

    def __init__(self, alpha):
        self.alpha = alpha

    def _canonical(self):
        e = np.zeros(0)
        return _Canonical(e, e, e, (_Term(1.0, 0.0, self.alpha),))


# ---- Hankel sums ------------------------------------------------------------


def test_hilbert_column():
    # Lebesgue measure: H(1) has coefficients 1/(n+1)
    app = hankel_apply(Lebesgue(), [1.0], 200, cache=None)
    np.testing.assert_allclose(app.output.coeffs, oracles.hilbert_column(200), rtol=1e-14)


def test_delta_zero():
    app = hankel_apply(Atomic((0.0,), (1.0,)), [3.0, 1.0, 2.0], 5, cache=None)
    np.testing.assert_allclose(app.output.coeffs, [3, 0, 0, 0, 0, 0])


def test_point_mass_gives_geometric_output():
    t0 = 0.6
    f = [1.0, -2.0, 0.5]
    app = hankel_apply(Atomic((t0,), (1.0,)), f, 30, cache=None)
    ft0 = oracles.horner(f, t0).real
    np.testing.assert_allclose(app.output.coeffs, ft0 * t0 ** np.arange(31), rtol=1e-13)


@pytest.mark.parametrize("seed", range(4))
def test_hankel_sums_match_fsum(seed):
    rng = np.random.default_rng(seed)
    mom = moments(LogPowerDensity(1.5), 600).values
    a = rng.standard_normal(300) * np.arange(1, 301) ** -0.5
    if seed % 2:
        a = a + 1j * rng.standard_normal(300)
    out, rows = hankel_sums(mom, a, 300)
    ref = oracles.brute_hankel(mom, a, 300)
    np.testing.assert_allclose(out, ref, rtol=1e-13, atol=1e-15 * np.abs(ref).max())
    np.testing.assert_allclose(rows, oracles.brute_hankel(mom, np.abs(a), 300), rtol=1e-13)


@settings(max_examples=40, deadline=None)
@given(small, small, st.floats(-3, 3))
def test_linearity(a, b, lam):
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    mu = PowerLogDensity(1.5, 1.0)
    ha = hankel_apply(mu, a, 40).output.coeffs
    hb = hankel_apply(mu, b, 40).output.coeffs
    hab = hankel_apply(mu, a + lam * b, 40).output.coeffs
    scale = hankel_apply(mu, np.abs(a) + abs(lam) * np.abs(b), 40).output.coeffs
    assert np.all(np.abs(hab - (ha + lam * hb)) <= 1e-13 * (scale + 1e-300))


@settings(max_examples=30, deadline=None)
@given(small)
def test_absolute_row_sums_non_increasing(a):
    app = hankel_apply(LogPowerDensity(1.0), a, 80)
    r = app.absolute_row_sums
    assert np.all(np.diff(r) <= 1e-15 * r[0])
    assert np.all(np.abs(app.output.coeffs) <= r * (1 + 1e-14))


def test_weighted_sum_superposition():
    f = np.random.default_rng(1).standard_normal(50)
    m1, m2 = LogPowerDensity(2.0), Atomic((0.3, 0.95), (1.0, 2.0))
    mix = WeightedSum(((2.0, m1), (0.5, m2)))
    lhs = hankel_apply(mix, f, 100).output.coeffs
    rhs = 2 * hankel_apply(m1, f, 100).output.coeffs + 0.5 * hankel_apply(m2, f, 100).output.coeffs
    np.testing.assert_allclose(lhs, rhs, rtol=1e-11, atol=1e-14)


def test_tail_bound():
    app = hankel_apply(LogPowerDensity(1.0), log_series(32), 256)
    assert app.tail_bound(0.0) == 0.0
    assert app.tail_bound(0.5) < app.tail_bound(0.9)
    with pytest.raises(DomainError):
        app.tail_bound(1.0)
    with pytest.raises(DomainError):
        hankel_apply(Lebesgue(), [1.0], -1)


# ---- moment cache -------------------------------------------------------------


def test_size_classes():
    assert [_size_class(n) for n in (1, 8, 15, 16, 17, 18, 100)] == [1, 8, 15, 16, 18, 18, 104]
    for n in range(1, 5000, 37):
        c = _size_class(n)
        assert n <= c < n * 1.125 + 1


def test_cache_is_order_independent():
    mu = LogPowerDensity(1.25)
    f = np.random.default_rng(3).standard_normal(40)
    c1, c2 = MomentCache(), MomentCache()
    c1.get(mu, 1000)
    big_first = hankel_apply(mu, f, 100, cache=c1).output.coeffs
    small_first = hankel_apply(mu, f, 100, cache=c2).output.coeffs
    assert np.array_equal(big_first, small_first)
    assert len(c1) == 2 and len(c2) == 1


def test_cache_thread_safe_and_deterministic():
    mu = PowerLogDensity(2.0, 1.0)
    cache = MomentCache(maxsize=4)
    f = np.random.default_rng(5).standard_normal(64)
    results = {}

    def work(i):
        results[i] = hankel_apply(mu, f, 200 + (i % 3) * 7, cache=cache).output.coeffs[:200]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(12)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = hankel_apply(mu, f, 200, cache=None).output.coeffs[:200]
    for v in results.values():
        np.testing.assert_allclose(v, ref, rtol=1e-13)
        assert np.array_equal(v, results[0])
    assert len(cache) <= 4


def test_cache_eviction():
    cache = MomentCache(maxsize=2)
    for beta in (0.5, 1.0, 1.5):
        cache.get(LogPowerDensity(beta), 10)
    assert len(cache) == 2
    cache.clear()
    assert len(cache) == 0


# ---- integral operator --------------------------------------------------------


def test_integral_lebesgue_one():
    z = np.array([0.5, -0.7, 0.3 + 0.4j, 0.95j])
    got = integral_apply(Lebesgue(), [1.0], z)
    np.testing.assert_allclose(got, -np.log(1 - z) / z, rtol=1e-13)


def test_integral_delta_zero():
    got = integral_apply(Atomic((0.0,), (1.0,)), [2.0, 5.0], np.array([0.1, 0.9j]))
    np.testing.assert_allclose(got, [2.0, 2.0])


def test_integral_scalar_and_shape():
    z = np.array([[0.1, 0.2], [0.3, 0.4]])
    assert integral_apply(Lebesgue(), [1.0], z).shape == (2, 2)
    assert np.ndim(integral_apply(Lebesgue(), [1.0], 0.5)) == 0
    with pytest.raises(DomainError):
        integral_apply(Lebesgue(), [1.0], 1.0)


def test_integral_callable_log():
    # f(t) = log(2/(1-t)) against Lebesgue at z = 0: int log(2/(1-t)) dt = 1 + log 2
    got = integral_apply(Lebesgue(), lambda t, omt: np.log(2 / omt), np.array([0.0, 0.5]))
    assert got[0].real == pytest.approx(1 + math.log(2), rel=1e-12)
    # int_0^1 log(2/(1-t)) / (1 - t/2) dt by mpmath in u = -log(1-t)
    import mpmath as mp

    ref = mp.quad(lambda u: (mp.log(2) + u) * mp.exp(-u) / (1 - (1 - mp.exp(-u)) / 2), [0, 1, 10, mp.inf])
    assert got[1].real == pytest.approx(float(ref), rel=1e-12)


def test_integral_one_argument_callable():
    got = integral_apply(Lebesgue(), lambda t: t**2, 0.0)
    assert got.real == pytest.approx(1 / 3, rel=1e-13)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_integral_undefined_raises():
    with pytest.raises(WellDefinednessError):
        integral_apply(Lebesgue(), lambda t: np.where(t > 0.5, np.inf, 1.0), 0.5)


# ---- well-definedness -----------------------------------------------------------


def test_well_defined_supported_kinds():
    for mu in (Lebesgue(), LogPowerDensity(0.5), PowerLogDensity(3.0, 2.0), Atomic((0.2,), (1.0,))):
        wd = well_definedness_test(mu)
        assert wd and wd.verdict == "defined" and np.isfinite(wd.integral)
        assert wd.space == BLOCH_BMOA_QS and wd.exponent == 1.0


def test_well_defined_integral_matches_mpmath():
    wd = well_definedness_test(LogPowerDensity(2.0))
    assert wd.integral == pytest.approx(oracles.mp_log_weighted_integral(2.0, 1.0), rel=1e-11)
    assert log_moment(Atomic((0.0,), (1.0,)), 1.0) == pytest.approx(math.log(2))


def test_well_definedness_verdicts():
    # s = 0 term: integrable against log^g iff alpha - g > 1
    assert well_definedness_test(_BareLogDensity(2.0)).verdict == "undefined"
    assert well_definedness_test(_BareLogDensity(1.5), Besov(2.0)).verdict == "boundary"
    assert well_definedness_test(_BareLogDensity(1.2), Besov(2.0)).verdict == "undefined"
    assert not well_definedness_test(_BareLogDensity(1.5), Besov(2.0))


def test_besov_space_validation():
    assert Besov(4.0).exponent == 0.75
    with pytest.raises(DomainError):
        Besov(1.0)
    with pytest.raises(DomainError):
        well_definedness_test(Lebesgue(), "hardy")


# ---- agreement ----------------------------------------------------------------


FAMILY = [
    Lebesgue(),
    LogPowerDensity(1.5),
    LogPowerDensity(2.0),
    PowerLogDensity(2.0, 1.0),
    Atomic((0.0, 0.5, 0.9), (1.0, 0.5, 0.25)),
    WeightedSum(((1.0, LogPowerDensity(2.0)), (0.3, Atomic((0.7,), (1.0,))))),
    log_weight(LogPowerDensity(3.0), 1.0),
]


@pytest.mark.parametrize("mu", FAMILY, ids=lambda m: type(m).__name__)
def test_agreement_family(mu):
    f = np.random.default_rng(11).standard_normal(65) * np.arange(1, 66) ** -1.0
    r = np.linspace(0, 0.9, 10)
    z = (r[:, None] * np.exp(2j * np.pi * np.arange(8) / 8)[None, :]).ravel()
    rep = agreement_check(mu, f, z, 512)
    assert rep.within_bound, rep.to_dict()
    assert rep.max_diff <= max(1e-10, rep.tail_bound)
    assert set(rep.to_dict()) == {"max_diff", "tail_bound", "n_out", "z_grid"}


def test_agreement_rejects_undefined_and_empty():
    with pytest.raises(WellDefinednessError):
        agreement_check(_BareLogDensity(2.0), [1.0], [0.1], 10)
    with pytest.raises(DomainError):
        agreement_check(Lebesgue(), [1.0], [], 10)


def test_output_evaluates_like_integral_inside_disc():
    mu = LogPowerDensity(2.0)
    f = TaylorPolynomial([1.0, 0.5, -0.25])
    app = hankel_apply(mu, f, 800)
    z = 0.6 * np.exp(0.3j)
    assert abs(evaluate(app.output, z) - integral_apply(mu, f, z)) < 1e-13
