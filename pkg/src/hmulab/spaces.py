"""Seminorm estimators for the Bloch space, BMOA, Q_s and Besov spaces.

All suprema are taken over finite grids and are therefore lower estimates of
the true suprema over the disc.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.fft import next_fast_len
from scipy.special import gamma as gamma_fn

from .errors import DomainError
from .estimates import NormEstimate
from .quadrature import adaptive_panels
from .series import (
    PolyLike,
    TaylorPolynomial,
    as_poly,
    block_range,
    circle_values,
    derivative,
    dyadic_blocks,
    evaluate,
)

__all__ = [
    "MobiusPoint",
    "default_a_grid",
    "bloch_seminorm",
    "bloch_norm",
    "mobius_compose",
    "bmoa_seminorm",
    "bmoa_norm",
    "qs_seminorm",
    "besov_seminorm_area",
    "besov_seminorm_blocks",
    "besov_norm",
    "bergman_block_equivalence",
    "radial_power_integral",
    "circle_eval",
]


@dataclass(frozen=True)
class MobiusPoint:
    """Centre ``a`` of the disc automorphism ``phi_a(z) = (a - z)/(1 - conj(a) z)``."""

    a: complex

    def __post_init__(self):
        a = complex(self.a)
        if not abs(a) < 1:
            raise DomainError("Mobius point must satisfy |a| < 1")
        object.__setattr__(self, "a", a)

    def __call__(self, z):
        z = np.asarray(z)
        return (self.a - z) / (1 - np.conj(self.a) * z)


def _points(a_grid) -> np.ndarray:
    out = np.array([complex(p.a if isinstance(p, MobiusPoint) else p) for p in a_grid])
    if out.size == 0:
        raise DomainError("a_grid must be non-empty")
    if np.any(np.abs(out) >= 1):
        raise DomainError("a_grid points must satisfy |a| < 1")
    return out


def _default_depth(degree: int) -> int:
    return max(8, int(np.ceil(np.log2(degree + 1))) + 4)


def default_a_grid(J: int, angles: int = 16) -> np.ndarray:
    """Radii ``1 - 2^(-j/2)`` for ``j = 0 .. 2J`` times ``angles`` equispaced
    angles (the radius-0 ring is the single point 0)."""
    j = np.arange(1, 2 * J + 1)
    radii = 1.0 - np.exp2(-j / 2)
    theta = 2 * np.pi * np.arange(angles) / angles
    ring = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    return np.concatenate([[0j], ring])


def _coarse_subgrid(a: np.ndarray) -> np.ndarray:
    """Every other ring of a default grid (used as the coarse level)."""
    r = np.abs(a)
    keep = (r == 0) | (np.round(-2 * np.log2(1 - r)).astype(int) % 2 == 0)
    return keep


# ---------------------------------------------------------------------------
# Bloch


def bloch_seminorm(f: PolyLike, J: int = 30, K: int | None = None) -> NormEstimate:
    """``max (1 - |z|^2) |f'(z)|`` over ``|z| = 1 - 2^(-j/4)``, ``j = 0..4J``,
    and ``K`` equispaced angles."""
    f = as_poly(f)
    if J < 16:
        raise DomainError("radial depth J must be >= 16")
    K = K or next_fast_len(4 * (f.degree + 1))
    if K < 4 * f.degree:
        raise DomainError(f"need at least {4 * f.degree} angular samples")
    d = derivative(f).coeffs
    j = np.arange(4 * J + 1)
    omr = np.exp2(-j / 4)
    r = 1.0 - omr
    vals = np.empty(r.size)
    for i, ri in enumerate(r):
        vals[i] = omr[i] * (1 + ri) * np.max(np.abs(circle_values(d, ri, K)))
    coarse = float(np.max(vals[::2]))
    fine = float(np.max(vals))
    grid = {"J": J, "per_octave": 4, "angular_samples": K}
    return NormEstimate.from_levels([coarse, fine], grid)


def bloch_norm(f: PolyLike, **kw) -> float:
    f = as_poly(f)
    return float(abs(f.coeffs[0]) + bloch_seminorm(f, **kw).value)


# ---------------------------------------------------------------------------
# BMOA


def mobius_compose(f: PolyLike, a, K: int) -> np.ndarray:
    """``f(phi_a(e^{i theta_k})) - f(a)`` at ``theta_k = 2 pi k / K``."""
    f = as_poly(f)
    a = a if isinstance(a, MobiusPoint) else MobiusPoint(a)
    w = np.exp(2j * np.pi * np.arange(K) / K)
    theta = np.angle(a(w))
    if K <= 4 * (f.degree + 1):
        vals = evaluate(f, np.exp(1j * theta))
    else:
        vals = circle_eval(f.coeffs, theta)
    return vals - evaluate(f, a.a)


def circle_eval(coeffs, theta, *, oversample: int = 8, order: int = 12) -> np.ndarray:
    """``f(e^{i theta})`` at arbitrary angles in ``O(order)`` work per point.

    ``f`` and its first ``order`` angular derivatives are sampled on a uniform
    grid of ``L >= oversample * (N + 1)`` points by FFT; each angle is then
    reached by a Taylor step of length ``|h| <= pi / L`` from the nearest grid
    point.  The remainder is at most ``sum |a_n| (pi/oversample)^(order+1) /
    (order+1)!``, about ``1e-15 sum |a_n|`` for the defaults.
    """
    c = np.asarray(coeffs, dtype=complex)
    theta = np.asarray(theta, dtype=float)
    L = next_fast_len(oversample * c.size)
    idx = np.rint(theta * (L / (2 * np.pi))).astype(np.int64)
    h = theta - idx * (2 * np.pi / L)
    idx %= L
    ik = 1j * np.arange(c.size)
    coef = c.copy()
    grids = []
    for _ in range(order + 1):
        padded = np.zeros(L, dtype=complex)
        padded[: c.size] = coef
        grids.append(np.fft.ifft(padded) * L)
        coef = coef * ik
    acc = grids[order][idx]
    for j in range(order - 1, -1, -1):
        acc = grids[j][idx] + acc * (h / (j + 1))
    return acc


def _autocorrelation(c: np.ndarray) -> np.ndarray:
    """``c_m = sum_k a_{k+m} conj(a_k)`` for ``m = 0 .. N``."""
    n = c.size
    L = next_fast_len(2 * n)
    F = np.fft.fft(c, L)
    return np.fft.ifft(np.abs(F) ** 2)[:n]


def _garsia_squares(f: TaylorPolynomial, a: np.ndarray) -> np.ndarray:
    """``||f o phi_a - f(a)||_{H^2}^2`` from the Poisson-integral identity
    ``int |f|^2 P_a dm - |f(a)|^2``."""
    c = f.coeffs.astype(complex)
    corr = _autocorrelation(c)
    # sum_{m>=1} corr_m a^m by Horner
    acc = np.zeros(a.shape, dtype=complex)
    for cm in corr[:0:-1]:
        acc = (acc + cm) * a
    fa = evaluate(f, a)
    vals = corr[0].real + 2 * acc.real - np.abs(fa) ** 2
    return np.maximum(vals, 0.0)


def _bandwidth_samples(degree: int, r: float) -> int:
    # f o phi_a has effective bandwidth ~ N (1+|a|)/(1-|a|)
    return next_fast_len(int(8 * (degree + 1) * (1 + r) / (1 - r)))


def _sample_squares(f: TaylorPolynomial, a: np.ndarray, K: int | None) -> np.ndarray:
    out = np.empty(a.size)
    for i, ai in enumerate(a):
        Ki = K or _bandwidth_samples(f.degree, abs(ai))
        out[i] = np.mean(np.abs(mobius_compose(f, ai, Ki)) ** 2)
    return out


def bmoa_seminorm(
    f: PolyLike, a_grid=None, K: int | None = None, *, method: str = "garsia"
) -> NormEstimate:
    """``max_a ||f o phi_a - f(a)||_{H^2}`` over ``a_grid``.

    ``method="garsia"`` evaluates the norm exactly through the autocorrelation
    of the coefficients; ``method="samples"`` applies the trapezoid rule to
    circle samples of the composition (``K`` samples, or an automatic count
    per point when ``K`` is None).
    """
    f = as_poly(f)
    J = _default_depth(f.degree)
    a = default_a_grid(J) if a_grid is None else _points(a_grid)
    if not np.any(f.coeffs[1:]):
        sq = np.zeros(a.size)
    elif method == "garsia":
        sq = _garsia_squares(f, a)
    elif method == "samples":
        sq = _sample_squares(f, a, K)
    else:
        raise DomainError(f"unknown method {method!r}")
    vals = np.sqrt(sq)
    fine = float(vals.max())
    coarse = float(vals[_coarse_subgrid(a)].max()) if a_grid is None else fine
    grid = {"a_points": int(a.size), "J": J if a_grid is None else None, "method": method}
    if K is not None:
        grid["angular_samples"] = K
    est = NormEstimate.from_levels([coarse, fine], grid)
    k = int(np.argmax(vals))
    est.grid["argmax_a"] = [float(a[k].real), float(a[k].imag)]
    return est


def bmoa_norm(f: PolyLike, **kw) -> float:
    f = as_poly(f)
    return float(abs(f.coeffs[0]) + bmoa_seminorm(f, **kw).value)


# ---------------------------------------------------------------------------
# Q_s


def _composition_coefficients(f: TaylorPolynomial, a: complex, K0: int, tol: float = 1e-13):
    """Taylor coefficients of ``f o phi_a`` from FFTs of circle samples, with
    ``K`` doubled until the middle of the spectrum (where aliased negative
    and positive frequencies meet) is negligible."""
    K = K0
    fa = evaluate(f, a)
    while True:
        vals = mobius_compose(f, a, K) + fa
        c = np.fft.fft(vals) / K
        mag = np.abs(c)
        if mag[K // 4 : K - K // 4].max() <= tol * mag.max() or K >= 1 << 22:
            return c[: K // 2]
        K *= 2


def qs_seminorm(
    f: PolyLike, s: float, a_grid=None, K: int | None = None
) -> NormEstimate:
    """``sqrt(max_a int |f'(z)|^2 g(z, a)^s dA(z))`` with ``dA = dx dy / pi``
    and ``g(z, a) = log |(1 - conj(a) z)/(z - a)|``.

    Substituting ``z = phi_a(w)`` turns the Green function into
    ``log(1/|w|)``; with ``c_k`` the Taylor coefficients of ``f o phi_a`` the
    integral becomes ``Gamma(s+1) 2^-s sum_k k^(1-s) |c_k|^2``.
    """
    f = as_poly(f)
    if not s >= 0:
        raise DomainError("s must be >= 0")
    if s == 0 or not np.any(f.coeffs[1:]):
        k = np.arange(f.degree + 1)
        val = float(np.sqrt(np.sum(k * np.abs(f.coeffs) ** 2)))
        return NormEstimate.from_levels([val], {"s": s, "a_points": 0})
    # the circle samples needed grow like N^2 / (1-|a|); suprema for degree-N
    # polynomials sit at 1-|a| >= 4/N in practice, so stop at 1-|a| ~ 1/N
    J = max(8, int(np.ceil(np.log2(f.degree + 1))))
    a = default_a_grid(J) if a_grid is None else _points(a_grid)
    scale = gamma_fn(s + 1) * 2.0**-s
    sq = np.empty(a.size)
    for i, ai in enumerate(a):
        K0 = K or _bandwidth_samples(f.degree, abs(ai))
        c = _composition_coefficients(f, ai, K0)
        k = np.arange(1, c.size, dtype=float)
        sq[i] = scale * np.sum(k ** (1 - s) * np.abs(c[1:]) ** 2)
    vals = np.sqrt(sq)
    fine = float(vals.max())
    coarse = float(vals[_coarse_subgrid(a)].max()) if a_grid is None else fine
    grid = {"s": s, "a_points": int(a.size), "J": J if a_grid is None else None}
    return NormEstimate.from_levels([coarse, fine], grid)


# ---------------------------------------------------------------------------
# radial integrals: Besov and weighted Bergman


def _oversampling(p: float) -> int:
    return 8 if p == int(p) and int(p) % 2 == 0 else 32


def _angular_samples(size: int, p: float) -> int:
    """Trapezoid points for ``|g|^p`` on a circle, ``g`` with ``size`` coefficients.

    Even integer ``p`` makes ``|g|^p`` a trigonometric polynomial and 8x is
    ample; otherwise the kinks at zeros of ``g`` set the error, roughly
    ``1e-7`` relative at 32x.
    """
    return next_fast_len(_oversampling(p) * size)


def _circle_means_two_levels(coeffs: np.ndarray, r: np.ndarray, p: float, K: int):
    """Trapezoid means of ``|f(r e^{it})|^p`` with ``K`` and ``K/2`` samples."""
    k = np.arange(coeffs.size)
    out = np.empty((r.size, 2))
    step = max(1, (1 << 21) // K)
    for i in range(0, r.size, step):
        rr = r[i : i + step]
        c = np.zeros((rr.size, K), dtype=complex)
        with np.errstate(under="ignore"):
            c[:, : coeffs.size] = coeffs[None, :] * rr[:, None] ** k[None, :]
        v = np.abs(np.fft.ifft(c, axis=1) * K)
        v = v**2 if p == 2 else v**p
        out[i : i + step, 0] = v.mean(axis=1)
        out[i : i + step, 1] = v[:, ::2].mean(axis=1)
    return out


def radial_power_integral(
    coeffs, p: float, c: float, d: float = 0.0, *, K: int | None = None, rtol: float | None = None
):
    """``2 int_0^1 (1-r)^c (1+r)^d M_p^p(r, f) r dr`` for ``c > -1``.

    With ``1 - r = e^(-u)`` the integrand becomes
    ``2 e^(-u(c+1)) (2 - e^-u)^d M_p^p r``, smooth and exponentially
    decaying.  Returns ``(value_K, value_K/2, relative quadrature error, K)``.
    """
    coeffs = np.asarray(coeffs)
    if not c > -1:
        raise DomainError("radial exponent must exceed -1")
    K = K or _angular_samples(coeffs.size, p)
    if rtol is None:
        # radial refinement past the angular accuracy only chases noise
        rtol = 1e-10 if _oversampling(p) == 8 else 1e-8
    U = 40.0 / (c + 1)

    def integrand(u):
        omr = np.exp(-u)
        r = 1.0 - omr
        means = _circle_means_two_levels(coeffs, r, p, K)
        w = 2 * np.exp(-u * (c + 1)) * (1 + r) ** d * r
        return means * w[:, None]

    res = adaptive_panels(integrand, 0.0, U, rtol=rtol, initial_panels=16)
    fine, coarse = float(res.value[0]), float(res.value[1])
    rel = float(res.error[0] / fine) if fine > 0 else 0.0
    return fine, coarse, rel, K


def besov_seminorm_area(f: PolyLike, p: float, K: int | None = None) -> NormEstimate:
    """``rho_p(f) = (int (1-|z|^2)^(p-2) |f'|^p dA)^(1/p)``."""
    f = as_poly(f)
    if not p > 1:
        raise DomainError("Besov exponent must exceed 1")
    d = derivative(f).coeffs
    if not np.any(d):
        return NormEstimate.from_levels([0.0], {"p": p})
    fine, coarse, rel, K = radial_power_integral(d, p, p - 2, p - 2, K=K)
    est = NormEstimate.from_levels(
        [coarse ** (1 / p), fine ** (1 / p)], {"p": p, "angular_samples": K, "radial": "u=-log(1-r)"}
    )
    if rel > est.error_indicator:
        est = replace(est, error_indicator=rel)
    return est


def _block_hp_power(block: TaylorPolynomial, j: int, p: float):
    """``||block||_{H^p}^p`` at two sampling levels; leading zeros are dropped
    (multiplying by ``z^m`` does not change ``|g|`` on the circle)."""
    lo, _ = block_range(j)
    c = block.coeffs[lo:]
    if not np.any(c):
        return 0.0, 0.0
    K = _angular_samples(c.size, p)
    m = _circle_means_two_levels(c, np.ones(1), p, K)[0]
    return float(m[0]), float(m[1])


def _block_sum(f: TaylorPolynomial, p: float, decay: float):
    fine = coarse = 0.0
    for j, b in enumerate(dyadic_blocks(f).blocks):
        hi, lo = _block_hp_power(b, j, p)
        fine += 2.0 ** (-j * decay) * hi
        coarse += 2.0 ** (-j * decay) * lo
    return fine, coarse


def besov_seminorm_blocks(f: PolyLike, p: float) -> NormEstimate:
    """``(sum_n 2^(-n(p-1)) ||Delta_n f'||_{H^p}^p)^(1/p)``."""
    f = as_poly(f)
    if not p > 1:
        raise DomainError("Besov exponent must exceed 1")
    fine, coarse = _block_sum(derivative(f), p, p - 1)
    return NormEstimate.from_levels([coarse ** (1 / p), fine ** (1 / p)], {"p": p, "oversampling": _oversampling(p)})


def besov_norm(f: PolyLike, p: float, **kw) -> float:
    """``(|f(0)|^p + rho_p(f)^p)^(1/p)`` with the area form of ``rho_p``."""
    f = as_poly(f)
    rho = besov_seminorm_area(f, p, **kw).value
    return float((abs(f.coeffs[0]) ** p + rho**p) ** (1 / p))


def bergman_block_equivalence(f: PolyLike, p: float, alpha: float) -> tuple[float, float]:
    """``(Q1, Q2)`` with ``Q1 = int |f|^p (1-|z|)^alpha dA`` and
    ``Q2 = sum_n 2^(-n(alpha+1)) ||Delta_n f||_{H^p}^p``."""
    f = as_poly(f)
    if not p > 1:
        raise DomainError("p must exceed 1")
    if not alpha > -1:
        raise DomainError("alpha must exceed -1")
    if not np.any(f.coeffs):
        return 0.0, 0.0
    q1 = radial_power_integral(f.coeffs, p, alpha)[0]
    q2 = _block_sum(f, p, alpha + 1)[0]
    return float(q1), float(q2)
