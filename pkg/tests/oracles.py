"""Reference values computed independently of the package's numerics.

mpmath quadrature, brute-force sums and closed forms only; nothing here calls
into hmulab's quadrature, FFT or summation code.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
from scipy.special import beta as beta_fn

mp.mp.dps = 30


# ---- moments ---------------------------------------------------------------


def mp_logpower_moment(beta: float, n: int) -> float:
    """``int_0^1 t^n log(2/(1-t))^-beta dt`` with ``1 - t = e^-u``."""
    f = lambda u: mp.exp(-u) * (1 - mp.exp(-u)) ** n * (mp.log(2) + u) ** (-beta)
    pts = [0, mp.mpf(1) / (n + 1), mp.log(n + 2), 4 * mp.log(n + 2) + 10, mp.inf]
    return float(mp.quad(f, pts))


def mp_powerlog_moment(s: float, alpha: float, n: int) -> float:
    f = lambda u: mp.exp(-s * u) * (1 - mp.exp(-u)) ** n * (mp.log(2) + u) ** (-alpha)
    pts = [0, mp.mpf(1) / (n + 1), mp.log(n + 2), 4 * mp.log(n + 2) + 10, mp.inf]
    return float(mp.quad(f, pts))


def mp_log_weighted_integral(beta: float, gamma: float, lower: float = 0.0) -> float:
    """``int_lower^1 log(2/(1-t))^(gamma - beta) dt`` via ``1 - t = e^-u``."""
    u0 = -mp.log(1 - mp.mpf(lower))
    f = lambda u: (mp.log(2) + u) ** (gamma - beta) * mp.exp(-u)
    return float(mp.quad(f, [u0, u0 + 1, u0 + 10, mp.inf]))


def mp_tail_logpower(beta: float, t: float) -> float:
    """``int_t^1 log(2/(1-x))^-beta dx``."""
    u0 = -mp.log(1 - mp.mpf(t))
    f = lambda u: mp.exp(-u) * (mp.log(2) + u) ** (-beta)
    return float(mp.quad(f, [u0, u0 + 1, u0 + 20, mp.inf]))


def hilbert_column(n: int) -> np.ndarray:
    return np.array([1.0 / (k + 1) for k in range(n + 1)])


# ---- Hankel sums -----------------------------------------------------------


def brute_hankel(mom, a, n_out: int) -> np.ndarray:
    """``sum_k mom[n+k] a_k`` with exactly rounded sums (``math.fsum``)."""
    a = np.asarray(a)
    out = np.empty(n_out + 1, dtype=complex)
    for n in range(n_out + 1):
        terms = [mom[n + k] * a[k] for k in range(a.size)]
        out[n] = complex(math.fsum(t.real for t in terms), math.fsum(np.imag(t) for t in terms))
    return out if np.iscomplexobj(a) else out.real


def horner(coeffs, z):
    acc = 0j
    for c in reversed(list(coeffs)):
        acc = acc * z + c
    return acc


# ---- circle / disc integrals ----------------------------------------------


def circle_mean_power(coeffs, r: float, p: float, K: int = 8192) -> float:
    theta = 2 * np.pi * np.arange(K) / K
    z = r * np.exp(1j * theta)
    vals = np.polynomial.polynomial.polyval(z, np.asarray(coeffs, dtype=complex))
    return float(np.mean(np.abs(vals) ** p))


def bergman_q1_p2(coeffs, alpha: float) -> float:
    """``int |f|^2 (1-|z|)^alpha dA`` = ``sum |a_k|^2 2 B(alpha+1, 2k+2)``."""
    a = np.abs(np.asarray(coeffs)) ** 2
    k = np.arange(a.size)
    return float(np.sum(a * 2 * beta_fn(alpha + 1, 2 * k + 2)))


def dirichlet_area(coeffs) -> float:
    """``int |f'|^2 dA = sum k |a_k|^2``."""
    a = np.abs(np.asarray(coeffs)) ** 2
    return float(np.sum(np.arange(a.size) * a))


def besov_area_bruteforce(coeffs, p: float, nr: int = 400, K: int = 2048) -> float:
    """``int (1-|z|^2)^(p-2) |f'|^p dA`` by Gauss-Jacobi-like radial nodes
    (``r = 1 - x^m`` with ``m`` absorbing the endpoint weight) and a plain
    angular trapezoid."""
    c = np.asarray(coeffs, dtype=complex)
    d = c[1:] * np.arange(1, c.size)
    x, w = np.polynomial.legendre.leggauss(nr)
    x = 0.5 * (x + 1)
    w = 0.5 * w
    m = 4.0
    omr = x**m
    r = 1 - omr
    jac = m * x ** (m - 1)
    vals = np.array([circle_mean_power(d, ri, p, K) for ri in r])
    return float(np.sum(w * jac * 2 * (omr * (1 + r)) ** (p - 2) * vals * r))


def qs_area_oracle(coeffs, a: complex, s: float, n_rho: int = 200, n_theta: int = 256) -> float:
    """``int |f'(z)|^2 log|(1 - conj(a) z)/(z - a)|^s dA`` in polar
    coordinates centred at ``a``.  ``rho = rho_max x^3 (10 - 15x + 6x^2)``
    flattens both ends: the logarithm at ``rho = 0`` and the ``g^s`` root at
    the circle."""
    c = np.asarray(coeffs, dtype=complex)
    d = c[1:] * np.arange(1, c.size)
    x, w = np.polynomial.legendre.leggauss(n_rho)
    x = 0.5 * (x + 1)
    w = 0.5 * w
    theta = 2 * np.pi * (np.arange(n_theta) + 0.5) / n_theta
    total = 0.0
    for th in theta:
        e = np.exp(1j * th)
        b = (a * np.conj(e)).real
        rho_max = -b + np.sqrt(b * b + 1 - abs(a) ** 2)
        rho = rho_max * x**3 * (10 - 15 * x + 6 * x**2)
        jac = rho_max * 30 * x**2 * (1 - x) ** 2
        z = a + rho * e
        g = np.log(np.abs((1 - np.conj(a) * z) / (z - a)))
        fp = np.polynomial.polynomial.polyval(z, d)
        total += np.sum(w * jac * rho * np.abs(fp) ** 2 * np.maximum(g, 0) ** s)
    return float(total * (2 * np.pi / n_theta) / np.pi)


def h2_mobius_oracle(coeffs, a: complex, K: int = 1 << 16) -> float:
    """``||f o phi_a - f(a)||_{H^2}`` by brute-force circle averaging."""
    w = np.exp(2j * np.pi * np.arange(K) / K)
    z = (a - w) / (1 - np.conj(a) * w)
    c = np.asarray(coeffs, dtype=complex)
    vals = np.polynomial.polynomial.polyval(z, c) - np.polynomial.polynomial.polyval(a, c)
    return float(np.sqrt(np.mean(np.abs(vals) ** 2)))


def bloch_line_oracle(N: int, samples: int = 200000) -> float:
    """``max_r (1 - r^2) |sum_{k<=N} r^(k-1)|`` on the positive axis for the
    log partial sum (all coefficients 1/k, so f'(r) = sum r^(k-1))."""
    x = np.geomspace(1e-9, 1, samples)
    r = 1 - x
    fp = np.where(x > 0, (1 - r**N) / x, N)
    return float(np.max((1 - r**2) * fp))


# ---- sequences ------------------------------------------------------------


def anderson_shields_direct(lam, n_blocks: int) -> np.ndarray:
    return np.array(
        [math.sqrt(math.fsum(abs(lam(k)) ** 2 for k in range(2**n + 1, 2 ** (n + 1) + 1)))
         for n in range(1, n_blocks + 1)]
    )
