"""Truncated Taylor series on the unit disc and their coefficient functionals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DomainError
from .estimates import NormEstimate
from .quadrature import adaptive_panels

__all__ = [
    "TaylorPolynomial",
    "BlockDecomposition",
    "AndersonShieldsResult",
    "as_poly",
    "evaluate",
    "derivative",
    "dilate",
    "dyadic_blocks",
    "block_range",
    "circle_values",
    "circle_power_means",
    "hp_norm",
    "anderson_shields_functional",
    "coef_power_sum",
    "d_alpha_norm",
    "logpower_series",
    "log_series",
]

_UNIT_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class TaylorPolynomial:
    """``a_0 + a_1 z + ... + a_N z^N``; trailing zeros are allowed."""

    coeffs: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.coeffs))
        if a.ndim != 1:
            raise DomainError("coefficients must be a 1-d sequence")
        if a.size == 0:
            a = np.zeros(1)
        if not np.iscomplexobj(a):
            a = a.astype(float)
        else:
            a = a.astype(complex)
        if not np.all(np.isfinite(a)):
            raise DomainError("coefficients must be finite")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __call__(self, z):
        return evaluate(self, z)

    def padded(self, n: int) -> np.ndarray:
        out = np.zeros(max(n, self.coeffs.size), dtype=self.coeffs.dtype)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __add__(self, other):
        other = as_poly(other)
        n = max(len(self), len(other))
        return TaylorPolynomial(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * as_poly(other)

    def __mul__(self, c):
        if isinstance(c, TaylorPolynomial):
            return TaylorPolynomial(np.convolve(self.coeffs, c.coeffs))
        return TaylorPolynomial(self.coeffs * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, TaylorPolynomial):
            return NotImplemented
        n = max(len(self), len(other))
        return bool(np.array_equal(self.padded(n), other.padded(n)))

    def __repr__(self):
        return f"TaylorPolynomial(degree={self.degree})"


PolyLike = Union[TaylorPolynomial, Sequence[complex], np.ndarray]


def as_poly(f: PolyLike) -> TaylorPolynomial:
    return f if isinstance(f, TaylorPolynomial) else TaylorPolynomial(np.asarray(f))


def evaluate(f: PolyLike, z):
    """Horner evaluation at points of the closed unit disc."""
    f = as_poly(f)
    zz = np.asarray(z)
    if np.any(np.abs(zz) > 1 + _UNIT_SLACK):
        raise DomainError("evaluation point outside the closed unit disc")
    acc = np.zeros(zz.shape, dtype=np.result_type(f.coeffs, zz, float))
    for c in f.coeffs[::-1]:
        acc = acc * zz + c
    return acc[()] if acc.ndim == 0 else acc


def derivative(f: PolyLike) -> TaylorPolynomial:
    f = as_poly(f)
    if f.degree == 0:
        return TaylorPolynomial(np.zeros(1, dtype=f.coeffs.dtype))
    return TaylorPolynomial(f.coeffs[1:] * np.arange(1, f.degree + 1))


def dilate(f: PolyLike, r: float) -> TaylorPolynomial:
    """``z -> f(r z)``."""
    f = as_poly(f)
    if not 0 < r <= 1:
        raise DomainError("dilation radius must lie in (0, 1]")
    return TaylorPolynomial(f.coeffs * r ** np.arange(f.degree + 1))


# ---------------------------------------------------------------------------
# dyadic blocks


def block_range(j: int) -> tuple[int, int]:
    """Inclusive index range of block ``j``: ``{0, 1}`` for ``j = 0``,
    ``2^j .. 2^(j+1) - 1`` otherwise."""
    if j == 0:
        return 0, 1
    return 1 << j, (1 << (j + 1)) - 1


def _n_blocks(degree: int) -> int:
    return 1 if degree <= 1 else degree.bit_length()


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[TaylorPolynomial, ...]

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, j):
        return self.blocks[j]

    def reassemble(self) -> TaylorPolynomial:
        n = max(len(b) for b in self.blocks)
        out = np.zeros(n, dtype=np.result_type(*[b.coeffs for b in self.blocks]))
        for b in self.blocks:
            out[: len(b)] += b.coeffs
        return TaylorPolynomial(out)


def dyadic_blocks(f: PolyLike) -> BlockDecomposition:
    """Split ``f`` into its blocks; block ``j`` keeps its true indices."""
    f = as_poly(f)
    blocks = []
    for j in range(_n_blocks(f.degree)):
        lo, hi = block_range(j)
        hi = min(hi, f.degree)
        c = np.zeros(hi + 1, dtype=f.coeffs.dtype)
        c[lo : hi + 1] = f.coeffs[lo : hi + 1]
        blocks.append(TaylorPolynomial(c))
    return BlockDecomposition(tuple(blocks))


# ---------------------------------------------------------------------------
# circle sampling


def _default_samples(degree: int, p: float) -> int:
    # |f|^p is a trigonometric polynomial only for even integer p; otherwise
    # the kinks at zeros of f need heavy oversampling (about 1e-6 at 64x)
    if p == int(p) and int(p) % 2 == 0:
        return max(4, int(p) // 2 + 1) * (degree + 1)
    return max(4 * (degree + 1), min(64 * (degree + 1), 1 << 24))


def circle_values(coeffs: np.ndarray, r: float, samples: int) -> np.ndarray:
    """``f(r e^{2 pi i k / K})`` for ``k < K``, via one FFT."""
    coeffs = np.asarray(coeffs)
    if samples < coeffs.size:
        raise DomainError("need at least degree + 1 circle samples")
    c = np.zeros(samples, dtype=complex)
    c[: coeffs.size] = coeffs * r ** np.arange(coeffs.size)
    return np.fft.ifft(c) * samples


def circle_power_means(coeffs: np.ndarray, radii: np.ndarray, p: float, samples: int) -> np.ndarray:
    """``(1/2pi) int |f(r e^{i t})|^p dt`` for each radius (trapezoid rule)."""
    coeffs = np.asarray(coeffs)
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if samples < coeffs.size:
        raise DomainError("need at least degree + 1 circle samples")
    out = np.empty(radii.size)
    k = np.arange(coeffs.size)
    step = max(1, (1 << 22) // samples)
    for i in range(0, radii.size, step):
        rr = radii[i : i + step]
        c = np.zeros((rr.size, samples), dtype=complex)
        with np.errstate(under="ignore"):
            c[:, : coeffs.size] = coeffs[None, :] * rr[:, None] ** k[None, :]
        vals = np.abs(np.fft.ifft(c, axis=1) * samples)
        out[i : i + step] = np.mean(vals**2 if p == 2 else vals**p, axis=1)
    return out


def hp_norm(f: PolyLike, p: float, r: float = 1.0, samples: int | None = None) -> NormEstimate:
    """Integral mean ``M_p(r, f)``; for ``r = 1`` the ``H^p`` norm."""
    f = as_poly(f)
    if not p > 0:
        raise DomainError("p must be > 0")
    if not 0 < r <= 1:
        raise DomainError("r must lie in (0, 1]")
    minimum = 4 * (f.degree + 1)
    K = samples or _default_samples(f.degree, p)
    if K < minimum:
        raise DomainError(f"need at least {minimum} samples for degree {f.degree}")
    fine = circle_power_means(f.coeffs, [r], p, K)[0] ** (1 / p)
    coarse = circle_power_means(f.coeffs, [r], p, K // 2)[0] ** (1 / p)
    grid = {"samples": K, "r": r, "p": p, "low_accuracy": bool(p < 1)}
    return NormEstimate.from_levels([coarse, fine], grid)


# ---------------------------------------------------------------------------
# coefficient functionals


@dataclass(frozen=True)
class AndersonShieldsResult:
    value: float
    terms: np.ndarray
    slope: float
    diverges: bool

    @property
    def blocks(self) -> np.ndarray:
        return np.arange(1, self.terms.size + 1)


_EXACT_BLOCK = 1 << 16
_SLOPE_ROUNDOFF = 1e-9


def _block_square_sum(lam: Callable, lo: int, hi: int) -> float:
    """``sum_{k=lo}^{hi} |lam(k)|^2`` for a callable ``lam``.

    Short blocks are summed term by term; long ones by Euler-Maclaurin with
    the integral on a logarithmic scale.
    """
    if hi - lo + 1 <= _EXACT_BLOCK:
        k = np.arange(lo, hi + 1, dtype=float)
        return float(np.sum(np.abs(lam(k)) ** 2))

    def F(k):
        return np.abs(lam(np.asarray(k, dtype=float))) ** 2

    res = adaptive_panels(
        lambda x: F(np.exp(x)) * np.exp(x), np.log(lo), np.log(hi), rtol=1e-13
    )
    ends = 0.5 * (F(lo) + F(hi))

    def dF(k):
        h = 1e-3 * k
        return (F(k + h) - F(k - h)) / (2 * h)

    return float(res.value + ends + (dF(hi) - dF(lo)) / 12.0)


def anderson_shields_functional(
    lam: Callable | Sequence[complex] | np.ndarray, n_blocks: int, decade: int = 10
) -> AndersonShieldsResult:
    """Partial sum over ``n = 1 .. n_blocks`` of
    ``(sum_{k=2^n+1}^{2^(n+1)} |lam_k|^2)^(1/2)``.

    ``lam`` is either a sequence indexed from 0 or a vectorised callable
    ``k -> lam_k``.  The divergence flag is raised when the logarithm of the
    block terms has non-negative slope over the last ``decade`` blocks
    (up to round-off: block terms that settle on a constant count as
    non-decaying).
    """
    n_blocks = int(n_blocks)
    if n_blocks < 1:
        raise DomainError("need at least one block")
    terms = np.empty(n_blocks)
    if callable(lam):
        for n in range(1, n_blocks + 1):
            terms[n - 1] = np.sqrt(_block_square_sum(lam, (1 << n) + 1, 1 << (n + 1)))
    else:
        arr = np.asarray(lam)
        need = (1 << (n_blocks + 1)) + 1
        if arr.size < need:
            raise DomainError(f"sequence must be defined up to index {need - 1}")
        sq = np.abs(arr[:need]) ** 2
        for n in range(1, n_blocks + 1):
            terms[n - 1] = np.sqrt(np.sum(sq[(1 << n) + 1 : (1 << (n + 1)) + 1]))
    tail = terms[-min(decade, n_blocks) :]
    if tail.size >= 2 and np.all(tail > 0):
        slope = float(np.polyfit(np.arange(tail.size), np.log(tail), 1)[0])
    else:
        slope = float("-inf") if np.all(tail == 0) else 0.0
    return AndersonShieldsResult(
        value=float(np.sum(terms)), terms=terms, slope=slope, diverges=bool(slope >= -_SLOPE_ROUNDOFF)
    )


def coef_power_sum(f: PolyLike, p: float, weight_exponent: float) -> float:
    """``sum_{k >= 1} k^weight_exponent |a_k|^p``."""
    f = as_poly(f)
    if not p > 1:
        raise DomainError("p must be > 1")
    a = np.abs(f.coeffs[1:])
    k = np.arange(1, f.degree + 1, dtype=float)
    return float(np.sum(k**weight_exponent * a**p))


def d_alpha_norm(f: PolyLike, alpha: float) -> float:
    """``(sum (n+1)^(1-alpha) |a_n|^2)^(1/2)``."""
    f = as_poly(f)
    n1 = np.arange(1, f.degree + 2, dtype=float)
    return float(np.sqrt(np.sum(n1 ** (1 - alpha) * np.abs(f.coeffs) ** 2)))


def logpower_series(alpha: float, variant: str, N: int) -> TaylorPolynomial:
    """Coefficients up to degree ``N`` of the two log-power test series.

    ``"shifted"``: ``a_n = 1 / ((n+1) log(n+2)^alpha)`` for ``n >= 0``.
    ``"plain"``:   ``a_k = 1 / (k log(k)^alpha)`` for ``k >= 2``; ``a_0 = a_1 = 0``.
    """
    N = int(N)
    if N < 2:
        raise DomainError("N must be >= 2")
    if variant == "shifted":
        n = np.arange(N + 1, dtype=float)
        return TaylorPolynomial(1.0 / ((n + 1) * np.log(n + 2) ** alpha))
    if variant == "plain":
        k = np.arange(2, N + 1, dtype=float)
        a = np.zeros(N + 1)
        a[2:] = 1.0 / (k * np.log(k) ** alpha)
        return TaylorPolynomial(a)
    raise DomainError(f"unknown variant {variant!r}")


def log_series(N: int) -> TaylorPolynomial:
    """Partial sum of ``log(2/(1-z)) = log 2 + sum_{k>=1} z^k / k``."""
    a = np.empty(N + 1)
    a[0] = np.log(2.0)
    a[1:] = 1.0 / np.arange(1, N + 1)
    return TaylorPolynomial(a)
