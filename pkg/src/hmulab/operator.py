"""The Hankel operator of a moment sequence and its integral representation."""

from __future__ import annotations

import inspect
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import DivergenceError, DomainError, WellDefinednessError
from .measure import Measure, MomentSequence, integrate, log_factor, moments
from .series import PolyLike, TaylorPolynomial, as_poly, evaluate
from .specfile import spec_key

__all__ = [
    "HankelApplication",
    "AgreementReport",
    "WellDefinedness",
    "Besov",
    "BLOCH_BMOA_QS",
    "MomentCache",
    "DEFAULT_CACHE",
    "hankel_sums",
    "hankel_apply",
    "integral_apply",
    "agreement_check",
    "log_moment",
    "well_definedness_test",
]


# ---------------------------------------------------------------------------
# moment cache


def _size_class(n: int) -> int:
    """Round ``n`` up to ``m * 2^e`` with ``8 <= m < 16`` (8 classes per octave)."""
    e = max(0, int(n).bit_length() - 4)
    return -(-int(n) // (1 << e)) << e


class MomentCache:
    """Thread-safe memo of moment sequences keyed by measure hash and size class.

    The computed length depends only on the size class, never on the order of
    requests, so every caller sees identical values.
    """

    def __init__(self, maxsize: int = 16):
        self.maxsize = maxsize
        self._lock = threading.Lock()
        self._data: OrderedDict[tuple[str, int], MomentSequence] = OrderedDict()

    def get(self, mu: Measure, M: int) -> MomentSequence:
        if M < 0:
            raise DomainError("M must be >= 0")
        size = _size_class(M + 1)
        key = (spec_key(mu), size)
        with self._lock:
            seq = self._data.get(key)
            if seq is None:
                seq = moments(mu, size - 1)
                seq.values.setflags(write=False)
                self._data[key] = seq
                while len(self._data) > self.maxsize:
                    self._data.popitem(last=False)
            else:
                self._data.move_to_end(key)
        return MomentSequence(seq.values[: M + 1], seq.source, seq.quadrature_error)

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


DEFAULT_CACHE = MomentCache()


# ---------------------------------------------------------------------------
# H_mu


def _neumaier_hankel(mom: np.ndarray, a: np.ndarray, n_out: int) -> np.ndarray:
    """``b_n = sum_k mom[n + k] a[k]`` for ``n <= n_out``, real ``a``.

    Terms are added in ascending ``k`` with Neumaier compensation, vectorised
    across ``n``.
    """
    m = n_out + 1
    s = np.zeros(m)
    comp = np.zeros(m)
    term = np.empty(m)
    tsum = np.empty(m)
    diff = np.empty(m)
    big = np.empty(m, dtype=bool)
    for k in np.flatnonzero(a):
        np.multiply(mom[k : k + m], a[k], out=term)
        np.add(s, term, out=tsum)
        np.greater_equal(np.abs(s), np.abs(term), out=big)
        # big: (s - tsum) + term, else (term - tsum) + s
        np.subtract(s, tsum, out=diff)
        diff += term
        np.subtract(term, tsum, out=term)
        term += s
        np.copyto(term, diff, where=big)
        comp += term
        s, tsum = tsum, s
    return s + comp


def hankel_sums(mom, a, n_out: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients ``sum_k mom[n+k] a_k`` and row sums ``sum_k mom[n+k] |a_k|``."""
    mom = np.asarray(mom, dtype=float)
    a = np.asarray(a)
    if mom.size < n_out + a.size:
        raise DomainError(f"need {n_out + a.size} moments, got {mom.size}")
    if np.iscomplexobj(a):
        out = _neumaier_hankel(mom, a.real.copy(), n_out) + 1j * _neumaier_hankel(
            mom, a.imag.copy(), n_out
        )
        rows = _neumaier_hankel(mom, np.abs(a), n_out)
    else:
        a = a.astype(float)
        out = _neumaier_hankel(mom, a, n_out)
        rows = out.copy() if np.all(a >= 0) else _neumaier_hankel(mom, np.abs(a), n_out)
    return out, rows


@dataclass(frozen=True)
class HankelApplication:
    input: TaylorPolynomial
    moments: MomentSequence
    output: TaylorPolynomial
    absolute_row_sums: np.ndarray

    def tail_bound(self, radius: float) -> float:
        """Bound on ``sum_{n > N_out} |b_n| radius^n`` from the last row sum."""
        if not 0 <= radius < 1:
            raise DomainError("radius must lie in [0, 1)")
        n_out = self.output.degree
        return float(self.absolute_row_sums[-1] * radius ** (n_out + 1) / (1.0 - radius))


def hankel_apply(
    mu: Measure, f: PolyLike, N_out: int, *, cache: MomentCache | None = DEFAULT_CACHE
) -> HankelApplication:
    """First ``N_out + 1`` Taylor coefficients of ``H_mu f``."""
    f = as_poly(f)
    N_out = int(N_out)
    if N_out < 0:
        raise DomainError("N_out must be >= 0")
    M = N_out + f.degree
    seq = cache.get(mu, M) if cache is not None else moments(mu, M)
    out, rows = hankel_sums(seq.values, f.coeffs, N_out)
    return HankelApplication(
        input=f, moments=seq, output=TaylorPolynomial(out), absolute_row_sums=rows
    )


# ---------------------------------------------------------------------------
# I_mu

FunctionLike = Union[PolyLike, Callable[[np.ndarray], np.ndarray]]


def _as_function(f: FunctionLike):
    """Normalise to ``func(t, one_minus_t)``."""
    if callable(f) and not isinstance(f, TaylorPolynomial):
        try:
            two = len(inspect.signature(f).parameters) >= 2
        except (TypeError, ValueError):
            two = False
        return (f if two else (lambda t, omt: f(t))), None
    poly = as_poly(f)
    return (lambda t, omt: evaluate(poly, t)), poly


def integral_apply(
    mu: Measure,
    f: FunctionLike,
    z,
    *,
    rtol: float = 1e-12,
    log_growth: float | None = None,
):
    """``int f(t) / (1 - t z) dmu(t)`` for each ``z`` with ``|z| < 1``.

    ``f`` is a polynomial or a vectorised callable on ``[0, 1)``.  A callable
    taking two arguments receives ``(t, 1 - t)``, the second computed without
    cancellation, which matters for integrands singular at 1.  For a
    callable, ``log_growth`` (default 1, the Bloch growth rate) bounds
    ``|f(t)|`` by a power of ``log(2/(1-t))`` for truncation purposes.  The
    companion integral ``int |f(t)| / (1 - t|z|) dmu`` is evaluated alongside;
    if it is not finite a :class:`WellDefinednessError` is raised.
    """
    func, poly = _as_function(f)
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    if np.any(np.abs(zz) >= 1):
        raise DomainError("z must lie in the open unit disc")
    if log_growth is None:
        log_growth = 0.0 if poly is not None else 1.0
    one_minus_z = 1.0 - zz
    rho = np.abs(zz)

    def integrand(t, omt):
        vals = np.asarray(func(t, omt))
        den = one_minus_z[None, :] + zz[None, :] * omt[:, None]
        absden = (1.0 - rho)[None, :] + rho[None, :] * omt[:, None]
        return np.concatenate(
            [vals[:, None] / den, (np.abs(vals)[:, None] / absden).astype(complex)], axis=1
        )

    try:
        res = integrate(mu, integrand, rtol=rtol, log_growth=log_growth)
    except DivergenceError as exc:
        raise WellDefinednessError(f"integral operator not defined: {exc}") from None
    value, absolute = res[: zz.size], res[zz.size :].real
    if not np.all(np.isfinite(absolute)):
        raise WellDefinednessError("absolute integral diverges")
    return value[0] if np.ndim(z) == 0 else value.reshape(np.shape(z))


# ---------------------------------------------------------------------------
# well-definedness and agreement


@dataclass(frozen=True)
class Besov:
    p: float

    def __post_init__(self):
        if not self.p > 1:
            raise DomainError("Besov exponent must exceed 1")

    @property
    def exponent(self) -> float:
        """``1/p'`` where ``1/p + 1/p' = 1``."""
        return 1.0 - 1.0 / self.p


BLOCH_BMOA_QS = "bloch_bmoa_qs"


@dataclass(frozen=True)
class WellDefinedness:
    verdict: str  # "defined" | "undefined" | "boundary"
    exponent: float
    integral: float
    space: str

    def __bool__(self):
        return self.verdict == "defined"


def _log_integrable(mu: Measure, gamma: float, strict: bool) -> bool:
    """Whether ``int log(2/(1-t))^g dmu`` is finite for ``g = gamma``
    (``strict=False``) or for every ``g < gamma`` (``strict=True``).

    In ``u = -log(1-t)`` a term is ``exp(-s u) (log 2 + u)^(g - alpha)``.
    """
    for term in mu.canonical.terms:
        if term.s > 0:
            continue
        if term.s < 0:
            return False
        if strict and term.alpha - gamma < 1:
            return False
        if not strict and term.alpha - gamma <= 1:
            return False
    return True


def log_moment(mu: Measure, gamma: float, *, rtol: float = 1e-12) -> float:
    """``int log(2/(1-t))^gamma dmu(t)``."""

    def weight(t, omt):
        return log_factor(omt) ** gamma

    return float(integrate(mu, weight, rtol=rtol, log_growth=gamma))


def well_definedness_test(mu: Measure, space=BLOCH_BMOA_QS) -> WellDefinedness:
    """Integral test for the integral operator on the Bloch/BMOA/Q_s scale
    (exponent 1) or on ``B^p`` (exponent ``1/p'``).

    ``boundary`` means the test integral diverges at the exponent itself but
    converges for every smaller one.
    """
    if isinstance(space, Besov):
        gamma, name = space.exponent, f"besov(p={space.p!r})"
    elif space == BLOCH_BMOA_QS:
        gamma, name = 1.0, BLOCH_BMOA_QS
    else:
        raise DomainError(f"unknown space {space!r}")
    if _log_integrable(mu, gamma, strict=False):
        return WellDefinedness("defined", gamma, log_moment(mu, gamma), name)
    verdict = "boundary" if isinstance(space, Besov) and _log_integrable(mu, gamma, True) else "undefined"
    return WellDefinedness(verdict, gamma, float("inf"), name)


@dataclass(frozen=True)
class AgreementReport:
    max_diff: float
    tail_bound: float
    n_out: int
    z_grid: np.ndarray
    diffs: np.ndarray = field(repr=False)

    def __float__(self):
        return self.max_diff

    @property
    def within_bound(self) -> bool:
        return self.max_diff <= max(1e-8, self.tail_bound)

    def to_dict(self) -> dict:
        return {
            "max_diff": self.max_diff,
            "tail_bound": self.tail_bound,
            "n_out": self.n_out,
            "z_grid": [[float(z.real), float(z.imag)] for z in self.z_grid],
        }


def agreement_check(
    mu: Measure, f: PolyLike, z_grid, N_out: int, *, cache: MomentCache | None = DEFAULT_CACHE
) -> AgreementReport:
    """Largest ``|H_mu f(z) - I_mu f(z)|`` over ``z_grid``, with the Hankel
    truncation tail bound at the largest ``|z|``."""
    wd = well_definedness_test(mu, BLOCH_BMOA_QS)
    if wd.verdict != "defined":
        raise WellDefinednessError("log-weighted total mass is infinite")
    f = as_poly(f)
    z = np.atleast_1d(np.asarray(z_grid, dtype=complex))
    if z.size == 0:
        raise DomainError("z_grid must be non-empty")
    app = hankel_apply(mu, f, N_out, cache=cache)
    lhs = evaluate(app.output, z)
    rhs = integral_apply(mu, f, z)
    diffs = np.abs(lhs - rhs)
    return AgreementReport(
        max_diff=float(diffs.max()),
        tail_bound=app.tail_bound(float(np.abs(z).max())),
        n_out=int(N_out),
        z_grid=z,
        diffs=diffs,
    )
