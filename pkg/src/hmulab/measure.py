"""Finite positive Borel measures on [0, 1).

Every measure is reduced to a canonical form: a finite list of atoms plus a
finite list of density terms

    coef * (1 - t)^(s - 1) * (log(2 / (1 - t)))^(-alpha) dt   on (lower, 1).

That family is closed under the two transformations the rest of the package
needs (multiplying by a power of ``log(2/(1-t))`` and cutting off everything
below ``r``), and after ``t = 1 - exp(-u)`` each term becomes
``coef * exp(-s u) * (log 2 + u)^(-alpha) du``, which the quadrature module
integrates to near machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DivergenceError, DomainError
from .quadrature import LOG2, adaptive_panels, tail_cutoff

__all__ = [
    "Measure",
    "Atomic",
    "Lebesgue",
    "LogPowerDensity",
    "PowerLogDensity",
    "WeightedSum",
    "LogWeighted",
    "Restricted",
    "MomentSequence",
    "GridSpec",
    "QuantifierReport",
    "VanishingReport",
    "log_factor",
    "moments",
    "moment_values",
    "total_mass",
    "tail_mass",
    "head_mass",
    "integrate",
    "log_weight",
    "truncate_tail",
    "carleson_quantifier",
    "is_vanishing",
    "embedding_probe",
]

# Relative size of the discarded u-tail compared with the integrand envelope.
_TAIL_REL = 1e-17
# Elasticity of the quantifier with respect to log(2/(1-t)) above which a
# monotone final stretch is read as unbounded growth.
DIVERGENCE_ELASTICITY = 0.25


def log_factor(one_minus_t):
    """``log(2 / (1 - t))`` evaluated from ``1 - t`` (no cancellation)."""
    return LOG2 - np.log(one_minus_t)


# ---------------------------------------------------------------------------
# canonical form


@dataclass(frozen=True)
class _Term:
    coef: float
    s: float
    alpha: float
    lower: float = 0.0

    @property
    def u0(self) -> float:
        return float(-np.log1p(-self.lower))

    def check(self):
        if self.s <= 0:
            if self.alpha <= 1:
                raise DivergenceError(
                    f"density (1-t)^({self.s}-1) log(2/(1-t))^(-{self.alpha}) has infinite mass"
                )
            raise DomainError("densities without a (1-t)^s factor, s > 0, are not supported")

    def envelope(self, u):
        return self.coef * np.exp(-self.s * u) * (LOG2 + u) ** (-self.alpha)


@dataclass(frozen=True)
class _Canonical:
    t: np.ndarray
    omt: np.ndarray
    w: np.ndarray
    terms: tuple[_Term, ...]


class Measure:
    """Base class; concrete kinds are the frozen dataclasses below."""

    def _canonical(self) -> _Canonical:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def canonical(self) -> _Canonical:
        # frozen dataclasses: stash the cache without tripping __setattr__
        try:
            return self.__dict__["_canon_cache"]
        except KeyError:
            c = self._canonical()
            object.__setattr__(self, "_canon_cache", c)
            return c

    def breakpoints(self) -> np.ndarray:
        """Points where ``t -> mu([t, 1))`` jumps or changes formula."""
        c = self.canonical
        lowers = [tm.lower for tm in c.terms if tm.lower > 0]
        return np.unique(np.concatenate([c.t, np.asarray(lowers, dtype=float)]))


def _positive(name, value):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class Atomic(Measure):
    """Finite sum of point masses.  The empty measure is the zero measure."""

    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(t) for t in np.atleast_1d(self.points))
        wts = tuple(float(w) for w in np.atleast_1d(self.weights))
        if len(pts) != len(wts):
            raise DomainError("points and weights differ in length")
        for t in pts:
            if not 0.0 <= t < 1.0:
                raise DomainError(f"atom {t!r} outside [0, 1)")
        for w in wts:
            _positive("atom weight", w)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    def _canonical(self):
        t = np.asarray(self.points, dtype=float)
        return _Canonical(t, 1.0 - t, np.asarray(self.weights, dtype=float), ())


@dataclass(frozen=True)
class Lebesgue(Measure):
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "scale", _positive("scale", self.scale))

    def _canonical(self):
        return _Canonical(np.empty(0), np.empty(0), np.empty(0), (_Term(self.scale, 1.0, 0.0),))


@dataclass(frozen=True)
class LogPowerDensity(Measure):
    """``(log(2/(1-t)))^(-beta) dt``."""

    beta: float

    def __post_init__(self):
        beta = float(self.beta)
        if not (np.isfinite(beta) and beta >= 0):
            raise DomainError(f"beta must be >= 0, got {beta!r}")
        object.__setattr__(self, "beta", beta)

    def _canonical(self):
        return _Canonical(np.empty(0), np.empty(0), np.empty(0), (_Term(1.0, 1.0, self.beta),))


@dataclass(frozen=True)
class PowerLogDensity(Measure):
    """``(1-t)^(s-1) (log(2/(1-t)))^(-alpha) dt`` with ``s >= 1``."""

    s: float
    alpha: float = 0.0

    def __post_init__(self):
        s, alpha = float(self.s), float(self.alpha)
        if not (np.isfinite(s) and s >= 1):
            raise DomainError(f"s must be >= 1, got {s!r}")
        if not (np.isfinite(alpha) and alpha >= 0):
            raise DomainError(f"alpha must be >= 0, got {alpha!r}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "alpha", alpha)

    def _canonical(self):
        return _Canonical(np.empty(0), np.empty(0), np.empty(0), (_Term(1.0, self.s, self.alpha),))


@dataclass(frozen=True)
class WeightedSum(Measure):
    components: tuple[tuple[float, Measure], ...]

    def __post_init__(self):
        comps = tuple((_positive("coefficient", c), m) for c, m in self.components)
        if not comps:
            raise DomainError("WeightedSum needs at least one component")
        for _, m in comps:
            if not isinstance(m, Measure):
                raise DomainError(f"component {m!r} is not a Measure")
        object.__setattr__(self, "components", comps)

    def _canonical(self):
        ts, omts, ws, terms = [], [], [], []
        for c, m in self.components:
            k = m.canonical
            ts.append(k.t)
            omts.append(k.omt)
            ws.append(c * k.w)
            terms.extend(_Term(c * tm.coef, tm.s, tm.alpha, tm.lower) for tm in k.terms)
        return _Canonical(np.concatenate(ts), np.concatenate(omts), np.concatenate(ws), tuple(terms))


@dataclass(frozen=True)
class LogWeighted(Measure):
    """``(log(2/(1-t)))^alpha d(base)``; produced by :func:`log_weight`."""

    base: Measure
    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not (np.isfinite(alpha) and alpha >= 0):
            raise DomainError(f"alpha must be >= 0, got {alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    def _canonical(self):
        k = self.base.canonical
        w = k.w * log_factor(k.omt) ** self.alpha
        terms = tuple(_Term(tm.coef, tm.s, tm.alpha - self.alpha, tm.lower) for tm in k.terms)
        return _Canonical(k.t, k.omt, w, terms)


@dataclass(frozen=True)
class Restricted(Measure):
    """``base`` restricted to the open interval ``(r, 1)``."""

    base: Measure
    r: float

    def __post_init__(self):
        r = float(self.r)
        if not 0.0 < r < 1.0:
            raise DomainError(f"r must lie in (0, 1), got {r!r}")
        object.__setattr__(self, "r", r)

    def _canonical(self):
        k = self.base.canonical
        keep = k.t > self.r
        terms = tuple(_Term(tm.coef, tm.s, tm.alpha, max(tm.lower, self.r)) for tm in k.terms)
        return _Canonical(k.t[keep], k.omt[keep], k.w[keep], terms)


# ---------------------------------------------------------------------------
# transformations


def log_weight(mu: Measure, alpha: float) -> Measure:
    """The measure ``(log(2/(1-t)))^alpha dmu(t)``."""
    alpha = float(alpha)
    if not alpha >= 0:
        raise DomainError(f"alpha must be >= 0, got {alpha!r}")
    if alpha == 0:
        return mu
    if isinstance(mu, Atomic):
        t = np.asarray(mu.points)
        w = np.asarray(mu.weights) * log_factor(1.0 - t) ** alpha
        return Atomic(mu.points, tuple(w))
    if isinstance(mu, LogPowerDensity) and alpha <= mu.beta:
        return LogPowerDensity(mu.beta - alpha)
    if isinstance(mu, PowerLogDensity) and alpha <= mu.alpha:
        return PowerLogDensity(mu.s, mu.alpha - alpha)
    if isinstance(mu, WeightedSum):
        return WeightedSum(tuple((c, log_weight(m, alpha)) for c, m in mu.components))
    if isinstance(mu, LogWeighted):
        return LogWeighted(mu.base, mu.alpha + alpha)
    measure = LogWeighted(mu, alpha)
    for tm in measure.canonical.terms:
        tm.check()
    return measure


def truncate_tail(mu: Measure, r: float) -> Measure:
    """Restriction of ``mu`` to ``(r, 1)``."""
    r = float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    if isinstance(mu, Atomic):
        keep = [(t, w) for t, w in zip(mu.points, mu.weights) if t > r]
        return Atomic(tuple(t for t, _ in keep), tuple(w for _, w in keep))
    if isinstance(mu, Restricted):
        return Restricted(mu.base, max(mu.r, r))
    return Restricted(mu, r)


# ---------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``mu_0 .. mu_M`` of a measure on [0, 1)."""

    values: np.ndarray
    source: str
    quadrature_error: float = 0.0

    def __len__(self):
        return len(self.values)

    def __getitem__(self, item):
        return self.values[item]

    @property
    def M(self) -> int:
        return len(self.values) - 1

    def hausdorff_defect(self, max_order: int = 3) -> float:
        """Most negative ``(-1)^j Delta^j mu_n`` for ``j <= max_order``,
        relative to ``mu_0`` (zero when the sequence is completely monotone
        to that order)."""
        v = np.asarray(self.values, dtype=float)
        worst = 0.0
        d = v.copy()
        for j in range(1, max_order + 1):
            d = d[:-1] - d[1:]
            if d.size:
                worst = min(worst, float(d.min()))
        return worst / v[0] if v[0] > 0 else worst

    def check(self, tol: float = 1e-9) -> None:
        v = np.asarray(self.values, dtype=float)
        if np.any(v < -tol * v[0]):
            raise AssertionError("negative moment")
        if np.any(np.diff(v) > tol * v[0]):
            raise AssertionError("moments not non-increasing")
        if self.hausdorff_defect() < -tol:
            raise AssertionError("moments not completely monotone to order 3")


def _probe_orders(nmin: int, nmax: int) -> np.ndarray:
    small = np.arange(nmin, min(nmax, nmin + 4) + 1)
    if nmax <= nmin + 4:
        return small
    big = np.geomspace(max(nmin, 1), nmax, int(4 * np.log2(nmax / max(nmin, 1))) + 2)
    return np.unique(np.concatenate([small, np.rint(big).astype(np.int64), [nmax]]))


def _term_moment_rule(term: _Term, nmin: int, nmax: int, rtol: float):
    term.check()
    u0 = term.u0
    u_peak = max(u0, float(np.log(nmax + 1.0)))
    U = tail_cutoff(term.s, term.alpha, u_peak, _TAIL_REL)
    probes = _probe_orders(nmin, nmax).astype(float)

    def integrand(u):
        logt = np.log1p(-np.exp(-u))
        return term.envelope(u)[:, None] * np.exp(logt[:, None] * probes[None, :])

    res = adaptive_panels(integrand, u0, U, rtol=rtol)
    rel_err = float(np.max(res.error / np.abs(res.value)))
    return res.rule(), rel_err, float(np.max(res.error))


def _batched_moments(nodes, weights, term, orders, chunk_elems=1 << 23):
    env = term.envelope(nodes) * weights
    logt = np.log1p(-np.exp(-nodes))
    out = np.empty(orders.size)
    step = max(1, chunk_elems // max(nodes.size, 1))
    for i in range(0, orders.size, step):
        o = orders[i : i + step].astype(float)
        out[i : i + step] = env @ np.exp(logt[:, None] * o[None, :])
    return out


def moment_values(mu: Measure, orders, *, rtol: float = 1e-12) -> tuple[np.ndarray, float]:
    """``int t^n dmu`` for each ``n`` in ``orders``, with an absolute error
    estimate.  Orders may be sparse and large (up to a few million)."""
    orders = np.asarray(orders, dtype=np.int64)
    if orders.size == 0:
        return np.empty(0), 0.0
    if orders.min() < 0:
        raise DomainError("moment orders must be >= 0")
    c = mu.canonical
    values = np.zeros(orders.size)
    if c.t.size:
        step = max(1, (1 << 22) // c.t.size)
        for i in range(0, orders.size, step):
            o = orders[i : i + step]
            values[i : i + step] = np.power(c.t[None, :], o[:, None]) @ c.w
    err = 0.0
    nmin, nmax = int(orders.min()), int(orders.max())
    for term in c.terms:
        (nodes, weights), _, abs_err = _term_moment_rule(term, nmin, nmax, rtol)
        values += _batched_moments(nodes, weights, term, orders)
        err += abs_err
    if not np.all(np.isfinite(values)):
        raise DivergenceError("non-finite moment")
    return values, err


def moments(mu: Measure, M: int, *, rtol: float = 1e-12) -> MomentSequence:
    """Moments ``mu_0 .. mu_M``."""
    M = int(M)
    if M < 0:
        raise DomainError("M must be >= 0")
    values, err = moment_values(mu, np.arange(M + 1), rtol=rtol)
    return MomentSequence(values=values, source=repr(mu), quadrature_error=err)


# ---------------------------------------------------------------------------
# integrals and masses


def integrate(
    mu: Measure,
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    *,
    rtol: float = 1e-12,
    log_growth: float = 0.0,
) -> np.ndarray:
    """``int func(t) dmu(t)``.

    ``func(t, one_minus_t)`` receives both ``t`` and an accurate ``1 - t``
    and returns an array of shape ``(len(t), ...)``.  ``log_growth`` bounds
    how fast ``|func|`` may grow, as a power of ``log(2/(1-t))``; it moves
    the truncation point of the ``u`` range accordingly.
    """
    c = mu.canonical
    total = None
    if c.t.size:
        vals = np.asarray(func(c.t, c.omt))
        total = np.tensordot(c.w, vals, axes=(0, 0))
    for term in c.terms:
        term.check()
        U = tail_cutoff(term.s, term.alpha - log_growth, term.u0, _TAIL_REL)

        def integrand(u, term=term):
            omt = np.exp(-u)
            vals = np.asarray(func(-np.expm1(-u), omt))
            env = term.envelope(u)
            return vals * env.reshape((-1,) + (1,) * (vals.ndim - 1))

        res = adaptive_panels(integrand, term.u0, U, rtol=rtol)
        total = res.value if total is None else total + res.value
    if total is None:
        total = np.zeros(np.asarray(func(np.zeros(1), np.ones(1))).shape[1:])
    if not np.all(np.isfinite(total)):
        raise DivergenceError("integral is not finite")
    return total


def _term_tail(term: _Term, omt: np.ndarray) -> np.ndarray:
    w = np.maximum(-np.log(omt), term.u0)
    if term.alpha == 0.0:
        return term.coef * np.exp(-term.s * w) / term.s
    wmin = float(w.min())
    V = tail_cutoff(term.s, term.alpha, wmin, _TAIL_REL) - wmin

    def integrand(v):
        return np.exp(-term.s * v)[:, None] * (LOG2 + w[None, :] + v[:, None]) ** (-term.alpha)

    res = adaptive_panels(integrand, 0.0, V, rtol=1e-13)
    return term.coef * np.exp(-term.s * w) * res.value


def _tail_mass_omt(mu: Measure, t: np.ndarray, omt: np.ndarray) -> np.ndarray:
    c = mu.canonical
    out = np.zeros(t.shape)
    if c.t.size:
        out += (c.t[None, :] >= t[:, None]).astype(float) @ c.w
    for term in c.terms:
        term.check()
        out += _term_tail(term, omt)
    return out


def _as_unit_points(t):
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr < 0) or np.any(arr >= 1):
        raise DomainError("t must lie in [0, 1)")
    return arr


def tail_mass(mu: Measure, t):
    """``mu([t, 1))``; atoms at ``t`` itself are included."""
    arr = _as_unit_points(t)
    out = _tail_mass_omt(mu, arr, 1.0 - arr)
    return float(out[0]) if np.ndim(t) == 0 else out


def head_mass(mu: Measure, t):
    """``mu([0, t))``, computed by direct quadrature on ``[0, t)``."""
    arr = _as_unit_points(t)
    c = mu.canonical
    out = np.zeros(arr.shape)
    if c.t.size:
        out += (c.t[None, :] < arr[:, None]).astype(float) @ c.w
    for term in c.terms:
        term.check()
        u_hi = -np.log1p(-arr)
        span = np.maximum(u_hi - term.u0, 0.0)
        live = span > 0
        if not np.any(live):
            continue

        def integrand(x, span=span[live]):
            u = term.u0 + x[:, None] * span[None, :]
            return term.envelope(u) * span[None, :]

        res = adaptive_panels(integrand, 0.0, 1.0, rtol=1e-13)
        out[live] += res.value
    return float(out[0]) if np.ndim(t) == 0 else out


def total_mass(mu: Measure) -> float:
    return float(_tail_mass_omt(mu, np.zeros(1), np.ones(1))[0])


# ---------------------------------------------------------------------------
# Carleson-type quantifiers


@dataclass(frozen=True)
class GridSpec:
    """Radially exponential grid ``t_j = 1 - 2^(-j/per_octave)``,
    ``j = 0 .. per_octave * depth``."""

    depth: int = 30
    per_octave: int = 4

    def one_minus_t(self) -> np.ndarray:
        j = np.arange(self.per_octave * self.depth + 1)
        return np.exp2(-j / self.per_octave)

    def points(self) -> np.ndarray:
        return 1.0 - self.one_minus_t()


@dataclass(frozen=True)
class QuantifierReport:
    """Samples of ``q(t) = mu([t,1)) log(2/(1-t))^alpha / (1-t)^s``."""

    s: float
    alpha: float
    t: np.ndarray
    one_minus_t: np.ndarray
    values: np.ndarray
    supremum: float
    argmax_t: float
    tail_trend: float
    growth_exponent: float
    diverges: bool
    grid: GridSpec = field(default_factory=GridSpec)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.values.tolist()))

    @property
    def value(self) -> float:
        """Supremum, or ``inf`` when the samples grow without bound."""
        return float("inf") if self.diverges else self.supremum


def carleson_quantifier(
    mu: Measure, s: float, alpha: float = 0.0, grid: GridSpec | None = None
) -> QuantifierReport:
    """Sample the (``alpha``-logarithmic) ``s``-Carleson quantifier.

    Atom locations and restriction points of ``mu`` are added to the grid,
    since that is where the quantifier of a measure with jumps peaks.
    """
    s, alpha = float(s), float(alpha)
    if not s > 0:
        raise DomainError("s must be > 0")
    if not alpha >= 0:
        raise DomainError("alpha must be >= 0")
    grid = grid or GridSpec()
    if grid.depth < 20:
        raise DomainError("quantifier grids need depth >= 20")

    g_omt = grid.one_minus_t()
    bp = mu.breakpoints()
    t_all = np.concatenate([1.0 - g_omt, bp])
    omt_all = np.concatenate([g_omt, 1.0 - bp])
    t_all, idx = np.unique(t_all, return_index=True)
    omt_all = omt_all[idx]

    tails = _tail_mass_omt(mu, t_all, omt_all)
    q = tails * log_factor(omt_all) ** alpha / omt_all**s

    k = int(np.argmax(q))
    supremum, argmax_t = float(q[k]), float(t_all[k])

    omt_min = float(g_omt[-1])
    last = omt_all <= 10 * omt_min
    decades = -np.log10(omt_all[last])
    tail_trend = float(np.polyfit(decades, q[last], 1)[0]) if last.sum() >= 2 else 0.0

    window = omt_all <= 1000 * omt_min
    qw = q[window]
    growth = float("nan")
    diverges = False
    if qw.size >= 3 and np.all(qw > 0):
        growth = float(np.polyfit(np.log(log_factor(omt_all[window])), np.log(qw), 1)[0])
        diverges = bool(np.all(np.diff(qw) > 0) and growth >= DIVERGENCE_ELASTICITY)

    return QuantifierReport(
        s=s,
        alpha=alpha,
        t=t_all,
        one_minus_t=omt_all,
        values=q,
        supremum=supremum,
        argmax_t=argmax_t,
        tail_trend=tail_trend,
        growth_exponent=growth,
        diverges=diverges,
        grid=grid,
    )


@dataclass(frozen=True)
class VanishingReport:
    r: np.ndarray
    suprema: np.ndarray
    window: np.ndarray
    vanishing: bool


def is_vanishing(
    mu: Measure, s: float = 1.0, alpha: float = 0.0, depth: int = 30, decades: float = 8.0
) -> VanishingReport:
    """Finite-precision proxy for ``N(mu_r) -> 0`` as ``r -> 1``.

    Quantifier suprema of ``truncate_tail(mu, r)`` at ``r = 1 - 2^-j`` must
    strictly decrease over the final ``decades`` decades of ``1 - r`` and end
    below 1% of their value at the start of that stretch.
    """
    j = np.arange(1, depth + 1)
    r = 1.0 - np.exp2(-j)
    grid = GridSpec(depth=max(depth, 20))
    sups = np.array([carleson_quantifier(truncate_tail(mu, ri), s, alpha, grid).supremum for ri in r])
    window = (1.0 - r) <= 10.0**decades * np.exp2(-depth)
    sw = sups[window]
    vanishing = bool(
        sw.size >= 2 and np.all(np.diff(sw) < 0) and sw[-1] < 0.01 * sw[0]
    )
    return VanishingReport(r=r, suprema=sups, window=window, vanishing=vanishing)


def embedding_probe(mu: Measure, a_grid: Sequence[float]) -> float:
    """Largest ``int (1-a^2)/(1-a t)^2 dmu(t)`` over ``a_grid``.

    The kernel has unit ``H^1`` norm, so this is a lower estimate of the norm
    of the embedding ``H^1 -> L^1(mu)``.
    """
    a = np.asarray(a_grid, dtype=float)
    if a.size == 0:
        raise DomainError("a_grid must be non-empty")
    if np.any(a < 0) or np.any(a >= 1):
        raise DomainError("a_grid must lie in [0, 1)")

    def kernel(t, omt):
        den = (1.0 - a[None, :]) + a[None, :] * omt[:, None]
        return (1.0 - a[None, :] ** 2) / den**2

    vals = integrate(mu, kernel, rtol=1e-11)
    return float(np.max(vals))
