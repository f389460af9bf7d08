"""Adaptive composite Gauss-Legendre quadrature.

Integrals over ``[0, 1)`` against measures with mass piling up at ``t = 1``
are computed after the substitution ``t = 1 - exp(-u)``.  Every density this
package handles becomes ``exp(-s u) (log 2 + u)^(-alpha)`` in that variable,
which is smooth and decays exponentially, so plain Gauss-Legendre panels on a
truncated ``u`` range converge fast.

The integrators here are vector valued: the integrand receives an array of
nodes of shape ``(m,)`` and returns an array of shape ``(m, ...)``.  All
components share one panel set, which is what makes it cheap to compute a few
thousand moments at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

LOG2 = float(np.log(2.0))


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``order``-point rule on ``[-1, 1]``."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_rule(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule on consecutive ``edges``."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


@dataclass(frozen=True)
class PanelResult:
    """Outcome of :func:`adaptive_panels`.

    ``edges`` is the final panel partition; integrating another integrand of
    the same shape with ``composite_rule(edges, order)`` reproduces the
    accuracy reached on this one.
    """

    edges: np.ndarray
    order: int
    value: np.ndarray
    error: np.ndarray
    converged: bool

    def rule(self) -> tuple[np.ndarray, np.ndarray]:
        return composite_rule(self.edges, self.order)


def _panel_sums(func, left, right, order):
    """Order-m estimate on each panel and on its two halves."""
    mid = 0.5 * (left + right)
    coarse_edges = np.stack([left, right], axis=1)
    fine_edges = np.stack([left, mid, right], axis=1)

    x, w = gauss_legendre(order)
    npan = left.size

    def integrate_on(lo, hi):
        half = 0.5 * (hi - lo)
        c = 0.5 * (hi + lo)
        nodes = (c[:, None] + half[:, None] * x[None, :]).ravel()
        vals = np.asarray(func(nodes))
        vals = vals.reshape((npan, order) + vals.shape[1:])
        wts = half[:, None] * w[None, :]
        return np.einsum("pm,pm...->p...", wts, vals)

    coarse = integrate_on(coarse_edges[:, 0], coarse_edges[:, 1])
    fine_left = integrate_on(fine_edges[:, 0], fine_edges[:, 1])
    fine_right = integrate_on(fine_edges[:, 1], fine_edges[:, 2])
    return coarse, fine_left, fine_right


def adaptive_panels(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    order: int = 16,
    rtol: float = 1e-12,
    atol: float = 0.0,
    initial_panels: int = 8,
    max_panels: int = 1 << 15,
) -> PanelResult:
    """Integrate ``func`` over ``[a, b]`` by panel bisection.

    A panel is accepted when its single-panel estimate and the sum over its
    two halves agree to within its share (by width) of the global tolerance,
    componentwise.  Rejected panels are split in two and re-examined.  The
    returned value is the sum of the half-panel estimates, so the returned
    ``edges`` already include those halves.
    """
    if not b > a:
        raise ValueError(f"empty interval [{a}, {b}]")

    left = np.linspace(a, b, initial_panels + 1)[:-1]
    right = np.linspace(a, b, initial_panels + 1)[1:]
    accepted_edges: list[np.ndarray] = []
    accepted_vals = []
    accepted_errs = []
    total_width = b - a
    converged = True

    while left.size:
        coarse, fl, fr = _panel_sums(func, left, right, order)
        fine = fl + fr
        err = np.abs(coarse - fine)

        # Running estimate of the whole integral, for the relative tolerance.
        estimate = fine.sum(axis=0)
        for v in accepted_vals:
            estimate = estimate + v.sum(axis=0)
        scale = rtol * np.abs(estimate) + atol

        share = ((right - left) / total_width).reshape((-1,) + (1,) * (err.ndim - 1))
        ok = err <= share * scale + 64 * np.finfo(float).eps * np.abs(fine)
        if err.ndim > 1:
            ok = ok.reshape(ok.shape[0], -1).all(axis=1)

        n_total = sum(e.size for e in accepted_edges) + 2 * left.size
        if n_total >= max_panels:
            ok[:] = True
            converged = False

        mids = 0.5 * (left + right)
        accepted_edges.append(np.concatenate([left[ok], mids[ok]]))
        accepted_vals.append(fine[ok])
        accepted_errs.append(err[ok])

        bad = ~ok
        left, right = (
            np.concatenate([left[bad], mids[bad]]),
            np.concatenate([mids[bad], right[bad]]),
        )

    edges = np.unique(np.concatenate(accepted_edges + [np.array([a, b])]))
    value = np.concatenate(accepted_vals).sum(axis=0)
    error = np.concatenate(accepted_errs).sum(axis=0)
    return PanelResult(edges=edges, order=order, value=value, error=error, converged=converged)


def tail_cutoff(s: float, alpha: float, u_start: float, rel: float) -> float:
    """Smallest ``U >= u_start`` (on a ``1/s`` lattice) where the envelope
    ``exp(-s u) (log 2 + u)^(-alpha)`` has shed all but ``rel`` of its tail
    mass beyond ``u_start``.
    """
    if s <= 0:
        raise ValueError("tail_cutoff needs exponential decay (s > 0)")
    base = LOG2 + u_start
    step = 1.0 / s
    u = u_start
    while True:
        ratio = np.exp(-s * (u - u_start)) * ((LOG2 + u) / base) ** (-alpha)
        if alpha < 0:
            ratio *= 1.0 + (-alpha) / (s * (LOG2 + u))
        if ratio <= rel:
            return u
        u += step
