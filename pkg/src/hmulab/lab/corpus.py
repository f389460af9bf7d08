"""Seeded polynomial corpora."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..series import TaylorPolynomial, log_series, logpower_series

DEFAULT_SEED = 20240607
TAUS = (0.5, 1.0, 1.5)


@dataclass(frozen=True)
class Member:
    label: str
    poly: TaylorPolynomial
    params: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.poly.degree


def random_signed(degree: int, tau: float, rng: np.random.Generator) -> TaylorPolynomial:
    """``a_0 = +-1`` and ``a_k = +-k^-tau`` with independent fair signs."""
    k = np.arange(degree + 1, dtype=float)
    k[0] = 1.0
    signs = rng.choice([-1.0, 1.0], size=degree + 1)
    return TaylorPolynomial(signs * k**-tau)


def random_corpus(degree: int, count: int, seed: int = DEFAULT_SEED, taus=TAUS) -> list[Member]:
    """``count`` members cycling through ``taus``; member ``i`` uses the
    generator seeded by ``(seed, degree, i)``."""
    out = []
    for i in range(count):
        tau = taus[i % len(taus)]
        rng = np.random.default_rng([seed, degree, i])
        out.append(Member(f"rand_tau{tau}_d{degree}_{i}", random_signed(degree, tau, rng),
                          {"seed": seed, "index": i, "tau": tau, "degree": degree}))
    return out


def growing_corpus(max_log2: int = 12, min_log2: int = 4, seed: int = DEFAULT_SEED, per_degree: int = 3):
    """Members ordered by degree ``2^min_log2 .. 2^max_log2``: random signed
    families, the log partial sum and a log-power series at each degree."""
    out = []
    for j in range(min_log2, max_log2 + 1):
        d = 1 << j
        out.extend(random_corpus(d, per_degree, seed))
        out.append(Member(f"log_d{d}", log_series(d), {"degree": d}))
        out.append(Member(f"logpower_plain0.5_d{d}", logpower_series(0.5, "plain", d),
                          {"degree": d, "alpha": 0.5}))
    return out


def monomials(log2_range=range(0, 13)) -> list[Member]:
    out = []
    for j in log2_range:
        k = 1 << j
        c = np.zeros(k + 1)
        c[k] = 1.0
        out.append(Member(f"z^{k}", TaylorPolynomial(c), {"k": k, "degree": k}))
    return out
