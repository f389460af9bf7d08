"""Bloch, BMOA, Q_s and Besov estimators on a few test functions."""

# %%
import numpy as np

from hmulab import (
    TaylorPolynomial,
    bergman_block_equivalence,
    besov_seminorm_area,
    besov_seminorm_blocks,
    bloch_seminorm,
    bmoa_seminorm,
    coef_power_sum,
    log_series,
    logpower_series,
    qs_seminorm,
)

# %% log(2/(1-z)): Bloch seminorm tends to 2, BMOA stays bounded
for N in (64, 512, 2048):
    F = log_series(N)
    print(N, "bloch", round(bloch_seminorm(F).value, 5), "bmoa", round(bmoa_seminorm(F).value, 4))

# %% Q_1 is BMOA up to the factor 1/sqrt(2); Q_0 is Dirichlet
f = TaylorPolynomial([0.0, 1.0, 0.5, -0.25])
print("Q1 / BMOA:", qs_seminorm(f, 1.0).value / bmoa_seminorm(f).value)
print("Q0^2 =", qs_seminorm(f, 0.0).value ** 2, "= sum k|a_k|^2 =", 1 + 2 * 0.25 + 3 * 0.0625)

# %% area and block forms of the Besov seminorm
g = logpower_series(0.8, "shifted", 1024)
for p in (1.5, 2.0, 3.0):
    area = besov_seminorm_area(g, p)
    blocks = besov_seminorm_blocks(g, p)
    print(f"p={p}: area {area.value:.4f} (err {area.error_indicator:.1e}), blocks {blocks.value:.4f},"
          f" coef sum {coef_power_sum(g, p, p - 1):.4f}")

# %% weighted Bergman integral against its dyadic sum
rng = np.random.default_rng(1)
h = rng.standard_normal(257) / np.arange(1, 258)
for alpha in (0.0, 1.0):
    q1, q2 = bergman_block_equivalence(h, 3.0, alpha)
    print(f"alpha={alpha}: Q1={q1:.4f} Q2={q2:.4f} ratio={q1 / q2:.3f}")
