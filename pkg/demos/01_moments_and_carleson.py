"""Moments of log-power densities and the Carleson quantifiers."""

# %%
import numpy as np

from hmulab import (
    Atomic,
    LogPowerDensity,
    PowerLogDensity,
    carleson_quantifier,
    is_vanishing,
    log_weight,
    moment_values,
    moments,
    tail_mass,
)

# %% Lebesgue-like tails: mu_n * n (log n)^beta stays in a narrow band
n = np.unique(np.geomspace(64, 65536, 9).astype(int))
for beta in (0.5, 1.0, 2.0):
    vals, err = moment_values(LogPowerDensity(beta), n)
    scaled = vals * n * np.log(n) ** beta
    print(f"beta={beta}: scaled moments {np.round(scaled, 3)}  (quadrature err {err:.1e})")

# %% dense sequences carry Hausdorff checks
seq = moments(LogPowerDensity(2.0), 4096)
seq.check(1e-9)
print("mu_0..mu_4:", seq.values[:5])

# %% tails and quantifiers
mu = LogPowerDensity(1.0)
t = 1 - np.exp2(-np.arange(0, 30, 5))
print("tail masses:", tail_mass(mu, t))

for s, alpha in ((1.0, 0.0), (1.0, 1.0), (1.0, 2.0)):
    q = carleson_quantifier(mu, s, alpha)
    print(f"s={s} alpha={alpha}: sup={q.supremum:.4g} diverges={q.diverges} elasticity={q.growth_exponent:.3f}")

# %% the log-weighted companion nu and the vanishing diagnostic
nu = log_weight(LogPowerDensity(2.0), 1.0)
print("nu Carleson:", not carleson_quantifier(nu, 1.0, 0.0).diverges)
print("vanishing (PowerLog(2,0) weighted):", is_vanishing(log_weight(PowerLogDensity(2.0, 0.0), 1.0)).vanishing)
print("atoms never diverge:", not carleson_quantifier(Atomic((0.5, 0.99), (1.0, 2.0)), 3.0, 2.0).diverges)
