"""H_mu on coefficients versus the integral form I_mu."""

# %%
import numpy as np

from hmulab import (
    Besov,
    Lebesgue,
    LogPowerDensity,
    agreement_check,
    hankel_apply,
    integral_apply,
    log_series,
    well_definedness_test,
)

# %% Lebesgue measure gives the classical Hilbert matrix
app = hankel_apply(Lebesgue(), [1.0], 8)
print("first Hilbert column:", app.output.coeffs)

# %% a random Bloch-type polynomial under a log-power measure
rng = np.random.default_rng(0)
k = np.arange(65, dtype=float)
k[0] = 1
f = rng.choice([-1.0, 1.0], 65) / k
mu = LogPowerDensity(2.0)
app = hankel_apply(mu, f, 512)
print("tail bound at |z|=0.9:", app.tail_bound(0.9))

# %% both sides agree inside the disc
z = 0.9 * np.exp(2j * np.pi * np.arange(12) / 12)
print("I_mu f at two points:", integral_apply(mu, f, z[:2]))
rep = agreement_check(mu, f, z, 512)
print(f"max |H f - I f| = {rep.max_diff:.2e}, tail bound {rep.tail_bound:.2e}")

# %% well-definedness verdicts
print(well_definedness_test(mu))
print(well_definedness_test(LogPowerDensity(0.5), Besov(2.0)))

# %% H_mu of the log series decays like the moments
out = hankel_apply(mu, log_series(1024), 4096).output.coeffs
print("b_n at n=2^j:", out[2 ** np.arange(2, 12)])
