"""Experiments that exercise the operator and measure results at desk scale.

Every "bounded" claim is tested as stabilisation of a ratio over growing
corpora, every "divergent" claim as growth of partial sums against a model
curve.  Thresholds are harness constants and are written into each report.
"""

from __future__ import annotations

import numpy as np

from ..measure import (
    Atomic,
    GridSpec,
    Lebesgue,
    LogPowerDensity,
    Measure,
    PowerLogDensity,
    WeightedSum,
    carleson_quantifier,
    integrate,
    is_vanishing,
    log_weight,
    moment_values,
    tail_mass,
)
from ..operator import DEFAULT_CACHE, hankel_apply, hankel_sums
from ..series import (
    TaylorPolynomial,
    as_poly,
    dyadic_blocks,
    evaluate,
    hp_norm,
    logpower_series,
)
from ..spaces import besov_norm, besov_seminorm_blocks, bloch_norm, bmoa_seminorm
from ..specfile import dumps
from .corpus import DEFAULT_SEED, Member, growing_corpus, monomials, random_corpus
from .report import Curve, ExperimentReport, inconclusive

__all__ = [
    "EXPERIMENTS",
    "default_family",
    "exp_moment_asymptotics",
    "exp_mu_nu_equivalence",
    "exp_counterexample_bp",
    "exp_necessity_probe",
    "exp_sufficiency_probe",
    "exp_block_bound",
    "exp_bmoa_boundedness",
    "run_experiment",
]

MOMENT_BRACKET = 3.0
EQUIV_BRACKET = (0.1, 10.0)
GROWTH_MIN = 0.25
R2_MIN = 0.9
STABLE_MAX_INCREASE = 0.05
BLOCK_MEDIAN_FACTOR = 10.0
NECESSITY_FACTOR = 10.0


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _spec(mu: Measure) -> str:
    return dumps(mu).strip()


def _running_max_increase(degrees, ratios) -> tuple[float, np.ndarray]:
    """Relative increase of the running maximum over the final decade of degree."""
    degrees = np.asarray(degrees, dtype=float)
    ratios = np.asarray(ratios, dtype=float)
    order = np.argsort(degrees, kind="stable")
    degrees, ratios = degrees[order], ratios[order]
    run = np.maximum.accumulate(ratios)
    early = degrees <= degrees[-1] / 10
    if not np.any(early):
        return float("nan"), run
    before = run[early][-1]
    if before == 0:
        return (0.0 if run[-1] == 0 else float("inf")), run
    return float(run[-1] / before - 1.0), run


# ---------------------------------------------------------------------------
# moment asymptotics


def exp_moment_asymptotics(beta: float, n_lo: int = 1 << 6, n_hi: int = 1 << 16, points: int = 65):
    eid = f"moment_asymptotics_beta{beta:g}"
    params = {"beta": beta, "n_lo": n_lo, "n_hi": n_hi, "points": points}
    thresholds = {"extremes_ratio_max": MOMENT_BRACKET}
    if not beta >= 0:
        return inconclusive(eid, params, "beta must be >= 0", thresholds)
    mu = LogPowerDensity(beta)
    n = np.unique(np.rint(np.geomspace(n_lo, n_hi, points)).astype(np.int64))
    vals, err = moment_values(mu, n)
    ratio = vals * n * np.log(n) ** beta
    ext = float(ratio.max() / ratio.min())
    params.update(measure=_spec(mu), quadrature_error=err)
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("scaled_moments", n.tolist(), ratio.tolist(), {"beta": beta})],
        verdict=_verdict(ext <= MOMENT_BRACKET),
        thresholds=thresholds,
        headline=ext,
    )


# ---------------------------------------------------------------------------
# mu / nu equivalence


def default_family() -> list[tuple[str, Measure]]:
    return [
        ("atom_0.5", Atomic((0.5,), (1.0,))),
        ("atoms_0_0.9_0.99", Atomic((0.0, 0.9, 0.99), (1.0, 0.5, 0.25))),
        ("lebesgue", Lebesgue()),
        ("logpower_0.5", LogPowerDensity(0.5)),
        ("logpower_1", LogPowerDensity(1.0)),
        ("logpower_2", LogPowerDensity(2.0)),
        ("logpower_3", LogPowerDensity(3.0)),
        ("powerlog_2_0", PowerLogDensity(2.0, 0.0)),
        ("powerlog_2_1", PowerLogDensity(2.0, 1.0)),
        ("powerlog_3_0", PowerLogDensity(3.0, 0.0)),
        ("atom_plus_logpower", WeightedSum(((1.0, Atomic((0.9,), (1.0,))), (2.0, LogPowerDensity(1.0))))),
        ("lebesgue_plus_powerlog", WeightedSum(((1.0, Lebesgue()), (1.0, PowerLogDensity(2.0, 2.0))))),
    ]


def exp_mu_nu_equivalence(family=None, s: float = 1.0, alpha: float = 1.0, depth: int = 30):
    eid = f"mu_nu_equivalence_s{s:g}_a{alpha:g}"
    family = family if family is not None else default_family()
    params = {"s": s, "alpha": alpha, "grid_depth": depth}
    thresholds = {"ratio_bracket": list(EQUIV_BRACKET), "classification_disagreements_max": 0}
    if not (s > 0 and alpha >= 0):
        return inconclusive(eid, params, "need s > 0 and alpha >= 0", thresholds)
    grid = GridSpec(depth=depth)
    rows = []
    disagree = 0
    out_of_bracket = 0
    ratios = []
    for name, mu in family:
        qn = carleson_quantifier(log_weight(mu, alpha), s, 0.0, grid)
        qm = carleson_quantifier(mu, s, alpha, grid)
        fin_n, fin_m = not qn.diverges, not qm.diverges
        ratio = qn.supremum / qm.supremum if fin_n and fin_m and qm.supremum > 0 else float("nan")
        if fin_n != fin_m:
            disagree += 1
        elif fin_n and not EQUIV_BRACKET[0] <= ratio <= EQUIV_BRACKET[1]:
            out_of_bracket += 1
        ratios.append(ratio)
        rows.append({"name": name, "measure": _spec(mu), "nu_finite": fin_n, "mu_finite": fin_m,
                     "nu_sup": qn.supremum, "mu_sup": qm.supremum,
                     "nu_elasticity": qn.growth_exponent, "mu_elasticity": qm.growth_exponent})
    params["members"] = rows
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("sup_ratio", list(range(len(ratios))), ratios, {"s": s, "alpha": alpha})],
        verdict=_verdict(disagree == 0 and out_of_bracket == 0),
        thresholds=thresholds,
        headline=float(disagree),
        notes=[f"{disagree} classification disagreements, {out_of_bracket} ratios outside bracket"],
    )


# ---------------------------------------------------------------------------
# counterexample on B^p


def _r_squared(y, x) -> tuple[float, np.ndarray]:
    A = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss = np.sum((y - y.mean()) ** 2)
    return (float(1 - np.sum(resid**2) / ss) if ss > 0 else 0.0), coef


def _premise_slope(p: float, alpha: float, j_lo: int = 8, j_hi: int = 20) -> float:
    """Log-log slope of the dyadic increments of ``sum n^(p-1) a_n^p`` for
    the shifted log-power series; below -1 means the sum converges."""
    j = np.arange(j_lo, j_hi + 1)
    inc = []
    for jj in j:
        n = np.arange(1 << jj, 1 << (jj + 1), dtype=float)
        a = 1.0 / ((n + 1) * np.log(n + 2) ** alpha)
        inc.append(np.sum(n ** (p - 1) * a**p))
    return float(np.polyfit(np.log(j), np.log(inc), 1)[0])


def exp_counterexample_bp(
    p: float = 2.0, beta: float = 0.4, alpha: float = 0.6, n_max_log2: int = 20, degree: int = 1 << 12
):
    eid = f"counterexample_bp_p{p:g}_b{beta:g}_a{alpha:g}"
    params = {"p": p, "beta": beta, "alpha": alpha, "n_max": 1 << n_max_log2, "degree": degree}
    thresholds = {"growth_min": GROWTH_MIN, "r2_min": R2_MIN, "premise_slope_max": -1.0}
    if not (p > 1 and 0 < beta <= 1 / p and alpha > 1 / p):
        return inconclusive(eid, params, "parameters outside p > 1, 0 < beta <= 1/p, alpha > 1/p", thresholds)
    mu = LogPowerDensity(beta)
    q = carleson_quantifier(mu, 1.0, beta)
    carleson_ok = not q.diverges
    slope = _premise_slope(p, alpha)
    g = logpower_series(alpha, "shifted", degree)
    app = hankel_apply(mu, g, 1 << n_max_log2)
    b = np.abs(app.output.coeffs)
    n = np.arange(b.size, dtype=float)
    S = np.cumsum(n ** (p - 1) * b**p)
    N = 2 ** np.arange(10, n_max_log2 + 1)
    SN = S[N]
    growth = float(SN[-1] / SN[0] - 1)
    x = np.log(np.log(N)) if np.isclose(p * beta, 1.0) else np.log(N) ** (1 - p * beta)
    r2, coef = _r_squared(SN, x)
    ok = carleson_ok and slope < -1 and growth >= GROWTH_MIN and r2 >= R2_MIN
    params.update(measure=_spec(mu), carleson_supremum=q.supremum, carleson_finite=carleson_ok,
                  premise_slope=slope, growth=growth, r2=r2, model_coef=coef.tolist(),
                  model="loglog" if np.isclose(p * beta, 1.0) else f"(log N)^{1 - p * beta:g}")
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("partial_sums", N.tolist(), SN.tolist(), {"p": p, "beta": beta, "alpha": alpha})],
        verdict=_verdict(ok),
        thresholds=thresholds,
        headline=growth,
    )


# ---------------------------------------------------------------------------
# necessity probe


def _besov_block_norm(f: TaylorPolynomial, p: float) -> float:
    rho = besov_seminorm_blocks(f, p).value
    return float((abs(f.coeffs[0]) ** p + rho**p) ** (1 / p))


def exp_necessity_probe(mu: Measure | None = None, p: float = 2.0, gamma: float = 0.25,
                        t_grid=None, degree: int = 1 << 12):
    mu = mu if mu is not None else LogPowerDensity(1.0)
    eid = f"necessity_probe_p{p:g}_g{gamma:g}"
    params = {"p": p, "gamma": gamma, "degree": degree, "measure": _spec(mu)}
    thresholds = {"lower_over_norm_max": NECESSITY_FACTOR}
    if not (p > 1 and gamma < 1 - 1 / p):
        return inconclusive(eid, params, "need p > 1 and gamma < 1 - 1/p", thresholds)
    f = logpower_series(1 - gamma, "plain", degree)
    h = hankel_apply(mu, f, degree).output
    norm = _besov_block_norm(h, p)
    if t_grid is None:
        omt = np.exp2(-np.arange(0, 4 * int(np.log2(degree)) + 1) / 4)
        t_grid = 1 - omt
    t = np.asarray(t_grid, dtype=float)
    # stay where a degree-N truncation can still see the measure
    t = t[1 - t >= 4.0 / degree]
    L = np.log(2 / (1 - t))
    lower = L**gamma * tail_mass(mu, t) / (1 - t)
    worst = float(lower.max() / norm) if norm > 0 else float("inf")
    params.update(besov_norm=norm, premise_alpha=1 - gamma, premise_holds=bool(1 - gamma > 1 / p))
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("lower_functional", t.tolist(), lower.tolist(), {"gamma": gamma})],
        verdict=_verdict(worst <= NECESSITY_FACTOR),
        thresholds=thresholds,
        headline=worst,
    )


# ---------------------------------------------------------------------------
# sufficiency probe on B^p


def exp_sufficiency_probe(gamma: float = 2.0, p: float = 2.0, corpus: list[Member] | None = None,
                          max_log2: int = 12, seed: int = DEFAULT_SEED, out_factor: int = 4):
    eid = f"sufficiency_probe_g{gamma:g}_p{p:g}"
    params = {"gamma": gamma, "p": p, "max_degree": 1 << max_log2, "seed": seed, "out_factor": out_factor}
    thresholds = {"final_decade_increase_max": STABLE_MAX_INCREASE}
    if not (gamma > 1 and p > 1):
        return inconclusive(eid, params, "need gamma > 1 and p > 1", thresholds)
    mu = LogPowerDensity(gamma)
    corpus = corpus if corpus is not None else growing_corpus(max_log2, seed=seed)
    degrees, ratios, labels = [], [], []
    for m in corpus:
        h = hankel_apply(mu, m.poly, out_factor * max(m.degree, 1)).output
        ratios.append(besov_norm(h, p) / besov_norm(m.poly, p))
        degrees.append(m.degree)
        labels.append(m.label)
    inc, run = _running_max_increase(degrees, ratios)
    mono = [r for m, r in zip(corpus, ratios) if m.label.startswith("z^")]
    params.update(measure=_spec(mu), members=labels, final_decade_increase=inc)
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("ratio", degrees, ratios, {"labels": labels}),
                Curve("running_max", sorted(degrees), run.tolist())]
        + ([Curve("monomial_ratio", list(range(len(mono))), mono)] if mono else []),
        verdict=_verdict(bool(np.isfinite(inc)) and inc < STABLE_MAX_INCREASE),
        thresholds=thresholds,
        headline=inc,
    )


# ---------------------------------------------------------------------------
# block bound


def exp_block_bound(mu: Measure | None = None, p: float = 2.0, n_range=range(3, 11),
                    f: TaylorPolynomial | None = None, g: TaylorPolynomial | None = None,
                    seed: int = DEFAULT_SEED):
    mu = mu if mu is not None else LogPowerDensity(2.0)
    n_range = list(n_range)
    eid = f"block_bound_p{p:g}"
    params = {"p": p, "n_range": n_range, "measure": _spec(mu), "seed": seed}
    thresholds = {"max_over_median_max": BLOCK_MEDIAN_FACTOR}
    if not n_range or min(n_range) < 3 or not p > 1:
        return inconclusive(eid, params, "block index must be >= 3 and p > 1", thresholds)
    top = 1 << (max(n_range) + 1)
    if f is None:
        f = random_corpus(top, 1, seed, taus=(1.0,))[0].poly
    if g is None:
        g = random_corpus(top, 2, seed, taus=(1.0,))[1].poly
    f, g = as_poly(f), as_poly(g)
    # h_k = c_k int t^(k+1) f(t) dmu = c_k sum_j f_j mu_(k+1+j)
    mom = DEFAULT_CACHE.get(mu, g.degree + f.degree + 2).values
    inner, _ = hankel_sums(mom[1:], f.coeffs, g.degree)
    h = TaylorPolynomial(g.coeffs * inner)
    hb, gb = dyadic_blocks(h).blocks, dyadic_blocks(g).blocks
    ns, cs, skipped = [], [], []
    for n in n_range:
        if n >= len(gb) or not np.any(gb[n].coeffs):
            skipped.append(n)
            continue
        e = (1 << (n - 2)) + 1

        def weight(t, omt, e=e):
            return t**e * np.abs(evaluate(f, t))

        I_n = float(integrate(mu, weight))
        gn = hp_norm(gb[n], p).value
        hn = hp_norm(hb[n], p).value
        ns.append(n)
        cs.append(hn / (I_n * gn))
    params.update(skipped=skipped, f_degree=f.degree, g_degree=g.degree)
    if not cs:
        return ExperimentReport(eid, params, [], "inconclusive", thresholds, notes=["all blocks skipped"])
    ratio = float(max(cs) / np.median(cs))
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("implied_constant", ns, cs)],
        verdict=_verdict(ratio <= BLOCK_MEDIAN_FACTOR),
        thresholds=thresholds,
        headline=ratio,
    )


# ---------------------------------------------------------------------------
# Bloch -> BMOA boundedness


def _bmoa_ratio(mu, f: TaylorPolynomial, out_factor: int) -> float:
    h = hankel_apply(mu, f, out_factor * max(f.degree, 1)).output
    return bmoa_seminorm(h).value / bloch_norm(f)


def exp_bmoa_boundedness(mu: Measure | None = None, corpus: list[Member] | None = None,
                         companion: Measure | None = None, max_log2: int = 12,
                         seed: int = DEFAULT_SEED, out_factor: int = 4):
    mu = mu if mu is not None else LogPowerDensity(2.0)
    companion = companion if companion is not None else PowerLogDensity(2.0, 0.0)
    eid = "bmoa_boundedness"
    params = {"measure": _spec(mu), "companion": _spec(companion), "max_degree": 1 << max_log2,
              "seed": seed, "out_factor": out_factor}
    thresholds = {"final_decade_increase_max": STABLE_MAX_INCREASE}
    q = carleson_quantifier(log_weight(mu, 1.0), 1.0, 0.0)
    params["nu_carleson_supremum"] = q.supremum
    if q.diverges:
        return inconclusive(eid, params, "log-weighted measure is not Carleson", thresholds)
    corpus = corpus if corpus is not None else growing_corpus(max_log2, seed=seed)
    degrees = [m.degree for m in corpus]
    ratios = [_bmoa_ratio(mu, m.poly, out_factor) for m in corpus]
    inc, run = _running_max_increase(degrees, ratios)

    # compactness diagnostic: monomials under a measure whose nu is vanishing Carleson
    van = is_vanishing(log_weight(companion, 1.0))
    mons = monomials(range(0, max_log2 + 1))
    ks = [m.params["k"] for m in mons]
    mono = [_bmoa_ratio(companion, m.poly, out_factor) for m in mons]
    decays = bool(np.all(np.diff(mono[len(mono) // 2 :]) < 0) and mono[-1] < 0.1 * max(mono))
    params.update(members=[m.label for m in corpus], final_decade_increase=inc,
                  companion_vanishing=van.vanishing, monomial_decay=decays)
    return ExperimentReport(
        experiment_id=eid,
        parameters=params,
        series=[Curve("ratio", degrees, ratios, {"labels": [m.label for m in corpus]}),
                Curve("running_max", sorted(degrees), run.tolist()),
                Curve("companion_monomial_ratio", ks, mono, {"vanishing": van.vanishing})],
        verdict=_verdict(bool(np.isfinite(inc)) and inc < STABLE_MAX_INCREASE),
        thresholds=thresholds,
        headline=inc,
        notes=[f"compactness diagnostic: monomial ratios decay = {decays}"],
    )


EXPERIMENTS = {
    "moment_asymptotics": exp_moment_asymptotics,
    "mu_nu_equivalence": exp_mu_nu_equivalence,
    "counterexample_bp": exp_counterexample_bp,
    "necessity_probe": exp_necessity_probe,
    "sufficiency_probe": exp_sufficiency_probe,
    "block_bound": exp_block_bound,
    "bmoa_boundedness": exp_bmoa_boundedness,
}

# default parameter sets run by the suite
SUITE = [
    ("moment_asymptotics", {"beta": 0.5}),
    ("moment_asymptotics", {"beta": 1.0}),
    ("moment_asymptotics", {"beta": 2.0}),
    ("mu_nu_equivalence", {"s": 1.0, "alpha": 1.0}),
    ("mu_nu_equivalence", {"s": 2.0, "alpha": 2.0}),
    ("counterexample_bp", {}),
    ("necessity_probe", {}),
    ("sufficiency_probe", {}),
    ("block_bound", {}),
    ("bmoa_boundedness", {}),
]


def run_experiment(name: str, **kwargs) -> ExperimentReport:
    try:
        fn = EXPERIMENTS[name]
    except KeyError:
        raise KeyError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}") from None
    return fn(**kwargs)
