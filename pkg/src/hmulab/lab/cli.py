"""``hmulab`` command line interface."""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from pathlib import Path

import numpy as np

from .. import io as hio
from ..measure import GridSpec, carleson_quantifier, moments
from ..operator import agreement_check, hankel_apply
from ..series import hp_norm
from ..spaces import (
    besov_seminorm_area,
    besov_seminorm_blocks,
    bloch_seminorm,
    bmoa_seminorm,
    qs_seminorm,
)
from ..specfile import load
from .corpus import DEFAULT_SEED, random_signed
from .experiments import EXPERIMENTS, SUITE, run_experiment
from .report import _plain, summary_table


def _emit(args, name: str, payload: dict, table: tuple[list, list] | None = None) -> None:
    """Write JSON, or CSV when ``--format csv`` and a table is available."""
    if args.format == "csv" and table is not None:
        header, rows = table
        text = ",".join(header) + "\n" + "".join(",".join(str(_plain(v)) for v in r) + "\n" for r in rows)
        suffix = "csv"
    else:
        text = json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n"
        suffix = "json"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.{suffix}").write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _poly(args):
    if getattr(args, "poly", None):
        return hio.read_poly_csv(args.poly)
    rng = np.random.default_rng([args.seed, args.degree])
    return random_signed(args.degree, 1.0, rng)


def cmd_moments(args) -> int:
    mu = load(args.measure)
    seq = moments(mu, args.degree)
    n = np.arange(seq.M + 1)
    _emit(args, "moments",
          {"source": seq.source, "quadrature_error": seq.quadrature_error, "values": seq.values},
          (["n", "moment"], list(zip(n.tolist(), seq.values.tolist()))))
    return 0


def cmd_carleson(args) -> int:
    mu = load(args.measure)
    q = carleson_quantifier(mu, args.s, args.alpha, GridSpec(depth=args.grid_depth))
    _emit(args, "carleson",
          {"s": q.s, "alpha": q.alpha, "supremum": q.supremum, "argmax_t": q.argmax_t,
           "tail_trend": q.tail_trend, "growth_exponent": q.growth_exponent, "diverges": q.diverges,
           "samples": q.samples},
          (["t", "one_minus_t", "q"], list(zip(q.t.tolist(), q.one_minus_t.tolist(), q.values.tolist()))))
    return 0


def cmd_apply(args) -> int:
    mu = load(args.measure)
    f = _poly(args)
    app = hankel_apply(mu, f, args.n_out)
    diag = {"n_out": args.n_out, "input_degree": f.degree,
            "tail_bound_at_radius": {str(r): app.tail_bound(r) for r in (0.5, 0.9, 0.99)},
            "row_sum_first": app.absolute_row_sums[0], "row_sum_last": app.absolute_row_sums[-1]}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        hio.write_poly_csv(app.output, out / "apply_output.csv")
        (out / "apply_diagnostics.json").write_text(json.dumps(_plain(diag), indent=2), encoding="utf-8")
    elif args.format == "csv":
        c = app.output.coeffs.astype(complex)
        sys.stdout.write("index,re,im\n" + "".join(f"{k},{float(a.real)!r},{float(a.imag)!r}\n" for k, a in enumerate(c)))
    else:
        diag["output"] = app.output.coeffs
        sys.stdout.write(json.dumps(_plain(diag), indent=2) + "\n")
    return 0


def cmd_agree(args) -> int:
    mu = load(args.measure)
    f = _poly(args)
    r = np.linspace(0, args.radius, 10)[1:]
    theta = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    z = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    rep = agreement_check(mu, f, np.concatenate([[0j], z]), args.n_out)
    payload = rep.to_dict()
    payload["within_bound"] = rep.within_bound
    _emit(args, "agree", payload)
    return 0


def cmd_norms(args) -> int:
    f = _poly(args)
    space = args.space
    if space == "bloch":
        est = bloch_seminorm(f, J=max(args.grid_depth, 16))
    elif space == "bmoa":
        est = bmoa_seminorm(f)
    elif space == "qs":
        est = qs_seminorm(f, args.s)
    elif space == "besov-area":
        est = besov_seminorm_area(f, args.p)
    elif space == "besov-blocks":
        est = besov_seminorm_blocks(f, args.p)
    else:
        est = hp_norm(f, args.p)
    payload = est.to_dict()
    payload.update(space=space, f0=[float(np.real(f.coeffs[0])), float(np.imag(f.coeffs[0]))])
    _emit(args, f"norm_{space}", payload)
    return 0


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _experiment_kwargs(name: str, args) -> dict:
    params = inspect.signature(EXPERIMENTS[name]).parameters
    kw = {}
    for item in args.set or []:
        key, _, value = item.partition("=")
        if key not in params:
            raise SystemExit(f"experiment {name} has no parameter {key!r}")
        kw[key] = _parse_value(value)
    if "seed" in params and "seed" not in kw:
        kw["seed"] = args.seed
    if args.degree is not None:
        if "degree" in params:
            kw.setdefault("degree", args.degree)
        elif "max_log2" in params:
            kw.setdefault("max_log2", int(np.log2(args.degree)))
    if args.grid_depth is not None and "depth" in params:
        kw.setdefault("depth", args.grid_depth)
    return kw


def _write_report(rep, args):
    if args.out:
        rep.write(args.out)
    if args.format == "json" and not args.out:
        sys.stdout.write(rep.to_json() + "\n")


def cmd_experiment(args) -> int:
    rep = run_experiment(args.id, **_experiment_kwargs(args.id, args))
    _write_report(rep, args)
    sys.stderr.write(f"{rep.experiment_id}: {rep.verdict} (headline {_plain(rep.headline)})\n")
    return 1 if rep.verdict == "fail" else 0


def cmd_suite(args) -> int:
    reports = []
    for name, kw in SUITE:
        kw = dict(kw)
        if "seed" in inspect.signature(EXPERIMENTS[name]).parameters:
            kw.setdefault("seed", args.seed)
        rep = run_experiment(name, **kw)
        if args.out:
            rep.write(args.out)
        sys.stderr.write(f"{rep.experiment_id}: {rep.verdict}\n")
        reports.append(rep)
    table = summary_table(reports)
    if args.out:
        Path(args.out, "summary.csv").write_text(table, encoding="utf-8")
    sys.stdout.write(table)
    return 1 if any(r.verdict == "fail" for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", help="measure specification file")
    common.add_argument("--degree", type=int, default=None)
    common.add_argument("--grid-depth", type=int, default=None)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default="json")

    ap = argparse.ArgumentParser(prog="hmulab", description="Hankel operators of measure moments")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common], help="moments mu_0..mu_M (M = --degree)")
    p.set_defaults(func=cmd_moments, need_measure=True, default_degree=16)

    p = sub.add_parser("carleson", parents=[common], help="Carleson-type quantifier curve")
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.set_defaults(func=cmd_carleson, need_measure=True)

    for name, func, helptext in (("apply", cmd_apply, "Hankel coefficients of H_mu f"),
                                 ("agree", cmd_agree, "compare H_mu f with the integral form")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--poly", help="polynomial CSV (index,re,im); random if omitted")
        p.add_argument("--n-out", type=int, default=512)
        if name == "agree":
            p.add_argument("--radius", type=float, default=0.9)
        p.set_defaults(func=func, need_measure=True, default_degree=64)

    p = sub.add_parser("norms", parents=[common], help="seminorm estimates")
    p.add_argument("--poly", help="polynomial CSV (index,re,im); random if omitted")
    p.add_argument("--space", choices=("bloch", "bmoa", "qs", "besov-area", "besov-blocks", "hp"),
                   default="bloch")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--s", type=float, default=1.0)
    p.set_defaults(func=cmd_norms, default_degree=64)

    p = sub.add_parser("experiment", parents=[common], help="run one experiment")
    p.add_argument("id", choices=sorted(EXPERIMENTS))
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="experiment parameter (JSON value)")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("suite", parents=[common], help="run the default experiment suite")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "need_measure", False) and not args.measure:
        ap.error(f"{args.command} needs --measure")
    if args.degree is None and hasattr(args, "default_degree"):
        args.degree = args.default_degree
    if args.grid_depth is None and args.command in ("carleson", "norms"):
        args.grid_depth = 30
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
