"""Command-line front end: simulate | fit | mc | stats | acf.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
The environment variable BINAR_SEED overrides --seed when set.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .copulas import CopulaSpec, InnovationModel
from .distributions import MarginalSpec
from .estimation import FamilySpec, cls_fit, cml_fit, twostep_fit
from .mc import MCConfig, run_mc
from .optimize import NonconvergenceError
from .process import BinarModel, SeriesPair, simulate
from .tsstats import acf, pacf, summary_stats

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # single-line diagnostic, exit code 1 for usage problems
        self.exit(EXIT_USAGE, f"binarcop:usage: {message}\n")


def _fail(code, category, message):
    raise CliError(code, f"binarcop:{category}: {message}")


# ---------------------------------------------------------------------------
# model-spec and dataset IO

_MARGINAL_KEYS = {"type", "lambda", "sigma2"}
_SPEC_KEYS = {"alpha1", "alpha2", "marginal1", "marginal2", "copula"}
_COPULA_KEYS = {"family", "theta"}


def _parse_marginal(doc, name):
    if not isinstance(doc, dict) or "type" not in doc or "lambda" not in doc:
        _fail(EXIT_DATA, "spec-error", f"{name} must have 'type' and 'lambda'")
    unknown = set(doc) - _MARGINAL_KEYS
    if unknown:
        _fail(EXIT_DATA, "spec-error", f"unknown fields in {name}: {sorted(unknown)}")
    try:
        if doc["type"] == "poisson":
            return MarginalSpec("poisson", float(doc["lambda"]))
        if doc["type"] == "negbin":
            return MarginalSpec("negbin", float(doc["lambda"]), float(doc.get("sigma2", 0.0)))
    except ValueError as exc:
        _fail(EXIT_DATA, "spec-error", f"{name}: {exc}")
    _fail(EXIT_DATA, "spec-error", f"{name}: unknown type {doc['type']!r}")


def load_model_spec(path) -> BinarModel:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_DATA, "spec-error", f"cannot read model spec {path}: {exc}")
    unknown = set(doc) - _SPEC_KEYS
    if unknown:
        _fail(EXIT_DATA, "spec-error", f"unknown fields: {sorted(unknown)}")
    missing = _SPEC_KEYS - set(doc)
    if missing:
        _fail(EXIT_DATA, "spec-error", f"missing fields: {sorted(missing)}")
    cop = doc["copula"]
    if not isinstance(cop, dict) or set(cop) - _COPULA_KEYS or "family" not in cop:
        _fail(EXIT_DATA, "spec-error", "copula must be {family, theta}")
    m1 = _parse_marginal(doc["marginal1"], "marginal1")
    m2 = _parse_marginal(doc["marginal2"], "marginal2")
    try:
        copula = CopulaSpec(cop["family"], float(cop.get("theta", 0.0)))
        return BinarModel(float(doc["alpha1"]), float(doc["alpha2"]), InnovationModel(m1, m2, copula))
    except ValueError as exc:
        _fail(EXIT_DATA, "spec-error", str(exc))


def load_dataset(path) -> SeriesPair:
    try:
        rows = []
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row:
                    continue
                if i == 0 and not _is_int_row(row):
                    continue  # optional header
                if len(row) != 2 or not _is_int_row(row):
                    _fail(EXIT_DATA, "data-error", f"{path}: row {i + 1} is not two integers")
                rows.append((int(row[0]), int(row[1])))
    except OSError as exc:
        _fail(EXIT_DATA, "data-error", f"cannot read {path}: {exc}")
    if len(rows) < 3:
        _fail(EXIT_DATA, "data-error", f"{path}: need at least 3 rows of counts")
    x1, x2 = zip(*rows)
    try:
        return SeriesPair(np.array(x1), np.array(x2))
    except ValueError as exc:
        _fail(EXIT_DATA, "data-error", str(exc))


def _is_int_row(row):
    try:
        [int(v) for v in row]
        return True
    except ValueError:
        return False


def write_dataset(pair: SeriesPair, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("x1,x2\n")
        for a, b in zip(pair.x1, pair.x2):
            fh.write(f"{a},{b}\n")


def _seed(args_seed):
    env = os.environ.get("BINAR_SEED")
    return int(env) if env is not None else args_seed


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate(args):
    model = load_model_spec(args.model_spec)
    pair = simulate(model, args.n, burnin=args.burnin, seed=_seed(args.seed))
    write_dataset(pair, args.out)
    print(f"wrote {len(pair)} rows to {args.out}")
    return 0


def cmd_fit(args):
    pair = load_dataset(args.data)
    families = FamilySpec.from_code(args.marginals, args.copula)
    try:
        if args.method == "cls":
            fit = cls_fit(pair, families)
        elif args.method == "cml":
            fit = cml_fit(pair, families)
        else:
            fit = twostep_fit(pair, families)
    except NonconvergenceError as exc:
        _fail(EXIT_NUMERICAL, "fit-error", f"optimizer did not converge: {exc}")
    except ValueError as exc:
        _fail(EXIT_NUMERICAL, "fit-error", str(exc))
    text = fit.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote fit report to {args.out}")
    else:
        print(text)
    return 0


def _load_mc_config(path) -> MCConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_DATA, "config-error", f"cannot read MC config {path}: {exc}")
    try:
        model_doc = doc["model"]
    except KeyError:
        _fail(EXIT_DATA, "config-error", "config must embed a 'model' spec")
    model = _model_from_doc(model_doc)
    methods = tuple(doc.get("methods", ["CLS", "CML", "TwoStep"]))
    families = None
    if "fit_families" in doc:
        ff = doc["fit_families"]
        families = FamilySpec(ff["marginal1"], ff["marginal2"], ff["copula"])
    try:
        return MCConfig(
            model=model,
            n=int(doc["n"]),
            reps=int(doc["reps"]),
            methods=methods,
            base_seed=int(doc.get("base_seed", 0)),
            fit_families=families,
            burnin=int(doc.get("burnin", 500)),
        )
    except (KeyError, ValueError) as exc:
        _fail(EXIT_DATA, "config-error", str(exc))


def _model_from_doc(doc) -> BinarModel:
    unknown = set(doc) - _SPEC_KEYS
    if unknown:
        _fail(EXIT_DATA, "config-error", f"unknown model fields: {sorted(unknown)}")
    m1 = _parse_marginal(doc["marginal1"], "marginal1")
    m2 = _parse_marginal(doc["marginal2"], "marginal2")
    cop = doc["copula"]
    try:
        copula = CopulaSpec(cop["family"], float(cop.get("theta", 0.0)))
        return BinarModel(float(doc["alpha1"]), float(doc["alpha2"]), InnovationModel(m1, m2, copula))
    except ValueError as exc:
        _fail(EXIT_DATA, "config-error", str(exc))


def cmd_mc(args):
    cfg = _load_mc_config(args.config)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    report = run_mc(cfg, workers=args.workers)
    report.to_csv(outdir / "report.csv")
    report.to_json(outdir / "report.json")
    report.replicates_to_csv(outdir / "replicates.csv")
    print(f"wrote report.csv, report.json, replicates.csv to {outdir}")
    if report.unreliable:
        print("binarcop:warning: more than 5% of replicates failed; report flagged unreliable")
    return 0


def cmd_stats(args):
    pair = load_dataset(args.data)
    out = {}
    for name, x in (("x1", pair.x1), ("x2", pair.x2)):
        mn, mx, mean, var = summary_stats(x)
        out[name] = {"min": mn, "max": mx, "mean": mean, "variance": var}
    print(json.dumps(out, indent=2))
    return 0


def cmd_acf(args):
    pair = load_dataset(args.data)
    try:
        rows = []
        for name, x in (("x1", pair.x1), ("x2", pair.x2)):
            a = acf(x, args.maxlag)
            p = pacf(x, args.maxlag)
            band = 1.96 / np.sqrt(len(x))
            for h in range(1, args.maxlag + 1):
                rows.append((name, h, a[h], p[h - 1], -band, band))
    except ValueError as exc:
        _fail(EXIT_DATA, "data-error", str(exc))
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["series", "lag", "acf", "pacf", "band_lo", "band_hi"])
        for row in rows:
            w.writerow(row)
    print(f"wrote ACF/PACF table to {args.out}")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="binarcop", description="Copula-based BINAR(1) toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate a BINAR(1) path to CSV")
    sim.add_argument("model_spec", help="model spec JSON path")
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--burnin", type=int, default=500)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    fit = sub.add_parser("fit", help="fit a BINAR(1) model to CSV count data")
    fit.add_argument("data", help="two-column CSV of counts")
    fit.add_argument("--marginals", choices=["pp", "nbp", "pnb", "nbnb"], required=True)
    fit.add_argument("--copula", choices=["product", "fgm", "frank", "clayton"], required=True)
    fit.add_argument("--method", choices=["cls", "cml", "twostep"], required=True)
    fit.add_argument("--out", default=None)
    fit.set_defaults(func=cmd_fit)

    mc = sub.add_parser("mc", help="run a Monte Carlo estimator comparison")
    mc.add_argument("config", help="MC config JSON path")
    mc.add_argument("--workers", type=int, default=1)
    mc.add_argument("--out", required=True, help="output directory")
    mc.set_defaults(func=cmd_mc)

    st = sub.add_parser("stats", help="summary statistics of both series")
    st.add_argument("data")
    st.set_defaults(func=cmd_stats)

    ac = sub.add_parser("acf", help="ACF/PACF table with confidence bands")
    ac.add_argument("data")
    ac.add_argument("--maxlag", type=int, default=20)
    ac.add_argument("--out", required=True)
    ac.set_defaults(func=cmd_acf)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
