"""Replicated simulate-estimate experiments.

Each replicate r simulates one BINAR(1) path with an RNG stream derived
deterministically from (base_seed, r), fits it with the requested
methods, and records per-parameter estimates.  Aggregates are MSE,
bias, and the standard deviation of per-replicate biases; reports are
identical regardless of the worker count.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimation import FamilySpec, cls_fit, cml_fit, twostep_fit
from .optimize import NonconvergenceError, OptimizerSpec
from .process import BinarModel, simulate

__all__ = ["MCConfig", "MCReport", "run_mc", "bias_se"]

METHODS = ("CLS", "CML", "TwoStep")

# parameters reported per method; two-step marginals come from CLS and
# are not separately tabulated
_METHOD_PARAMS = {
    "CLS": ("alpha1", "alpha2", "lambda1", "lambda2", "theta", "sigma2_1", "sigma2_2"),
    "CML": ("alpha1", "alpha2", "lambda1", "lambda2", "theta", "sigma2_1", "sigma2_2"),
    "TwoStep": ("theta", "sigma2_1", "sigma2_2"),
}


@dataclass(frozen=True)
class MCConfig:
    model: BinarModel  # the generating truth
    n: int
    reps: int
    methods: tuple = METHODS
    base_seed: int = 0
    fit_families: FamilySpec | None = None  # defaults to the truth's families
    burnin: int = 500
    workers: int = 1
    opt: OptimizerSpec = OptimizerSpec()

    def __post_init__(self):
        if self.reps < 2:
            raise ValueError("need reps >= 2")
        if self.n < 3:
            raise ValueError("need n >= 3")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method: {m!r}")

    def families(self) -> FamilySpec:
        if self.fit_families is not None:
            return self.fit_families
        inn = self.model.innovations
        return FamilySpec(inn.marginal1.variant, inn.marginal2.variant, inn.copula.family)

    def truth(self) -> dict:
        inn = self.model.innovations
        return {
            "alpha1": self.model.alpha1,
            "alpha2": self.model.alpha2,
            "lambda1": inn.marginal1.lam,
            "lambda2": inn.marginal2.lam,
            "theta": inn.copula.theta,
            "sigma2_1": inn.marginal1.sigma2,
            "sigma2_2": inn.marginal2.sigma2,
        }


@dataclass
class MCCell:
    mse: float
    bias: float
    bias_se: float
    n_ok: int
    n_fail: int


@dataclass
class MCReport:
    config_summary: dict
    cells: dict  # (method, parameter) -> MCCell
    estimates: dict  # (method, parameter) -> np.ndarray of per-replicate estimates
    n_fail: dict  # method -> failed replicate count
    unreliable: bool

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["method", "parameter", "mse", "bias", "bias_se", "n_ok", "n_fail"])
            for (method, param), cell in self.cells.items():
                w.writerow(
                    [method, param, repr(cell.mse), repr(cell.bias), repr(cell.bias_se), cell.n_ok, cell.n_fail]
                )

    def to_json(self, path) -> None:
        doc = {
            "config": self.config_summary,
            "unreliable": self.unreliable,
            "n_fail": self.n_fail,
            "cells": {
                f"{m}:{p}": {
                    "mse": c.mse,
                    "bias": c.bias,
                    "bias_se": c.bias_se,
                    "n_ok": c.n_ok,
                    "n_fail": c.n_fail,
                }
                for (m, p), c in self.cells.items()
            },
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)

    def replicates_to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["rep", "method", "parameter", "estimate"])
            for (method, param), vals in self.estimates.items():
                for rep, est in vals:
                    w.writerow([int(rep), method, param, repr(est)])


def bias_se(estimates, truth: float) -> float:
    """Standard deviation (divisor M-1) of the per-replicate biases."""
    estimates = np.asarray(estimates, dtype=float)
    if len(estimates) < 2:
        raise ValueError("need at least 2 estimates")
    biases = estimates - truth
    return float(np.sqrt(np.sum((biases - biases.mean()) ** 2) / (len(biases) - 1)))


def _one_replicate(cfg: MCConfig, rep: int) -> dict:
    rng = np.random.default_rng([cfg.base_seed, rep])
    pair = simulate(cfg.model, cfg.n, burnin=cfg.burnin, seed=rng)
    families = cfg.families()
    out = {}
    for method in cfg.methods:
        try:
            if method == "CLS":
                fit = cls_fit(pair, families, cfg.opt)
            elif method == "CML":
                fit = cml_fit(pair, families, opt=cfg.opt, compute_se=False)
            else:
                fit = twostep_fit(pair, families, opt=cfg.opt, compute_se=False)
            out[method] = {
                p: getattr(fit, p) for p in _METHOD_PARAMS[method] if getattr(fit, p) is not None
            }
        except (NonconvergenceError, ValueError, ZeroDivisionError, np.linalg.LinAlgError) as exc:
            out[method] = {"__failed__": str(exc)}
    return out


def _replicate_batch(args):
    cfg, reps = args
    return [(r, _one_replicate(cfg, r)) for r in reps]


def run_mc(cfg: MCConfig, workers: int | None = None) -> MCReport:
    """Run the full replicated experiment and aggregate.

    Failed fits are excluded from the aggregates and counted.  The
    report is bit-identical for any worker count.
    """
    if workers is None:
        workers = cfg.workers
    rep_ids = list(range(cfg.reps))
    if workers <= 1:
        results = [(r, _one_replicate(cfg, r)) for r in rep_ids]
    else:
        chunks = [rep_ids[i::workers] for i in range(workers)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_replicate_batch, [(cfg, c) for c in chunks]))
        results = sorted(x for batch in batches for x in batch)

    truth = cfg.truth()
    estimates: dict = {}
    n_fail = {m: 0 for m in cfg.methods}
    for rep, per_method in results:
        for method, params in per_method.items():
            if "__failed__" in params:
                n_fail[method] += 1
                continue
            for p, v in params.items():
                estimates.setdefault((method, p), []).append((rep, float(v)))

    cells = {}
    for (method, param), vals in estimates.items():
        eta = truth.get(param)
        if eta is None:
            continue
        arr = np.array([v for _, v in vals])
        m = len(arr)
        cells[(method, param)] = MCCell(
            mse=float(np.mean((arr - eta) ** 2)),
            bias=float(np.mean(arr - eta)),
            bias_se=bias_se(arr, eta),
            n_ok=m,
            n_fail=n_fail[method],
        )

    unreliable = any(f > 0.05 * cfg.reps for f in n_fail.values())
    summary = {
        "n": cfg.n,
        "reps": cfg.reps,
        "base_seed": cfg.base_seed,
        "methods": list(cfg.methods),
        "truth": truth,
    }
    return MCReport(summary, cells, estimates, n_fail, unreliable)
