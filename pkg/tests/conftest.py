"""Shared statistical helpers for the test suite."""

import sys

import numpy as np
from scipy.stats import chi2


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance-criterion verdicts after the run, bypassing
    stdout capture so they are visible without -s."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def pool_counts(obs, exp, min_exp=5.0):
    """Pool cells with small expected counts into a single tail cell.

    Keeps cells with expectation >= min_exp and lumps the rest together,
    so the chi-square approximation for the G statistic is sound.
    """
    obs = np.asarray(obs, dtype=float)
    exp = np.asarray(exp, dtype=float)
    keep = exp >= min_exp
    obs_k = list(obs[keep])
    exp_k = list(exp[keep])
    if (~keep).any():
        obs_k.append(obs[~keep].sum())
        exp_k.append(exp[~keep].sum())
    return np.array(obs_k), np.array(exp_k)


def g_test_gof(obs, exp):
    """Goodness-of-fit G-test p-value; cells pre-pooled by expectation."""
    obs, exp = pool_counts(obs, exp)
    # rescale expectation to the observed total (probabilities may not sum to 1)
    exp = exp * obs.sum() / exp.sum()
    mask = obs > 0
    g = 2.0 * np.sum(obs[mask] * np.log(obs[mask] / exp[mask]))
    return float(chi2.sf(g, df=len(obs) - 1))


def g_test_two_sample(counts_a, counts_b):
    """Two-sample G-test of homogeneity over a shared set of cells."""
    counts_a = np.asarray(counts_a, dtype=float)
    counts_b = np.asarray(counts_b, dtype=float)
    tot = counts_a + counts_b
    exp_a = tot * counts_a.sum() / tot.sum()
    obs_a, pooled_a = pool_counts(counts_a, exp_a)
    # pool B with the identical cell partition: redo pooling by mask
    keep = exp_a >= 5.0
    obs_b = list(counts_b[keep])
    if (~keep).any():
        obs_b.append(counts_b[~keep].sum())
    obs_b = np.array(obs_b)
    table = np.array([obs_a, obs_b])
    col = table.sum(axis=0)
    row = table.sum(axis=1)
    exp = np.outer(row, col) / table.sum()
    mask = table > 0
    g = 2.0 * np.sum(table[mask] * np.log(table[mask] / exp[mask]))
    df = table.shape[1] - 1
    return float(chi2.sf(g, df=df))


def batch_se(values, nbatch=100):
    """Standard error of the mean of a (possibly autocorrelated) series
    by non-overlapping batch means."""
    values = np.asarray(values, dtype=float)
    size = len(values) // nbatch
    batches = values[: nbatch * size].reshape(nbatch, size).mean(axis=1)
    return float(batches.std(ddof=1) / np.sqrt(nbatch))


def batch_stat_se(x, stat, nbatch=50):
    """SE of a statistic of an autocorrelated series via batch estimates.

    ``stat`` maps a subseries to a scalar; the SE is the spread of the
    per-batch statistics divided by sqrt(nbatch).
    """
    x = np.asarray(x, dtype=float)
    size = len(x) // nbatch
    vals = np.array([stat(x[i * size : (i + 1) * size]) for i in range(nbatch)])
    return float(vals.std(ddof=1) / np.sqrt(nbatch))
