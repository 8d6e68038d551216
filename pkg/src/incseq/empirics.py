"""Monte-Carlo estimation, exact-moment standardization, CLT diagnostics.

This is the only module that works in floating point. Sampling is
stream-partitioned: ``samples`` draws are split into ``streams`` contiguous
blocks, block s drawn from the (seed, s) generator, and the per-stream
accumulators (count, integer sum, integer sum of squares) merge exactly, so
reports are bit-for-bit reproducible and independent of worker scheduling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels, sampling
from .moments import (ProbVector, inv_word_moments, mean_inc_perm,
                      mean_weak_inc_general, mean_weak_inc_uniform,
                      second_moment_inc_perm, second_moment_weak_inc_uniform,
                      steele_moments)

MODELS = ("word", "perm", "riffle")


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the C library erfc (rational/continued-
    fraction implementation, < 1e-15 relative error; absolute error is far
    below the documented 1e-12 requirement)."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def ks_to_standard_normal(standardized: np.ndarray) -> float:
    """Kolmogorov distance between the empirical CDF of the sample and Phi.

    Both one-sided suprema of the right-continuous empirical CDF are taken
    at the sorted sample points.
    """
    z = np.sort(np.asarray(standardized, dtype=np.float64))
    m = len(z)
    if m == 0:
        raise ValueError("empty sample")
    phi = np.array([normal_cdf(v) for v in z])
    upper = np.max(np.arange(1, m + 1) / m - phi)
    lower = np.max(phi - np.arange(0, m) / m)
    return float(max(upper, lower))


@dataclass(frozen=True)
class MCReport:
    statistic: str
    params: dict = field(compare=False)
    samples: int = 0
    mean: float = 0.0
    variance: float = 0.0
    stderr: float = 0.0
    ks_to_normal: float | None = None
    seed: int = 0
    streams: int = 1

    def to_dict(self) -> dict:
        d = {
            "statistic": self.statistic,
            "params": {k: str(v) for k, v in self.params.items()},
            "samples": self.samples,
            "mean": self.mean,
            "variance": self.variance,
            "stderr": self.stderr,
            "seed": self.seed,
            "streams": self.streams,
        }
        if self.ks_to_normal is not None:
            d["ks_to_normal"] = self.ks_to_normal
        return d


def _sample_variance(total: int, total_sq: int, count: int) -> float:
    """Unbiased sample variance from exact integer accumulators."""
    if count < 2:
        return 0.0
    return float((Fraction(total_sq) - Fraction(total * total, count))
                 / (count - 1))


def _stream_sizes(samples: int, streams: int) -> list[int]:
    if samples < 1 or streams < 1:
        raise ValueError("samples and streams must be >= 1")
    base, rem = divmod(samples, streams)
    return [base + (1 if s < rem else 0) for s in range(streams)]


def _batch_values(model: str, statistic: str, m: int, n: int,
                  p: ProbVector | None, seed: int, stream: int) -> np.ndarray:
    if model == "word":
        if p is None:
            raise ValueError("word model needs a letter distribution")
        data = sampling.sample_words_batch(m, n, p, seed, stream)
    elif model == "perm":
        data = sampling.sample_perms_batch(m, n, seed, stream)
    elif model == "riffle":
        if p is None:
            raise ValueError("riffle model needs a letter distribution")
        data, _ = sampling.riffle_inverse_batch(m, n, p, seed, stream)
    else:
        raise ValueError(f"unknown model {model!r}")
    return evaluate_statistic(data, statistic)


def evaluate_statistic(rows: np.ndarray, statistic: str) -> np.ndarray:
    if statistic == "inversions":
        return kernels.batch_count_inversions(rows)
    if statistic == "weak-inc-total":
        return kernels.batch_count_increasing_total(rows, strict=False)
    if statistic == "strict-inc-total":
        return kernels.batch_count_increasing_total(rows, strict=True)
    for prefix, strict in (("weak-inc-", False), ("strict-inc-", True)):
        if statistic.startswith(prefix):
            k = int(statistic[len(prefix):])
            return kernels.batch_count_increasing(rows, k, strict)
    raise ValueError(f"unknown statistic {statistic!r}")


def mc_run(model: str, statistic: str, n: int, samples: int, seed: int,
           streams: int = 1, p: ProbVector | None = None) -> MCReport:
    """Stream-partitioned Monte-Carlo estimate of a statistic's mean.

    The accumulators are exact integers, so the merged result does not
    depend on stream evaluation order.
    """
    count = 0
    total = 0
    total_sq = 0
    for stream, m in enumerate(_stream_sizes(samples, streams)):
        vals = _batch_values(model, statistic, m, n, p, seed, stream)
        count += m
        total += int(vals.sum(dtype=object))
        total_sq += int((vals.astype(object) ** 2).sum())
    mean = total / count
    variance = _sample_variance(total, total_sq, count)
    stderr = math.sqrt(variance / count) if count > 1 else 0.0
    params = {"model": model, "n": n}
    if p is not None:
        params["p"] = p.probs
    return MCReport(statistic, params, count, mean, variance, stderr,
                    None, seed, streams)


def exact_mean_var(model: str, statistic: str, n: int,
                   p: ProbVector | None = None) -> tuple[Fraction, Fraction]:
    """Exact (mean, variance) of a model/statistic pair from the closed forms.

    Permutation inversions reduce to C(n,2) minus the length-2 strictly
    increasing count; riffle inversions have the law of word inversions.
    """
    uniform_a = p.alphabet if p is not None and p.is_uniform() else None
    if model == "word" and statistic.startswith("weak-inc-"):
        k = int(statistic.removeprefix("weak-inc-"))
        if uniform_a is not None:
            mean = mean_weak_inc_uniform(n, k, uniform_a).value
            var = second_moment_weak_inc_uniform(n, k, uniform_a).value - mean**2
            return mean, var
        raise ValueError("exact word moments need a uniform letter law here")
    if model in ("word", "riffle") and statistic == "inversions":
        if uniform_a is None:
            raise ValueError("exact inversion moments need a uniform letter law")
        return inv_word_moments(n, uniform_a)
    if model == "perm" and statistic.startswith("strict-inc-"):
        k = int(statistic.removeprefix("strict-inc-"))
        mean = mean_inc_perm(n, k).value
        var = second_moment_inc_perm(n, k).value - mean**2
        return mean, var
    if model == "perm" and statistic == "inversions":
        mean2 = mean_inc_perm(n, 2).value
        var2 = second_moment_inc_perm(n, 2).value - mean2**2
        return Fraction(n * (n - 1), 2) - mean2, var2
    raise ValueError(f"no exact moments for model={model!r}, statistic={statistic!r}")


def clt_diagnostic(model: str, statistic: str, n: int, samples: int, seed: int,
                   streams: int = 1, p: ProbVector | None = None) -> MCReport:
    """Monte-Carlo Kolmogorov distance to the standard normal.

    Standardization uses the exact mean and exact standard deviation from
    the closed forms (converted to float64 once), never sample moments.
    """
    mean_exact, var_exact = exact_mean_var(model, statistic, n, p)
    if var_exact == 0:
        raise ValueError("degenerate statistic: exact variance is zero")
    mu = float(mean_exact)
    sigma = math.sqrt(float(var_exact))
    shards = []
    count = 0
    total = 0
    total_sq = 0
    for stream, m in enumerate(_stream_sizes(samples, streams)):
        vals = _batch_values(model, statistic, m, n, p, seed, stream)
        count += m
        total += int(vals.sum(dtype=object))
        total_sq += int((vals.astype(object) ** 2).sum())
        shards.append((vals.astype(np.float64) - mu) / sigma)
    z = np.concatenate(shards)
    ks = ks_to_standard_normal(z)
    mean = total / count
    variance = _sample_variance(total, total_sq, count)
    params = {"model": model, "n": n}
    if p is not None:
        params["p"] = p.probs
    return MCReport(statistic, params, count, mean, variance,
                    math.sqrt(variance / count) if count > 1 else 0.0,
                    ks, seed, streams)


def random_rational_prob_vector(a: int, rng: np.random.Generator) -> ProbVector:
    """Random exact ProbVector: dyadic weights in [1, 2^16], renormalized."""
    weights = [int(w) for w in rng.integers(1, 1 << 16, size=a, endpoint=True)]
    total = sum(weights)
    return ProbVector([Fraction(w, total) for w in weights])


@dataclass(frozen=True)
class SchurExtremalityReport:
    """Exact comparison of random rational letter laws against the uniform one.

    The mean count of weakly increasing length-k subsequences is a
    Schur-convex function of the letter law (ties help), so among laws on
    [a] the uniform law is the minimizer: above_uniform counts the trials
    confirming that, below_uniform must stay 0.
    """
    n: int
    k: int
    a: int
    trials: int
    above_uniform: int
    below_uniform: int
    ties: int
    seed: int


def schur_extremality_check(n: int, k: int, a: int, trials: int,
                            seed: int) -> SchurExtremalityReport:
    """Compare E over random exact rational p with the uniform value."""
    rng = sampling.make_rng(seed, 0)
    uniform_mean = mean_weak_inc_uniform(n, k, a).value
    above = below = ties = 0
    for _ in range(trials):
        p = random_rational_prob_vector(a, rng)
        m = mean_weak_inc_general(n, k, p).value
        if m > uniform_mean:
            above += 1
        elif m < uniform_mean:
            below += 1
        else:
            ties += 1
    return SchurExtremalityReport(n, k, a, trials, above, below, ties, seed)


@dataclass(frozen=True)
class SteeleDegeneracyReport:
    n: int
    samples: int
    seed: int
    degenerate: bool
    mean: float
    stderr: float
    exact_mean: float
    frac_above: dict = field(default_factory=dict, compare=False)


def steele_degeneracy_diag(n: int, samples: int, seed: int,
                           streams: int = 1,
                           epsilons: tuple[float, ...] = (0.1, 0.01)) -> SteeleDegeneracyReport:
    """Collapse diagnostic for the similarity statistic against a fixed
    reference permutation (the identity): fraction of samples whose exactly
    standardized value exceeds each epsilon. Diagnostic only; the collapse
    claim is asymptotic."""
    mean_exact, second_exact = steele_moments(n)
    var_exact = second_exact - mean_exact**2
    if var_exact == 0:
        return SteeleDegeneracyReport(n, 0, seed, True, float(mean_exact), 0.0,
                                      float(mean_exact), {})
    mu = float(mean_exact)
    sigma = math.sqrt(float(var_exact))
    count = 0
    total = 0
    total_sq = 0
    above = {eps: 0 for eps in epsilons}
    for stream, m in enumerate(_stream_sizes(samples, streams)):
        perms = sampling.sample_perms_batch(m, n, seed, stream)
        vals = kernels.batch_count_increasing_total(perms, strict=True) - 1
        count += m
        total += int(vals.sum(dtype=object))
        total_sq += int((vals.astype(object) ** 2).sum())
        z = np.abs((vals.astype(np.float64) - mu) / sigma)
        for eps in epsilons:
            above[eps] += int((z > eps).sum())
    mean = total / count
    variance = _sample_variance(total, total_sq, count)
    return SteeleDegeneracyReport(
        n, count, seed, False, mean,
        math.sqrt(variance / count) if count > 1 else 0.0, mu,
        {eps: above[eps] / count for eps in epsilons})
