"""Monte Carlo study of distribution estimation from leakage-constrained
privatized samples.

The sampling path is: source distribution -> staircase mechanism ->
i.i.d. output symbols -> unclipped plug-in estimate of the source. The
estimator is deliberately NOT projected onto the simplex: the closed-form
expected risk analyzed here is for the raw plug-in estimate, and projection
would break that comparison (it could only reduce risk).

Output symbols are 0-based column indices; the staircase dummy symbol is
index k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BoundCheckResult, _verdict
from .core import DEFAULT_TOL, Channel, Distribution, ToleranceConfig, pushforward, validate_distribution
from .errors import (
    AlphaOutOfRange,
    BadDirectionVector,
    DimensionMismatch,
    InvalidK,
    PreconditionNotMet,
    SymbolOutOfRange,
)
from .mechanisms import maxl_staircase, staircase_rate


@dataclass(frozen=True)
class SimulationConfig:
    """One Monte Carlo configuration; identical configs give bit-identical
    results regardless of execution environment."""

    k: int
    alpha_bits: float
    n: int
    replicates: int
    seed: int
    source: Distribution

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise InvalidK(f"k must be an integer >= 2, got {self.k!r}")
        if not np.isfinite(self.alpha_bits) or self.alpha_bits <= 0:
            raise AlphaOutOfRange(f"alpha_bits must be positive, got {self.alpha_bits!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n!r}")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates!r}")
        if self.source.alphabet_size != self.k:
            raise DimensionMismatch(
                f"source alphabet {self.source.alphabet_size} != k = {self.k}"
            )


@dataclass(frozen=True)
class RiskEstimate:
    """Monte Carlo mean squared-l2 risk with closed-form references."""

    mean_risk: float
    std_error: float
    replicates: int
    closed_form: float
    upper_bound: float
    lecam_lower: float

    def to_dict(self) -> dict:
        return {
            "mean_risk": self.mean_risk,
            "std_error": self.std_error,
            "replicates": self.replicates,
            "closed_form": self.closed_form,
            "upper_bound": self.upper_bound,
            "lecam_lower": self.lecam_lower,
        }


@dataclass(frozen=True)
class LeCamPair:
    """Two-point family: uniform p0 and its unit perturbation p1.

    `p1` is None when the perturbed vector leaves [0, 1] (valid=False);
    when valid, the squared l2 distance between the two points is exactly
    1/(n * (2**a - 1)).
    """

    p0: Distribution
    p1: Distribution | None
    u: np.ndarray
    valid: bool


@dataclass(frozen=True)
class SweepRow:
    """One sample-size point of a risk scaling sweep."""

    n: int
    mean_risk: float
    std_error: float
    normalized_risk: float
    closed_form: float
    upper_bound: float
    lecam_lower: float


def sample_outputs(w: Channel, p: Distribution, n: int, seed) -> np.ndarray:
    """n i.i.d. output symbols of the channel fed with p, by inverse CDF.

    `seed` is anything numpy's default_rng accepts (int, SeedSequence, ...);
    draws are deterministic given the seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    q = pushforward(w, p)
    cdf = np.cumsum(q.probs)
    cdf[-1] = 1.0  # guard against float undersum; draws are in [0, 1)
    rng = np.random.default_rng(seed)
    return np.searchsorted(cdf, rng.random(n), side="right").astype(np.int64)


def staircase_estimator(samples, k: int, alpha_bits: float, n: int) -> np.ndarray:
    """Unclipped plug-in estimate p_hat(x) = count(x) / (n * lam) for x < k.

    The dummy symbol k contributes to no coordinate. The result is a raw
    nonnegative vector: coordinates may exceed 1 and need not sum to 1.
    """
    lam = staircase_rate(k, alpha_bits)
    arr = np.asarray(samples)
    if arr.ndim != 1 or len(arr) != n:
        raise DimensionMismatch(f"expected {n} samples, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > k):
        bad = arr[(arr < 0) | (arr > k)][0]
        raise SymbolOutOfRange(f"symbol {bad} outside [0, {k}]")
    counts = np.bincount(arr.astype(np.int64), minlength=k + 1)[:k]
    return counts / (n * lam)


def closed_form_risk(p: Distribution, k: int, alpha_bits: float, n: int) -> float:
    """Exact expected squared-l2 risk of the plug-in estimate under the
    staircase mechanism: (1/(n*lam)) * sum_x p(x) (1 - lam p(x))."""
    if p.alphabet_size != k:
        raise DimensionMismatch(f"source alphabet {p.alphabet_size} != k = {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    lam = staircase_rate(k, alpha_bits)
    pp = p.probs
    return float(np.sum(pp * (1.0 - lam * pp)) / (n * lam))


def _replicate_risk(cdf, k, n, inv_lam_n, source_probs, seed) -> float:
    rng = np.random.default_rng(seed)
    symbols = np.searchsorted(cdf, rng.random(n), side="right")
    counts = np.bincount(symbols, minlength=k + 1)[:k]
    diff = counts * inv_lam_n - source_probs
    return float(diff @ diff)


def _mc_risks(w: Channel, source: Distribution, k, alpha_bits, n, seed_seqs) -> np.ndarray:
    lam = staircase_rate(k, alpha_bits)
    q = pushforward(w, source)
    cdf = np.cumsum(q.probs)
    cdf[-1] = 1.0
    inv_lam_n = 1.0 / (n * lam)
    return np.array(
        [_replicate_risk(cdf, k, n, inv_lam_n, source.probs, s) for s in seed_seqs]
    )


def empirical_risk(cfg: SimulationConfig) -> RiskEstimate:
    """Monte Carlo mean of the plug-in estimator's squared-l2 risk.

    Replicate i draws its samples from a substream spawned from
    (cfg.seed, i), so growing `replicates` never reshuffles earlier
    replicates. The standard error is the sample standard deviation over
    replicates divided by sqrt(replicates).

    Raises
    ------
    AlphaOutOfRange
        When 2**alpha_bits > k, where the staircase mechanism is undefined.
    """
    w = maxl_staircase(cfg.k, cfg.alpha_bits)
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.replicates)
    risks = _mc_risks(w, cfg.source, cfg.k, cfg.alpha_bits, cfg.n, seqs)
    mean = float(risks.mean())
    std_error = (
        float(risks.std(ddof=1) / math.sqrt(cfg.replicates)) if cfg.replicates > 1 else 0.0
    )
    r1 = 2.0 ** cfg.alpha_bits - 1.0
    return RiskEstimate(
        mean_risk=mean,
        std_error=std_error,
        replicates=cfg.replicates,
        closed_form=closed_form_risk(cfg.source, cfg.k, cfg.alpha_bits, cfg.n),
        upper_bound=(cfg.k - 1) / (cfg.n * r1),
        lecam_lower=1.0 / (16.0 * cfg.n * r1),
    )


def default_direction(k: int) -> np.ndarray:
    """Zero-sum unit vector (1/sqrt2, -1/sqrt2, 0, ..., 0): the perturbation
    needing the smallest sample size for the two-point pair to stay valid."""
    if k < 2:
        raise InvalidK(f"k must be >= 2, got {k!r}")
    u = np.zeros(k)
    u[0] = 1.0 / math.sqrt(2.0)
    u[1] = -u[0]
    return u


def lecam_pair(
    k: int,
    alpha_bits: float,
    n: int,
    u,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> LeCamPair:
    """Uniform p0 and p1(x) = 1/k + u(x)/sqrt(n*(2**a - 1)).

    `u` must be zero-sum with unit squared norm (within eq_tol). The pair
    is flagged invalid when any p1 entry leaves [0, 1], which cannot happen
    once n >= k^2/(2**a - 1).
    """
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise InvalidK(f"k must be an integer >= 2, got {k!r}")
    if not np.isfinite(alpha_bits) or alpha_bits <= 0:
        raise AlphaOutOfRange(f"alpha_bits must be positive, got {alpha_bits!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    uu = np.asarray(u, dtype=float)
    if uu.shape != (k,):
        raise BadDirectionVector(f"direction must have length {k}, got shape {uu.shape}")
    total = float(uu.sum())
    sqnorm = float(uu @ uu)
    if abs(total) > tol.eq_tol or abs(sqnorm - 1.0) > tol.eq_tol:
        raise BadDirectionVector(
            f"direction must satisfy sum u = 0 and sum u^2 = 1, got {total!r} and {sqnorm!r}"
        )
    p0 = Distribution.uniform(k)
    scale = math.sqrt(n * (2.0 ** alpha_bits - 1.0))
    p1_raw = 1.0 / k + uu / scale
    valid = bool((p1_raw >= 0.0).all() and (p1_raw <= 1.0).all())
    p1 = validate_distribution(p1_raw, tol) if valid else None
    uu_ro = uu.copy()
    uu_ro.setflags(write=False)
    return LeCamPair(p0=p0, p1=p1, u=uu_ro, valid=valid)


def _kl_nats(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def _taylor_value(k, alpha_bits, n, u) -> float:
    r1 = 2.0 ** alpha_bits - 1.0
    p1 = 1.0 / k + np.asarray(u, float) / math.sqrt(n * r1)
    p0 = np.full(k, 1.0 / k)
    return n * r1 * _kl_nats(p1, p0)


def lecam_lower_check(
    k: int,
    alpha_bits: float,
    n: int,
    replicates: int,
    seed: int,
    tol: ToleranceConfig = DEFAULT_TOL,
    taylor_slack: float = 1e-3,
) -> BoundCheckResult:
    """Check the two-point lower bound: the staircase estimator's average
    risk over the pair must be at least 1/(16*n*(2**a - 1)).

    Preconditions, both reported through PreconditionNotMet with the
    smallest satisfying n:

    * pair validity: n >= k^2/(2**a - 1);
    * large-sample condition: n*(2**a - 1)*KL_nats(p1 || p0) <= 1 +
      taylor_slack. The product approaches k/2 from above as n grows
      (for k = 2 it is 1 + 1/(3n(2**a - 1))), so a strict <= 1 test is
      unsatisfiable for every n; `taylor_slack` sets how close to the
      limit counts as converged, and for k >= 3 no sample size qualifies.

    The verdict passes iff S >= bound - 3*std_error, where S is the Monte
    Carlo estimate of the two-point average risk.
    """
    if replicates < 1:
        raise ValueError(f"replicates must be >= 1, got {replicates!r}")
    lam = staircase_rate(k, alpha_bits)  # validates k, alpha, applicability
    del lam
    r1 = 2.0 ** alpha_bits - 1.0
    n_min = math.ceil(k * k / r1)
    if n < n_min:
        raise PreconditionNotMet(
            f"two-point pair invalid at n = {n}; smallest valid n is {n_min}",
            condition="pair_validity",
            min_n=n_min,
        )
    u = default_direction(k)
    value = _taylor_value(k, alpha_bits, n, u)
    if value > 1.0 + taylor_slack:
        min_n = _min_taylor_n(k, alpha_bits, n_min, taylor_slack)
        detail = (
            f"smallest satisfying n is {min_n}"
            if min_n is not None
            else f"no sample size satisfies it for k = {k} (limit {k / 2:.3f})"
        )
        raise PreconditionNotMet(
            f"large-sample condition value {value:.6f} exceeds 1 + {taylor_slack}; {detail}",
            condition="large_sample",
            min_n=min_n,
        )
    pair = lecam_pair(k, alpha_bits, n, u, tol)
    assert pair.valid and pair.p1 is not None
    w = maxl_staircase(k, alpha_bits)
    seqs = np.random.SeedSequence(seed).spawn(2 * replicates)
    risks0 = _mc_risks(w, pair.p0, k, alpha_bits, n, seqs[:replicates])
    risks1 = _mc_risks(w, pair.p1, k, alpha_bits, n, seqs[replicates:])
    s_value = 0.5 * float(risks0.mean() + risks1.mean())
    if replicates > 1:
        se = 0.5 * math.sqrt(
            (risks0.var(ddof=1) + risks1.var(ddof=1)) / replicates
        )
    else:
        se = 0.0
    bound = 1.0 / (16.0 * n * r1)
    return _verdict(
        "lecam_lower",
        bound - 3.0 * se,
        s_value,
        tol.ineq_slack,
        note=(
            f"two-point mean risk {s_value:.6e} (se {se:.3e}, {replicates} replicates "
            f"per point); large-sample condition value {value:.6f}"
        ),
    )


def _min_taylor_n(k, alpha_bits, n_min, taylor_slack):
    """Smallest n >= n_min meeting the large-sample condition, or None."""
    u = default_direction(k)
    limit = k / 2.0
    if limit > 1.0 + taylor_slack:
        return None
    hi = max(n_min, 1)
    for _ in range(64):
        if _taylor_value(k, alpha_bits, hi, u) <= 1.0 + taylor_slack:
            break
        hi *= 2
    else:
        return None
    lo = n_min
    if _taylor_value(k, alpha_bits, lo, u) <= 1.0 + taylor_slack:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _taylor_value(k, alpha_bits, mid, u) <= 1.0 + taylor_slack:
            hi = mid
        else:
            lo = mid
    return hi


def scaling_sweep(
    k: int,
    alpha_bits: float,
    n_grid,
    replicates: int,
    seed: int,
    source: Distribution | None = None,
) -> list[SweepRow]:
    """Risk estimates across sample sizes, with the rate-normalized column
    normalized_risk = mean_risk * n * (2**a - 1).

    Rows are ordered by n; each row runs on its own seed substream derived
    from (seed, row index). An empty grid gives an empty table.
    """
    if source is None:
        source = Distribution.uniform(k)
    r1 = 2.0 ** alpha_bits - 1.0
    rows = []
    for idx, n in enumerate(sorted(int(n) for n in n_grid)):
        row_seed = int(np.random.SeedSequence([int(seed), idx]).generate_state(1, np.uint64)[0])
        cfg = SimulationConfig(
            k=k, alpha_bits=alpha_bits, n=n, replicates=replicates,
            seed=row_seed, source=source,
        )
        est = empirical_risk(cfg)
        rows.append(
            SweepRow(
                n=n,
                mean_risk=est.mean_risk,
                std_error=est.std_error,
                normalized_risk=est.mean_risk * n * r1,
                closed_form=est.closed_form,
                upper_bound=est.upper_bound,
                lecam_lower=est.lecam_lower,
            )
        )
    return rows
