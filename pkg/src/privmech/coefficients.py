"""Channel certificates: contraction, privacy levels, leakage, and a seeded
lower-bound search for f-divergence contraction coefficients.

The exact certificates (Dobrushin coefficient, LDP level, maximal leakage,
minimum entry) are closed-form functions of the channel matrix. The
f-divergence contraction coefficient has no closed form for general f, so
`estimate_eta_f` reports a certified lower bound found by search, never a
claimed supremum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Channel,
    Distribution,
    ToleranceConfig,
    json_float,
    validate_distribution,
)
from .divergences import FDivergenceSpec, FKind, _builtin_f, _custom_slope_at_infinity
from .errors import BudgetTooSmall, CustomFNotNormalized, DimensionMismatch

_LN2 = math.log(2.0)

# Admission window for ratio denominators: pairs with divergence outside
# (DIV_FLOOR, DIV_CEIL) are skipped, mirroring the 0 < D < inf constraint
# in the contraction coefficient's definition.
DIV_FLOOR = 1e-12
DIV_CEIL = 1e12


@dataclass(frozen=True)
class PrivacyReport:
    """Bundle of exact certificates for one channel."""

    eta_tv: float
    ldp_level_bits: float
    maxl_bits: float
    min_entry: float
    input_size: int
    output_size: int

    def to_dict(self) -> dict:
        return {
            "eta_tv": json_float(self.eta_tv),
            "ldp_level_bits": json_float(self.ldp_level_bits),
            "maxl_bits": json_float(self.maxl_bits),
            "min_entry": json_float(self.min_entry),
            "input_size": self.input_size,
            "output_size": self.output_size,
        }


@dataclass(frozen=True)
class ContractionEstimate:
    """Best ratio found by `estimate_eta_f`, with the witnessing pair.

    `value` is a lower bound on the contraction coefficient for the given
    divergence; `grid_resolution` is the per-axis resolution of the
    deterministic exploration grid (0 when no grid stage ran).
    """

    spec: FDivergenceSpec
    value: float
    witness_p0: Distribution
    witness_p1: Distribution
    evaluations: int
    grid_resolution: int
    seed: int


def dobrushin_coefficient(w: Channel) -> float:
    """Maximum total-variation distance between any two rows of the channel.

    Equals the channel's total-variation contraction factor. A single-row
    channel has coefficient 0 (empty maximum).
    """
    if w.input_size == 1:
        return 0.0
    rows = w.rows
    gaps = np.abs(rows[:, None, :] - rows[None, :, :]).sum(axis=2)
    return 0.5 * float(gaps.max())


def ldp_level(w: Channel) -> float:
    """Least a such that every column's entry ratio is at most 2**a, in bits.

    Columns that are identically zero contribute ratio 1 (the 0/0
    convention); a column mixing zero and nonzero entries forces +inf.
    Constant channels report 0.
    """
    col_max = w.rows.max(axis=0)
    col_min = w.rows.min(axis=0)
    worst = 1.0
    for hi, lo in zip(col_max, col_min):
        if hi == 0.0:
            ratio = 1.0
        elif lo == 0.0:
            return float("inf")
        else:
            ratio = hi / lo
        worst = max(worst, ratio)
    return float(np.log2(worst))


def max_leakage(w: Channel) -> float:
    """log2 of the sum over outputs of the column-wise maximum entry, in bits.

    Operationally: the log of the best multiplicative gain a maximum a
    posteriori guesser of the input (or of any function of it) obtains from
    observing the output.
    """
    return float(np.log2(w.rows.max(axis=0).sum()))


def min_entry(w: Channel) -> float:
    """Smallest entry of the channel matrix."""
    return float(w.rows.min())


def map_adversary_gain(w: Channel, px: Distribution) -> float:
    """Multiplicative guessing gain of a MAP adversary on the input itself.

    log2( sum_y max_x px(x) w(x,y) / max_x px(x) ), in bits. Equals
    `max_leakage(w)` when px is uniform and 0 when px is a point mass.
    """
    if px.alphabet_size != w.input_size:
        raise DimensionMismatch(
            f"prior size {px.alphabet_size} != channel input size {w.input_size}"
        )
    hit = float((px.probs[:, None] * w.rows).max(axis=0).sum())
    return float(np.log2(hit / px.probs.max()))


def privacy_report(w: Channel) -> PrivacyReport:
    """Compute all exact certificates for one channel."""
    return PrivacyReport(
        eta_tv=dobrushin_coefficient(w),
        ldp_level_bits=ldp_level(w),
        maxl_bits=max_leakage(w),
        min_entry=min_entry(w),
        input_size=w.input_size,
        output_size=w.output_size,
    )


# ---------------------------------------------------------------------------
# contraction-coefficient lower-bound search
# ---------------------------------------------------------------------------
#
# Ratio evaluation works on (base, difference) pairs rather than on two
# separately rounded vectors: the difference is pushed through the channel
# once and each divergence is computed from it at full relative precision.
# Otherwise the hill climb happily chases rounding noise near the admission
# floor and reports "lower bounds" above the true supremum.


def _bracket_g(x: np.ndarray) -> np.ndarray:
    # g(t) = (1+t)*log1p(t) - t, the nonnegative integrand of extended KL;
    # series for small |t| to keep full relative precision
    out = np.empty_like(x)
    small = np.abs(x) <= 1e-4
    xs = x[small]
    out[small] = xs * xs * (0.5 - xs / 6.0 + xs * xs / 12.0)
    xl = x[~small]
    with np.errstate(divide="ignore", invalid="ignore"):
        out[~small] = (1.0 + xl) * np.log1p(xl) - xl
    out[x == -1.0] = 1.0
    return out


def _kl_pair_bits(base: np.ndarray, diff: np.ndarray) -> float:
    zero = base == 0.0
    if np.any(zero & (diff != 0.0)):
        return float("inf")
    q = base[~zero]
    x = np.maximum(diff[~zero] / q, -1.0)
    return float(np.sum(q * _bracket_g(x)) / _LN2)


def _tv_pair(base: np.ndarray, diff: np.ndarray) -> float:
    return 0.5 * float(np.abs(diff).sum())


def _chi2_pair(base: np.ndarray, diff: np.ndarray) -> float:
    zero = base == 0.0
    if np.any(zero & (diff != 0.0)):
        return float("inf")
    d = diff[~zero]
    return float(np.sum(d * d / base[~zero]))


def _make_pair_divergence(spec: FDivergenceSpec, tol: ToleranceConfig):
    if spec.kind is FKind.TOTAL_VARIATION:
        return _tv_pair
    if spec.kind is FKind.KL:
        return _kl_pair_bits
    if spec.kind is FKind.CHI_SQUARED:
        return _chi2_pair
    # custom f: generic integrand on the reconstructed pair; precision near
    # the admission floor then depends on the caller's f
    at_one = float(spec.custom_f(1.0))
    if not abs(at_one) <= tol.eq_tol:
        raise CustomFNotNormalized(f"f(1) = {at_one!r}, expected 0")
    f_inf = _custom_slope_at_infinity(spec.custom_f)

    def _custom_pair(base, diff):
        p = np.clip(base + diff, 0.0, None)
        qpos = base > 0
        ratios = p[qpos] / base[qpos]
        total = float(np.sum(base[qpos] * np.array([float(spec.custom_f(t)) for t in ratios])))
        escaped = float(p[~qpos].sum())
        if escaped > 0.0:
            total += escaped * f_inf
        return total

    return _custom_pair


def estimate_eta_f(
    w: Channel,
    spec: FDivergenceSpec,
    budget: int,
    seed: int,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ContractionEstimate:
    """Search for a high ratio D_f(w(p0) || w(p1)) / D_f(p0 || p1).

    The search spends `budget` ratio evaluations in three stages:

    1. every ordered pair of point masses (exact for total variation, whose
       supremum is attained there);
    2. deterministic exploration: a two-parameter grid for binary input
       alphabets, symmetric-Dirichlet random pairs otherwise;
    3. greedy coordinate-wise refinement of the best pair with shrinking
       steps.

    Pairs whose input divergence falls outside (1e-12, 1e12) are skipped,
    matching the 0 < D_f < inf constraint in the coefficient's definition.
    The result is deterministic given (budget, seed).

    Returns
    -------
    ContractionEstimate
        `value` is a certified lower bound on the contraction coefficient
        (0 with degenerate witnesses if no admissible pair exists, e.g. for
        single-letter input alphabets).

    Raises
    ------
    BudgetTooSmall
        If budget < 1, or if the divergence is total variation and the
        budget cannot cover all ordered point-mass pairs.
    """
    if budget < 1:
        raise BudgetTooSmall("budget must be at least 1")
    k = w.input_size
    n_vertex = k * (k - 1)
    if spec.kind is FKind.TOTAL_VARIATION and budget < n_vertex:
        raise BudgetTooSmall(
            f"total-variation search needs at least {n_vertex} evaluations "
            f"to cover all point-mass pairs, got {budget}"
        )
    pair_div = _make_pair_divergence(spec, tol)
    rows = w.rows

    evals = 0
    best_val = -1.0
    best: tuple[np.ndarray, np.ndarray] | None = None

    def try_pair(p0: np.ndarray, p1: np.ndarray) -> bool:
        nonlocal evals, best_val, best
        if evals >= budget:
            return False
        evals += 1
        diff = p0 - p1
        support = (p0 > 0) | (p1 > 0)
        # project the difference back onto zero sum over the joint support;
        # kills the rounding drift that would otherwise leak into the ratio
        diff[support] -= diff[support].mean()
        din = pair_div(p1, diff)
        if not DIV_FLOOR < din < DIV_CEIL:
            return True
        dout = pair_div(p1 @ rows, diff @ rows)
        ratio = dout / din
        if ratio > best_val:
            best_val = ratio
            best = (p0.copy(), p1.copy())
        return True

    def vertex_stage():
        eye = np.eye(k)
        for i in range(k):
            for j in range(k):
                if i != j and not try_pair(eye[i].copy(), eye[j].copy()):
                    return

    vertex_stage()

    explore = (budget - evals) // 2
    grid_resolution = 0
    if k == 2:
        g = 0
        while (g + 1) * g <= explore:
            g += 1
        # at exit g*(g-1) <= explore: the grid fits the exploration budget
        if g >= 2:
            grid_resolution = g
            pts = np.arange(1, g + 1) / (g + 1.0)

            def grid_stage():
                for a in pts:
                    p0 = np.array([a, 1.0 - a])
                    for b in pts:
                        if a != b and not try_pair(p0.copy(), np.array([b, 1.0 - b])):
                            return

            grid_stage()
    else:
        rng = np.random.default_rng(seed)
        alpha = np.ones(k)
        for _ in range(explore):
            if not try_pair(rng.dirichlet(alpha), rng.dirichlet(alpha)):
                break

    def climb_stage():
        step = 0.1
        while evals < budget and step >= 1e-9:
            before = best_val
            for which in (0, 1):
                for a in range(k):
                    for b in range(k):
                        if a == b:
                            continue
                        cand = [best[0].copy(), best[1].copy()]
                        eps = min(step, cand[which][a])
                        if eps <= 0.0:
                            continue
                        cand[which][a] -= eps
                        cand[which][b] += eps
                        moved = np.clip(cand[which], 0.0, None)
                        cand[which] = moved / moved.sum()
                        if not try_pair(cand[0], cand[1]):
                            return
            if best_val <= before:
                step *= 0.5

    if best is not None:
        climb_stage()
        value = min(max(best_val, 0.0), 1.0)
        w0 = validate_distribution(best[0], tol)
        w1 = validate_distribution(best[1], tol)
    else:
        # no admissible pair (e.g. |X| = 1): report 0 with degenerate witnesses
        value = 0.0
        w0 = w1 = Distribution.uniform(k)
    return ContractionEstimate(
        spec=spec,
        value=value,
        witness_p0=w0,
        witness_p1=w1,
        evaluations=evals,
        grid_resolution=grid_resolution,
        seed=seed,
    )
