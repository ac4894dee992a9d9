"""Numerical certification of the contraction/privacy inequalities.

Each check recomputes everything it needs from the channel so that a verdict
is self-contained and auditable. A verdict passes when lhs <= rhs +
ineq_slack; checks whose preconditions fail are flagged `applicable=False`
and pass vacuously (they are excluded from exit-code aggregation).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Channel, ToleranceConfig, json_float
from .coefficients import dobrushin_coefficient, ldp_level, max_leakage, min_entry
from .errors import NegativeValue, TooFewValues


@dataclass(frozen=True)
class BoundCheckResult:
    """One inequality verdict: passed iff lhs <= rhs + ineq_slack.

    Likelihood-ratio verdicts (see the product-form note) report the
    ratio-form numbers but decide `passed` on the equivalent unit-scale
    rearrangement, where the slack is meaningful.
    """

    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    applicable: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": json_float(self.lhs),
            "rhs": json_float(self.rhs),
            "margin": json_float(self.margin),
            "passed": self.passed,
            "applicable": self.applicable,
            "note": self.note,
        }


def _verdict(name, lhs, rhs, slack, applicable=True, note="") -> BoundCheckResult:
    lhs = float(lhs)
    rhs = float(rhs)
    with np.errstate(invalid="ignore"):
        margin = rhs - lhs
    passed = bool(lhs <= rhs + slack) if applicable else True
    return BoundCheckResult(name, lhs, rhs, float(margin), passed, applicable, note)


# The likelihood-ratio bounds compare quantities as large as 1/min_entry,
# where both the entries' own float resolution and any absolute slack are
# meaningless. Those verdicts report the ratio-form lhs/rhs but are DECIDED
# in the algebraically equivalent product form, whose terms are all of unit
# scale: e.g. ratio <= 1 + eta/min_entry becomes (ratio-1)*min_entry <= eta.
_PRODUCT_FORM_NOTE = "decided in the product form at unit scale"


def check_thm1(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> BoundCheckResult:
    """Dobrushin coefficient <= (2**a - 1)/(2**a + 1) at the channel's LDP level.

    An infinite level gives the vacuous right side 1.
    """
    alpha = ldp_level(w)
    if np.isinf(alpha):
        rhs = 1.0
    else:
        r = 2.0 ** alpha
        rhs = (r - 1.0) / (r + 1.0)
    return _verdict("thm1", dobrushin_coefficient(w), rhs, tol.ineq_slack)


def check_thm2(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> BoundCheckResult:
    """Worst likelihood ratio <= 1 + eta_tv / (minimum entry).

    Only applicable to full-support channels; with a zero entry the right
    side is infinite.
    """
    wstar = min_entry(w)
    lhs = 2.0 ** ldp_level(w)
    if wstar > 0.0:
        eta = dobrushin_coefficient(w)
        rhs = 1.0 + eta / wstar
        passed = bool((lhs - 1.0) * wstar <= eta + tol.ineq_slack)
        return BoundCheckResult(
            "thm2", lhs, rhs, float(rhs - lhs), passed, True, _PRODUCT_FORM_NOTE
        )
    return _verdict(
        "thm2", lhs, float("inf"), tol.ineq_slack, applicable=False, note="zero entry"
    )


def check_thm3(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> BoundCheckResult:
    """Dobrushin coefficient <= min(1, 2**a - 1) at the channel's leakage level."""
    rhs = min(1.0, 2.0 ** max_leakage(w) - 1.0)
    return _verdict("thm3", dobrushin_coefficient(w), rhs, tol.ineq_slack)


def check_thm4(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> BoundCheckResult:
    """Column-max sum <= (|X|/2) * (1 + eta_tv); equality when |X| = 2."""
    lhs = 2.0 ** max_leakage(w)
    rhs = 0.5 * w.input_size * (1.0 + dobrushin_coefficient(w))
    return _verdict("thm4", lhs, rhs, tol.ineq_slack)


def check_maxl_sandwich(w: Channel, tol: ToleranceConfig = DEFAULT_TOL):
    """1 + eta_tv <= column-max sum <= (|X|/2)(1 + eta_tv), as two verdicts."""
    eta = dobrushin_coefficient(w)
    leak = 2.0 ** max_leakage(w)
    lower = _verdict("maxl_sandwich_lower", 1.0 + eta, leak, tol.ineq_slack)
    upper = _verdict(
        "maxl_sandwich_upper", leak, 0.5 * w.input_size * (1.0 + eta), tol.ineq_slack
    )
    return lower, upper


def check_ldp_sandwich(w: Channel, tol: ToleranceConfig = DEFAULT_TOL):
    """2*eta/(1 - eta) <= R - 1 <= eta / (minimum entry), where R is the
    worst likelihood ratio. Each side carries its own applicability flag."""
    eta = dobrushin_coefficient(w)
    wstar = min_entry(w)
    ratio = 2.0 ** ldp_level(w)
    if eta < 1.0:
        lhs = 2.0 * eta / (1.0 - eta)
        if np.isinf(ratio):
            passed = True
        else:
            passed = bool(2.0 * eta <= (ratio - 1.0) * (1.0 - eta) + tol.ineq_slack)
        lower = BoundCheckResult(
            "ldp_sandwich_lower", lhs, ratio - 1.0, float(ratio - 1.0 - lhs),
            passed, True, _PRODUCT_FORM_NOTE,
        )
    else:
        lower = _verdict(
            "ldp_sandwich_lower",
            float("inf"),
            ratio - 1.0,
            tol.ineq_slack,
            applicable=False,
            note="eta_tv = 1",
        )
    if wstar > 0.0:
        rhs = eta / wstar
        passed = bool((ratio - 1.0) * wstar <= eta + tol.ineq_slack)
        upper = BoundCheckResult(
            "ldp_sandwich_upper", ratio - 1.0, rhs, float(rhs - (ratio - 1.0)),
            passed, True, _PRODUCT_FORM_NOTE,
        )
    else:
        upper = _verdict(
            "ldp_sandwich_upper",
            ratio - 1.0,
            float("inf"),
            tol.ineq_slack,
            applicable=False,
            note="zero entry",
        )
    return lower, upper


def check_lemma1(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> BoundCheckResult:
    """Row-pair entry contrast |w1 - w2|/(w1 + w2) <= (2**a - 1)/(2**a + 1).

    Triples where both entries vanish are skipped (their contrast is the
    indeterminate 0/0); the count of skipped triples is recorded in the
    note. Not applicable when the LDP level is infinite.
    """
    alpha = ldp_level(w)
    rows = w.rows
    lhs = 0.0
    skipped = 0
    for i in range(w.input_size):
        for j in range(i + 1, w.input_size):
            num = np.abs(rows[i] - rows[j])
            den = rows[i] + rows[j]
            live = den > 0.0
            skipped += int((~live).sum())
            if live.any():
                lhs = max(lhs, float((num[live] / den[live]).max()))
    note = f"skipped {skipped} zero-zero triples" if skipped else ""
    if np.isinf(alpha):
        return _verdict(
            "lemma1", lhs, 1.0, tol.ineq_slack, applicable=False,
            note=(note + "; " if note else "") + "ldp level infinite",
        )
    r = 2.0 ** alpha
    return _verdict("lemma1", lhs, (r - 1.0) / (r + 1.0), tol.ineq_slack, note=note)


def pairwise_mean_bound(values) -> tuple[int, int, float]:
    """Indices of the two largest values (ties to the lowest index) and their
    mean, which always dominates the overall mean."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise TooFewValues(f"need a vector of at least 2 values, got shape {arr.shape}")
    if (arr < 0).any():
        i = int(np.where(arr < 0)[0][0])
        raise NegativeValue(f"negative value {arr[i]!r} at index {i}")
    order = np.argsort(-arr, kind="stable")
    i1, i2 = int(order[0]), int(order[1])
    pair_mean = 0.5 * (float(arr[i1]) + float(arr[i2]))
    assert arr.mean() <= pair_mean + 1e-15 * max(1.0, pair_mean)
    return i1, i2, pair_mean


def run_all_checks(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> list[BoundCheckResult]:
    """Every verdict for one channel, in a fixed order."""
    maxl_lower, maxl_upper = check_maxl_sandwich(w, tol)
    ldp_lower, ldp_upper = check_ldp_sandwich(w, tol)
    return [
        check_thm1(w, tol),
        check_thm2(w, tol),
        check_thm3(w, tol),
        check_thm4(w, tol),
        maxl_lower,
        maxl_upper,
        ldp_lower,
        ldp_upper,
        check_lemma1(w, tol),
    ]
