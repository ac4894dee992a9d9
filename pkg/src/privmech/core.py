"""Finite-alphabet probability objects: distributions, channels, and their algebra.

Distributions are validated probability vectors; channels are row-stochastic
matrices acting on them by pushforward. Validation is strict: nothing is ever
renormalized, because downstream certificate checks assume exact
stochasticity up to the configured slack. All objects are immutable after
construction (frozen dataclasses over read-only arrays) and safe to share
across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyMatrix,
    EmptyVector,
    NegativeEntry,
    RaggedRows,
    RowSumOutOfTolerance,
    SumOutOfTolerance,
    ValidationError,
)


@dataclass(frozen=True)
class ToleranceConfig:
    """Single numerics policy shared by every module.

    sum_tol: slack on vector/row sums at validation time.
    eq_tol: slack for equality assertions between computed reals.
    ineq_slack: slack added to the right side of inequality checks to absorb
        accumulated rounding.
    """

    sum_tol: float = 1e-9
    eq_tol: float = 1e-12
    ineq_slack: float = 1e-10

    def __post_init__(self):
        for name in ("sum_tol", "eq_tol", "ineq_slack"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-3:
                raise ValueError(f"{name} must lie in (0, 1e-3], got {value!r}")


DEFAULT_TOL = ToleranceConfig()


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector on a finite alphabet of size `alphabet_size`.

    Construct through `validate_distribution` (or the `uniform` /
    `point_mass` helpers); direct construction skips validation.
    """

    probs: np.ndarray
    alphabet_size: int

    @classmethod
    def uniform(cls, k: int) -> "Distribution":
        if k < 1:
            raise EmptyVector("alphabet size must be at least 1")
        return cls(_readonly(np.full(k, 1.0 / k)), k)

    @classmethod
    def point_mass(cls, k: int, x: int) -> "Distribution":
        if k < 1:
            raise EmptyVector("alphabet size must be at least 1")
        if not 0 <= x < k:
            raise DimensionMismatch(f"point-mass location {x} outside [0, {k})")
        probs = np.zeros(k)
        probs[x] = 1.0
        return cls(_readonly(probs), k)


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic |X| x |Y| matrix; rows[x, y] is the probability of
    emitting output y on input x. Construct through `validate_channel`."""

    rows: np.ndarray
    input_size: int
    output_size: int


def validate_distribution(p, tol: ToleranceConfig = DEFAULT_TOL) -> Distribution:
    """Validate a raw real vector as a probability distribution.

    Entries must be nonnegative and sum to 1 within `tol.sum_tol`. The
    vector is never renormalized; out-of-tolerance input is an error.

    Raises
    ------
    EmptyVector, NegativeEntry, SumOutOfTolerance
    """
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"expected a 1-d vector, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptyVector("probability vector is empty")
    negative = np.where(arr < 0)[0]
    if negative.size:
        i = int(negative[0])
        raise NegativeEntry(i, float(arr[i]))
    total = float(arr.sum())
    # `not <=` instead of `>` so NaN sums are rejected too
    if not abs(total - 1.0) <= tol.sum_tol:
        raise SumOutOfTolerance(total, tol.sum_tol)
    return Distribution(_readonly(arr), arr.size)


def validate_channel(m, tol: ToleranceConfig = DEFAULT_TOL) -> Channel:
    """Validate a raw real matrix as a row-stochastic channel.

    Every row must pass the same checks as `validate_distribution`.

    Raises
    ------
    EmptyMatrix, RaggedRows, NegativeEntry, RowSumOutOfTolerance
    """
    try:
        arr = np.asarray(m, dtype=float)
    except ValueError as exc:
        raise RaggedRows(f"rows have unequal lengths: {exc}") from exc
    if arr.size == 0:
        raise EmptyMatrix("channel matrix has no entries")
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {arr.shape}")
    bad_rows, bad_cols = np.where(arr < 0)
    if bad_rows.size:
        r, c = int(bad_rows[0]), int(bad_cols[0])
        raise NegativeEntry(c, float(arr[r, c]), row=r)
    sums = arr.sum(axis=1)
    off = ~(np.abs(sums - 1.0) <= tol.sum_tol)
    if off.any():
        r = int(np.where(off)[0][0])
        raise RowSumOutOfTolerance(r, float(sums[r]), tol.sum_tol)
    return Channel(_readonly(arr), arr.shape[0], arr.shape[1])


def pushforward(w: Channel, p: Distribution) -> Distribution:
    """Image distribution q(y) = sum_x p(x) w(x, y)."""
    if p.alphabet_size != w.input_size:
        raise DimensionMismatch(
            f"distribution size {p.alphabet_size} != channel input size {w.input_size}"
        )
    return Distribution(_readonly(p.probs @ w.rows), w.output_size)


def compose(w1: Channel, w2: Channel) -> Channel:
    """Serial composition: feed w1's output into w2."""
    if w1.output_size != w2.input_size:
        raise DimensionMismatch(
            f"first output size {w1.output_size} != second input size {w2.input_size}"
        )
    return Channel(_readonly(w1.rows @ w2.rows), w1.input_size, w2.output_size)


def json_float(x: float):
    """JSON-safe scalar: infinities and NaN become strings."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def channel_to_dict(w: Channel, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Interchange form: {"rows": [[...], ...], "tol": {"sum_tol": ...}}."""
    return {
        "rows": [[float(v) for v in row] for row in w.rows],
        "tol": {"sum_tol": tol.sum_tol},
    }


def channel_from_dict(d: dict, tol: ToleranceConfig | None = None) -> Channel:
    """Parse the interchange form; unknown keys are ignored."""
    if not isinstance(d, dict) or "rows" not in d:
        raise ValidationError("channel JSON must be an object with a 'rows' key")
    if tol is None:
        raw_tol = d.get("tol") or {}
        tol = ToleranceConfig(sum_tol=float(raw_tol.get("sum_tol", DEFAULT_TOL.sum_tol)))
    return validate_channel(d["rows"], tol)


def distribution_to_dict(p: Distribution) -> dict:
    return {"probs": [float(v) for v in p.probs]}


def distribution_from_dict(d: dict, tol: ToleranceConfig = DEFAULT_TOL) -> Distribution:
    if not isinstance(d, dict) or "probs" not in d:
        raise ValidationError("distribution JSON must be an object with a 'probs' key")
    return validate_distribution(d["probs"], tol)
