"""Threshold aggregation of sampled CSS slices and ROC-based threshold choice.

Estimating a network from a random sample of CSS slices is a per-cell binary
classification driven by a report threshold k:

* knowledge region (both endpoints sampled): the cell is fixed by the
  intersection of the two self-reports, no perception can change it;
* perception region (at most one endpoint sampled): sampled slices are
  added up, and a cell becomes a tie once k reports have accumulated; a
  sampled endpoint's own claim counts as one ordinary report.

The knowledge region doubles as a calibration set: its truth is known, so
sweeping k yields estimated false-positive rates ``alpha_hat`` and
false-negative rates ``beta_hat``, an ROC curve, and two distances from the
ideal (0, 1) corner:

    delta   = sqrt(alpha_hat^2 + beta_hat^2)
    delta_w = sqrt((w * alpha_hat)^2 + beta_hat^2)

The fixed-threshold method (``ftm``) aggregates at a given k.  The adaptive
threshold method (``atm``) picks the smallest k whose alpha_hat drops below a
tolerable rate.  The ROC threshold method (``rtm``) picks the k minimizing
delta_w with the density-derived default weight w = 1 / d_bar, where d_bar is
the average density of the sampled slices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    CssArray,
    DiagonalPolicy,
    Network,
    SampleDesign,
    average_sample_density,
    third_party_counts,
)

__all__ = [
    "CalibrationCounts",
    "RocRow",
    "RocTable",
    "EstimateReport",
    "ftm",
    "calibrate",
    "roc_table",
    "select_atm_threshold",
    "select_rtm_threshold",
    "atm",
    "rtm",
    "s14",
]


@dataclass(frozen=True)
class CalibrationCounts:
    """Error counts over the knowledge region at one threshold k."""

    k: int
    type1_count: int
    type2_count: int
    possible_type1: int
    possible_type2: int
    alpha_hat: float
    beta_hat: float
    degenerate: bool  # a zero denominator was reported as rate 0


@dataclass(frozen=True)
class RocRow:
    """One calibration row: rates, TPR and the two corner distances."""

    k: int
    type1_count: int
    type2_count: int
    possible_type1: int
    possible_type2: int
    alpha_hat: float
    beta_hat: float
    tpr: float
    delta: float
    delta_w: float
    degenerate: bool = False


@dataclass
class RocTable:
    """Calibration sweep over k = 0 .. (n-2)+1 for one sample.

    The final row is one past the largest attainable third-party count, so
    an all-negative (TPR 0, FPR 0) endpoint is always present.
    """

    rows: list[RocRow]
    w: float
    d_bar: float
    sample: SampleDesign
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS

    def row(self, k: int) -> RocRow:
        for r in self.rows:
            if r.k == k:
                return r
        raise KeyError(f"no row for k={k}")

    def argmin_delta_w(self) -> int:
        """k minimizing delta_w; ties break toward the smallest k."""
        best = self.rows[0]
        for r in self.rows[1:]:
            if r.delta_w < best.delta_w:
                best = r
        return best.k


@dataclass
class EstimateReport:
    """An estimated network plus the selection trail that produced it."""

    method: str  # ftm | atm | rtm
    k_star: int
    params: dict
    network: Network
    sample: SampleDesign
    roc: RocTable | None = None
    degenerate: bool = False


def _endpoint_reports(css: CssArray):
    """(sender_report, receiver_report) matrices: cells[i,j,i] and cells[i,j,j]."""
    idx = np.arange(css.n_actors)
    sender = css.cells[idx[:, None], idx[None, :], idx[:, None]]
    receiver = css.cells[idx[:, None], idx[None, :], idx[None, :]]
    return sender, receiver


def _sample_masks(css: CssArray, sample: SampleDesign):
    sample.validate_for(css.n_actors)
    in_sample = np.zeros(css.n_actors, dtype=bool)
    in_sample[sample.indices0()] = True
    both = in_sample[:, None] & in_sample[None, :]
    return in_sample, both


def ftm(css: CssArray, sample: SampleDesign, k: int) -> Network:
    """Fixed-threshold aggregation of the sampled slices.

    Knowledge cells take the intersection of the two self-reports.  Every
    other cell accumulates one report per sampled slice claiming the tie
    (a sampled endpoint's self-report included) and becomes a tie iff at
    least k reports accumulated.  With k = 0 the whole perception region
    is set to 1.
    """
    if k < 0:
        raise ValueError("threshold k must be >= 0")
    n = css.n_actors
    in_sample, both = _sample_masks(css, sample)
    sender, receiver = _endpoint_reports(css)
    intersected = (sender & receiver).astype(np.uint8)
    reports = css.cells[:, :, sample.indices0()].sum(axis=2)
    estimate = np.where(both, intersected, (reports >= k).astype(np.uint8))
    np.fill_diagonal(estimate, 0)
    return Network(n_actors=n, adjacency=estimate.astype(np.uint8), origin="estimate")


def calibrate(
    css: CssArray,
    sample: SampleDesign,
    k: int,
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS,
) -> CalibrationCounts:
    """Estimated type 1 / type 2 error rates over the knowledge region at k.

    The region's truth is fixed by self-report intersection.  Each cell is
    classified as a tie iff at least k *third-party* sampled perceivers
    report it -- the endpoints' own slices are excluded, mirroring how
    unsampled-dyad cells are estimated.  Zero denominators yield rate 0
    with the degenerate flag set.
    """
    if k < 0:
        raise ValueError("threshold k must be >= 0")
    diagonal_policy = DiagonalPolicy(diagonal_policy)
    _, both = _sample_masks(css, sample)
    region = both.copy()
    if diagonal_policy is DiagonalPolicy.EXCLUDE:
        np.fill_diagonal(region, False)
    sender, receiver = _endpoint_reports(css)
    truth = (sender & receiver).astype(bool)
    predicted = third_party_counts(css, sample) >= k
    type1 = int((region & ~truth & predicted).sum())
    type2 = int((region & truth & ~predicted).sum())
    possible1 = int((region & ~truth).sum())
    possible2 = int((region & truth).sum())
    return CalibrationCounts(
        k=k,
        type1_count=type1,
        type2_count=type2,
        possible_type1=possible1,
        possible_type2=possible2,
        alpha_hat=type1 / possible1 if possible1 else 0.0,
        beta_hat=type2 / possible2 if possible2 else 0.0,
        degenerate=possible1 == 0 or possible2 == 0,
    )


def _k_range(n: int) -> range:
    # Third-party counts over the knowledge region are bounded by n - 2,
    # so k = n - 1 is guaranteed all-negative; keep at least k in {0, 1}.
    return range(0, max(n - 1, 1) + 1)


def roc_table(
    css: CssArray,
    sample: SampleDesign,
    w: float = 1.0,
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS,
) -> RocTable:
    """Full calibration sweep with distances delta and delta_w.

    With w = 1 the delta_w column equals the delta column.
    """
    if not w > 0:
        raise ValueError("weight w must be positive")
    d_bar = average_sample_density(css, sample)
    rows = []
    for k in _k_range(sample.n):
        c = calibrate(css, sample, k, diagonal_policy)
        delta = math.hypot(c.alpha_hat, c.beta_hat)
        delta_w = math.hypot(w * c.alpha_hat, c.beta_hat)
        rows.append(
            RocRow(
                k=k,
                type1_count=c.type1_count,
                type2_count=c.type2_count,
                possible_type1=c.possible_type1,
                possible_type2=c.possible_type2,
                alpha_hat=c.alpha_hat,
                beta_hat=c.beta_hat,
                tpr=1.0 - c.beta_hat,
                delta=delta,
                delta_w=delta_w,
                degenerate=c.degenerate,
            )
        )
    return RocTable(
        rows=rows, w=w, d_bar=d_bar, sample=sample, diagonal_policy=diagonal_policy
    )


def select_atm_threshold(table: RocTable, alpha: float) -> int:
    """Smallest k whose alpha_hat is strictly below alpha.

    Existence is guaranteed: the table's final row is all-negative, so its
    alpha_hat is 0.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    for row in table.rows:
        if row.alpha_hat < alpha:
            return row.k
    return table.rows[-1].k  # unreachable: last row has alpha_hat = 0


def select_rtm_threshold(table: RocTable, w: float) -> int:
    """k minimizing sqrt((w*alpha_hat)^2 + beta_hat^2); ties to smallest k.

    The weight is applied to the table's (alpha_hat, beta_hat) pairs
    directly, so any w may be evaluated against a table built once.
    """
    if not w > 0:
        raise ValueError("weight w must be positive")
    best_k = table.rows[0].k
    best = math.hypot(w * table.rows[0].alpha_hat, table.rows[0].beta_hat)
    for row in table.rows[1:]:
        dw = math.hypot(w * row.alpha_hat, row.beta_hat)
        if dw < best:
            best, best_k = dw, row.k
    return best_k


def atm(
    css: CssArray,
    sample: SampleDesign,
    alpha: float,
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS,
) -> EstimateReport:
    """Adaptive threshold: smallest k whose alpha_hat drops strictly below alpha."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    table = roc_table(css, sample, w=1.0, diagonal_policy=diagonal_policy)
    k_star = select_atm_threshold(table, alpha)
    return EstimateReport(
        method="atm",
        k_star=k_star,
        params={"alpha": alpha},
        network=ftm(css, sample, k_star),
        sample=sample,
        roc=table,
    )


def rtm(
    css: CssArray,
    sample: SampleDesign,
    w: float | None = None,
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS,
) -> EstimateReport:
    """ROC threshold: k minimizing delta_w, with default weight w = 1 / d_bar.

    All sampled slices empty is degenerate (d_bar = 0, no usable weight):
    the report is flagged, k_star = 1, and the estimate is an empty network
    regardless.
    """
    d_bar = average_sample_density(css, sample)
    if w is None:
        if d_bar == 0.0:
            table = roc_table(css, sample, w=1.0, diagonal_policy=diagonal_policy)
            k_star = 1
            return EstimateReport(
                method="rtm",
                k_star=k_star,
                params={"w": None, "d_bar": 0.0},
                network=ftm(css, sample, k_star),
                sample=sample,
                roc=table,
                degenerate=True,
            )
        w = 1.0 / d_bar
    elif not w > 0:
        raise ValueError("weight w must be positive")
    table = roc_table(css, sample, w=w, diagonal_policy=diagonal_policy)
    k_star = select_rtm_threshold(table, w)
    return EstimateReport(
        method="rtm",
        k_star=k_star,
        params={"w": w, "d_bar": d_bar},
        network=ftm(css, sample, k_star),
        sample=sample,
        roc=table,
    )


def s14(a: Network, b: Network) -> float:
    """Binary product-moment (phi) similarity over off-diagonal cells.

    Forms the 2x2 agreement table p, q, r, t (both-one, a-only, b-only,
    both-zero) and returns ``(p*t - q*r) / sqrt((p+q)(r+t)(p+r)(q+t))``.
    Symmetric in its arguments; NaN when any marginal is zero (degenerate,
    not silently 0).
    """
    if a.n_actors != b.n_actors:
        raise ValueError("networks must have the same number of actors")
    n = a.n_actors
    off = ~np.eye(n, dtype=bool)
    x = a.adjacency[off].astype(bool)
    y = b.adjacency[off].astype(bool)
    p = int((x & y).sum())
    q = int((x & ~y).sum())
    r = int((~x & y).sum())
    t = int((~x & ~y).sum())
    denom = (p + q) * (r + t) * (p + r) * (q + t)
    if denom == 0:
        return math.nan
    return (p * t - q * r) / math.sqrt(denom)
