"""Per-respondent omission/commission error profiles against the derived truth.

A perceiver commits a commission (type 1) error on a cell when they report a
tie the true network lacks, and an omission (type 2) error when they miss a
tie the true network has.  Rates divide each count by the number of cells
where that error was possible (zeros in truth for type 1, ones for type 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import CssArray, Network, derive_truth

__all__ = [
    "CellScope",
    "ActorErrorProfile",
    "ErrorSummary",
    "actor_errors",
    "error_summary",
    "error_breakdown_table",
    "pearson",
]


class CellScope(str, Enum):
    """Which cells of the truth matrix count toward an actor's errors.

    Diagonal cells are structural zeros in every slice, so under ALL_CELLS
    they can never be committed errors; they only inflate possible_type1.
    """

    ALL_OFF_DIAGONAL = "all_off_diagonal"
    ALL_CELLS = "all_cells"


@dataclass(frozen=True)
class ActorErrorProfile:
    """Error counts and rates for one perceiver (1-based ``actor_id``)."""

    actor_id: int
    type1_count: int
    type2_count: int
    possible_type1: int
    possible_type2: int
    type1_rate: float
    type2_rate: float
    degenerate_type1: bool = False
    degenerate_type2: bool = False

    @property
    def total(self) -> int:
        return self.type1_count + self.type2_count


@dataclass(frozen=True)
class ErrorSummary:
    """Means/SDs of the two rate vectors and their Pearson correlation.

    SDs use the n-1 (sample) denominator.  ``correlation`` and the SDs are
    NaN when undefined (fewer than two actors, or a zero-variance rate
    vector for the correlation).
    """

    n_actors: int
    mean_type1: float
    sd_type1: float
    mean_type2: float
    sd_type2: float
    correlation: float


def _scope_mask(n: int, scope: CellScope) -> np.ndarray:
    mask = np.ones((n, n), dtype=bool)
    if CellScope(scope) is CellScope.ALL_OFF_DIAGONAL:
        np.fill_diagonal(mask, False)
    return mask


def actor_errors(
    css: CssArray,
    truth: Network,
    m: int,
    cell_scope: CellScope = CellScope.ALL_OFF_DIAGONAL,
) -> ActorErrorProfile:
    """Count perceiver m's type 1 / type 2 errors against ``truth``.

    The perceiver's own dyads are included: the intersection truth can
    contradict a self-report.
    """
    if truth.n_actors != css.n_actors:
        raise ValueError("truth and CSS array disagree on the actor count")
    css._check_actor(m)
    mask = _scope_mask(css.n_actors, cell_scope)
    perceived = css.slice(m)
    actual = truth.adjacency
    type1 = int((mask & (actual == 0) & (perceived == 1)).sum())
    type2 = int((mask & (actual == 1) & (perceived == 0)).sum())
    possible1 = int((mask & (actual == 0)).sum())
    possible2 = int((mask & (actual == 1)).sum())
    return ActorErrorProfile(
        actor_id=m,
        type1_count=type1,
        type2_count=type2,
        possible_type1=possible1,
        possible_type2=possible2,
        type1_rate=type1 / possible1 if possible1 else 0.0,
        type2_rate=type2 / possible2 if possible2 else 0.0,
        degenerate_type1=possible1 == 0,
        degenerate_type2=possible2 == 0,
    )


def pearson(x, y) -> float:
    """Pearson product-moment correlation; NaN when either variance is zero."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson expects two 1-d vectors of equal length")
    if x.size < 2:
        return math.nan
    dx = x - x.mean()
    dy = y - y.mean()
    denom = math.sqrt(float((dx * dx).sum()) * float((dy * dy).sum()))
    if denom == 0.0:
        return math.nan
    return float((dx * dy).sum()) / denom


def error_summary(profiles: list[ActorErrorProfile]) -> ErrorSummary:
    """Summary statistics of type 1 / type 2 rates across actors."""
    if not profiles:
        raise ValueError("error_summary needs at least one profile")
    r1 = np.array([p.type1_rate for p in profiles])
    r2 = np.array([p.type2_rate for p in profiles])
    n = len(profiles)
    sd1 = float(np.std(r1, ddof=1)) if n > 1 else math.nan
    sd2 = float(np.std(r2, ddof=1)) if n > 1 else math.nan
    return ErrorSummary(
        n_actors=n,
        mean_type1=float(r1.mean()),
        sd_type1=sd1,
        mean_type2=float(r2.mean()),
        sd_type2=sd2,
        correlation=pearson(r1, r2),
    )


def error_breakdown_table(
    css: CssArray,
    truth: Network | None = None,
    cell_scope: CellScope = CellScope.ALL_OFF_DIAGONAL,
) -> list[ActorErrorProfile]:
    """Per-actor profiles sorted by total error count (ties by actor id).

    Suitable for stacked-bar emission: one bar per actor, the two counts
    stacked.
    """
    if truth is None:
        truth = derive_truth(css)
    profiles = [
        actor_errors(css, truth, m, cell_scope)
        for m in range(1, css.n_actors + 1)
    ]
    profiles.sort(key=lambda p: (p.total, p.actor_id))
    return profiles
