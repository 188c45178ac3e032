"""Core CSS data model: perception arrays, truth derivation, regions, sampling.

A cognitive social structure (CSS) records, for every perceiver m, a full
binary perception matrix over all ordered dyads (i, j) of an N-actor network.
The true network is derived by the locally-aggregated-structures intersection
rule: the tie i -> j exists iff i claims to send it and j claims to receive it.

Actor ids are 1-based in every public field and argument (matching survey
rosters and file formats); numpy internals are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "DiagonalPolicy",
    "CssArray",
    "Network",
    "SampleDesign",
    "RegionPartition",
    "derive_truth",
    "slice_density",
    "average_sample_density",
    "partition_regions",
    "third_party_counts",
    "draw_sample",
]


class DiagonalPolicy(str, Enum):
    """Whether sampled (i, i) cells count toward knowledge-region denominators."""

    INCLUDE_STRUCTURAL_ZEROS = "include_structural_zeros"
    EXCLUDE = "exclude"


def _as_binary_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0/1 values")
    return arr.astype(np.uint8)


@dataclass
class CssArray:
    """Three-dimensional perception array ``cells[i, j, m]``.

    ``i`` is the sender, ``j`` the receiver and ``m`` the perceiver, all
    0-based on the numpy array itself.  Slice m (``cells[:, :, m]``) is
    perceiver m+1's full perception matrix.

    Diagonal cells are structural zeros for every perceiver and are enforced
    at construction.
    """

    n_actors: int
    relation_name: str
    cells: np.ndarray
    actor_labels: list[str] | None = None

    def __post_init__(self):
        n = self.n_actors
        if n < 1:
            raise ValueError("n_actors must be positive")
        self.cells = _as_binary_array(self.cells, "cells")
        if self.cells.shape != (n, n, n):
            raise ValueError(
                f"cells must have shape ({n}, {n}, {n}), got {self.cells.shape}"
            )
        diag = self.cells[np.arange(n), np.arange(n), :]
        if diag.any():
            i = int(np.argwhere(diag)[0][0])
            m = int(np.argwhere(diag)[0][1])
            raise ValueError(
                f"nonzero diagonal: cell ({i + 1}, {i + 1}) in slice of perceiver {m + 1}"
            )
        if self.actor_labels is not None and len(self.actor_labels) != n:
            raise ValueError(
                f"expected {n} actor labels, got {len(self.actor_labels)}"
            )

    def slice(self, m: int) -> np.ndarray:
        """Perceiver m's (1-based) N x N perception matrix."""
        self._check_actor(m)
        return self.cells[:, :, m - 1]

    def _check_actor(self, m: int) -> None:
        if not 1 <= m <= self.n_actors:
            raise ValueError(f"actor id {m} out of range 1..{self.n_actors}")


@dataclass
class Network:
    """Directed binary adjacency matrix with a structural-zero diagonal."""

    n_actors: int
    adjacency: np.ndarray
    origin: str = "estimate"  # truth | estimate | slice

    _ORIGINS = ("truth", "estimate", "slice")

    def __post_init__(self):
        n = self.n_actors
        self.adjacency = _as_binary_array(self.adjacency, "adjacency")
        if self.adjacency.shape != (n, n):
            raise ValueError(f"adjacency must be {n} x {n}")
        if np.diagonal(self.adjacency).any():
            raise ValueError("adjacency diagonal must be zero")
        if self.origin not in self._ORIGINS:
            raise ValueError(f"origin must be one of {self._ORIGINS}")

    def tie_count(self) -> int:
        return int(self.adjacency.sum())

    def density(self) -> float:
        n = self.n_actors
        if n < 2:
            return 0.0
        return self.tie_count() / (n * (n - 1))


@dataclass(frozen=True)
class SampleDesign:
    """An ordered set of sampled actor ids (1-based) plus RNG provenance.

    ``seed`` is the integer that reproduces the draw, or ``"manual"`` for
    hand-picked samples.
    """

    actor_ids: tuple[int, ...]
    seed: int | str = "manual"

    def __post_init__(self):
        ids = tuple(int(a) for a in self.actor_ids)
        object.__setattr__(self, "actor_ids", ids)
        if len(set(ids)) != len(ids):
            raise ValueError("sampled actor ids must be distinct")
        if any(a < 1 for a in ids):
            raise ValueError("actor ids are 1-based and must be >= 1")

    @property
    def n(self) -> int:
        return len(self.actor_ids)

    def indices0(self) -> np.ndarray:
        """Sampled ids as a 0-based index array."""
        return np.asarray(self.actor_ids, dtype=np.intp) - 1

    def validate_for(self, n_actors: int) -> None:
        if self.n < 1:
            raise ValueError("sample must contain at least one actor")
        if any(a > n_actors for a in self.actor_ids):
            bad = [a for a in self.actor_ids if a > n_actors]
            raise ValueError(f"actor ids {bad} out of range 1..{n_actors}")


@dataclass(frozen=True)
class RegionPartition:
    """Knowledge / perception cell partition induced by a sample.

    Cells are 1-based (i, j) pairs.  Knowledge cells have both endpoints
    sampled (the diagonal among them per ``diagonal_policy``); perception
    cells are all remaining off-diagonal cells.
    """

    knowledge_cells: frozenset[tuple[int, int]]
    perception_cells: frozenset[tuple[int, int]]
    diagonal_policy: DiagonalPolicy


def derive_truth(css: CssArray) -> Network:
    """Derive the true network by the intersection rule.

    ``truth[i, j] = 1`` iff sender i reports the tie in their own slice and
    receiver j confirms it in theirs.
    """
    n = css.n_actors
    idx = np.arange(n)
    sender_report = css.cells[idx[:, None], idx[None, :], idx[:, None]]
    receiver_report = css.cells[idx[:, None], idx[None, :], idx[None, :]]
    truth = (sender_report & receiver_report).astype(np.uint8)
    return Network(n_actors=n, adjacency=truth, origin="truth")


def slice_density(css: CssArray, m: int) -> float:
    """Density of perceiver m's slice over the N(N-1) off-diagonal cells."""
    n = css.n_actors
    if n < 2:
        return 0.0
    # Diagonal cells are structural zeros, so summing the whole slice is safe.
    return float(css.slice(m).sum()) / (n * (n - 1))


def average_sample_density(css: CssArray, sample: SampleDesign) -> float:
    """Arithmetic mean of slice densities over the sampled perceivers."""
    sample.validate_for(css.n_actors)
    return float(np.mean([slice_density(css, m) for m in sample.actor_ids]))


def partition_regions(
    n_actors: int,
    sample: SampleDesign,
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS,
) -> RegionPartition:
    """Split the N x N cells into knowledge and perception regions."""
    sample.validate_for(n_actors)
    diagonal_policy = DiagonalPolicy(diagonal_policy)
    sampled = set(sample.actor_ids)
    knowledge = set()
    perception = set()
    for i in range(1, n_actors + 1):
        for j in range(1, n_actors + 1):
            if i in sampled and j in sampled:
                if i == j and diagonal_policy is DiagonalPolicy.EXCLUDE:
                    continue
                knowledge.add((i, j))
            elif i != j:
                perception.add((i, j))
    return RegionPartition(
        knowledge_cells=frozenset(knowledge),
        perception_cells=frozenset(perception),
        diagonal_policy=diagonal_policy,
    )


def third_party_counts(css: CssArray, sample: SampleDesign) -> np.ndarray:
    """Per-cell count of sampled perceivers reporting the tie, endpoints excluded.

    For cell (i, j) the count is ``|{m sampled : cells[i, j, m] = 1, m != i,
    m != j}|``.  Returned as an N x N integer array (0-based cell indexing).
    """
    sample.validate_for(css.n_actors)
    n = css.n_actors
    idx = np.arange(n)
    s0 = sample.indices0()
    in_sample = np.zeros(n, dtype=bool)
    in_sample[s0] = True
    total = css.cells[:, :, s0].sum(axis=2).astype(np.int64)
    sender_report = css.cells[idx[:, None], idx[None, :], idx[:, None]].astype(np.int64)
    receiver_report = css.cells[idx[:, None], idx[None, :], idx[None, :]].astype(np.int64)
    # Remove the endpoints' own slices where those endpoints were sampled.
    # On the diagonal both corrections read the same structurally-zero cell.
    total -= np.where(in_sample[:, None], sender_report, 0)
    total -= np.where(in_sample[None, :], receiver_report, 0)
    return total


def draw_sample(n_actors: int, n: int, seed: int) -> SampleDesign:
    """Simple random sample of ``n`` distinct actors, uniform over n-subsets.

    Identical (seed, n_actors, n) always reproduces the identical subset.
    """
    if not 1 <= n <= n_actors:
        raise ValueError(f"sample size {n} out of range 1..{n_actors}")
    rng = np.random.default_rng(seed)
    ids0 = rng.choice(n_actors, size=n, replace=False)
    ids = tuple(sorted(int(a) + 1 for a in ids0))
    return SampleDesign(actor_ids=ids, seed=int(seed))
