"""Deterministic Monte Carlo harness: estimation quality versus sample size.

For every (sample size, replication) pair a sample is drawn with a seed mixed
from the experiment's base seed, every configured method is evaluated on that
same sample (paired design), and the similarity of each estimate to the true
network is recorded.  Results are bit-identical for identical configurations
regardless of the worker count.

Seed mixing: ``seed(n, r) = SeedSequence(base_seed, spawn_key=(n, r))``,
recorded as the first 64-bit word of its generated state.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimate import (
    ftm,
    roc_table,
    s14,
    select_atm_threshold,
    select_rtm_threshold,
)
from .model import CssArray, DiagonalPolicy, Network, derive_truth, draw_sample

__all__ = [
    "MethodSpec",
    "ExperimentConfig",
    "ExperimentRow",
    "ExperimentResult",
    "SummaryRow",
    "QUANTILE_METHOD",
    "derive_seed",
    "run_experiment",
    "summarize",
]

# numpy's default quantile rule: linear interpolation between order
# statistics (Hyndman-Fan type 7); recorded in output metadata.
QUANTILE_METHOD = "linear interpolation between order statistics (type 7)"


@dataclass(frozen=True)
class MethodSpec:
    """One estimator configuration: ftm needs k, atm needs alpha, rtm may fix w."""

    kind: str  # ftm | atm | rtm
    k: int | None = None
    alpha: float | None = None
    w: float | None = None  # None = derive 1 / d_bar per sample

    def __post_init__(self):
        if self.kind not in ("ftm", "atm", "rtm"):
            raise ValueError(f"unknown method kind {self.kind!r}")
        if self.kind == "ftm" and (self.k is None or self.k < 0):
            raise ValueError("ftm requires a threshold k >= 0")
        if self.kind == "atm" and (self.alpha is None or not 0 < self.alpha <= 1):
            raise ValueError("atm requires alpha in (0, 1]")
        if self.kind == "rtm" and self.w is not None and not self.w > 0:
            raise ValueError("rtm weight must be positive")

    @property
    def param_text(self) -> str:
        """Canonical parameter string for result rows and grouping."""
        if self.kind == "ftm":
            return f"k={self.k}"
        if self.kind == "atm":
            return f"alpha={self.alpha:g}"
        return f"w={self.w:g}" if self.w is not None else "w=auto"

    @property
    def label(self) -> str:
        if self.kind == "ftm":
            return f"ftm:{self.k}"
        if self.kind == "atm":
            return f"atm:{self.alpha:g}"
        if self.w is not None:
            return f"rtm:w={self.w:g}"
        return "rtm"

    @classmethod
    def parse(cls, token: str) -> "MethodSpec":
        """Parse ``rtm``, ``rtm:w=W``, ``atm:ALPHA`` or ``ftm:K``."""
        name, _, param = token.strip().partition(":")
        name = name.lower()
        if name == "rtm":
            if not param:
                return cls("rtm")
            param = param.removeprefix("w=")
            return cls("rtm", w=float(param))
        if name == "atm":
            if not param:
                raise ValueError("atm requires a tolerable rate, e.g. atm:0.05")
            return cls("atm", alpha=float(param))
        if name == "ftm":
            if not param:
                raise ValueError("ftm requires a threshold, e.g. ftm:3")
            return cls("ftm", k=int(param))
        raise ValueError(f"unknown method {token!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_id: str
    methods: tuple[MethodSpec, ...]
    sizes: tuple[int, ...]
    replications: int = 1000
    base_seed: int = 0
    diagonal_policy: DiagonalPolicy = DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS
    worker_count: int = 1

    def __post_init__(self):
        if not self.methods:
            raise ValueError("at least one method is required")
        if not self.sizes:
            raise ValueError("at least one sample size is required")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.base_seed < 0:
            raise ValueError("base_seed must be a non-negative integer")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        labels = [m.label for m in self.methods]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate methods in {labels}")


@dataclass(frozen=True)
class ExperimentRow:
    dataset: str
    method: str  # ftm | atm | rtm
    params: str  # e.g. "alpha=0.05", "k=3", "w=auto"
    n: int
    replication: int
    seed_used: int
    k_star: int
    s14: float  # NaN when degenerate
    degenerate: bool


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[ExperimentRow]
    quantile_method: str = QUANTILE_METHOD


@dataclass(frozen=True)
class SummaryRow:
    """Boxplot-ready quantiles per (method, params, n); NaN rows excluded."""

    method: str
    params: str
    n: int
    count: int
    degenerate_count: int
    min: float
    q25: float
    median: float
    q75: float
    max: float
    mean: float


def derive_seed(base_seed: int, n: int, replication: int) -> int:
    """Fixed mixing function giving each (n, replication) its own stream."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(n, replication))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _run_cell(args) -> list[ExperimentRow]:
    """All methods on the one sample belonging to (n, replication)."""
    css, truth, cfg, n, replication = args
    seed_used = derive_seed(cfg.base_seed, n, replication)
    sample = draw_sample(css.n_actors, n, seed_used)
    table = roc_table(css, sample, w=1.0, diagonal_policy=cfg.diagonal_policy)
    rows = []
    estimates: dict[int, Network] = {}
    for spec in cfg.methods:
        degenerate = False
        if spec.kind == "ftm":
            k_star = spec.k
        elif spec.kind == "atm":
            k_star = select_atm_threshold(table, spec.alpha)
        else:
            w = spec.w if spec.w is not None else (
                1.0 / table.d_bar if table.d_bar > 0.0 else None
            )
            if w is None:  # all sampled slices empty, no usable weight
                k_star = 1
                degenerate = True
            else:
                k_star = select_rtm_threshold(table, w)
        if k_star not in estimates:
            estimates[k_star] = ftm(css, sample, k_star)
        value = s14(truth, estimates[k_star])
        degenerate = degenerate or math.isnan(value)
        rows.append(
            ExperimentRow(
                dataset=cfg.dataset_id,
                method=spec.kind,
                params=spec.param_text,
                n=n,
                replication=replication,
                seed_used=seed_used,
                k_star=k_star,
                s14=value,
                degenerate=degenerate,
            )
        )
    return rows


def run_experiment(css: CssArray, cfg: ExperimentConfig) -> ExperimentResult:
    """Run the full grid; rows come back sorted by (method, n, replication)."""
    for n in cfg.sizes:
        if not 4 <= n <= css.n_actors:
            raise ValueError(
                f"sample size {n} out of range 4..{css.n_actors} for this dataset"
            )
    truth = derive_truth(css)
    cells = [
        (css, truth, cfg, n, r)
        for n in cfg.sizes
        for r in range(cfg.replications)
    ]
    if cfg.worker_count > 1:
        chunk = max(1, len(cells) // (cfg.worker_count * 8))
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            per_cell = list(pool.map(_run_cell, cells, chunksize=chunk))
    else:
        per_cell = [_run_cell(c) for c in cells]
    rows = [row for batch in per_cell for row in batch]
    rows.sort(key=lambda r: (r.method, r.params, r.n, r.replication))
    return ExperimentResult(config=cfg, rows=rows)


def summarize(result: ExperimentResult) -> list[SummaryRow]:
    """Quantile table per (method, params, n) for boxplot emission."""
    if not result.rows:
        raise ValueError("cannot summarize an empty result")
    groups: dict[tuple[str, str, int], list[ExperimentRow]] = {}
    for row in result.rows:
        groups.setdefault((row.method, row.params, row.n), []).append(row)
    out = []
    for (method, params, n) in sorted(groups):
        rows = groups[(method, params, n)]
        values = [r.s14 for r in rows if not math.isnan(r.s14)]
        n_degenerate = sum(1 for r in rows if r.degenerate)
        if values:
            qs = np.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0])
            stats = [float(q) for q in qs] + [float(np.mean(values))]
        else:
            stats = [math.nan] * 6
        out.append(
            SummaryRow(
                method=method,
                params=params,
                n=n,
                count=len(values),
                degenerate_count=n_degenerate,
                min=stats[0],
                q25=stats[1],
                median=stats[2],
                q75=stats[3],
                max=stats[4],
                mean=stats[5],
            )
        )
    return out
