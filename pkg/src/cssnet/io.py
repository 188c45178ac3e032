"""CSS file formats, network/ROC/result CSV emission, report JSON.

Two on-disk representations of a CSS array are supported and round-trip
bit-exactly:

* single text file (canonical extension ``.css``)::

      css n=<N> relation=<name>
      labels=<label1>,...,<labelN>     (optional)
      perceiver 1
      <N rows of N space-separated 0/1 values>
      ...
      perceiver N
      ...

  Blank lines and lines starting with ``#`` are ignored.  Row i, column j of
  perceiver m's block is m's perception of the tie i -> j.  Diagonal values
  must be 0.

* slice directory: ``slice_<m>.csv`` (N x N comma-separated 0/1, no header)
  for m = 1..N, plus ``manifest.json`` with keys ``n_actors``, ``relation``
  and ``labels`` (null when absent).

UCINET DL files (FORMAT FULLMATRIX, one stacked matrix per perceiver, the
form classic CSS collections circulate in) are additionally supported
read-only, so ``cssnet convert`` can pull survey data straight into the
native formats.

Actor ids are 1-based everywhere on disk.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

import numpy as np

from .errors import ActorErrorProfile, ErrorSummary
from .estimate import EstimateReport, RocTable
from .model import CssArray
from .simulate import ExperimentResult, SummaryRow

__all__ = [
    "CssFormatError",
    "parse_css",
    "parse_css_text",
    "parse_slice_dir",
    "parse_dl_text",
    "write_css",
    "write_css_text",
    "write_slice_dir",
    "matrix_csv",
    "roc_csv",
    "actor_table_csv",
    "summary_csv",
    "long_csv",
    "experiment_summary_csv",
    "estimate_report_json",
    "write_file_atomic",
]


class CssFormatError(ValueError):
    """Malformed CSS input, carrying file and line diagnostics."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = str(path) if path is not None else "<input>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")


def _fmt(value: float, digits: int | None = None) -> str:
    """Full-precision float text, or fixed display rounding when asked."""
    if isinstance(value, float) and math.isnan(value):
        return ""
    if digits is not None:
        return f"{value:.{digits}f}"
    return repr(float(value))


# ---------------------------------------------------------------------------
# CSS text format


def parse_css_text(text: str, path=None) -> CssArray:
    """Parse the single-file CSS text format with line diagnostics."""
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise CssFormatError("empty file", path)
    pos = 0

    number, header = lines[pos]
    pos += 1
    if not header.startswith("css "):
        raise CssFormatError("expected header 'css n=<N> relation=<name>'", path, number)
    fields = header[4:].strip()
    if not fields.startswith("n="):
        raise CssFormatError("header is missing 'n=<N>'", path, number)
    n_part, _, rel_part = fields[2:].partition(" ")
    try:
        n = int(n_part)
    except ValueError:
        raise CssFormatError(f"bad actor count {n_part!r}", path, number) from None
    if n < 1:
        raise CssFormatError(f"actor count must be positive, got {n}", path, number)
    rel_part = rel_part.strip()
    if not rel_part.startswith("relation="):
        raise CssFormatError("header is missing 'relation=<name>'", path, number)
    relation = rel_part[len("relation="):].strip()
    if not relation:
        raise CssFormatError("relation name must not be empty", path, number)

    labels = None
    if pos < len(lines) and lines[pos][1].startswith("labels="):
        number, line = lines[pos]
        pos += 1
        labels = [part.strip() for part in line[len("labels="):].split(",")]
        if len(labels) != n:
            raise CssFormatError(
                f"expected {n} labels, got {len(labels)}", path, number
            )
        if any(not lab for lab in labels):
            raise CssFormatError("empty label", path, number)

    cells = np.zeros((n, n, n), dtype=np.uint8)
    for m in range(1, n + 1):
        if pos >= len(lines):
            raise CssFormatError(f"missing block 'perceiver {m}'", path)
        number, line = lines[pos]
        pos += 1
        if line != f"perceiver {m}":
            raise CssFormatError(
                f"expected 'perceiver {m}', got {line!r} (blocks must appear in order)",
                path,
                number,
            )
        for i in range(1, n + 1):
            if pos >= len(lines):
                raise CssFormatError(
                    f"perceiver {m}: missing row {i}", path
                )
            number, line = lines[pos]
            pos += 1
            tokens = line.split()
            if len(tokens) != n:
                raise CssFormatError(
                    f"perceiver {m}, row {i}: expected {n} values, got {len(tokens)}",
                    path,
                    number,
                )
            for j, token in enumerate(tokens, start=1):
                if token not in ("0", "1"):
                    raise CssFormatError(
                        f"perceiver {m}, row {i}, column {j}: "
                        f"non-binary value {token!r}",
                        path,
                        number,
                    )
                if token == "1" and i == j:
                    raise CssFormatError(
                        f"perceiver {m}: nonzero diagonal at ({i}, {j})",
                        path,
                        number,
                    )
                cells[i - 1, j - 1, m - 1] = int(token)
    if pos < len(lines):
        number, line = lines[pos]
        raise CssFormatError(f"unexpected content {line!r} after last block", path, number)
    return CssArray(n_actors=n, relation_name=relation, cells=cells, actor_labels=labels)


def write_css_text(css: CssArray) -> str:
    out = [f"css n={css.n_actors} relation={css.relation_name}"]
    if css.actor_labels is not None:
        out.append("labels=" + ",".join(css.actor_labels))
    for m in range(1, css.n_actors + 1):
        out.append(f"perceiver {m}")
        for row in css.slice(m):
            out.append(" ".join(str(int(v)) for v in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Slice directory format


def parse_slice_dir(path) -> CssArray:
    path = Path(path)
    manifest_path = path / "manifest.json"
    if not manifest_path.is_file():
        raise CssFormatError("missing manifest.json", path)
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise CssFormatError(f"bad manifest.json: {exc}", manifest_path) from None
    for key in ("n_actors", "relation"):
        if key not in manifest:
            raise CssFormatError(f"manifest.json is missing {key!r}", manifest_path)
    n = manifest["n_actors"]
    if not isinstance(n, int) or n < 1:
        raise CssFormatError(f"bad n_actors {n!r}", manifest_path)
    labels = manifest.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or len(labels) != n
    ):
        raise CssFormatError(f"labels must be a list of {n} strings", manifest_path)

    cells = np.zeros((n, n, n), dtype=np.uint8)
    for m in range(1, n + 1):
        slice_path = path / f"slice_{m}.csv"
        if not slice_path.is_file():
            raise CssFormatError(f"missing slice_{m}.csv", path)
        rows = [
            (number, line.strip())
            for number, line in enumerate(
                slice_path.read_text().splitlines(), start=1
            )
            if line.strip()
        ]
        if len(rows) != n:
            raise CssFormatError(
                f"expected {n} rows, got {len(rows)} (manifest says N={n})",
                slice_path,
            )
        for i, (number, line) in enumerate(rows, start=1):
            tokens = [tok.strip() for tok in line.split(",")]
            if len(tokens) != n:
                raise CssFormatError(
                    f"row {i}: expected {n} values, got {len(tokens)}",
                    slice_path,
                    number,
                )
            for j, token in enumerate(tokens, start=1):
                if token not in ("0", "1"):
                    raise CssFormatError(
                        f"row {i}, column {j}: non-binary value {token!r}",
                        slice_path,
                        number,
                    )
                if token == "1" and i == j:
                    raise CssFormatError(
                        f"nonzero diagonal at ({i}, {j})", slice_path, number
                    )
                cells[i - 1, j - 1, m - 1] = int(token)
    return CssArray(
        n_actors=n,
        relation_name=manifest["relation"],
        cells=cells,
        actor_labels=list(labels) if labels is not None else None,
    )


def write_slice_dir(css: CssArray, path) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    manifest = {
        "n_actors": css.n_actors,
        "relation": css.relation_name,
        "labels": css.actor_labels,
    }
    write_file_atomic(path / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    for m in range(1, css.n_actors + 1):
        body = "\n".join(
            ",".join(str(int(v)) for v in row) for row in css.slice(m)
        )
        write_file_atomic(path / f"slice_{m}.csv", body + "\n")


# ---------------------------------------------------------------------------
# UCINET DL import (read-only convenience for classic survey files)


def parse_dl_text(
    text: str,
    path=None,
    relation_name: str | None = None,
    force_zero_diagonal: bool = False,
) -> CssArray:
    """Parse a UCINET DL full-matrix file with one stacked matrix per perceiver.

    Supports the common header shape ``DL N=<N> NM=<N>`` with
    ``FORMAT = FULLMATRIX DIAGONAL PRESENT``; label sections are skipped
    (row labels are kept when exactly N of them parse cleanly).  Values must
    be binary; nonzero diagonals are an error unless ``force_zero_diagonal``.
    """
    import re

    lines = text.splitlines()
    data_at = None
    for idx, line in enumerate(lines):
        if line.strip().upper().startswith("DATA"):
            data_at = idx
            break
    if data_at is None:
        raise CssFormatError("no DATA: section found in DL file", path)
    header = "\n".join(lines[: data_at])
    upper = header.upper()
    if not upper.lstrip().startswith("DL"):
        raise CssFormatError("not a DL file (missing leading 'DL')", path, 1)

    def _field(name: str) -> int | None:
        match = re.search(rf"\b{name}\s*=\s*(\d+)", upper)
        return int(match.group(1)) if match else None

    n = _field("N")
    if n is None:
        n = _field("NR")
        nc = _field("NC")
        if n is None or nc != n:
            raise CssFormatError("DL header must declare N=<actors>", path)
    nm = _field("NM") or 1
    fmt = re.search(r"FORMAT\s*=?\s*([A-Z]+)", upper)
    if fmt and fmt.group(1) != "FULLMATRIX":
        raise CssFormatError(
            f"unsupported DL format {fmt.group(1)} (only FULLMATRIX)", path
        )
    if "DIAGONAL" in upper and "ABSENT" in upper:
        raise CssFormatError("DIAGONAL ABSENT DL files are not supported", path)
    if nm != n:
        raise CssFormatError(
            f"DL file has NM={nm} stacked matrices for N={n} actors; "
            "a CSS needs exactly one perception slice per actor",
            path,
        )

    labels = None
    label_match = re.search(
        r"^\s*(?:ROW\s+)?LABELS:\s*$(.*?)(?=^\s*[A-Z][A-Z ]*[:=]|\Z)",
        header,
        re.MULTILINE | re.DOTALL | re.IGNORECASE,
    )
    if label_match:
        raw = re.split(r"[,\n]", label_match.group(1))
        cleaned = [tok.strip().strip('"').strip() for tok in raw]
        cleaned = [tok for tok in cleaned if tok]
        if len(cleaned) == n:
            labels = cleaned

    tokens = "\n".join(lines[data_at + 1 :]).split()
    expected = n * n * nm
    if len(tokens) != expected:
        raise CssFormatError(
            f"expected {expected} data values ({nm} matrices of {n}x{n}), "
            f"got {len(tokens)}",
            path,
        )
    values = np.empty(expected, dtype=np.uint8)
    for pos, token in enumerate(tokens):
        try:
            value = float(token)
        except ValueError:
            raise CssFormatError(f"non-numeric value {token!r} in DATA", path) from None
        if value not in (0.0, 1.0):
            raise CssFormatError(f"non-binary value {token!r} in DATA", path)
        values[pos] = int(value)
    stacked = values.reshape(nm, n, n)  # slice-major: matrix m is perceiver m+1
    cells = np.transpose(stacked, (1, 2, 0))
    diag = cells[np.arange(n), np.arange(n), :]
    if diag.any():
        if force_zero_diagonal:
            cells[np.arange(n), np.arange(n), :] = 0
        else:
            i, m = (int(v) for v in np.argwhere(diag)[0])
            raise CssFormatError(
                f"nonzero diagonal at ({i + 1}, {i + 1}) in matrix {m + 1} "
                "(pass --force-zero-diagonal to coerce)",
                path,
            )
    if relation_name is None:
        relation_name = Path(path).stem if path is not None else "relation"
    return CssArray(
        n_actors=n, relation_name=relation_name, cells=cells, actor_labels=labels
    )


# ---------------------------------------------------------------------------
# Auto-detecting entry points


def parse_css(path, force_zero_diagonal: bool = False) -> CssArray:
    """Load a CSS array from a text file, a slice directory, or a DL file."""
    path = Path(path)
    if path.is_dir():
        return parse_slice_dir(path)
    if not path.is_file():
        raise CssFormatError("no such file or directory", path)
    text = path.read_text()
    if text.lstrip()[:2].upper() == "DL":
        return parse_dl_text(text, path, force_zero_diagonal=force_zero_diagonal)
    return parse_css_text(text, path)


def write_css(css: CssArray, path, fmt: str | None = None) -> None:
    """Write a CSS array; ``fmt`` is 'css', 'dir' or None for auto-detect.

    Auto-detection writes a slice directory when the target exists as a
    directory or the name has no suffix; otherwise the text format.
    """
    path = Path(path)
    if fmt is None:
        fmt = "dir" if (path.is_dir() or path.suffix == "") else "css"
    if fmt == "css":
        write_file_atomic(path, write_css_text(css))
    elif fmt == "dir":
        write_slice_dir(css, path)
    else:
        raise ValueError(f"unknown format {fmt!r} (expected 'css' or 'dir')")


# ---------------------------------------------------------------------------
# CSV / JSON emission


def matrix_csv(matrix: np.ndarray) -> str:
    """Adjacency (or any integer matrix) as headerless comma-separated rows."""
    return "\n".join(",".join(str(int(v)) for v in row) for row in matrix) + "\n"


def roc_csv(table: RocTable, digits: int | None = None) -> str:
    lines = ["k,tpr,fpr,type1_count,type2_count,delta,delta_w"]
    for row in table.rows:
        lines.append(
            ",".join(
                [
                    str(row.k),
                    _fmt(row.tpr, digits),
                    _fmt(row.alpha_hat, digits),
                    str(row.type1_count),
                    str(row.type2_count),
                    _fmt(row.delta, digits),
                    _fmt(row.delta_w, digits),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def actor_table_csv(profiles: list[ActorErrorProfile], digits: int | None = None) -> str:
    lines = [
        "actor_id,type1_count,possible_type1,type1_rate,"
        "type2_count,possible_type2,type2_rate,total"
    ]
    for p in profiles:
        lines.append(
            ",".join(
                [
                    str(p.actor_id),
                    str(p.type1_count),
                    str(p.possible_type1),
                    _fmt(p.type1_rate, digits),
                    str(p.type2_count),
                    str(p.possible_type2),
                    _fmt(p.type2_rate, digits),
                    str(p.total),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def summary_csv(summary: ErrorSummary, digits: int | None = None) -> str:
    header = "n_actors,mean_type1,sd_type1,mean_type2,sd_type2,correlation"
    row = ",".join(
        [
            str(summary.n_actors),
            _fmt(summary.mean_type1, digits),
            _fmt(summary.sd_type1, digits),
            _fmt(summary.mean_type2, digits),
            _fmt(summary.sd_type2, digits),
            _fmt(summary.correlation, digits),
        ]
    )
    return header + "\n" + row + "\n"


def long_csv(result: ExperimentResult) -> str:
    lines = ["dataset,method,params,n,replication,seed_used,k_star,s14,degenerate"]
    for r in result.rows:
        lines.append(
            ",".join(
                [
                    r.dataset,
                    r.method,
                    r.params,
                    str(r.n),
                    str(r.replication),
                    str(r.seed_used),
                    str(r.k_star),
                    _fmt(r.s14),
                    "1" if r.degenerate else "0",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def experiment_summary_csv(rows: list[SummaryRow]) -> str:
    lines = ["method,params,n,count,degenerate_count,min,q25,median,q75,max,mean"]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.method,
                    r.params,
                    str(r.n),
                    str(r.count),
                    str(r.degenerate_count),
                    _fmt(r.min),
                    _fmt(r.q25),
                    _fmt(r.median),
                    _fmt(r.q75),
                    _fmt(r.max),
                    _fmt(r.mean),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def estimate_report_json(report: EstimateReport) -> str:
    """JSON report: chosen threshold, parameters and calibration counts."""
    payload = {
        "method": report.method,
        "k_star": report.k_star,
        "params": report.params,
        "sample": list(report.sample.actor_ids),
        "seed": report.sample.seed,
        "degenerate": report.degenerate,
        "n_actors": report.network.n_actors,
        "estimate_tie_count": report.network.tie_count(),
    }
    if report.roc is not None:
        at_k = report.roc.row(report.k_star)
        payload["knowledge_region"] = {
            "type1_count": at_k.type1_count,
            "possible_type1": at_k.possible_type1,
            "type2_count": at_k.type2_count,
            "possible_type2": at_k.possible_type2,
            "alpha_hat": at_k.alpha_hat,
            "beta_hat": at_k.beta_hat,
        }
        payload["d_bar"] = report.roc.d_bar
        payload["diagonal_policy"] = report.roc.diagonal_policy.value
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_file_atomic(path, text: str) -> None:
    """Write via a temp file and rename, so no partial file is left behind."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
