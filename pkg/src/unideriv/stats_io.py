"""Histograms, quantiles, and bit-stable on-disk report formats.

Reports are single CSV files with two comment header lines: a schema line
(version, kind, row count) and a JSON config echo.  Floats are serialized
with 17 significant digits so re-running an experiment with the same config
reproduces byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, ReportParseError, SampleRangeError, SchemaVersionError

SCHEMA_VERSION = 1

# Default binning for rescaled-radius histograms: the visible support of the
# bimodal distribution is [0, 8]; values above go to an overflow count.
RADIAL_EDGES = np.linspace(0.0, 8.0, 81)


@dataclass(frozen=True)
class Histogram:
    """Area-normalized histogram: sum(density_i * width_i) = 1."""

    bin_edges: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float)
        dens = np.asarray(self.densities, dtype=float)
        if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0.0):
            raise DataError("bin edges must be strictly increasing")
        if dens.size != edges.size - 1 or np.any(dens < 0.0):
            raise DataError("need one nonnegative density per bin")
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "densities", dens)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def area(self) -> float:
        return float(np.sum(self.densities * self.widths))

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


def histogram_pdf(samples, bin_edges) -> Histogram:
    """Histogram of `samples` on `bin_edges`, normalized to area 1.

    Every sample must lie in [first edge, last edge); out-of-range samples
    raise SampleRangeError listing the offenders.
    """
    samples = np.asarray(samples, dtype=float)
    edges = np.asarray(bin_edges, dtype=float)
    if samples.size == 0:
        raise DataError("no samples to histogram")
    bad = samples[(samples < edges[0]) | (samples >= edges[-1])]
    if bad.size:
        raise SampleRangeError(
            f"{bad.size} samples outside [{edges[0]}, {edges[-1]})",
            offenders=bad[:20].tolist(),
        )
    counts, _ = np.histogram(samples, bins=edges)
    densities = counts / (samples.size * np.diff(edges))
    return Histogram(bin_edges=edges, densities=densities)


def split_overflow(samples, hi: float):
    """Partition samples into (values < hi, count of values >= hi)."""
    samples = np.asarray(samples, dtype=float)
    keep = samples[samples < hi]
    return keep, int(samples.size - keep.size)


def octiles(samples) -> np.ndarray:
    """The seven empirical quantiles at k/8, k = 1..7 (midpoint convention)."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 8:
        raise DataError(f"octiles need >= 8 samples, got {samples.size}")
    qs = np.arange(1, 8) / 8.0
    return np.quantile(samples, qs, method="midpoint")


def smoothed(densities, window: int = 3) -> np.ndarray:
    """Moving average with edge-shrunk windows (same length as input)."""
    d = np.asarray(densities, dtype=float)
    half = window // 2
    out = np.empty_like(d)
    for i in range(d.size):
        lo, hi = max(0, i - half), min(d.size, i + half + 1)
        out[i] = d[lo:hi].mean()
    return out


def interior_extrema(values):
    """Indices of strict interior local maxima and minima."""
    v = np.asarray(values, dtype=float)
    maxima = [
        i for i in range(1, v.size - 1) if v[i] > v[i - 1] and v[i] > v[i + 1]
    ]
    minima = [
        i for i in range(1, v.size - 1) if v[i] < v[i - 1] and v[i] < v[i + 1]
    ]
    return maxima, minima


# ---------------------------------------------------------------------------
# Report files
# ---------------------------------------------------------------------------

@dataclass
class ReportFile:
    kind: str
    config: dict
    columns: dict
    schema_version: int = SCHEMA_VERSION
    column_order: list = field(default_factory=list)

    def __post_init__(self):
        if not self.column_order:
            self.column_order = list(self.columns.keys())
        lengths = {len(self.columns[c]) for c in self.column_order}
        if len(lengths) > 1:
            raise DataError(f"ragged report columns: {lengths}")

    @property
    def num_rows(self) -> int:
        if not self.column_order:
            return 0
        return len(self.columns[self.column_order[0]])


def format_float(x) -> str:
    return format(float(x), ".17g")


def _format_cell(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format_float(x)


def write_report(r: ReportFile, path) -> None:
    lines = [
        f"# unideriv-report schema_version={r.schema_version} "
        f"kind={r.kind} rows={r.num_rows}",
        "# config=" + json.dumps(r.config, sort_keys=True),
        ",".join(r.column_order),
    ]
    cols = [r.columns[c] for c in r.column_order]
    for row in zip(*cols):
        lines.append(",".join(_format_cell(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_report(path) -> ReportFile:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if len(lines) < 3 or not lines[0].startswith("# unideriv-report "):
        raise ReportParseError(f"{path}: missing report header (line 1)")
    header = dict(
        tok.split("=", 1) for tok in lines[0][len("# unideriv-report "):].split()
    )
    try:
        version = int(header["schema_version"])
        kind = header["kind"]
        rows = int(header["rows"])
    except (KeyError, ValueError) as err:
        raise ReportParseError(f"{path}: bad schema line: {err}") from err
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: schema_version {version} != supported {SCHEMA_VERSION}"
        )
    if not lines[1].startswith("# config="):
        raise ReportParseError(f"{path}: missing config line (line 2)")
    try:
        config = json.loads(lines[1][len("# config="):])
    except json.JSONDecodeError as err:
        raise ReportParseError(f"{path}: bad config JSON: {err}") from err
    names = lines[2].split(",")
    data_lines = lines[3:]
    if len(data_lines) != rows:
        raise ReportParseError(
            f"{path}: truncated payload: expected {rows} rows, found {len(data_lines)}"
        )
    columns = {name: [] for name in names}
    for lineno, line in enumerate(data_lines, start=4):
        cells = line.split(",")
        if len(cells) != len(names):
            raise ReportParseError(
                f"{path}: line {lineno}: expected {len(names)} cells, got {len(cells)}"
            )
        for name, cell in zip(names, cells):
            try:
                value = int(cell) if cell.lstrip("+-").isdigit() else float(cell)
            except ValueError as err:
                raise ReportParseError(
                    f"{path}: line {lineno}, column {name}: {err}"
                ) from err
            columns[name].append(value)
    return ReportFile(
        kind=kind, config=config, columns=columns,
        schema_version=version, column_order=names,
    )


def histogram_report(hist: Histogram, kind: str, config: dict,
                     overflow: int = 0) -> ReportFile:
    cfg = dict(config)
    cfg["overflow"] = overflow
    return ReportFile(
        kind=kind,
        config=cfg,
        columns={
            "left_edge": hist.bin_edges[:-1].tolist(),
            "right_edge": hist.bin_edges[1:].tolist(),
            "density": hist.densities.tolist(),
        },
        column_order=["left_edge", "right_edge", "density"],
    )


def histogram_from_report(r: ReportFile) -> Histogram:
    edges = np.append(np.asarray(r.columns["left_edge"], dtype=float),
                      float(r.columns["right_edge"][-1]))
    return Histogram(bin_edges=edges,
                     densities=np.asarray(r.columns["density"], dtype=float))


def write_summary(summary: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
        fh.write("\n")


def read_summary(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
