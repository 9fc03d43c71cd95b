"""CSV reading/writing with exact float round-trips.

Files are UTF-8, comma-separated, LF line endings, mandatory header row, no
trailing delimiter.  Values are rendered with 17 significant digits, which
reproduces the double bit pattern on parse.
"""

from __future__ import annotations

import numpy as np

from .errors import SchemaError
from .processes import Ensemble, TimeGrid


def fmt(value) -> str:
    """17-significant-digit rendering; empty string for None."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{float(value):.17g}"


def render_csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(header, rows))


def ensemble_to_csv(ensemble: Ensemble) -> str:
    header = ["time"] + [f"inst_{i}" for i in range(ensemble.num_instances)]
    times = ensemble.grid.times
    values = ensemble.values
    rows = ([times[k], *values[:, k]] for k in range(times.size))
    return render_csv(header, rows)


def parse_ensemble_csv(text: str, source: str = "<input>") -> Ensemble:
    """Parse the `time,inst_0,...` schema back into an Ensemble.

    The returned ensemble carries no spec/seed provenance.
    """
    lines = text.splitlines()
    if not lines:
        raise SchemaError(f"{source}: empty file")
    header = lines[0].split(",")
    if header[0] != "time" or len(header) < 2:
        raise SchemaError(
            f"{source}: expected header 'time,inst_0,...', got {lines[0]!r}")
    for i, name in enumerate(header[1:]):
        if name != f"inst_{i}":
            raise SchemaError(f"{source}: unexpected column {name!r} at position {i + 1}")
    n_cols = len(header)
    times = []
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != n_cols:
            raise SchemaError(
                f"{source}:{lineno}: expected {n_cols} columns, got {len(cells)}")
        try:
            parsed = [float(c) for c in cells]
        except ValueError as exc:
            raise SchemaError(f"{source}:{lineno}: {exc}") from None
        times.append(parsed[0])
        rows.append(parsed[1:])
    if len(times) < 2:
        raise SchemaError(f"{source}: need at least 2 grid rows")
    times = np.asarray(times)
    dts = np.diff(times)
    dt = float(dts[0])
    if dt <= 0.0 or np.any(np.abs(dts - dt) > 1e-9 * max(1.0, abs(dt))):
        raise SchemaError(f"{source}: time column is not a uniform grid")
    if abs(times[0]) > 1e-12:
        raise SchemaError(f"{source}: time grid must start at 0, got {times[0]}")
    grid = TimeGrid(dt=dt, n_steps=len(times) - 1)
    values = np.asarray(rows, dtype=np.float64).T
    return Ensemble(grid=grid, values=values, spec=None, seed=None)


def read_ensemble_csv(path) -> Ensemble:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ensemble_csv(fh.read(), source=str(path))
