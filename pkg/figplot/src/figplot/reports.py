"""Reader for unideriv report files.

figplot deliberately ships its own parser rather than importing from the
producing package: the CSV/JSON files are the interface.  The format is a
plain CSV with two comment header lines, a schema line and a JSON config
echo, followed by the column-name row and the payload.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

SCHEMA_VERSION = 1


class FigplotError(Exception):
    """Any input problem: missing file, bad header, truncated payload."""


@dataclass
class Report:
    kind: str
    config: dict
    columns: dict
    column_order: list

    @property
    def num_rows(self) -> int:
        if not self.column_order:
            return 0
        return len(self.columns[self.column_order[0]])


def read_report(path) -> Report:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as err:
        raise FigplotError(f"cannot read {path}: {err}") from err
    if len(lines) < 3 or not lines[0].startswith("# unideriv-report "):
        raise FigplotError(f"{path}: not a unideriv report file")
    header = dict(
        tok.split("=", 1) for tok in lines[0][len("# unideriv-report "):].split()
    )
    try:
        version = int(header["schema_version"])
        kind = header["kind"]
        rows = int(header["rows"])
    except (KeyError, ValueError) as err:
        raise FigplotError(f"{path}: bad schema line: {err}") from err
    if version != SCHEMA_VERSION:
        raise FigplotError(
            f"{path}: schema_version {version} != supported {SCHEMA_VERSION}"
        )
    if not lines[1].startswith("# config="):
        raise FigplotError(f"{path}: missing config line")
    try:
        config = json.loads(lines[1][len("# config="):])
    except json.JSONDecodeError as err:
        raise FigplotError(f"{path}: bad config JSON: {err}") from err
    names = lines[2].split(",")
    data_lines = lines[3:]
    if len(data_lines) != rows:
        raise FigplotError(
            f"{path}: truncated: expected {rows} rows, found {len(data_lines)}"
        )
    columns = {name: [] for name in names}
    for lineno, line in enumerate(data_lines, start=4):
        cells = line.split(",")
        if len(cells) != len(names):
            raise FigplotError(
                f"{path}: line {lineno}: expected {len(names)} cells"
            )
        for name, cell in zip(names, cells):
            try:
                value = int(cell) if cell.lstrip("+-").isdigit() else float(cell)
            except ValueError as err:
                raise FigplotError(
                    f"{path}: line {lineno}, column {name}: {err}"
                ) from err
            columns[name].append(value)
    return Report(kind=kind, config=config, columns=columns, column_order=names)


def read_nonempty(path) -> Report:
    r = read_report(path)
    if r.num_rows == 0:
        raise FigplotError(f"{path}: empty payload")
    return r


def read_summary(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as err:
        raise FigplotError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise FigplotError(f"{path}: bad JSON: {err}") from err
