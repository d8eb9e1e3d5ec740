"""Bundle export to JSON, CSV and DOT, and atomic file writes."""

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Literal

from pydantic import ValidationError as PydanticValidationError

from closecomm.bundle import AnalysisBundle
from closecomm.error_handling import InputFileError, ValidationError
from closecomm.graph.core import Graph
from closecomm.logging import get_logger

logger = get_logger(__name__)

ExportFormat = Literal["json", "csv", "dot"]

# borough id -> edge color; the first borough is drawn bold
BOROUGH_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta")

CSV_HEADER = ("scope", "type", "size", "separable", "members")


def to_json(bundle: AnalysisBundle) -> str:
    return json.dumps(bundle.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def to_csv(bundle: AnalysisBundle) -> str:
    """One row per club; members are semicolon-joined labels."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for club in bundle.clubs:
        writer.writerow(
            (club.scope, club.type, club.size, str(club.separable).lower(), ";".join(club.nodes))
        )
    return buffer.getvalue()


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(bundle: AnalysisBundle) -> str:
    """Undirected DOT graph: borough edges solid in their borough's color,
    outback edges black and dashed."""
    lines = ["graph closecomm {", "  node [shape=circle];"]
    for label in bundle.graph.isolated_nodes:
        lines.append(f"  {_quote(label)};")
    for borough in bundle.boroughs:
        color = BOROUGH_COLORS[borough.id % len(BOROUGH_COLORS)]
        width = 3 if borough.id == 0 else 1
        for u, v in borough.edges:
            lines.append(
                f"  {_quote(u)} -- {_quote(v)} "
                f"[color={color}, style=solid, penwidth={width}, borough={borough.id}];"
            )
    for u, v in bundle.outback.edges:
        lines.append(f"  {_quote(u)} -- {_quote(v)} [color=black, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(bundle: AnalysisBundle, fmt: ExportFormat = "json") -> str:
    """Render a bundle as JSON, CSV or DOT text."""
    renderers = {"json": to_json, "csv": to_csv, "dot": to_dot}
    if fmt not in renderers:
        raise ValidationError(f"unknown export format {fmt!r}", field="format")
    return renderers[fmt](bundle)


def load_bundle(text: str) -> AnalysisBundle:
    """Parse exported JSON back into an AnalysisBundle.

    Raises:
        ValidationError: not a valid bundle document
    """
    try:
        return AnalysisBundle.model_validate_json(text)
    except PydanticValidationError as exc:
        raise ValidationError(f"invalid bundle: {exc.error_count()} error(s)", field="bundle") from exc


def to_edge_list(g: Graph) -> str:
    """One ``u v`` label line per edge, in index order."""
    return "".join(f"{g.node_labels[u]} {g.node_labels[v]}\n" for u, v in g.edges())


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and a rename.

    Readers see either the old file or the complete new one.
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
    except OSError as exc:
        raise InputFileError(str(path), type(exc).__name__) from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.info("export written", path=str(target), bytes=len(text.encode("utf-8")))
