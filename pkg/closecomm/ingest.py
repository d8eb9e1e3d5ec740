"""Edge-list and actor-item pair ingestion, and bipartite projection.

Both formats hold two whitespace-separated tokens per line. Blank lines and
lines whose first non-blank character is ``#`` are skipped.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from closecomm.config import AnalysisSettings, settings as default_settings
from closecomm.error_handling import InputFileError, ValidationError, GraphParseError
from closecomm.graph.boroughs import detect_boroughs
from closecomm.graph.core import Graph, build_graph
from closecomm.logging import get_logger

logger = get_logger(__name__)


def read_text(path: str) -> str:
    """Read a UTF-8 input file.

    Raises:
        InputFileError: missing, unreadable or not UTF-8
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputFileError(str(path), type(exc).__name__) from exc


def _token_pairs(text: str) -> Tuple[List[Tuple[str, str]], List[int]]:
    pairs: List[Tuple[str, str]] = []
    lines: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                line=number,
                reason=f"expected 2 tokens, found {len(tokens)}",
            )
        pairs.append((tokens[0], tokens[1]))
        lines.append(number)
    return pairs, lines


def parse_edge_list(text: str) -> Graph:
    """Parse an edge list into a Graph.

    Raises:
        GraphParseError: a line with other than two tokens, or a self-loop;
            ``line`` is the 1-based line number in ``text``
    """
    pairs, lines = _token_pairs(text)
    g = build_graph(pairs, lines=lines)
    logger.info("edge list parsed", lines=len(lines), n=g.n, m=g.m)
    return g


def parse_bipartite(text: str) -> List[Tuple[str, str]]:
    """Parse ``actor item`` lines into pairs, in file order."""
    pairs, _ = _token_pairs(text)
    return pairs


def _check_threshold(t: int) -> None:
    if not isinstance(t, int) or t < 1:
        raise ValidationError(f"threshold must be an integer >= 1, got {t!r}", field="threshold")


def shared_item_counts(pairs: Iterable[Tuple[Any, Any]]) -> Counter:
    """Number of distinct shared items per unordered actor pair."""
    actors_by_item: Dict[str, Set[str]] = defaultdict(set)
    for actor, item in pairs:
        actors_by_item[str(item)].add(str(actor))
    counts: Counter = Counter()
    for actors in actors_by_item.values():
        for a, b in combinations(sorted(actors), 2):
            counts[(a, b)] += 1
    return counts


def project_bipartite(
    pairs: Iterable[Tuple[Any, Any]],
    t: int,
    counts: Optional[Counter] = None,
) -> Graph:
    """Actor graph linking actors that share at least ``t`` items.

    Actors without any qualifying partner are left out.

    Args:
        pairs: ``(actor, item)`` pairs; repeats count once
        t: Threshold, at least 1
        counts: Precomputed ``shared_item_counts(pairs)`` to reuse
    """
    _check_threshold(t)
    if counts is None:
        counts = shared_item_counts(pairs)
    edges = sorted(pair for pair, shared in counts.items() if shared >= t)
    g = build_graph(edges)
    logger.info("bipartite projection built", threshold=t, n=g.n, m=g.m)
    return g


@dataclass(frozen=True)
class SweepRow:
    threshold: int
    nodes: int
    edges: int
    density: float
    boroughs: int
    largest: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "threshold": self.threshold,
            "nodes": self.nodes,
            "edges": self.edges,
            "density": self.density,
            "boroughs": self.boroughs,
            "largest": list(self.largest),
        }


def threshold_sweep(
    pairs: Iterable[Tuple[Any, Any]],
    thresholds: Sequence[int],
    settings: Optional[AnalysisSettings] = None,
) -> List[SweepRow]:
    """Projection size and borough structure for each threshold.

    ``largest`` lists the five largest borough node counts.
    """
    settings = settings or default_settings
    counts = shared_item_counts(pairs)
    rows = []
    for t in sorted(set(thresholds)):
        g = project_bipartite((), t, counts=counts)
        boroughs = detect_boroughs(g, settings=settings)
        rows.append(
            SweepRow(
                threshold=t,
                nodes=g.n,
                edges=g.m,
                density=round(2.0 * g.m / (g.n * (g.n - 1)), 6) if g.n > 1 else 0.0,
                boroughs=len(boroughs),
                largest=tuple(b.size for b in boroughs[:5]),
            )
        )
    return rows
