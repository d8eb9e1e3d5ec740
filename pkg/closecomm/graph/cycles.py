"""Basic cycles: induced cycles of length 3, 4 and 5."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from closecomm.config import AnalysisSettings, settings as default_settings
from closecomm.error_handling import CycleCapExceededError, ValidationError
from closecomm.graph.core import Edge, Graph, canonical_edge
from closecomm.logging import get_logger
from closecomm.metrics import track_cycles, track_stage

logger = get_logger(__name__)

BASIC_LENGTHS = (3, 4, 5)


@dataclass(frozen=True)
class Cycle:
    """An induced cycle in canonical rotation.

    ``nodes[0]`` is the smallest index and ``nodes[1]`` is the smaller of
    its two cycle neighbors, so each cycle has exactly one representation.
    """

    nodes: Tuple[int, ...]

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        if len(nodes) not in BASIC_LENGTHS or len(set(nodes)) != len(nodes):
            raise ValidationError(
                f"a basic cycle has 3 to 5 distinct nodes, got {nodes!r}",
                field="nodes",
            )
        object.__setattr__(self, "nodes", canonical_rotation(nodes))

    @property
    def length(self) -> int:
        return len(self.nodes)

    @property
    def edges(self) -> FrozenSet[Edge]:
        k = len(self.nodes)
        return frozenset(
            canonical_edge(self.nodes[i], self.nodes[(i + 1) % k]) for i in range(k)
        )

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.nodes), self.nodes)


def canonical_rotation(nodes: Sequence[int]) -> Tuple[int, ...]:
    k = len(nodes)
    start = min(range(k), key=lambda i: nodes[i])
    forward = tuple(nodes[(start + i) % k] for i in range(k))
    if forward[-1] < forward[1]:
        return (forward[0],) + tuple(reversed(forward[1:]))
    return forward


def is_induced_cycle(g: Graph, nodes: Sequence[int]) -> bool:
    """True iff ``nodes`` in this order is a chordless cycle of ``g``."""
    k = len(nodes)
    if k < 3 or len(set(nodes)) != k:
        return False
    adj = g.adj_sets
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if (nodes[j] in adj[nodes[i]]) != consecutive:
                return False
    return True


@track_stage("cycles")
def enumerate_basic_cycles(
    g: Graph,
    settings: Optional[AnalysisSettings] = None,
) -> List[Cycle]:
    """Every induced cycle of length 3, 4 or 5, canonical and sorted.

    Each cycle is grown from its smallest node ``u`` along its smaller
    neighbor, through nodes larger than ``u`` only. A candidate node that
    touches an interior path node would create a chord and is skipped; a
    candidate adjacent to ``u`` closes the cycle.

    Raises:
        CycleCapExceededError: more than ``settings.cycle_cap`` cycles
    """
    settings = settings or default_settings
    cap = settings.cycle_cap
    adj = g.adj_sets
    found: List[Cycle] = []

    with logger.stage("cycles", n=g.n, m=g.m) as out:
        for u in range(g.n):
            for v in g.adjacency[u]:
                if v < u:
                    continue
                # stack of (path, interior-neighborhood union)
                stack: List[Tuple[Tuple[int, ...], FrozenSet[int]]] = [((u, v), frozenset())]
                while stack:
                    path, blocked = stack.pop()
                    last = path[-1]
                    for w in g.adjacency[last]:
                        if w <= u or w in path or w in blocked:
                            continue
                        if w in adj[u]:
                            if w > path[1]:
                                found.append(Cycle(path + (w,)))
                                if len(found) > cap:
                                    logger.warning("cycle cap exceeded", cycle_cap=cap)
                                    raise CycleCapExceededError(cap)
                            continue
                        if len(path) + 1 < 5:
                            stack.append((path + (w,), blocked | adj[last]))
        found.sort(key=Cycle.sort_key)
        counts = cycle_length_counts(found)
        out.update(cycles=len(found), by_length=counts)

    track_cycles(counts)
    return found


def basic_edges(cycles: Iterable[Cycle]) -> FrozenSet[Edge]:
    """Edges lying on at least one of ``cycles``."""
    edges = set()
    for cycle in cycles:
        edges |= cycle.edges
    return frozenset(edges)


def cycle_length_counts(cycles: Iterable[Cycle]) -> Dict[int, int]:
    counts = {length: 0 for length in BASIC_LENGTHS}
    for cycle in cycles:
        counts[cycle.length] += 1
    return counts
