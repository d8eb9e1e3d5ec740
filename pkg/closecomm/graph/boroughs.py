"""Boroughs: maximal edge-chained families of basic cycles, and the outback.

A borough is kept as an edge set. Two boroughs may share nodes (touch
points) but never an edge; the non-basic edges form the outback.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from closecomm.config import AnalysisSettings
from closecomm.error_handling import InvariantViolationError, ValidationError
from closecomm.graph.core import (
    Bicomponent,
    Edge,
    Graph,
    bicomponents,
    canonical_edge,
    diameter_of,
)
from closecomm.graph.cycles import Cycle, cycle_length_counts, enumerate_basic_cycles
from closecomm.logging import get_logger
from closecomm.metrics import track_boroughs, track_stage

logger = get_logger(__name__)


@dataclass(frozen=True)
class Borough:
    """Edge-induced subgraph of the host spanned by one chained cycle family.

    Attributes:
        id: Ordinal in the sorted borough list
        cycle_ids: Indices into the basic-cycle list the borough came from
        edge_set: Union of member-cycle edges, in host indices
        cycle_counts: Member cycles per length (3, 4, 5)
        host: The graph the borough was detected in
    """

    id: int
    cycle_ids: Tuple[int, ...]
    edge_set: FrozenSet[Edge]
    cycle_counts: Dict[int, int] = field(compare=False)
    host: Graph = field(repr=False, compare=False)

    @cached_property
    def node_set(self) -> FrozenSet[int]:
        return frozenset(u for e in self.edge_set for u in e)

    @cached_property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(self.node_set))

    @cached_property
    def _edge_view(self) -> Tuple[Graph, Tuple[int, ...]]:
        return self.host.edge_subgraph(self.edge_set)

    @property
    def subgraph(self) -> Graph:
        """The borough as a graph of its own (edge-induced)."""
        return self._edge_view[0]

    @property
    def host_map(self) -> Tuple[int, ...]:
        """Host index of each ``subgraph`` node."""
        return self._edge_view[1]

    @cached_property
    def diameter(self) -> int:
        sub = self.subgraph
        return diameter_of(sub, range(sub.n))

    @property
    def size(self) -> int:
        return len(self.node_set)


@dataclass(frozen=True)
class OutbackReport:
    """Non-basic edges of a graph, split into bridges and long-cycle edges."""

    non_basic_edges: FrozenSet[Edge]
    bridges: FrozenSet[Edge]
    long_cycle_edges: FrozenSet[Edge]

    @cached_property
    def node_set(self) -> FrozenSet[int]:
        return frozenset(u for e in self.non_basic_edges for u in e)


def chain_cycles(edge_sets: Sequence[Iterable[Edge]]) -> List[List[int]]:
    """Group cycles that are edge-chained.

    Two cycles land in the same group whenever a sequence of cycles links
    them with consecutive members sharing an edge.

    Args:
        edge_sets: Edge set of each cycle

    Returns:
        Groups of cycle indices, each sorted, ordered by smallest index
    """
    uf = UnionFind(range(len(edge_sets)))
    first_owner: Dict[Edge, int] = {}
    for i, edges in enumerate(edge_sets):
        for u, v in edges:
            e = canonical_edge(u, v)
            owner = first_owner.setdefault(e, i)
            if owner != i:
                uf.union(owner, i)
    groups = [sorted(group) for group in uf.to_sets()]
    groups.sort(key=lambda group: group[0])
    return groups


@track_stage("boroughs")
def detect_boroughs(
    g: Graph,
    cycles: Optional[Sequence[Cycle]] = None,
    settings: Optional[AnalysisSettings] = None,
) -> List[Borough]:
    """All boroughs of ``g``, sorted by descending node count then node list.

    Args:
        g: Host graph
        cycles: Basic cycles of ``g``, enumerated here when omitted
        settings: Override for the cycle cap

    Returns:
        Boroughs with ids ``0..k-1`` in sorted order; empty for forests and
        graphs of girth 6 or more
    """
    if cycles is None:
        cycles = enumerate_basic_cycles(g, settings)

    with logger.stage("boroughs", cycles=len(cycles)) as out:
        drafts = []
        for group in chain_cycles([cycle.edges for cycle in cycles]):
            edge_set: FrozenSet[Edge] = frozenset().union(*(cycles[i].edges for i in group))
            nodes = tuple(sorted({u for e in edge_set for u in e}))
            drafts.append((nodes, group, edge_set))
        drafts.sort(key=lambda draft: (-len(draft[0]), draft[0]))

        found = [
            Borough(
                id=i,
                cycle_ids=tuple(group),
                edge_set=edge_set,
                cycle_counts=cycle_length_counts(cycles[j] for j in group),
                host=g,
            )
            for i, (_, group, edge_set) in enumerate(drafts)
        ]
        out.update(count=len(found), largest=len(drafts[0][0]) if drafts else 0)

    track_boroughs(len(found))
    return found


def outback(g: Graph, boroughs: Sequence[Borough]) -> OutbackReport:
    """Edges of ``g`` outside every borough.

    Bridges are the single-edge blocks of ``g``; every other non-basic edge
    only lies on cycles of length 6 or more.
    """
    covered = set()
    for borough in boroughs:
        covered |= borough.edge_set
    non_basic = frozenset(e for e in g.edges() if e not in covered)
    blocks, _ = bicomponents(g)
    bridge_edges = {next(iter(b.edge_set)) for b in blocks if b.is_bridge}
    bridges = frozenset(e for e in non_basic if e in bridge_edges)
    return OutbackReport(
        non_basic_edges=non_basic,
        bridges=bridges,
        long_cycle_edges=non_basic - bridges,
    )


def touch_points(boroughs: Sequence[Borough]) -> Dict[int, List[int]]:
    """Nodes shared by two or more boroughs, mapped to their borough ids."""
    owners: Dict[int, List[int]] = {}
    for borough in boroughs:
        for u in borough.node_set:
            owners.setdefault(u, []).append(borough.id)
    return {
        u: sorted(ids) for u, ids in sorted(owners.items()) if len(ids) >= 2
    }


def outback_touch_points(
    boroughs: Sequence[Borough],
    report: OutbackReport,
) -> Dict[int, List[int]]:
    """Nodes shared by a borough and the outback, mapped to borough ids."""
    touched: Dict[int, List[int]] = {}
    for borough in boroughs:
        for u in borough.node_set & report.node_set:
            touched.setdefault(u, []).append(borough.id)
    return {u: sorted(ids) for u, ids in sorted(touched.items())}


def locate_bicomponent(borough: Borough, blocks: Sequence[Bicomponent]) -> int:
    """Index of the single block of the host holding the borough.

    Raises:
        InvariantViolationError: zero or several blocks contain it
    """
    hosts = [
        i for i, block in enumerate(blocks)
        if borough.node_set <= block.node_set and borough.edge_set <= block.edge_set
    ]
    if len(hosts) != 1:
        logger.error(
            "borough not inside exactly one bicomponent",
            borough=borough.id,
            hosts=hosts,
        )
        raise InvariantViolationError(
            "borough lies inside exactly one bicomponent",
            details={"borough": borough.id, "hosts": hosts},
        )
    return hosts[0]


def edge_removal_diameter_delta(b: Borough, e: Edge) -> Tuple[int, int]:
    """Borough diameter before and after deleting one of its edges.

    Returns:
        ``(before, after)``; ``after`` is ``UNREACHABLE`` if the deletion
        disconnects the borough

    Raises:
        ValidationError: ``e`` is not a borough edge
    """
    e = canonical_edge(*e)
    if e not in b.edge_set:
        raise ValidationError(f"{e} is not an edge of borough {b.id}", field="edge")
    sub = b.subgraph
    local = {host: i for i, host in enumerate(b.host_map)}
    rows: List[List[int]] = [list(nbrs) for nbrs in sub.adjacency]
    u, v = local[e[0]], local[e[1]]
    rows[u].remove(v)
    rows[v].remove(u)
    pruned = Graph(sub.node_labels, tuple(tuple(row) for row in rows))
    after = diameter_of(pruned, range(pruned.n))
    return b.diameter, after
