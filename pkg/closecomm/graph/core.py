"""Immutable simple graphs and the distance primitives built on them.

Nodes are dense integer indices ``0..n-1``; external labels are kept in
``Graph.node_labels`` in a deterministic order (numeric when every label is
an integer, lexicographic otherwise). All functions here are pure.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    Any,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)
import re

import networkx as nx

from closecomm.error_handling import GraphParseError, ValidationError
from closecomm.logging import get_logger

logger = get_logger(__name__)

UNREACHABLE = -1

Edge = Tuple[int, int]

_INT_LABEL = re.compile(r"^[+-]?\d+$")


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def label_sort_key(labels: Iterable[str]):
    """Return a sort key function for a label population.

    Integers sort numerically only when every label parses as one, so
    ``"10"`` follows ``"9"`` in a numeric network and ``"a10"`` precedes
    ``"a9"`` in a mixed one.
    """
    if all(_INT_LABEL.match(label) for label in labels):
        return lambda label: (int(label), label)
    return lambda label: label


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Attributes:
        node_labels: External label of each node index
        adjacency: Sorted neighbor indices per node
    """

    node_labels: Tuple[str, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    m: int = field(init=False, compare=False)
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(str(label) for label in self.node_labels)
        adjacency = tuple(tuple(nbrs) for nbrs in self.adjacency)
        object.__setattr__(self, "node_labels", labels)
        object.__setattr__(self, "adjacency", adjacency)

        n = len(labels)
        if len(adjacency) != n:
            raise ValidationError(
                f"adjacency has {len(adjacency)} rows for {n} labels",
                field="adjacency",
            )
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != n:
            raise ValidationError("node labels must be unique", field="node_labels")

        degree_sum = 0
        for u, nbrs in enumerate(adjacency):
            previous = -1
            for v in nbrs:
                if v <= previous or v >= n or v < 0:
                    raise ValidationError(
                        f"neighbors of node {u} must be sorted, unique and in range",
                        field="adjacency",
                    )
                if v == u:
                    raise ValidationError(f"self-loop on node {u}", field="adjacency")
                previous = v
            degree_sum += len(nbrs)
        adj_sets = [frozenset(nbrs) for nbrs in adjacency]
        for u, nbrs in enumerate(adjacency):
            for v in nbrs:
                if u not in adj_sets[v]:
                    raise ValidationError(
                        f"adjacency is not symmetric at ({u}, {v})",
                        field="adjacency",
                    )

        object.__setattr__(self, "m", degree_sum // 2)
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @cached_property
    def adj_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    @cached_property
    def adj_masks(self) -> Tuple[int, ...]:
        """Neighborhoods as integer bitmasks (bit v set iff v is a neighbor)."""
        masks = []
        for nbrs in self.adjacency:
            mask = 0
            for v in nbrs:
                mask |= 1 << v
            masks.append(mask)
        return tuple(masks)

    def _check_node(self, u: int) -> None:
        if not isinstance(u, int) or u < 0 or u >= self.n:
            raise ValidationError(f"node index {u!r} out of range 0..{self.n - 1}", field="node")

    def neighbors(self, u: int) -> Tuple[int, ...]:
        self._check_node(u)
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self.adj_sets[u]

    def edges(self) -> List[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def index_of(self, label: Hashable) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise ValidationError(f"unknown node label {label!r}", field="label") from None

    def label_of(self, u: int) -> str:
        self._check_node(u)
        return self.node_labels[u]

    def labels(self, nodes: Iterable[int]) -> List[str]:
        return [self.node_labels[u] for u in nodes]

    def induced_subgraph(self, nodes: Iterable[int]) -> Tuple["Graph", Tuple[int, ...]]:
        """Node-induced subgraph.

        Returns:
            ``(subgraph, host_map)`` where ``host_map[i]`` is the host index
            of subgraph node ``i``; host order is preserved.
        """
        host_map = tuple(sorted(set(nodes)))
        for u in host_map:
            self._check_node(u)
        local = {u: i for i, u in enumerate(host_map)}
        adjacency = tuple(
            tuple(local[v] for v in self.adjacency[u] if v in local) for u in host_map
        )
        sub = Graph(tuple(self.node_labels[u] for u in host_map), adjacency)
        return sub, host_map

    def edge_subgraph(self, edges: Iterable[Edge]) -> Tuple["Graph", Tuple[int, ...]]:
        """Edge-induced subgraph on the endpoints of ``edges``."""
        edge_set = {canonical_edge(u, v) for u, v in edges}
        for u, v in edge_set:
            if not self.has_edge(u, v):
                raise ValidationError(f"({u}, {v}) is not an edge", field="edges")
        host_map = tuple(sorted({u for e in edge_set for u in e}))
        local = {u: i for i, u in enumerate(host_map)}
        rows: List[List[int]] = [[] for _ in host_map]
        for u, v in edge_set:
            rows[local[u]].append(local[v])
            rows[local[v]].append(local[u])
        sub = Graph(
            tuple(self.node_labels[u] for u in host_map),
            tuple(tuple(sorted(row)) for row in rows),
        )
        return sub, host_map


@dataclass(frozen=True)
class DistanceRow:
    """Hop distances from one source; ``UNREACHABLE`` marks other components."""

    source: int
    dist: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.dist[v]


@dataclass(frozen=True)
class Bicomponent:
    """Maximal biconnected subgraph, stored by edges (a bridge is its own block)."""

    edge_set: FrozenSet[Edge]

    @property
    def node_set(self) -> FrozenSet[int]:
        return frozenset(u for e in self.edge_set for u in e)

    @property
    def is_bridge(self) -> bool:
        return len(self.edge_set) == 1


def build_graph(
    edges: Iterable[Tuple[Hashable, Hashable]],
    nodes: Iterable[Hashable] = (),
    lines: Optional[Sequence[int]] = None,
) -> Graph:
    """Build a Graph from label pairs.

    Duplicate and reversed-duplicate pairs collapse to one edge. Labels are
    sorted before indices are assigned, so the result does not depend on
    input order.

    Args:
        edges: Label pairs
        nodes: Extra labels to include even without edges
        lines: Source line number of each pair, for error messages;
            defaults to the 1-based pair position

    Raises:
        GraphParseError: a pair is a self-loop
    """
    pairs: Set[Tuple[str, str]] = set()
    labels: Set[str] = {str(label) for label in nodes}
    for pos, (a, b) in enumerate(edges):
        a, b = str(a), str(b)
        if a == b:
            line = lines[pos] if lines is not None else pos + 1
            raise GraphParseError(line=line, reason=f"self-loop on {a!r}")
        labels.add(a)
        labels.add(b)
        pairs.add((a, b) if a < b else (b, a))

    ordered = sorted(labels, key=label_sort_key(labels))
    index = {label: i for i, label in enumerate(ordered)}
    rows: List[List[int]] = [[] for _ in ordered]
    for a, b in pairs:
        u, v = index[a], index[b]
        rows[u].append(v)
        rows[v].append(u)
    g = Graph(tuple(ordered), tuple(tuple(sorted(row)) for row in rows))
    logger.debug("graph built", n=g.n, m=g.m)
    return g


def _bfs(
    adjacency: Sequence[Sequence[int]],
    source: int,
    allowed: Optional[Set[int]] = None,
    depth_limit: Optional[int] = None,
) -> Dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if depth_limit is not None and d >= depth_limit:
            continue
        for w in adjacency[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = d + 1
                queue.append(w)
    return dist


def bfs_distances(g: Graph, source: int) -> DistanceRow:
    """Exact hop distances from ``source`` to every node."""
    g._check_node(source)
    reached = _bfs(g.adjacency, source)
    return DistanceRow(
        source=source,
        dist=tuple(reached.get(v, UNREACHABLE) for v in range(g.n)),
    )


def _whole_graph_diameter(adjacency: Sequence[Sequence[int]]) -> int:
    n = len(adjacency)
    best = 0
    for source in range(n):
        dist = [-1] * n
        dist[source] = 0
        queue = [source]
        for u in queue:
            d = dist[u] + 1
            for w in adjacency[u]:
                if dist[w] < 0:
                    dist[w] = d
                    queue.append(w)
        if len(queue) != n:
            return UNREACHABLE
        best = max(best, dist[queue[-1]])
    return best


def diameter_of(g: Graph, nodes: Iterable[int]) -> int:
    """Diameter of the subgraph induced by ``nodes``.

    Distances are measured inside the induced subgraph, never through
    outside nodes.

    Returns:
        Largest hop distance, or ``UNREACHABLE`` if the subgraph is
        disconnected

    Raises:
        ValidationError: ``nodes`` is empty
    """
    allowed = set(nodes)
    if not allowed:
        raise ValidationError("diameter of an empty node set", field="nodes")
    for u in allowed:
        g._check_node(u)
    if len(allowed) == g.n:
        return _whole_graph_diameter(g.adjacency)
    best = 0
    for u in sorted(allowed):
        reached = _bfs(g.adjacency, u, allowed)
        if len(reached) != len(allowed):
            return UNREACHABLE
        best = max(best, max(reached.values()))
    return best


def bicomponents(g: Graph) -> Tuple[List[Bicomponent], FrozenSet[int]]:
    """Biconnected components and cutpoints.

    Iterative depth-first low-link decomposition with an edge stack; each
    edge lands in exactly one block, and cutpoints are exactly the nodes
    shared by two or more blocks.

    Returns:
        ``(blocks, cutpoints)`` with blocks sorted by their sorted edge lists
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    clock = 0
    edge_stack: List[Edge] = []
    blocks: List[Bicomponent] = []
    cutpoints: Set[int] = set()

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, u, iter(g.adjacency[w])))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                block: Set[Edge] = set()
                while True:
                    a, b = edge_stack.pop()
                    block.add(canonical_edge(a, b))
                    if (a, b) == (p, u):
                        break
                blocks.append(Bicomponent(frozenset(block)))
                if p == root:
                    root_children += 1
                else:
                    cutpoints.add(p)
        if root_children >= 2:
            cutpoints.add(root)

    blocks.sort(key=lambda b: sorted(b.edge_set))
    return blocks, frozenset(cutpoints)


def _check_k(k: int) -> None:
    if k not in (1, 2):
        raise ValidationError(f"k must be 1 or 2, got {k!r}", field="k")


def closed_k_neighborhood(g: Graph, u: int, k: int) -> FrozenSet[int]:
    """Closed k-neighborhood: ``u`` plus every node within ``k`` hops."""
    g._check_node(u)
    _check_k(k)
    return frozenset(_bfs(g.adjacency, u, depth_limit=k))


def k_degree(g: Graph, u: int, k: int) -> int:
    """Number of nodes within ``k`` hops of ``u``, excluding ``u``."""
    return len(closed_k_neighborhood(g, u, k)) - 1


def ego_network(g: Graph, u: int, k: int) -> Tuple[Graph, Tuple[int, ...]]:
    """Subgraph induced by the closed k-neighborhood of ``u``."""
    return g.induced_subgraph(closed_k_neighborhood(g, u, k))


def component_diameter(g: Graph, component: Sequence[int]) -> int:
    """Diameter of one connected component of ``g``.

    Computed with networkx eccentricity bounding, which usually needs far
    fewer BFS passes than there are nodes.
    """
    if len(component) <= 2:
        return len(component) - 1
    H = nx.Graph()
    H.add_nodes_from(component)
    H.add_edges_from((u, w) for u in component for w in g.adjacency[u] if u < w)
    return nx.diameter(H, usebounds=True)


def connected_components(g: Graph) -> List[Tuple[int, ...]]:
    seen = [False] * g.n
    components = []
    for start in range(g.n):
        if seen[start]:
            continue
        reached = _bfs(g.adjacency, start)
        for v in reached:
            seen[v] = True
        components.append(tuple(sorted(reached)))
    return components


def twin_classes(g: Graph) -> List[Tuple[int, ...]]:
    """Groups of two or more nodes with identical closed 1-neighborhoods.

    Twinned nodes are pairwise adjacent, so every class is a clique.
    """
    groups: Dict[FrozenSet[int], List[int]] = {}
    for u in range(g.n):
        groups.setdefault(g.adj_sets[u] | {u}, []).append(u)
    return sorted(tuple(group) for group in groups.values() if len(group) >= 2)


def reduced_ego_nodes(g: Graph) -> List[int]:
    """One representative (the smallest index) per twin class."""
    dropped = {u for group in twin_classes(g) for u in group[1:]}
    return [u for u in range(g.n) if u not in dropped]


@dataclass(frozen=True)
class GraphSummary:
    n: int
    m: int
    density: float
    average_degree: float
    min_degree: int
    max_degree: int
    min_two_degree: int
    max_two_degree: int
    component_count: int
    component_diameters: Tuple[int, ...]
    cutpoints: Tuple[int, ...]

    def to_dict(self, g: Optional[Graph] = None) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "density": self.density,
            "average_degree": self.average_degree,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "min_two_degree": self.min_two_degree,
            "max_two_degree": self.max_two_degree,
            "component_count": self.component_count,
            "component_diameters": list(self.component_diameters),
            "cutpoints": g.labels(self.cutpoints) if g is not None else list(self.cutpoints),
        }


def graph_summary(g: Graph) -> GraphSummary:
    """Size, degree, 2-degree, component and cutpoint statistics."""
    n, m = g.n, g.m
    degrees = [len(nbrs) for nbrs in g.adjacency]
    two_degrees = [k_degree(g, u, 2) for u in range(n)]
    components = connected_components(g)
    _, cutpoints = bicomponents(g)
    return GraphSummary(
        n=n,
        m=m,
        density=round(2.0 * m / (n * (n - 1)), 6) if n > 1 else 0.0,
        average_degree=round(2.0 * m / n, 6) if n else 0.0,
        min_degree=min(degrees, default=0),
        max_degree=max(degrees, default=0),
        min_two_degree=min(two_degrees, default=0),
        max_two_degree=max(two_degrees, default=0),
        component_count=len(components),
        component_diameters=tuple(component_diameter(g, comp) for comp in components),
        cutpoints=tuple(sorted(cutpoints)),
    )
