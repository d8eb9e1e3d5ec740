"""Diameter-2 test and coterie / social circle / hamlet classification.

Node sets are handled as integer bitmasks over the graph's node indices.
"""

from typing import Iterable, Iterator, List, Sequence, Tuple

from closecomm.analysis.interfaces import Classification, ClubType
from closecomm.error_handling import InvariantViolationError, ValidationError
from closecomm.graph.core import Edge, Graph, bicomponents
from closecomm.logging import get_logger

logger = get_logger(__name__)


def to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for u in nodes:
        mask |= 1 << u
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> Tuple[int, ...]:
    return tuple(iter_bits(mask))


def reach_within(adj_masks: Sequence[int], u: int, allowed: int) -> int:
    """Nodes of ``allowed`` within two hops of ``u`` inside ``allowed``."""
    first = adj_masks[u] & allowed
    reach = first | (1 << u)
    for v in iter_bits(first):
        reach |= adj_masks[v] & allowed
    return reach


def is_two_club_mask(adj_masks: Sequence[int], mask: int) -> bool:
    for u in iter_bits(mask):
        if reach_within(adj_masks, u, mask) != mask:
            return False
    return True


def _checked_mask(g: Graph, nodes: Iterable[int]) -> int:
    members = set(nodes)
    if not members:
        raise ValidationError("empty node set", field="nodes")
    for u in members:
        g._check_node(u)
    return to_mask(members)


def is_two_club(g: Graph, nodes: Iterable[int]) -> bool:
    """True iff ``nodes`` induce a connected subgraph of diameter at most 2.

    Distances are taken inside the induced subgraph.
    """
    return is_two_club_mask(g.adj_masks, _checked_mask(g, nodes))


def induced_edges(g: Graph, nodes: Iterable[int]) -> List[Edge]:
    members = set(nodes)
    return [
        (u, v) for u in sorted(members) for v in g.adjacency[u] if v > u and v in members
    ]


def classify(g: Graph, nodes: Iterable[int]) -> Classification:
    """Classify a 2-club.

    Centers are members adjacent to every other member; any center makes
    the club a coterie. Without centers, central pairs are induced edges
    whose endpoints together dominate the club, making it a social circle.
    Otherwise it is a hamlet. A club is separable when its induced subgraph
    has a cutpoint, which only a single-center coterie can have.

    Raises:
        ValidationError: ``nodes`` is not a 2-club of ``g``
        InvariantViolationError: centers are not a clique, or a separable
            club is not a single-center coterie
    """
    mask = _checked_mask(g, nodes)
    adj = g.adj_masks
    if not is_two_club_mask(adj, mask):
        raise ValidationError("node set does not induce diameter <= 2", field="nodes")
    members = from_mask(mask)

    centers = tuple(u for u in members if (adj[u] | (1 << u)) & mask == mask)
    central_pairs: Tuple[Edge, ...] = ()
    if centers:
        club_type = ClubType.COTERIE
        for i, u in enumerate(centers):
            for v in centers[i + 1:]:
                if not (adj[u] >> v) & 1:
                    raise InvariantViolationError(
                        "coterie centers form a clique",
                        details={"centers": list(centers)},
                    )
    else:
        central_pairs = tuple(
            (u, v)
            for u, v in induced_edges(g, members)
            if (adj[u] | adj[v]) & mask == mask
        )
        club_type = ClubType.SOCIAL_CIRCLE if central_pairs else ClubType.HAMLET

    separable = False
    if len(members) >= 3:
        sub, _ = g.induced_subgraph(members)
        _, cutpoints = bicomponents(sub)
        separable = bool(cutpoints)
    if separable and not (club_type is ClubType.COTERIE and len(centers) == 1):
        logger.error("separable 2-club is not a single-center coterie", nodes=list(members))
        raise InvariantViolationError(
            "only single-center coteries are separable",
            details={"nodes": list(members), "type": club_type.value},
        )
    return Classification(club_type, centers, central_pairs, separable)
