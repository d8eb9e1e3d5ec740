"""
Factory for enumerator selection and the classified 2-club entry points.

- Choose an enumerator by name ("branching" or "brute_force")
- Run it over the whole graph or inside one borough
- Apply the size floor and classify every surviving club
"""

from typing import Dict, List, Literal, Optional, Sequence, Tuple, Type, Union

from closecomm.analysis.classification import classify, induced_edges
from closecomm.analysis.interfaces import (
    GLOBAL_SCOPE,
    ClubEnumerator,
    Scope,
    TwoClub,
)
from closecomm.analysis.branching import BranchingEnumerator
from closecomm.analysis.brute_force import BruteForceEnumerator
from closecomm.config import AnalysisSettings, settings as default_settings
from closecomm.error_handling import EnumerationIncompleteError, ValidationError
from closecomm.graph.boroughs import Borough
from closecomm.graph.core import Graph
from closecomm.logging import get_logger
from closecomm.metrics import track_clubs

logger = get_logger(__name__)

EnumeratorKind = Literal["branching", "brute_force"]


class EnumeratorFactory:
    """
    Registry of enumerator implementations.

    Use this for:
    - Swapping the search engine for the oracle in tests
    - Registering an experimental enumerator
    """

    _enumerators: Dict[str, Type[ClubEnumerator]] = {}

    @staticmethod
    def register(name: str, enumerator_class: Type[ClubEnumerator]) -> None:
        EnumeratorFactory._enumerators[name] = enumerator_class

    @staticmethod
    def get(
        name: str = "branching",
        settings: Optional[AnalysisSettings] = None,
    ) -> ClubEnumerator:
        """
        Get enumerator by name.

        Raises:
            ValidationError: If enumerator not registered
        """
        if name not in EnumeratorFactory._enumerators:
            raise ValidationError(
                f"Enumerator '{name}' not registered. "
                f"Available: {EnumeratorFactory.list_available()}",
                field="kind",
            )
        return EnumeratorFactory._enumerators[name](settings)

    @staticmethod
    def list_available() -> List[str]:
        return sorted(EnumeratorFactory._enumerators)


EnumeratorFactory.register("branching", BranchingEnumerator)
EnumeratorFactory.register("brute_force", BruteForceEnumerator)


def create_enumerator(
    kind: EnumeratorKind = "branching",
    settings: Optional[AnalysisSettings] = None,
) -> ClubEnumerator:
    """
    Factory function to create an enumerator.

    Examples:
        enumerator = create_enumerator("branching")
        sets = enumerator.maximal_sets(g)
    """
    return EnumeratorFactory.get(kind, settings)


def build_clubs(
    scope_graph: Graph,
    node_sets: Sequence[Tuple[int, ...]],
    scope: Scope = GLOBAL_SCOPE,
    host_map: Optional[Sequence[int]] = None,
    settings: Optional[AnalysisSettings] = None,
) -> List[TwoClub]:
    """Apply the size floor, classify, and translate to host indices.

    A club below the floor is dropped entirely, never shrunk.
    """
    settings = settings or default_settings

    def lift(u: int) -> int:
        return host_map[u] if host_map is not None else u

    clubs = []
    for nodes in node_sets:
        if len(nodes) < settings.min_club_nodes:
            continue
        edge_count = len(induced_edges(scope_graph, nodes))
        if edge_count < settings.min_club_edges:
            continue
        kind = classify(scope_graph, nodes)
        clubs.append(
            TwoClub(
                nodes=tuple(sorted(lift(u) for u in nodes)),
                club_type=kind.club_type,
                separable=kind.separable,
                centers=tuple(sorted(lift(u) for u in kind.centers)),
                central_pairs=tuple(
                    sorted(tuple(sorted((lift(u), lift(v)))) for u, v in kind.central_pairs)
                ),
                host=scope,
                edge_count=edge_count,
            )
        )
    clubs.sort(key=TwoClub.sort_key)
    return clubs


def enumerate_two_clubs(
    g: Graph,
    scope: Union[str, Borough] = GLOBAL_SCOPE,
    settings: Optional[AnalysisSettings] = None,
    kind: EnumeratorKind = "branching",
) -> List[TwoClub]:
    """
    All maximal 2-clubs of a scope, floored and classified.

    Args:
        g: Host graph
        scope: ``"global"`` for the whole graph, or a Borough of ``g``;
            a borough is searched as its own edge-induced graph
        settings: Floor, budget and seed-order overrides
        kind: Enumerator implementation

    Returns:
        Clubs sorted by size then members, node indices in ``g``

    Raises:
        ValidationError: the scope has fewer than three nodes
        EnumerationIncompleteError: budget exhausted; ``partial`` holds the
            clubs collected so far as host-index tuples
    """
    settings = settings or default_settings
    if isinstance(scope, Borough):
        scope_graph, host_map = scope.subgraph, scope.host_map
        label: Scope = scope.id
    elif scope == GLOBAL_SCOPE:
        scope_graph, host_map, label = g, None, GLOBAL_SCOPE
    else:
        raise ValidationError(f"unknown scope {scope!r}", field="scope")

    if scope_graph.n < 3:
        raise ValidationError(
            f"scope {label} has {scope_graph.n} nodes, at least 3 are required",
            field="scope",
        )

    enumerator = create_enumerator(kind, settings)
    with logger.stage("enumerate", scope=label, enumerator=enumerator.name) as out:
        try:
            node_sets = enumerator.maximal_sets(scope_graph, label)
        except EnumerationIncompleteError as exc:
            if host_map is not None:
                exc.partial = [tuple(sorted(host_map[u] for u in nodes)) for nodes in exc.partial]
                exc.details["partial"] = exc.partial
            raise
        clubs = build_clubs(scope_graph, node_sets, label, host_map, settings)
        out.update(clubs=len(clubs), raw=len(node_sets), expansions=enumerator.expansions)

    track_clubs(clubs)
    return clubs


def brute_force_two_clubs(
    g: Graph,
    settings: Optional[AnalysisSettings] = None,
) -> List[TwoClub]:
    """Oracle counterpart of ``enumerate_two_clubs`` over the whole graph."""
    settings = settings or default_settings
    node_sets = BruteForceEnumerator(settings).maximal_sets(g)
    return build_clubs(g, node_sets, GLOBAL_SCOPE, None, settings)


def oversized_clubs(clubs: Sequence[TwoClub], max_degree: int) -> List[TwoClub]:
    """Clubs with more than ``max_degree + 1`` members.

    No coterie can exceed that size, so every result must be a hamlet or a
    social circle.
    """
    return [club for club in clubs if club.size > max_degree + 1]
