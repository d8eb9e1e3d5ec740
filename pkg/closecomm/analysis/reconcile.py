"""Cross-check of whole-graph and per-borough enumeration results."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Tuple

from closecomm.analysis.interfaces import ClubType, TwoClub
from closecomm.logging import get_logger

logger = get_logger(__name__)

_NONSEPARABLE_TYPES = (ClubType.SOCIAL_CIRCLE, ClubType.HAMLET)


@dataclass
class ReconciliationReport:
    """Discrepancies between global and borough-level 2-clubs.

    Hamlets and social circles must coincide exactly. A borough coterie must
    be a global coterie, or sit inside one that shares a center with it.
    """
    missing_in_boroughs: List[Tuple[int, ...]] = field(default_factory=list)
    missing_in_global: List[Tuple[int, ...]] = field(default_factory=list)
    type_mismatches: List[Tuple[int, ...]] = field(default_factory=list)
    uncovered_coteries: List[Tuple[int, ...]] = field(default_factory=list)
    # borough coterie -> the global coterie it sits in
    coterie_hosts: Dict[Tuple[int, ...], Tuple[int, ...]] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return not (
            self.missing_in_boroughs
            or self.missing_in_global
            or self.type_mismatches
            or self.uncovered_coteries
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "consistent": self.consistent,
            "missing_in_boroughs": [list(c) for c in self.missing_in_boroughs],
            "missing_in_global": [list(c) for c in self.missing_in_global],
            "type_mismatches": [list(c) for c in self.type_mismatches],
            "uncovered_coteries": [list(c) for c in self.uncovered_coteries],
        }


def reconcile_with_graph(
    global_clubs: Iterable[TwoClub],
    per_borough_clubs: Iterable[TwoClub],
) -> ReconciliationReport:
    """Compare the two enumerations of the same graph.

    Args:
        global_clubs: Clubs enumerated over the whole graph
        per_borough_clubs: Clubs of every borough, in host indices

    Returns:
        ReconciliationReport; ``consistent`` is False on any discrepancy
    """
    global_clubs = list(global_clubs)
    per_borough_clubs = list(per_borough_clubs)
    report = ReconciliationReport()

    global_close = {c.nodes: c.club_type for c in global_clubs if c.club_type in _NONSEPARABLE_TYPES}
    borough_close = {c.nodes: c.club_type for c in per_borough_clubs if c.club_type in _NONSEPARABLE_TYPES}

    report.missing_in_boroughs = sorted(set(global_close) - set(borough_close))
    report.missing_in_global = sorted(set(borough_close) - set(global_close))
    report.type_mismatches = sorted(
        nodes for nodes in set(global_close) & set(borough_close)
        if global_close[nodes] is not borough_close[nodes]
    )

    global_coteries = [c for c in global_clubs if c.club_type is ClubType.COTERIE]
    for club in per_borough_clubs:
        if club.club_type is not ClubType.COTERIE:
            continue
        host = next(
            (
                g for g in sorted(global_coteries, key=TwoClub.sort_key)
                if club.node_set <= g.node_set and set(club.centers) & set(g.centers)
            ),
            None,
        )
        if host is None:
            report.uncovered_coteries.append(club.nodes)
        else:
            report.coterie_hosts[club.nodes] = host.nodes
    report.uncovered_coteries.sort()

    if not report.consistent:
        logger.warning("global and borough enumerations disagree", **report.to_dict())
    return report
