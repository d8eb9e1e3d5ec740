"""Aggregate statistics and membership queries over a 2-club collection.

Percentages are rounded half-up to one decimal. Medians take the lower
middle element on even counts. Denominators are named in every rendered
table header.
"""

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tabulate import tabulate

from closecomm.analysis.interfaces import ClubType, TwoClub
from closecomm.error_handling import ValidationError
from closecomm.graph.core import Graph

TYPE_ORDER = (ClubType.COTERIE, ClubType.SOCIAL_CIRCLE, ClubType.HAMLET)
ALL = "all"


def percent(part: int, whole: int) -> float:
    """``100 * part / whole`` rounded half-up to one decimal; 0.0 if whole is 0."""
    if whole == 0:
        return 0.0
    value = Decimal(100 * part) / Decimal(whole)
    return float(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def lower_median(values: Sequence[int]) -> int:
    if not values:
        return 0
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


@dataclass(frozen=True)
class DistributionRow:
    label: str
    count: int
    percent: float
    size_min: int
    size_max: int
    size_median: int
    coverage: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "count": self.count,
            "percent": self.percent,
            "size_min": self.size_min,
            "size_max": self.size_max,
            "size_median": self.size_median,
            "coverage": self.coverage,
        }


@dataclass(frozen=True)
class TypeDistribution:
    """Per-type and total rows; coverage is over ``scope_node_count`` nodes."""
    rows: Tuple[DistributionRow, ...]
    scope_node_count: int

    def row(self, label: Any) -> DistributionRow:
        key = label.value if isinstance(label, ClubType) else label
        for r in self.rows:
            if r.label == key:
                return r
        raise KeyError(key)

    @property
    def total(self) -> DistributionRow:
        return self.row(ALL)

    def counts(self) -> Dict[str, int]:
        return {r.label: r.count for r in self.rows}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scope_node_count": self.scope_node_count,
            "rows": [r.to_dict() for r in self.rows],
        }


def _row(label: str, members: Sequence[TwoClub], total: int, scope_node_count: int) -> DistributionRow:
    sizes = [club.size for club in members]
    covered = set()
    for club in members:
        covered.update(club.nodes)
    return DistributionRow(
        label=label,
        count=len(members),
        percent=percent(len(members), total),
        size_min=min(sizes, default=0),
        size_max=max(sizes, default=0),
        size_median=lower_median(sizes),
        coverage=percent(len(covered), scope_node_count),
    )


def type_distribution(clubs: Sequence[TwoClub], scope_node_count: int) -> TypeDistribution:
    """Counts, shares, size range, median and node coverage per club type."""
    clubs = list(clubs)
    total = len(clubs)
    rows = [
        _row(t.value, [c for c in clubs if c.club_type is t], total, scope_node_count)
        for t in TYPE_ORDER
    ]
    rows.append(_row(ALL, clubs, total, scope_node_count))
    return TypeDistribution(rows=tuple(rows), scope_node_count=scope_node_count)


def clubs_containing(clubs: Sequence[TwoClub], node: int) -> List[TwoClub]:
    return [club for club in clubs if node in club.node_set]


@dataclass
class MembershipProfile:
    """Clubs containing one node, grouped by type.

    ``percent_of_type`` is relative to the number of clubs of that type in
    the queried collection.
    """
    node: int
    clubs: List[Tuple[int, ClubType, int]] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=dict)
    percent_of_type: Dict[str, float] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.clubs)

    def to_dict(self, g: Optional[Graph] = None) -> Dict[str, Any]:
        return {
            "node": g.node_labels[self.node] if g is not None else self.node,
            "total": self.total,
            "clubs": [
                {"club": i, "type": t.value, "size": size} for i, t, size in self.clubs
            ],
            "counts": dict(self.counts),
            "percent_of_type": dict(self.percent_of_type),
        }


def membership(clubs: Sequence[TwoClub], node: int) -> MembershipProfile:
    """Every club (by position in ``clubs``) that contains ``node``."""
    profile = MembershipProfile(node=node)
    type_totals = {t.value: 0 for t in TYPE_ORDER}
    for i, club in enumerate(clubs):
        type_totals[club.club_type.value] += 1
        if node in club.node_set:
            profile.clubs.append((i, club.club_type, club.size))
    for t in TYPE_ORDER:
        count = sum(1 for _, kind, _ in profile.clubs if kind is t)
        profile.counts[t.value] = count
        profile.percent_of_type[t.value] = percent(count, type_totals[t.value])
    return profile


@dataclass(frozen=True)
class CoMembershipRow:
    label: str
    only_u: int
    only_v: int
    both: int
    either: int
    both_percent_of_v: float


@dataclass
class CoMembership:
    """Partition of the clubs containing ``u`` or ``v``, per type and overall."""
    u: int
    v: int
    rows: Tuple[CoMembershipRow, ...]

    def row(self, label: Any) -> CoMembershipRow:
        key = label.value if isinstance(label, ClubType) else label
        for r in self.rows:
            if r.label == key:
                return r
        raise KeyError(key)

    @property
    def total(self) -> CoMembershipRow:
        return self.row(ALL)

    def to_dict(self, g: Optional[Graph] = None) -> Dict[str, Any]:
        def name(x: int) -> Any:
            return g.node_labels[x] if g is not None else x

        return {
            "u": name(self.u),
            "v": name(self.v),
            "rows": [
                {
                    "label": r.label,
                    "only_u": r.only_u,
                    "only_v": r.only_v,
                    "both": r.both,
                    "either": r.either,
                    "both_percent_of_v": r.both_percent_of_v,
                }
                for r in self.rows
            ],
        }


def co_membership(clubs: Sequence[TwoClub], u: int, v: int) -> CoMembership:
    """Clubs with only ``u``, only ``v``, both, and either.

    Raises:
        ValidationError: ``u == v``
    """
    if u == v:
        raise ValidationError("co-membership needs two distinct nodes", field="v")

    def tally(label: str, members: Sequence[TwoClub]) -> CoMembershipRow:
        has_u = [u in c.node_set for c in members]
        has_v = [v in c.node_set for c in members]
        both = sum(1 for a, b in zip(has_u, has_v) if a and b)
        only_u = sum(1 for a, b in zip(has_u, has_v) if a and not b)
        only_v = sum(1 for a, b in zip(has_u, has_v) if b and not a)
        return CoMembershipRow(
            label=label,
            only_u=only_u,
            only_v=only_v,
            both=both,
            either=only_u + only_v + both,
            both_percent_of_v=percent(both, both + only_v),
        )

    clubs = list(clubs)
    rows = [tally(t.value, [c for c in clubs if c.club_type is t]) for t in TYPE_ORDER]
    rows.append(tally(ALL, clubs))
    return CoMembership(u=u, v=v, rows=tuple(rows))


def render_distribution(dist: TypeDistribution, title: str = "") -> str:
    headers = [
        "type",
        "count",
        "% of clubs in scope",
        "size min",
        "size max",
        "size median",
        f"% coverage of {dist.scope_node_count} scope nodes",
    ]
    table = [
        [r.label, r.count, r.percent, r.size_min, r.size_max, r.size_median, r.coverage]
        for r in dist.rows
    ]
    text = tabulate(table, headers=headers, tablefmt="simple")
    return f"{title}\n{text}" if title else text


def render_membership(profile: MembershipProfile, g: Graph) -> str:
    headers = ["type", "clubs with node", "% of clubs of that type"]
    table = [
        [t.value, profile.counts.get(t.value, 0), profile.percent_of_type.get(t.value, 0.0)]
        for t in TYPE_ORDER
    ]
    table.append([ALL, profile.total, ""])
    return f"node {g.node_labels[profile.node]}\n" + tabulate(table, headers=headers, tablefmt="simple")


def render_co_membership(result: CoMembership, g: Graph) -> str:
    u, v = g.node_labels[result.u], g.node_labels[result.v]
    headers = ["type", f"only {u}", f"only {v}", "both", "either", f"% both of clubs with {v}"]
    table = [
        [r.label, r.only_u, r.only_v, r.both, r.either, r.both_percent_of_v] for r in result.rows
    ]
    return tabulate(table, headers=headers, tablefmt="simple")
