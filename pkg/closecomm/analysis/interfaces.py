"""
Abstract interfaces and records for 2-club enumeration

Defines the contract every enumerator fulfills and the records they
produce, so the search engine and the exhaustive oracle are interchangeable.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

from closecomm.config import AnalysisSettings
from closecomm.graph.core import Edge, Graph

GLOBAL_SCOPE = "global"

# "global" or a borough id
Scope = Union[str, int]


class ClubType(str, Enum):
    """The three kinds of 2-club"""
    COTERIE = "coterie"              # some member is adjacent to all others
    SOCIAL_CIRCLE = "social_circle"  # no such member, but a dominating edge
    HAMLET = "hamlet"                # neither

    @property
    def sst_diameter(self) -> int:
        """Diameter of the shortest spanning tree for this type."""
        return {"coterie": 2, "social_circle": 3, "hamlet": 4}[self.value]


class Classification(NamedTuple):
    club_type: ClubType
    centers: Tuple[int, ...]
    central_pairs: Tuple[Edge, ...]
    separable: bool


@dataclass(frozen=True)
class TwoClub:
    """A maximal 2-club with its classification.

    Node indices refer to the graph the scope was taken from (the host
    graph, also for borough scopes).
    """
    nodes: Tuple[int, ...]                 # sorted member indices
    club_type: ClubType
    separable: bool
    centers: Tuple[int, ...] = ()          # coterie twin egos
    central_pairs: Tuple[Edge, ...] = ()   # social circle dominating edges
    host: Scope = GLOBAL_SCOPE
    edge_count: int = 0                    # induced edges

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def sst_diameter(self) -> int:
        return self.club_type.sst_diameter

    @property
    def node_set(self) -> frozenset:
        return frozenset(self.nodes)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.nodes), self.nodes)

    def to_dict(self, g: Optional[Graph] = None) -> Dict[str, Any]:
        """Convert to dictionary; labels instead of indices when ``g`` is given."""
        def name(u: int) -> Any:
            return g.node_labels[u] if g is not None else u

        return {
            "scope": self.host,
            "type": self.club_type.value,
            "size": self.size,
            "edge_count": self.edge_count,
            "separable": self.separable,
            "nodes": [name(u) for u in self.nodes],
            "centers": [name(u) for u in self.centers],
            "central_pairs": [[name(u), name(v)] for u, v in self.central_pairs],
        }


class ClubEnumerator(ABC):
    """
    Abstract base class for maximal 2-club enumerators.

    Implementations:
    - BranchingEnumerator: conflict-pair branching search (production)
    - BruteForceEnumerator: exhaustive subset scan (test oracle, n <= 16)
    """

    name: str = "abstract"

    def __init__(self, settings: Optional[AnalysisSettings] = None) -> None:
        from closecomm.config import settings as default_settings

        self.settings = settings or default_settings
        self.expansions = 0

    @abstractmethod
    def maximal_sets(self, g: Graph, scope: Scope = GLOBAL_SCOPE) -> List[Tuple[int, ...]]:
        """
        Every maximal node set of ``g`` inducing diameter at most 2.

        No size floor is applied here.

        Args:
            g: The scope graph
            scope: Scope label used in errors and metrics

        Returns:
            Sorted node tuples, ordered by size then members

        Raises:
            EnumerationIncompleteError: search budget exhausted
        """
        pass
