"""
Maximal 2-club enumeration, classification and reporting

Supports:
- BranchingEnumerator: conflict-pair branching search with a budget
- BruteForceEnumerator: exhaustive oracle for graphs up to 16 nodes

Usage:
    from closecomm.analysis import enumerate_two_clubs

    clubs = enumerate_two_clubs(g, borough)
"""

from .interfaces import (
    GLOBAL_SCOPE,
    Classification,
    ClubEnumerator,
    ClubType,
    TwoClub,
)
from .classification import classify, is_two_club
from .branching import BranchingEnumerator
from .brute_force import BruteForceEnumerator
from .factory import (
    EnumeratorFactory,
    brute_force_two_clubs,
    create_enumerator,
    enumerate_two_clubs,
    oversized_clubs,
)
from .reconcile import ReconciliationReport, reconcile_with_graph
from .reports import (
    clubs_containing,
    co_membership,
    membership,
    type_distribution,
)

__all__ = [
    "GLOBAL_SCOPE",
    "Classification",
    "ClubEnumerator",
    "ClubType",
    "TwoClub",
    "classify",
    "is_two_club",
    "BranchingEnumerator",
    "BruteForceEnumerator",
    "EnumeratorFactory",
    "brute_force_two_clubs",
    "create_enumerator",
    "enumerate_two_clubs",
    "oversized_clubs",
    "ReconciliationReport",
    "reconcile_with_graph",
    "clubs_containing",
    "co_membership",
    "membership",
    "type_distribution",
]
