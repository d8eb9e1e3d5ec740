"""
Exhaustive subset scan for maximal 2-clubs

Independent ground truth for the branching search. Subsets are visited
from largest to smallest; any subset of a club already found is skipped,
so every recorded club is maximal.
"""

from itertools import combinations
from typing import List, Tuple

from closecomm.analysis.classification import from_mask, is_two_club_mask, to_mask
from closecomm.analysis.interfaces import ClubEnumerator, GLOBAL_SCOPE, Scope
from closecomm.error_handling import ValidationError
from closecomm.graph.core import Graph

MAX_ORACLE_NODES = 16


class BruteForceEnumerator(ClubEnumerator):
    """Test oracle; refuses graphs above 16 nodes."""

    name = "brute_force"

    def maximal_sets(self, g: Graph, scope: Scope = GLOBAL_SCOPE) -> List[Tuple[int, ...]]:
        if g.n > MAX_ORACLE_NODES:
            raise ValidationError(
                f"exhaustive scan is limited to {MAX_ORACLE_NODES} nodes, got {g.n}",
                field="n",
            )
        adj = g.adj_masks
        self.expansions = 0
        found: List[int] = []
        for size in range(g.n, 0, -1):
            for combo in combinations(range(g.n), size):
                mask = to_mask(combo)
                if any(mask & ~club == 0 for club in found):
                    continue
                self.expansions += 1
                if is_two_club_mask(adj, mask):
                    found.append(mask)
        return sorted((from_mask(mask) for mask in found), key=lambda t: (len(t), t))
