"""
Conflict-pair branching search for all maximal 2-clubs

Every maximal 2-club containing node ``u`` lies inside the closed
2-neighborhood of ``u``. Seeds are taken in order; seed ``u`` searches
the clubs whose first member in seed order is ``u``, so the candidate set
starts as that neighborhood minus all earlier seeds, with ``u`` fixed.

A search state is ``(candidates, fixed)``. Fixed nodes are kept in every
club found below the state. Propagation drops each candidate that is more
than two hops from a fixed node inside the candidate set. If no conflict
pair remains the candidate set is a 2-club; otherwise the smallest pair
``(a, b)`` splits the state into "``a`` dropped" and "``a`` fixed", two
disjoint subproblems. States whose candidates fit inside a club already
found are pruned.
"""

from typing import List, Optional, Sequence, Tuple

from closecomm.analysis.classification import (
    from_mask,
    is_two_club_mask,
    iter_bits,
    reach_within,
)
from closecomm.analysis.interfaces import ClubEnumerator, GLOBAL_SCOPE, Scope
from closecomm.error_handling import EnumerationIncompleteError, InvariantViolationError
from closecomm.graph.core import Graph
from closecomm.logging import get_logger
from closecomm.metrics import track_expansions

logger = get_logger(__name__)


class BranchingEnumerator(ClubEnumerator):
    """Production enumerator with an explicit expansion budget."""

    name = "branching"

    def seed_order(self, g: Graph) -> List[int]:
        if self.settings.seed_order == "degree":
            return sorted(range(g.n), key=lambda u: (-len(g.adjacency[u]), u))
        return list(range(g.n))

    def maximal_sets(self, g: Graph, scope: Scope = GLOBAL_SCOPE) -> List[Tuple[int, ...]]:
        adj = g.adj_masks
        full = (1 << g.n) - 1
        budget = self.settings.branch_budget
        self.expansions = 0
        found: List[int] = []
        excluded = 0

        try:
            for seed in self.seed_order(g):
                start = reach_within(adj, seed, full) & ~excluded
                self._search(adj, start, 1 << seed, found, budget, scope)
                excluded |= 1 << seed
        except EnumerationIncompleteError:
            track_expansions(scope, self.expansions)
            logger.warning(
                "branch budget exhausted",
                scope=scope,
                branch_budget=budget,
                partial=len(found),
            )
            raise
        track_expansions(scope, self.expansions)

        survivors = _drop_subsets(found)
        self._check_maximal(adj, full, survivors, scope)
        result = sorted((from_mask(mask) for mask in survivors), key=lambda t: (len(t), t))
        logger.debug(
            "maximal 2-clubs enumerated",
            scope=scope,
            clubs=len(result),
            expansions=self.expansions,
        )
        return result

    def _search(
        self,
        adj: Sequence[int],
        cand: int,
        fixed: int,
        found: List[int],
        budget: int,
        scope: Scope,
    ) -> None:
        stack = [(cand, fixed)]
        while stack:
            cand, fixed = stack.pop()
            self.expansions += 1
            if self.expansions > budget:
                raise EnumerationIncompleteError(
                    scope=scope,
                    budget=budget,
                    partial=[from_mask(mask) for mask in _drop_subsets(found)],
                )

            cand = _propagate(adj, cand, fixed)
            if cand is None:
                continue
            if any(cand & ~club == 0 for club in found):
                continue

            pair = _first_conflict(adj, cand)
            if pair is None:
                found.append(cand)
                continue
            a, _ = pair
            bit = 1 << a
            # LIFO: the "a fixed" branch is explored first
            stack.append((cand & ~bit, fixed))
            stack.append((cand, fixed | bit))

    def _check_maximal(
        self,
        adj: Sequence[int],
        full: int,
        clubs: Sequence[int],
        scope: Scope,
    ) -> None:
        for club in clubs:
            for x in iter_bits(full & ~club):
                if is_two_club_mask(adj, club | (1 << x)):
                    logger.error("non-maximal 2-club survived", scope=scope, node=x)
                    raise InvariantViolationError(
                        "every reported 2-club is maximal",
                        details={"scope": scope, "nodes": list(from_mask(club)), "extends_by": x},
                    )


def _propagate(adj: Sequence[int], cand: int, fixed: int) -> Optional[int]:
    """Drop candidates too far from a fixed node; None when fixed nodes clash."""
    while True:
        kept = cand
        for f in iter_bits(fixed):
            kept &= reach_within(adj, f, kept)
        if kept & fixed != fixed:
            return None
        if kept == cand:
            return cand
        cand = kept


def _first_conflict(adj: Sequence[int], cand: int) -> Optional[Tuple[int, int]]:
    for a in iter_bits(cand):
        missing = cand & ~reach_within(adj, a, cand)
        if missing:
            return a, (missing & -missing).bit_length() - 1
    return None


def _drop_subsets(masks: Sequence[int]) -> List[int]:
    kept: List[int] = []
    for mask in sorted(set(masks), key=lambda m: -bin(m).count("1")):
        if not any(mask & ~other == 0 for other in kept):
            kept.append(mask)
    return kept
