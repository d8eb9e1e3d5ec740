"""
Unit Tests for 2-club classification and enumeration

Covers the diameter-2 predicate, coterie / social circle / hamlet
classification, the branching enumerator and its oracle, the enumerator
factory, and global-versus-borough reconciliation.

Run with: pytest tests/unit/test_two_clubs.py -v
"""

import networkx as nx
import pytest

from closecomm.analysis import (
    GLOBAL_SCOPE,
    BranchingEnumerator,
    BruteForceEnumerator,
    ClubType,
    EnumeratorFactory,
    TwoClub,
    brute_force_two_clubs,
    classify,
    create_enumerator,
    enumerate_two_clubs,
    is_two_club,
    oversized_clubs,
    reconcile_with_graph,
)
from closecomm.error_handling import EnumerationIncompleteError, ValidationError
from closecomm.graph.boroughs import detect_boroughs
from tests.conftest import (
    FIG_CHAINED_CIRCLE,
    FIG_CHAINED_HAMLET,
    from_networkx,
    from_pairs,
    node_sets,
)


class TestIsTwoClub:
    """Test the diameter-2 predicate."""

    def test_pentagon(self, pentagon):
        assert is_two_club(pentagon, range(5))

    def test_hexagon(self, hexagon):
        assert not is_two_club(hexagon, range(6))

    def test_path_p4(self, path5):
        assert not is_two_club(path5, range(4))

    def test_distance_inside_subset(self, square):
        """Test that opposite C4 corners without a common member fail."""
        assert not is_two_club(square, [0, 2])
        assert is_two_club(square, [0, 1, 2])

    def test_empty_set_rejected(self, square):
        with pytest.raises(ValidationError):
            is_two_club(square, [])


class TestClassify:
    """Test coterie, social circle and hamlet classification."""

    def test_k4_is_coterie(self, k4):
        result = classify(k4, range(4))
        assert result.club_type is ClubType.COTERIE
        assert result.centers == (0, 1, 2, 3)
        assert not result.separable

    def test_square_is_social_circle(self, square):
        """Test that every C4 edge is a central pair."""
        result = classify(square, range(4))
        assert result.club_type is ClubType.SOCIAL_CIRCLE
        assert len(result.central_pairs) == 4

    def test_pentagon_is_hamlet(self, pentagon):
        result = classify(pentagon, range(5))
        assert result.club_type is ClubType.HAMLET
        assert result.centers == ()
        assert result.central_pairs == ()

    def test_star_is_separable_coterie(self, star):
        result = classify(star, range(4))
        assert result.club_type is ClubType.COTERIE
        assert result.centers == (0,)
        assert result.separable

    def test_fig_hamlet(self, fig_hamlet):
        assert classify(fig_hamlet, range(7)).club_type is ClubType.HAMLET

    def test_fig_social_circle(self):
        """Test that adding b-d to the hamlet gives a central pair b-d."""
        g = from_pairs(["a-b", "a-d", "b-c", "c-g", "c-f", "c-e", "d-f", "d-g", "e-f", "d-e", "b-d"])
        result = classify(g, range(7))
        assert result.club_type is ClubType.SOCIAL_CIRCLE
        assert (g.index_of("b"), g.index_of("d")) in result.central_pairs

    def test_twinned_coterie(self):
        """Test two twin egos a, b over three leaves."""
        g = from_pairs(["a-b", "a-c", "a-d", "a-e", "b-c", "b-d", "b-e"])
        result = classify(g, range(5))
        assert result.club_type is ClubType.COTERIE
        assert result.centers == (0, 1)
        assert not result.separable

    def test_separable_fan(self):
        """Test a single center with two triangles and two pendants."""
        g = from_pairs(["a-b", "a-c", "a-d", "a-e", "a-f", "a-g", "b-c", "f-e"])
        result = classify(g, range(7))
        assert result.club_type is ClubType.COTERIE
        assert result.centers == (0,)
        assert result.separable

    def test_not_a_two_club(self, hexagon):
        with pytest.raises(ValidationError):
            classify(hexagon, range(6))

    def test_sst_diameter(self):
        assert [t.sst_diameter for t in ClubType] == [2, 3, 4]


class TestBranchingEnumerator:
    """Test the branching search directly."""

    def test_petersen_whole_graph(self, petersen, settings):
        sets = BranchingEnumerator(settings).maximal_sets(petersen)
        assert sets == [tuple(range(10))]

    def test_hexagon_paths(self, hexagon, settings):
        """Test that C6 has six maximal induced P3s."""
        sets = BranchingEnumerator(settings).maximal_sets(hexagon)
        assert len(sets) == 6
        assert all(len(s) == 3 for s in sets)

    def test_degree_seed_order_same_result(self, karate, settings):
        """Test that seed order does not change the result set."""
        by_degree = settings.model_copy(update={"seed_order": "degree"})
        assert (
            BranchingEnumerator(settings).maximal_sets(karate)
            == BranchingEnumerator(by_degree).maximal_sets(karate)
        )

    def test_budget_exhaustion(self, karate, settings):
        """Test that a tiny budget raises with partial results flagged."""
        tight = settings.model_copy(update={"branch_budget": 5})
        enumerator = BranchingEnumerator(tight)
        with pytest.raises(EnumerationIncompleteError) as exc:
            enumerator.maximal_sets(karate, scope=GLOBAL_SCOPE)
        assert exc.value.incomplete is True
        assert exc.value.scope == GLOBAL_SCOPE
        assert exc.value.exit_code == 2
        assert isinstance(exc.value.partial, list)

    def test_counts_expansions(self, pentagon, settings):
        enumerator = BranchingEnumerator(settings)
        enumerator.maximal_sets(pentagon)
        assert enumerator.expansions >= 1


class TestBruteForceEnumerator:
    """Test the exhaustive oracle."""

    def test_pentagon(self, pentagon):
        clubs = brute_force_two_clubs(pentagon)
        assert [c.nodes for c in clubs] == [(0, 1, 2, 3, 4)]
        assert clubs[0].club_type is ClubType.HAMLET

    def test_hexagon_raw_and_floored(self, hexagon, settings):
        """Test six raw P3 clubs, all removed by the edge floor."""
        assert len(BruteForceEnumerator(settings).maximal_sets(hexagon)) == 6
        assert brute_force_two_clubs(hexagon, settings) == []

    def test_fig_hamlet_unique(self, fig_hamlet):
        clubs = brute_force_two_clubs(fig_hamlet)
        assert [c.nodes for c in clubs] == [tuple(range(7))]
        assert clubs[0].club_type is ClubType.HAMLET

    def test_size_limit(self, settings):
        g = from_networkx(nx.path_graph(17))
        with pytest.raises(ValidationError):
            BruteForceEnumerator(settings).maximal_sets(g)


class TestEnumeratorFactory:
    """Test enumerator selection."""

    def test_available(self):
        assert EnumeratorFactory.list_available() == ["branching", "brute_force"]

    def test_create(self, settings):
        assert isinstance(create_enumerator("branching", settings), BranchingEnumerator)
        assert isinstance(create_enumerator("brute_force", settings), BruteForceEnumerator)

    def test_fresh_instances(self):
        assert create_enumerator() is not create_enumerator()

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            create_enumerator("annealing")


class TestEnumerateTwoClubs:
    """Test floored, classified enumeration per scope."""

    def test_petersen_single_hamlet(self, petersen):
        clubs = enumerate_two_clubs(petersen)
        assert len(clubs) == 1
        assert clubs[0].club_type is ClubType.HAMLET
        assert clubs[0].size == 10
        assert clubs[0].edge_count == 15

    def test_triangle_single_coterie(self, triangle):
        clubs = enumerate_two_clubs(triangle)
        assert [(c.nodes, c.club_type, c.separable) for c in clubs] == [
            ((0, 1, 2), ClubType.COTERIE, False)
        ]

    def test_too_small_scope(self):
        g = from_pairs(["a-b"])
        with pytest.raises(ValidationError):
            enumerate_two_clubs(g)

    def test_floor_drops_not_shrinks(self, star, settings):
        """Test that a club below the floor disappears entirely."""
        strict = settings.model_copy(update={"min_club_nodes": 5})
        assert enumerate_two_clubs(star, settings=strict) == []
        assert len(enumerate_two_clubs(star, settings=settings)) == 1

    def test_borough_scope_uses_host_indices(self, karate):
        """Test the small karate borough: one social circle, host labels."""
        small = detect_boroughs(karate)[1]
        clubs = enumerate_two_clubs(karate, small)
        assert len(clubs) == 1
        assert clubs[0].host == small.id
        assert clubs[0].club_type is ClubType.SOCIAL_CIRCLE
        assert karate.labels(clubs[0].nodes) == ["1", "5", "6", "7", "11", "17"]

    def test_sorted_by_size(self, karate):
        clubs = enumerate_two_clubs(karate, detect_boroughs(karate)[0])
        assert [c.size for c in clubs] == sorted(c.size for c in clubs)

    def test_borough_budget_partial_in_host_indices(self, karate, settings):
        large = detect_boroughs(karate)[0]
        tight = settings.model_copy(update={"branch_budget": 20})
        with pytest.raises(EnumerationIncompleteError) as exc:
            enumerate_two_clubs(karate, large, tight)
        assert exc.value.scope == large.id
        for nodes in exc.value.partial:
            assert set(nodes) <= large.node_set

    def test_to_dict_labels(self, triangle):
        data = enumerate_two_clubs(triangle)[0].to_dict(triangle)
        assert data["scope"] == "global"
        assert data["type"] == "coterie"
        assert data["nodes"] == ["0", "1", "2"]
        assert data["centers"] == ["0", "1", "2"]

    def test_oversized_clubs_are_not_coteries(self, petersen):
        clubs = enumerate_two_clubs(petersen)
        big = oversized_clubs(clubs, max_degree=3)
        assert big and all(c.club_type is not ClubType.COTERIE for c in big)

    def test_matches_oracle_on_figure(self, fig_chained):
        """Test branching against the oracle on the 15-node chained borough."""
        fast = enumerate_two_clubs(fig_chained)
        slow = brute_force_two_clubs(fig_chained)
        assert [(c.nodes, c.club_type) for c in fast] == [(c.nodes, c.club_type) for c in slow]


class TestReconcile:
    """Test global-versus-borough reconciliation."""

    def test_triangle(self, triangle):
        g = triangle
        borough = detect_boroughs(g)[0]
        report = reconcile_with_graph(enumerate_two_clubs(g), enumerate_two_clubs(g, borough))
        assert report.consistent
        assert len(report.coterie_hosts) == 1

    def test_chained_figure(self, fig_chained):
        """Test that the hamlet and social circle appear at both levels."""
        g = fig_chained
        boroughs = detect_boroughs(g)
        assert len(boroughs) == 1
        global_clubs = enumerate_two_clubs(g)
        borough_clubs = enumerate_two_clubs(g, boroughs[0])
        report = reconcile_with_graph(global_clubs, borough_clubs)
        assert report.consistent
        for clubs in (global_clubs, borough_clubs):
            found = {tuple(g.labels(c.nodes)): c.club_type for c in clubs}
            assert found[FIG_CHAINED_HAMLET] is ClubType.HAMLET
            assert found[FIG_CHAINED_CIRCLE] is ClubType.SOCIAL_CIRCLE

    def test_detects_missing_hamlet(self, pentagon):
        hamlet = enumerate_two_clubs(pentagon)
        report = reconcile_with_graph(hamlet, [])
        assert not report.consistent
        assert report.missing_in_boroughs == [(0, 1, 2, 3, 4)]

    def test_detects_type_mismatch(self):
        nodes = (0, 1, 2, 3)
        a = TwoClub(nodes=nodes, club_type=ClubType.HAMLET, separable=False)
        b = TwoClub(nodes=nodes, club_type=ClubType.SOCIAL_CIRCLE, separable=False, host=0)
        report = reconcile_with_graph([a], [b])
        assert report.type_mismatches == [nodes]

    def test_coterie_inside_larger_global_coterie(self):
        """Test a reduced borough coterie covered by a shared center."""
        inner = TwoClub(nodes=(0, 1, 2), club_type=ClubType.COTERIE, separable=False, centers=(0,), host=0)
        outer = TwoClub(nodes=(0, 1, 2, 3), club_type=ClubType.COTERIE, separable=True, centers=(0,))
        report = reconcile_with_graph([outer], [inner])
        assert report.consistent
        assert report.coterie_hosts == {(0, 1, 2): (0, 1, 2, 3)}

    def test_coterie_without_shared_center(self):
        inner = TwoClub(nodes=(0, 1, 2), club_type=ClubType.COTERIE, separable=False, centers=(1,), host=0)
        outer = TwoClub(nodes=(0, 1, 2, 3), club_type=ClubType.COTERIE, separable=True, centers=(0,))
        report = reconcile_with_graph([outer], [inner])
        assert report.uncovered_coteries == [(0, 1, 2)]

    def test_karate(self, karate):
        g = karate
        boroughs = detect_boroughs(g)
        per_borough = [c for b in boroughs for c in enumerate_two_clubs(g, b)]
        report = reconcile_with_graph(enumerate_two_clubs(g), per_borough)
        assert report.consistent
        assert node_sets(g, [c for c in per_borough if c.club_type is ClubType.HAMLET]) == [
            ("1", "3", "25", "28", "29", "32", "33", "34")
        ]
