"""Unit tests for borough detection, the outback and touch points."""

import pytest

from closecomm.error_handling import InvariantViolationError, ValidationError
from closecomm.graph.boroughs import (
    chain_cycles,
    detect_boroughs,
    edge_removal_diameter_delta,
    locate_bicomponent,
    outback,
    outback_touch_points,
    touch_points,
)
from closecomm.graph.core import bicomponents, diameter_of
from tests.conftest import from_pairs


def labels(g, borough):
    return set(g.labels(borough.nodes))


class TestChainCycles:
    """Test the union-find grouping step."""

    def test_shared_edge_joins(self):
        groups = chain_cycles([{(0, 1), (1, 2), (0, 2)}, {(1, 2), (2, 3), (1, 3)}])
        assert groups == [[0, 1]]

    def test_shared_node_does_not_join(self):
        groups = chain_cycles([{(0, 1), (1, 2), (0, 2)}, {(2, 3), (3, 4), (2, 4)}])
        assert groups == [[0], [1]]

    def test_transitive_chain(self):
        """Test that a chain of edge-sharing cycles forms one group."""
        a = {(0, 1), (1, 2), (0, 2)}
        b = {(1, 2), (2, 3), (1, 3)}
        c = {(2, 3), (3, 4), (2, 4)}
        assert chain_cycles([a, c, b]) == [[0, 1, 2]]

    def test_edge_orientation_ignored(self):
        assert chain_cycles([{(1, 0), (1, 2), (0, 2)}, {(0, 1), (0, 3), (1, 3)}]) == [[0, 1]]


class TestDetectBoroughs:
    """Test detect_boroughs on canonical graphs."""

    def test_karate_two_boroughs(self, karate):
        """Test the karate club borough structure."""
        boroughs = detect_boroughs(karate)
        assert len(boroughs) == 2
        assert labels(karate, boroughs[1]) == {"1", "5", "6", "7", "11", "17"}
        assert boroughs[0].size == 28
        assert boroughs[0].diameter == 4
        assert boroughs[1].diameter == 2

    def test_petersen_single_borough(self, petersen):
        """Test that the Petersen pentagons chain into one borough."""
        boroughs = detect_boroughs(petersen)
        assert len(boroughs) == 1
        assert boroughs[0].size == 10
        assert len(boroughs[0].edge_set) == 15
        assert boroughs[0].cycle_counts == {3: 0, 4: 0, 5: 12}

    def test_acyclic_graph(self, path5):
        assert detect_boroughs(path5) == []

    def test_hexagon_has_none(self, hexagon):
        assert detect_boroughs(hexagon) == []

    def test_bowtie_two_boroughs(self, bowtie):
        """Test that node-sharing triangles stay separate."""
        boroughs = detect_boroughs(bowtie)
        assert [b.id for b in boroughs] == [0, 1]
        assert labels(bowtie, boroughs[0]) == {"a", "b", "x"}
        assert labels(bowtie, boroughs[1]) == {"c", "d", "x"}

    def test_sorted_by_size_then_nodes(self):
        """Test descending size with node-list tie break."""
        g = from_pairs(["a-b", "b-c", "a-c", "d-e", "e-f", "f-g", "g-d"])
        boroughs = detect_boroughs(g)
        assert [b.size for b in boroughs] == [4, 3]

    def test_edge_sets_disjoint(self, karate):
        boroughs = detect_boroughs(karate)
        union = set().union(*(b.edge_set for b in boroughs))
        assert sum(len(b.edge_set) for b in boroughs) == len(union)

    def test_nonseparable_two_club_is_one_borough(self, pentagon, square, k4):
        """Test that a graph which is a nonseparable 2-club forms one borough."""
        for g in (pentagon, square, k4):
            boroughs = detect_boroughs(g)
            assert len(boroughs) == 1
            assert boroughs[0].edge_set == frozenset(g.edges())

    def test_subgraph_is_edge_induced(self):
        """Test that an edge owned by another borough stays out of the subgraph."""
        ladder = [f"t{i}-t{i + 1}" for i in range(5)] + [f"b{i}-b{i + 1}" for i in range(5)]
        ladder += [f"t{i}-b{i}" for i in range(6)]
        g = from_pairs(ladder + ["t0-t5", "t0-w", "t5-w"])
        boroughs = detect_boroughs(g)
        assert [b.size for b in boroughs] == [12, 3]
        ladder_borough = boroughs[0]
        assert ladder_borough.subgraph.m == 16
        assert ladder_borough.diameter == 6
        assert diameter_of(g, ladder_borough.nodes) < 6
        assert touch_points(boroughs) == {g.index_of("t0"): [0, 1], g.index_of("t5"): [0, 1]}


class TestOutback:
    """Test outback classification."""

    def test_hexagon_all_long_cycle(self, hexagon):
        report = outback(hexagon, [])
        assert len(report.non_basic_edges) == 6
        assert report.bridges == frozenset()
        assert len(report.long_cycle_edges) == 6

    def test_pendant_is_bridge(self, triangle_with_tail):
        g = triangle_with_tail
        report = outback(g, detect_boroughs(g))
        pendant = (g.index_of("c"), g.index_of("d"))
        assert report.non_basic_edges == frozenset({pendant})
        assert report.bridges == frozenset({pendant})

    def test_karate_outback(self, karate):
        report = outback(karate, detect_boroughs(karate))
        assert len(report.non_basic_edges) == 1
        assert len(report.bridges) == 1

    def test_outback_is_complement(self, random_corpus):
        for g in random_corpus[:100]:
            boroughs = detect_boroughs(g)
            report = outback(g, boroughs)
            covered = set().union(*(b.edge_set for b in boroughs)) if boroughs else set()
            assert report.non_basic_edges == frozenset(g.edges()) - covered
            assert report.bridges | report.long_cycle_edges == report.non_basic_edges


class TestTouchPoints:
    """Test touch points between boroughs and with the outback."""

    def test_bowtie(self, bowtie):
        assert touch_points(detect_boroughs(bowtie)) == {bowtie.index_of("x"): [0, 1]}

    def test_disjoint_triangles(self):
        g = from_pairs(["a-b", "b-c", "a-c", "d-e", "e-f", "d-f"])
        assert touch_points(detect_boroughs(g)) == {}

    def test_karate_node_one(self, karate):
        boroughs = detect_boroughs(karate)
        assert touch_points(boroughs) == {karate.index_of("1"): [0, 1]}

    def test_outback_touch(self, triangle_with_tail):
        g = triangle_with_tail
        boroughs = detect_boroughs(g)
        report = outback(g, boroughs)
        assert outback_touch_points(boroughs, report) == {g.index_of("c"): [0]}


class TestLocateBicomponent:
    """Test borough-to-block containment."""

    def test_each_borough_in_one_block(self, karate):
        blocks, _ = bicomponents(karate)
        hosts = [locate_bicomponent(b, blocks) for b in detect_boroughs(karate)]
        assert len(set(hosts)) == 2

    def test_missing_block_is_invariant_error(self, triangle):
        borough = detect_boroughs(triangle)[0]
        with pytest.raises(InvariantViolationError):
            locate_bicomponent(borough, [])


class TestEdgeRemovalDiameterDelta:
    """Test diameter change after deleting one borough edge."""

    def test_pentagon(self, pentagon):
        borough = detect_boroughs(pentagon)[0]
        assert edge_removal_diameter_delta(borough, (0, 1)) == (2, 4)

    def test_k4(self, k4):
        borough = detect_boroughs(k4)[0]
        assert edge_removal_diameter_delta(borough, (1, 0)) == (1, 2)

    def test_stretch_by_three(self, fig_stretch):
        """Test the borough whose diameter grows from 3 to 6."""
        g = fig_stretch
        boroughs = detect_boroughs(g)
        assert len(boroughs) == 1
        edge = (g.index_of("b"), g.index_of("c"))
        assert edge_removal_diameter_delta(boroughs[0], edge) == (3, 6)

    def test_edge_not_in_borough(self, triangle_with_tail):
        g = triangle_with_tail
        borough = detect_boroughs(g)[0]
        with pytest.raises(ValidationError):
            edge_removal_diameter_delta(borough, (g.index_of("c"), g.index_of("d")))

