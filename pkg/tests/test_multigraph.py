import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifgraph.errors import VertexOutOfRange
from motifgraph.motif import preset, total_copies, unrank_copy
from motifgraph.multigraph import MotifMultiGraph, Placement, graph_from_edges


def test_parallel_edges_do_not_raise_degree():
    H = preset("path:3")
    g = MotifMultiGraph(5, H)
    new1 = g.add_placement(Placement.from_motif(H, (0, 1, 2)))
    new2 = g.add_placement(Placement.from_motif(H, (1, 0, 2)))
    assert sorted(new1) == [(0, 1), (1, 2)]
    assert new2 == [(0, 2)]
    assert g.multiplicity[(0, 1)] == 2
    assert g.degrees() == [2, 2, 2, 0, 0]
    assert g.simple_edge_count() == 3
    assert g.total_multiplicity() == 4
    assert g.isolated_count() == 2
    assert g.min_degree() == 0


def test_vertex_range_checked():
    g = MotifMultiGraph(3, preset("edge"))
    with pytest.raises(VertexOutOfRange):
        g.add_placement(Placement((0, 3), ((0, 3),)))


def test_json_round_trip_keeps_motif():
    H = preset("triangle")
    g = MotifMultiGraph(6, H)
    for i in (0, 5, 11):
        g.add_placement(unrank_copy(6, H, i))
    h = MotifMultiGraph.from_json(g.to_json())
    assert h.placements == g.placements
    assert h.motif.edges == H.edges
    assert h.adj == g.adj


def test_json_without_motif_needs_one():
    g = graph_from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        MotifMultiGraph.from_json(g.to_json())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["edge", "path:3", "triangle", "star:3"]), st.integers(4, 9), st.integers(0, 2**32))
def test_incremental_counters_match_recount(name, n, seed):
    H = preset(name)
    if n < H.k:
        return
    rnd = random.Random(seed)
    g = MotifMultiGraph(n, H)
    N = total_copies(n, H)
    for _ in range(rnd.randint(0, 12)):
        g.add_placement(unrank_copy(n, H, rnd.randrange(N)))
        degs = [len({w for p in g.placements for e in p.edges if v in e for w in e if w != v}) for v in range(n)]
        assert g.degrees() == degs
        assert g.count_degree_below(1) == sum(d < 1 for d in degs)
        assert g.count_degree_below(2) == sum(d < 2 for d in degs)
        assert g.count_degree_below(3) == sum(d < 3 for d in degs)
        assert g.min_degree() == min(degs)
        assert g.total_multiplicity() == len(g.placements) * H.num_edges
    c = g.copy()
    c.add_placement(unrank_copy(n, H, 0))
    assert len(c.placements) == len(g.placements) + 1
