import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifgraph.errors import (
    DomainError,
    DuplicateEdge,
    EmptyMotif,
    IndexOutOfRange,
    IsolatedVertex,
    MotifError,
    MotifTooLarge,
    RangeError,
    SelfLoop,
)
from motifgraph.motif import (
    colex_rank,
    colex_unrank,
    delta_d,
    f_k,
    iter_copies,
    load_motif,
    m_r,
    parse_motif,
    preset,
    q_r,
    rank_copy,
    read_edge_list,
    threshold_params,
    total_copies,
    unrank_copy,
    unrank_many,
)
from oracles import copies_by_brute_force

PRESETS = ["edge", "triangle", "path:3", "path:4", "star:3", "cycle:4", "cycle:5", "clique:4"]


def test_preset_shapes():
    assert preset("edge").k == 2
    assert preset("star:3").k == 4 and preset("star:3").num_edges == 3
    assert preset("clique:4").num_edges == 6
    assert preset("cycle:5").min_deg == 2
    assert preset("path:4").is_path() and not preset("cycle:4").is_path()


@pytest.mark.parametrize("name", PRESETS)
def test_orbit_stabiliser(name):
    H = preset(name)
    assert H.aut * H.num_embeddings == math.factorial(H.k)


def test_relabelling_is_canonical():
    a = parse_motif([(10, 20), (20, 30)])
    b = parse_motif([("x", "y"), ("y", "z")])
    assert a.edges == b.edges == ((0, 1), (1, 2))


def test_disconnected_motif_accepted():
    H = parse_motif([(0, 1), (2, 3)])
    assert not H.is_connected()
    assert H.aut == 8


@pytest.mark.parametrize(
    "edges, exc",
    [
        ([], EmptyMotif),
        ([(0, 0)], SelfLoop),
        ([(0, 1), (1, 0)], DuplicateEdge),
        ([(i, i + 1) for i in range(9)], MotifTooLarge),
    ],
)
def test_parse_errors(edges, exc):
    with pytest.raises(exc):
        parse_motif(edges)


def test_declared_isolated_vertex():
    with pytest.raises(IsolatedVertex):
        parse_motif([(0, 1)], vertices=[0, 1, 2])


def test_edge_list_text(tmp_path):
    text = "# a path\n0 1\n1 2\n\n"
    assert read_edge_list(text) == [(0, 1), (1, 2)]
    with pytest.raises(MotifError):
        read_edge_list("0 1 2\n")
    f = tmp_path / "p.edges"
    f.write_text(text)
    assert load_motif(str(f)).edges == preset("path:3").edges


def test_unknown_preset():
    with pytest.raises(MotifError):
        preset("wheel:5")


@pytest.mark.parametrize("name", ["edge", "path:3", "triangle", "star:3"])
def test_m_r_q_r_small(name):
    H = preset(name)
    for n in range(H.k, 8):
        copies = copies_by_brute_force(n, H)
        for r in range(n + 1):
            first = set(range(r))
            meet = sum(any(x in first for e in c for x in e) for c in copies)
            inside = sum(all(x in first for e in c for x in e) for c in copies)
            assert m_r(n, H, r) == meet
            assert q_r(n, H, r) == meet - inside


def test_counting_edges_cases():
    H = preset("triangle")
    assert m_r(10, H, 0) == 0
    assert m_r(10, H, 10) == total_copies(10, H)
    assert q_r(10, H, 10) == 0
    assert total_copies(2, H) == 0
    with pytest.raises(RangeError):
        m_r(5, H, 6)
    with pytest.raises(RangeError):
        q_r(5, H, -1)


def test_f_k():
    assert f_k(1.0, 2) == pytest.approx(0.0)
    # small alpha: f_k -> 1
    assert f_k(1e-9, 3) == pytest.approx(1.0, rel=1e-6)
    assert f_k(0.5, 2) == pytest.approx((1 - 0.25 - 0.25) / 1.0)
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            f_k(bad, 3)
    with pytest.raises(DomainError):
        f_k(0.5, 1)


def test_delta_d_and_thresholds():
    assert delta_d(preset("triangle"), 2) == 0
    assert delta_d(preset("triangle"), 3) == 1
    assert delta_d(preset("path:3"), 2) == 1
    assert delta_d(preset("edge"), 1) == 0
    tp = threshold_params(500, preset("triangle"), 2)
    assert tp.m1 == m_r(500, preset("triangle"), 1)
    assert tp.p_minus < tp.p_plus
    centre = math.log(500) / tp.m1
    assert tp.p_minus < centre < tp.p_plus
    with pytest.raises(DomainError):
        threshold_params(2, preset("edge"), 1)


def test_colex_small():
    subsets = [colex_unrank(r, 2) for r in range(math.comb(5, 2))]
    assert subsets[:4] == [[0, 1], [0, 2], [1, 2], [0, 3]]
    assert all(colex_rank(s) == r for r, s in enumerate(subsets))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**40))
def test_colex_round_trip_bigint(k, rank):
    s = colex_unrank(rank, k)
    assert s == sorted(set(s))
    assert colex_rank(s) == rank


@pytest.mark.parametrize("name", PRESETS)
def test_copy_index_bijection(name):
    H = preset(name)
    n = 7
    seen = set()
    for i, p in enumerate(iter_copies(n, H)):
        assert rank_copy(n, H, p) == i
        seen.add(p.edges)
    assert len(seen) == total_copies(n, H)
    assert seen == {tuple(sorted(tuple(sorted(e)) for e in c)) for c in copies_by_brute_force(n, H)}


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PRESETS), st.integers(10, 10**4), st.data())
def test_unrank_large_n(name, n, data):
    H = preset(name)
    N = total_copies(n, H)
    i = data.draw(st.integers(0, N - 1))
    p = unrank_copy(n, H, i)
    assert len(set(p.vertices)) == H.k and max(p.vertices) < n
    assert rank_copy(n, H, p) == i


def test_unrank_many_matches_single():
    for name in PRESETS:
        H = preset(name)
        N = total_copies(8, H)
        assert unrank_many(8, H, range(N)) == [unrank_copy(8, H, i) for i in range(N)]
    with pytest.raises(IndexOutOfRange):
        unrank_many(8, preset("edge"), [0, 28])


def test_unrank_out_of_range():
    with pytest.raises(IndexOutOfRange):
        unrank_copy(5, preset("edge"), 10)
    with pytest.raises(IndexOutOfRange):
        unrank_copy(5, preset("edge"), -1)
