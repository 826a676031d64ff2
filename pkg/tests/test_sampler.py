import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifgraph.errors import Exhausted, ProbabilityRange, TooManyCopies
from motifgraph.motif import preset, rank_copy, total_copies
from motifgraph.sampler import (
    SeededRng,
    _binomial_btrd,
    _binomial_inversion,
    binomial_exact,
    process_indices,
    process_stream,
    sample_binomial,
    sample_distinct,
    sample_uniform,
)


def test_streams_are_reproducible_and_distinct():
    a = [SeededRng(7, 3).randbelow(10**30) for _ in range(3)]
    b = [SeededRng(7, 3).randbelow(10**30) for _ in range(3)]
    c = [SeededRng(7, 4).randbelow(10**30) for _ in range(3)]
    assert a == b and a != c


def test_randbelow_bigint_range():
    rng = SeededRng(1, 0)
    N = 3 * 2**70 + 1
    xs = [rng.randbelow(N) for _ in range(2000)]
    assert all(0 <= x < N for x in xs)
    # top bit is used about a third of the time
    frac = sum(x >= 2**71 for x in xs) / len(xs)
    assert 0.25 < frac < 0.42


def _moments(draws):
    arr = np.array(draws, dtype=float)
    return arr.mean(), arr.var(ddof=1)


@pytest.mark.parametrize("N, p", [(2**70, 3e-21), (2**70, 4e-20), (10**25, 1e-22)])
def test_big_binomial_moments(N, p):
    rng = SeededRng(11, 0)
    draws = [binomial_exact(N, p, rng) for _ in range(4000)]
    mu = N * p
    mean, var = _moments(draws)
    assert abs(mean - mu) < 4 * math.sqrt(mu / 4000)
    assert abs(var - mu) < 0.15 * mu + 0.5


def test_btrd_matches_poisson_shape():
    rng = SeededRng(5, 1)
    N, p = 2**80, 50 / 2**80
    draws = [_binomial_btrd(N, p, rng) for _ in range(6000)]
    mean, var = _moments(draws)
    assert abs(mean - 50) < 4 * math.sqrt(50 / 6000)
    assert 42 < var < 58
    # tail frequencies against the Poisson(50) limit
    hist = Counter(draws)
    lo = sum(v for k, v in hist.items() if k <= 40) / 6000
    assert abs(lo - 0.0861) < 0.02


def test_inversion_small_mean():
    rng = SeededRng(5, 2)
    draws = [_binomial_inversion(2**70, 2.0 / 2**70, rng) for _ in range(6000)]
    zeros = draws.count(0) / 6000
    assert abs(zeros - math.exp(-2)) < 0.02


def test_binomial_edge_cases():
    rng = SeededRng(0)
    assert binomial_exact(0, 0.5, rng) == 0
    assert binomial_exact(10**30, 0.0, rng) == 0
    assert binomial_exact(10**30, 1.0, rng) == 10**30
    x = binomial_exact(2**70, 1 - 1e-21, rng)
    assert 2**70 - x < 50
    with pytest.raises(ProbabilityRange):
        binomial_exact(5, 1.5, rng)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5000), st.data(), st.integers(0, 1000))
def test_sample_distinct_properties(N, data, seed):
    M = data.draw(st.integers(0, N))
    xs = sample_distinct(N, M, SeededRng(seed))
    assert len(xs) == M == len(set(xs))
    assert all(0 <= x < N for x in xs)


def test_sample_distinct_uniform():
    counts = Counter()
    for t in range(3000):
        counts.update(sample_distinct(10, 3, SeededRng(2, t)))
    expected = 3000 * 3 / 10
    chi2 = sum((counts[i] - expected) ** 2 / expected for i in range(10))
    assert chi2 < 27.9  # 99.9% point of chi-square with 9 dof


def test_sample_distinct_too_many():
    with pytest.raises(TooManyCopies):
        sample_distinct(3, 4, SeededRng(0))


def test_uniform_model_has_m_distinct_copies():
    H = preset("path:3")
    g = sample_uniform(20, H, 50, SeededRng(3))
    assert len(g.placements) == 50
    assert len({rank_copy(20, H, p) for p in g.placements}) == 50
    with pytest.raises(TooManyCopies):
        sample_uniform(4, H, total_copies(4, H) + 1, SeededRng(0))
    with pytest.raises(ValueError):
        sample_uniform(4, H, -1, SeededRng(0))


def test_binomial_model_copy_count():
    H = preset("triangle")
    n, p = 30, 0.01
    N = total_copies(n, H)
    counts = [len(sample_binomial(n, H, p, SeededRng(9, t)).placements) for t in range(400)]
    mean = sum(counts) / 400
    assert abs(mean - N * p) < 4 * math.sqrt(N * p * (1 - p) / 400)
    with pytest.raises(ProbabilityRange):
        sample_binomial(5, H, -0.1, SeededRng(0))


def test_binomial_model_copy_uniformity():
    H = preset("edge")
    counts = Counter()
    for t in range(2000):
        g = sample_binomial(5, H, 0.3, SeededRng(4, t))
        counts.update(p.edges for p in g.placements)
    expected = 2000 * 0.3
    assert len(counts) == 10
    assert all(abs(c - expected) < 5 * math.sqrt(expected) for c in counts.values())


@pytest.mark.parametrize("N", [1, 2, 7, 100, 1000])
def test_process_indices_is_permutation(N):
    xs = list(process_indices(N, SeededRng(1, N)))
    assert sorted(xs) == list(range(N))


def test_process_first_position_uniform():
    counts = Counter(next(iter(process_indices(6, SeededRng(8, t)))) for t in range(3000))
    chi2 = sum((counts[i] - 500) ** 2 / 500 for i in range(6))
    assert chi2 < 20.5  # 99.9% point, 5 dof


def test_process_stream_exhausts():
    H = preset("triangle")
    s = process_stream(4, H, SeededRng(0))
    seen = [s.next_placement().edges for _ in range(total_copies(4, H))]
    assert len(set(seen)) == 4
    with pytest.raises(Exhausted):
        s.next_placement()
    assert list(process_stream(4, H, SeededRng(0)))[:2] == [
        p for p in list(process_stream(4, H, SeededRng(0)))[:2]
    ]
