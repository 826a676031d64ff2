"""Seeded samplers for G(H,n,p), the uniform model, and the motif process.

The binomial model is drawn count-then-select: ``M ~ Binomial(N, p)`` where
``N = total_copies(n, H)``, then ``M`` distinct copy indices uniformly at
random.  ``N`` may exceed 64 bits, so index draws fall back to a
rejection sampler on raw random bytes when needed.
"""
from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .errors import Exhausted, ProbabilityRange, TooManyCopies
from .motif import Motif, total_copies, unrank_copy, unrank_many
from .multigraph import MotifMultiGraph, Placement

_INT64_SAFE = 2**62
_BLOCK = 256


class SeededRng:
    """Random stream fully determined by ``(master_seed, stream_id)``.

    Streams come from ``numpy.random.SeedSequence`` spawn keys over PCG64, so
    distinct stream ids give independent sequences and per-trial streams
    do not depend on how trials are scheduled.
    """

    def __init__(self, master_seed: int, stream_id: int | tuple[int, ...] = 0):
        if isinstance(stream_id, int):
            stream_id = (stream_id,)
        self.master_seed = int(master_seed)
        self.stream_id = tuple(int(s) for s in stream_id)
        ss = np.random.SeedSequence(self.master_seed & (2**64 - 1), spawn_key=self.stream_id)
        self.gen = np.random.Generator(np.random.PCG64(ss))

    def __repr__(self) -> str:
        return f"SeededRng(master_seed={self.master_seed}, stream_id={self.stream_id})"

    def random(self) -> float:
        return float(self.gen.random())

    def randbelow(self, N: int) -> int:
        """Uniform integer in ``[0, N)`` for arbitrary-precision ``N``."""
        if N <= 0:
            raise ValueError("N must be positive")
        if N < _INT64_SAFE:
            return int(self.gen.integers(N))
        bits = N.bit_length()
        nbytes = (bits + 7) // 8
        shift = nbytes * 8 - bits
        while True:
            x = int.from_bytes(self.gen.bytes(nbytes), "little") >> shift
            if x < N:
                return x

    def index_block(self, N: int, size: int = _BLOCK) -> list[int]:
        if N < _INT64_SAFE:
            return self.gen.integers(N, size=size).tolist()
        return [self.randbelow(N) for _ in range(size)]

    def binomial(self, N: int, p: float) -> int:
        return binomial_exact(N, p, self)


# ---------------------------------------------------------------------------
# Binomial(N, p) for arbitrary N

def _stirling_tail(k: float) -> float:
    """log(k!) - [(k+1/2) log(k+1) - (k+1) + log(2 pi)/2]."""
    if k < 10:
        return math.lgamma(k + 1) - ((k + 0.5) * math.log(k + 1) - (k + 1) + 0.5 * math.log(2 * math.pi))
    k1 = k + 1.0
    k1sq = k1 * k1
    return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / k1sq) / k1sq) / k1


def _binomial_inversion(N: int, p: float, rng: SeededRng) -> int:
    q = 1.0 - p
    ratio = p / q
    f = math.exp(N * math.log1p(-p))
    u = rng.random()
    x = 0
    while u > f:
        u -= f
        x += 1
        if x > N:
            # floating-point leakage in the far tail; restart
            u = rng.random()
            f = math.exp(N * math.log1p(-p))
            x = 0
            continue
        f *= (N - x + 1) / x * ratio
        if f == 0.0:
            u = rng.random()
            f = math.exp(N * math.log1p(-p))
            x = 0
    return x


def _binomial_btrd(N: int, p: float, rng: SeededRng) -> int:
    # Hormann's transformed rejection with decomposition; requires N*p >= 10, p <= 1/2.
    n = float(N)
    q = 1.0 - p
    spq = math.sqrt(n * p * q)
    b = 1.15 + 2.53 * spq
    a = -0.0873 + 0.0248 * b + 0.01 * p
    c = n * p + 0.5
    alpha = (2.83 + 5.1 / b) * spq
    vr = 0.92 - 4.2 / b
    urvr = 0.86 * vr
    m = math.floor((n + 1) * p)
    r = p / q
    nr = (n + 1) * r
    npq = n * p * q
    while True:
        v = rng.random()
        if v <= urvr:
            u = v / vr - 0.43
            return int(math.floor((2 * a / (0.5 - abs(u)) + b) * u + c))
        if v >= vr:
            u = rng.random() - 0.5
        else:
            u = v / vr - 0.93
            u = math.copysign(0.5, u) - u
            v = rng.random() * vr
        us = 0.5 - abs(u)
        k = math.floor((2 * a / us + b) * u + c)
        if k < 0 or k > N:
            continue
        v = v * alpha / (a / (us * us) + b)
        km = abs(k - m)
        if km <= 15:
            f = 1.0
            if m < k:
                for i in range(m + 1, k + 1):
                    f *= nr / i - r
            elif m > k:
                for i in range(k + 1, m + 1):
                    v *= nr / i - r
            if v <= f:
                return int(k)
            continue
        v = math.log(v)
        rho = (km / npq) * (((km / 3.0 + 0.625) * km + 1.0 / 6) / npq + 0.5)
        t = -km * km / (2 * npq)
        if v < t - rho:
            return int(k)
        if v > t + rho:
            continue
        nm = N - m + 1
        nk = N - k + 1
        h = (m + 0.5) * math.log((m + 1) / (r * nm)) + _stirling_tail(m) + _stirling_tail(N - m)
        # (N+1) log(nm/nk) with nm/nk = 1 + O(1/N): keep the exact integer difference
        log_ratio = math.log1p((nm - nk) / nk)
        bound = (
            h
            + (N + 1) * log_ratio
            + (k + 0.5) * math.log(nk * r / (k + 1))
            - _stirling_tail(k)
            - _stirling_tail(N - k)
        )
        if v <= bound:
            return int(k)


def binomial_exact(N: int, p: float, rng: SeededRng) -> int:
    """Draw ``Binomial(N, p)``; ``N`` may be any non-negative integer."""
    if not 0.0 <= p <= 1.0:
        raise ProbabilityRange(f"p={p} outside [0, 1]")
    if N == 0 or p == 0.0:
        return 0
    if p == 1.0:
        return N
    if p > 0.5:
        return N - binomial_exact(N, 1.0 - p, rng)
    if N < _INT64_SAFE:
        return int(rng.gen.binomial(N, p))
    if N * p <= 10:
        return _binomial_inversion(N, p, rng)
    return _binomial_btrd(N, p, rng)


# ---------------------------------------------------------------------------
# distinct index selection

def sample_distinct(N: int, M: int, rng: SeededRng) -> list[int]:
    """``M`` distinct uniform indices from ``[0, N)``, in draw order."""
    if M > N:
        raise TooManyCopies(f"cannot choose {M} distinct copies out of {N}")
    if M == 0:
        return []
    if N <= 1 << 22 and 4 * M > N:
        return rng.gen.choice(N, size=M, replace=False).tolist()
    seen: set[int] = set()
    out: list[int] = []
    while len(out) < M:
        for x in rng.index_block(N, min(_BLOCK, 2 * (M - len(out)) + 8)):
            if x not in seen:
                seen.add(x)
                out.append(x)
                if len(out) == M:
                    break
    return out


def _graph_from_indices(n: int, H: Motif, indices) -> MotifMultiGraph:
    g = MotifMultiGraph(n, H)
    for p in unrank_many(n, H, indices):
        g.add_placement(p)
    return g


def sample_binomial(n: int, H: Motif, p: float, rng: SeededRng) -> MotifMultiGraph:
    if not 0.0 <= p <= 1.0:
        raise ProbabilityRange(f"p={p} outside [0, 1]")
    N = total_copies(n, H)
    M = binomial_exact(N, p, rng)
    return _graph_from_indices(n, H, sample_distinct(N, M, rng))


def sample_uniform(n: int, H: Motif, m: int, rng: SeededRng) -> MotifMultiGraph:
    N = total_copies(n, H)
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > N:
        raise TooManyCopies(f"m={m} exceeds the {N} copies of {H.label} in K_{n}")
    return _graph_from_indices(n, H, sample_distinct(N, m, rng))


def process_indices(N: int, rng: SeededRng) -> Iterator[int]:
    """Lazy uniform random permutation of ``range(N)``."""
    seen: set[int] = set()
    buf: list[int] = []
    while 2 * len(seen) <= N and len(seen) < N:
        if not buf:
            buf = rng.index_block(N)
            buf.reverse()
        x = buf.pop()
        if x in seen:
            continue
        seen.add(x)
        yield x
    # past half of all copies: finish with an explicit shuffle of the rest
    rest = [i for i in range(N) if i not in seen]
    rng.gen.shuffle(rest)
    yield from rest


class ProcessStream:
    """Iterator over placements of the motif process.

    Raises :class:`Exhausted` on ``next_placement()`` after all ``N`` copies
    have been emitted; plain iteration simply stops.
    """

    def __init__(self, n: int, H: Motif, rng: SeededRng):
        self.n = n
        self.H = H
        self.N = total_copies(n, H)
        self.emitted = 0
        self._it = process_indices(self.N, rng) if self.N else iter(())

    def next_index(self) -> int:
        try:
            i = next(self._it)
        except StopIteration:
            raise Exhausted(f"all {self.N} copies emitted") from None
        self.emitted += 1
        return i

    def next_placement(self) -> Placement:
        return unrank_copy(self.n, self.H, self.next_index())

    def __iter__(self):
        return self

    def __next__(self) -> Placement:
        try:
            return self.next_placement()
        except Exhausted:
            raise StopIteration from None


def process_stream(n: int, H: Motif, rng: SeededRng) -> ProcessStream:
    return ProcessStream(n, H, rng)
