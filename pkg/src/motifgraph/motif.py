"""Motifs, copy counting, and copy indexing.

A motif is a small fixed graph ``H`` without isolated vertices.  Copies of
``H`` in ``K_n`` are indexed by integers in ``[0, total_copies(n, H))``: the
index packs the colexicographic rank of the host vertex set together with
the index of one of the motif's distinct embeddings on ``k`` labelled
vertices.  Every count here is an exact Python integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
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

MAX_MOTIF_VERTICES = 8

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Motif:
    """Canonical small graph on vertices ``0..k-1``.

    ``embeddings`` lists every distinct edge set obtained by relabelling the
    motif's vertices, sorted lexicographically.  ``labelings[j]`` is one
    permutation ``pi`` with ``pi(H) == embeddings[j]``; motif vertex ``a``
    sits on local slot ``pi[a]``.
    """

    k: int
    edges: tuple[Edge, ...]
    min_deg: int
    aut: int
    embeddings: tuple[tuple[Edge, ...], ...]
    labelings: tuple[tuple[int, ...], ...]
    name: str = ""
    _emb_lookup: dict = field(default=None, repr=False, compare=False, hash=False)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_embeddings(self) -> int:
        return len(self.embeddings)

    def degrees(self) -> list[int]:
        deg = [0] * self.k
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def embedding_index(self, local_edges: Iterable[Edge]) -> int:
        key = tuple(sorted(_norm(u, v) for u, v in local_edges))
        try:
            return self._emb_lookup[key]
        except KeyError:
            raise IndexOutOfRange(f"edge set {key} is not an embedding of {self.label}") from None

    def is_path(self) -> bool:
        if len(self.edges) != self.k - 1:
            return False
        deg = self.degrees()
        return max(deg) <= 2 and _connected(self.k, self.edges)

    def is_connected(self) -> bool:
        return _connected(self.k, self.edges)

    @property
    def label(self) -> str:
        return self.name or f"H{list(self.edges)}"

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


def _connected(k: int, edges: Sequence[Edge]) -> bool:
    if k <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(k)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == k


def parse_motif(
    edge_list: Iterable[Sequence[int]],
    vertices: Iterable[int] | None = None,
    name: str = "",
) -> Motif:
    """Build a canonical :class:`Motif` from vertex pairs.

    ``vertices`` optionally declares extra vertex labels; any declared label
    not touched by an edge raises :class:`IsolatedVertex`.
    """
    pairs = [tuple(e) for e in edge_list]
    if not pairs:
        raise EmptyMotif("motif must have at least one edge")
    seen: set[frozenset] = set()
    for e in pairs:
        if len(e) != 2:
            raise MotifError(f"edge {e!r} is not a pair")
        u, v = e
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}")
        key = frozenset(e)
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {e!r}")
        seen.add(key)
    touched = sorted({x for e in pairs for x in e})
    if vertices is not None:
        extra = set(vertices) - set(touched)
        if extra:
            raise IsolatedVertex(f"vertices {sorted(extra)} touch no edge")
    k = len(touched)
    if k > MAX_MOTIF_VERTICES:
        raise MotifTooLarge(f"motif has {k} vertices; at most {MAX_MOTIF_VERTICES} supported")
    relabel = {x: i for i, x in enumerate(touched)}
    edges = tuple(sorted(_norm(relabel[u], relabel[v]) for u, v in pairs))

    images: dict[tuple[Edge, ...], tuple[int, ...]] = {}
    aut = 0
    for perm in permutations(range(k)):
        img = tuple(sorted(_norm(perm[u], perm[v]) for u, v in edges))
        if img == edges:
            aut += 1
        images.setdefault(img, perm)
    embeddings = tuple(sorted(images))
    labelings = tuple(images[e] for e in embeddings)

    deg = [0] * k
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return Motif(
        k=k,
        edges=edges,
        min_deg=min(deg),
        aut=aut,
        embeddings=embeddings,
        labelings=labelings,
        name=name,
        _emb_lookup={e: j for j, e in enumerate(embeddings)},
    )


def read_edge_list(text: str) -> list[tuple[int, int]]:
    """Parse ``"u v"`` lines; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MotifError(f"line {lineno}: expected 'u v', got {line!r}")
        out.append((int(parts[0]), int(parts[1])))
    return out


def preset(spec: str) -> Motif:
    """Named motifs: ``edge``, ``triangle``, ``path:k``, ``cycle:k``,
    ``clique:k`` (all ``k`` = vertex count) and ``star:k`` (``K_{1,k}``)."""
    spec = spec.strip().lower()
    if spec == "edge":
        return parse_motif([(0, 1)], name="edge")
    if spec == "triangle":
        return parse_motif([(0, 1), (1, 2), (0, 2)], name="triangle")
    kind, _, arg = spec.partition(":")
    if not arg:
        raise MotifError(f"unknown motif preset {spec!r}")
    k = int(arg)
    if kind == "path":
        if k < 2:
            raise MotifError("path needs at least 2 vertices")
        edges = [(i, i + 1) for i in range(k - 1)]
    elif kind == "cycle":
        if k < 3:
            raise MotifError("cycle needs at least 3 vertices")
        edges = [(i, (i + 1) % k) for i in range(k)]
    elif kind == "clique":
        if k < 2:
            raise MotifError("clique needs at least 2 vertices")
        edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    elif kind == "star":
        if k < 1:
            raise MotifError("star needs at least 1 leaf")
        edges = [(0, i) for i in range(1, k + 1)]
    else:
        raise MotifError(f"unknown motif preset {spec!r}")
    return parse_motif(edges, name=spec)


def load_motif(spec: str) -> Motif:
    """Resolve a preset name or a path to an edge-list file."""
    try:
        return preset(spec)
    except (MotifError, ValueError):
        pass
    with open(spec) as fh:
        return parse_motif(read_edge_list(fh.read()), name=spec)


# ---------------------------------------------------------------------------
# counting

def total_copies(n: int, H: Motif) -> int:
    if n < H.k:
        return 0
    return math.comb(n, H.k) * H.num_embeddings


def m_r(n: int, H: Motif, r: int) -> int:
    """Copies of ``H`` in ``K_n`` meeting the first ``r`` vertices."""
    if r < 0 or r > n:
        raise RangeError(f"r={r} outside [0, {n}]")
    return (math.comb(n, H.k) - math.comb(n - r, H.k)) * H.num_embeddings


def q_r(n: int, H: Motif, r: int) -> int:
    """Copies meeting the first ``r`` vertices but not contained in them."""
    if r < 0 or r > n:
        raise RangeError(f"r={r} outside [0, {n}]")
    return (math.comb(n, H.k) - math.comb(n - r, H.k) - math.comb(r, H.k)) * H.num_embeddings


def f_k(alpha: float, k: int) -> float:
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if alpha > 1:
        raise DomainError(f"alpha must be at most 1, got {alpha}")
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    # expm1/log1p keep precision for alpha ~ 1/n
    head = -math.expm1(k * math.log1p(-alpha)) if alpha < 1 else 1.0
    return (head - alpha**k) / (k * alpha)


@dataclass(frozen=True)
class ThresholdParams:
    n: int
    d: int
    delta_d: int
    x_of_n: float
    p_minus: float
    p_plus: float
    m1: int


def default_x(n: int) -> float:
    return math.sqrt(math.log(math.log(n)))


def delta_d(H: Motif, d: int) -> int:
    return -(-d // H.min_deg) - 1


def threshold_params(
    n: int, H: Motif, d: int, x_fn: Callable[[int], float] | None = None
) -> ThresholdParams:
    if n < 3:
        raise DomainError("threshold parameters need n >= 3 so that ln ln n > 0")
    if d < 1:
        raise DomainError("d must be at least 1")
    x = (x_fn or default_x)(n)
    dd = delta_d(H, d)
    m1 = m_r(n, H, 1)
    centre = math.log(n) + dd * math.log(math.log(n))
    return ThresholdParams(
        n=n,
        d=d,
        delta_d=dd,
        x_of_n=x,
        p_minus=(centre - x) / m1,
        p_plus=(centre + x) / m1,
        m1=m1,
    )


# ---------------------------------------------------------------------------
# colex ranking of k-subsets and copy indexing

def colex_rank(subset: Sequence[int]) -> int:
    """Rank of a strictly increasing k-subset in colexicographic order."""
    return sum(math.comb(c, i) for i, c in enumerate(subset, 1))


def colex_unrank(rank: int, k: int) -> list[int]:
    out = [0] * k
    for i in range(k, 0, -1):
        c = _largest_with_comb_at_most(rank, i)
        out[i - 1] = c
        rank -= math.comb(c, i)
    return out


def _largest_with_comb_at_most(r: int, i: int) -> int:
    # comb(c, i) <= c**i / i!  so c >= (r * i!)**(1/i) is never too large
    if i == 1:
        return r
    if r < 2**1000:
        c = max(i - 1, int((r * math.factorial(i)) ** (1.0 / i)) - 1)
    else:
        c = i - 1
    while math.comb(c + 1, i) <= r:
        c += 1
    while c >= i and math.comb(c, i) > r:
        c -= 1
    return c


def unrank_copy(n: int, H: Motif, index: int):
    from .multigraph import Placement

    total = total_copies(n, H)
    if not 0 <= index < total:
        raise IndexOutOfRange(f"copy index {index} outside [0, {total})")
    subset_rank, j = divmod(index, H.num_embeddings)
    host = colex_unrank(subset_rank, H.k)
    pi = H.labelings[j]
    verts = tuple(host[pi[a]] for a in range(H.k))
    return Placement.from_motif(H, verts)


def rank_copy(n: int, H: Motif, placement) -> int:
    verts = placement.vertices
    if len(verts) != H.k or any(not 0 <= v < n for v in verts):
        raise IndexOutOfRange(f"placement {verts} is not a copy of {H.label} in K_{n}")
    host = sorted(verts)
    slot = {v: i for i, v in enumerate(host)}
    j = H.embedding_index((slot[u], slot[v]) for u, v in placement.edges)
    return colex_rank(host) * H.num_embeddings + j


def unrank_many(n: int, H: Motif, indices) -> list:
    """Batch :func:`unrank_copy`; vectorised when indices fit in int64."""
    from .multigraph import Placement

    total = total_copies(n, H)
    indices = list(indices)
    if not indices:
        return []
    if total >= 2**62:
        return [unrank_copy(n, H, i) for i in indices]
    k = H.k
    idx = np.asarray(indices, dtype=np.int64)
    if idx.min() < 0 or idx.max() >= total:
        bad = next(i for i in indices if not 0 <= i < total)
        raise IndexOutOfRange(f"copy index {bad} outside [0, {total})")
    rank, j = np.divmod(idx, H.num_embeddings)
    host = np.empty((len(idx), k), dtype=np.int64)
    for i in range(k, 0, -1):
        table = np.array([math.comb(c, i) for c in range(n + 1)], dtype=np.int64)
        c = np.searchsorted(table, rank, side="right") - 1
        host[:, i - 1] = c
        rank = rank - table[c]
    labelings = np.asarray(H.labelings, dtype=np.int64)
    verts = np.take_along_axis(host, labelings[j], axis=1)
    ea = np.array([a for a, _ in H.edges])
    eb = np.array([b for _, b in H.edges])
    u, v = verts[:, ea], verts[:, eb]
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    out = []
    for vs, ls, hs in zip(verts.tolist(), lo.tolist(), hi.tolist()):
        out.append(Placement(tuple(vs), tuple(sorted(zip(ls, hs)))))
    return out


def iter_copies(n: int, H: Motif):
    """Every copy of ``H`` in ``K_n`` in index order (small ``n`` only)."""
    for i in range(total_copies(n, H)):
        yield unrank_copy(n, H, i)
