"""Placement-backed multigraph with a maintained simple-graph view."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import VertexOutOfRange
from .motif import Edge, Motif, _norm, parse_motif


@dataclass(frozen=True)
class Placement:
    """One concrete copy of a motif.

    ``vertices[a]`` hosts motif vertex ``a``; ``edges`` are the realised
    pairs, normalised ``(min, max)`` and sorted.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_motif(cls, H: Motif, vertices: Sequence[int]) -> "Placement":
        verts = tuple(vertices)
        return cls(verts, tuple(sorted(_norm(verts[a], verts[b]) for a, b in H.edges)))


class MotifMultiGraph:
    """Union of placements on ``n`` vertices.

    Degree means number of distinct neighbours.  Parallel edges are kept only
    in ``multiplicity``.  The number of vertices with degree below 1 and
    below 2 is tracked incrementally.
    """

    def __init__(self, n: int, motif: Motif | None = None):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.motif = motif
        self.placements: list[Placement] = []
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.multiplicity: dict[Edge, int] = {}
        self._below = {1: n, 2: n}

    def add_placement(self, p: Placement) -> list[Edge]:
        """Add ``p``; returns the simple edges it created (possibly none)."""
        n = self.n
        for v in p.vertices:
            if not 0 <= v < n:
                raise VertexOutOfRange(f"vertex {v} outside [0, {n})")
        self.placements.append(p)
        new = []
        mult = self.multiplicity
        adj = self.adj
        below = self._below
        for e in p.edges:
            c = mult.get(e, 0)
            mult[e] = c + 1
            if c == 0:
                new.append(e)
                u, v = e
                adj[u].add(v)
                adj[v].add(u)
                for w in e:
                    d = len(adj[w])
                    if d == 1:
                        below[1] -= 1
                    elif d == 2:
                        below[2] -= 1
        return new

    def add_edges(self, edges: Iterable[Edge]) -> list[Edge]:
        """Add raw pairs as a single placement (used for hand-built graphs)."""
        es = tuple(sorted({_norm(u, v) for u, v in edges}))
        verts = tuple(sorted({x for e in es for x in e}))
        return self.add_placement(Placement(verts, es))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        if self._below[1]:
            return 0
        if self._below[2]:
            return 1
        return min(len(a) for a in self.adj)

    def count_degree_below(self, d: int) -> int:
        if d in self._below:
            return self._below[d]
        return sum(1 for a in self.adj if len(a) < d)

    def simple_edge_count(self) -> int:
        return len(self.multiplicity)

    def simple_edges(self) -> list[Edge]:
        return sorted(self.multiplicity)

    def total_multiplicity(self) -> int:
        return sum(self.multiplicity.values())

    def isolated_count(self) -> int:
        return self._below[1]

    def copy(self) -> "MotifMultiGraph":
        g = MotifMultiGraph(self.n, self.motif)
        g.placements = list(self.placements)
        g.adj = [set(a) for a in self.adj]
        g.multiplicity = dict(self.multiplicity)
        g._below = dict(self._below)
        return g

    def __repr__(self) -> str:
        return (
            f"MotifMultiGraph(n={self.n}, placements={len(self.placements)}, "
            f"simple_edges={self.simple_edge_count()})"
        )

    # -- serialisation -----------------------------------------------------

    def to_json_obj(self) -> dict:
        obj = {"n": self.n, "placements": [list(p.vertices) for p in self.placements]}
        if self.motif is not None:
            obj["motif"] = {"name": self.motif.name, "edges": [list(e) for e in self.motif.edges]}
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict, H: Motif | None = None) -> "MotifMultiGraph":
        if H is None:
            if "motif" not in obj:
                raise ValueError("graph record carries no motif; pass one explicitly")
            m = obj["motif"]
            H = parse_motif([tuple(e) for e in m["edges"]], name=m.get("name", ""))
        g = cls(int(obj["n"]), H)
        for verts in obj["placements"]:
            g.add_placement(Placement.from_motif(H, verts))
        return g

    @classmethod
    def from_json(cls, text: str, H: Motif | None = None) -> "MotifMultiGraph":
        return cls.from_json_obj(json.loads(text), H)

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.simple_edges())


def new_graph(n: int) -> MotifMultiGraph:
    return MotifMultiGraph(n)


def add_placement(g: MotifMultiGraph, p: Placement) -> MotifMultiGraph:
    g.add_placement(p)
    return g


def min_degree(g: MotifMultiGraph) -> int:
    return g.min_degree()


def degree(g: MotifMultiGraph, v: int) -> int:
    return g.degree(v)


def simple_edge_count(g: MotifMultiGraph) -> int:
    return g.simple_edge_count()


def graph_from_edges(n: int, edges: Iterable[Edge]) -> MotifMultiGraph:
    """Simple graph with one single-edge placement per pair."""
    g = MotifMultiGraph(n)
    for u, v in edges:
        e = _norm(u, v)
        g.add_placement(Placement(e, (e,)))
    return g
