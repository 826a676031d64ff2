"""Coverings of a subject graph by motif copies, and the exponent gamma-bar.

An ``(a, b)`` covering of ``S`` is a set of ``b`` copies of ``H`` whose
union contains ``S``, spans ``a`` vertices, and loses ``S`` when any single
copy is removed.  For a covering, gamma is the minimum of ``a'/b'`` over its
non-empty sub-collections; gamma-bar is the maximum of gamma over all
coverings.  Copies in ``Ḡ(H, n, m)`` start containing ``S`` around
``m = n**(v - gamma_bar)`` with ``v = |V(H)|``.

Vertices of ``S`` are labelled ``0..s-1``; copies may also use fresh labels
``s, s+1, ...`` which are introduced in increasing order during the search.
All ratios are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

from .errors import Disconnected, NotAPath, SubjectTooLarge
from .motif import Edge, Motif, _norm

DEFAULT_EDGE_CAP = 6
CLOSED_FORM_EDGE_CAP = 16


# ---------------------------------------------------------------------------
# subject graphs

@dataclass(frozen=True)
class Subject:
    """Simple graph without isolated vertices, relabelled to ``0..s-1``."""

    s: int
    edges: tuple[Edge, ...]
    name: str = ""

    @classmethod
    def of(cls, S) -> "Subject":
        if isinstance(S, Subject):
            return S
        if isinstance(S, Motif):
            return cls(S.k, S.edges, S.name)
        pairs = [tuple(e) for e in S]
        if not pairs:
            raise ValueError("subject needs at least one edge")
        labels = sorted({x for e in pairs for x in e})
        relabel = {x: i for i, x in enumerate(labels)}
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = _norm(relabel[u], relabel[v])
            if e in edges:
                raise ValueError(f"duplicate edge {(u, v)}")
            edges.add(e)
        return cls(len(labels), tuple(sorted(edges)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        return _components(self.s, self.edges) == 1

    @property
    def excess(self) -> int:
        return len(self.edges) - self.s + 1


def _components(nv: int, edges: Iterable[Edge], vertices: Iterable[int] | None = None) -> int:
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in vertices if vertices is not None else range(nv):
        parent[v] = v
    for u, v in edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
    comps = len(parent)
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


# ---------------------------------------------------------------------------
# coverings

@dataclass(frozen=True)
class CoverCopy:
    """One motif copy inside a covering; ``vertices[a]`` hosts motif vertex ``a``."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)


@dataclass(frozen=True)
class Covering:
    subject: Subject
    placements: tuple[CoverCopy, ...]

    @property
    def b(self) -> int:
        return len(self.placements)

    @property
    def a(self) -> int:
        return len(set().union(*(p.vertices for p in self.placements)))

    def union_edges(self) -> set:
        return set().union(*(p.edges for p in self.placements))

    def is_valid(self) -> bool:
        """Covers S, and no copy can be dropped without uncovering an S-edge."""
        sedges = set(self.subject.edges)
        if not sedges <= self.union_edges():
            return False
        for i in range(self.b):
            rest = set().union(*(p.edges for j, p in enumerate(self.placements) if j != i))
            if sedges <= rest:
                return False
        return True

    def is_edge_disjoint(self) -> bool:
        seen: set = set()
        for p in self.placements:
            if seen & set(p.edges):
                return False
            seen |= set(p.edges)
        return True

    def fresh_vertices(self) -> set:
        return {v for p in self.placements for v in p.vertices if v >= self.subject.s}

    def to_json_obj(self) -> dict:
        return {
            "subject": [list(e) for e in self.subject.edges],
            "a": self.a,
            "b": self.b,
            "placements": [list(p.vertices) for p in self.placements],
        }


def _fresh_sig(placements: Sequence[tuple], s: int, f: int) -> tuple:
    out = []
    for edges in placements:
        if any(f in e for e in edges):
            out.append(
                tuple(sorted(
                    tuple(sorted(-1 if x == f else (-2 if x >= s else x) for x in e)) for e in edges
                ))
            )
    return tuple(sorted(out))


def canonical_form(placements: Sequence[tuple], s: int) -> tuple:
    """Form of a set of copies (given as edge tuples) invariant under
    renaming of fresh vertices."""
    fresh = sorted({x for edges in placements for e in edges for x in e if x >= s})
    if not fresh:
        return tuple(sorted(placements))
    sigs = {f: _fresh_sig(placements, s, f) for f in fresh}
    classes: dict = {}
    for f in fresh:
        classes.setdefault(sigs[f], []).append(f)
    ordered = [classes[k] for k in sorted(classes)]
    best = None
    for choice in product(*(permutations(c) for c in ordered)):
        flat = [f for grp in choice for f in grp]
        ren = {f: s + i for i, f in enumerate(flat)}
        form = tuple(sorted(
            tuple(sorted(_norm(ren.get(u, u), ren.get(v, v)) for u, v in edges)) for edges in placements
        ))
        if best is None or form < best:
            best = form
    return best


class _CopyTable:
    """Copies of ``H`` through a given S-edge, cached per number of fresh
    labels already in use.  Each entry is ``(copy, smask, vmask, new, key,
    sbits)``: the S-edges it covers and the vertices it uses as bitmasks, how
    many new fresh labels it introduces, a fresh-blind ordering key, and the
    covered S-edge indices as a tuple."""

    def __init__(self, S: Subject, H: Motif):
        self.S = S
        self.H = H
        self.sedge_index = {e: i for i, e in enumerate(S.edges)}
        self._cache: dict = {}

    def copies(self, e: Edge, fresh_used: int) -> list:
        key = (e, fresh_used)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._build(e, self.S.s + fresh_used)
            self._cache[key] = hit
        return hit

    def _build(self, e: Edge, first_new: int) -> list:
        H = self.H
        k = H.k
        old = range(first_new)
        found: dict = {}

        def assign(img, rest, i, used, next_new):
            if i == len(rest):
                verts, edges = self._canon_new(tuple(img), first_new)
                found.setdefault(edges, verts)
                return
            a = rest[i]
            for v in old:
                if v not in used:
                    img[a] = v
                    used.add(v)
                    assign(img, rest, i + 1, used, next_new)
                    used.discard(v)
            img[a] = next_new
            used.add(next_new)
            assign(img, rest, i + 1, used, next_new + 1)
            used.discard(next_new)

        for a, b in H.edges:
            for x, y in (e, e[::-1]):
                img = [-1] * k
                img[a], img[b] = x, y
                rest = [i for i in range(k) if i not in (a, b)]
                assign(img, rest, 0, {x, y}, first_new)

        s = self.S.s
        out = []
        for edges in sorted(found):
            verts = found[edges]
            smask = 0
            for ed in edges:
                j = self.sedge_index.get(ed)
                if j is not None:
                    smask |= 1 << j
            vmask = 0
            for v in verts:
                vmask |= 1 << v
            new = sum(1 for v in verts if v >= first_new)
            sbits = tuple(j for j in range(len(self.S.edges)) if smask >> j & 1)
            out.append((CoverCopy(verts, edges), smask, vmask, new, _wild_key(edges, s), sbits))
        return out

    def _canon_new(self, verts: tuple, first_new: int):
        edges = tuple(sorted(_norm(verts[p], verts[q]) for p, q in self.H.edges))
        news = sorted(v for v in verts if v >= first_new)
        if len(news) <= 1:
            return verts, edges
        best = None
        for perm in permutations(news):
            ren = dict(zip(news, perm))
            v2 = tuple(ren.get(v, v) for v in verts)
            e2 = tuple(sorted(_norm(ren.get(p, p), ren.get(q, q)) for p, q in edges))
            if best is None or e2 < best[1]:
                best = (v2, e2)
        return best


def _wild_key(edges, s: int) -> tuple:
    return tuple(sorted(tuple(sorted(x if x < s else 1 << 30 for x in e)) for e in edges))


def _check_caps(S: Subject, H: Motif, cap: int) -> None:
    if S.num_edges > cap:
        raise SubjectTooLarge(f"subject has {S.num_edges} edges; cap is {cap}")


class _Search:
    """Depth-first construction of minimal coverings.

    The first uncovered S-edge is always the next one to cover, so every
    copy owns at least one S-edge when it enters.  A branch dies as soon as
    some earlier copy stops owning any S-edge uniquely, because adding more
    copies can only make that worse.  Among copies covering the same S-edge,
    the one chosen for it must have the smallest fresh-blind key, which
    removes most reorderings of the same set; a canonical-form set catches
    the rest together with fresh-label renamings.
    """

    def __init__(self, S: Subject, H: Motif, bound: bool = False):
        self.S = S
        self.H = H
        self.E = S.num_edges
        self.full = (1 << self.E) - 1
        self.table = _CopyTable(S, H)
        self.bound = bound
        self.best: tuple | None = None  # (a', b') of the best gamma so far
        self.best_form: tuple | None = None
        self.best_cover: Covering | None = None
        self.seen: set = set()
        self.nodes = 0

    def run(self) -> Iterator[tuple[Covering, tuple[int, int], tuple]]:
        self.counts = [0] * self.E
        self.chosen: list = []
        self.chosen_for: list[int] = []
        # unions[mask] = vertex bitmask of the sub-collection ``mask``
        self.unions = [0]
        self.sizes = [0]
        yield from self._rec(0, 0, (1 << 30, 1))

    def _rec(self, covmask: int, fresh: int, gamma: tuple) -> Iterator:
        self.nodes += 1
        if covmask == self.full:
            forms = tuple(c[0].edges for c in self.chosen)
            form = canonical_form(forms, self.S.s)
            if form in self.seen:
                return
            self.seen.add(form)
            cover = Covering(self.S, tuple(c[0] for c in self.chosen))
            yield cover, gamma, form
            return
        j = (~covmask & (covmask + 1)).bit_length() - 1
        counts = self.counts
        for entry in self.table.copies(self.S.edges[j], fresh):
            copy, smask, vmask, new, wkey, sbits = entry
            # canonical choice among copies covering an earlier chosen edge
            bad = False
            for prev, edge_idx in zip(self.chosen, self.chosen_for):
                if smask >> edge_idx & 1 and prev[4] > wkey:
                    bad = True
                    break
            if bad:
                continue
            for t in sbits:
                counts[t] += 1
            if all(any(counts[t] == 1 for t in prev[5]) for prev in self.chosen):
                g = self._extend_gamma(vmask, gamma)
                if not (self.bound and self.best is not None and _lt(g, self.best)):
                    self.chosen.append(entry)
                    self.chosen_for.append(j)
                    yield from self._rec(covmask | smask, fresh + new, g)
                    self.chosen.pop()
                    self.chosen_for.pop()
                m = len(self.unions) // 2
                del self.unions[m:]
                del self.sizes[m:]
            for t in sbits:
                counts[t] -= 1

    def _extend_gamma(self, vmask: int, gamma: tuple) -> tuple:
        unions, sizes = self.unions, self.sizes
        ga, gb = gamma
        for i in range(len(unions)):
            u = unions[i] | vmask
            sz = sizes[i] + 1
            a = u.bit_count() if hasattr(u, "bit_count") else bin(u).count("1")
            unions.append(u)
            sizes.append(sz)
            if a * gb < ga * sz:
                ga, gb = a, sz
        return ga, gb


def _lt(x: tuple, y: tuple) -> bool:
    return x[0] * y[1] < y[0] * x[1]


def enumerate_coverings(S, H: Motif, cap: int = DEFAULT_EDGE_CAP) -> Iterator[Covering]:
    """Every minimal covering of ``S`` by copies of ``H``, once per
    fresh-vertex renaming class."""
    S = Subject.of(S)
    _check_caps(S, H, cap)
    for cover, _, _ in _Search(S, H).run():
        yield cover


def gamma_of_covering(c: Covering) -> Fraction:
    """``min a'/b'`` over all non-empty sub-collections of the covering."""
    best = None
    ps = c.placements
    for r in range(1, len(ps) + 1):
        for sub in combinations(ps, r):
            a = len(set().union(*(p.vertices for p in sub)))
            val = Fraction(a, r)
            if best is None or val < best:
                best = val
    return best


@dataclass
class GammaResult:
    gamma_bar: Fraction
    witness: Covering
    v: int
    coverings: int
    per_covering: list | None = None

    @property
    def exponent(self) -> Fraction:
        """Threshold exponent ``v - gamma_bar`` for ``m ~ n**exponent``."""
        return self.v - self.gamma_bar

    def to_json_obj(self, witness: bool = False) -> dict:
        out = {
            "gamma_bar": str(self.gamma_bar),
            "exponent": str(self.exponent),
            "v": self.v,
            "coverings": self.coverings,
        }
        if witness:
            out["witness"] = self.witness.to_json_obj()
        if self.per_covering is not None:
            out["per_covering"] = [[a, b, str(g)] for a, b, g in self.per_covering]
        return out


def gamma_bar(S, H: Motif, cap: int = DEFAULT_EDGE_CAP, table: bool = False, prune: bool = True) -> GammaResult:
    """Exact gamma-bar with the lexicographically smallest witness.

    With ``prune`` the search abandons a partial covering once its own
    gamma drops below the best complete one: gamma can only fall as copies
    are added.  ``table`` disables pruning and records ``(a, b, gamma)`` for
    every covering.
    """
    S = Subject.of(S)
    _check_caps(S, H, cap)
    search = _Search(S, H, bound=prune and not table)
    rows = [] if table else None
    count = 0
    best = None
    best_form = None
    best_cover = None
    for cover, (ga, gb), form in search.run():
        count += 1
        if rows is not None:
            rows.append((cover.a, cover.b, Fraction(ga, gb)))
        if best is None or _lt(best, (ga, gb)) or (not _lt((ga, gb), best) and form < best_form):
            best, best_form, best_cover = (ga, gb), form, cover
            search.best = best
    if best is None:
        raise ValueError("no covering exists")
    return GammaResult(Fraction(*best), best_cover, H.k, count, rows)


# ---------------------------------------------------------------------------
# closed form for path motifs

@dataclass(frozen=True)
class PathClosedForm:
    exc: int
    beta: int
    eta: Fraction
    gamma_bar: Fraction
    v: int

    @property
    def exponent(self) -> Fraction:
        return self.v - self.gamma_bar


def _is_path_edges(edges: Sequence[Edge]) -> bool:
    deg: dict = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if max(deg.values()) > 2 or len(edges) != len(deg) - 1:
        return False
    return _components(0, edges, ()) == 1


def min_path_partition(S, max_len: int) -> int:
    """Fewest parts in a partition of ``E(S)`` into simple paths with at
    most ``max_len`` edges each."""
    S = Subject.of(S)
    E = S.num_edges
    full = (1 << E) - 1
    parts = []
    for mask in range(1, full + 1):
        if mask.bit_count() > max_len:
            continue
        sub = [S.edges[i] for i in range(E) if mask >> i & 1]
        if _is_path_edges(sub):
            parts.append(mask)
    by_low: dict = {}
    for m in parts:
        low = m & -m
        by_low.setdefault(low, []).append(m)
    INF = E + 1
    best = [INF] * (full + 1)
    best[0] = 0
    for mask in range(1, full + 1):
        low = mask & -mask
        b = INF
        for part in by_low.get(low, ()):
            if part & mask == part:
                c = best[mask ^ part] + 1
                if c < b:
                    b = c
        best[mask] = b
    return best[full]


def min_density_ratio(S) -> Fraction:
    """``min |V(X)| / |E(X)|`` over subgraphs ``X`` with at least one edge."""
    S = Subject.of(S)
    E = S.num_edges
    best = None
    for mask in range(1, 1 << E):
        verts = set()
        cnt = 0
        for i in range(E):
            if mask >> i & 1:
                verts.update(S.edges[i])
                cnt += 1
        r = Fraction(len(verts), cnt)
        if best is None or r < best:
            best = r
    return best


def path_closed_form(S, v: int) -> PathClosedForm:
    """gamma-bar for a path motif on ``v`` vertices and a connected ``S``."""
    S = Subject.of(S)
    if v < 2:
        raise ValueError("path motif needs v >= 2")
    if not S.is_connected():
        raise Disconnected("closed form needs a connected subject")
    if S.num_edges > CLOSED_FORM_EDGE_CAP:
        raise SubjectTooLarge(f"subject has {S.num_edges} edges; cap is {CLOSED_FORM_EDGE_CAP}")
    exc = S.excess
    beta = min_path_partition(S, v - 1)
    eta = min_density_ratio(S)
    if exc == 0:
        g = Fraction(v - 1) + Fraction(1, beta)
    elif exc == 1:
        g = Fraction(v - 1)
    else:
        g = Fraction(v - 2) + eta
    return PathClosedForm(exc=exc, beta=beta, eta=eta, gamma_bar=g, v=v)


# ---------------------------------------------------------------------------
# the vertex-count identity for sub-collections of path coverings

@dataclass(frozen=True)
class SubsetTerms:
    members: tuple[int, ...]
    a: int
    b: int
    components: int
    f: int
    duplicates: int
    union_excess: int

    def literal_holds(self, v: int) -> bool:
        # a'/b' == v-1 + (c' - f' - k)/b'
        return self.a == self.b * (v - 1) + self.components - self.f - self.duplicates

    def euler_holds(self, v: int) -> bool:
        # the same count with f' taken over the whole union instead of S only
        return self.a == self.b * (v - 1) + self.components - self.union_excess - self.duplicates


def subset_terms(c: Covering, H: Motif) -> list[SubsetTerms]:
    if not H.is_path():
        raise NotAPath(f"{H.label} is not a path")
    sedges = set(c.subject.edges)
    out = []
    ps = c.placements
    for r in range(1, len(ps) + 1):
        for members in combinations(range(len(ps)), r):
            sub = [ps[i] for i in members]
            verts = set().union(*(p.vertices for p in sub))
            simple = set().union(*(p.edges for p in sub))
            total = sum(len(p.edges) for p in sub)
            comps = _components(0, simple, verts)
            # S-edges covered, grouped by union component
            parent = {x: x for x in verts}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, w in simple:
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[ru] = rw
            f = 0
            groups: dict = {}
            for e in simple & sedges:
                groups.setdefault(find(e[0]), []).append(e)
            for es in groups.values():
                vs = {x for e in es for x in e}
                f += len(es) - len(vs) + 1
            union_exc = len(simple) - len(verts) + comps
            out.append(SubsetTerms(members, len(verts), r, comps, f, total - len(simple), union_exc))
    return out


def verify_subset_formula(c: Covering, H: Motif) -> bool:
    """Check ``a'/b' = v-1 + (c'-f'-k)/b'`` on every sub-collection, with
    ``f'`` summed over the S-parts covered by each union component and ``k``
    the number of repeated edges."""
    v = H.k
    return all(t.literal_holds(v) for t in subset_terms(c, H))


def subset_formula_failures(c: Covering, H: Motif) -> list[SubsetTerms]:
    v = H.k
    return [t for t in subset_terms(c, H) if not t.literal_holds(v)]
