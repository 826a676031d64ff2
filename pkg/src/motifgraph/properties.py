"""Decision procedures on the simple-graph view of a motif multigraph.

Everything here takes either a :class:`MotifMultiGraph` or a plain
adjacency list (``list[set[int]]``) and never looks at multiplicities.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import SubgraphTooLarge
from .motif import Motif, parse_motif
from .multigraph import MotifMultiGraph

DEFAULT_HAM_BUDGET = 10_000_000
DEFAULT_POSA_RESTARTS = 10
DEFAULT_SUBGRAPH_CAP = 8

Adjacency = Sequence[set]


def _adj(g) -> Adjacency:
    return g.adj if isinstance(g, MotifMultiGraph) else g


# ---------------------------------------------------------------------------
# connectivity

def component_count(g) -> int:
    adj = _adj(g)
    n = len(adj)
    seen = [False] * n
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return comps


def is_connected(g) -> bool:
    """Single component; graphs on 0 or 1 vertices count as connected."""
    return component_count(g) <= 1


def min_degree_at_least(g, d: int) -> bool:
    adj = _adj(g)
    return all(len(a) >= d for a in adj)


# ---------------------------------------------------------------------------
# maximum matching (Edmonds' blossom algorithm)

@dataclass
class MatchingResult:
    matched_pairs: set
    is_perfect: bool

    @property
    def size(self) -> int:
        return len(self.matched_pairs)


class BlossomMatcher:
    """Maximum-cardinality matching that can be grown as edges arrive.

    The matcher keeps a reference to the adjacency list, so edges added to
    the underlying graph are visible to the next :meth:`augment` call.
    """

    def __init__(self, adj: Adjacency):
        self.adj = adj
        self.n = len(adj)
        self.match = [-1] * self.n
        self.size = 0
        self._greedy()

    def _greedy(self) -> None:
        match = self.match
        for v in range(self.n):
            if match[v] == -1:
                for w in self.adj[v]:
                    if match[w] == -1:
                        match[v] = w
                        match[w] = v
                        self.size += 1
                        break

    def augment(self) -> int:
        """Augment from every exposed vertex; returns the new matching size."""
        for v in range(self.n):
            if self.match[v] == -1 and self.adj[v]:
                self._augment_from(v)
        return self.size

    def add_edge(self, u: int, v: int) -> None:
        # the caller has already inserted (u, v) into adj
        if self.match[u] == -1 and self.match[v] == -1:
            self.match[u] = v
            self.match[v] = u
            self.size += 1

    def is_perfect(self) -> bool:
        return 2 * self.size == self.n

    def pairs(self) -> set:
        return {(v, w) for v, w in enumerate(self.match) if w > v}

    def _augment_from(self, root: int) -> bool:
        end, parent = self._find_path(root)
        if end == -1:
            return False
        match = self.match
        v = end
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v] = pv
            match[pv] = v
            v = ppv
        self.size += 1
        return True

    def _find_path(self, root: int):
        n = self.n
        adj = self.adj
        match = self.match
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            marked = [False] * n
            while True:
                a = base[a]
                marked[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if marked[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list) -> None:
            while base[v] != b:
                blossom[base[v]] = True
                blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    nxt = match[to]
                    used[nxt] = True
                    queue.append(nxt)
        return -1, parent


def max_matching(g) -> MatchingResult:
    adj = _adj(g)
    m = BlossomMatcher(adj)
    m.augment()
    return MatchingResult(m.pairs(), m.is_perfect())


def has_perfect_matching(g) -> bool:
    adj = _adj(g)
    if len(adj) % 2:
        return False
    if any(not a for a in adj):
        return False
    return max_matching(adj).is_perfect


# ---------------------------------------------------------------------------
# Hamiltonicity

class HamStatus(str, enum.Enum):
    FOUND = "Found"
    NOT_FOUND = "NotFound"
    BUDGET = "Budget"


@dataclass
class HamResult:
    status: HamStatus
    cycle: list | None = None
    expansions: int = 0
    method: str = ""

    @property
    def found(self) -> bool:
        return self.status is HamStatus.FOUND


def is_hamilton_cycle(adj: Adjacency, cycle: Sequence[int]) -> bool:
    n = len(adj)
    if n < 3 or len(cycle) != n or len(set(cycle)) != n:
        return False
    return all(cycle[(i + 1) % n] in adj[cycle[i]] for i in range(n))


def _has_cut_vertex(adj: Adjacency) -> bool:
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    timer = 0
    # iterative DFS from vertex 0; the graph is known to be connected
    disc[0] = low[0] = 0
    timer = 1
    root_children = 0
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if u == 0:
                    root_children += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent and disc[w] < low[u]:
                low[u] = disc[w]
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            if low[u] < low[p]:
                low[p] = low[u]
            if p != 0 and low[u] >= disc[p]:
                return True
    return root_children > 1


def _structural_obstruction(adj: Adjacency) -> bool:
    """Cheap certificates of non-Hamiltonicity (exact, not heuristic)."""
    n = len(adj)
    if any(len(a) < 2 for a in adj):
        return True
    if not is_connected(adj):
        return True
    if _has_cut_vertex(adj):
        return True
    # every edge at a degree-2 vertex is forced
    forced: list[set] = [set() for _ in range(n)]
    for v in range(n):
        if len(adj[v]) == 2:
            for w in adj[v]:
                forced[v].add(w)
                forced[w].add(v)
    if any(len(f) > 2 for f in forced):
        return True
    # forced edges closing a cycle shorter than n
    seen = [False] * n
    for s in range(n):
        if seen[s] or not forced[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        edges2 = 0
        while stack:
            u = stack.pop()
            comp.append(u)
            edges2 += len(forced[u])
            for w in forced[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if edges2 // 2 == len(comp) and len(comp) < n:
            return True
    return False


class _PosaSearch:
    def __init__(self, adj: Adjacency):
        self.adj = adj
        self.n = len(adj)

    def run(self, start: int) -> list | None:
        adj, n = self.adj, self.n
        path = [start]
        on = [False] * n
        on[start] = True
        while True:
            self._extend(path, on)
            if len(path) == n and path[0] in adj[path[-1]]:
                return path
            nxt = self._rotate(path, on, path[0])
            if nxt is None:
                # double rotation: re-fix each reachable end
                nxt = self._double_rotate(path, on)
            if nxt is None:
                return None
            if nxt == "ham":
                return self._ham
            path = nxt
            on = [False] * n
            for v in path:
                on[v] = True

    def _extend(self, path: list, on: list) -> None:
        adj = self.adj
        while True:
            y = path[-1]
            for w in adj[y]:
                if not on[w]:
                    on[w] = True
                    path.append(w)
                    break
            else:
                return

    def _progress(self, q: list, on: list):
        """Longer path or Hamilton cycle from path ``q``, else None."""
        adj, n = self.adj, self.n
        z = q[-1]
        for w in adj[z]:
            if not on[w]:
                return q + [w]
        x = q[0]
        if x in adj[z]:
            if len(q) == n:
                self._ham = list(q)
                return "ham"
            # open the cycle q at a vertex with an outside neighbour
            for i, c in enumerate(q):
                for u in adj[c]:
                    if not on[u]:
                        return [u] + q[i:] + q[:i]
        return None

    def _rotate(self, path: list, on: list, fixed: int, collect: dict | None = None):
        adj = self.adj
        if path[0] != fixed:
            path = path[::-1]
        res = self._progress(path, on)
        if res is not None:
            return res
        seen = {path[-1]: path}
        queue = deque([path])
        while queue:
            q = queue.popleft()
            z = q[-1]
            L = len(q)
            pos = {v: i for i, v in enumerate(q)}
            for w in adj[z]:
                i = pos[w]
                if i == L - 2:
                    continue
                new_end = q[i + 1]
                if new_end in seen:
                    continue
                r = q[: i + 1] + q[: i: -1]
                seen[new_end] = r
                res = self._progress(r, on)
                if res is not None:
                    return res
                queue.append(r)
        if collect is not None:
            collect.update(seen)
        return None

    def _double_rotate(self, path: list, on: list):
        ends: dict = {}
        self._rotate(path, on, path[0], collect=ends)
        for z, q in ends.items():
            res = self._rotate(q[::-1], on, z)
            if res is not None:
                return res
        return None


def _exact_hamilton(adj: Adjacency, budget: int):
    """Backtracking search; returns (status, cycle, expansions)."""
    n = len(adj)
    start = min(range(n), key=lambda v: (len(adj[v]), v))
    visited = [False] * n
    visited[start] = True
    # free[t]: neighbours of t not yet on the path
    free = [len(a) for a in adj]
    for w in adj[start]:
        free[w] -= 1
    path = [start]
    expansions = 0
    nbrs = [sorted(a, key=lambda w: len(adj[w])) for a in adj]
    start_adj = adj[start]

    def feasible(u: int) -> bool:
        # u just became interior: its unvisited neighbours lost an endpoint option
        end = path[-1]
        for t in adj[u]:
            if visited[t]:
                continue
            avail = free[t] + (end in adj[t]) + (t in start_adj)
            if avail < 2:
                return False
        return True

    stack = [iter(nbrs[start])]
    while stack:
        it = stack[-1]
        u = path[-1]
        advanced = False
        for w in it:
            if visited[w]:
                continue
            expansions += 1
            if expansions > budget:
                return HamStatus.BUDGET, None, expansions
            visited[w] = True
            path.append(w)
            for t in adj[w]:
                free[t] -= 1
            if len(path) == n:
                if start in adj[w]:
                    return HamStatus.FOUND, list(path), expansions
            elif len(path) > 1 and (len(path) == 2 or feasible(u)):
                stack.append(iter(nbrs[w]))
                advanced = True
                break
            path.pop()
            visited[w] = False
            for t in adj[w]:
                free[t] += 1
        if advanced:
            continue
        stack.pop()
        if len(path) > 1:
            w = path.pop()
            visited[w] = False
            for t in adj[w]:
                free[t] += 1
    return HamStatus.NOT_FOUND, None, expansions


def hamiltonian(
    g,
    budget: int = DEFAULT_HAM_BUDGET,
    restarts: int = DEFAULT_POSA_RESTARTS,
) -> HamResult:
    """Rotation-extension search with an exact backtracking fallback.

    ``Found`` carries a witness cycle, ``NotFound`` is a proof (structural
    obstruction or exhausted search), ``Budget`` means the exact phase ran
    out of node expansions.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    adj = _adj(g)
    n = len(adj)
    if n < 3:
        return HamResult(HamStatus.NOT_FOUND, method="trivial")
    if _structural_obstruction(adj):
        return HamResult(HamStatus.NOT_FOUND, method="obstruction")
    search = _PosaSearch(adj)
    order = sorted(range(n), key=lambda v: (len(adj[v]), v))
    step = max(1, n // max(1, restarts))
    for attempt in range(min(restarts, n)):
        cyc = search.run(order[(attempt * step) % n])
        if cyc is not None:
            return HamResult(HamStatus.FOUND, cyc, method="posa")
    status, cyc, used = _exact_hamilton(adj, budget)
    return HamResult(status, cyc, used, method="exact")


def is_hamiltonian(g, budget: int = DEFAULT_HAM_BUDGET) -> bool | None:
    r = hamiltonian(g, budget)
    if r.status is HamStatus.BUDGET:
        return None
    return r.found


# ---------------------------------------------------------------------------
# subgraph containment and counting

def _as_motif(S) -> Motif:
    if isinstance(S, Motif):
        return S
    return parse_motif(S)


def _search_order(S: Motif):
    k = S.k
    sadj: list[set] = [set() for _ in range(k)]
    for u, v in S.edges:
        sadj[u].add(v)
        sadj[v].add(u)
    order: list[int] = []
    placed = set()
    while len(order) < k:
        best = max(
            (v for v in range(k) if v not in placed),
            key=lambda v: (len(sadj[v] & placed), len(sadj[v]), -v),
        )
        order.append(best)
        placed.add(best)
    back = [[order.index(w) for w in sadj[v] if order.index(w) < i] for i, v in enumerate(order)]
    return order, back, [len(sadj[v]) for v in order]


def _embeddings(adj: Adjacency, S: Motif, stop_at_first: bool) -> int:
    order, back, need = _search_order(S)
    k = S.k
    n = len(adj)
    image = [-1] * k
    used = set()
    count = 0

    def rec(i: int) -> bool:
        nonlocal count
        if i == k:
            count += 1
            return stop_at_first
        if back[i]:
            anchor = image[back[i][0]]
            cands = adj[anchor]
        else:
            cands = range(n)
        for c in cands:
            if c in used or len(adj[c]) < need[i]:
                continue
            ok = True
            for j in back[i]:
                if image[j] not in adj[c]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = c
            used.add(c)
            if rec(i + 1):
                return True
            used.discard(c)
        return False

    rec(0)
    return count


def _check_cap(S: Motif, cap: int) -> None:
    if S.k > cap:
        raise SubgraphTooLarge(f"subject has {S.k} vertices; cap is {cap}")


def contains_subgraph(g, S, cap: int = DEFAULT_SUBGRAPH_CAP) -> bool:
    S = _as_motif(S)
    _check_cap(S, cap)
    return _embeddings(_adj(g), S, stop_at_first=True) > 0


def count_subgraphs(g, S, cap: int = DEFAULT_SUBGRAPH_CAP) -> int:
    """Number of distinct (unlabelled) copies of ``S`` in ``g``."""
    S = _as_motif(S)
    _check_cap(S, cap)
    return _embeddings(_adj(g), S, stop_at_first=False) // S.aut
