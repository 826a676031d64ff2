"""Hitting times of the motif process.

One run consumes the process stream once and records

* ``tau1`` / ``tau2``: first step with minimum degree at least 1 / 2,
* ``tau_c``: first step at which all ``n`` vertices share one component,
* ``tau_M``: first step with a perfect matching (searched from ``tau1`` on),
* ``tau_H``: first step with a Hamilton cycle (searched from ``tau2`` on).

Property checks never run before their degree prerequisite holds: an
untouched vertex rules out connectivity and matchings, and a vertex of
degree below two rules out a Hamilton cycle.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable

from ._parallel import parallel_map
from .errors import OddN
from .motif import Motif
from .multigraph import MotifMultiGraph
from .properties import (
    DEFAULT_HAM_BUDGET,
    BlossomMatcher,
    HamStatus,
    hamiltonian,
)
from .sampler import SeededRng, process_stream

TARGETS = ("conn", "pm", "ham")


class UnionFind:
    """Disjoint sets with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


@dataclass
class HittingReport:
    n: int
    motif: str
    seed: int
    stream: int
    tau1: int | None = None
    tau2: int | None = None
    tau_c: int | None = None
    tau_M: int | None = None
    tau_H: int | None = None
    ham_status: str | None = None
    ham_inconclusive: bool = False
    ham_checks: int = 0
    steps: int = 0
    targets: tuple = ()

    def chain_holds(self) -> bool:
        """Deterministic inequalities between the recorded times."""
        ok = True
        if self.tau1 is not None:
            if self.tau_c is not None and self.n >= 2:
                ok &= self.tau1 <= self.tau_c
            if self.tau_M is not None:
                ok &= self.tau1 <= self.tau_M
            if self.tau2 is not None:
                ok &= self.tau1 <= self.tau2
        if self.tau2 is not None and self.tau_H is not None:
            ok &= self.tau2 <= self.tau_H
        return bool(ok)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["targets"] = list(self.targets)
        return d


def _parse_targets(track: Iterable[str]) -> tuple:
    out = []
    for t in track:
        t = t.strip()
        if not t:
            continue
        if t not in TARGETS:
            raise ValueError(f"unknown target {t!r}; choose from {TARGETS}")
        if t not in out:
            out.append(t)
    return tuple(out)


def run_process(
    n: int,
    H: Motif,
    rng: SeededRng,
    track: Iterable[str] = TARGETS,
    budget: int = DEFAULT_HAM_BUDGET,
) -> HittingReport:
    targets = _parse_targets(track)
    want_pm = "pm" in targets
    want_ham = "ham" in targets
    if want_pm and n % 2:
        raise OddN(f"perfect matching tracked on odd n={n}")
    if want_ham and n < 3:
        raise ValueError("Hamiltonicity needs n >= 3")

    rep = HittingReport(
        n=n, motif=H.label, seed=rng.master_seed, stream=rng.stream_id[0], targets=targets
    )
    g = MotifMultiGraph(n, H)
    uf = UnionFind(n)
    below = g._below
    matcher: BlossomMatcher | None = None
    ham_open = want_ham
    if n == 1:
        rep.tau_c = 0
    step = 0
    for p in process_stream(n, H, rng):
        step += 1
        new = g.add_placement(p)
        if rep.tau_c is None:
            for u, v in p.edges:
                uf.union(u, v)
            if uf.components == 1:
                rep.tau_c = step

        if rep.tau1 is None:
            if below[1] == 0:
                rep.tau1 = step
                if want_pm:
                    matcher = BlossomMatcher(g.adj)
                    matcher.augment()
                    if matcher.is_perfect():
                        rep.tau_M = step
        elif matcher is not None and rep.tau_M is None and new:
            for u, v in new:
                matcher.add_edge(u, v)
            matcher.augment()
            if matcher.is_perfect():
                rep.tau_M = step

        if rep.tau2 is None:
            if below[2] == 0:
                rep.tau2 = step
                if ham_open:
                    res = hamiltonian(g, budget)
                    rep.ham_checks += 1
                    rep.ham_status = res.status.value
                    ham_open = _absorb_ham(rep, res.status, step)
        elif ham_open and new:
            res = hamiltonian(g, budget)
            rep.ham_checks += 1
            ham_open = _absorb_ham(rep, res.status, step)

        if (
            rep.tau1 is not None
            and rep.tau2 is not None
            and rep.tau_c is not None
            and (not want_pm or rep.tau_M is not None)
            and not ham_open
        ):
            break
    rep.steps = step
    return rep


def _absorb_ham(rep: HittingReport, status: HamStatus, step: int) -> bool:
    """Record a Hamiltonicity check; returns whether tracking stays open."""
    if status is HamStatus.FOUND:
        rep.tau_H = step
        return False
    if status is HamStatus.BUDGET:
        rep.ham_inconclusive = True
        return False
    return True


# ---------------------------------------------------------------------------
# aggregation

@dataclass
class HittingConfig:
    n: int
    motif: Motif
    trials: int
    seed: int
    targets: tuple = TARGETS
    budget: int = DEFAULT_HAM_BUDGET
    workers: int = 1


def _one_trial(args) -> HittingReport:
    n, H, seed, trial, targets, budget = args
    return run_process(n, H, SeededRng(seed, trial), targets, budget)


def _moments(xs: list) -> dict:
    vals = [x for x in xs if x is not None]
    if not vals:
        return {"count": 0, "mean": None, "std": None}
    mean = math.fsum(vals) / len(vals)
    var = math.fsum((x - mean) ** 2 for x in vals) / (len(vals) - 1) if len(vals) > 1 else 0.0
    return {"count": len(vals), "mean": mean, "std": math.sqrt(var)}


def summarize(reports: list[HittingReport], targets: Iterable[str]) -> dict:
    targets = _parse_targets(targets)
    trials = len(reports)
    summary: dict = {"trials": trials}
    summary["chain_violations"] = sum(not r.chain_holds() for r in reports)
    if "conn" in targets:
        hits = sum(r.tau_c is not None and r.tau_c == r.tau1 for r in reports)
        summary["conn_eq_tau1"] = {"hits": hits, "trials": trials, "fraction": hits / trials}
    if "pm" in targets:
        hits = sum(r.tau_M is not None and r.tau_M == r.tau1 for r in reports)
        summary["pm_eq_tau1"] = {"hits": hits, "trials": trials, "fraction": hits / trials}
    if "ham" in targets:
        inconclusive = sum(r.ham_inconclusive for r in reports)
        conclusive = trials - inconclusive
        hits = sum(
            (not r.ham_inconclusive) and r.tau_H is not None and r.tau_H == r.tau2 for r in reports
        )
        never = sum((not r.ham_inconclusive) and r.tau_H is None for r in reports)
        summary["ham_eq_tau2"] = {
            "hits": hits,
            "conclusive": conclusive,
            "inconclusive": inconclusive,
            "never_hamiltonian": never,
            "fraction": hits / conclusive if conclusive else None,
        }
    for name in ("tau1", "tau2", "tau_c", "tau_M", "tau_H"):
        summary[name] = _moments([getattr(r, name) for r in reports])
    return summary


def hitting_stats(config: HittingConfig) -> dict:
    if config.trials < 1:
        raise ValueError("trials must be at least 1")
    jobs = [
        (config.n, config.motif, config.seed, t, tuple(config.targets), config.budget)
        for t in range(config.trials)
    ]
    reports = parallel_map(_one_trial, jobs, config.workers)
    return {
        "config": {
            "n": config.n,
            "motif": config.motif.label,
            "trials": config.trials,
            "seed": config.seed,
            "targets": list(config.targets),
            "budget": config.budget,
        },
        "reports": reports,
        "summary": summarize(reports, config.targets),
    }
