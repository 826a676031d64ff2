"""Monte Carlo experiments: threshold curves, p_1/2 search, subgraph
appearance and isolated-vertex counts.

Every trial draws from its own ``SeededRng(seed, stream)`` so results do not
depend on worker count or scheduling.  Outputs are plain dicts that
serialise to byte-stable JSON and CSV.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import Callable

from ._parallel import parallel_map
from .covering import Subject, gamma_bar, path_closed_form
from .errors import ConfigError, NonMonotoneSignal
from .hitting import TARGETS, HittingConfig, hitting_stats
from .motif import Motif, load_motif, m_r, threshold_params, total_copies
from .properties import (
    DEFAULT_HAM_BUDGET,
    HamStatus,
    contains_subgraph,
    hamiltonian,
    has_perfect_matching,
    is_connected,
    min_degree_at_least,
)
from .sampler import SeededRng, sample_binomial, sample_uniform

Z95 = 1.959963984540054
MODELS = ("binomial", "uniform")


def wilson(hits: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    ph = hits / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (ph + z2 / (2 * trials)) / denom
    half = z * math.sqrt(ph * (1 - ph) / trials + z2 / (4 * trials * trials)) / denom
    # clamp against round-off so the interval always contains the estimate
    return max(0.0, min(ph, centre - half)), min(1.0, max(ph, centre + half))


# ---------------------------------------------------------------------------
# property selectors

def resolve_property(selector: str) -> Callable:
    """Map a selector to ``f(g, budget) -> bool | None``; ``None`` marks an
    inconclusive Hamiltonicity search."""
    sel = selector.strip()
    if sel == "connected":
        return lambda g, budget: is_connected(g)
    if sel == "pm":
        return lambda g, budget: has_perfect_matching(g)
    if sel == "ham":
        return _ham_property
    if sel == "nonempty":
        return lambda g, budget: len(g.placements) > 0
    kind, _, arg = sel.partition(":")
    if kind == "mindeg" and arg:
        try:
            d = int(arg)
        except ValueError:
            raise ConfigError(f"bad degree in {selector!r}") from None
        return lambda g, budget: min_degree_at_least(g, d)
    if kind == "contains" and arg:
        S = load_motif(arg)
        return lambda g, budget: contains_subgraph(g, S)
    raise ConfigError(f"unknown property {selector!r}")


def _ham_property(g, budget):
    res = hamiltonian(g, budget)
    if res.status is HamStatus.BUDGET:
        return None
    return res.found


# ---------------------------------------------------------------------------
# configuration

@dataclass
class ExperimentConfig:
    motif: str
    n: int
    trials: int
    seed: int
    property: str = "connected"
    subject: str | None = None
    model: str = "binomial"
    grid: list = field(default_factory=list)
    rtol: float = 0.02
    budget: int = DEFAULT_HAM_BUDGET
    workers: int = 1
    output_json: str | None = None
    output_csv: str | None = None

    def validate(self) -> "ExperimentConfig":
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.n < 1:
            raise ConfigError("n must be positive")
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigError("grid must be strictly increasing")
        if self.model == "binomial" and any(not 0 <= p <= 1 for p in self.grid):
            raise ConfigError("probabilities must lie in [0, 1]")
        if self.model == "uniform" and any(int(m) != m or m < 0 for m in self.grid):
            raise ConfigError("uniform-model grid needs non-negative integers")
        if self.rtol <= 0:
            raise ConfigError("rtol must be positive")
        if self.budget <= 0:
            raise ConfigError("budget must be positive")
        return self

    def load_motif(self) -> Motif:
        return load_motif(self.motif)

    def to_json_obj(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(obj) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            cfg = cls(**obj)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
        return cfg.validate()

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_json_obj(obj)


@dataclass(frozen=True)
class CurvePoint:
    value: float
    trials: int
    hits: int
    inconclusive: int = 0

    @property
    def p_hat(self) -> float:
        return self.hits / self.trials if self.trials else 0.0

    @property
    def interval(self) -> tuple[float, float]:
        return wilson(self.hits, self.trials)

    def to_json_obj(self) -> dict:
        lo, hi = self.interval
        return {
            "p_or_m": self.value,
            "trials": self.trials,
            "hits": self.hits,
            "inconclusive": self.inconclusive,
            "p_hat": self.p_hat,
            "wilson_lo": lo,
            "wilson_hi": hi,
            "wilson_width": hi - lo,
        }


# ---------------------------------------------------------------------------
# trial runner

def _one_trial(args):
    n, H, model, value, seed, stream, selector, budget = args
    rng = SeededRng(seed, stream)
    if model == "binomial":
        g = sample_binomial(n, H, value, rng)
    else:
        g = sample_uniform(n, H, int(value), rng)
    return resolve_property(selector)(g, budget)


def _tally(results) -> tuple[int, int, int]:
    hits = sum(r is True for r in results)
    inconclusive = sum(r is None for r in results)
    return hits, len(results) - inconclusive, inconclusive


def evaluate_point(
    n: int,
    H: Motif,
    value: float,
    trials: int,
    seed: int,
    streams,
    selector: str,
    model: str = "binomial",
    budget: int = DEFAULT_HAM_BUDGET,
    workers: int = 1,
) -> CurvePoint:
    resolve_property(selector)  # fail fast on a bad selector
    jobs = [(n, H, model, value, seed, s, selector, budget) for s in streams]
    hits, conclusive, inconclusive = _tally(parallel_map(_one_trial, jobs, workers))
    return CurvePoint(value, conclusive, hits, inconclusive)


def default_grid(centre: float, points: int = 7, span: float = 16.0) -> list[float]:
    """Geometric grid of ``points`` values spanning a factor ``span`` around ``centre``."""
    if points < 2:
        return [centre]
    lo = centre / math.sqrt(span)
    ratio = span ** (1 / (points - 1))
    return [lo * ratio**i for i in range(points)]


def natural_centre(cfg: ExperimentConfig, H: Motif) -> float:
    """Analytic location used for default grids: ``ln n / m_1`` for
    p-grids and ``n**(v - gamma_bar)`` (or ``m_1`` scale) for m-grids."""
    n = cfg.n
    p = math.log(max(n, 2)) / m_r(n, H, 1)
    if cfg.model == "binomial":
        return p
    if cfg.subject is not None:
        res = gamma_bar(load_motif(cfg.subject).edges, H)
        return float(n ** float(res.exponent))
    return p * total_copies(n, H)


def threshold_curve(cfg: ExperimentConfig) -> list[CurvePoint]:
    cfg.validate()
    H = cfg.load_motif()
    grid = list(cfg.grid)
    if not grid:
        grid = default_grid(natural_centre(cfg, H))
        if cfg.model == "uniform":
            grid = sorted({max(0, int(round(m))) for m in grid})
        else:
            grid = [min(1.0, p) for p in grid]
    out = []
    for gi, value in enumerate(grid):
        streams = range(gi * cfg.trials, (gi + 1) * cfg.trials)
        out.append(
            evaluate_point(
                cfg.n, H, value, cfg.trials, cfg.seed, streams, cfg.property,
                cfg.model, cfg.budget, cfg.workers,
            )
        )
    return out


def budget_dominated(points: list[CurvePoint]) -> bool:
    return any(p.inconclusive > p.trials for p in points)


def monotone_violations(points: list[CurvePoint]) -> list[tuple[float, float]]:
    """Pairs ``(x1, x2)`` with ``x1 < x2`` whose intervals are strictly
    ordered the wrong way."""
    bad = []
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            if a.interval[0] > b.interval[1]:
                bad.append((a.value, b.value))
    return bad


def curve_to_json(cfg: ExperimentConfig, points: list[CurvePoint], extra: dict | None = None) -> str:
    obj = {
        "config": cfg.to_json_obj(),
        "points": [p.to_json_obj() for p in points],
    }
    if extra:
        obj.update(extra)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def curve_to_csv(points: list[CurvePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p_or_m", "trials", "hits", "p_hat", "wilson_lo", "wilson_hi"])
    for p in points:
        lo, hi = p.interval
        w.writerow([repr(p.value), p.trials, p.hits, repr(p.p_hat), repr(lo), repr(hi)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# p_1/2 search

@dataclass
class PHalfResult:
    p: float
    lo: float
    hi: float
    evaluations: list = field(default_factory=list)
    stopped_by: str = ""

    def to_json_obj(self) -> dict:
        return {
            "p_half": self.p,
            "bracket": [self.lo, self.hi],
            "stopped_by": self.stopped_by,
            "evaluations": [e.to_json_obj() for e in self.evaluations],
        }


def estimate_p_half(
    selector: str,
    n: int,
    H: Motif,
    trials: int,
    rtol: float,
    seed: int,
    budget: int = DEFAULT_HAM_BUDGET,
    workers: int = 1,
    max_steps: int = 200,
) -> PHalfResult:
    """Bisection for ``Pr[G(H, n, p) has the property] = 1/2``.

    A geometric sweep upward from ``p = 1/N`` brackets the crossing, then
    bisection runs until a midpoint's Wilson interval contains 1/2 or the
    bracket's relative width drops below ``rtol``.  Each evaluation uses
    its own block of streams.
    """
    if rtol <= 0:
        raise ConfigError("rtol must be positive")
    if trials < 1:
        raise ConfigError("trials must be at least 1")
    N = total_copies(n, H)
    if N == 0:
        raise ConfigError(f"K_{n} holds no copy of {H.label}")
    evals: list[CurvePoint] = []

    def probe(p: float) -> CurvePoint:
        k = len(evals)
        pt = evaluate_point(
            n, H, p, trials, seed, [(k, t) for t in range(trials)], selector,
            "binomial", budget, workers,
        )
        evals.append(pt)
        ordered = sorted(evals, key=lambda e: e.value)
        bad = monotone_violations(ordered)
        if bad:
            raise NonMonotoneSignal(f"estimates decrease between p={bad[0][0]} and p={bad[0][1]}")
        return pt

    lo, hi = 0.0, None
    p = min(1.0, 1.0 / N)
    while True:
        pt = probe(p)
        if pt.p_hat >= 0.5:
            hi = p
            break
        lo = p
        if p >= 1.0:
            return PHalfResult(1.0, lo, 1.0, evals, "never reached 1/2")
        p = min(1.0, 2 * p)

    steps = 0
    while steps < max_steps:
        steps += 1
        mid = (lo + hi) / 2
        if (hi - lo) <= rtol * mid:
            return PHalfResult(mid, lo, hi, evals, "rtol")
        pt = probe(mid)
        w_lo, w_hi = pt.interval
        if w_lo <= 0.5 <= w_hi:
            return PHalfResult(mid, lo, hi, evals, "interval contains 1/2")
        if w_lo > 0.5:
            hi = mid
        else:
            lo = mid
    return PHalfResult((lo + hi) / 2, lo, hi, evals, "step limit")


# ---------------------------------------------------------------------------
# appearance of a fixed subgraph in the uniform model

def threshold_exponent(S, H: Motif) -> Fraction:
    """``v - gamma_bar``, from the closed form when ``H`` is a path and the
    subject is connected, otherwise by enumeration."""
    subj = Subject.of(S)
    if H.is_path() and subj.is_connected():
        return path_closed_form(subj, H.k).exponent
    return gamma_bar(subj, H).exponent


def appearance_experiment(
    S: Motif,
    H: Motif,
    n: int,
    m_grid,
    trials: int,
    seed: int,
    workers: int = 1,
) -> dict:
    exponent = threshold_exponent(S.edges, H)
    m_star = n ** float(exponent)
    points = []
    for gi, m in enumerate(m_grid):
        jobs = [(n, H, int(m), seed, gi * trials + t, S) for t in range(trials)]
        results = parallel_map(_appear_trial, jobs, workers)
        points.append(CurvePoint(int(m), trials, sum(results)))
    return {
        "subject": [list(e) for e in S.edges],
        "motif": H.label,
        "n": n,
        "exponent": str(exponent),
        "m_star": m_star,
        "points": [
            dict(p.to_json_obj(), log_ratio=(math.log(p.value / m_star) if p.value else None))
            for p in points
        ],
    }


def _appear_trial(args) -> bool:
    n, H, m, seed, stream, S = args
    g = sample_uniform(n, H, m, SeededRng(seed, stream))
    return contains_subgraph(g, S)


# ---------------------------------------------------------------------------
# isolated vertices just below the connectivity threshold

def isolated_p_minus(n: int, H: Motif) -> float:
    return (math.log(n) - math.log(math.log(n))) / m_r(n, H, 1)


def _iso_trial(args) -> int:
    n, H, p, seed, stream = args
    return sample_binomial(n, H, p, SeededRng(seed, stream)).isolated_count()


def isolated_vertex_stats(
    H: Motif, n: int, trials: int, seed: int, p: float | None = None, workers: int = 1
) -> dict:
    if n < 16:
        raise ConfigError("isolated-vertex statistics need n >= 16")
    if p is None:
        p = isolated_p_minus(n, H)
    jobs = [(n, H, p, seed, t) for t in range(trials)]
    counts = parallel_map(_iso_trial, jobs, workers)
    ln_n = math.log(n)
    return {
        "motif": H.label,
        "n": n,
        "p": p,
        "trials": trials,
        "ln_n": ln_n,
        "mean": math.fsum(counts) / trials,
        "max": max(counts),
        "fraction_at_most_2ln_n": sum(c <= 2 * ln_n for c in counts) / trials,
        "counts": counts,
    }


# ---------------------------------------------------------------------------
# hitting times

def hitting_experiment(
    H: Motif, n: int, trials: int, seed: int, targets=TARGETS, budget: int = DEFAULT_HAM_BUDGET,
    workers: int = 1,
) -> dict:
    res = hitting_stats(HittingConfig(n, H, trials, seed, tuple(targets), budget, workers))
    return {
        "config": res["config"],
        "summary": res["summary"],
        "reports": [r.to_dict() for r in res["reports"]],
    }


def formulas(H: Motif, n: int, d: int = 1) -> dict:
    """Counting and threshold quantities for ``H`` in ``K_n``."""
    out = {
        "motif": H.label,
        "k": H.k,
        "edges": [list(e) for e in H.edges],
        "aut": H.aut,
        "embeddings": H.num_embeddings,
        "min_degree": H.min_deg,
        "n": n,
        "N": str(total_copies(n, H)),
        "m_1": str(m_r(n, H, 1)),
    }
    if n >= 3:
        tp = threshold_params(n, H, d)
        out.update(
            d=d, delta_d=tp.delta_d, x=tp.x_of_n, p_minus=tp.p_minus, p_plus=tp.p_plus,
        )
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
