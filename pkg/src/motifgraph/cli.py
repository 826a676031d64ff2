"""Command-line entry point: ``motifgraph <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import harness
from .covering import Subject, gamma_bar, path_closed_form
from .errors import ConfigError, MotifGraphError
from .harness import ExperimentConfig
from .motif import load_motif
from .multigraph import MotifMultiGraph
from .properties import DEFAULT_HAM_BUDGET
from .sampler import SeededRng, sample_binomial, sample_uniform

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_CONFIG = 2
EXIT_INCONCLUSIVE = 3


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_subject(spec: str):
    try:
        return load_motif(spec).edges
    except FileNotFoundError:
        raise ConfigError(f"no such subject file or preset: {spec}") from None


def _config_from(args, fields: dict) -> ExperimentConfig:
    """Merge a JSON config file (if any) with explicit flags; flags win."""
    obj: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            text = fh.read()
        obj = json.loads(text) if text.strip() else {}
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
    for k, v in fields.items():
        if v is not None:
            obj[k] = v
    for req in ("motif", "n", "trials", "seed"):
        if obj.get(req) is None:
            raise ConfigError(f"missing required setting: {req}")
    return ExperimentConfig.from_json_obj(obj)


# ---------------------------------------------------------------------------
# subcommands

def cmd_sample(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required")
    if (args.p is None) == (args.m is None):
        raise ConfigError("give exactly one of --p and --m")
    H = load_motif(args.motif)
    graphs = []
    for t in range(args.trials):
        rng = SeededRng(args.seed, t)
        if args.p is not None:
            g = sample_binomial(args.n, H, args.p, rng)
        else:
            g = sample_uniform(args.n, H, args.m, rng)
        graphs.append(g.to_json_obj())
    obj = graphs[0] if args.trials == 1 else graphs
    _emit(json.dumps(obj, separators=(",", ":")) + "\n", args.out)
    return EXIT_OK


def cmd_process(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required")
    H = load_motif(args.motif)
    targets = tuple(t for t in args.targets.split(",") if t)
    res = harness.hitting_experiment(H, args.n, args.trials, args.seed, targets, args.budget, args.workers)
    _emit(harness.dumps(res), args.out)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "tau1", "tau2", "tau_c", "tau_M", "tau_H"])
        for i, r in enumerate(res["reports"]):
            w.writerow([i] + ["" if r[k] is None else r[k] for k in ("tau1", "tau2", "tau_c", "tau_M", "tau_H")])
        _emit(buf.getvalue(), args.csv)
    ham = res["summary"].get("ham_eq_tau2")
    if ham and ham["inconclusive"] > ham["conclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _grid_arg(text: str | None):
    if text is None:
        return None
    return [float(x) if any(c in x for c in ".eE") else int(x) for x in text.split(",") if x]


def cmd_curve(args) -> int:
    cfg = _config_from(
        args,
        dict(
            motif=args.motif, n=args.n, trials=args.trials, seed=args.seed,
            property=args.property, model=args.model, grid=_grid_arg(args.grid),
            budget=args.budget, workers=args.workers, output_json=args.out, output_csv=args.csv,
        ),
    )
    points = harness.threshold_curve(cfg)
    _emit(harness.curve_to_json(cfg, points), cfg.output_json)
    if cfg.output_csv:
        _emit(harness.curve_to_csv(points), cfg.output_csv)
    return EXIT_INCONCLUSIVE if harness.budget_dominated(points) else EXIT_OK


def cmd_phalf(args) -> int:
    cfg = _config_from(
        args,
        dict(
            motif=args.motif, n=args.n, trials=args.trials, seed=args.seed,
            property=args.property, rtol=args.rtol, budget=args.budget, workers=args.workers,
            output_json=args.out,
        ),
    )
    res = harness.estimate_p_half(
        cfg.property, cfg.n, cfg.load_motif(), cfg.trials, cfg.rtol, cfg.seed, cfg.budget, cfg.workers
    )
    obj = {"config": cfg.to_json_obj(), **res.to_json_obj()}
    _emit(harness.dumps(obj), cfg.output_json)
    return EXIT_INCONCLUSIVE if harness.budget_dominated(res.evaluations) else EXIT_OK


def cmd_gamma(args) -> int:
    S = _load_subject(args.subject)
    H = load_motif(args.motif)
    out: dict = {"subject": [list(e) for e in Subject.of(S).edges], "motif": H.label, "v": H.k}
    if args.closed_form:
        cf = path_closed_form(S, H.k)
        out.update(
            method="closed_form", exc=cf.exc, beta=cf.beta, eta=str(cf.eta),
            gamma_bar=str(cf.gamma_bar), exponent=str(cf.exponent),
        )
    else:
        res = gamma_bar(S, H, cap=args.cap)
        out.update(method="enumeration", **res.to_json_obj(witness=args.witness))
    if args.json:
        _emit(harness.dumps(out), args.out)
    else:
        lines = [f"gamma_bar = {out['gamma_bar']}", f"exponent = {out['exponent']}"]
        if "witness" in out:
            lines.append("witness = " + json.dumps(out["witness"], sort_keys=True))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_appear(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required")
    S = load_motif(args.subject)
    H = load_motif(args.motif)
    grid = _grid_arg(args.grid)
    if not grid:
        exponent = harness.threshold_exponent(S.edges, H)
        centre = args.n ** float(exponent)
        grid = sorted({max(0, int(round(m))) for m in harness.default_grid(centre)})
    res = harness.appearance_experiment(S, H, args.n, grid, args.trials, args.seed, args.workers)
    _emit(harness.dumps(res), args.out)
    return EXIT_OK


def cmd_formulas(args) -> int:
    H = load_motif(args.motif)
    _emit(harness.dumps(harness.formulas(H, args.n, args.d)), args.out)
    return EXIT_OK


def cmd_iso(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required")
    H = load_motif(args.motif)
    res = harness.isolated_vertex_stats(H, args.n, args.trials, args.seed, args.p, args.workers)
    _emit(harness.dumps(res), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    with open(args.graph) if args.graph != "-" else sys.stdin as fh:
        g = MotifMultiGraph.from_json(fh.read())
    fn = harness.resolve_property(args.property)
    verdict = fn(g, args.budget)
    if verdict is None:
        sys.stdout.write("inconclusive\n")
        return EXIT_INCONCLUSIVE
    sys.stdout.write(("true" if verdict else "false") + "\n")
    return EXIT_OK if verdict else EXIT_FALSE


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="motifgraph", description="Random motif graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, seed=True, trials=True):
        p.add_argument("--motif", help="preset (edge, triangle, path:k, cycle:k, clique:k, star:k) or edge-list file")
        p.add_argument("--n", type=int)
        if trials:
            p.add_argument("--trials", type=int)
        if seed:
            p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("sample", help="draw motif graphs as JSON")
    common(p)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_sample, trials=1)

    p = sub.add_parser("process", help="hitting times of the motif process")
    common(p)
    p.add_argument("--targets", default="conn,pm,ham")
    p.add_argument("--budget", type=int, default=DEFAULT_HAM_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_process, trials=1)

    p = sub.add_parser("curve", help="empirical threshold curve")
    common(p)
    p.add_argument("--config")
    p.add_argument("--property")
    p.add_argument("--model", choices=harness.MODELS)
    p.add_argument("--grid", help="comma-separated p or m values")
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("phalf", help="bisection for the p at which the property has probability 1/2")
    common(p)
    p.add_argument("--config")
    p.add_argument("--property")
    p.add_argument("--rtol", type=float)
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_phalf)

    p = sub.add_parser("gamma", help="exact gamma-bar of a subject graph")
    p.add_argument("--subject", required=True)
    p.add_argument("--motif", required=True)
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("appear", help="subgraph appearance in the uniform model")
    common(p)
    p.add_argument("--subject", required=True)
    p.add_argument("--grid", help="comma-separated m values")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_appear, trials=100)

    p = sub.add_parser("formulas", help="copy counts and threshold parameters")
    common(p, seed=False, trials=False)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("iso", help="isolated vertices below the connectivity threshold")
    common(p)
    p.add_argument("--p", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_iso, trials=100)

    p = sub.add_parser("check", help="test a property of a graph JSON file")
    p.add_argument("graph", help="multigraph JSON file or - for stdin")
    p.add_argument("--property", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_HAM_BUDGET)
    p.set_defaults(func=cmd_check)
    return ap


def _default_trials(args) -> None:
    if getattr(args, "trials", 0) is None and args.command in ("sample", "process", "appear", "iso"):
        args.trials = 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_motif = args.command in ("sample", "process", "appear", "formulas", "iso")
    try:
        if needs_motif and (args.motif is None or args.n is None):
            raise ConfigError("--motif and --n are required")
        _default_trials(args)
        return args.func(args)
    except (ConfigError, MotifGraphError, ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
