"""Command-line surface.

Subcommands: sparsify, reduce, compose, solve, check, gen, verify, stats.

Exit codes: ``solve`` uses 10 = yes, 20 = no, 30 = timeout or refused;
``check`` uses 0 = valid, 1 = invalid; ``verify`` uses 0 = all agree,
1 = disagreement, 2 = usage error, 3 = oracle refusal; everything else
returns 0 on success and 2 on usage/parse errors.  All randomness is
seeded, and reports carry no timing, so identical command lines produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import formats, generators, oracles
from .compose import (
    BatchError,
    compose_dominating_set,
    compose_four_coloring,
    compose_hamiltonicity,
    pad_batch,
)
from .certificates import CertificateMismatch, check_certificate
from .formats import ParseError
from .generators import GeneratorError
from .harness import DEFAULT_PARAMS, TRANSFORMATIONS, HarnessConfig, verify
from .instances import (
    CnfFormula,
    DecisionInstance,
    Digraph,
    Graph,
    Hypergraph,
    InvariantError,
    PROBLEMS,
)
from .kernel import sparsify_hypergraph, sparsify_nae_sat
from .oracles import Limits, OracleRefused
from .reductions import (
    cnfsat_to_naesat,
    directed_hc_to_undirected,
    naesat3_to_tsd,
    naesat_to_hypergraph,
)

REDUCTIONS = ("cnfsat-naesat", "naesat-hyp", "naesat3-tsd", "hc-karp")
COMPOSE_KINDS = ("4col", "hamcycle", "domset", "conn-domset")


class UsageError(ValueError):
    pass


def _parse_params(pairs: list[str]) -> dict:
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise UsageError(f"--param expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        try:
            params[key] = int(raw)
        except ValueError:
            try:
                params[key] = float(raw)
            except ValueError:
                raise UsageError(f"--param {key} needs a number, got {raw!r}")
    return params


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _trace_out(trace, path: str | None) -> None:
    doc = json.dumps(trace.to_json_dict(), indent=1, sort_keys=True) + "\n"
    if path:
        _write_text(path, doc)
    else:
        sys.stderr.write(doc)


def _limits(args) -> Limits:
    return Limits(node_budget=args.nodes,
                  time_limit=args.time_limit if args.time_limit > 0 else None)


# --------------------------------------------------------------------------
# subcommands


def _cmd_sparsify(args) -> int:
    value = formats.load_any(args.input)
    mode = "exact" if args.exact else "modular"
    if mode == "modular":
        sys.stderr.write("notice: modular mode; verdict preservation is "
                         "certified only with --exact\n")
    if isinstance(value, Hypergraph):
        out, report = sparsify_hypergraph(value, mode=mode, seed=args.seed)
        formats.save_any(args.output, out)
    elif isinstance(value, CnfFormula):
        out, report = sparsify_nae_sat(value, mode=mode, seed=args.seed)
        formats.save_any(args.output, out)
    else:
        raise UsageError("sparsify expects a CNF or hypergraph input")
    if args.report:
        _write_text(args.report,
                    json.dumps(report.to_json_dict(), indent=1, sort_keys=True) + "\n")
    if isinstance(value, Hypergraph):
        print(f"kept {report.total_output}/{report.total_input} edges "
              f"(bound {report.total_bound})")
    else:
        print(f"kept {report.clause_output}/{report.clause_input} clauses")
    return 0


def _cmd_reduce(args) -> int:
    value = formats.load_any(args.input)
    name = args.name
    if name == "cnfsat-naesat":
        if not isinstance(value, CnfFormula):
            raise UsageError("cnfsat-naesat expects a CNF input")
        out = cnfsat_to_naesat(value)
        trace = None
    elif name == "naesat-hyp":
        if not isinstance(value, CnfFormula):
            raise UsageError("naesat-hyp expects a CNF input")
        out, trace = naesat_to_hypergraph(value)
    elif name == "naesat3-tsd":
        if not isinstance(value, CnfFormula):
            raise UsageError("naesat3-tsd expects a CNF input")
        out, trace = naesat3_to_tsd(value)
    elif name == "hc-karp":
        if not isinstance(value, Digraph):
            raise UsageError("hc-karp expects a digraph input")
        out, trace = directed_hc_to_undirected(value)
    else:
        raise UsageError(f"unknown reduction {name!r}")
    formats.save_any(args.output, out)
    if trace is not None:
        _trace_out(trace, args.trace)
    return 0


def _collect_inputs(spec: str) -> list[str]:
    if os.path.isdir(spec):
        names = sorted(os.listdir(spec))
        return [os.path.join(spec, n) for n in names
                if not n.startswith(".")]
    return [p for p in spec.split(",") if p]


def _cmd_compose(args) -> int:
    paths = _collect_inputs(args.inputs)
    if not paths:
        raise UsageError("no input instances found")
    instances = [formats.load_any(p) for p in paths]
    kind = {"4col": "tsd", "hamcycle": "ham",
            "domset": "rbds", "conn-domset": "rbds"}[args.kind]
    batch = pad_batch(instances, kind)
    if args.kind == "4col":
        out, trace = compose_four_coloring(batch)
        formats.save_any(args.out, out)
    elif args.kind == "hamcycle":
        out, trace = compose_hamiltonicity(batch)
        formats.save_any(args.out, out)
    else:
        out, budget, trace = compose_dominating_set(batch)
        text = f"c budget {budget}\n" + formats.serialize_any(out)
        _write_text(args.out, text)
    _trace_out(trace, args.trace)
    return 0


def _decision_instance(problem: str, value, budget) -> DecisionInstance:
    if problem in ("ds", "cds"):
        if budget is None:
            raise UsageError(f"problem {problem!r} requires --budget")
        return DecisionInstance(problem, value, budget=budget)
    if budget is not None:
        raise UsageError(f"problem {problem!r} does not take a budget")
    return DecisionInstance(problem, value)


def _cmd_solve(args) -> int:
    value = formats.load_any(args.input)
    try:
        di = _decision_instance(args.problem, value, args.budget)
    except InvariantError as exc:
        raise UsageError(str(exc)) from None
    try:
        answer = oracles.solve_decision(di, _limits(args))
    except OracleRefused as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return 30
    print(answer.verdict)
    sys.stderr.write(f"nodes={answer.stats.nodes} "
                     f"elapsed={answer.stats.elapsed:.3f}s\n")
    if answer.verdict == oracles.YES and args.cert:
        _write_text(args.cert, formats.serialize_certificate(answer.certificate))
    return {"yes": 10, "no": 20, "timeout": 30}[answer.verdict]


def _cmd_check(args) -> int:
    value = formats.load_any(args.instance)
    with open(args.certificate, "r", encoding="utf-8") as fh:
        cert = formats.parse_certificate_json(fh.read())
    try:
        di = _decision_instance(args.problem, value, args.budget)
        ok = check_certificate(di, cert)
    except (InvariantError, CertificateMismatch) as exc:
        raise UsageError(str(exc)) from None
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def _cmd_gen(args) -> int:
    params = _parse_params(args.param)
    inst = generators.generate(args.kind, params, args.seed, args.plant)
    formats.save_any(args.out, inst)
    return 0


def _cmd_verify(args) -> int:
    params = _parse_params(args.param)
    config = HarnessConfig(
        transformation=args.transformation,
        trials=args.trials,
        seed=args.seed,
        yes_bias=args.yes_bias,
        exact=args.exact,
        params=params,
        limits=Limits(node_budget=args.nodes, time_limit=None),
    )
    try:
        report = verify(config)
    except OracleRefused as exc:
        sys.stderr.write(f"oracle refused: {exc}\n")
        return 3
    if args.report:
        _write_text(args.report, report.to_json())
    print(f"{report.transformation}: {report.agreements}/{report.trials} agree, "
          f"{len(report.disagreements)} disagreements, {report.timeouts} timeouts")
    for bad in report.disagreements:
        print(f"  trial {bad['trial']} seed {bad['seed']}: expected "
              f"{bad['expected']}, got {bad['got']}; replay: {bad['replay']}")
    return 0 if report.ok else 1


def _stats_line(value) -> str:
    if isinstance(value, Hypergraph):
        n = value.num_vertices
        sizes: dict[int, int] = {}
        for e in value.edges:
            sizes[len(e)] = sizes.get(len(e), 0) + 1
        if not sizes:
            return f"n={n}, edges: none"
        parts = []
        for r in sorted(sizes):
            bound = n ** (r - 1)
            note = f" (bound {bound})" if sizes[r] <= bound else ""
            parts.append(f"r={r}:{sizes[r]}{note}")
        return f"n={n}, edges: " + ", ".join(parts)
    if isinstance(value, CnfFormula):
        n = value.num_vars
        sizes = {}
        for c in value.clauses:
            sizes[len(c)] = sizes.get(len(c), 0) + 1
        if not sizes:
            return f"n={n}, clauses: none"
        parts = []
        for r in sorted(sizes):
            bound = (2 * n) ** (r - 1)
            note = f" (bound {bound})" if sizes[r] <= bound else ""
            parts.append(f"r={r}:{sizes[r]}{note}")
        return f"n={n}, clauses: " + ", ".join(parts)
    if isinstance(value, Graph):
        return f"n={value.num_vertices}, edges={len(value.edges)}"
    if isinstance(value, Digraph):
        return f"n={value.num_vertices}, arcs={len(value.arcs)}"
    name = type(value).__name__
    return f"{name}: n={value.graph.num_vertices}, edges={len(value.graph.edges)}"


def _cmd_stats(args) -> int:
    print(_stats_line(formats.load_any(args.input)))
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsekit",
        description="hypergraph/NAE-SAT sparsification, reductions, "
                    "OR-compositions, and exact oracles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sparsify", help="sparsify a hypergraph or NAE formula")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_sparsify)

    p = sub.add_parser("reduce", help="apply a problem reduction")
    p.add_argument("name", choices=REDUCTIONS)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--trace")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("compose", help="OR-composition of same-class instances")
    p.add_argument("kind", choices=COMPOSE_KINDS)
    p.add_argument("--inputs", required=True,
                   help="directory or comma-separated instance files")
    p.add_argument("--out", required=True)
    p.add_argument("--trace")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("solve", help="run an exact oracle")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("input")
    p.add_argument("--budget", type=int)
    p.add_argument("--cert")
    p.add_argument("--nodes", type=int, default=Limits.node_budget)
    p.add_argument("--time-limit", type=float, default=60.0,
                   help="seconds; 0 disables the wall clock")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="validate a certificate")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("kind", choices=generators.GEN_KINDS)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plant", choices=("natural", "yes", "no"), default="natural")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="randomized oracle-equivalence harness")
    p.add_argument("transformation", choices=TRANSFORMATIONS)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--yes-bias", type=float, default=0.5)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--report")
    p.add_argument("--nodes", type=int, default=Limits.node_budget)
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help=f"size parameters; defaults per transformation: "
                        f"{DEFAULT_PARAMS}")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stats", help="print instance size summary")
    p.add_argument("input")
    p.set_defaults(func=_cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, InvariantError, BatchError,
            GeneratorError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
