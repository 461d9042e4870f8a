"""Randomized verification harness: runs a transformation against the
exact oracles and reports agreement with the expected relation.

For kernels and reductions the expected relation is verdict equivalence;
for compositions it is OR-equivalence over the batch.  Each trial draws
from a per-trial seed (config seed XOR trial index) so every disagreement
is replayable from the printed seed alone.  Reports contain no timing, so
a repeated run with the same configuration is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import generators, oracles
from .certificates import check_certificate
from .compose import (
    compose_dominating_set,
    compose_four_coloring,
    compose_hamiltonicity,
    dominating_set_certificate,
    four_coloring_certificate,
    hamiltonicity_certificate,
    pad_batch,
)
from .generators import GeneratorError
from .instances import DecisionInstance
from .kernel import sparsify_hypergraph, sparsify_nae_sat
from .oracles import Limits
from .reductions import (
    cnfsat_to_naesat,
    directed_hc_to_undirected,
    naesat3_to_tsd,
    naesat_to_hypergraph,
)
from .rng import Rng, derive_seed

TRANSFORMATIONS = (
    "kernel-hyp",
    "kernel-nae",
    "reduce-cnfsat-naesat",
    "reduce-naesat-hyp",
    "reduce-naesat3-tsd",
    "reduce-hc-karp",
    "compose-4col",
    "compose-hamcycle",
    "compose-domset",
    "compose-conn-domset",
)

DEFAULT_PARAMS: dict[str, dict[str, int | float]] = {
    "kernel-hyp": {"n": 10, "d": 3, "edges": 30},
    "kernel-nae": {"n": 8, "d": 4, "clauses": 24},
    "reduce-cnfsat-naesat": {"n": 8, "d": 3, "clauses": 20},
    "reduce-naesat-hyp": {"n": 8, "d": 4, "clauses": 20},
    "reduce-naesat3-tsd": {"n": 5, "clauses": 6},
    "reduce-hc-karp": {"n": 7, "arcs": 14},
    "compose-4col": {"t": 4, "m": 3, "n": 2},
    "compose-hamcycle": {"t": 4, "m": 1},
    "compose-domset": {"t": 4, "k": 2, "m": 4, "n": 3},
    "compose-conn-domset": {"t": 4, "k": 2, "m": 4, "n": 3},
}

# harness oracle calls default to node budgets only: wall-clock cutoffs
# would make reports timing-dependent
HARNESS_LIMITS = Limits(time_limit=None)


@dataclass(frozen=True)
class HarnessConfig:
    transformation: str
    trials: int = 100
    seed: int = 0
    yes_bias: float = 0.5
    exact: bool = False
    params: dict = field(default_factory=dict)
    limits: Limits = HARNESS_LIMITS

    def resolved_params(self) -> dict:
        merged = dict(DEFAULT_PARAMS[self.transformation])
        merged.update(self.params)
        return merged

    def replay_command(self, trial_seed: int) -> str:
        parts = [f"sparsekit verify {self.transformation}",
                 "--trials 1", f"--seed {trial_seed}",
                 f"--yes-bias {self.yes_bias}"]
        if self.exact:
            parts.append("--exact")
        for key, value in sorted(self.resolved_params().items()):
            parts.append(f"--param {key}={value}")
        return " ".join(parts)


@dataclass
class TrialResult:
    expected: str
    got: str
    size_ok: bool = True
    cert_ok: bool = True
    timeouts: int = 0
    detail: str = ""

    @property
    def agrees(self) -> bool:
        return (self.expected == self.got and self.size_ok and self.cert_ok
                and self.timeouts == 0)


@dataclass
class HarnessReport:
    transformation: str
    config: dict
    trials: int = 0
    agreements: int = 0
    disagreements: list[dict] = field(default_factory=list)
    timeouts: int = 0
    size_checks_passed: int = 0
    certificate_checks_passed: int = 0

    @property
    def ok(self) -> bool:
        return not self.disagreements and self.timeouts == 0

    def to_json_dict(self) -> dict:
        return {
            "transformation": self.transformation,
            "config": self.config,
            "trials": self.trials,
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "timeouts": self.timeouts,
            "size_checks_passed": self.size_checks_passed,
            "certificate_checks_passed": self.certificate_checks_passed,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=True) + "\n"


def _verdict_pair(ans_in, ans_out) -> TrialResult:
    timeouts = sum(1 for a in (ans_in, ans_out) if a.verdict == oracles.TIMEOUT)
    return TrialResult(expected=ans_in.verdict, got=ans_out.verdict,
                       timeouts=timeouts)


def _gen_with_fallback(make: Callable[[str], object], plant: str):
    """Forced-NO planting can be infeasible (some classes are all-YES);
    fall back to the natural distribution."""
    try:
        return make(plant)
    except GeneratorError:
        return make("natural")


def _batch_plants(rng: Rng, count: int, yes_bias: float) -> list[str]:
    """Batch-level planting: with probability yes_bias the batch contains
    at least one guaranteed YES input, otherwise every input is sampled
    from the forced-NO distribution."""
    if rng.chance(yes_bias):
        plants = ["yes" if rng.chance(0.5) else "natural" for _ in range(count)]
        plants[rng.randrange(count)] = "yes"
        return plants
    return ["no"] * count


def _single_plant(rng: Rng, yes_bias: float) -> str:
    return "yes" if rng.chance(yes_bias) else "natural"


# --------------------------------------------------------------------------
# per-transformation trial bodies


def _trial_kernel_hyp(cfg: HarnessConfig, rng: Rng) -> TrialResult:
    p = cfg.resolved_params()
    h = generators.gen_hypergraph(p["n"], p["d"], p["edges"], rng,
                                  _single_plant(rng, cfg.yes_bias))
    mode = "exact" if cfg.exact else "modular"
    out, report = sparsify_hypergraph(h, mode=mode, seed=cfg.seed)
    result = _verdict_pair(oracles.solve_hypergraph_2col(h, cfg.limits),
                           oracles.solve_hypergraph_2col(out, cfg.limits))
    result.size_ok = (report.total_output <= report.total_bound and
                      all(row.output_count <= min(row.input_count, row.bound)
                          for row in report.rows))
    return result


def _trial_kernel_nae(cfg: HarnessConfig, rng: Rng) -> TrialResult:
    p = cfg.resolved_params()
    f = generators.gen_cnf(p["n"], p["d"], p["clauses"], rng,
                           _single_plant(rng, cfg.yes_bias))
    mode = "exact" if cfg.exact else "modular"
    out, report = sparsify_nae_sat(f, mode=mode, seed=cfg.seed)
    result = _verdict_pair(oracles.solve_nae(f, cfg.limits),
                           oracles.solve_nae(out, cfg.limits))
    result.size_ok = (report.total_output <= report.total_bound and
                      report.clause_output <= report.clause_input)
    return result


def _trial_cnfsat_naesat(cfg: HarnessConfig, rng: Rng) -> TrialResult:
    p = cfg.resolved_params()
    f = generators.gen_cnf(p["n"], p["d"], p["clauses"], rng,
                           _single_plant(rng, cfg.yes_bias), problem="sat")
    g = cnfsat_to_naesat(f)
    result = _verdict_pair(oracles.solve_sat(f, cfg.limits),
                           oracles.solve_nae(g, cfg.limits))
    result.size_ok = (g.num_vars == f.num_vars + 1 and
                      g.num_clauses == f.num_clauses)
    return result


def _trial_naesat_hyp(cfg: HarnessConfig, rng: Rng) -> TrialResult:
    p = cfg.resolved_params()
    f = generators.gen_cnf(p["n"], p["d"], p["clauses"], rng,
                           _single_plant(rng, cfg.yes_bias))
    h, trace = naesat_to_hypergraph(f)
    result = _verdict_pair(oracles.solve_nae(f, cfg.limits),
                           oracles.solve_hypergraph_2col(h, cfg.limits))
    result.size_ok = (h.num_vertices == 2 * f.num_vars and
                      trace.output_size["vertices"] == 2 * f.num_vars)
    return result


def _trial_naesat3_tsd(cfg: HarnessConfig, rng: Rng) -> TrialResult:
    p = cfg.resolved_params()
    f = generators.gen_cnf(p["n"], 3, p["clauses"], rng,
                           _single_plant(rng, cfg.yes_bias))
    inst, _ = naesat3_to_tsd(f)
    return _verdict_pair(oracles.solve_nae(f, cfg.limits),
                         oracles.solve_tsd(inst, cfg.limits))


def _trial_hc_karp(cfg: HarnessConfig, rng: Rng) -> TrialResult:
    p = cfg.resolved_params()
    plant = _single_plant(rng, cfg.yes_bias)
    d = _gen_with_fallback(
        lambda mode: generators.gen_digraph(p["n"], p["arcs"], rng, mode), plant)
    g, trace = directed_hc_to_undirected(d)
    result = _verdict_pair(oracles.solve_ham_cycle(d, cfg.limits),
                           oracles.solve_ham_cycle(g, cfg.limits))
    result.size_ok = (g.num_vertices == 3 * d.num_vertices and
                      trace.output_size["vertices"] == 3 * d.num_vertices)
    return result


def _or_expected(answers) -> str:
    if any(a.verdict == oracles.TIMEOUT for a in answers):
        return oracles.TIMEOUT
    return oracles.YES if any(a.verdict == oracles.YES for a in answers) else oracles.NO


def _trial_compose_4col(cfg: HarnessConfig, rng: Rng,
                        corrupt: Optional[Callable] = None) -> TrialResult:
    p = cfg.resolved_params()
    t = p["t"]
    plants = _batch_plants(rng, t, cfg.yes_bias)
    instances = [
        _gen_with_fallback(
            lambda mode: generators.gen_tsd(p["m"], p["n"], rng, plant=mode), plant)
        for plant in plants]
    batch = pad_batch(instances, "tsd")
    graph, trace = compose_four_coloring(batch)
    if corrupt is not None:
        graph = corrupt(graph, trace)
    answers = [oracles.solve_tsd(inst, cfg.limits) for inst in instances]
    composed = oracles.solve_graph_coloring(graph, 4, cfg.limits)
    result = TrialResult(expected=_or_expected(answers), got=composed.verdict)
    result.timeouts = sum(1 for a in answers + [composed]
                          if a.verdict == oracles.TIMEOUT)
    q = batch.q
    want = p["m"] * q + 12 * p["n"] * q + 3 * (q - 1) + 3 * (2 * q - 1) + 4
    result.size_ok = graph.num_vertices == want
    if result.expected == oracles.YES and corrupt is None:
        star = next(i for i, a in enumerate(answers) if a.verdict == oracles.YES)
        cert = four_coloring_certificate(batch, star, answers[star].certificate)
        result.cert_ok = check_certificate(DecisionInstance("4col", graph), cert)
        if not result.cert_ok:
            result.detail = "constructive coloring rejected"
    return result


def _gadget_traversal_ok(trace, cycle) -> bool:
    order = cycle.order
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    for name, in0 in trace.index_map.items():
        if not name.endswith(".in0"):
            continue
        mid, in1 = in0 + 1, in0 + 2
        before = order[(pos[mid] - 1) % n]
        after = order[(pos[mid] + 1) % n]
        if {before, after} != {in0, in1}:
            return False
    return True


def _trial_compose_ham(cfg: HarnessConfig, rng: Rng,
                       corrupt: Optional[Callable] = None) -> TrialResult:
    p = cfg.resolved_params()
    t = p["t"]
    plants = _batch_plants(rng, t, cfg.yes_bias)
    instances = [
        _gen_with_fallback(
            lambda mode: generators.gen_bipartite_ham(p["m"], rng, plant=mode), plant)
        for plant in plants]
    batch = pad_batch(instances, "ham")
    digraph, trace = compose_hamiltonicity(batch)
    if corrupt is not None:
        digraph = corrupt(digraph, trace)
    answers = [oracles.solve_ham_path_st(inst, cfg.limits) for inst in instances]
    composed = oracles.solve_ham_cycle(digraph, cfg.limits)
    result = TrialResult(expected=_or_expected(answers), got=composed.verdict)
    result.timeouts = sum(1 for a in answers + [composed]
                          if a.verdict == oracles.TIMEOUT)
    q = batch.q
    m, n = p["m"], p["m"] + 1
    result.size_ok = digraph.num_vertices == 3 * (m + n) * q + 6 * (q - 1) + 3
    if composed.verdict == oracles.YES and corrupt is None:
        # every path gadget must be crossed straight through
        if not _gadget_traversal_ok(trace, composed.certificate):
            result.cert_ok = False
            result.detail = "path gadget traversed out of order"
    if result.expected == oracles.YES and result.cert_ok and corrupt is None:
        star = next(i for i, a in enumerate(answers) if a.verdict == oracles.YES)
        cert = hamiltonicity_certificate(batch, star, answers[star].certificate)
        result.cert_ok = check_certificate(DecisionInstance("dhc", digraph), cert)
        if not result.cert_ok:
            result.detail = "constructive cycle rejected"
    return result


def _trial_compose_ds(cfg: HarnessConfig, rng: Rng,
                      corrupt: Optional[Callable] = None) -> TrialResult:
    p = cfg.resolved_params()
    t, k = p["t"], p["k"]
    if p["m"] % k:
        raise GeneratorError("red count m must be divisible by k")
    class_size = p["m"] // k
    plants = _batch_plants(rng, t, cfg.yes_bias)
    instances = [
        _gen_with_fallback(
            lambda mode: generators.gen_eq_col_rbds(k, class_size, p["n"], rng,
                                                    plant=mode), plant)
        for plant in plants]
    batch = pad_batch(instances, "rbds")
    graph, budget, trace = compose_dominating_set(batch)
    if corrupt is not None:
        graph = corrupt(graph, trace)
    answers = [oracles.solve_col_rbds(inst, cfg.limits) for inst in instances]
    ds = oracles.solve_dom_set(graph, budget, connected=False, limits=cfg.limits)
    cds = oracles.solve_dom_set(graph, budget, connected=True, limits=cfg.limits)
    expected = _or_expected(answers)
    result = TrialResult(expected=expected, got=ds.verdict)
    result.timeouts = sum(1 for a in answers + [ds, cds]
                          if a.verdict == oracles.TIMEOUT)
    if cds.verdict != ds.verdict:
        result.got = f"ds={ds.verdict},cds={cds.verdict}"
        result.detail = "plain and connected variants disagree"
    q = batch.q
    log_q = q.bit_length() - 1
    big_k = 2 + k + log_q
    want = (p["n"] * q + p["m"] * q + 2 + 3 * log_q + k * (k - 1) * 2 * big_k)
    result.size_ok = (graph.num_vertices == want and
                      budget == k + 1 + log_q)
    if result.expected == oracles.YES and corrupt is None:
        star = next(i for i, a in enumerate(answers) if a.verdict == oracles.YES)
        cert = dominating_set_certificate(batch, star, answers[star].certificate)
        ok_ds = check_certificate(
            DecisionInstance("ds", graph, budget=budget), cert)
        ok_cds = check_certificate(
            DecisionInstance("cds", graph, budget=budget), cert)
        result.cert_ok = ok_ds and ok_cds
        if not result.cert_ok:
            result.detail = "constructive dominating set rejected"
    return result


_TRIAL_BODIES = {
    "kernel-hyp": _trial_kernel_hyp,
    "kernel-nae": _trial_kernel_nae,
    "reduce-cnfsat-naesat": _trial_cnfsat_naesat,
    "reduce-naesat-hyp": _trial_naesat_hyp,
    "reduce-naesat3-tsd": _trial_naesat3_tsd,
    "reduce-hc-karp": _trial_hc_karp,
}

_COMPOSE_BODIES = {
    "compose-4col": _trial_compose_4col,
    "compose-hamcycle": _trial_compose_ham,
    "compose-domset": _trial_compose_ds,
    "compose-conn-domset": _trial_compose_ds,
}


def verify(config: HarnessConfig, corrupt: Optional[Callable] = None) -> HarnessReport:
    """Run the configured trials and aggregate agreements.

    ``corrupt`` is a test hook applied to each composed output (instance,
    trace) before oracle evaluation; the production CLI never sets it.
    Oracle refusals propagate to the caller rather than being swallowed.
    """
    if config.transformation not in TRANSFORMATIONS:
        raise ValueError(f"unknown transformation {config.transformation!r}")
    report = HarnessReport(
        transformation=config.transformation,
        config={
            "trials": config.trials,
            "seed": config.seed,
            "yes_bias": config.yes_bias,
            "exact": config.exact,
            "params": dict(sorted(config.resolved_params().items())),
        })
    for trial in range(config.trials):
        trial_seed = derive_seed(config.seed, trial)
        rng = Rng(trial_seed)
        if config.transformation in _COMPOSE_BODIES:
            result = _COMPOSE_BODIES[config.transformation](config, rng, corrupt)
        else:
            result = _TRIAL_BODIES[config.transformation](config, rng)
        report.trials += 1
        report.timeouts += result.timeouts
        report.size_checks_passed += 1 if result.size_ok else 0
        report.certificate_checks_passed += 1 if result.cert_ok else 0
        if result.agrees:
            report.agreements += 1
        else:
            report.disagreements.append({
                "trial": trial,
                "seed": trial_seed,
                "expected": result.expected,
                "got": result.got,
                "size_ok": result.size_ok,
                "cert_ok": result.cert_ok,
                "detail": result.detail,
                "replay": config.replay_command(trial_seed),
            })
    return report
