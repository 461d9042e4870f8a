"""Acceptance criteria, one test per criterion at its stated size, seed,
and time budget.  Run with ``pytest -v tests/test_acceptance.py`` for one
pass/fail line per criterion; each test also prints a summary line.
"""

import time

import pytest

from sparsekit.exactrank import (
    build_inclusion_matrix,
    column_basis,
    dependency_certificate,
    bipartition_identity_holds,
)
from sparsekit.gadgets import (
    _enumerate_proper,
    build_treegadget,
    build_triangular_gadget,
)
from sparsekit.generators import gen_hypergraph
from sparsekit.harness import HarnessConfig, verify
from sparsekit.instances import Graph, ListColoringInstance
from sparsekit.kernel import sparsify_hypergraph
from sparsekit.oracles import solve_list_coloring
from sparsekit.rng import Rng


def _timed(config, corrupt=None):
    t0 = time.monotonic()
    report = verify(config)
    return report, time.monotonic() - t0


@pytest.fixture(scope="session")
def kernel_hyp_modular_500():
    return _timed(HarnessConfig("kernel-hyp", trials=500, seed=0, yes_bias=0.0))


@pytest.fixture(scope="session")
def kernel_hyp_exact_500():
    return _timed(HarnessConfig("kernel-hyp", trials=500, seed=0, yes_bias=0.0,
                                exact=True))


@pytest.fixture(scope="session")
def kernel_nae_exact_200():
    return _timed(HarnessConfig("kernel-nae", trials=200, seed=0, yes_bias=0.0,
                                exact=True))


@pytest.fixture(scope="session")
def compose_ham_reports():
    m1 = _timed(HarnessConfig("compose-hamcycle", trials=50, seed=0,
                              params={"m": 1}))
    m2 = _timed(HarnessConfig("compose-hamcycle", trials=50, seed=0,
                              params={"m": 2}))
    return m1, m2


def _summary(name, report, elapsed, budget):
    status = "PASS" if report.ok else "FAIL"
    print(f"{name}: {status} ({report.agreements}/{report.trials} agree, "
          f"{elapsed:.1f}s / budget {budget:.0f}s)")


def test_criterion_1_kernel_bound(kernel_hyp_modular_500):
    # 500 random hypergraphs (n=10, d=3, seed 0): <= n^(r-1) edges per size
    # and <= 2 n^(d-1) in total, under 60 s
    report, elapsed = kernel_hyp_modular_500
    _summary("criterion 1 (kernel bound)", report, elapsed, 60)
    assert report.trials == 500
    assert report.size_checks_passed == 500
    assert report.ok
    assert elapsed < 60


def test_criterion_2_kernel_equivalence(kernel_hyp_exact_500, kernel_nae_exact_200):
    # exact mode: oracle verdicts of input and output agree on all 500
    # hypergraphs plus 200 random d=4 formulas on 8 variables, under 5 min
    hyp_report, hyp_elapsed = kernel_hyp_exact_500
    nae_report, nae_elapsed = kernel_nae_exact_200
    elapsed = hyp_elapsed + nae_elapsed
    _summary("criterion 2 (kernel equivalence)", nae_report, elapsed, 300)
    assert hyp_report.trials == 500 and hyp_report.agreements == 500
    assert nae_report.trials == 200 and nae_report.agreements == 200
    assert elapsed < 300


def test_criterion_3_bipartition_identity():
    # every dropped edge across 50 exact kernel runs, 100 random
    # bipartitions each: the signed bipartition identity holds exactly
    t0 = time.monotonic()
    rng = Rng(0)
    runs = certificates = checks = 0
    while runs < 50:
        h = gen_hypergraph(10, 3, 30, rng)
        _, report = sparsify_hypergraph(h, mode="exact")
        runs += 1
        matrices: dict[int, object] = {}
        bases: dict[int, object] = {}
        for j in report.dropped_indices:
            r = len(h.edges[j])
            if r not in matrices:
                matrices[r] = build_inclusion_matrix(h, r)
                bases[r] = column_basis(matrices[r], mode="exact")
            cert = dependency_certificate(matrices[r], bases[r], j)
            certificates += 1
            for _ in range(100):
                part1 = {v for v in range(1, 11) if rng.chance(0.5)}
                assert bipartition_identity_holds(h, cert, part1)
                checks += 1
    elapsed = time.monotonic() - t0
    print(f"criterion 3 (bipartition identity): PASS ({certificates} "
          f"certificates, {checks} checks, {elapsed:.1f}s / budget 120s)")
    assert certificates > 0
    assert elapsed < 120


def test_criterion_4_gadget_certifications(compose_ham_reports):
    t0 = time.monotonic()
    # triangular gadget: exhaustive over its proper 3-colorings (the same
    # space as all 3^12 assignments, improper prefixes pruned)
    gadget = build_triangular_gadget()
    rainbows = set()
    for coloring in _enumerate_proper(gadget.num_vertices, gadget.edges, 3):
        corners = tuple(coloring[c] for c in gadget.corners)
        assert len(set(corners)) == 3
        rainbows.add(corners)
    assert len(rainbows) == 6

    # treegadget root forcing for heights 0..3 and every color
    for q in (2, 4, 8, 16):
        tg = build_treegadget(q)
        graph = Graph(tg.num_vertices, [(a + 1, b + 1) for a, b in tg.edges])
        for k in (1, 2, 3):
            others = tuple(c for c in (1, 2, 3) if c != k)
            lists = [(1, 2, 3)] * tg.num_vertices
            for leaf in tg.leaves:
                lists[leaf] = others
            lists[tg.root] = others
            verdict = solve_list_coloring(ListColoringInstance(graph, lists)).verdict
            assert verdict == "no"

    # treegadget extension avoiding a leaf color, 200 random precolorings
    rng = Rng(1)
    for _ in range(200):
        q = rng.choice((2, 4, 8, 16))
        tg = build_treegadget(q)
        graph = Graph(tg.num_vertices, [(a + 1, b + 1) for a, b in tg.edges])
        leaf_colors = [rng.randint(1, 3) for _ in range(q)]
        for pair in range(q // 2):
            while leaf_colors[2 * pair] == leaf_colors[2 * pair + 1]:
                leaf_colors[2 * pair + 1] = rng.randint(1, 3)
        avoid = rng.choice(leaf_colors)
        lists = [(1, 2, 3)] * tg.num_vertices
        for leaf, c in zip(tg.leaves, leaf_colors):
            lists[leaf] = (c,)
        lists[tg.root] = tuple(c for c in (1, 2, 3) if c != avoid)
        assert solve_list_coloring(ListColoringInstance(graph, lists)).verdict == "yes"

    # path-gadget traversal: checked on every Hamiltonian cycle the
    # criterion-6 runs produced (certificate check includes it)
    for report, _ in compose_ham_reports:
        assert report.certificate_checks_passed == report.trials
    elapsed = time.monotonic() - t0
    print(f"criterion 4 (gadget certifications): PASS ({elapsed:.1f}s / budget 120s)")
    assert elapsed < 120


def test_criterion_5_four_coloring_composition():
    report, elapsed = _timed(HarnessConfig(
        "compose-4col", trials=100, seed=0, yes_bias=0.5,
        params={"t": 4, "m": 3, "n": 2}))
    _summary("criterion 5 (4-coloring OR-composition)", report, elapsed, 600)
    assert report.trials == 100 and report.agreements == 100
    assert report.size_checks_passed == 100   # 70 vertices each trial
    assert elapsed < 600


def test_criterion_6_hamiltonicity_composition(compose_ham_reports):
    (r1, t1), (r2, t2) = compose_ham_reports
    elapsed = t1 + t2
    _summary("criterion 6 (Hamiltonicity OR-composition)", r2, elapsed, 600)
    for report in (r1, r2):
        assert report.trials == 50 and report.agreements == 50
        assert report.size_checks_passed == 50   # 3(m+n)*2 + 9 each trial
        assert report.certificate_checks_passed == 50
    assert elapsed < 600


def test_criterion_7_dominating_set_composition():
    report, elapsed = _timed(HarnessConfig(
        "compose-domset", trials=100, seed=0, yes_bias=0.5,
        params={"t": 4, "k": 2, "m": 4, "n": 3}))
    _summary("criterion 7 (dominating-set OR-composition)", report, elapsed, 600)
    assert report.trials == 100 and report.agreements == 100
    assert report.size_checks_passed == 100   # 39 vertices, budget 4
    assert elapsed < 600


def test_criterion_8_reductions():
    t0 = time.monotonic()
    reports = {}
    for name in ("reduce-cnfsat-naesat", "reduce-naesat-hyp",
                 "reduce-naesat3-tsd", "reduce-hc-karp"):
        reports[name], _ = _timed(HarnessConfig(name, trials=200, seed=0))
    elapsed = time.monotonic() - t0
    ok = all(r.ok and r.agreements == 200 for r in reports.values())
    print(f"criterion 8 (reductions): {'PASS' if ok else 'FAIL'} "
          f"(4 x 200 trials, {elapsed:.1f}s / budget 600s)")
    for name, report in reports.items():
        assert report.agreements == 200, name
        assert report.size_checks_passed == 200, name
    assert elapsed < 600


def test_criterion_9_determinism(kernel_hyp_modular_500):
    # repeating a criterion's command with the same seed yields a
    # byte-identical report
    t0 = time.monotonic()
    first, _ = kernel_hyp_modular_500
    again = verify(HarnessConfig("kernel-hyp", trials=500, seed=0, yes_bias=0.0))
    assert first.to_json() == again.to_json()
    for config in (
        HarnessConfig("compose-domset", trials=100, seed=0,
                      params={"t": 4, "k": 2, "m": 4, "n": 3}),
        HarnessConfig("compose-hamcycle", trials=50, seed=0, params={"m": 1}),
        HarnessConfig("reduce-hc-karp", trials=200, seed=0),
        HarnessConfig("kernel-nae", trials=200, seed=0, yes_bias=0.0, exact=True),
        HarnessConfig("compose-4col", trials=10, seed=0),
    ):
        assert verify(config).to_json() == verify(config).to_json()
    elapsed = time.monotonic() - t0
    print(f"criterion 9 (determinism): PASS ({elapsed:.1f}s)")
