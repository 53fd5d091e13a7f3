"""Acceptance suite. Each test prints a single PASS/FAIL line for its criterion.

Tolerances are fixed here and must not be loosened to make a run pass.
"""

import os
import resource
import subprocess
import sys
import time
from statistics import mean

import pytest

from conftest import ACCEPTANCE_LINES, example_graphs, random_corpus
from controlmode.classification import classify_nodes
from controlmode.graph import read_edge_list
from controlmode.matching import maximum_matching, verify_maximum_matching
from controlmode.oracle import oracle_classification
from controlmode.rewiring import alter_to_centralized
from controlmode.sweep import SweepConfig, sweep_rows

CORPUS_SIZE = 1000
CORPUS_SEED = 20240601
ORACLE_SECONDS = 60.0
INDEPENDENCE_GRAPHS = 100
INDEPENDENCE_SEEDS = 10
SWEEP = SweepConfig(n=10_000, k_min=6, k_max=18, k_step=4, instances_per_k=5, gamma=3.0, filter_input_largest=True)
K14_IN_BEFORE_MIN = 0.70
K14_IN_AFTER_MAX = 0.15
PM_MAX = 0.02
PR_MIN = 0.90
DATASET_ENV = "CONTROLMODE_DATASET"
DATASET_IC_BEFORE = 0.9058
DATASET_IC_TOL = 0.05
DATASET_DELTA_IC_MIN = 0.95
PERF_EDGES = 1_000_000
PERF_SECONDS = 300.0
PERF_BYTES = 4 * 1024**3


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def corpus_with_examples():
    return random_corpus(CORPUS_SIZE, seed=CORPUS_SEED) + list(example_graphs().values())


def test_criterion_1_oracle_equivalence():
    start = time.perf_counter()
    bad = 0
    graphs = corpus_with_examples()
    for g in graphs:
        truth = oracle_classification(g)
        m = maximum_matching(g)
        if m.size != truth["max_size"] or classify_nodes(g, m).inputs() != truth["input"]:
            bad += 1
    took = time.perf_counter() - start
    record(1, bad == 0 and took < ORACLE_SECONDS, f"{bad} disagreements on {len(graphs)} graphs, {took:.1f}s")


def test_criterion_2_rewiring_post_condition():
    violations = 0
    graphs = corpus_with_examples()
    for g0 in graphs:
        g = g0.copy()
        out = alter_to_centralized(g, check=False)
        try:
            verify_maximum_matching(g, out.matching)
        except Exception:
            violations += 1
            continue
        truth = oracle_classification(g)
        comp = out.target_component
        if comp is not None and (comp.members - comp.drivers) & truth["input"]:
            violations += 1
        elif truth["n_d"] != oracle_classification(g0)["n_d"]:
            violations += 1
    record(2, violations == 0, f"{violations} violations on {len(graphs)} graphs")


def test_criterion_3_matching_independence():
    differing = 0
    for g in random_corpus(CORPUS_SIZE, seed=CORPUS_SEED)[:INDEPENDENCE_GRAPHS]:
        seen = {tuple(classify_nodes(g, maximum_matching(g, seed=s)).labels) for s in range(INDEPENDENCE_SEEDS)}
        differing += len(seen) != 1
    record(3, differing == 0, f"{differing} of {INDEPENDENCE_GRAPHS} graphs changed with the matching")


@pytest.fixture(scope="module")
def sweep_table():
    rows = sweep_rows(SWEEP)
    table = {}
    for row in rows:
        if row[-1].startswith("error:"):
            continue
        k = float(row[0])
        table.setdefault(k, []).append([float(x) for x in row[5:]])
    return table


def column(table, k, name):
    idx = ["in_before", "in_after", "ic_max_before", "p_m", "p_r", "delta_nd", "delta_ic"].index(name)
    return mean(r[idx] for r in table[k])


@pytest.mark.slow
def test_criterion_4_trend(sweep_table):
    ks = sorted(sweep_table)
    means = [column(sweep_table, k, "in_before") for k in ks]
    monotone = ks == SWEEP.k_values() and all(a <= b for a, b in zip(means, means[1:]))
    in_b, in_a = column(sweep_table, 14, "in_before"), column(sweep_table, 14, "in_after")
    ok = monotone and in_b >= K14_IN_BEFORE_MIN and in_a <= K14_IN_AFTER_MAX
    counts = {k: len(sweep_table[k]) for k in ks}
    record(
        4,
        ok,
        f"mean in_before {dict(zip(ks, [round(x, 3) for x in means]))}, k=14 {in_b:.3f}->{in_a:.3f}, rows {counts}",
    )


@pytest.mark.slow
def test_criterion_5_edge_economy(sweep_table):
    ks = [k for k in sorted(sweep_table) if k >= 10]
    pm = {k: column(sweep_table, k, "p_m") for k in ks}
    pr = {k: column(sweep_table, k, "p_r") for k in ks}
    ok = bool(ks) and max(pm.values()) <= PM_MAX and min(pr.values()) >= PR_MIN
    record(5, ok, f"p_m {{{', '.join(f'{k:g}: {v:.4f}' for k, v in pm.items())}}}, "
           f"p_r {{{', '.join(f'{k:g}: {v:.3f}' for k, v in pr.items())}}}")


def test_criterion_6_dataset():
    path = os.environ.get(DATASET_ENV)
    if not path:
        ACCEPTANCE_LINES.append(f"criterion 6: SKIPPED (set {DATASET_ENV} to an edge-list file)")
        pytest.skip(f"{DATASET_ENV} not set")
    g = read_edge_list(path, dedup=True)
    out = alter_to_centralized(g)
    ic = out.report_before.ic_max
    ok = abs(ic - DATASET_IC_BEFORE) <= DATASET_IC_TOL and out.delta_ic >= DATASET_DELTA_IC_MIN
    record(6, ok, f"N={g.node_count} L={out.report_before.l} ic_max_before={ic:.4f} delta_ic={out.delta_ic:.4f}")


def cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "controlmode", *map(str, args)], cwd=cwd, capture_output=True, check=True)


@pytest.mark.slow
def test_criterion_7_performance(tmp_path):
    graph = tmp_path / "big.txt"
    cli("generate", "--nodes", PERF_EDGES // 5, "--k", 10, "--seed", 1, "--out", graph, cwd=tmp_path)
    start = time.perf_counter()
    cli("analyze", "--graph", graph, "--json", tmp_path / "a.json", cwd=tmp_path)
    cli("rewire", "--graph", graph, "--json", tmp_path / "r.json", "--out-graph", tmp_path / "out.txt", cwd=tmp_path)
    took = time.perf_counter() - start
    # ru_maxrss is in KiB on Linux; the largest child is the peak of either command
    peak = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss * 1024
    ok = took < PERF_SECONDS and peak < PERF_BYTES
    record(7, ok, f"{PERF_EDGES} edges, {took:.1f}s, peak RSS {peak / 1024**2:.0f} MiB")


def run_in_fresh_dir(base, name, command, graph_text):
    """Run one command in a new directory and return its stdout plus every file it wrote."""
    work = base / name
    work.mkdir()
    (work / "g.txt").write_text(graph_text)
    stdout = cli(*command, cwd=work).stdout
    written = {p.name: p.read_bytes() for p in sorted(work.iterdir()) if p.name != "g.txt"}
    return stdout, written


def test_criterion_8_determinism(tmp_path):
    graph_text = "a b\na c\nd a\nb e\ne b\n"
    commands = [
        ["generate", "--nodes", 500, "--k", 6, "--seed", 3, "--out", "sf.txt"],
        ["generate", "--model", "er", "--nodes", 500, "--k", 6, "--seed", 3],
        ["analyze", "--graph", "g.txt", "--labels"],
        ["rewire", "--graph", "g.txt", "--out-graph", "h.txt", "--original-labels"],
        ["rewire", "--graph", "g.txt", "--guard", "stepwise", "--json", "r.json"],
        ["verify", "--graph", "g.txt"],
        ["sweep", "--nodes", 300, "--k-min", 4, "--k-max", 6, "--k-step", 2, "--instances", 2,
         "--filter-input-largest", "--csv", "s.csv"],
    ]
    differing = []
    for i, c in enumerate(commands):
        first = run_in_fresh_dir(tmp_path, f"{i}a", c, graph_text)
        second = run_in_fresh_dir(tmp_path, f"{i}b", c, graph_text)
        if first != second:
            differing.append(c[0])
    record(8, not differing, f"{len(commands)} commands run twice, differing: {differing or 'none'}")
