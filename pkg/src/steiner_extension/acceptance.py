"""Seeded acceptance suites.

Every suite returns a JSON-ready dict that holds only seeds, counts, answers
and failures. Wall time is measured by the caller, so two runs with the same
seeds serialise to the same bytes.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from math import comb
from typing import Callable

import networkx as nx
import numpy as np

from . import deletion, oracle
from .connectivity import is_p_edge_connected, min_cut_value
from .generators import random_degenerate
from .graph import Graph, TreeDecomposition, equivalent_digraph, ordering_from_cutwidth_layout, ordering_from_tree_decomposition
from .instance_io import Instance
from .linalg import PrimeField
from .matroid import GroundElement, LinearMatroid, graphic_representation, is_independent, out_partition_representation
from .obstructions import find_obstruction_t2c3c4, ordering_is_2_degenerate, pw1_structure
from .repfam import SetFamily, reduce_family
from .sse import solve_extension

BASE_SEED = 20240601
MAX_LISTED = 10  # failures echoed in a report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _report(name: str, instances: int, failures: list, **summary) -> dict:
    return {
        "suite": name,
        "seed": BASE_SEED,
        "instances": instances,
        "failures": len(failures),
        "failed": failures[:MAX_LISTED],
        "summary": summary,
    }


def _edges(g: Graph) -> list:
    return [[u, v] for u, v in g.sorted_edges()]


# 1. SSE against the exhaustive oracle


def sse_corpus(count: int = 200, seed: int = BASE_SEED):
    """Instances biased towards the dynamic program: p at most the degeneracy
    and terminals drawn from a radius-2 ball, so prechecks rarely decide."""
    rng = random.Random(seed)
    for t in range(count):
        n = rng.randint(3, 10)
        eta = rng.randint(1, 3)
        g = random_degenerate(n, eta, seed=seed + t, density=rng.choice([0.8, 1.0, 1.0]))
        k = rng.randint(2, min(5, n))
        p = rng.randint(1, eta)
        centre = rng.randrange(n)
        dist = g.bfs_distances([centre])
        ball = sorted(v for v in range(n) if dist.get(v, n) <= 2)
        x = frozenset(rng.sample(ball, min(len(ball), rng.randint(0, min(3, k)))))
        strict = rng.random() < 0.7
        yield t, g, x, k, p, strict


def suite_sse(count: int = 200, seed: int = BASE_SEED) -> dict:
    from .cli import verify_solution

    failures, answers = [], []
    yes = 0
    for t, g, x, k, p, strict in sse_corpus(count, seed):
        ours = solve_extension(g, x, k, p, seed=t, strict=strict)
        truth = oracle.brute_solve_sse(g, x, k, p, strict=strict)
        answers.append([t, ours.status, sorted(ours.solution) if ours.yes else None])
        yes += truth.yes
        problem = None
        if ours.status != truth.status:
            problem = f"solver {ours.status}, oracle {truth.status}"
        elif ours.yes:
            inst = Instance(g, x, k, p)
            bad = verify_solution("sse", inst, ours.solution, {"k": k, "p": p}, strict)
            if bad:
                problem = f"witness rejected: {bad}"
        if problem:
            failures.append({"instance": t, "problem": problem, "n": g.n, "edges": _edges(g), "x": sorted(x), "k": k, "p": p, "strict": strict})
    return _report("sse-oracle-equivalence", count, failures, oracle_yes=yes, answers=answers)


# 2. representative families


def random_matroid(rng: np.random.Generator, rank: int, ground: int, field: PrimeField) -> LinearMatroid:
    mat = rng.integers(0, field.modulus, size=(rank, ground), dtype=np.int64)
    # a few parallel and zero columns so that dependent members occur
    for c in range(ground):
        roll = rng.random()
        if roll < 0.1:
            mat[:, c] = 0
        elif roll < 0.25 and c:
            mat[:, c] = mat[:, int(rng.integers(0, c))] * int(rng.integers(1, field.modulus)) % field.modulus
    return LinearMatroid.from_columns(field, mat, [GroundElement(1, c) for c in range(ground)])


def suite_repfam(count: int = 50, seed: int = BASE_SEED) -> dict:
    rng = np.random.default_rng(seed)
    field = PrimeField(1_000_003)
    failures, sizes = [], []
    for t in range(count):
        s = int(rng.integers(1, 5))
        q = int(rng.integers(0, min(4, 8 - s) + 1))
        rows = int(rng.integers(s + q, 9))
        ground = int(rng.integers(rows, min(rows + 4, 12) + 1))
        m = random_matroid(rng, rows, ground, field)
        while m.rank < s + q:
            m = random_matroid(rng, rows, ground, field)
        rank = m.rank
        pool = [tuple(sorted(int(c) for c in rng.choice(ground, size=s, replace=False))) for _ in range(int(rng.integers(1, 41)))]
        members = sorted(set(pool))
        fam = SetFamily.of([[(1, c) for c in mem] for mem in members], s)
        out = reduce_family(m, fam, q, seed=t)
        bound = comb(s + q, q)
        ok = oracle.brute_repfam_check(m, fam, out, q)
        sizes.append([t, rank, s, q, len(fam), len(out)])
        if not ok or len(out) > bound:
            failures.append({"instance": t, "representative": ok, "size": len(out), "bound": bound, "rank": rank, "s": s, "q": q})
    return _report("representative-families", count, failures, sizes=sizes)


# 3. branchings and matroid characterisations


def connected_corpus(count: int = 120, seed: int = BASE_SEED) -> list[Graph]:
    rng = random.Random(seed)
    graphs = []
    for t in range(count):
        n = rng.randint(2, 6)
        eta = rng.randint(1, min(4, n - 1))
        graphs.append(random_degenerate(n, eta, seed=seed + t, density=rng.choice([0.5, 1.0, 1.0])))
    return graphs


def suite_matroids(graphs: int = 120, arc_sets: int = 600, seed: int = BASE_SEED) -> dict:
    corpus = connected_corpus(graphs, seed)
    failures = []
    packing = []
    for t, g in enumerate(corpus):
        everything = range(g.n)
        for p in (1, 2, 3):
            lhs = is_p_edge_connected(g, everything, p)
            rhs = oracle.brute_branching_packing(g, 0, p)
            packing.append([t, p, lhs])
            if lhs != rhs:
                failures.append({"graph": t, "p": p, "edge_connected": lhs, "branchings": rhs, "edges": _edges(g)})
    rng = random.Random(seed + 1)
    field = PrimeField(1_000_003)
    positives = 0
    for t in range(arc_sets):
        gi = rng.randrange(len(corpus))
        g = corpus[gi]
        root = rng.randrange(g.n)
        d = equivalent_digraph(g, root)
        graphic = graphic_representation(g, d.arcs, field)
        partition = out_partition_representation(d, field)
        arcs = list(range(len(d.arcs)))
        if rng.random() < 0.5:
            # one in-arc per non-root vertex: branchings or a cycle
            chosen = [rng.choice([a for a in arcs if d.arcs[a][1] == v]) for v in range(g.n) if v != root]
        else:
            size = min(len(arcs), max(0, g.n - 1 + rng.choice([-1, 0, 0, 0, 1])))
            chosen = rng.sample(arcs, size)
        elems = [GroundElement(1, a) for a in chosen]
        lhs = oracle.is_out_branching(g.n, root, [d.arcs[a] for a in chosen])
        rhs = len(chosen) == g.n - 1 and is_independent(graphic, elems) and is_independent(partition, elems)
        positives += lhs
        if lhs != rhs:
            failures.append({"arc_set": t, "graph": gi, "root": root, "arcs": sorted(chosen), "branching": lhs, "independent": rhs})
    return _report(
        "matroid-characterisations",
        graphs + arc_sets,
        failures,
        graphs=graphs,
        arc_sets=arc_sets,
        branching_sets=positives,
        packing=packing,
    )


# 4. Menger


def suite_menger(count: int = 100, seed: int = BASE_SEED) -> dict:
    rng = random.Random(seed)
    failures, values = [], []
    for t in range(count):
        n = rng.randint(2, 8)
        g = random_degenerate(n, rng.randint(1, 3), seed=seed + t, density=rng.choice([0.5, 1.0]))
        flow = min(min_cut_value(g, 0, v) for v in range(1, n))
        brute = 0
        while oracle.brute_edge_connected(g, range(n), brute + 1):
            brute += 1
        values.append([t, flow])
        if flow != brute:
            failures.append({"instance": t, "max_flow": flow, "edge_deletion": brute, "edges": _edges(g)})
    return _report("menger-agreement", count, failures, connectivity=values)


# 5. deletion solvers


DELETION_TAGS = ("bdds", "pw1ds", "tdds", "pvc", "scattered")


def deletion_corpus(tag: str, count: int = 100, seed: int = BASE_SEED):
    rng = random.Random(f"{tag}-{seed}")
    for t in range(count):
        n = rng.randint(3, 10)
        g = random_degenerate(n, rng.randint(1, 3), seed=seed + 7919 * t, density=rng.choice([0.5, 1.0]))
        k = rng.randint(0, 4)
        p = rng.randint(1, 2)
        strict = rng.random() < 0.3
        if tag in ("bdds", "pvc"):
            extras = {"eta": rng.randint(1, 3) if tag == "bdds" else rng.randint(2, 4)}
        elif tag == "tdds":
            extras = {"eta": rng.randint(1, 2)}
        elif tag == "scattered":
            beta = rng.randint(3, 4)
            extras = {"alpha": rng.randint(1, 2), "beta": beta, "lambda": beta}
        else:
            extras = {}
        yield t, g, k, p, strict, extras


def run_deletion(tag: str, g: Graph, k: int, p: int, extras: dict, seed: int, strict: bool):
    if tag == "bdds":
        return deletion.solve_bdds(g, k, p, extras["eta"], seed=seed, strict=strict)
    if tag == "pw1ds":
        return deletion.solve_pw1ds(g, k, p, seed=seed, strict=strict)
    if tag == "tdds":
        return deletion.solve_tdds(g, k, p, extras["eta"], seed=seed, strict=strict)
    if tag == "pvc":
        return deletion.solve_pvc(g, k, p, extras["eta"], seed=seed, strict=strict)
    return deletion.solve_scattered(g, k, p, lam=extras["lambda"], alpha=extras["alpha"], beta=extras["beta"], seed=seed, strict=strict)


def suite_deletion(tag: str, count: int = 100, seed: int = BASE_SEED) -> dict:
    from .cli import verify_solution

    failures, answers = [], []
    yes = 0
    for t, g, k, p, strict, extras in deletion_corpus(tag, count, seed):
        ours = run_deletion(tag, g, k, p, extras, t, strict)
        truth = oracle.brute_deletion(tag, g, k, p, extras, strict=strict)
        answers.append([t, ours.status, sorted(ours.solution) if ours.yes else None])
        yes += truth.yes
        problem = None
        if ours.status != truth.status:
            problem = f"solver {ours.status}, oracle {truth.status}"
        elif ours.yes:
            bad = verify_solution(tag, Instance(g), ours.solution, dict(extras, k=k, p=p), strict)
            if bad:
                problem = f"witness rejected: {bad}"
        if problem:
            failures.append({"instance": t, "problem": problem, "edges": _edges(g), "n": g.n, "k": k, "p": p, "strict": strict, "extras": extras})
    return _report(f"deletion-{tag}", count, failures, oracle_yes=yes, answers=answers)


# 6. ordering bounds


def _back_degree(g: Graph, sequence) -> int:
    pos = {v: i for i, v in enumerate(sequence)}
    return max((sum(1 for w in g.neighbors(v) if pos[w] < pos[v]) for v in sequence), default=0)


def _crossing_width(g: Graph, layout) -> int:
    pos = {v: i for i, v in enumerate(layout)}
    return max((sum(1 for u, v in g.edges if min(pos[u], pos[v]) <= gap < max(pos[u], pos[v])) for gap in range(len(layout) - 1)), default=0)


def nx_tree_decomposition(g: Graph) -> TreeDecomposition:
    """Min-fill heuristic decomposition from networkx, relabelled as bag ids."""
    h = oracle.to_networkx(g)
    _, tree = nx.algorithms.approximation.treewidth_min_fill_in(h)
    bags = sorted(tree.nodes, key=lambda b: sorted(b))
    ids = {b: i for i, b in enumerate(bags)}
    edges = sorted(tuple(sorted((ids[a], ids[b]))) for a, b in tree.edges)
    return TreeDecomposition(tuple(frozenset(b) for b in bags), tuple(edges))


def suite_orderings(count: int = 50, seed: int = BASE_SEED) -> dict:
    rng = random.Random(seed)
    failures, rows = [], []
    for t in range(count):
        n = rng.randint(2, 14)
        g = random_degenerate(n, rng.randint(1, 4), seed=seed + t, density=rng.choice([0.5, 1.0]))
        td = nx_tree_decomposition(g)
        width = max(len(b) for b in td.bags) - 1
        back = _back_degree(g, ordering_from_tree_decomposition(g, td).sequence)
        layout = list(range(n))
        rng.shuffle(layout)
        cw = _crossing_width(g, layout)
        back_cw = _back_degree(g, ordering_from_cutwidth_layout(g, layout).sequence)
        rows.append([t, width, back, cw, back_cw])
        if back > 2 * width:
            failures.append({"instance": t, "kind": "tree decomposition", "width": width, "back_degree": back})
        if back_cw > cw:
            failures.append({"instance": t, "kind": "cutwidth", "width": cw, "back_degree": back_cw})
    return _report("ordering-bounds", 2 * count, failures, rows=rows)


# 7. pathwidth-one structure


def _tree_or_hairy_cycle(g: Graph, comp: list[int]) -> bool:
    """Independent test: acyclic, or one cycle with every other vertex a leaf on it."""
    h = oracle.to_networkx(g, comp)
    if nx.is_forest(h):
        return True
    if h.number_of_edges() != h.number_of_nodes():
        return False
    cycle = {v for e in nx.find_cycle(h) for v in e}
    return all(v in cycle or (h.degree(v) == 1 and next(iter(h.neighbors(v))) in cycle) for v in h.nodes)


def _covers_components(g: Graph, structure) -> bool:
    found = sorted(sorted(c.core + c.hairs) for c in structure.components)
    kinds = {c.kind for c in structure.components}
    return kinds <= {"tree", "cycle"} and found == sorted(sorted(c) for c in g.components())


def suite_pw1_structure(count: int = 100, seed: int = BASE_SEED) -> dict:
    failures = []
    checked = 0
    for t, g, k, _, _, _ in deletion_corpus("pw1ds", count, seed):
        for hit in deletion.enumerate_minimal_hitting_sets(g, k, find_obstruction_t2c3c4):
            rest, _ = g.remove(hit)
            checked += 1
            try:
                structure = pw1_structure(rest)
            except Exception as exc:  # any refusal is a violation here
                failures.append({"instance": t, "hitting_set": sorted(hit), "problem": str(exc)})
                continue
            comps_ok = _covers_components(rest, structure) and all(_tree_or_hairy_cycle(rest, c) for c in rest.components())
            degenerate = ordering_is_2_degenerate(rest, structure.ordering) and sorted(structure.ordering) == list(range(rest.n))
            if not comps_ok or not degenerate:
                failures.append({"instance": t, "hitting_set": sorted(hit), "components": comps_ok, "two_degenerate": degenerate})
    return _report("pw1-structure", count, failures, hitting_sets=checked)


# registry


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    limit_s: float
    suites: tuple  # (label, callable) pairs


@dataclass
class CriterionResult:
    criterion: Criterion
    passed: bool
    seconds: float
    detail: str
    reports: dict

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        c = self.criterion
        limit = "no limit" if c.limit_s == float("inf") else f"limit {c.limit_s:.0f} s"
        return f"{mark} [{c.number}] {c.name}: {self.detail}; {self.seconds:.1f} s ({limit})"


def _deletion_suite(tag: str) -> Callable[[], dict]:
    return lambda: suite_deletion(tag)


CRITERIA = (
    Criterion(1, "SSE oracle equivalence", 600, (("sse", suite_sse),)),
    Criterion(2, "representative families", 120, (("repfam", suite_repfam),)),
    Criterion(3, "matroid characterisations", 300, (("matroids", suite_matroids),)),
    Criterion(4, "Menger agreement", 60, (("menger", suite_menger),)),
    # the limit applies to each problem separately
    Criterion(5, "deletion solvers", 900, tuple((tag, _deletion_suite(tag)) for tag in DELETION_TAGS)),
    Criterion(6, "ordering bounds", 60, (("orderings", suite_orderings),)),
    Criterion(7, "pathwidth-one structure", float("inf"), (("pw1", suite_pw1_structure),)),
)

_cache: dict[str, str] = {}


def run_criterion(c: Criterion) -> CriterionResult:
    if c.number == 8:
        return run_determinism()
    reports, parts = {}, []
    passed = True
    worst = 0.0
    for label, fn in c.suites:
        start = time.perf_counter()
        rep = fn()
        took = time.perf_counter() - start
        worst = max(worst, took)
        _cache[label] = dumps(rep)
        reports[label] = rep
        ok = rep["failures"] == 0 and took <= c.limit_s
        passed &= ok
        parts.append(f"{label} {rep['instances']} checks, {rep['failures']} failures" + ("" if took <= c.limit_s else f", over time ({took:.0f} s)"))
    return CriterionResult(c, passed, worst, "; ".join(parts), reports)


def run_determinism(labels=None) -> CriterionResult:
    """Re-run suites and compare serialised reports byte for byte."""
    crit = DETERMINISM
    suites = [(label, fn) for c in CRITERIA for label, fn in c.suites if labels is None or label in labels]
    start = time.perf_counter()
    differing = []
    for label, fn in suites:
        first = _cache.get(label) or dumps(fn())
        second = dumps(fn())
        _cache[label] = first
        if first != second:
            differing.append(label)
    took = time.perf_counter() - start
    detail = f"{len(suites)} suites re-run, {len(differing)} differ" + (f" ({', '.join(differing)})" if differing else "")
    return CriterionResult(crit, not differing, took, detail, {"differing": differing})


DETERMINISM = Criterion(8, "determinism", float("inf"), ())
CRITERIA = CRITERIA + (DETERMINISM,)
