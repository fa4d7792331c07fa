"""Deterministic graph generators used by tests, demos and the ``gen`` command."""

from __future__ import annotations

import random

from .graph import Graph, GraphError

KINDS = (
    "path",
    "cycle",
    "complete",
    "star",
    "caterpillar",
    "cycle_with_hairs",
    "random_degenerate",
    "two_blocks_bridge",
    "spider_T2",
)


def _need(params: dict, key: str, minimum: int) -> int:
    if key not in params:
        raise GraphError(f"missing parameter {key!r}")
    value = int(params[key])
    if value < minimum:
        raise GraphError(f"parameter {key}={value} must be >= {minimum}")
    return value


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def caterpillar(spine: int, hairs: int) -> Graph:
    """Path on ``spine`` vertices, each carrying ``hairs`` pendant leaves."""
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for s in range(spine):
        for _ in range(hairs):
            edges.append((s, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def cycle_with_hairs(n: int, hair_every: int = 1) -> Graph:
    """C_n plus one pendant on every ``hair_every``-th cycle vertex."""
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    nxt = n
    for i in range(0, n, hair_every):
        edges.append((i, nxt))
        nxt += 1
    return Graph.from_edges(nxt, edges)


def spider_t2() -> Graph:
    """The 7-vertex spider: centre 0 with legs 0-1-2, 0-3-4, 0-5-6."""
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def two_blocks_bridge(block: int = 3) -> Graph:
    """Two copies of K_block joined by one bridge between vertex 0 and vertex block."""
    edges = []
    for off in (0, block):
        edges += [(off + u, off + v) for u in range(block) for v in range(u + 1, block)]
    edges.append((0, block))
    return Graph.from_edges(2 * block, edges)


def random_degenerate(n: int, eta: int, seed: int = 0, *, connected: bool = True, density: float = 1.0) -> Graph:
    """Insert vertices one by one, each with at most ``eta`` back-edges.

    ``density`` is the chance of keeping each of the ``eta`` back-edge slots;
    with ``connected`` every vertex after the first keeps at least one.
    """
    if eta < 0:
        raise GraphError("eta must be nonnegative")
    rng = random.Random(seed)
    edges = []
    for v in range(1, n):
        want = sum(1 for _ in range(min(eta, v)) if rng.random() < density)
        if connected and eta > 0:
            want = max(want, 1)
        for u in rng.sample(range(v), min(want, v)):
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def generate(kind: str, params: dict | None = None, seed: int = 0) -> Graph:
    params = dict(params or {})
    if kind == "path":
        return path(_need(params, "n", 1))
    if kind == "cycle":
        return cycle(_need(params, "n", 3))
    if kind == "complete":
        return complete(_need(params, "n", 1))
    if kind == "star":
        return star(_need(params, "n", 1))
    if kind == "caterpillar":
        return caterpillar(_need(params, "n", 1), int(params.get("hairs", 1)))
    if kind == "cycle_with_hairs":
        return cycle_with_hairs(_need(params, "n", 3), int(params.get("hair_every", 1)))
    if kind == "random_degenerate":
        return random_degenerate(
            _need(params, "n", 1),
            _need(params, "eta", 0),
            seed,
            density=float(params.get("density", 1.0)),
        )
    if kind == "two_blocks_bridge":
        return two_blocks_bridge(int(params.get("n", 3)))
    if kind == "spider_T2":
        return spider_t2()
    raise GraphError(f"unknown generator kind {kind!r}; expected one of {', '.join(KINDS)}")
