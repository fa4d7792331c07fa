"""Line-oriented instance, tree-decomposition and layout files.

Instance files use 1-based vertex ids::

    c comment
    p edge <n> <m>
    e <u> <v>
    t <v>            (terminal, repeatable)
    x <key> <int>    (k, p, eta, alpha, beta, lambda)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, TreeDecomposition

EXTRA_KEYS = ("eta", "alpha", "beta", "lambda")


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    terminals: frozenset = frozenset()
    k: int | None = None
    p: int | None = None
    extras: dict = field(default_factory=dict, compare=True, hash=False)

    def __post_init__(self):
        for t in self.terminals:
            if not 0 <= t < self.graph.n:
                raise InstanceFormatError(f"terminal {t + 1} out of range")
        if self.p is not None and self.p < 1:
            raise InstanceFormatError("p must be at least 1")
        if self.k is not None and not len(self.terminals) <= self.k <= self.graph.n:
            raise InstanceFormatError("need |X| <= k <= n")


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise InstanceFormatError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_instance(text: str) -> Instance:
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    terminals: set[int] = set()
    extras: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise InstanceFormatError("expected 'p edge <n> <m>'", lineno)
            if n is not None:
                raise InstanceFormatError("duplicate problem line", lineno)
            n, declared_m = _ints(parts[2:], lineno)
            if n < 0 or declared_m < 0:
                raise InstanceFormatError("negative size", lineno)
            continue
        if n is None:
            raise InstanceFormatError("problem line 'p edge <n> <m>' must come first", lineno)
        if tag == "e":
            if len(parts) != 3:
                raise InstanceFormatError("expected 'e <u> <v>'", lineno)
            u, v = _ints(parts[1:], lineno)
            if u == v:
                raise InstanceFormatError(f"self-loop at vertex {u}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceFormatError(f"edge ({u}, {v}) out of range", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in seen_edges:
                raise InstanceFormatError(f"duplicate edge ({u}, {v})", lineno)
            seen_edges.add(key)
            edges.append(key)
        elif tag == "t":
            if len(parts) != 2:
                raise InstanceFormatError("expected 't <v>'", lineno)
            (v,) = _ints(parts[1:], lineno)
            if not 1 <= v <= n:
                raise InstanceFormatError(f"terminal {v} out of range", lineno)
            terminals.add(v - 1)
        elif tag == "x":
            if len(parts) != 3:
                raise InstanceFormatError("expected 'x <key> <int>'", lineno)
            (value,) = _ints(parts[2:], lineno)
            extras[parts[1]] = value
        else:
            raise InstanceFormatError(f"unknown line tag {tag!r}", lineno)
    if n is None:
        raise InstanceFormatError("missing problem line 'p edge <n> <m>'")
    if declared_m != len(edges):
        raise InstanceFormatError(f"problem line declares {declared_m} edges, found {len(edges)}")
    k = extras.pop("k", None)
    p = extras.pop("p", None)
    return Instance(Graph.from_edges(n, edges), frozenset(terminals), k, p, extras)


def write_instance(inst: Instance, comment: str | None = None) -> str:
    g = inst.graph
    lines = []
    if comment:
        lines += [f"c {c}" for c in comment.splitlines()]
    lines.append(f"p edge {g.n} {g.m}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    lines += [f"t {v + 1}" for v in sorted(inst.terminals)]
    if inst.k is not None:
        lines.append(f"x k {inst.k}")
    if inst.p is not None:
        lines.append(f"x p {inst.p}")
    lines += [f"x {key} {inst.extras[key]}" for key in sorted(inst.extras)]
    return "\n".join(lines) + "\n"


def parse_tree_decomposition(text: str) -> TreeDecomposition:
    """``td <bags> <width+1> <n>``, then ``b <id> <v>...`` and ``te <b1> <b2>`` (1-based)."""
    header = None
    bags: dict[int, frozenset] = {}
    tree_edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "td":
            if len(parts) != 4:
                raise InstanceFormatError("expected 'td <bags> <width+1> <n>'", lineno)
            header = _ints(parts[1:], lineno)
        elif parts[0] == "b":
            if header is None:
                raise InstanceFormatError("'td' header must come first", lineno)
            ids = _ints(parts[1:], lineno)
            if not ids:
                raise InstanceFormatError("bag line without id", lineno)
            bag_id, verts = ids[0], ids[1:]
            if not 1 <= bag_id <= header[0] or bag_id - 1 in bags:
                raise InstanceFormatError(f"bad bag id {bag_id}", lineno)
            if any(not 1 <= v <= header[2] for v in verts):
                raise InstanceFormatError("bag vertex out of range", lineno)
            bags[bag_id - 1] = frozenset(v - 1 for v in verts)
        elif parts[0] == "te":
            a, b = _ints(parts[1:], lineno)
            tree_edges.append((a - 1, b - 1))
        else:
            raise InstanceFormatError(f"unknown line tag {parts[0]!r}", lineno)
    if header is None:
        raise InstanceFormatError("missing 'td' header")
    if len(bags) != header[0]:
        raise InstanceFormatError(f"header declares {header[0]} bags, found {len(bags)}")
    return TreeDecomposition(tuple(bags[i] for i in range(header[0])), tuple(tree_edges))


def write_tree_decomposition(td: TreeDecomposition, n: int) -> str:
    lines = [f"td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"te {a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"


def parse_layout(text: str) -> list[int]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        (v,) = _ints([s], lineno)
        out.append(v - 1)
    return out


def parse_solution(text: str) -> list[int]:
    """Whitespace/comma separated 1-based vertex ids."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        out += [v - 1 for v in _ints(s.replace(",", " ").split(), lineno)]
    return out
