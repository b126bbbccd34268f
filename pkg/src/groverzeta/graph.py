"""Finite undirected (multi)graphs with an oriented-edge table.

Edge ``j`` of the input list yields two oriented edges: index ``2j`` runs
in the listed direction and ``2j + 1`` is its inverse, so ``inverse(e)`` is
simply ``e ^ 1``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence


class GraphFormatError(ValueError):
    """Raised when graph text (edge list or graph6) cannot be decoded."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrientedEdge(NamedTuple):
    origin: int
    terminus: int
    inverse: int


@dataclass(frozen=True)
class Graph:
    """Immutable graph on vertices ``0..n-1``.

    Multi-edges and self-loops are kept exactly as given.  A self-loop at
    ``x`` produces two distinct oriented records from ``x`` to ``x`` and
    contributes 2 to ``degree(x)``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        edges = tuple((int(x), int(y)) for x, y in self.edges)
        for x, y in edges:
            if not (0 <= x < self.n and 0 <= y < self.n):
                raise ValueError(f"edge ({x}, {y}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def oriented_edges(self) -> tuple[OrientedEdge, ...]:
        out = []
        for j, (x, y) in enumerate(self.edges):
            out.append(OrientedEdge(x, y, 2 * j + 1))
            out.append(OrientedEdge(y, x, 2 * j))
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.oriented_edges:
            deg[e.origin] += 1
        return tuple(deg)

    @cached_property
    def outgoing(self) -> tuple[tuple[int, ...], ...]:
        """Oriented-edge indices grouped by origin vertex."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.oriented_edges):
            out[e.origin].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def incoming(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.oriented_edges):
            inc[e.terminus].append(i)
        return tuple(tuple(x) for x in inc)

    def origin(self, e: int) -> int:
        return self.oriented_edges[e].origin

    def terminus(self, e: int) -> int:
        return self.oriented_edges[e].terminus

    @staticmethod
    def inverse(e: int) -> int:
        return e ^ 1

    @property
    def is_simple(self) -> bool:
        seen = set()
        for x, y in self.edges:
            if x == y:
                return False
            key = (min(x, y), max(x, y))
            if key in seen:
                return False
            seen.add(key)
        return True

    def adjacency_matrix(self) -> list[list[int]]:
        """``a[x][y]`` counts oriented edges from x to y (a loop gives 2)."""
        a = [[0] * self.n for _ in range(self.n)]
        for e in self.oriented_edges:
            a[e.origin][e.terminus] += 1
        return a

    def degree_matrix(self) -> list[list[int]]:
        d = [[0] * self.n for _ in range(self.n)]
        for x, k in enumerate(self.degrees):
            d[x][x] = k
        return d

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``x`` renamed to ``perm[x]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph(self.n, tuple((perm[x], perm[y]) for x, y in self.edges))


@dataclass(frozen=True)
class GraphClassification:
    connected: bool
    bipartite: bool
    bipartition: tuple[frozenset[int], frozenset[int]] | None
    regular_degree: int | None
    min_degree: int
    max_degree: int
    simple: bool


def classify(g: Graph) -> GraphClassification:
    color = [-1] * g.n
    bipartite = True
    components = 0
    for s in range(g.n):
        if color[s] != -1:
            continue
        components += 1
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.outgoing[x]:
                y = g.terminus(e)
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    bipartite = False
    degs = g.degrees
    bipartition = None
    if bipartite:
        bipartition = (
            frozenset(x for x in range(g.n) if color[x] == 0),
            frozenset(x for x in range(g.n) if color[x] == 1),
        )
    regular = degs[0] if degs and all(d == degs[0] for d in degs) else None
    return GraphClassification(
        connected=components <= 1,
        bipartite=bipartite,
        bipartition=bipartition,
        regular_degree=regular,
        min_degree=min(degs, default=0),
        max_degree=max(degs, default=0),
        simple=g.is_simple,
    )


def validate_for_modified_zeta(g: Graph) -> list[str]:
    """List the violated hypotheses (simple, connected, min degree >= 3).

    An empty list means the graph is eligible.
    """
    c = classify(g)
    problems = []
    if not c.simple:
        problems.append("graph is not simple (multi-edge or self-loop present)")
    if not c.connected:
        problems.append("graph is not connected")
    if c.min_degree < 3:
        problems.append(f"δ(G)={c.min_degree} < 3: δ(G) ≥ 3 required")
    return problems


# -- edge lists -------------------------------------------------------------

_HEADER = re.compile(r"^n\s+(\S+)$")


def parse_edge_list(text: str) -> Graph:
    """Parse ``x y`` lines; ``#`` starts a comment, ``n <count>`` fixes n.

    Without a header the vertex count is ``1 + max id`` and every id in that
    range must occur; isolated vertices need an explicit header.
    """
    n_header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            if n_header is not None:
                raise GraphFormatError("duplicate 'n' header", lineno)
            if edges:
                raise GraphFormatError("'n' header must precede edges", lineno)
            n_header = _parse_vertex(header.group(1), lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'x y', got {line!r}", lineno)
        x, y = (_parse_vertex(p, lineno) for p in parts)
        if n_header is not None and max(x, y) >= n_header:
            raise GraphFormatError(f"vertex id {max(x, y)} >= n={n_header}", lineno)
        edges.append((x, y))

    if n_header is not None:
        return Graph(n_header, tuple(edges))
    if not edges:
        raise GraphFormatError("no edges and no 'n' header")
    n = 1 + max(max(e) for e in edges)
    used = {v for e in edges for v in e}
    missing = sorted(set(range(n)) - used)
    if missing:
        raise GraphFormatError(
            f"vertex ids are not dense (missing {missing[:5]}); "
            "add an 'n <count>' header to allow isolated vertices"
        )
    return Graph(n, tuple(edges))


def _parse_vertex(token: str, lineno: int) -> int:
    try:
        v = int(token)
    except ValueError:
        raise GraphFormatError(f"non-integer vertex id {token!r}", lineno) from None
    if v < 0:
        raise GraphFormatError(f"negative vertex id {v}", lineno)
    return v


def emit_edge_list(g: Graph, header: bool = True) -> str:
    lines = [f"n {g.n}"] if header else []
    lines += [f"{x} {y}" for x, y in g.edges]
    return "\n".join(lines) + "\n"


# -- graph6 -----------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 2**36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def emit_graph6(g: Graph) -> str:
    """Encode a simple graph; bits run over the upper triangle column by column."""
    if not g.is_simple:
        raise ValueError("graph6 can only encode simple graphs")
    adj = {(min(x, y), max(x, y)) for x, y in g.edges}
    bits = [1 if (i, j) in adj else 0 for j in range(g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise GraphFormatError("empty graph6 string")
    for pos, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} at position {pos} out of range 63..126")
    vals = [ord(c) - 63 for c in data]
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    else:
        raise GraphFormatError("truncated vertex count")

    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(rest) < need:
        raise GraphFormatError(f"bad length: need {need} data bytes for n={n}, got {len(rest)}")
    if len(rest) > need:
        raise GraphFormatError(f"trailing garbage after {need} data bytes")
    bits = [(v >> (5 - b)) & 1 for v in rest for b in range(6)]
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits")
    pairs = ((i, j) for j in range(n) for i in range(j))
    edges = tuple(pair for pair, bit in zip(pairs, bits) if bit)
    return Graph(n, edges)


# -- named graphs -----------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"complete(n) needs n >= 2, got {n}")
    return Graph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError(f"complete_bipartite(a, b) needs a, b >= 1, got {a}, {b}")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle(n) needs n >= 3, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def cube() -> Graph:
    edges = [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)]
    return Graph(8, tuple(edges))


_GENERATORS = {
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "cycle": (cycle, 1),
    "petersen": (petersen, 0),
    "cube": (cube, 0),
}


def generate_named(name: str, params: Iterable[int] = ()) -> Graph:
    params = tuple(int(p) for p in params)
    try:
        fn, arity = _GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; known: {sorted(_GENERATORS)}") from None
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


_K_BIPARTITE = re.compile(r"^k(\d+)[,x_](\d+)$")
_K_COMPLETE = re.compile(r"^k(\d+)$")


def resolve_name(spec: str) -> Graph:
    """Resolve a CLI-style graph name such as ``petersen``, ``cycle:5``,
    ``complete_bipartite:3,3``, ``k4`` or ``k33``.

    ``k<n>`` is the complete graph; ``k<a>,<b>`` (also ``k<a>x<b>``) is the
    complete bipartite graph.  A bare two-digit ``k<a><b>`` whose value would
    be 20 or more is read as ``K_{a,b}``; use ``complete:<n>`` for large
    complete graphs.
    """
    spec = spec.strip().lower()
    name, _, arg = spec.partition(":")
    if arg:
        try:
            params = [int(p) for p in arg.split(",")]
        except ValueError:
            raise ValueError(f"bad parameters in {spec!r}") from None
        return generate_named(name, params)
    if name in _GENERATORS:
        return generate_named(name)
    m = _K_BIPARTITE.match(name)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = _K_COMPLETE.match(name)
    if m:
        digits = m.group(1)
        if len(digits) == 2 and int(digits) >= 20:
            return complete_bipartite(int(digits[0]), int(digits[1]))
        return complete(int(digits))
    return generate_named(name)
