"""Grover matrix, positive supports and combinatorial cycle-count oracles.

Matrices are indexed by oriented edges; entry ``(e, f)`` is the amplitude
for stepping from ``f`` to ``e`` (``t(f) = o(e)``).  The oracles here use
only the combinatorial definitions, never matrix arithmetic, so they can
serve as independent evidence for the linear-algebra pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import matmul
from .graph import Graph, validate_for_modified_zeta

MAX_REDUCED_CYCLE_LENGTH = 10
MAX_TWO_STEP_CYCLE_LENGTH = 6


class HypothesisError(ValueError):
    """The graph violates a hypothesis required by the requested operation."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class IdentityViolation(RuntimeError):
    """A claimed identity failed on a graph satisfying its hypotheses."""

    def __init__(self, message: str, details=None):
        self.details = details
        super().__init__(message)


def require_modified_hypotheses(g: Graph) -> None:
    problems = validate_for_modified_zeta(g)
    if problems:
        raise HypothesisError(problems)


def grover_matrix(g: Graph) -> list[list[Fraction]]:
    """Exact Grover matrix U of shape 2m x 2m."""
    isolated = [x for x, d in enumerate(g.degrees) if d == 0]
    if isolated:
        raise HypothesisError([f"isolated vertices {isolated} (degree 0)"])
    size = 2 * g.m
    u = [[Fraction(0)] * size for _ in range(size)]
    for e, oe in enumerate(g.oriented_edges):
        w = Fraction(2, g.degrees[oe.origin])
        row = u[e]
        for f in g.incoming[oe.origin]:
            row[f] = w - 1 if f == oe.inverse else w
    return u


def positive_support(m) -> list[list[int]]:
    return [[1 if x > 0 else 0 for x in row] for row in m]


def uplus(g: Graph) -> list[list[int]]:
    """Positive support of the Grover matrix."""
    return positive_support(grover_matrix(g))


def power_support(g: Graph, k: int) -> list[list[int]]:
    """Positive support of ``U**k`` computed in exact rationals."""
    if k < 1:
        raise ValueError("power must be >= 1")
    u = grover_matrix(g)
    p = u
    for _ in range(k - 1):
        p = matmul(p, u)
    return positive_support(p)


@dataclass(frozen=True)
class SupportMismatch:
    row: int
    col: int
    squared_support: int
    uplus_squared_plus_identity: int


def support_identity_violations(g: Graph, sq: list[list[int]] | None = None) -> list[SupportMismatch]:
    """Entries where ``(U^2)+`` differs from ``(U+)^2 + I`` (compared as integers).

    An entry of ``(U+)^2 + I`` equal to 2 or more is reported as well,
    since the identity is an equality of integer matrices.
    """
    if sq is None:
        sq = positive_support(matmul(grover_matrix(g), grover_matrix(g)))
    up = uplus(g)
    rhs = matmul(up, up)
    for i in range(len(rhs)):
        rhs[i][i] += 1
    return [
        SupportMismatch(i, j, sq[i][j], rhs[i][j])
        for i in range(len(sq)) for j in range(len(sq))
        if sq[i][j] != rhs[i][j]
    ]


def squared_support(g: Graph, check_identity: bool = True) -> list[list[int]]:
    """``(U^2)+`` for a simple connected graph with minimum degree >= 3."""
    require_modified_hypotheses(g)
    u = grover_matrix(g)
    sq = positive_support(matmul(u, u))
    if check_identity:
        bad = support_identity_violations(g, sq)
        if bad:
            raise IdentityViolation(
                f"(U^2)+ != (U+)^2 + I at {len(bad)} entries", details=bad
            )
    return sq


def two_step_related(g: Graph, e: int, f: int) -> bool:
    """True iff ``(e, f)`` is a 2-step-arc or ``e == f``."""
    if e == f:
        return True
    inv_e, inv_f = e ^ 1, f ^ 1
    target = g.origin(f)
    return any(
        c != inv_e and c != inv_f and g.terminus(c) == target
        for c in g.outgoing[g.terminus(e)]
    )


def count_reduced_cycles(g: Graph, k: int) -> int:
    """Closed non-backtracking oriented-edge sequences of length ``k``.

    Sequences are rooted and ordered, so this is ``trace((U+)**k)`` whenever
    every vertex has degree >= 2 (a leaf makes ``(U+)`` allow backtracking).
    """
    if k < 1:
        raise ValueError("length must be >= 1")
    if k > MAX_REDUCED_CYCLE_LENGTH:
        raise ValueError(f"enumeration capped at length {MAX_REDUCED_CYCLE_LENGTH}, got {k}")

    def extend(first: int, last: int, depth: int) -> int:
        if depth == k:
            ok = g.terminus(last) == g.origin(first) and first != last ^ 1
            return int(ok)
        return sum(
            extend(first, nxt, depth + 1)
            for nxt in g.outgoing[g.terminus(last)]
            if nxt != last ^ 1
        )

    return sum(extend(e, e, 1) for e in range(2 * g.m))


def two_step_successors(g: Graph) -> list[list[int]]:
    size = 2 * g.m
    return [[f for f in range(size) if two_step_related(g, e, f)] for e in range(size)]


def count_two_step_cycles(g: Graph, r: int) -> int:
    """Closed 2-step-cycles of length ``r`` (rooted, ordered)."""
    require_modified_hypotheses(g)
    if r < 1:
        raise ValueError("length must be >= 1")
    if r > MAX_TWO_STEP_CYCLE_LENGTH:
        raise ValueError(f"enumeration capped at length {MAX_TWO_STEP_CYCLE_LENGTH}, got {r}")
    succ = two_step_successors(g)

    def walk(first: int, last: int, depth: int) -> int:
        if depth == r:
            return int(first in succ[last])
        return sum(walk(first, nxt, depth + 1) for nxt in succ[last])

    return sum(walk(e, e, 1) for e in range(2 * g.m))


def format_binary_matrix(m: Sequence[Sequence[int]]) -> str:
    """Row-major 0/1 grid, one row per line."""
    return "\n".join("".join(str(int(x)) for x in row) for row in m) + "\n"


def parse_binary_matrix(text: str) -> list[list[int]]:
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    if any(set(r) - {"0", "1"} for r in rows):
        raise ValueError("binary grid may only contain 0 and 1")
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("binary grid must be square")
    return [[int(c) for c in r] for r in rows]

