"""Ihara and modified zeta reciprocals, spanning-tree and odd-unicyclic
invariants, and the exact derivative identities at the special poles.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Literal

import numpy as np

from .algebra import Polynomial, det_bareiss, det_poly, det_poly_linear, poly_exact_divide
from .graph import Graph, classify, validate_for_modified_zeta
from .walks import (
    HypothesisError,
    IdentityViolation,
    count_reduced_cycles,
    count_two_step_cycles,
    require_modified_hypotheses,
    squared_support,
    uplus,
)

IOTA_BRUTEFORCE_MAX_EDGES = 20
SPOT_CHECK_POINTS = (0.1, 0.3, 0.7, 1 + 1j, -0.2)
SPOT_CHECK_RTOL = 1e-8

ONE_MINUS_U2 = Polynomial([1, 0, -1])
ONE_MINUS_2U = Polynomial([1, -2])


class NotApplicable(ValueError):
    """The quantity is not defined under the graph's structure."""


@dataclass(frozen=True)
class SpotCheck:
    u: complex
    core: complex
    h_times_l: complex
    rel_error: float

    @property
    def passed(self) -> bool:
        return self.rel_error <= SPOT_CHECK_RTOL


@dataclass(frozen=True)
class ZetaReciprocal:
    """``polynomial = cofactor**cofactor_exponent * core``.

    For the Ihara kind the cofactor is ``1 - u^2``; for the modified kind it
    is ``1 - 2u``.  ``core`` is ``None`` only if the cofactor does not divide.
    """

    polynomial: Polynomial
    kind: Literal["ihara", "modified"]
    form: Literal["edge-determinant", "vertex-factored"]
    cofactor_exponent: int
    core: Polynomial | None
    spot_checks: tuple[SpotCheck, ...] = field(default=())

    @property
    def cofactor(self) -> Polynomial:
        return ONE_MINUS_U2 if self.kind == "ihara" else ONE_MINUS_2U

    @property
    def cofactor_label(self) -> str:
        base = "(1-u^2)" if self.kind == "ihara" else "(1-2u)"
        return f"{base}^{self.cofactor_exponent}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "form": self.form,
            "polynomial": self.polynomial.to_json(),
            "degree": self.polynomial.degree,
            "cofactor": self.cofactor_label,
            "cofactor_exponent": self.cofactor_exponent,
            "core": None if self.core is None else self.core.to_json(),
            "core_degree": None if self.core is None else self.core.degree,
            "spot_checks": [
                {"u": _complex_str(s.u), "rel_error": s.rel_error, "pass": s.passed}
                for s in self.spot_checks
            ],
        }


def _complex_str(z: complex) -> str:
    z = complex(z)
    return repr(z.real) if z.imag == 0 else f"{z.real!r}{z.imag:+}j"


def _split_cofactor(poly: Polynomial, base: Polynomial, exponent: int) -> Polynomial | None:
    if exponent < 0:
        return poly * base ** (-exponent)
    q, r = poly_exact_divide(poly, base ** exponent)
    return q if r.is_zero else None


def _require_connected(g: Graph) -> None:
    if not classify(g).connected:
        raise HypothesisError(["graph is not connected"])


def ihara_reciprocal_edge(g: Graph) -> ZetaReciprocal:
    """``det(I - u (U)+)``."""
    _require_connected(g)
    poly = det_poly_linear(uplus(g))
    exp = g.m - g.n
    return ZetaReciprocal(poly, "ihara", "edge-determinant", exp, _split_cofactor(poly, ONE_MINUS_U2, exp))


def ihara_core(g: Graph) -> Polynomial:
    """``det(I - uA + u^2 (D - I))``."""
    a, d = g.adjacency_matrix(), g.degrees

    def at(u):
        return [
            [(1 + u * u * (d[i] - 1) if i == j else 0) - u * a[i][j] for j in range(g.n)]
            for i in range(g.n)
        ]

    return det_poly(at, 2 * g.n)


def ihara_reciprocal_bass(g: Graph) -> ZetaReciprocal:
    _require_connected(g)
    core = ihara_core(g)
    exp = g.m - g.n
    if exp >= 0:
        poly = core * ONE_MINUS_U2 ** exp
    else:
        poly, rem = poly_exact_divide(core, ONE_MINUS_U2 ** (-exp))
        if not rem.is_zero:
            raise IdentityViolation("vertex-factored form is not a polynomial", details=rem)
    return ZetaReciprocal(poly, "ihara", "vertex-factored", exp, core)


def h_times_l(g: Graph, u: complex) -> complex:
    """Numeric ``h(u) * l(u)`` with one shared branch of ``sqrt(u(1-u))``."""
    a = np.array(g.adjacency_matrix(), dtype=complex)
    shift = np.diag([1 + u * (d - 2) for d in g.degrees]).astype(complex)
    s = cmath.sqrt(u * (1 - u))
    return complex(np.linalg.det(shift - s * a) * np.linalg.det(shift + s * a))


def spot_check_core(g: Graph, core: Polynomial, points=SPOT_CHECK_POINTS) -> tuple[SpotCheck, ...]:
    """Compare ``p(u)`` with ``h(u) l(u)`` at sample points.

    The error is relative to ``sum |c_i| |u|^i`` rather than ``|p(u)|``:
    sample points can coincide with zeros of ``p`` (``u = 1/10`` for K5).
    """
    coeffs = [float(c) for c in reversed(core.coeffs)]
    abs_coeffs = [abs(c) for c in coeffs]
    out = []
    for u in points:
        u = complex(u)
        p = complex(np.polyval(coeffs, u))
        scale = float(np.polyval(abs_coeffs, abs(u)))
        hl = h_times_l(g, u)
        err = abs(p - hl) / max(scale, abs(hl), 1e-300)
        out.append(SpotCheck(u, p, hl, err))
    return tuple(out)


def modified_reciprocal(g: Graph) -> ZetaReciprocal:
    """``det(I - u (U^2)+)`` split as ``(1-2u)^(2(m-n)) * p(u)``.

    Raises ``IdentityViolation`` if the division leaves a remainder or the
    numeric ``h*l`` comparison fails.
    """
    require_modified_hypotheses(g)
    poly = det_poly_linear(squared_support(g))
    exp = 2 * (g.m - g.n)
    q, r = poly_exact_divide(poly, ONE_MINUS_2U ** exp)
    if not r.is_zero:
        raise IdentityViolation(f"(1-2u)^{exp} does not divide det(I - u(U^2)+)", details=r)
    checks = spot_check_core(g, q)
    failed = [c for c in checks if not c.passed]
    if failed:
        raise IdentityViolation("p(u) != h(u) l(u) at sample points", details=failed)
    return ZetaReciprocal(poly, "modified", "edge-determinant", exp, q, checks)


# -- invariants ---------------------------------------------------------------

def laplacian(g: Graph) -> list[list[int]]:
    a = g.adjacency_matrix()
    return [[(g.degrees[i] if i == j else 0) - a[i][j] for j in range(g.n)] for i in range(g.n)]


def signless_laplacian(g: Graph) -> list[list[int]]:
    a = g.adjacency_matrix()
    return [[(g.degrees[i] if i == j else 0) + a[i][j] for j in range(g.n)] for i in range(g.n)]


def complexity(g: Graph) -> int:
    """Number of spanning trees: the (0, 0) cofactor of ``D - A``."""
    _require_connected(g)
    lap = laplacian(g)
    return det_bareiss([row[1:] for row in lap[1:]])


def iota(g: Graph) -> int:
    """``det(D + A)`` for a simple, connected, non-bipartite graph."""
    c = classify(g)
    if not (c.simple and c.connected):
        raise HypothesisError(["iota needs a simple connected graph"])
    if c.bipartite:
        raise NotApplicable("iota is only used for non-bipartite graphs (det(D+A) = 0 here)")
    return det_bareiss(signless_laplacian(g))


def iota_bruteforce(g: Graph) -> int:
    """Sum of ``4**components`` over odd-unicyclic spanning factors.

    Every component of such a factor has as many edges as vertices, so only
    edge subsets of size exactly ``n`` can qualify; the others are skipped.
    """
    if not g.is_simple:
        raise HypothesisError(["iota_bruteforce needs a simple graph"])
    if g.m > IOTA_BRUTEFORCE_MAX_EDGES:
        raise ValueError(f"enumeration capped at m <= {IOTA_BRUTEFORCE_MAX_EDGES}, got m={g.m}")
    total = 0
    for subset in combinations(g.edges, g.n):
        omega = _odd_unicyclic_components(g.n, subset)
        if omega:
            total += 4 ** omega
    return total


def _odd_unicyclic_components(n: int, edges) -> int:
    """Component count if every component is unicyclic with an odd cycle, else 0."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    color = [-1] * n
    components = 0
    for s in range(n):
        if color[s] != -1:
            continue
        components += 1
        color[s] = 0
        stack, verts, degsum, odd = [s], 0, 0, False
        while stack:
            x = stack.pop()
            verts += 1
            degsum += len(adj[x])
            for y in adj[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    odd = True
        if degsum != 2 * verts or not odd:
            return 0
    return components


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": _frac_str(self.lhs), "rhs": _frac_str(self.rhs), "pass": self.passed}


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class InvariantReport:
    kappa: int
    iota: int | None
    iota_bruteforce: int | None
    identities: tuple[IdentityCheck, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.identities) and (
            self.iota is None or self.iota_bruteforce is None or self.iota == self.iota_bruteforce
        )

    def value(self, name: str) -> Fraction:
        for c in self.identities:
            if c.name == name:
                return c.lhs
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "kappa": str(self.kappa),
            "iota": None if self.iota is None else str(self.iota),
            "iota_bruteforce": None if self.iota_bruteforce is None else str(self.iota_bruteforce),
            "identities": [c.to_json() for c in self.identities],
            "notes": list(self.notes),
            "pass": self.passed,
        }


def derivative_identities(g: Graph) -> InvariantReport:
    """Exact checks of the special values of ``f`` at 1 and ``p`` at 1/2.

    Modified-side identities are included only when the graph is simple,
    connected and has minimum degree >= 3.
    """
    _require_connected(g)
    m, n = g.m, g.n
    kappa = complexity(g)
    f = ihara_core(g)
    checks = [
        IdentityCheck("f_one", f(Fraction(1)), Fraction(0)),
        IdentityCheck("f_prime_one", f.derivative()(Fraction(1)), Fraction(2 * (m - n) * kappa)),
    ]
    notes = []
    iota_val = iota_bf = None
    c = classify(g)
    if c.simple and not c.bipartite:
        iota_val = iota(g)
        if m <= IOTA_BRUTEFORCE_MAX_EDGES:
            iota_bf = iota_bruteforce(g)
        else:
            notes.append(f"iota brute force skipped: m={m} > {IOTA_BRUTEFORCE_MAX_EDGES}")

    problems = validate_for_modified_zeta(g)
    if problems:
        notes.append("modified identities not applicable: " + "; ".join(problems))
    else:
        p = modified_reciprocal(g).core
        half = Fraction(1, 2)
        checks.append(IdentityCheck("p_half", p(half), Fraction(0)))
        dp = p.derivative()(half)
        if c.bipartite:
            checks.append(IdentityCheck("p_prime_half", dp, Fraction(0)))
            rhs = Fraction((m - n) ** 2 * kappa**2) / Fraction(2) ** (2 * n - 5)
            checks.append(IdentityCheck("p_second_half", p.derivative(2)(half), rhs))
        else:
            rhs = Fraction((m - n) * kappa * iota_val) / Fraction(2) ** (2 * n - 2)
            checks.append(IdentityCheck("p_prime_half", dp, rhs))
    return InvariantReport(kappa, iota_val, iota_bf, tuple(checks), tuple(notes))


# -- series cross-checks ------------------------------------------------------

def log_derivative_counts(poly: Polynomial, order: int) -> list[int]:
    """Coefficients ``c_1..c_order`` of ``-u * P'(u)/P(u)`` for ``P(0) = 1``.

    If ``1/P = exp(sum N_r u^r / r)`` these are exactly the ``N_r``.
    """
    if poly[0] != 1:
        raise ValueError("series needs P(0) = 1")
    # q = P'/P as a power series: P*q = P'
    dp = poly.derivative()
    q: list[Fraction] = []
    for k in range(order):
        acc = Fraction(dp[k])
        for j in range(1, k + 1):
            acc -= poly[j] * q[k - j]
        q.append(acc)
    out = []
    for r in range(1, order + 1):
        c = -q[r - 1]
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer series coefficient {c}")
        out.append(int(c))
    return out


def two_step_counts_from_factorization(z: ZetaReciprocal, order: int = 4) -> list[int]:
    """``N~_r`` read off the factored reciprocal ``(1-2u)^e * p``.

    The cofactor contributes ``e * 2**r`` to the r-th count; the rest comes
    from the log-derivative series of the core.
    """
    core_counts = log_derivative_counts(z.core, order)
    return [z.cofactor_exponent * 2**r + c for r, c in zip(range(1, order + 1), core_counts)]


def two_step_counts_bruteforce(g: Graph, order: int = 4) -> list[int]:
    return [count_two_step_cycles(g, r) for r in range(1, order + 1)]


def reduced_counts_bruteforce(g: Graph, order: int = 6) -> list[int]:
    return [count_reduced_cycles(g, k) for k in range(1, order + 1)]
