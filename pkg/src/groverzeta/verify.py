"""Run every applicable identity check on one graph and collect the results.

Checks never abort the run: a hypothesis the graph does not meet yields
``not-applicable``, any failure or unexpected exception yields ``fail``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable

from .algebra import identity, matmul, matrix_power, root_multiplicity, squarefree_decomposition, trace
from .graph import Graph, classify, validate_for_modified_zeta
from .spectra import (
    GEOMETRY_TOL,
    lifted_charpoly_check,
    lifted_spectrum,
    pole_geometry,
    poles,
    predicted_modified_poles,
    radius_of_convergence_check,
    uplus_charpoly_check,
)
from .walks import (
    HypothesisError,
    IdentityViolation,
    grover_matrix,
    squared_support,
    support_identity_violations,
    two_step_related,
    uplus,
)
from .zeta import (
    IOTA_BRUTEFORCE_MAX_EDGES,
    NotApplicable,
    derivative_identities,
    ihara_reciprocal_bass,
    ihara_reciprocal_edge,
    iota,
    iota_bruteforce,
    log_derivative_counts,
    modified_reciprocal,
    reduced_counts_bruteforce,
    two_step_counts_bruteforce,
    two_step_counts_from_factorization,
)

ENUMERATION_BUDGET = 200_000


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    anchor: str
    status: str  # "pass" | "fail" | "not-applicable"
    lhs: str
    rhs: str
    elapsed: float

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "elapsed": round(self.elapsed, 6),
        }


@dataclass(frozen=True)
class VerificationReport:
    records: tuple[IdentityRecord, ...]

    @property
    def passed(self) -> bool:
        return not any(r.status == "fail" for r in self.records)

    def by_name(self, name: str) -> IdentityRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"records": [r.to_json() for r in self.records], "pass": self.passed}

    def to_text(self) -> str:
        width = max(len(r.name) for r in self.records)
        lines = [
            f"{r.status.upper():15} {r.name:<{width}}  lhs={r.lhs}  rhs={r.rhs}"
            for r in self.records
        ]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


class _NA(Exception):
    pass


class _Context:
    """Lazily shared intermediate results for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.c = classify(g)
        self.modified_problems = validate_for_modified_zeta(g)

    def need_connected(self):
        if not self.c.connected:
            raise _NA("graph is not connected")

    def need_min_degree(self, d: int):
        self.need_connected()
        if self.c.min_degree < d:
            raise _NA(f"δ(G)={self.c.min_degree} < {d}")

    def need_modified(self):
        if self.modified_problems:
            raise _NA("; ".join(self.modified_problems))

    def need_regular(self):
        self.need_modified()
        if self.c.regular_degree is None:
            raise _NA("graph is not regular")

    @cached_property
    def grover(self):
        return grover_matrix(self.g)

    @cached_property
    def uplus(self):
        return uplus(self.g)

    @cached_property
    def sq(self):
        return squared_support(self.g, check_identity=False)

    @cached_property
    def ihara_bass(self):
        return ihara_reciprocal_bass(self.g)

    @cached_property
    def ihara_edge(self):
        return ihara_reciprocal_edge(self.g)

    @cached_property
    def modified(self):
        return modified_reciprocal(self.g)

    @cached_property
    def invariants(self):
        return derivative_identities(self.g)


def _enumeration_depth(ctx: _Context, branching: int, limit: int) -> int:
    depth = 1
    while depth < limit and 2 * ctx.g.m * branching ** depth <= ENUMERATION_BUDGET:
        depth += 1
    return depth


def _grover_row_sums(ctx):
    ctx.need_min_degree(1)
    sums = sorted({sum(row) for row in ctx.grover})
    return sums == [1], ", ".join(map(str, sums)), "1"


def _grover_orthogonal(ctx):
    ctx.need_min_degree(1)
    u = ctx.grover
    ut = [list(col) for col in zip(*u)]
    return matmul(u, ut) == identity(len(u)), "U U^T", "I"


def _uplus_support_rule(ctx):
    ctx.need_min_degree(2)
    g = ctx.g
    bad = sum(
        1
        for e in range(2 * g.m)
        for f in range(2 * g.m)
        if ctx.uplus[e][f] != int(g.terminus(f) == g.origin(e) and f != e ^ 1)
    )
    return bad == 0, f"{bad} mismatched entries", "0"


def _uplus_charpoly(ctx):
    ctx.need_min_degree(2)
    chk = uplus_charpoly_check(ctx.g)
    return chk.passed, f"deg {chk.lhs.degree}", f"deg {chk.rhs.degree}"


def _ihara_forms(ctx):
    ctx.need_min_degree(2)
    a, b = ctx.ihara_edge.polynomial, ctx.ihara_bass.polynomial
    return a == b, f"edge form deg {a.degree}", f"vertex form deg {b.degree}"


def _ihara_pole_order(ctx):
    ctx.need_connected()
    if ctx.g.m <= ctx.g.n:
        raise _NA("needs m > n")
    mult = root_multiplicity(ctx.ihara_bass.polynomial, 1)
    return mult == ctx.g.m - ctx.g.n + 1, str(mult), str(ctx.g.m - ctx.g.n + 1)


def _ihara_derivative(ctx):
    ctx.need_connected()
    chk = next(c for c in ctx.invariants.identities if c.name == "f_prime_one")
    return chk.passed, str(chk.lhs), str(chk.rhs)


def _reduced_cycle_counts(ctx):
    ctx.need_min_degree(2)
    depth = _enumeration_depth(ctx, max(ctx.c.max_degree - 1, 1), 6)
    brute = reduced_counts_bruteforce(ctx.g, depth)
    traces = []
    power = ctx.uplus
    for _ in range(depth):
        traces.append(trace(power))
        power = matmul(power, ctx.uplus)
    series = log_derivative_counts(ctx.ihara_edge.polynomial, depth)
    ok = brute == traces == series
    return ok, f"enumerated {brute}", f"trace {traces}; series {series}"


def _support_identity(ctx):
    ctx.need_modified()
    bad = support_identity_violations(ctx.g, ctx.sq)
    return not bad, f"{len(bad)} mismatched entries", "0"


def _two_step_rule(ctx):
    ctx.need_modified()
    g, sq = ctx.g, ctx.sq
    bad = sum(
        1
        for e in range(2 * g.m)
        for f in range(2 * g.m)
        if sq[f][e] != int(two_step_related(g, e, f))
    )
    return bad == 0, f"{bad} mismatched entries", "0"


def _modified_division(ctx):
    ctx.need_modified()
    z = ctx.modified
    return z.core is not None, f"(1-2u)^{z.cofactor_exponent} divides, core deg {z.core.degree}", "remainder 0"


def _hl_spot_check(ctx):
    ctx.need_modified()
    worst = max(s.rel_error for s in ctx.modified.spot_checks)
    return all(s.passed for s in ctx.modified.spot_checks), f"max rel err {worst:.2e}", "<= 1e-08"


def _identity_from_invariants(name):
    def check(ctx):
        ctx.need_modified()
        for c in ctx.invariants.identities:
            if c.name == name:
                return c.passed, str(c.lhs), str(c.rhs)
        raise _NA(f"{name} not defined for this graph")

    return check


def _iota_oucf(ctx):
    ctx.need_connected()
    if not ctx.c.simple:
        raise _NA("graph is not simple")
    if ctx.c.bipartite:
        raise _NA("bipartite: det(D+A) = 0")
    if ctx.g.m > IOTA_BRUTEFORCE_MAX_EDGES:
        raise _NA(f"m={ctx.g.m} > {IOTA_BRUTEFORCE_MAX_EDGES}")
    a, b = iota(ctx.g), iota_bruteforce(ctx.g)
    return a == b, f"det(D+A) = {a}", f"OUCF sum = {b}"


def _half_pole_order(ctx):
    ctx.need_modified()
    g = ctx.g
    mult = root_multiplicity(ctx.modified.polynomial, Fraction(1, 2))
    expected = 2 * (g.m - g.n + 1) if ctx.c.bipartite else 2 * (g.m - g.n) + 1
    return mult == expected, str(mult), str(expected)


def _radius(ctx):
    ctx.need_modified()
    r = radius_of_convergence_check(ctx.g, ctx.modified)
    rho = str(r.rho_exact) if r.rho_exact is not None else f"{r.rho:.12g}"
    lhs = f"rho={rho} order={r.multiplicity} rows=[{r.row_sum_min},{r.row_sum_max}]"
    rhs = f"[{r.lower_bound}, {r.upper_bound}] order={r.expected_multiplicity}"
    return r.passed, lhs, rhs


def _two_step_counts(ctx):
    ctx.need_modified()
    d = ctx.c.max_degree
    depth = _enumeration_depth(ctx, (d - 1) ** 2 + 1, 4)
    brute = two_step_counts_bruteforce(ctx.g, depth)
    sq = ctx.sq
    traces = [trace(matrix_power(sq, r)) for r in range(1, depth + 1)]
    series = two_step_counts_from_factorization(ctx.modified, depth)
    return brute == traces == series, f"enumerated {brute}", f"trace {traces}; series {series}"


def _bipartite_even(ctx):
    ctx.need_modified()
    if not ctx.c.bipartite:
        raise _NA("graph is not bipartite")
    mults = [m for _, m in squarefree_decomposition(ctx.modified.polynomial)]
    return all(m % 2 == 0 for m in mults), f"multiplicities {mults}", "all even"


def _lifted_charpoly(ctx):
    ctx.need_regular()
    chk = lifted_charpoly_check(ctx.g)
    return chk.passed, f"deg {chk.lhs.degree}", f"deg {chk.rhs.degree}"


def _lifted_vs_poles(ctx):
    ctx.need_regular()
    ps = poles(ctx.modified, ctx.c.regular_degree)
    observed = sorted(
        (p.value for p in ps.poles for _ in range(p.multiplicity)), key=lambda z: (z.real, z.imag)
    )
    inverted = sorted((1 / lam for lam in lifted_spectrum(ctx.g)), key=lambda z: (z.real, z.imag))
    predicted = predicted_modified_poles(ctx.g)
    ok = len(observed) == len(inverted) == len(predicted) and all(
        _multiset_close(observed, other) for other in (inverted, predicted)
    )
    return ok, f"{len(observed)} poles", f"{len(inverted)} inverted eigenvalues"


def _multiset_close(xs, ys) -> bool:
    pool = list(ys)
    for x in xs:
        j = min(range(len(pool)), key=lambda i: abs(pool[i] - x), default=None)
        if j is None or abs(pool[j] - x) > GEOMETRY_TOL:
            return False
        pool.pop(j)
    return not pool


def _rh(kind):
    def check(ctx):
        ctx.need_regular()
        report, _ = pole_geometry(ctx.g, kind)
        if kind == "ihara":
            ok = report.rh_analogue_holds == report.ramanujan and report.real_band_holds
        else:
            ok = (report.rh_analogue_holds or not report.ramanujan) and report.real_band_holds
        lhs = f"ramanujan={report.ramanujan} on_circle={report.rh_analogue_holds} band={report.real_band_holds}"
        return ok, lhs, f"{len(report.offending)} off-circle non-trivial poles"

    return check


CHECKS: list[tuple[str, str, Callable]] = [
    ("grover-row-sums", "grover-matrix-definition", _grover_row_sums),
    ("grover-orthogonal", "grover-matrix-definition", _grover_orthogonal),
    ("uplus-support-rule", "positive-support-definition", _uplus_support_rule),
    ("uplus-charpoly", "uplus-characteristic-polynomial", _uplus_charpoly),
    ("ihara-determinant-forms", "ihara-determinant-expression", _ihara_forms),
    ("ihara-pole-order-at-1", "ihara-determinant-expression", _ihara_pole_order),
    ("ihara-f-prime-at-1", "ihara-determinant-expression", _ihara_derivative),
    ("reduced-cycle-counts", "ihara-exponential-expression", _reduced_cycle_counts),
    ("support-identity", "squared-support-identity", _support_identity),
    ("two-step-relation", "two-step-cycle-definition", _two_step_rule),
    ("modified-factorization", "modified-determinant-expression", _modified_division),
    ("modified-hl-spot-check", "modified-determinant-expression", _hl_spot_check),
    ("p-half-zero", "special-values-at-one-half", _identity_from_invariants("p_half")),
    ("p-prime-half", "special-values-at-one-half", _identity_from_invariants("p_prime_half")),
    ("p-second-half", "special-values-at-one-half", _identity_from_invariants("p_second_half")),
    ("iota-oucf", "odd-unicyclic-factor-sum", _iota_oucf),
    ("half-pole-order", "pole-order-at-one-half", _half_pole_order),
    ("radius-of-convergence", "radius-of-convergence", _radius),
    ("two-step-cycle-counts", "modified-exponential-expression", _two_step_counts),
    ("bipartite-even-multiplicities", "bipartite-h-equals-l", _bipartite_even),
    ("lifted-charpoly", "lifted-spectrum", _lifted_charpoly),
    ("lifted-spectrum-poles", "lifted-spectrum", _lifted_vs_poles),
    ("ihara-rh-analogue", "regular-pole-geometry", _rh("ihara")),
    ("modified-rh-analogue", "regular-pole-geometry", _rh("modified")),
]


def run_verification(g: Graph) -> VerificationReport:
    ctx = _Context(g)
    records = []
    for name, anchor, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, lhs, rhs = fn(ctx)
            status = "pass" if ok else "fail"
        except (_NA, HypothesisError, NotApplicable) as exc:
            status, lhs, rhs = "not-applicable", str(exc), ""
        except IdentityViolation as exc:
            status, lhs, rhs = "fail", str(exc), ""
        except Exception as exc:  # keep going; a crash is a failed check
            status, lhs, rhs = "fail", f"{type(exc).__name__}: {exc}", ""
        records.append(IdentityRecord(name, anchor, status, lhs, rhs, time.perf_counter() - t0))
    return VerificationReport(tuple(records))

