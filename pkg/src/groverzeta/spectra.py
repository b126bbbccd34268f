"""Adjacency spectra, the lifted spectrum of ``(U^2)+`` on regular graphs,
exact characteristic-polynomial factorizations, pole geometry and the
radius of convergence of the modified zeta series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .algebra import (
    ComplexRoot,
    Polynomial,
    char_poly,
    det_poly,
    matmul,
    poly_roots,
    root_multiplicity,
)
from .graph import Graph, classify
from .walks import HypothesisError, require_modified_hypotheses, squared_support, uplus
from .zeta import ZetaReciprocal, ihara_reciprocal_bass, modified_reciprocal

EIGEN_CLUSTER_TOL = 1e-6
GEOMETRY_TOL = 1e-7


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[tuple[float, int], ...]
    tolerance: float = EIGEN_CLUSTER_TOL

    def values(self) -> list[float]:
        return [v for v, mult in self.eigenvalues for _ in range(mult)]


def adjacency_spectrum(g: Graph) -> Spectrum:
    """Eigenvalues of ``A`` with multiplicities, ascending.

    Numeric clusters from ``eigvalsh`` are cross-checked against the exact
    multiplicities of ``char_poly(A)``.
    """
    a = np.array(g.adjacency_matrix(), dtype=float)
    vals = np.linalg.eigvalsh(a) if g.n else np.array([])
    clusters: list[list[float]] = []
    for v in sorted(vals):
        if clusters and v - clusters[-1][-1] <= EIGEN_CLUSTER_TOL:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    numeric = [(float(np.mean(c)), len(c)) for c in clusters]

    if g.n:
        exact = poly_roots(char_poly(g.adjacency_matrix()))
        exact_sorted = sorted(((r.real, r.multiplicity) for r in exact))
        mismatch = len(exact_sorted) != len(numeric) or any(
            abs(v - ev) > EIGEN_CLUSTER_TOL or mult != emult
            for (v, mult), (ev, emult) in zip(numeric, exact_sorted)
        )
        if mismatch:
            raise ArithmeticError(f"numeric spectrum {numeric} disagrees with exact {exact_sorted}")
        numeric = [(ev, emult) for ev, emult in exact_sorted]
    return Spectrum(tuple(numeric))


def _require_regular(g: Graph) -> int:
    require_modified_hypotheses(g)
    k = classify(g).regular_degree
    if k is None:
        raise HypothesisError(["graph is not regular"])
    return k


def lift_eigenvalue(a: float, k: int) -> tuple[complex, complex]:
    """The two eigenvalues of ``(U^2)+`` attached to adjacency eigenvalue ``a``."""
    centre = (a * a - 2 * k + 4) / 2
    spread = 1j * a * cmath.sqrt(k - 1 - a * a / 4)
    return centre + spread, centre - spread


def _canonical(zs) -> list[complex]:
    return sorted(
        (complex(round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0) for z in zs),
        key=lambda z: (z.real, z.imag),
    )


def lifted_spectrum(g: Graph) -> list[complex]:
    """All 2m eigenvalues of ``(U^2)+`` for a k-regular graph, from the spectrum of A."""
    k = _require_regular(g)
    out = []
    for a in adjacency_spectrum(g).values():
        out.extend(lift_eigenvalue(a, k))
    out.extend([2 + 0j] * (2 * (g.m - g.n)))
    return _canonical(out)


def predicted_modified_poles(g: Graph) -> list[complex]:
    """Poles of the modified zeta function straight from the closed form in
    the adjacency eigenvalues, plus ``1/2`` for each surplus eigenvalue 2."""
    k = _require_regular(g)
    out = []
    for a in adjacency_spectrum(g).values():
        root = cmath.sqrt(4 * k - 4 - a * a)
        den = 2 * (a * a + (k - 2) ** 2)
        for sign in (1, -1):
            out.append((a * a - 2 * k + 4 + sign * 1j * a * root) / den)
    out.extend([0.5 + 0j] * (2 * (g.m - g.n)))
    return _canonical(out)


@dataclass(frozen=True)
class CharpolyCheck:
    name: str
    lhs: Polynomial
    rhs: Polynomial

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def lifted_pencil_det(g: Graph, k: int) -> Polynomial:
    """``det(l^2 I - l (A^2 - (2k-4) I) + A^2 + (k-2)^2 I)`` as a polynomial in l."""
    a = g.adjacency_matrix()
    a2 = matmul(a, a)
    n = g.n

    def at(lam):
        return [
            [
                (lam * lam + lam * (2 * k - 4) + (k - 2) ** 2 if i == j else 0)
                - lam * a2[i][j] + a2[i][j]
                for j in range(n)
            ]
            for i in range(n)
        ]

    return det_poly(at, 2 * n)


def lifted_charpoly_check(g: Graph) -> CharpolyCheck:
    k = _require_regular(g)
    lhs = char_poly(squared_support(g))
    rhs = Polynomial([-2, 1]) ** (2 * (g.m - g.n)) * lifted_pencil_det(g, k)
    return CharpolyCheck("charpoly (U^2)+ = (l-2)^(2(m-n)) det(pencil)", lhs, rhs)


def uplus_charpoly_check(g: Graph) -> CharpolyCheck:
    """``char_poly((U)+) = (l^2-1)^(m-n) det((l^2-1) I - l A + D)``."""
    c = classify(g)
    if not c.connected or c.min_degree < 2:
        raise HypothesisError(["connected graph with δ(G) ≥ 2 required"])
    a, d = g.adjacency_matrix(), g.degrees

    def at(lam):
        return [
            [(lam * lam - 1 + d[i] if i == j else 0) - lam * a[i][j] for j in range(g.n)]
            for i in range(g.n)
        ]

    lhs = char_poly(uplus(g))
    rhs = Polynomial([-1, 0, 1]) ** (g.m - g.n) * det_poly(at, 2 * g.n)
    return CharpolyCheck("charpoly (U)+ = (l^2-1)^(m-n) det((l^2-1)I - lA + D)", lhs, rhs)


# -- poles ---------------------------------------------------------------------

@dataclass(frozen=True)
class Pole:
    root: ComplexRoot
    trivial: bool = False
    real: bool = False
    on_ihara_circle: bool = False
    on_modified_circle: bool = False

    @property
    def value(self) -> complex:
        return self.root.value

    @property
    def multiplicity(self) -> int:
        return self.root.multiplicity


@dataclass(frozen=True)
class Circle:
    center: float
    radius: float

    def residue(self, z: complex) -> float:
        return abs((z.real - self.center) ** 2 + z.imag**2 - self.radius**2)


def ihara_circle(k: int) -> Circle:
    return Circle(0.0, 1 / math.sqrt(k - 1))


def modified_circle(k: int) -> Circle:
    return Circle(-1 / (k * k - 2 * k), (k - 1) / (k * k - 2 * k))


def trivial_poles(kind: str, k: int) -> list[Fraction]:
    if kind == "ihara":
        return [Fraction(1), Fraction(-1), Fraction(1, k - 1), Fraction(-1, k - 1)]
    return [Fraction(1, k * k - 2 * k + 2), Fraction(1, 2)]


@dataclass(frozen=True)
class PoleSet:
    kind: str
    poles: tuple[Pole, ...]
    regular_degree: int | None = None
    circle: Circle | None = None

    @property
    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.poles)

    def on_circle(self, p: Pole) -> bool:
        return p.on_ihara_circle if self.kind == "ihara" else p.on_modified_circle

    def label(self, p: Pole) -> str:
        if p.trivial:
            return "trivial"
        if self.circle is not None and self.on_circle(p):
            return "circle"
        if p.real:
            return "real"
        return ""

    def to_csv(self) -> str:
        lines = ["re,im,multiplicity,annotation"]
        for p in self.poles:
            lines.append(f"{_num(p.value.real)},{_num(p.value.imag)},{p.multiplicity},{self.label(p)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "regular_degree": self.regular_degree,
            "circle": None if self.circle is None else {"center": self.circle.center, "radius": self.circle.radius},
            "poles": [
                {
                    "re": p.value.real,
                    "im": p.value.imag,
                    "multiplicity": p.multiplicity,
                    "exact": None if p.root.exact is None else str(p.root.exact),
                    "trivial": p.trivial,
                    "real": p.real,
                    "on_ihara_circle": p.on_ihara_circle,
                    "on_modified_circle": p.on_modified_circle,
                }
                for p in self.poles
            ],
        }


def _num(x: float) -> str:
    s = format(x, ".12g")
    return "0" if s in ("-0", "0") else s


def poles(z: ZetaReciprocal, k: int | None = None) -> PoleSet:
    """Roots of the reciprocal polynomial with exact multiplicities.

    With ``k`` (the degree of a regular graph) each pole is annotated as
    trivial, real and on/off the two reference circles.
    """
    roots = poly_roots(z.polynomial)
    if k is None:
        return PoleSet(z.kind, tuple(Pole(r, real=abs(r.imag) <= GEOMETRY_TOL) for r in roots))
    ic, mc = ihara_circle(k), modified_circle(k)
    trivial = trivial_poles(z.kind, k)
    out = []
    for r in roots:
        v = r.value
        is_real = abs(v.imag) <= GEOMETRY_TOL
        if r.exact is not None:
            is_trivial = r.exact in trivial
        else:
            is_trivial = is_real and any(abs(v.real - float(t)) <= GEOMETRY_TOL for t in trivial)
        out.append(
            Pole(
                r,
                trivial=is_trivial,
                real=is_real,
                on_ihara_circle=ic.residue(v) <= GEOMETRY_TOL,
                on_modified_circle=mc.residue(v) <= GEOMETRY_TOL,
            )
        )
    circle = ic if z.kind == "ihara" else mc
    return PoleSet(z.kind, tuple(out), k, circle)


def reciprocal(g: Graph, kind: Literal["ihara", "modified"]) -> ZetaReciprocal:
    return ihara_reciprocal_bass(g) if kind == "ihara" else modified_reciprocal(g)


@dataclass(frozen=True)
class RiemannReport:
    kind: str
    ramanujan: bool
    rh_analogue_holds: bool
    real_band_holds: bool
    offending: tuple[Pole, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ramanujan": self.ramanujan,
            "rh_analogue_holds": self.rh_analogue_holds,
            "real_band_holds": self.real_band_holds,
            "offending": [[p.value.real, p.value.imag, p.multiplicity] for p in self.offending],
        }


def is_ramanujan(g: Graph, k: int) -> bool:
    bound = 2 * math.sqrt(k - 1) + GEOMETRY_TOL
    return all(
        abs(v) <= bound
        for v, _ in adjacency_spectrum(g).eigenvalues
        if abs(abs(v) - k) > GEOMETRY_TOL
    )


def _in_real_band(kind: str, k: int, x: float) -> bool:
    tol = GEOMETRY_TOL
    if kind == "ihara":
        return 1 / (k - 1) - tol <= abs(x) <= 1 + tol
    lo, hi = 1 / (k * k - 2 * k + 2), 0.5
    return lo - tol <= x <= hi + tol or abs(x + 1 / (k - 2)) <= tol


def pole_geometry(g: Graph, kind: Literal["ihara", "modified"]) -> tuple[RiemannReport, PoleSet]:
    """Check every non-trivial pole against the critical circle of its kind."""
    k = _require_regular(g)
    ps = poles(reciprocal(g, kind), k)
    offending = tuple(p for p in ps.poles if not p.trivial and not ps.on_circle(p))
    band = all(_in_real_band(kind, k, p.value.real) for p in ps.poles if p.real)
    report = RiemannReport(kind, is_ramanujan(g, k), not offending, band, offending)
    return report, ps


# -- radius of convergence -----------------------------------------------------

@dataclass(frozen=True)
class RadiusReport:
    rho: float
    rho_exact: Fraction | None
    alpha: float
    multiplicity: int
    expected_multiplicity: int
    lower_bound: Fraction
    upper_bound: Fraction
    row_sum_min: int
    row_sum_max: int

    @property
    def bounds_hold(self) -> bool:
        if self.rho_exact is not None:
            return self.lower_bound <= self.rho_exact <= self.upper_bound
        slack = 1e-9 * self.rho
        return float(self.lower_bound) - slack <= self.rho <= float(self.upper_bound) + slack

    @property
    def row_sums_bracket_alpha(self) -> bool:
        slack = 1e-9 * self.alpha
        return self.row_sum_min - slack <= self.alpha <= self.row_sum_max + slack

    @property
    def multiplicity_holds(self) -> bool:
        return self.multiplicity == self.expected_multiplicity

    @property
    def passed(self) -> bool:
        return self.bounds_hold and self.row_sums_bracket_alpha and self.multiplicity_holds

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "rho_exact": None if self.rho_exact is None else str(self.rho_exact),
            "alpha": self.alpha,
            "multiplicity": self.multiplicity,
            "expected_multiplicity": self.expected_multiplicity,
            "bounds": [str(self.lower_bound), str(self.upper_bound)],
            "row_sums": [self.row_sum_min, self.row_sum_max],
            "pass": self.passed,
        }


def radius_of_convergence_check(g: Graph, z: ZetaReciprocal | None = None) -> RadiusReport:
    """Locate the pole nearest the origin and test the degree bounds on it.

    ``rho`` is the positive real root of smallest modulus of the modified
    reciprocal; it must also be the smallest-modulus root overall.
    """
    require_modified_hypotheses(g)
    c = classify(g)
    z = z or modified_reciprocal(g)
    roots = poly_roots(z.polynomial)
    nearest = min(abs(r.value) for r in roots)
    positive = [r for r in roots if abs(r.imag) <= GEOMETRY_TOL and r.real > 0]
    best = min(positive, key=lambda r: r.real)
    if best.real > nearest * (1 + 1e-9):
        raise ArithmeticError("no positive real root at the minimal modulus")
    if best.exact is not None:
        mult = root_multiplicity(z.polynomial, best.exact)
    else:
        mult = best.multiplicity
    sq = squared_support(g)
    sums = [sum(row) for row in sq]
    delta, big = c.min_degree, c.max_degree
    return RadiusReport(
        rho=best.real,
        rho_exact=best.exact,
        alpha=1 / best.real,
        multiplicity=mult,
        expected_multiplicity=2 if c.bipartite else 1,
        lower_bound=Fraction(1, (big - 1) ** 2 + 1),
        upper_bound=Fraction(1, (delta - 1) ** 2 + 1),
        row_sum_min=min(sums),
        row_sum_max=max(sums),
    )
