from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DELTA3, FIXTURES, random_connected_graph
from groverzeta.algebra import Polynomial, root_multiplicity
from groverzeta.graph import Graph, complete, complete_bipartite, cycle
from groverzeta.walks import HypothesisError, squared_support, uplus
from groverzeta.zeta import (
    NotApplicable,
    complexity,
    derivative_identities,
    h_times_l,
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

u = sympy.Symbol("u")


def sympy_det_poly(m) -> Polynomial:
    """``det(I - uM)`` is the characteristic polynomial with coefficients reversed."""
    cp = sympy.Matrix(m).charpoly(u).all_coeffs()
    return Polynomial(int(c) for c in cp)


def odd_unicyclic_sum_full(g: Graph) -> int:
    """Independent oracle: all 2^m spanning subgraphs through networkx."""
    total = 0
    for mask in range(1 << g.m):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(e for i, e in enumerate(g.edges) if mask >> i & 1)
        comps = [h.subgraph(c) for c in nx.connected_components(h)]
        if all(c.number_of_edges() == c.number_of_nodes() and not nx.is_bipartite(c) for c in comps):
            total += 4 ** len(comps)
    return total


def test_ihara_k4_edge_form_matches_sympy():
    g = complete(4)
    assert ihara_reciprocal_edge(g).polynomial == sympy_det_poly(uplus(g))


def test_ihara_k4_core_factorization():
    core = ihara_reciprocal_bass(complete(4)).core
    assert core == Polynomial([1, -3, 2]) * Polynomial([1, 1, 2]) ** 3


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_ihara_cycle(n):
    expected = Polynomial([1] + [0] * (n - 1) + [-1]) ** 2
    assert ihara_reciprocal_edge(cycle(n)).polynomial == expected
    assert ihara_reciprocal_bass(cycle(n)).polynomial == expected


@pytest.mark.parametrize("name", list(FIXTURES))
def test_edge_and_vertex_forms_agree(name):
    g = FIXTURES[name]
    a, b = ihara_reciprocal_edge(g), ihara_reciprocal_bass(g)
    assert a.polynomial == b.polynomial
    assert a.core == b.core
    assert a.polynomial.degree == 2 * g.m and a.polynomial(0) == 1


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_edge_and_vertex_forms_agree_random(seed):
    rng = random.Random(seed)
    g = random_connected_graph(rng, rng.randint(3, 8), 0.5, min_degree=2)
    assert ihara_reciprocal_edge(g).polynomial == ihara_reciprocal_bass(g).polynomial


def test_tree_has_trivial_ihara():
    path = Graph(4, ((0, 1), (1, 2), (2, 3)))
    assert ihara_reciprocal_bass(path).polynomial == Polynomial([1])


def test_modified_k4_matches_sympy_and_divides():
    g = complete(4)
    z = modified_reciprocal(g)
    assert z.polynomial == sympy_det_poly(squared_support(g))
    assert z.cofactor_exponent == 4 and z.core.degree == 8
    assert z.core * Polynomial([1, -2]) ** 4 == z.polynomial
    assert all(s.passed for s in z.spot_checks)


@pytest.mark.parametrize("name", DELTA3)
def test_modified_factorization(name):
    g = FIXTURES[name]
    z = modified_reciprocal(g)
    assert z.cofactor_exponent == 2 * (g.m - g.n)
    assert z.core * z.cofactor ** z.cofactor_exponent == z.polynomial
    assert len(z.spot_checks) == 5 and all(s.rel_error <= 1e-8 for s in z.spot_checks)


def test_h_times_l_is_branch_independent():
    g = FIXTURES["petersen"]
    z = modified_reciprocal(g)
    coeffs = [float(c) for c in reversed(z.core.coeffs)]
    for x in (0.05, 0.4 + 0.2j, -0.3j):
        assert h_times_l(g, x) == pytest.approx(complex(np.polyval(coeffs, x)), rel=1e-9)


def test_modified_requires_min_degree_three():
    with pytest.raises(HypothesisError, match="δ\\(G\\) ≥ 3 required"):
        modified_reciprocal(cycle(5))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_complexity_cayley(n):
    assert complexity(complete(n)) == n ** (n - 2)


@pytest.mark.parametrize("a,b", [(2, 3), (3, 3), (3, 4)])
def test_complexity_complete_bipartite(a, b):
    assert complexity(complete_bipartite(a, b)) == a ** (b - 1) * b ** (a - 1)


@pytest.mark.parametrize("name", list(FIXTURES))
def test_complexity_matches_laplacian_eigenvalues(name):
    g = FIXTURES[name]
    ev = np.linalg.eigvalsh(np.diag(g.degrees) - np.array(g.adjacency_matrix()))
    assert complexity(g) == round(float(np.prod(ev[1:])) / g.n)


@pytest.mark.parametrize("name", ["k4", "k5", "petersen", "k5_minus_edge"])
def test_iota_matches_signless_eigen_product(name):
    g = FIXTURES[name]
    ev = np.linalg.eigvalsh(np.diag(g.degrees) + np.array(g.adjacency_matrix()))
    assert iota(g) == round(float(np.prod(ev)))


@pytest.mark.parametrize("name", ["k4", "k5", "k5_minus_edge"])
def test_iota_equals_odd_unicyclic_sum(name):
    g = FIXTURES[name]
    assert iota(g) == iota_bruteforce(g) == odd_unicyclic_sum_full(g)


def test_iota_bipartite_not_applicable():
    with pytest.raises(NotApplicable):
        iota(complete_bipartite(3, 3))


def test_known_invariants():
    assert (complexity(complete(4)), iota(complete(4))) == (16, 48)
    assert (complexity(complete(5)), iota(complete(5))) == (125, 648)
    assert (complexity(FIXTURES["petersen"]), iota(FIXTURES["petersen"])) == (2000, 6144)


@pytest.mark.parametrize(
    "name, key, value",
    [
        ("k4", "p_prime_half", Fraction(24)),
        ("k4", "f_prime_one", Fraction(64)),
        ("petersen", "p_prime_half", Fraction(1875, 8)),
        ("petersen", "f_prime_one", Fraction(20000)),
        ("k33", "p_prime_half", Fraction(0)),
        ("k33", "p_second_half", Fraction(59049, 128)),
        ("k33", "f_prime_one", Fraction(486)),
        ("cube", "p_second_half", Fraction(1152)),
        ("k5", "p_prime_half", Fraction(50625, 32)),
    ],
)
def test_derivative_identities_values(name, key, value):
    report = derivative_identities(FIXTURES[name])
    assert report.passed
    assert report.value(key) == value


def test_derivative_identities_skip_modified_side():
    report = derivative_identities(cycle(5))
    assert [c.name for c in report.identities] == ["f_one", "f_prime_one"]
    assert report.notes


@pytest.mark.parametrize("name", DELTA3)
def test_half_is_root_of_core(name):
    g = FIXTURES[name]
    mult = root_multiplicity(modified_reciprocal(g).core, Fraction(1, 2))
    assert mult == (2 if name in ("k33", "cube") else 1)


def test_log_derivative_of_geometric():
    # 1/(1-2u): N_r = 2^r
    assert log_derivative_counts(Polynomial([1, -2]), 5) == [2, 4, 8, 16, 32]


@pytest.mark.parametrize("name", ["k4", "petersen"])
def test_cycle_count_series(name):
    g = FIXTURES[name]
    z = modified_reciprocal(g)
    assert two_step_counts_from_factorization(z) == two_step_counts_bruteforce(g)
    assert log_derivative_counts(z.polynomial, 4) == two_step_counts_bruteforce(g)
    assert log_derivative_counts(ihara_reciprocal_bass(g).polynomial, 6) == reduced_counts_bruteforce(g)
