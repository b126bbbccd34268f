"""Ihara and modified zeta functions of graphs from Grover-walk positive supports."""

from .algebra import Polynomial, char_poly, det_bareiss, poly_roots, squarefree_decomposition
from .graph import (
    Graph,
    GraphFormatError,
    classify,
    emit_edge_list,
    emit_graph6,
    generate_named,
    parse_edge_list,
    parse_graph6,
    resolve_name,
    validate_for_modified_zeta,
)
from .spectra import PoleSet, lifted_spectrum, pole_geometry, poles, radius_of_convergence_check, reciprocal
from .verify import VerificationReport, run_verification
from .walks import HypothesisError, IdentityViolation, grover_matrix, squared_support, uplus
from .zeta import (
    NotApplicable,
    ZetaReciprocal,
    complexity,
    derivative_identities,
    ihara_reciprocal_bass,
    ihara_reciprocal_edge,
    iota,
    modified_reciprocal,
)

__version__ = "0.1.0"
