"""Exact convex-geometry kernel: linear systems, LP, projection, enumeration."""
from .fm import fm_project, remove_redundant, restrict
from .linsys import EQ, LE, ContractViolation, EmptyPolytopeError, LinearSystem, Row, canonical_row
from .lp import FarkasCertificate, LPResult, Status, farkas_certificate, is_feasible, lp_solve, verify_farkas
from .polytope import Ball, Polytope, hull_facets, polytope_vertices, sign_vectors, support_function

__all__ = [
    "EQ", "LE", "Ball", "ContractViolation", "EmptyPolytopeError", "FarkasCertificate",
    "LPResult", "LinearSystem", "Polytope", "Row", "Status", "canonical_row",
    "farkas_certificate", "fm_project", "hull_facets", "is_feasible", "lp_solve",
    "polytope_vertices", "remove_redundant", "restrict", "sign_vectors",
    "support_function", "verify_farkas",
]
