from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncur.convex import (EQ, LE, Ball, ContractViolation, EmptyPolytopeError, LinearSystem, Polytope, Status,
                         canonical_row, farkas_certificate, fm_project, hull_facets, is_feasible, lp_solve,
                         polytope_vertices, remove_redundant, restrict, sign_vectors, support_function)
from ncur.convex.linalg import affine_rank, nullspace, rank, solve
from ncur.convex.polytope import box
from ncur.surd import Surd


def sys_(names, rows):
    return LinearSystem.build(names, rows)


# --- rows and systems -------------------------------------------------------

def test_canonical_row_scales_to_coprime_ints():
    r = canonical_row([F(2, 3), F(4, 3)], LE, F(2))
    assert r.a == (1, 2) and r.b == 3


def test_equality_rows_get_positive_leading_coefficient():
    r = canonical_row([-2, 4], EQ, 6)
    assert r.a == (1, -2) and r.b == -3


def test_duplicate_rows_collapse():
    s = sys_(("x",), [([1], LE, 1), ([2], LE, 2), ([-1], LE, 0)])
    assert len(s.rows) == 2


def test_row_length_mismatch_is_rejected():
    with pytest.raises(ContractViolation):
        sys_(("x", "y"), [([1], LE, 1)])


def test_floats_are_refused():
    with pytest.raises((ContractViolation, TypeError)):
        sys_(("x",), [([0.5], LE, 1)])


def test_json_round_trip():
    s = sys_(("x", "y"), [([1, F(1, 3)], LE, F(5, 7)), ([1, -1], EQ, 0)])
    assert LinearSystem.from_json(s.to_json()) == s
    raw = {"vars": ["x"], "rows": [{"a": ["1/2"], "rel": "<=", "b": "3/4"}]}
    assert LinearSystem.from_dict(raw).rows[0].a == (2,) and LinearSystem.from_dict(raw).rows[0].b == 3


def test_dict_coefficients():
    s = sys_(("x", "y"), [({"y": 1}, LE, 2)])
    assert s.rows[0].a == (0, 1)


# --- LP ---------------------------------------------------------------------

def test_lp_single_variable_box():
    res = lp_solve(sys_(("x",), [([1], LE, 1), ([-1], LE, 1)]), [1])
    assert res.status is Status.OPTIMAL and res.optimum == 1 and res.argument == (1,)


def test_lp_simplex_face():
    s = sys_(("x", "y"), [([1, 0], LE, 1), ([0, 1], LE, 1), ([1, 1], LE, 1)])
    res = lp_solve(s, [1, 1])
    assert res.optimum == 1 and s.contains(res.argument)


def test_lp_infeasible_and_unbounded():
    assert lp_solve(sys_(("x",), [([1], LE, -1), ([-1], LE, 0)]), [1]).status is Status.INFEASIBLE
    assert lp_solve(sys_(("x",), [([-1], LE, 0)]), [1]).status is Status.UNBOUNDED


def test_lp_min_sense_and_equalities():
    s = sys_(("x", "y"), [([1, 1], EQ, 3), ([-1, 0], LE, 0), ([0, -1], LE, 0)])
    res = lp_solve(s, [1, 2], "min")
    assert res.optimum == 3 and res.argument == (3, 0)


def test_lp_dimension_mismatch():
    with pytest.raises(ContractViolation):
        lp_solve(sys_(("x",), [([1], LE, 1)]), [1, 2])


def test_lp_degenerate_redundant_equalities():
    s = sys_(("x", "y"), [([1, 1], EQ, 1), ([2, 2], LE, 2), ([-1, 0], LE, 0), ([0, -1], LE, 0),
                          ([1, -1], EQ, 0)])
    res = lp_solve(s, [1, 0])
    assert res.optimum == F(1, 2)


small = st.integers(-4, 4)


@st.composite
def bounded_systems(draw, dim=None):
    d = dim or draw(st.integers(1, 3))
    rows = [(list(r), LE, 3) for r in product((1, -1), repeat=d)]  # keeps it bounded
    for _ in range(draw(st.integers(0, 4))):
        a = [draw(small) for _ in range(d)]
        rows.append((a, LE, draw(st.integers(-2, 6))))
    return sys_(tuple(f"x{i}" for i in range(d)), rows)


@settings(max_examples=60, deadline=None)
@given(bounded_systems(), st.data())
def test_lp_matches_vertex_brute_force(system, data):
    c = [data.draw(small) for _ in range(system.dim)]
    res = lp_solve(system, c)
    if not is_feasible(system):
        assert res.status is Status.INFEASIBLE
        return
    verts = polytope_vertices(system)
    best = max(sum(ci * vi for ci, vi in zip(c, v)) for v in verts)
    assert res.optimum == best
    assert system.contains(res.argument)


# --- Farkas -----------------------------------------------------------------

def test_farkas_certificate_for_infeasible_system():
    s = sys_(("x", "y"), [([1, 1], LE, 1), ([-1, 0], LE, -1), ([0, -1], LE, -1)])
    cert = farkas_certificate(s)
    assert cert is not None and cert.verify(s)


def test_no_certificate_for_feasible_system():
    assert farkas_certificate(sys_(("x",), [([1], LE, 1)])) is None


# --- FM and redundancy --------------------------------------------------------

def test_fm_one_step():
    s = sys_(("x", "y"), [([1, 1], LE, 1), ([0, -1], LE, 0)])
    assert fm_project(s, ["x"]).same_rows(sys_(("x",), [([1], LE, 1)]))


def test_fm_equality_substitution():
    s = sys_(("x", "y"), [([1, -1], EQ, 0), ([0, 1], LE, 2)])
    assert fm_project(s, ["x"]).same_rows(sys_(("x",), [([1], LE, 2)]))


def test_fm_contract_errors():
    s = sys_(("x", "y"), [([1, 1], LE, 1)])
    with pytest.raises(ContractViolation):
        fm_project(s, [])
    with pytest.raises(ContractViolation):
        fm_project(s, ["z"])


@settings(max_examples=25, deadline=None)
@given(bounded_systems(dim=3), st.lists(st.tuples(st.integers(-12, 12), st.integers(-12, 12)),
                                        min_size=20, max_size=20))
def test_fm_projection_sound_and_complete(system, pts):
    if not is_feasible(system):
        return
    proj = fm_project(system, ["x0", "x1"])
    for p in pts:
        x = (F(p[0], 4), F(p[1], 4))
        extends = is_feasible(restrict(system, {"x0": x[0], "x1": x[1]}))
        assert proj.contains(x) == extends


def test_remove_redundant_examples():
    assert len(remove_redundant(sys_(("x",), [([1], LE, 1), ([1], LE, 2)])).rows) == 1
    assert len(remove_redundant(sys_(("x",), [([1], LE, 1), ([-1], LE, 0), ([1], LE, 1)])).rows) == 2


def test_remove_redundant_rejects_empty():
    with pytest.raises(EmptyPolytopeError):
        remove_redundant(sys_(("x",), [([1], LE, -1), ([-1], LE, 0)]))


@settings(max_examples=40, deadline=None)
@given(bounded_systems(), st.lists(st.lists(st.integers(-16, 16), min_size=3, max_size=3),
                                   min_size=10, max_size=10))
def test_remove_redundant_idempotent_and_exact(system, pts):
    if not is_feasible(system):
        return
    once = remove_redundant(system)
    assert remove_redundant(once).row_set() == once.row_set()
    for p in pts:
        x = [F(v, 4) for v in p[:system.dim]]
        assert once.contains(x) == system.contains(x)


# --- polytopes ---------------------------------------------------------------

def test_vertices_of_diamond_square_octahedron():
    diamond = sys_(("x", "z"), [(list(s), LE, 1) for s in sign_vectors(2)])
    assert set(polytope_vertices(diamond)) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(polytope_vertices(box([(-1, 1), (-1, 1)]))) == 4
    octa = sys_(("x", "y", "z"), [(list(s), LE, 1) for s in sign_vectors(3)])
    verts = polytope_vertices(octa)
    assert len(verts) == 6 and all(sum(abs(c) for c in v) == 1 for v in verts)


def test_vertices_reject_unbounded():
    with pytest.raises(ContractViolation):
        polytope_vertices(sys_(("x",), [([1], LE, 1)]))


def test_hull_facets_of_cube():
    cube = list(product((1, -1), repeat=3))
    facets = hull_facets(cube)
    assert len(facets.rows) == 6
    assert set(polytope_vertices(facets)) == {tuple(F(c) for c in v) for v in cube}


def test_support_function_examples():
    cube = Polytope.from_vertices(list(product((1, -1), repeat=3)))
    assert support_function(cube, (1, 1, 1)) == 3
    octa = Polytope.from_vertices([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    assert support_function(octa, (1, 1, 0)) == 1
    assert support_function(Ball(1), (1, 0, 1)) == Surd(0, 1, 2)


def test_support_function_contract():
    with pytest.raises(ContractViolation):
        support_function(Ball(1), (0, 0, 0))


def test_polytope_representations_consistent():
    p = Polytope.from_vertices([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])
    assert p.check_consistent()
    assert Polytope.from_hrep(p.hrep).vrep and set(Polytope.from_hrep(p.hrep).vrep) == set(p.vrep)


# --- linear algebra helpers ----------------------------------------------------

def test_linalg_helpers():
    assert rank([[1, 2], [2, 4]]) == 1
    assert solve([[1, 1], [1, -1]], [2, 0]) == [1, 1]
    ns = nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2 and all(sum(v) == 0 for v in ns)
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
