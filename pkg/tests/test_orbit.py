import random
from fractions import Fraction as F

import pytest

from ncur.contextuality import violation_report
from ncur.convex import Ball, ContractViolation
from ncur.orbit import (a12_analysis, a12_realizable, a13_orbit, a13_realizable, has_symmetry,
                        op_equiv_residuals_3d, parse_group, realizable_region, verify_op_equiv_3d)
from ncur.surd import Surd
from ncur.theories import OCTAHEDRON, RepVector, contains_state, make_theory

OCTA = {tuple(F(c) for c in v) for v in OCTAHEDRON}


def test_qubit_counterparts_share_y():
    s = RepVector.state(F(3, 5), F(1, 5), F(1, 2))
    w = a12_realizable(make_theory("qubit"), s)
    assert w is not None and w.valid
    assert all(t.sy == s.sy for t in w.states)


def test_tetrahedron_vertex_fails_rectangle_equality():
    res = a12_analysis(make_theory("simplicial"), RepVector.state(1, 1, 1))
    assert res.witness is None and res.failed == "rectangle-equality"
    # (s1 + s3)/2 - (s2 + s4)/2 with the forced counterparts (-1,-1,1), (-1,1,-1), (1,-1,-1)
    assert res.residual == RepVector(0, 0, 2, 0)


def test_octahedron_point_in_simplicial_is_realizable():
    assert a12_realizable(make_theory("simplicial"), RepVector.state(1, 0, 0)).valid


def test_state_outside_theory_rejected():
    with pytest.raises(ContractViolation):
        a12_analysis(make_theory("stabilizer"), RepVector.state(1, 1, 0))


def test_a13_examples():
    assert a13_realizable(make_theory("qubit"), RepVector.state(F(1, 2), F(1, 2), F(1, 2))).valid
    assert a13_realizable(make_theory("gbit"), RepVector.state(1, 1, 1)).valid
    with pytest.raises(ContractViolation):
        a13_realizable(make_theory("simplicial"), RepVector.state(0, 0, 0))
    assert a13_realizable(make_theory("simplicial"), RepVector.state(1, 1, 1), geometric=True) is None


def test_op_equiv_3d():
    orbit = a13_orbit(RepVector.state(F(1, 2), F(1, 3), F(1, 4)))
    assert verify_op_equiv_3d(orbit)
    assert all(not any(r) for r in op_equiv_residuals_3d(orbit))
    bent = list(orbit)
    bent[7] = bent[7] + RepVector(0, 0, 0, F(1, 8))
    assert not verify_op_equiv_3d(bent)
    with pytest.raises(ContractViolation):
        op_equiv_residuals_3d(orbit[:4])


@pytest.mark.parametrize("name,group,expected", [
    ("qubit", "a12", True), ("qubit", "a13", True), ("stabilizer", "a12", True), ("stabilizer", "a13", True),
    ("gbit", "a12", True), ("gbit", "a13", True), ("simplicial", "a12", False), ("simplicial", "a13", False),
])
def test_symmetry_classes(name, group, expected):
    assert has_symmetry(make_theory(name), group) is expected


@pytest.mark.parametrize("eta", [F(0), F(1, 3), F(1)])
def test_depolarized_symmetric(eta):
    assert has_symmetry(make_theory("depolarized", eta), "a13")


def test_regions():
    assert realizable_region(make_theory("gbit"), "a12").vrep == make_theory("gbit").body.vrep or \
        set(realizable_region(make_theory("gbit"), "a12").vrep) == set(make_theory("gbit").body.vrep)
    assert isinstance(realizable_region(make_theory("qubit"), "a13"), Ball)
    assert set(realizable_region(make_theory("simplicial"), "a13").vrep) == OCTA
    assert set(realizable_region(make_theory("simplicial"), "a12", coplanar=True).vrep) == OCTA


def test_simplicial_a12_region_is_larger_than_the_octahedron():
    # Counterparts may move in y: (1/3, 1, 1/3) has a full rectangle inside the tetrahedron.
    region = realizable_region(make_theory("simplicial"), "a12")
    assert all(region.contains(v) for v in OCTA)
    assert (F(1, 3), F(1), F(1, 3)) in region.vrep
    s = RepVector.state(F(1, 3), 1, F(1, 3))
    w = a12_realizable(make_theory("simplicial"), s)
    assert w is not None and w.valid
    assert [t.bloch for t in w.states[1:]] == [(F(-1, 3), F(1, 3), F(1, 3)), (F(-1, 3), F(-1, 3), F(-1, 3)),
                                              (F(1, 3), F(1, 3), F(-1, 3))]
    # The bound is still respected on the whole region.
    assert violation_report(make_theory("simplicial"), "a12")["max_value"] == 1


def _rand_state(rng, theory):
    while True:
        p = [F(rng.randint(-12, 12), 12) for _ in range(3)]
        s = RepVector.state(*p)
        if contains_state(theory, s):
            return s


@pytest.mark.parametrize("name", ["stabilizer", "gbit", "simplicial"])
def test_witnesses_are_valid_and_sign_covariant(name):
    th = make_theory(name)
    rng = random.Random(7)
    for _ in range(40):
        s = _rand_state(rng, th)
        res = a12_analysis(th, s)
        if res.witness is not None:
            assert res.witness.valid
            assert all(contains_state(th, t) for t in res.witness.states)
            # every member of the witness is itself realizable
            for t in res.witness.states[1:]:
                assert a12_realizable(th, t) is not None


def test_region_is_convex_on_random_midpoints():
    th = make_theory("simplicial")
    region = realizable_region(th, "a12")
    rng = random.Random(11)
    pts = []
    while len(pts) < 60:
        s = _rand_state(rng, th)
        if a12_realizable(th, s) is not None:
            assert region.contains(s.bloch)
            pts.append(s)
    for _ in range(500):
        a, b = rng.sample(pts, 2)
        mid = (a + b).scale(F(1, 2))
        assert region.contains(mid.bloch)
    for a, b in zip(pts[:40], pts[1:41]):
        assert a12_realizable(th, (a + b).scale(F(1, 2))) is not None


def test_parse_group():
    assert parse_group("A1^2") == "a12"
    with pytest.raises(ContractViolation):
        parse_group("b2")


def test_ball_witness_with_surds():
    s = RepVector.state(Surd(0, F(1, 2), 2), 0, Surd(0, F(1, 2), 2))
    assert a12_realizable(make_theory("qubit"), s).valid
