import random
from fractions import Fraction as F

import pytest

from ncur.contextuality import (APPENDIX_B, RECTANGLE_EQUIVALENCE, analytic_mu_family, appendixB_reduce,
                                build_nc_system, build_scenario, depolarization_threshold, nc_feasibility,
                                nc_max, nc_polytope, rectangle_quadruple, saturating_model, saturation_grid,
                                substitute_inequality, verify_threshold, violation_report)
from ncur.convex import ContractViolation, LinearSystem, is_feasible, sign_vectors
from ncur.kernels import grid_oracle
from ncur.surd import Surd
from ncur.theories import RepVector, canonical_measurements, make_theory

XZ = [canonical_measurements()[a] for a in ("X", "Z")]
DIAMOND = LinearSystem.build(("<X>", "<Z>"), [(list(s), "<=", 1) for s in sign_vectors(2)])


def test_scenario_conventions():
    s2 = build_scenario(2)
    assert s2.response[("X", 1)] == (0, 1, 0, 1)
    assert s2.response[("Z", 1)] == (1, 1, 0, 0)
    assert s2.response[("Z", -1)] == (0, 0, 1, 1)
    s3 = build_scenario(3)
    assert all(sum(s3.response[(w, 1)]) == 4 for w in "XYZ")
    for sc in (s2, s3):
        for w in sc.labels:
            assert all(p + m == 1 for p, m in zip(sc.response[(w, 1)], sc.response[(w, -1)]))
    with pytest.raises(ContractViolation):
        build_scenario(4)


def test_systems_feasible_with_uniform_mus():
    for n, k in ((2, 16), (3, 64)):
        sc = build_scenario(n)
        system = build_nc_system(sc)
        assert system.dim == k
        uniform = [F(1, sc.n_ontic)] * k
        assert system.contains(uniform)
        assert is_feasible(system)


def test_analytic_family_satisfies_the_system():
    rng = random.Random(3)
    system = build_nc_system(build_scenario(2))
    hits = 0
    for _ in range(400):
        a, b, c = (F(rng.randint(0, 8), 16) for _ in range(3))
        d = 1 - a - b - c
        eps, gam = F(rng.randint(-4, 4), 16), F(rng.randint(-4, 4), 16)
        dlt = 2 * (a + d) - 1 - eps - gam
        m = analytic_mu_family(a, b, c, d, eps, gam, dlt)
        if not isinstance(m, list):
            hits += 1
            assert system.contains(m.flat())
            assert m.expectation("X") == b + d - a - c
            assert m.expectation("Z") == a + b - c - d
    assert hits > 20


def test_analytic_family_examples():
    m = analytic_mu_family(F(1, 4), F(1, 4), F(1, 4), F(1, 4), 0, 0, 0)
    assert all(mu == (F(1, 4),) * 4 for mu in m.mus)
    m = analytic_mu_family(F(1, 4), F(1, 2), 0, F(1, 4), 0, 0, 0)
    assert m.expectation("X") == m.expectation("Z") == F(1, 2)
    bad = analytic_mu_family(F(3, 4), F(1, 4), 0, 0, 0, 0, 0)
    assert isinstance(bad, list) and any("noncontextuality" in v for v in bad)


@pytest.mark.parametrize("signs", sign_vectors(2))
def test_nc_max_n2(signs):
    rep = nc_max(build_scenario(2), signs)
    assert rep.optimum == 1
    assert rep.model.satisfies_nc_system()
    assert sum(s * rep.model.expectation(w) for s, w in zip(signs, "XZ")) == 1


def test_nc_max_n3_all_patterns():
    sc = build_scenario(3)
    system = build_nc_system(sc)
    assert [nc_max(sc, s, system).optimum for s in sign_vectors(3)] == [1] * 8


def test_nc_max_contract():
    with pytest.raises(ContractViolation):
        nc_max(build_scenario(2), (1, 1, 1))


def test_routes_agree_n2():
    sc = build_scenario(2)
    reports = {r: nc_polytope(sc, r) for r in ("lp", "fm", "appendixb")}
    for rep in reports.values():
        assert rep.facets.same_rows(DIAMOND)
        assert set(rep.vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert reports["lp"].details["complete"]


def test_fm_route_rejected_for_three_measurements():
    with pytest.raises(ContractViolation):
        nc_polytope(build_scenario(3), "fm")


def test_appendix_b_first_inequality():
    # P12 + P22 - P23 - P14 <= 1 with the rectangle signs reduces to <Z> <= 1.
    r = substitute_inequality(APPENDIX_B[0])
    assert r.a == (0, 1) and r.b == 1
    red = appendixB_reduce()
    assert len(red.rows) == 4 and red.same_rows(DIAMOND)


def test_saturating_family():
    assert saturating_model(0).expectation("X") == F(1, 2)
    m = saturating_model(F(1, 4))
    assert (m.expectation("X"), m.expectation("Z")) == (0, 1)
    m = saturating_model(F(-1, 4))
    assert (m.expectation("X"), m.expectation("Z")) == (1, 0)
    for u, m in saturation_grid(101):
        up = F(1, 2) + 2 * u
        assert m.expectation("X") == 1 - up and m.expectation("Z") == up
        assert not m.violations() and m.satisfies_nc_system()
    with pytest.raises(ContractViolation):
        saturating_model(F(1, 3))


@pytest.mark.parametrize("name,group,value,verdict", [
    ("qubit", "a12", Surd.sqrt(2), "contextual"),
    ("qubit", "a13", Surd.sqrt(3), "contextual"),
    ("gbit", "a12", F(2), "contextual"),
    ("gbit", "a13", F(3), "contextual"),
    ("stabilizer", "a12", F(1), "saturates"),
    ("stabilizer", "a13", F(1), "saturates"),
    ("simplicial", "a12", F(1), "saturates"),
])
def test_violation_reports(name, group, value, verdict):
    rep = violation_report(make_theory(name), group)
    assert rep["max_value"] == value and rep["verdict"] == verdict


def test_depolarized_values_and_thresholds():
    rep = violation_report(make_theory("depolarized", F(3, 10)), "a12")
    assert rep["max_value"] == Surd(0, F(7, 10), 2) and rep["verdict"] == "noncontextual-compatible"
    assert violation_report(make_theory("depolarized", F(1, 4)), "a12")["verdict"] == "contextual"
    assert depolarization_threshold("a12") == 1 - 1 / Surd.sqrt(2)
    assert depolarization_threshold("a13") == 1 - 1 / Surd.sqrt(3)
    for g in ("a12", "a13"):
        chk = verify_threshold(g)
        assert chk["violates_below"] and chk["satisfies_above"]
        assert chk["below"] < chk["threshold"] < chk["above"]


def test_feasibility_examples():
    bad = nc_feasibility(rectangle_quadruple(F(3, 5), F(4, 5)), [RECTANGLE_EQUIVALENCE], XZ)
    assert not bad.feasible and bad.certificate_valid()
    good = nc_feasibility(rectangle_quadruple(1, 0), [RECTANGLE_EQUIVALENCE], XZ)
    assert good.feasible
    single = nc_feasibility([RepVector.state(F(1, 3), 0, F(1, 2))], [], XZ)
    assert single.feasible


def test_feasibility_rejects_malformed_equivalences():
    quad = rectangle_quadruple(F(1, 2), F(1, 2))
    with pytest.raises(ContractViolation):
        nc_feasibility(quad, [({0: F(1, 2), 2: F(1, 3)}, {1: F(1, 2), 3: F(1, 2)})], XZ)
    with pytest.raises(ContractViolation):
        nc_feasibility(quad, [({0: 1}, {1: 1})], XZ)


def _pythagorean_points(count):
    out = []
    m = 2
    while len(out) < count:
        for n in range(1, m):
            a, b, c = m * m - n * n, 2 * m * n, m * m + n * n
            out.append((F(a, c), F(b, c)))
        m += 1
    return out[:count]


@pytest.mark.parametrize("x,z", _pythagorean_points(10))
def test_feasibility_on_pythagorean_quadruples(x, z):
    for scale in (1, F(1, 2)):
        quad = rectangle_quadruple(scale * x, scale * z)
        res = nc_feasibility(quad, [RECTANGLE_EQUIVALENCE], XZ)
        assert res.feasible == (scale * (x + z) <= 1)
        if not res.feasible:
            assert res.certificate_valid()


def test_grid_oracle_against_lp():
    g = grid_oracle(40)
    assert F(9, 10) <= g["max"] <= nc_max(build_scenario(2), (1, 1)).optimum
    arg = g["argmax"]
    m = analytic_mu_family(*(arg[k] for k in ("a", "b", "c", "d", "eps", "gam", "dlt")))
    assert m.expectation("X") + m.expectation("Z") == g["max"]


def test_bound_report_json():
    d = nc_polytope(build_scenario(2), "lp").to_dict()
    assert d["route"] == "analytic-LP" and d["optimum"] == "1"
    assert LinearSystem.from_dict(d["facets"]).same_rows(DIAMOND)
