"""The acceptance suite: twelve criteria, each with an exact pass/fail verdict."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .contextuality import (RECTANGLE_EQUIVALENCE, analytic_mu_family, appendixB_reduce, build_scenario,
                            depolarization_threshold, nc_feasibility, nc_max, nc_polytope, rectangle_quadruple,
                            saturating_model, saturation_grid, violation_report)
from .convex import LinearSystem, sign_vectors
from .convex.linsys import fmt
from .orbit import a12_analysis, has_symmetry, realizable_region
from .surd import Surd
from .theories import OCTAHEDRON, RepVector, canonical_measurements, make_theory
from .uncertainty import FORM_KINDS, convert_form

TheoryFactory = Callable[..., object]
DIAMOND_VERTICES = {(Fraction(1), Fraction(0)), (Fraction(-1), Fraction(0)),
                    (Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1))}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float | None = None

    @property
    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        budget = f" / {self.budget:g} s budget" if self.budget else ""
        return f"[{mark}] {self.number:2d}. {self.title} ({self.seconds:.2f} s{budget}) - {self.detail}"


def _diamond_rows() -> LinearSystem:
    return LinearSystem.build(("<X>", "<Z>"), [(list(s), "<=", 1) for s in sign_vectors(2)]).sorted()


def c1_bound_n2(factory, skip_fm):
    sc = build_scenario(2)
    values = {tuple(s): nc_max(sc, s).optimum for s in sign_vectors(2)}
    ok = all(v == 1 for v in values.values())
    return ok, "max over 4 sign patterns: " + ", ".join(fmt(v) for v in values.values())


def c2_diamond(factory, skip_fm):
    sc = build_scenario(2)
    target = _diamond_rows()
    routes = {"lp": nc_polytope(sc, "lp"), "appendixb": nc_polytope(sc, "appendixb")}
    notes = []
    if skip_fm:
        notes.append("fm route skipped")
    else:
        routes["fm"] = nc_polytope(sc, "fm")
    bad = [k for k, r in routes.items() if not r.facets.same_rows(target)]
    bad += [f"{k}-vertices" for k, r in routes.items() if set(r.vertices) != DIAMOND_VERTICES]
    if not appendixB_reduce().same_rows(target):
        bad.append("appendixB_reduce")
    ok = not bad
    notes.insert(0, f"routes {', '.join(sorted(routes))} agree on 4 rows +-<X>+-<Z> <= 1" if ok
                 else f"mismatch in {', '.join(bad)}")
    return ok, "; ".join(notes)


def c3_octahedron(factory, skip_fm):
    sc = build_scenario(3)
    rep = nc_polytope(sc, "lp")
    maxima = [c["max"] for c in rep.details["facet_certificates"]]
    octa = {tuple(Fraction(x) for x in v) for v in OCTAHEDRON}
    ok = (all(m == "1" for m in maxima) and len(rep.facets.rows) == 8 and len(rep.vertices) == 6
          and set(rep.vertices) == octa and rep.details["complete"])
    return ok, (f"8 sign patterns -> {set(maxima)}; {len(rep.facets.rows)} facets, "
                f"{len(rep.vertices)} vertices, certified={rep.details['complete']}")


def c4_quantum(factory, skip_fm):
    q = factory("qubit")
    v2 = violation_report(q, "a12")["max_value"]
    v3 = violation_report(q, "a13")["max_value"]
    ok = (v2 == Surd.sqrt(2) and v3 == Surd.sqrt(3)
          and round(float(v2), 3) == 1.414 and round(float(v3), 3) == 1.732)
    return ok, f"qubit A12 = {v2} ~ {float(v2):.3f}, A13 = {v3} ~ {float(v3):.3f}"


def c5_foils(factory, skip_fm):
    vals = {(t, g): violation_report(factory(t), g)["max_value"]
            for t in ("gbit", "stabilizer") for g in ("a12", "a13")}
    want = {("gbit", "a12"): 2, ("gbit", "a13"): 3, ("stabilizer", "a12"): 1, ("stabilizer", "a13"): 1}
    bad = [f"{t}/{g}={vals[(t, g)]}" for (t, g), w in want.items()
           if not (isinstance(vals[(t, g)], Fraction) and vals[(t, g)] == w)]
    detail = ", ".join(f"{t}/{g}={vals[(t, g)]}" for t, g in want)
    return not bad, detail if not bad else f"wrong: {', '.join(bad)}"


def c6_thresholds(factory, skip_fm):
    t2, t3 = depolarization_threshold("a12"), depolarization_threshold("a13")
    exact = t2 == Surd(1, Fraction(-1, 2), 2) and t3 == Surd(1, Fraction(-1, 3), 3)
    at_310 = violation_report(factory("depolarized", Fraction(3, 10)), "a12")["verdict"]
    at_14 = violation_report(factory("depolarized", Fraction(1, 4)), "a12")["verdict"]
    # Geometric direction: a larger eta (smaller ball) satisfies the bound.
    lo3 = violation_report(factory("depolarized", Fraction(21, 50)), "a13")["verdict"]
    hi3 = violation_report(factory("depolarized", Fraction(43, 100)), "a13")["verdict"]
    ok = (exact and at_310 != "contextual" and at_14 == "contextual"
          and lo3 == "contextual" and hi3 != "contextual")
    return ok, (f"eta* = {t2} ~ {float(t2):.3f} (A12), {t3} ~ {float(t3):.3f} (A13); "
                f"eta=3/10: {at_310}; eta=1/4: {at_14}; A13 eta=21/50: {lo3}, 43/100: {hi3}")


def c7_saturation(factory, skip_fm):
    rows = saturation_grid(101)
    bad = []
    for u, model in rows:
        ok_model = not isinstance(analytic_mu_family(*_params(u)), list) and model.satisfies_nc_system()
        if not ok_model or model.expectation("X") + model.expectation("Z") != 1:
            bad.append(fmt(u))
    mid = saturating_model(0)
    ok = not bad and len(rows) == 101 and mid.expectation("X") == mid.expectation("Z") == Fraction(1, 2)
    return ok, (f"{len(rows)} u values valid with <X>+<Z> = 1; u=0 -> ({fmt(mid.expectation('X'))}, "
                f"{fmt(mid.expectation('Z'))})" if ok else f"failing u: {bad[:5]}")


def _params(u):
    q = Fraction(1, 4)
    return (q + u, Fraction(1, 2), 0, q - u, 0, 0, 0)


def c8_orbits(factory, skip_fm):
    problems = []
    for name, eta in (("qubit", None), ("stabilizer", None), ("depolarized", Fraction(3, 10)), ("gbit", None)):
        th = factory(name, eta) if eta is not None else factory(name)
        for g in ("a12", "a13"):
            if not has_symmetry(th, g):
                problems.append(f"has_symmetry({th.label}, {g}) is false")
    simp = factory("simplicial")
    if has_symmetry(simp, "a12"):
        problems.append("has_symmetry(simplicial, a12) is true")
    res = a12_analysis(simp, RepVector.state(1, 1, 1))
    if not (res.witness is None and res.failed == "rectangle-equality"
            and res.residual == RepVector(0, 0, 2, 0)):
        problems.append(f"vertex (1,1,1) not refuted by the rectangle residual (got {res.to_dict()})")
    region = realizable_region(simp, "a12")
    octa = {tuple(Fraction(x) for x in v) for v in OCTAHEDRON}
    extra = sorted(set(region.vrep) - octa)
    if set(region.vrep) != octa:
        w = a12_analysis(simp, RepVector.state(*extra[0])).witness
        problems.append(
            f"realizable_region(simplicial, a12) is not the octahedron: extra vertices "
            f"{[tuple(fmt(x) for x in v) for v in extra]}; e.g. witness quadruple "
            f"{[s.to_list()[1:] for s in w.states] if w else None}")
        coplanar = realizable_region(simp, "a12", coplanar=True)
        problems.append(f"coplanar-counterpart variant gives the octahedron: {set(coplanar.vrep) == octa}")
    ok = not problems
    return ok, ("symmetry classes as expected; (1,1,1) residual (0,2,0) in Bloch coordinates; "
                "region = octahedron") if ok else "; ".join(problems)


def c9_grid(factory, skip_fm):
    from .kernels import BACKEND, grid_oracle
    g = grid_oracle(40)
    lp = nc_max(build_scenario(2), (1, 1)).optimum
    arg = g["argmax"]
    model = analytic_mu_family(*(arg[k] for k in ("a", "b", "c", "d", "eps", "gam", "dlt")))
    ok = Fraction(9, 10) <= g["max"] <= lp and not isinstance(model, list)
    return ok, (f"{g['count']} grid points ({BACKEND} kernel), max <X>+<Z> = {fmt(g['max'])} "
                f"<= LP optimum {fmt(lp)}")


def c10_forms(factory, skip_fm):
    rng = random.Random(20240611)
    disagree = identities = 0
    for _ in range(1000):
        den = rng.randint(1, 60)
        # Squares in [0, 1] so roughly half the triples land on each side of the relation.
        t = [Fraction(rng.randint(-den, den), den) * Fraction(rng.randint(0, 7), 7) for _ in range(3)]
        rec = convert_form(*t)
        for view in rec["forms"].values():
            if len(set(view.values())) != 1 or set(view) != set(FORM_KINDS):
                disagree += 1
        for w, tw in zip("xyz", t):
            p = rec["p"][w]
            if not (rec["variance"][w] == 1 - tw * tw == 4 * p * (1 - p)
                    and rec["certainty_sq"][w] == (1 + tw * tw) / 2 == p * p + (1 - p) ** 2):
                identities += 1
    ok = disagree == 0 and identities == 0
    return ok, f"1000 triples: {disagree} form disagreements, {identities} identity failures"


def c11_feasibility(factory, skip_fm):
    ms = [canonical_measurements()[a] for a in ("X", "Z")]
    bad = nc_feasibility(rectangle_quadruple(Fraction(3, 5), Fraction(4, 5)), [RECTANGLE_EQUIVALENCE], ms)
    good = nc_feasibility(rectangle_quadruple(Fraction(1, 2), Fraction(1, 2)), [RECTANGLE_EQUIVALENCE], ms)
    ok = (not bad.feasible and bad.certificate_valid() and good.feasible)
    return ok, (f"(3/5,4/5) quadruple feasible={bad.feasible}, certificate verified={bad.certificate_valid()}; "
                f"(1/2,1/2) quadruple feasible={good.feasible}")


def c12_determinism(factory, skip_fm):
    from .cli import report_document
    a = report_document(factory)
    b = report_document(factory)
    return a == b, f"two report runs: {len(a)} bytes each, identical={a == b}"


CRITERIA = (
    (1, "Noncontextual bound n=2 (exact, 4 sign patterns)", c1_bound_n2, 1.0),
    (2, "Diamond facets agree across FM / LP / four-preparation routes", c2_diamond, None),
    (3, "Noncontextual bound n=3 (64-variable LP, 8 facets / 6 vertices)", c3_octahedron, 30.0),
    (4, "Quantum violations sqrt(2), sqrt(3)", c4_quantum, None),
    (5, "Foil maxima gbit 2/3, stabilizer 1/1", c5_foils, None),
    (6, "Depolarization thresholds", c6_thresholds, None),
    (7, "Saturation family (101 u values)", c7_saturation, None),
    (8, "Orbit classification", c8_orbits, None),
    (9, "Grid oracle (step 1/40) dominated by the LP optimum", c9_grid, 120.0),
    (10, "Equivalence of the four relation forms", c10_forms, None),
    (11, "Feasibility checker with Farkas certificate", c11_feasibility, None),
    (12, "Deterministic report", c12_determinism, None),
)


def run_acceptance(factory: TheoryFactory = make_theory, skip_fm: bool = False,
                   only: set[int] | None = None) -> list[CriterionResult]:
    out = []
    for number, title, fn, budget in CRITERIA:
        if only and number not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn(factory, skip_fm)
        except Exception as exc:  # a crash is a failure of that criterion, not of the suite
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        if budget is not None and dt >= budget:
            ok, detail = False, f"over time budget; {detail}"
        out.append(CriterionResult(number, title, ok, detail, dt, budget))
    return out
