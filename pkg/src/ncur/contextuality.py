"""Ontic-model constraint systems and the noncontextual predictability bounds.

The bounds are derived three ways: an exact LP over the distributions
mu_i(lambda), Fourier-Motzkin projection of the same system onto the
expectation values, and substitution into the eight known inequalities for
four preparations with one operational equivalence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .convex import (EQ, LE, Ball, ContractViolation, LinearSystem, Row, farkas_certificate,
                     fm_project, lp_solve, polytope_vertices, remove_redundant, sign_vectors)
from .convex.linalg import affine_rank
from .convex.linsys import as_fraction, fmt
from .orbit import A12_PATTERN, A13_EQUIVALENCES, A13_PATTERN, A13_REFERENCE, parse_group, realizable_region
from .surd import Surd, exact_json
from .theories import AXIS_INDEX, Measurement, RepVector, TheorySpec, make_theory, probability

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class OnticScenario:
    n_measurements: int
    labels: tuple[str, ...]
    ontic: tuple[tuple[int, ...], ...]  # outcome assignment per ontic state, ordered as labels
    response: dict = field(hash=False)  # (label, outcome) -> 0/1 tuple

    @property
    def n_ontic(self) -> int:
        return len(self.ontic)

    @property
    def n_preps(self) -> int:
        return 2 ** self.n_measurements

    @property
    def prep_signs(self) -> tuple[tuple[int, ...], ...]:
        return A12_PATTERN if self.n_measurements == 2 else A13_PATTERN

    @property
    def equivalences(self) -> list[tuple[dict[int, Fraction], dict[int, Fraction]]]:
        """Mixture equalities between preparations (1-based indices)."""
        if self.n_measurements == 2:
            return [({1: HALF, 3: HALF}, {2: HALF, 4: HALF})]
        ref = {i: QUARTER for i in A13_REFERENCE}
        return [({i: HALF, j: HALF} if i != j else {i: Fraction(1)}, dict(ref))
                for i, j in A13_EQUIVALENCES]

    def observable(self, label: str) -> tuple[int, ...]:
        return tuple(p - m for p, m in zip(self.response[(label, 1)], self.response[(label, -1)]))

    def variables(self) -> tuple[str, ...]:
        return tuple(f"mu{i}_{l}" for i in range(1, self.n_preps + 1) for l in range(self.n_ontic))

    def var_index(self, prep: int, lam: int) -> int:
        return (prep - 1) * self.n_ontic + lam


def build_scenario(n: int) -> OnticScenario:
    """Ontic space of all deterministic outcome assignments to n binary measurements."""
    if n == 2:
        labels = ("X", "Z")
        # Index order fixed so that xi(+1|X) = (0,1,0,1) and xi(+1|Z) = (1,1,0,0).
        ontic = ((-1, 1), (1, 1), (-1, -1), (1, -1))
    elif n == 3:
        labels = ("X", "Y", "Z")
        ontic = tuple(product((1, -1), repeat=3))
    else:
        raise ContractViolation(f"scenario needs n in {{2, 3}}, got {n}")
    response = {}
    for k, w in enumerate(labels):
        for y in (1, -1):
            response[(w, y)] = tuple(int(lam[k] == y) for lam in ontic)
    return OnticScenario(n, labels, ontic, response)


def expectation_coeffs(scenario: OnticScenario, label: str, prep: int = 1) -> list[Fraction]:
    """Coefficient vector of <label> evaluated on mu_prep, over all system variables."""
    coeffs = [Fraction(0)] * (scenario.n_preps * scenario.n_ontic)
    for lam, v in enumerate(scenario.observable(label)):
        coeffs[scenario.var_index(prep, lam)] = Fraction(v)
    return coeffs


def build_nc_system(scenario: OnticScenario) -> LinearSystem:
    """Nonnegativity, normalization, equal-predictability and noncontextuality rows."""
    names = scenario.variables()
    nv = len(names)
    rows = []
    for i in range(1, scenario.n_preps + 1):
        for lam in range(scenario.n_ontic):
            a = [0] * nv
            a[scenario.var_index(i, lam)] = -1
            rows.append((a, LE, 0))
        a = [0] * nv
        for lam in range(scenario.n_ontic):
            a[scenario.var_index(i, lam)] = 1
        rows.append((a, EQ, 1))
    # P(sign_i(W) | W, mu_i) = P(+1 | W, mu_1) for every preparation i > 1.
    for k, w in enumerate(scenario.labels):
        ref = scenario.response[(w, 1)]
        for i, signs in enumerate(scenario.prep_signs[1:], start=2):
            resp = scenario.response[(w, signs[k])]
            a = [0] * nv
            for lam in range(scenario.n_ontic):
                a[scenario.var_index(i, lam)] += resp[lam]
                a[scenario.var_index(1, lam)] -= ref[lam]
            rows.append((a, EQ, 0))
    for left, right in scenario.equivalences:
        for lam in range(scenario.n_ontic):
            a = [Fraction(0)] * nv
            for i, wgt in left.items():
                a[scenario.var_index(i, lam)] += wgt
            for i, wgt in right.items():
                a[scenario.var_index(i, lam)] -= wgt
            rows.append((a, EQ, 0))
    return LinearSystem.build(names, rows)


def expectation_names(scenario: OnticScenario) -> tuple[str, ...]:
    return tuple(f"<{w}>" for w in scenario.labels)


def with_expectation_vars(system: LinearSystem, scenario: OnticScenario) -> LinearSystem:
    """Append variables <W> tied to mu_1 by equality rows."""
    names = system.variables + expectation_names(scenario)
    m = len(scenario.labels)
    rows = [Row(r.a + (Fraction(0),) * m, r.rel, r.b) for r in system.rows]
    for k, w in enumerate(scenario.labels):
        tail = [Fraction(0)] * m
        tail[k] = Fraction(-1)
        rows.append(Row(tuple(expectation_coeffs(scenario, w)) + tuple(tail), EQ, Fraction(0)))
    return LinearSystem(names, tuple(rows))


@dataclass(frozen=True)
class OnticModel:
    scenario: OnticScenario
    mus: tuple[tuple[Fraction, ...], ...]

    def expectation(self, label: str, prep: int = 1) -> Fraction:
        obs = self.scenario.observable(label)
        return sum((o * m for o, m in zip(obs, self.mus[prep - 1])), Fraction(0))

    def probability(self, label: str, outcome: int, prep: int) -> Fraction:
        resp = self.scenario.response[(label, outcome)]
        return sum((r * m for r, m in zip(resp, self.mus[prep - 1])), Fraction(0))

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for mu in self.mus for x in mu)

    def violations(self) -> list[str]:
        out = []
        for i, mu in enumerate(self.mus, start=1):
            if any(x < 0 or x > 1 for x in mu):
                out.append(f"mu{i} has an entry outside [0, 1]")
            if sum(mu) != 1:
                out.append(f"mu{i} sums to {fmt(sum(mu))}, not 1")
        return out

    def satisfies_nc_system(self) -> bool:
        return build_nc_system(self.scenario).contains(self.flat())

    def to_dict(self) -> dict:
        return {"mus": [[fmt(x) for x in mu] for mu in self.mus],
                "expectations": {w: fmt(self.expectation(w)) for w in self.scenario.labels}}


def _model_from_point(scenario: OnticScenario, x: Sequence[Fraction]) -> OnticModel:
    k = scenario.n_ontic
    return OnticModel(scenario, tuple(tuple(x[i * k:(i + 1) * k]) for i in range(scenario.n_preps)))


@dataclass(frozen=True)
class BoundReport:
    optimum: Fraction
    model: OnticModel | None
    facets: LinearSystem
    derivation_route: str
    vertices: tuple[tuple[Fraction, ...], ...] = ()
    details: dict = field(default_factory=dict, hash=False)

    def to_dict(self) -> dict:
        out = {
            "route": self.derivation_route,
            "optimum": fmt(self.optimum),
            "facets": self.facets.to_dict(),
            "vertices": [[fmt(x) for x in v] for v in self.vertices],
        }
        if self.model is not None:
            out["model"] = self.model.to_dict()
        if self.details:
            out["details"] = self.details
        return out


def _signed_objective(scenario: OnticScenario, signs: Sequence[int]) -> list[Fraction]:
    total = [Fraction(0)] * (scenario.n_preps * scenario.n_ontic)
    for s, w in zip(signs, scenario.labels):
        for k, c in enumerate(expectation_coeffs(scenario, w)):
            total[k] += s * c
    return total


def nc_max(scenario: OnticScenario, signs: Sequence[int], system: LinearSystem | None = None) -> BoundReport:
    """LP maximum of sum_W sign_W <W> over the noncontextual ontic models."""
    if len(signs) != scenario.n_measurements or any(s not in (1, -1) for s in signs):
        raise ContractViolation(f"need {scenario.n_measurements} signs in {{+1, -1}}")
    system = system or build_nc_system(scenario)
    res = lp_solve(system, _signed_objective(scenario, signs), "max")
    if not res.optimal:
        raise RuntimeError(f"noncontextual LP ended with status {res.status.value}")
    facet = LinearSystem.build(expectation_names(scenario), [(list(signs), LE, res.optimum)])
    return BoundReport(res.optimum, _model_from_point(scenario, res.argument), facet, "analytic-LP")


def _expectations_of(scenario: OnticScenario, x) -> tuple[Fraction, ...]:
    return tuple(_model_from_point(scenario, x).expectation(w) for w in scenario.labels)


def _lp_facets(scenario: OnticScenario) -> BoundReport:
    system = build_nc_system(scenario)
    m = scenario.n_measurements
    names = expectation_names(scenario)
    facet_rows = []
    certs = []
    best = None
    for signs in sign_vectors(m):
        rep = nc_max(scenario, signs, system)
        if best is None or rep.optimum > best.optimum:
            best = rep
        obj = _signed_objective(scenario, signs)
        face = system.with_rows([Row(tuple(obj), EQ, rep.optimum)])
        # Tight points: push each coordinate toward the facet's sign, within the face.
        pts = {_expectations_of(scenario, rep.model.flat())}
        senses = [("max", "min") if s > 0 else ("min", "max") for s in signs]
        for attempt in (0, 1):
            for w, sense in zip(scenario.labels, senses):
                r = lp_solve(face, expectation_coeffs(scenario, w), sense[attempt])
                pts.add(_expectations_of(scenario, r.argument))
            if affine_rank(sorted(pts)) >= m - 1:
                break
        pts = sorted(pts)
        facet_rows.append((list(signs), LE, rep.optimum))
        certs.append({"signs": [int(s) for s in signs], "max": fmt(rep.optimum),
                      "tight_points": [[fmt(x) for x in p] for p in pts],
                      "affine_rank": affine_rank(pts),
                      "is_facet": affine_rank(pts) == m - 1})
    facets = LinearSystem.build(names, facet_rows).sorted()
    vertices = polytope_vertices(facets)
    # Every vertex of the candidate polytope must be attained by some model.
    attained = []
    ext = with_expectation_vars(system, scenario)
    for v in vertices:
        fixed = ext.with_rows(
            [Row(tuple([Fraction(0)] * system.dim + [Fraction(int(j == k)) for j in range(m)]), EQ, v[k])
             for k in range(m)])
        attained.append(lp_solve(fixed, [0] * fixed.dim).optimal)
    details = {"facet_certificates": certs, "vertices_attained": all(attained),
               "complete": all(c["is_facet"] for c in certs) and all(attained)}
    return BoundReport(best.optimum, best.model, facets, "analytic-LP", tuple(vertices), details)


def _fm_facets(scenario: OnticScenario) -> BoundReport:
    if scenario.n_measurements != 2:
        raise ContractViolation("Fourier-Motzkin route is only supported for n = 2")
    ext = with_expectation_vars(build_nc_system(scenario), scenario)
    facets = fm_project(ext, expectation_names(scenario)).sorted()
    vertices = polytope_vertices(facets)
    opt = max(sum(abs(x) for x in v) for v in vertices)
    return BoundReport(opt, None, facets, "FM", tuple(vertices))


def nc_polytope(scenario: OnticScenario, route: str = "lp") -> BoundReport:
    """Region of noncontextually realizable expectation values, with facets and vertices."""
    route = route.lower()
    if route in ("lp", "lp-facets"):
        return _lp_facets(scenario)
    if route == "fm":
        return _fm_facets(scenario)
    if route == "appendixb":
        if scenario.n_measurements != 2:
            raise ContractViolation("the four-preparation inequalities only cover n = 2")
        facets = appendixB_reduce()
        vertices = polytope_vertices(facets)
        opt = max(sum(abs(x) for x in v) for v in vertices)
        return BoundReport(opt, None, facets, "appendixB-reduction", tuple(vertices))
    raise ContractViolation(f"unknown route {route!r}; expected lp, fm or appendixb")


def analytic_mu_family(a, b, c, d, eps, gam, dlt) -> OnticModel | list[str]:
    """The four distributions of the analytic parameterization, or the violated constraints."""
    a, b, c, d, eps, gam, dlt = (as_fraction(x) for x in (a, b, c, d, eps, gam, dlt))
    mus = (
        (a, b, c, d),
        (b + eps, a - eps, d - eps, c + eps),
        (d - gam, c + gam, b + gam, a - gam),
        (c + dlt, d - dlt, a - dlt, b + dlt),
    )
    bad = []
    for i, mu in enumerate(mus, start=1):
        for k, x in enumerate(mu):
            if not 0 <= x <= 1:
                bad.append(f"mu{i}[{k}] = {fmt(x)} outside [0, 1]")
    if a + b + c + d != 1:
        bad.append(f"normalization: a+b+c+d = {fmt(a + b + c + d)} != 1")
    if a + d != HALF + (eps + gam + dlt) / 2:
        bad.append(f"noncontextuality: a+d = {fmt(a + d)} != 1/2 + (eps+gam+dlt)/2 = "
                   f"{fmt(HALF + (eps + gam + dlt) / 2)}")
    return bad if bad else OnticModel(build_scenario(2), mus)


def saturating_model(u) -> OnticModel:
    """Model on the face <X> + <Z> = 1 with <Z> = 1/2 + 2u."""
    u = as_fraction(u)
    if not -QUARTER <= u <= QUARTER:
        raise ContractViolation(f"u must lie in [-1/4, 1/4], got {fmt(u)}")
    model = analytic_mu_family(QUARTER + u, HALF, 0, QUARTER - u, 0, 0, 0)
    if not isinstance(model, OnticModel):
        raise RuntimeError(f"saturating family left its valid range: {model}")
    return model


def saturation_grid(count: int = 101) -> list[tuple[Fraction, OnticModel]]:
    """Saturating models at ``count`` evenly spaced u in [-1/4, 1/4]."""
    if count < 2:
        raise ContractViolation("need at least two grid points")
    return [(u, saturating_model(u))
            for u in (-QUARTER + Fraction(k, 2 * (count - 1)) for k in range(count))]


# The eight inequalities sum_{(t, s)} coef * P(+1 | t, s) <= 1 for four preparations,
# t = 1 (Z) or 2 (X); the sixth uses P_12 (not P_21).
APPENDIX_B = (
    {(1, 2): 1, (2, 2): 1, (2, 3): -1, (1, 4): -1},
    {(1, 2): 1, (2, 2): 1, (1, 3): -1, (2, 4): -1},
    {(2, 2): 1, (1, 3): 1, (1, 2): -1, (2, 4): -1},
    {(1, 2): 1, (2, 3): 1, (2, 2): -1, (1, 4): -1},
    {(2, 2): 1, (1, 4): 1, (1, 2): -1, (2, 3): -1},
    {(2, 3): 1, (1, 4): 1, (1, 2): -1, (2, 2): -1},
    {(1, 2): 1, (2, 4): 1, (2, 2): -1, (1, 3): -1},
    {(1, 3): 1, (2, 4): 1, (1, 2): -1, (2, 2): -1},
)
_SETTING = {1: "Z", 2: "X"}


def _prob_affine(t: int, s: int) -> tuple[Fraction, Fraction, Fraction]:
    """P(+1|t, s) as (coef of <X>_1, coef of <Z>_1, constant) under the rectangle signs."""
    label = _SETTING[t]
    sx, sz = A12_PATTERN[s - 1]
    sign = sx if label == "X" else sz
    cx = HALF * sign if label == "X" else Fraction(0)
    cz = HALF * sign if label == "Z" else Fraction(0)
    return cx, cz, HALF


def substitute_inequality(coeffs: dict) -> Row:
    """One inequality rewritten over (<X>, <Z>) of the first preparation."""
    ax = az = const = Fraction(0)
    for (t, s), c in coeffs.items():
        px, pz, p0 = _prob_affine(t, s)
        ax += c * px
        az += c * pz
        const += c * p0
    return Row((ax, az), LE, 1 - const)


def appendixB_reduce() -> LinearSystem:
    """Substitute expectation values into the eight inequalities and simplify."""
    rows = [substitute_inequality(c) for c in APPENDIX_B]
    for t in (1, 2):
        for s in (1, 2, 3, 4):
            px, pz, p0 = _prob_affine(t, s)
            rows.append(Row((px, pz), LE, 1 - p0))
            rows.append(Row((-px, -pz), LE, p0))
    system = LinearSystem(("<X>", "<Z>"), tuple(rows))
    return remove_redundant(system).sorted()


def _group_axes(group: str) -> tuple[str, ...]:
    return ("X", "Z") if parse_group(group) == "a12" else ("X", "Y", "Z")


def violation_report(theory: TheorySpec, group: str) -> dict:
    """Maximum of sum_W |<W>| over the orbit-realizable states, and the verdict."""
    group = parse_group(group)
    axes = _group_axes(group)
    region = realizable_region(theory, group)
    m = len(axes)
    idx = [AXIS_INDEX[a] for a in axes]
    if isinstance(region, Ball):
        value = region.radius * Surd.sqrt(m)
        coord = region.radius * Surd(0, Fraction(1, m), m)
        full = [Fraction(0)] * 3
        for i in idx:
            full[i] = coord
        witness = RepVector.state(*full)
        region_kind = "ball"
    else:
        best = None
        for signs in sign_vectors(m):
            for v in region.vrep:
                val = sum((s * v[i] for s, i in zip(signs, idx)), Fraction(0))
                if best is None or val > best[0]:
                    best = (val, v)
        value, v = best
        witness = RepVector.state(*v)
        region_kind = "polytope"
    if isinstance(value, Surd) and value.is_rational:
        value = value.a
    if value > 1:
        verdict = "contextual"
    elif value == 1:
        verdict = "saturates"
    else:
        verdict = "noncontextual-compatible"
    return {
        "theory": theory.label,
        "group": group,
        "region": region_kind,
        "region_vertices": None if region_kind == "ball" else len(region.vrep),
        "geometric_only": any(a not in theory.measurement_subset for a in axes),
        "max_value": value,
        "witness_state": witness,
        "verdict": verdict,
    }


def report_json(rep: dict) -> dict:
    out = dict(rep)
    out["max_value"] = exact_json(rep["max_value"])
    out["max_value_float"] = float(rep["max_value"])
    out["witness_state"] = rep["witness_state"].to_list()
    return out


def depolarization_threshold(group: str) -> Surd:
    """Smallest eta with (1 - eta) sqrt(m) <= 1, i.e. 1 - 1/sqrt(m)."""
    m = len(_group_axes(group))
    return Surd(1, Fraction(-1, m), m)


def threshold_brackets(group: str, denominator: int = 1000) -> tuple[Fraction, Fraction]:
    """Rationals just below and just above the threshold, on a 1/denominator grid."""
    eta = depolarization_threshold(group)
    lo = Fraction(math.floor(float(eta) * denominator), denominator)
    while lo >= eta:
        lo -= Fraction(1, denominator)
    hi = lo + Fraction(1, denominator)
    while hi <= eta:
        hi += Fraction(1, denominator)
    return lo, hi


def verify_threshold(group: str, denominator: int = 1000) -> dict:
    lo, hi = threshold_brackets(group, denominator)
    below = violation_report(make_theory("depolarized", lo), group)
    above = violation_report(make_theory("depolarized", hi), group)
    return {"threshold": depolarization_threshold(group), "below": lo, "above": hi,
            "violates_below": below["verdict"] == "contextual",
            "satisfies_above": above["verdict"] != "contextual"}


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    system: LinearSystem
    mus: tuple[tuple[Fraction, ...], ...] | None = None
    certificate: object = None

    def certificate_valid(self) -> bool:
        return self.certificate is not None and self.certificate.verify(self.system)


def nc_feasibility(prep_vectors: Sequence[RepVector],
                   equivalences: Sequence[tuple[dict, dict]],
                   measurements: Sequence[Measurement]) -> FeasibilityResult:
    """Is there a preparation-noncontextual outcome-deterministic model for this data?

    ``equivalences`` pairs two mixtures {prep index (0-based): weight}; each side
    must be a probability distribution and the mixed vectors must coincide.
    """
    preps = list(prep_vectors)
    for left, right in equivalences:
        for side in (left, right):
            ws = [as_fraction(w) for w in side.values()]
            if any(w < 0 for w in ws) or sum(ws) != 1:
                raise ContractViolation("equivalence weights must form a probability distribution")
            if any(not 0 <= i < len(preps) for i in side):
                raise ContractViolation("equivalence refers to an unknown preparation")
        lhs = [sum((as_fraction(w) * preps[i].bloch[k] for i, w in left.items()), Fraction(0)) for k in range(3)]
        rhs = [sum((as_fraction(w) * preps[i].bloch[k] for i, w in right.items()), Fraction(0)) for k in range(3)]
        if lhs != rhs:
            raise ContractViolation("mixtures in an equivalence are not operationally equivalent")
    nm = len(measurements)
    ontic = list(product((1, -1), repeat=nm))
    k = len(ontic)
    names = [f"mu{i + 1}_{l}" for i in range(len(preps)) for l in range(k)]
    nv = len(names)
    rows = []
    for i, s in enumerate(preps):
        for l in range(k):
            a = [0] * nv
            a[i * k + l] = -1
            rows.append((a, LE, 0))
        a = [0] * nv
        for l in range(k):
            a[i * k + l] = 1
        rows.append((a, EQ, 1))
        for j, meas in enumerate(measurements):
            a = [0] * nv
            for l, lam in enumerate(ontic):
                if lam[j] == 1:
                    a[i * k + l] = 1
            rows.append((a, EQ, probability(meas.plus, s)))
    for left, right in equivalences:
        for l in range(k):
            a = [Fraction(0)] * nv
            for i, w in left.items():
                a[i * k + l] += as_fraction(w)
            for i, w in right.items():
                a[i * k + l] -= as_fraction(w)
            rows.append((a, EQ, 0))
    system = LinearSystem.build(names, rows)
    res = lp_solve(system, [0] * nv)
    if res.optimal:
        x = res.argument
        mus = tuple(tuple(x[i * k:(i + 1) * k]) for i in range(len(preps)))
        return FeasibilityResult(True, system, mus)
    return FeasibilityResult(False, system, certificate=farkas_certificate(system))


def rectangle_quadruple(x, z, y=0) -> list[RepVector]:
    """The four states (+-x, y, +-z) in the order s1..s4 used for the rectangle."""
    return [RepVector.state(sx * as_fraction(x), y, sz * as_fraction(z)) for sx, sz in A12_PATTERN]


RECTANGLE_EQUIVALENCE = ({0: HALF, 2: HALF}, {1: HALF, 3: HALF})
