"""Orbit realizability under the rectangle (A1^2) and prism (A1^3) reflection groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .convex import (EQ, LE, Ball, ContractViolation, LinearSystem, Polytope, Row,
                     fm_project, lp_solve, remove_redundant)
from .theories import COORD_NAMES, RepVector, TheorySpec, contains_state

GROUPS = ("a12", "a13")

# Signs of (<X>, <Z>) relative to the queried state for s1..s4.
A12_PATTERN = ((1, 1), (-1, 1), (-1, -1), (1, -1))
# Signs of (<X>, <Y>, <Z>) for s1..s8: X flips on the second half, Y on pairs, Z alternately.
A13_PATTERN = tuple(product((1, -1), repeat=3))
# Each left-hand mixture (1/2 s_i + 1/2 s_j) equals 1/4 (s1 + s4 + s6 + s7).
A13_EQUIVALENCES = ((8, 1), (5, 4), (3, 6), (2, 7))
A13_REFERENCE = (1, 4, 6, 7)


def parse_group(group: str) -> str:
    g = group.lower().replace("_", "").replace("^", "")
    if g in ("a12", "a2"):
        return "a12"
    if g in ("a13", "a3"):
        return "a13"
    raise ContractViolation(f"unknown group {group!r}; expected a12 or a13")


@dataclass(frozen=True)
class OrbitWitness:
    states: tuple[RepVector, ...]
    sign_pattern_check: dict = field(hash=False)
    op_equiv_residual: tuple[RepVector, ...]

    @property
    def valid(self) -> bool:
        ok_signs = all(all(col) for col in self.sign_pattern_check.values())
        ok_res = all(not any(r) for r in self.op_equiv_residual)
        return ok_signs and ok_res

    def to_dict(self) -> dict:
        return {
            "states": [s.to_list() for s in self.states],
            "sign_pattern_check": self.sign_pattern_check,
            "op_equiv_residual": [r.to_list() for r in self.op_equiv_residual],
        }


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of a realizability query: a witness, or which condition failed."""
    witness: OrbitWitness | None
    failed: str | None = None
    residual: RepVector | None = None

    def to_dict(self) -> dict:
        if self.witness is not None:
            return {"realizable": True, "witness": self.witness.to_dict()}
        out = {"realizable": False, "failed_condition": self.failed}
        if self.residual is not None:
            out["residual"] = self.residual.to_list()
        return out


def _sign_table(states, pattern, axes) -> dict:
    ref = states[0]
    table = {}
    for k, axis in enumerate(axes):
        r = ref.coord(axis)
        table[axis] = [s.coord(axis) == sign * r for s, sign in zip(states, (p[k] for p in pattern))]
    return table


def _a12_residual(states) -> RepVector:
    s1, s2, s3, s4 = states
    return (s1 + s3).scale(Fraction(1, 2)) - (s2 + s4).scale(Fraction(1, 2))


def _a12_counterparts(s: RepVector, ys) -> tuple[RepVector, ...]:
    x, z = s.sx, s.sz
    y2, y3, y4 = ys
    return (s, RepVector.state(-x, y2, z), RepVector.state(-x, y3, -z), RepVector.state(x, y4, -z))


def _a12_witness(s: RepVector, ys) -> OrbitWitness:
    states = _a12_counterparts(s, ys)
    return OrbitWitness(states, _sign_table(states, A12_PATTERN, ("X", "Z")),
                        (_a12_residual(states),))


def _y_system(theory: TheorySpec, s: RepVector, with_equality: bool) -> LinearSystem:
    """Constraints on the free y-coordinates (y2, y3, y4) of the counterparts."""
    x, y, z = s.bloch
    rows = []
    for k, (px, pz) in enumerate(((-x, z), (-x, -z), (x, -z))):
        for r in theory.body.hrep.inequalities:
            a = [0, 0, 0]
            a[k] = r.a[1]
            rows.append((a, LE, r.b - r.a[0] * px - r.a[2] * pz))
        for r in theory.body.hrep.equalities:
            a = [0, 0, 0]
            a[k] = r.a[1]
            rows.append((a, EQ, r.b - r.a[0] * px - r.a[2] * pz))
    if with_equality:
        # y + y3 = y2 + y4
        rows.append(([1, -1, 1], EQ, y))
    return LinearSystem.build(("y2", "y3", "y4"), rows)


def a12_analysis(theory: TheorySpec, s: RepVector) -> OrbitResult:
    if not contains_state(theory, s):
        raise ContractViolation("state is not in the theory")
    for a in ("X", "Z"):
        if a not in theory.measurement_subset:
            raise ContractViolation(f"{a} measurement unavailable")
    same = (s.sy,) * 3
    if isinstance(theory.body, Ball) or all(
            theory.body.contains(c.bloch) for c in _a12_counterparts(s, same)):
        return OrbitResult(_a12_witness(s, same))
    full = _y_system(theory, s, True)
    res = lp_solve(full, [0, 0, 0])
    if res.optimal:
        return OrbitResult(_a12_witness(s, res.argument))
    box = _y_system(theory, s, False)
    # Residual in the y-slot: (y + y3 - y2 - y4) / 2, pushed as close to zero as possible.
    expr = [-1, 1, -1]
    lo = lp_solve(box, expr, "min")
    if not lo.optimal:
        return OrbitResult(None, "membership")
    hi = lp_solve(box, expr, "max")
    gap = lo.optimum + s.sy if lo.optimum + s.sy > 0 else hi.optimum + s.sy
    return OrbitResult(None, "rectangle-equality", RepVector(0, 0, gap / 2, 0))


def a12_realizable(theory: TheorySpec, s: RepVector) -> OrbitWitness | None:
    return a12_analysis(theory, s).witness


def a13_orbit(s: RepVector) -> tuple[RepVector, ...]:
    x, y, z = s.bloch
    return tuple(RepVector.state(a * x, b * y, c * z) for a, b, c in A13_PATTERN)


def op_equiv_residuals_3d(states) -> tuple[RepVector, ...]:
    if len(states) != 8:
        raise ContractViolation(f"need 8 states, got {len(states)}")
    s = {i + 1: v for i, v in enumerate(states)}
    ref = s[1] + s[4] + s[6] + s[7]
    return tuple((s[i] + s[j]).scale(Fraction(1, 2)) - ref.scale(Fraction(1, 4))
                 for i, j in A13_EQUIVALENCES)


def verify_op_equiv_3d(states) -> bool:
    return all(not any(r) for r in op_equiv_residuals_3d(states))


def a13_analysis(theory: TheorySpec, s: RepVector, geometric: bool = False) -> OrbitResult:
    if not contains_state(theory, s):
        raise ContractViolation("state is not in the theory")
    if "Y" not in theory.measurement_subset and not geometric:
        raise ContractViolation(
            f"Y unavailable in the {theory.name} theory; request geometric mode")
    states = a13_orbit(s)
    if not all(contains_state(theory, t) for t in states):
        return OrbitResult(None, "membership")
    w = OrbitWitness(states, _sign_table(states, A13_PATTERN, ("X", "Y", "Z")),
                     op_equiv_residuals_3d(states))
    return OrbitResult(w)


def a13_realizable(theory: TheorySpec, s: RepVector, geometric: bool = False) -> OrbitWitness | None:
    return a13_analysis(theory, s, geometric).witness


def analyse(theory: TheorySpec, s: RepVector, group: str, geometric: bool = False) -> OrbitResult:
    group = parse_group(group)
    if group == "a12":
        return a12_analysis(theory, s)
    return a13_analysis(theory, s, geometric)


def has_symmetry(theory: TheorySpec, group: str) -> bool:
    """Every state is orbit-realizable; checked on the vertices for polytopes."""
    group = parse_group(group)
    if isinstance(theory.body, Ball):
        return True
    geometric = group == "a13"
    for v in theory.body.vrep:
        if analyse(theory, RepVector.state(*v), group, geometric).witness is None:
            return False
    return True


def _reflect(row: Row, signs) -> Row:
    return Row(tuple(a * s for a, s in zip(row.a, signs)), row.rel, row.b)


def realizable_region(theory: TheorySpec, group: str, coplanar: bool = False):
    """The set of orbit-realizable states, as a Ball or an H/V-polytope.

    With ``coplanar`` the rectangle counterparts must share the y-coordinate of
    the queried state, which turns the region into an intersection of reflections.
    """
    group = parse_group(group)
    if isinstance(theory.body, Ball):
        return theory.body
    hrep = theory.body.hrep
    if group == "a13" or coplanar:
        pattern = A13_PATTERN if group == "a13" else tuple((a, 1, c) for a, c in A12_PATTERN)
        rows = [_reflect(r, signs) for signs in pattern for r in hrep.rows]
        return Polytope.from_hrep(remove_redundant(LinearSystem(COORD_NAMES, tuple(rows))))
    names = COORD_NAMES + ("y2", "y3", "y4")
    rows = []
    # (sx, sy, sz) itself, then the three counterparts (-x, y2, z), (-x, y3, -z), (x, y4, -z).
    slots = (((1, 0), (1, 1), (1, 2)), ((-1, 0), (1, 3), (1, 2)),
             ((-1, 0), (1, 4), (-1, 2)), ((1, 0), (1, 5), (-1, 2)))
    for slot in slots:
        for r in hrep.rows:
            a = [Fraction(0)] * 6
            for coef, (sign, col) in zip(r.a, slot):
                a[col] += sign * coef
            rows.append(Row(tuple(a), r.rel, r.b))
    rows.append(Row((0, 1, 0, -1, 1, -1), EQ, 0))  # y + y3 - y2 - y4 = 0
    system = LinearSystem(names, tuple(Row(tuple(Fraction(x) for x in r.a), r.rel, Fraction(r.b))
                                       for r in rows))
    return Polytope.from_hrep(fm_project(system, COORD_NAMES))
