"""Polytopes and balls: vertex/facet enumeration, membership, support functions.

Enumeration is brute force over row (or point) subsets, which is exact and
fast enough for the dimension <= 4 bodies this package deals with.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .linalg import affine_rank, dot, nullspace, rank, solve
from .linsys import EQ, LE, ContractViolation, EmptyPolytopeError, LinearSystem, Row, as_fraction
from .lp import Status, lp_solve

Point = tuple[Fraction, ...]


def _point(p) -> Point:
    return tuple(as_fraction(x) for x in p)


def polytope_vertices(hrep: LinearSystem) -> list[Point]:
    """All extreme points of a bounded polyhedron, sorted."""
    d = hrep.dim
    if d > 6:
        raise ContractViolation("vertex enumeration is meant for dimension <= 6")
    for k in range(d):
        e = [0] * d
        e[k] = 1
        for sense in ("max", "min"):
            res = lp_solve(hrep, e, sense)
            if res.status is Status.INFEASIBLE:
                raise EmptyPolytopeError("infeasible system has no vertices")
            if res.status is Status.UNBOUNDED:
                raise ContractViolation("polyhedron is unbounded")
    eqs = list(hrep.equalities)
    ineqs = list(hrep.inequalities)
    need = d - (rank([r.a for r in eqs]) if eqs else 0)
    found = set()
    for subset in combinations(range(len(ineqs)), need):
        rows = eqs + [ineqs[i] for i in subset]
        x = solve([r.a for r in rows], [r.b for r in rows])
        if x is None:
            continue
        x = tuple(x)
        if x not in found and hrep.contains(x):
            found.add(x)
    return sorted(found)


def hull_facets(points: Sequence[Sequence], names: Sequence[str] | None = None) -> LinearSystem:
    """Irredundant H-representation of the convex hull of full-dimensional points."""
    pts = sorted(set(_point(p) for p in points))
    if not pts:
        raise ContractViolation("empty point set")
    d = len(pts[0])
    names = tuple(names) if names else tuple(f"x{i}" for i in range(d))
    if affine_rank(pts) < d:
        raise ContractViolation("hull_facets needs a full-dimensional point set")
    rows = set()
    for subset in combinations(pts, d):
        base = subset[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in subset[1:]]
        ns = nullspace(diffs, d) if diffs else nullspace([], d)
        if len(ns) != 1:
            continue
        normal = ns[0]
        off = dot(normal, base)
        vals = [dot(normal, p) for p in pts]
        if all(v <= off for v in vals):
            rows.add(Row(tuple(normal), LE, off))
        elif all(v >= off for v in vals):
            rows.add(Row(tuple(-x for x in normal), LE, -off))
    return LinearSystem(names, tuple(rows)).sorted()


@dataclass(frozen=True)
class Ball:
    """Euclidean ball; the radius is rational, the center defaults to the origin."""
    radius: Fraction
    dim: int = 3
    center: Point | None = None

    def __post_init__(self):
        object.__setattr__(self, "radius", as_fraction(self.radius))
        if self.radius < 0:
            raise ContractViolation("negative radius")
        c = self.center if self.center is not None else (Fraction(0),) * self.dim
        object.__setattr__(self, "center", _point(c))

    def contains(self, p: Sequence) -> bool:
        """Exact membership; coordinates may be Fractions or Surds."""
        p = tuple(x if hasattr(x, "sign") else as_fraction(x) for x in p)
        d = [x - c for x, c in zip(p, self.center)]
        return dot(d, d) <= self.radius ** 2

    def project(self, axes: Sequence[int]) -> "Ball":
        return Ball(self.radius, len(axes), tuple(self.center[i] for i in axes))


@dataclass(frozen=True)
class Polytope:
    hrep: LinearSystem | None = None
    vrep: tuple[Point, ...] | None = None

    def __post_init__(self):
        if self.vrep is not None:
            object.__setattr__(self, "vrep", tuple(sorted(set(_point(p) for p in self.vrep))))

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence], names: Sequence[str] | None = None) -> "Polytope":
        """V-representation plus the H-representation computed from it."""
        pts = tuple(_point(p) for p in points)
        return cls(hull_facets(pts, names), pts)

    @classmethod
    def from_hrep(cls, hrep: LinearSystem) -> "Polytope":
        return cls(hrep, tuple(polytope_vertices(hrep)))

    @property
    def dim(self) -> int:
        if self.vrep:
            return len(self.vrep[0])
        if self.hrep is not None:
            return self.hrep.dim
        raise ContractViolation("polytope has neither representation")

    def contains(self, p: Sequence) -> bool:
        p = _point(p)
        if self.hrep is not None:
            return self.hrep.contains(p)
        if self.vrep is not None:
            return _in_hull(self.vrep, p)
        raise ContractViolation("polytope has neither representation")

    def project(self, axes: Sequence[int]) -> "Polytope":
        """Coordinate projection (V-representation only)."""
        if self.vrep is None:
            raise ContractViolation("projection needs a V-representation")
        return Polytope(vrep=tuple(tuple(v[i] for i in axes) for v in self.vrep))

    def argmax(self, direction: Sequence) -> Point:
        d = _point(direction)
        if self.vrep:
            return max(self.vrep, key=lambda v: (dot(d, v), v))
        res = lp_solve(self.hrep, d, "max")
        if not res.optimal:
            raise ContractViolation(f"support LP ended with status {res.status.value}")
        return res.argument

    def check_consistent(self) -> bool:
        """Every vertex satisfies the facets and every facet touches a vertex."""
        if self.hrep is None or self.vrep is None:
            return True
        if not all(self.hrep.contains(v) for v in self.vrep):
            return False
        return all(any(r.evaluate(v) == r.b for v in self.vrep) for r in self.hrep.inequalities)


def _in_hull(points: Sequence[Point], p: Point) -> bool:
    names = [f"w{i}" for i in range(len(points))]
    rows = []
    for k in range(len(p)):
        rows.append(([q[k] for q in points], EQ, p[k]))
    rows.append(([1] * len(points), EQ, 1))
    for i in range(len(points)):
        a = [0] * len(points)
        a[i] = -1
        rows.append((a, LE, 0))
    return lp_solve(LinearSystem.build(names, rows), [0] * len(points)).optimal


def support_function(body: Polytope | Ball, direction: Sequence):
    """max over the body of direction . point.

    Polytopes give a Fraction; balls give a Surd ``d.c + r*sqrt(d.d)``.
    """
    d = _point(direction)
    if not any(d):
        raise ContractViolation("direction must be nonzero")
    if isinstance(body, Ball):
        from ..surd import Surd  # surd depends on this package; import late
        if len(d) != len(body.center):
            raise ContractViolation("direction dimension mismatch")
        return dot(d, body.center) + body.radius * Surd.sqrt(dot(d, d))
    if body.vrep:
        if len(d) != len(body.vrep[0]):
            raise ContractViolation("direction dimension mismatch")
        return max(dot(d, v) for v in body.vrep)
    if body.hrep is not None:
        res = lp_solve(body.hrep, d, "max")
        if not res.optimal:
            raise ContractViolation(f"support LP ended with status {res.status.value}")
        return res.optimum
    raise ContractViolation("polytope has neither representation")


def box(bounds: Sequence[tuple], names: Sequence[str] | None = None) -> LinearSystem:
    """Axis-aligned box from (lo, hi) pairs."""
    d = len(bounds)
    names = names or [f"x{i}" for i in range(d)]
    rows = []
    for k, (lo, hi) in enumerate(bounds):
        e = [0] * d
        e[k] = 1
        rows.append((e, LE, hi))
        rows.append(([-x for x in e], LE, -as_fraction(lo)))
    return LinearSystem.build(names, rows)


def sign_vectors(n: int):
    """All +-1 vectors of length n, in lexicographic order with +1 first."""
    return [tuple(Fraction(s) for s in signs) for signs in product((1, -1), repeat=n)]
