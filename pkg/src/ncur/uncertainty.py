"""Predictabilities, uncertainty-relation boundaries and the equivalent relation forms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convex import Ball, ContractViolation, sign_vectors, support_function
from .convex.linsys import as_fraction
from .surd import Surd
from .theories import AXIS_INDEX, Measurement, Number, RepVector, TheorySpec, expectation

FORM_KINDS = ("expectation", "variance", "certainty", "probability-shift")


def predictability(s: RepVector, m: Measurement) -> Number:
    return abs(expectation(s, m))


def parse_axes(axes) -> tuple[str, ...]:
    if isinstance(axes, str):
        axes = tuple(axes.upper())
    axes = tuple(a.upper() for a in axes)
    if axes not in (("X", "Z"), ("X", "Y", "Z")):
        raise ContractViolation(f"axes must be xz or xyz, got {''.join(axes).lower()}")
    return axes


def _check_axes(theory: TheorySpec, axes: tuple[str, ...], geometric: bool) -> None:
    missing = [a for a in axes if a not in theory.measurement_subset]
    if missing and not geometric:
        raise ContractViolation(
            f"{', '.join(missing)} unavailable in the {theory.name} theory "
            "(request geometric mode to compare shapes only)")


def projected_body(theory: TheorySpec, axes: Sequence[str]):
    idx = [AXIS_INDEX[a] for a in axes]
    return theory.body.project(idx)


def projected_support(theory: TheorySpec, axes, direction: Sequence) -> Number:
    """Support value of the theory's state space projected onto ``axes``."""
    axes = parse_axes(axes)
    value = support_function(projected_body(theory, axes), direction)
    return value.a if isinstance(value, Surd) and value.is_rational else value


def _rational_tan_half(theta: float) -> Fraction:
    return Fraction(math.tan(theta / 2)).limit_denominator(4096)


def circle_directions(n: int) -> list[tuple[Fraction, Fraction]]:
    """n exact rational unit vectors, roughly evenly spaced from angle 0.

    Points come from the rational parametrization ((1-t^2), 2t)/(1+t^2),
    so every direction has a Pythagorean-triple form.
    """
    out = []
    for k in range(n):
        if (4 * k) % n == 0:
            q = (4 * k) // n
            out.append(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
                        (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1)))[q])
            continue
        theta = 2 * math.pi * k / n
        if theta > math.pi:
            theta -= 2 * math.pi
        t = _rational_tan_half(theta)
        den = 1 + t * t
        out.append(((1 - t * t) / den, 2 * t / den))
    return out


def sphere_directions(n: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """n exact rational unit vectors: the six axes first, then a Fibonacci spiral."""
    axes = []
    for k in range(3):
        for s in (1, -1):
            e = [Fraction(0)] * 3
            e[k] = Fraction(s)
            axes.append(tuple(e))
    out = axes[:n]
    m = n - len(out)
    golden = math.pi * (3 - math.sqrt(5))
    for i in range(m):
        z = 1 - 2 * (i + 0.5) / m
        r = math.sqrt(max(0.0, 1 - z * z))
        x, y = r * math.cos(golden * i), r * math.sin(golden * i)
        # Inverse stereographic projection keeps the point exactly on the sphere.
        u = Fraction(x / (1 + z)).limit_denominator(4096)
        v = Fraction(y / (1 + z)).limit_denominator(4096)
        den = 1 + u * u + v * v
        out.append((2 * u / den, 2 * v / den, (1 - u * u - v * v) / den))
    return out


@dataclass(frozen=True)
class BoundaryPoint:
    direction: tuple[Fraction, ...]
    support: Number
    point: tuple[Number, ...]


def ur_boundary(theory: TheorySpec, axes, n: int, geometric: bool = False) -> list[BoundaryPoint]:
    """Support values of the projected state space along n rational unit directions."""
    axes = parse_axes(axes)
    if n < 4:
        raise ContractViolation("need at least 4 sample directions")
    _check_axes(theory, axes, geometric)
    body = projected_body(theory, axes)
    dirs = circle_directions(n) if len(axes) == 2 else sphere_directions(n)
    out = []
    for d in dirs:
        h = support_function(body, d)
        if isinstance(body, Ball):
            # d is a unit vector, so the touching point is r*d exactly.
            point = tuple(body.radius * x for x in d)
            h = h.a if h.is_rational else h
        else:
            point = body.argmax(d)
        out.append(BoundaryPoint(tuple(d), h, tuple(point)))
    return out


@dataclass(frozen=True)
class URForm:
    """An uncertainty relation in one of four equivalent forms.

    expectation: sum_w f(t_w) <= bound with f = |t| ("abs"), t^2 ("sq") or max |t_w| ("max")
    variance: sum_w (1 - t_w^2) >= bound
    certainty: sum_w C_w^2 <= bound, C_w^2 = p_w^2 + (1 - p_w)^2
    probability-shift: sum_w (p_w - 1/2)^2 <= bound
    """
    kind: str
    axes: tuple[str, ...]
    bound: Fraction
    norm: str = "sq"

    def __post_init__(self):
        if self.kind not in FORM_KINDS:
            raise ContractViolation(f"unknown relation kind {self.kind!r}")
        if self.norm not in ("abs", "sq", "max"):
            raise ContractViolation(f"unknown norm {self.norm!r}")
        if self.kind != "expectation" and self.norm != "sq":
            raise ContractViolation("only the expectation form supports abs/max norms")
        object.__setattr__(self, "axes", parse_axes(self.axes))
        object.__setattr__(self, "bound", as_fraction(self.bound))

    def as_expectation(self) -> "URForm":
        """Equivalent expectation-kind relation over sum of squares."""
        m = len(self.axes)
        if self.kind == "expectation":
            return self
        if self.kind == "variance":
            b = m - self.bound
        elif self.kind == "certainty":
            b = 2 * self.bound - m
        else:
            b = 4 * self.bound
        return URForm("expectation", self.axes, b, "sq")

    def holds(self, t: dict[str, Number]) -> bool:
        """Evaluate the relation directly in its own variables."""
        vals = [t[a] for a in self.axes]
        if self.kind == "expectation":
            if self.norm == "abs":
                return sum((abs(v) for v in vals), Fraction(0)) <= self.bound
            if self.norm == "max":
                return max(abs(v) for v in vals) <= self.bound
            return sum((v * v for v in vals), Fraction(0)) <= self.bound
        ps = [(1 + v) / 2 for v in vals]
        if self.kind == "variance":
            return sum((4 * p * (1 - p) for p in ps), Fraction(0)) >= self.bound
        if self.kind == "certainty":
            return sum((p * p + (1 - p) * (1 - p) for p in ps), Fraction(0)) <= self.bound
        return sum(((p - Fraction(1, 2)) ** 2 for p in ps), Fraction(0)) <= self.bound


@dataclass(frozen=True)
class URCheck:
    satisfied: bool
    max_value: Number
    witness: RepVector


def _embed(axes: Sequence[str], coords: Sequence[Number]) -> RepVector:
    full: list[Number] = [Fraction(0)] * 3
    for a, c in zip(axes, coords):
        full[AXIS_INDEX[a]] = c
    return RepVector.state(*full)


def _max_lhs(theory: TheorySpec, rel: URForm):
    axes = rel.axes
    m = len(axes)
    body = projected_body(theory, axes)
    if rel.norm == "abs":
        best = None
        for sigma in sign_vectors(m):
            h = support_function(body, sigma)
            if best is None or h > best[0]:
                best = (h, sigma)
        h, sigma = best
        if isinstance(body, Ball):
            scale = body.radius * Surd(0, Fraction(1, m), m)  # r / sqrt(m)
            pt = tuple(scale * s for s in sigma)
        else:
            pt = body.argmax(sigma)
        return h, pt
    if rel.norm == "max":
        best = None
        for k in range(m):
            for s in (1, -1):
                e = [0] * m
                e[k] = s
                h = support_function(body, e)
                if best is None or h > best[0]:
                    best = (h, e)
        h, e = best
        pt = tuple(body.radius * x for x in e) if isinstance(body, Ball) else body.argmax(e)
        return h, pt
    if isinstance(body, Ball):
        pt = (body.radius,) + (Fraction(0),) * (m - 1)
        return body.radius ** 2, pt
    v = max(body.vrep, key=lambda p: (sum(x * x for x in p), p))
    return sum(x * x for x in v), v


def ur_satisfied(theory: TheorySpec, relation: URForm, geometric: bool = False) -> URCheck:
    """Does every state of the theory satisfy the relation? Reports the worst state."""
    _check_axes(theory, relation.axes, geometric)
    rel = relation.as_expectation()
    value, pt = _max_lhs(theory, rel)
    if isinstance(value, Surd) and value.is_rational:
        value = value.a
    return URCheck(value <= rel.bound, value, _embed(rel.axes, pt))


def _check_t(ts: Sequence[Number]) -> None:
    for t in ts:
        if abs(t) > 1:
            raise ContractViolation(f"expectation value {t} outside [-1, 1]")


def convert_form(t_x, t_y, t_z) -> dict:
    """All derived views of three expectation values, plus the four relation forms."""
    ts = {"x": t_x, "y": t_y, "z": t_z}
    ts = {k: v if isinstance(v, Surd) else as_fraction(v) for k, v in ts.items()}
    _check_t(ts.values())
    rec: dict = {"t": ts, "p": {}, "variance": {}, "certainty_sq": {}}
    for w, t in ts.items():
        rec["p"][w] = (1 + t) / 2
        rec["variance"][w] = 1 - t * t
        rec["certainty_sq"][w] = (1 + t * t) / 2
    rec["forms"] = {
        "xyz": relation_forms(ts["x"], ts["y"], ts["z"], ("X", "Y", "Z")),
        "xz": relation_forms(ts["x"], ts["y"], ts["z"], ("X", "Z")),
    }
    return rec


def qubit_relation(kind: str, axes) -> URForm:
    """The qubit relation (unit ball, or unit disk for two axes) in the requested form."""
    axes = parse_axes(axes)
    m = len(axes)
    bound = {
        "expectation": Fraction(1),
        "variance": Fraction(m - 1),
        "certainty": Fraction(m + 1, 2),
        "probability-shift": Fraction(1, 4),
    }[kind]
    return URForm(kind, axes, bound)


def relation_forms(t_x, t_y, t_z, axes) -> dict[str, bool]:
    """Evaluate the qubit relation in each of its four forms at one point."""
    t = {"X": t_x, "Y": t_y, "Z": t_z}
    return {kind: qubit_relation(kind, axes).holds(t) for kind in FORM_KINDS}


def state_dependent_zx_bound(t_y) -> Number:
    """Lower bound on the X and Z variance sum given <Y>: 2 - (1 - <Y>^2)."""
    t_y = t_y if isinstance(t_y, Surd) else as_fraction(t_y)
    _check_t([t_y])
    return 2 - (1 - t_y * t_y)
