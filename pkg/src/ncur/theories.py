"""The five prepare-measure theories in a shared 4-dimensional representation.

States are ``(1, sx, sy, sz)``; the unit effect is ``(1, 0, 0, 0)`` and the
outcome-(+/-1) effects of W in {X, Y, Z} are ``(1/2, +/- w/2)``, so that
``<W>`` is the matching coordinate of the state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .convex import Ball, ContractViolation, Polytope
from .convex.linsys import as_fraction, fmt
from .surd import Surd

AXES = ("X", "Y", "Z")
AXIS_INDEX = {"X": 0, "Y": 1, "Z": 2}
COORD_NAMES = ("sx", "sy", "sz")
NAMES = ("qubit", "stabilizer", "depolarized", "gbit", "simplicial")

Number = Union[Fraction, Surd]
HALF = Fraction(1, 2)

OCTAHEDRON = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
CUBE = tuple((a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1))
TETRAHEDRON = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def _num(x) -> Number:
    return x if isinstance(x, Surd) else as_fraction(x)


@dataclass(frozen=True)
class RepVector:
    """A 4-vector; states carry s0 = 1. Coordinates may be Surds."""
    s0: Number
    sx: Number
    sy: Number
    sz: Number

    def __post_init__(self):
        for name in ("s0", "sx", "sy", "sz"):
            object.__setattr__(self, name, _num(getattr(self, name)))

    @classmethod
    def state(cls, sx, sy, sz) -> "RepVector":
        return cls(1, sx, sy, sz)

    @classmethod
    def parse(cls, text: str) -> "RepVector":
        """Parse ``"sx,sy,sz"`` with rational entries like ``3/5``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ContractViolation(f"expected three comma-separated rationals, got {text!r}")
        return cls.state(*(Fraction(p) for p in parts))

    def __iter__(self):
        return iter((self.s0, self.sx, self.sy, self.sz))

    def __add__(self, other: "RepVector") -> "RepVector":
        return RepVector(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "RepVector") -> "RepVector":
        return RepVector(*(a - b for a, b in zip(self, other)))

    def scale(self, t) -> "RepVector":
        return RepVector(*(t * a for a in self))

    def dot(self, other) -> Number:
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    @property
    def bloch(self) -> tuple[Number, Number, Number]:
        return (self.sx, self.sy, self.sz)

    def coord(self, axis: str) -> Number:
        return self.bloch[AXIS_INDEX[axis]]

    def to_list(self) -> list[str]:
        return [str(x) if isinstance(x, Surd) else fmt(x) for x in self]


UNIT = RepVector(1, 0, 0, 0)


@dataclass(frozen=True)
class Effect:
    e: RepVector


@dataclass(frozen=True)
class Measurement:
    label: str
    plus: Effect
    minus: Effect

    @property
    def observable(self) -> RepVector:
        return self.plus.e - self.minus.e


def _axis_effect(axis: str, sign: int) -> Effect:
    w = [Fraction(0)] * 3
    w[AXIS_INDEX[axis]] = Fraction(sign, 2)
    return Effect(RepVector(HALF, *w))


def canonical_measurements() -> dict[str, Measurement]:
    return {a: Measurement(a, _axis_effect(a, 1), _axis_effect(a, -1)) for a in AXES}


@dataclass(frozen=True)
class TheorySpec:
    name: str
    body: Ball | Polytope
    measurements: dict[str, Measurement] = field(default_factory=canonical_measurements, hash=False)
    measurement_subset: tuple[str, ...] = AXES
    eta: Fraction | None = None

    @property
    def is_ball(self) -> bool:
        return isinstance(self.body, Ball)

    @property
    def label(self) -> str:
        return f"{self.name}:{fmt(self.eta)}" if self.eta is not None else self.name

    def to_dict(self) -> dict:
        if self.is_ball:
            body = {"kind": "ball", "radius": fmt(self.body.radius)}
        else:
            body = {"kind": "polytope", "vrep": [[fmt(x) for x in v] for v in self.body.vrep]}
        effects = {
            m.label: {"plus": m.plus.e.to_list(), "minus": m.minus.e.to_list()}
            for m in self.measurements.values()
        }
        return {"name": self.name, "eta": fmt(self.eta) if self.eta is not None else None,
                "body": body, "effects": effects,
                "measurement_subset": list(self.measurement_subset)}


def make_theory(name: str, eta=None) -> TheorySpec:
    """Construct one of the five theories; polytope facets are computed eagerly."""
    if name == "qubit":
        return TheorySpec("qubit", Ball(1))
    if name == "depolarized":
        if eta is None:
            raise ContractViolation("depolarized theory needs eta")
        eta = as_fraction(eta)
        if not 0 <= eta <= 1:
            raise ContractViolation(f"eta must lie in [0, 1], got {fmt(eta)}")
        return TheorySpec("depolarized", Ball(1 - eta), eta=eta)
    if name == "stabilizer":
        return TheorySpec("stabilizer", Polytope.from_vertices(OCTAHEDRON, COORD_NAMES))
    if name == "gbit":
        return TheorySpec("gbit", Polytope.from_vertices(CUBE, COORD_NAMES))
    if name == "simplicial":
        return TheorySpec("simplicial", Polytope.from_vertices(TETRAHEDRON, COORD_NAMES),
                          measurement_subset=("X", "Z"))
    raise ContractViolation(f"unknown theory {name!r}; expected one of {', '.join(NAMES)}")


def parse_theory(text: str) -> TheorySpec:
    """Theory from a CLI name: ``qubit|stabilizer|depolarized:<p/q>|gbit|simplicial``."""
    name, _, arg = text.partition(":")
    if name == "depolarized":
        if not arg:
            raise ContractViolation("use depolarized:<p/q>")
        try:
            eta = Fraction(arg)
        except ValueError as exc:
            raise ContractViolation(f"bad eta {arg!r}") from exc
        return make_theory("depolarized", eta)
    if arg:
        raise ContractViolation(f"theory {name!r} takes no parameter")
    return make_theory(name)


def _require_state(s: RepVector) -> None:
    if s.s0 != 1:
        raise ContractViolation(f"a state needs s0 = 1, got {s.s0}")


def contains_state(theory: TheorySpec, s: RepVector) -> bool:
    _require_state(s)
    return theory.body.contains(s.bloch)


def expectation(s: RepVector, m: Measurement) -> Number:
    return m.observable.dot(s)


def probability(e: Effect, s: RepVector) -> Number:
    p = e.e.dot(s)
    if p < 0 or p > 1:
        raise ContractViolation(f"probability {p} outside [0, 1]: invalid effect/state pairing")
    return p


def measurement(theory: TheorySpec, label: str, geometric: bool = False) -> Measurement:
    if label not in theory.measurement_subset and not geometric:
        raise ContractViolation(f"{label} measurement unavailable in the {theory.name} theory")
    return theory.measurements[label]


def extreme_states(theory: TheorySpec) -> list[RepVector]:
    """Vertices for polytope bodies; the six axis points for balls."""
    if theory.is_ball:
        r = theory.body.radius
        pts = [tuple(r * Fraction(c) for c in v) for v in OCTAHEDRON]
    else:
        pts = theory.body.vrep
    return [RepVector.state(*p) for p in pts]
