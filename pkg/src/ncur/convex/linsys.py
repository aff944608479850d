"""Linear systems over named rational variables (H-representation)."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

LE = "<="
EQ = "="


class ContractViolation(ValueError):
    """Raised when an operation is called outside its precondition."""


class EmptyPolytopeError(ValueError):
    """Raised when a system that must be feasible has no solution."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction (floats are refused)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Row:
    a: tuple[Fraction, ...]
    rel: str
    b: Fraction

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((ai * xi for ai, xi in zip(self.a, point) if ai), Fraction(0))

    def satisfied(self, point: Sequence[Fraction]) -> bool:
        lhs = self.evaluate(point)
        return lhs == self.b if self.rel == EQ else lhs <= self.b

    def is_trivial(self) -> bool:
        return not any(self.a)


def canonical_row(a: Iterable, rel: str, b) -> Row:
    """Scale a row to coprime integers; equality rows get a positive leading coefficient."""
    if rel not in (LE, EQ):
        raise ContractViolation(f"unknown relation {rel!r}")
    a = [as_fraction(x) for x in a]
    b = as_fraction(b)
    dens = [x.denominator for x in a] + [b.denominator]
    lcm = math.lcm(*dens)
    ints = [int(x * lcm) for x in a]
    ib = int(b * lcm)
    g = math.gcd(*ints, ib)
    if g == 0:
        return Row(tuple(Fraction(0) for _ in a), rel, Fraction(0))
    # With all coefficients zero, keep only the sign of the constant.
    if not any(ints):
        g = abs(ib)
    ints = [x // g for x in ints]
    ib //= g
    if rel == EQ:
        lead = next((x for x in ints if x), ib)
        if lead < 0:
            ints = [-x for x in ints]
            ib = -ib
    return Row(tuple(Fraction(x) for x in ints), rel, Fraction(ib))


@dataclass(frozen=True)
class LinearSystem:
    variables: tuple[str, ...]
    rows: tuple[Row, ...] = field(default=())

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ContractViolation("duplicate variable names")
        n = len(self.variables)
        seen = set()
        rows = []
        for r in self.rows:
            if len(r.a) != n:
                raise ContractViolation(
                    f"row has {len(r.a)} coefficients, system has {n} variables")
            c = canonical_row(r.a, r.rel, r.b)
            if c not in seen:
                seen.add(c)
                rows.append(c)
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def build(cls, variables: Sequence[str], rows: Iterable[tuple]) -> "LinearSystem":
        """Build from ``(coeffs, rel, b)`` triples; coeffs may be a list or a {name: coef} dict."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        out = []
        for coeffs, rel, b in rows:
            if isinstance(coeffs, dict):
                a = [Fraction(0)] * len(variables)
                for name, c in coeffs.items():
                    if name not in index:
                        raise ContractViolation(f"unknown variable {name!r}")
                    a[index[name]] += as_fraction(c)
            else:
                a = [as_fraction(c) for c in coeffs]
            out.append(Row(tuple(a), rel, as_fraction(b)))
        return cls(variables, tuple(out))

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def inequalities(self) -> tuple[Row, ...]:
        return tuple(r for r in self.rows if r.rel == LE)

    @property
    def equalities(self) -> tuple[Row, ...]:
        return tuple(r for r in self.rows if r.rel == EQ)

    def contains(self, point: Sequence) -> bool:
        pt = [as_fraction(x) for x in point]
        if len(pt) != self.dim:
            raise ContractViolation("point dimension mismatch")
        return all(r.satisfied(pt) for r in self.rows)

    def with_rows(self, rows: Iterable[Row]) -> "LinearSystem":
        return LinearSystem(self.variables, self.rows + tuple(rows))

    def replace_rows(self, rows: Iterable[Row]) -> "LinearSystem":
        return LinearSystem(self.variables, tuple(rows))

    def split_equalities(self) -> "LinearSystem":
        """Same solution set with every equality written as two inequalities."""
        rows = []
        for r in self.rows:
            if r.rel == EQ:
                rows.append(Row(r.a, LE, r.b))
                rows.append(Row(tuple(-x for x in r.a), LE, -r.b))
            else:
                rows.append(r)
        return self.replace_rows(rows)

    def row_set(self) -> frozenset[Row]:
        return frozenset(self.rows)

    def same_rows(self, other: "LinearSystem") -> bool:
        """Row-set equality after canonicalization, matching variables by name."""
        if set(self.variables) != set(other.variables):
            return False
        return self.row_set() == other.reorder(self.variables).row_set()

    def reorder(self, variables: Sequence[str]) -> "LinearSystem":
        variables = tuple(variables)
        if sorted(variables) != sorted(self.variables):
            raise ContractViolation("reorder needs a permutation of the variables")
        pos = [self.variables.index(v) for v in variables]
        rows = [Row(tuple(r.a[p] for p in pos), r.rel, r.b) for r in self.rows]
        return LinearSystem(variables, tuple(rows))

    def sorted(self) -> "LinearSystem":
        """Rows in a deterministic order (useful before printing)."""
        key = lambda r: (r.rel, tuple(-x for x in r.a), r.b)
        return self.replace_rows(sorted(self.rows, key=key))

    def to_dict(self) -> dict:
        return {
            "vars": list(self.variables),
            "rows": [{"a": [fmt(x) for x in r.a], "rel": r.rel, "b": fmt(r.b)}
                     for r in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinearSystem":
        try:
            variables = data["vars"]
            rows = [([Fraction(x) for x in r["a"]], r["rel"], Fraction(r["b"]))
                    for r in data["rows"]]
        except (KeyError, TypeError) as exc:
            raise ContractViolation(f"malformed LinearSystem JSON: {exc}") from exc
        return cls.build(variables, rows)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "LinearSystem":
        return cls.from_dict(json.loads(text))

    def pretty(self) -> str:
        lines = []
        for r in self.rows:
            terms = []
            for c, v in zip(r.a, self.variables):
                if not c:
                    continue
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                coef = "" if mag == 1 else f"{fmt(mag)}*"
                terms.append(f"{sign} {coef}{v}")
            lhs = " ".join(terms).lstrip("+ ") or "0"
            lines.append(f"{lhs} {r.rel} {fmt(r.b)}")
        return "\n".join(lines)
