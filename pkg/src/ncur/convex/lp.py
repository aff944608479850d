"""Exact two-phase simplex over the rationals.

Dense tableau, Bland's rule for entering and leaving variables, so the
method terminates without cycling. Rows of the form ``-x_i <= 0`` are
absorbed as sign constraints instead of becoming tableau rows; every
other variable is split into a difference of two nonnegative columns.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linsys import EQ, LE, ContractViolation, LinearSystem, Row, as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LPResult:
    status: Status
    optimum: Fraction | None = None
    argument: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    """Simplex tableau kept as integer rows, each with its own positive denominator.

    Row i stands for ``rows[i] / den[i]``; the last entry is the right-hand
    side. Rows are reduced by their content after every update, so the
    arithmetic stays on small Python ints instead of Fractions.
    """

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.rows = rows
        self.den = [1] * len(rows)
        self.basis = basis
        self.cost: list[int] = []
        self.cost_den = 1

    @staticmethod
    def _reduce(row: list[int], den: int) -> tuple[list[int], int]:
        g = math.gcd(den, *row)
        if g > 1:
            row = [v // g for v in row]
            den //= g
        return row, den

    def set_cost(self, c: Sequence[Fraction]) -> None:
        """Reduced costs of ``c`` (length = columns) with respect to the basis."""
        scale = math.lcm(*(q.denominator for q in c)) if c else 1
        cost = [int(q * scale) for q in c] + [0]
        den = 1
        for i, bj in enumerate(self.basis):
            t = cost[bj]
            if t:
                # cost - t * row_i / den_i, over a common denominator
                d = self.den[i]
                cost = [d * x - t * y for x, y in zip(cost, self.rows[i])]
                den *= d
                cost, den = self._reduce(cost, den)
        self.cost, self.cost_den = cost, den

    def _eliminate(self, row: list[int], den: int, j: int, prow: list[int], pden: int):
        # row/den - (row[j]/den) * prow/p  with p = prow[j] > 0
        t = row[j]
        p = prow[j]
        new = [p * x - t * y for x, y in zip(row, prow)]
        return self._reduce(new, den * p)

    def pivot(self, r: int, j: int) -> None:
        prow = self.rows[r]
        if prow[j] < 0:
            prow = [-v for v in prow]
        # Normalized pivot row is prow / prow[j]; store with that denominator.
        pden = prow[j]
        prow, pden = self._reduce(prow, pden)
        self.rows[r], self.den[r] = prow, pden
        for i, row in enumerate(self.rows):
            if i != r and row[j]:
                self.rows[i], self.den[i] = self._eliminate(row, self.den[i], j, prow, pden)
        if self.cost and self.cost[j]:
            self.cost, self.cost_den = self._eliminate(self.cost, self.cost_den, j, prow, pden)
        self.basis[r] = j

    def value(self, i: int) -> Fraction:
        return Fraction(self.rows[i][-1], self.den[i])

    @property
    def cost_value(self) -> Fraction:
        """Current objective of the minimization (negated right-hand side of the cost row)."""
        return Fraction(-self.cost[-1], self.cost_den)

    def run(self, allowed: int) -> bool:
        """Minimize the cost row over columns ``< allowed``; False when unbounded."""
        while True:
            cost = self.cost
            j = next((k for k in range(allowed) if cost[k] < 0), None)
            if j is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    # ratio rhs/a; compare by cross-multiplication, ties by basis index
                    if best is None:
                        best = (i, row[-1], a)
                        continue
                    _, bt, ba = best
                    lhs, rhs = row[-1] * ba, bt * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]]):
                        best = (i, row[-1], a)
            if best is None:
                return False
            self.pivot(best[0], j)


def _standard_form(system: LinearSystem):
    """Map a general system to ``A y = b, y >= 0, b >= 0``.

    Returns (rows, rhs, slack-basis hints, column map) where the column map
    lists, for each original variable, (positive column, negative column or None).
    """
    n = system.dim
    nonneg = [False] * n
    kept: list[Row] = []
    for r in system.rows:
        nz = [k for k, v in enumerate(r.a) if v]
        if r.rel == LE and len(nz) == 1 and r.a[nz[0]] < 0 and r.b == 0:
            nonneg[nz[0]] = True
        else:
            kept.append(r)
    colmap = []
    ncols = 0
    for k in range(n):
        if nonneg[k]:
            colmap.append((ncols, None))
            ncols += 1
        else:
            colmap.append((ncols, ncols + 1))
            ncols += 2
    n_slack = sum(1 for r in kept if r.rel == LE)
    width = ncols + n_slack
    rows, rhs, slack_of = [], [], []
    s = ncols
    for r in kept:
        row = [ZERO] * width
        for k, v in enumerate(r.a):
            if v:
                pos, neg = colmap[k]
                row[pos] = v
                if neg is not None:
                    row[neg] = -v
        b = r.b
        slack = None
        if r.rel == LE:
            row[s] = ONE
            slack = s
            s += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
            slack = None  # slack now has coefficient -1
        rows.append(row)
        rhs.append(b)
        slack_of.append(slack)
    return rows, rhs, slack_of, colmap, width


def lp_solve(system: LinearSystem, objective: Sequence, sense: str = "max") -> LPResult:
    """Optimize ``objective . x`` over ``system`` exactly."""
    c = [as_fraction(x) for x in objective]
    if len(c) != system.dim:
        raise ContractViolation(
            f"objective has {len(c)} entries, system has {system.dim} variables")
    if sense not in ("max", "min"):
        raise ContractViolation(f"sense must be 'max' or 'min', not {sense!r}")
    for r in system.rows:
        if r.is_trivial():
            ok = r.b == 0 if r.rel == EQ else r.b >= 0
            if not ok:
                return LPResult(Status.INFEASIBLE)

    rows, rhs, slack_of, colmap, width = _standard_form(system)
    m = len(rows)
    basis = []
    art_rows = []
    for i in range(m):
        if slack_of[i] is not None:
            basis.append(slack_of[i])
        else:
            basis.append(-1)
            art_rows.append(i)
    total = width + len(art_rows)
    art_col = {i: width + a for a, i in enumerate(art_rows)}
    int_rows = []
    for i in range(m):
        scale = math.lcm(*(q.denominator for q in rows[i]), rhs[i].denominator)
        row = [int(q * scale) for q in rows[i]] + [0] * len(art_rows) + [int(rhs[i] * scale)]
        if i in art_col:
            row[art_col[i]] = scale
            basis[i] = art_col[i]
        int_rows.append(row)
    tab = _Tableau(int_rows, basis)
    # Each basic column holds the row's scale, so that scale is the row denominator.
    tab.den = [row[bj] for row, bj in zip(int_rows, basis)]

    if art_rows:
        tab.set_cost([ZERO] * width + [ONE] * len(art_rows) + [ZERO])
        tab.run(total)
        if tab.cost_value > 0:
            return LPResult(Status.INFEASIBLE)
        # Drive zero-level artificials out of the basis; drop redundant rows.
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= width:
                j = next((k for k in range(width) if tab.rows[i][k]), None)
                if j is None:
                    del tab.rows[i], tab.den[i], tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        tab.rows = [row[:width] + row[-1:] for row in tab.rows]

    # Minimize -c for max, c for min.
    sgn = -1 if sense == "max" else 1
    cost = [ZERO] * (width + 1)
    for k, (pos, neg) in enumerate(colmap):
        cost[pos] = sgn * c[k]
        if neg is not None:
            cost[neg] = -sgn * c[k]
    tab.set_cost(cost)
    if not tab.run(width):
        return LPResult(Status.UNBOUNDED)

    values = [ZERO] * width
    for i, bj in enumerate(tab.basis):
        values[bj] = tab.value(i)
    x = []
    for pos, neg in colmap:
        v = values[pos]
        if neg is not None:
            v -= values[neg]
        x.append(v)
    opt = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    return LPResult(Status.OPTIMAL, opt, tuple(x))


def is_feasible(system: LinearSystem) -> bool:
    return lp_solve(system, [0] * system.dim).optimal


def feasible_point(system: LinearSystem) -> tuple[Fraction, ...] | None:
    res = lp_solve(system, [0] * system.dim)
    return res.argument if res.optimal else None


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers y with y.A = 0 and y.b = -1, y >= 0 on inequality rows."""
    multipliers: tuple[Fraction, ...]
    rows: tuple[Row, ...]

    def verify(self, system: LinearSystem) -> bool:
        return verify_farkas(system, self.multipliers, self.rows)


def verify_farkas(system: LinearSystem, y: Sequence[Fraction], rows: Sequence[Row]) -> bool:
    """Check the infeasibility certificate directly against the rows it refers to."""
    if set(rows) - set(system.rows) or len(y) != len(rows):
        return False
    for yi, r in zip(y, rows):
        if r.rel == LE and yi < 0:
            return False
    combo = [sum((yi * r.a[k] for yi, r in zip(y, rows)), ZERO) for k in range(system.dim)]
    rhs = sum((yi * r.b for yi, r in zip(y, rows)), ZERO)
    return not any(combo) and rhs < 0


def farkas_certificate(system: LinearSystem) -> FarkasCertificate | None:
    """Return a certificate of infeasibility, or None if the system is feasible."""
    rows = system.rows
    names = [f"y{i}" for i in range(len(rows))]
    cons = []
    for k in range(system.dim):
        cons.append(([r.a[k] for r in rows], EQ, 0))
    cons.append(([r.b for r in rows], EQ, -1))
    for i, r in enumerate(rows):
        if r.rel == LE:
            a = [0] * len(rows)
            a[i] = -1
            cons.append((a, LE, 0))
    dual = LinearSystem.build(names, cons)
    res = lp_solve(dual, [0] * len(rows))
    if not res.optimal:
        return None
    return FarkasCertificate(res.argument, rows)
