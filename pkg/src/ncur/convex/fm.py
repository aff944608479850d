"""Fourier-Motzkin projection with LP-certified redundancy removal."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linsys import EQ, LE, ContractViolation, EmptyPolytopeError, LinearSystem, Row
from .lp import Status, is_feasible, lp_solve


def remove_redundant(system: LinearSystem) -> LinearSystem:
    """Drop every inequality implied by the others (one LP per row)."""
    if not is_feasible(system):
        raise EmptyPolytopeError("system is infeasible")
    rows = [r for r in system.rows if not r.is_trivial()]  # feasible, so 0 <= b / 0 = 0
    i = 0
    while i < len(rows):
        r = rows[i]
        if r.rel == EQ:
            i += 1
            continue
        rest = system.replace_rows(rows[:i] + rows[i + 1:])
        res = lp_solve(rest, r.a, "max")
        if res.status is Status.OPTIMAL and res.optimum <= r.b:
            del rows[i]
        else:
            i += 1
    return system.replace_rows(rows)


def _substitute(row: Row, eq: Row, k: int) -> Row:
    t = row.a[k] / eq.a[k]
    return Row(tuple(x - t * y for x, y in zip(row.a, eq.a)), row.rel, row.b - t * eq.b)


def _eliminate_equalities(rows: list[Row], elim: set[int]) -> list[Row]:
    rows = list(rows)
    while True:
        hit = None
        for i, r in enumerate(rows):
            if r.rel == EQ:
                k = next((k for k in sorted(elim) if r.a[k]), None)
                if k is not None:
                    hit = (i, k)
                    break
        if hit is None:
            return rows
        i, k = hit
        eq = rows.pop(i)
        rows = [_substitute(r, eq, k) if r.a[k] else r for r in rows]


def fm_step(rows: Sequence[Row], k: int) -> list[Row]:
    """Eliminate column k from a list of inequality rows (no equalities on k)."""
    pos = [r for r in rows if r.a[k] > 0]
    neg = [r for r in rows if r.a[k] < 0]
    out = [r for r in rows if not r.a[k]]
    for p in pos:
        for n in neg:
            lp, ln = -n.a[k], p.a[k]
            a = tuple(lp * x + ln * y for x, y in zip(p.a, n.a))
            out.append(Row(a, LE, lp * p.b + ln * n.b))
    return out


def fm_project(system: LinearSystem, keep: Sequence[str], prune: bool = True) -> LinearSystem:
    """Project onto the ``keep`` variables by Fourier-Motzkin elimination.

    Equalities are used for substitution first; the remaining variables are
    eliminated pairwise, cheapest (fewest new rows) first, with redundant
    rows removed after every step when ``prune`` is set.
    """
    keep = list(keep)
    if not keep:
        raise ContractViolation("keep set must be nonempty")
    unknown = [v for v in keep if v not in system.variables]
    if unknown:
        raise ContractViolation(f"unknown variables {unknown}")
    keep_idx = [system.variables.index(v) for v in keep]
    elim = set(range(system.dim)) - set(keep_idx)

    rows = _eliminate_equalities(list(system.rows), elim)
    current = system.replace_rows(rows)
    if prune:
        current = remove_redundant(current)
    remaining = {k for k in elim if any(r.a[k] for r in current.rows)}
    while remaining:
        def cost(k):
            p = sum(1 for r in current.rows if r.a[k] > 0)
            n = sum(1 for r in current.rows if r.a[k] < 0)
            return (p * n - p - n, k)
        k = min(remaining, key=cost)
        eqs = [r for r in current.rows if r.rel == EQ]
        new = fm_step([r for r in current.rows if r.rel == LE], k)
        current = current.replace_rows(eqs + new)
        if prune:
            current = remove_redundant(current)
        remaining = {j for j in elim if any(r.a[j] for r in current.rows)}

    rows = [Row(tuple(r.a[i] for i in keep_idx), r.rel, r.b) for r in current.rows]
    projected = LinearSystem(tuple(keep), tuple(rows))
    return remove_redundant(projected) if prune else projected


def restrict(system: LinearSystem, values: dict[str, Fraction]) -> LinearSystem:
    """Fix some variables to values and return the system over the rest."""
    idx = {v: i for i, v in enumerate(system.variables)}
    free = [v for v in system.variables if v not in values]
    rows = []
    for r in system.rows:
        b = r.b - sum((r.a[idx[v]] * Fraction(x) for v, x in values.items()), Fraction(0))
        rows.append(Row(tuple(r.a[idx[v]] for v in free), r.rel, b))
    return LinearSystem(tuple(free), tuple(rows))
