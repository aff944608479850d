"""Pure-Python versions of the compiled kernels."""
from __future__ import annotations


def grid_oracle(n: int):
    """Same contract as the compiled kernel; the innermost loop is solved in closed form.

    For fixed (a, b, c, eps) the admissible gam form an interval: gam must lie in
    its own box and make dlt = 2(a + d) - n - eps - gam land in the dlt box.
    """
    best = -4 * n - 1
    count = 0
    arg = (0,) * 7
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for c in range(n + 1 - a - b):
                d = n - a - b - c
                s = 2 * (a + d) - n
                elo, ehi = max(-b, a - n, d - n, -c), min(n - b, a, d, n - c)
                glo, ghi = max(d - n, -c, -b, a - n), min(d, n - c, n - b, a)
                dlo, dhi = max(-c, d - n, a - n, -b), min(n - c, d, a, n - b)
                val = 2 * b - 2 * c
                for e in range(elo, ehi + 1):
                    lo = max(glo, s - e - dhi)
                    hi = min(ghi, s - e - dlo)
                    if hi < lo:
                        continue
                    count += hi - lo + 1
                    if val > best:
                        best = val
                        arg = (a, b, c, d, e, lo, s - e - lo)
    return best, count, arg
