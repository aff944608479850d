# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled grid enumeration over the four-preparation parameter box."""


cdef inline long _max4(long a, long b, long c, long d):
    if b > a: a = b
    if c > a: a = c
    if d > a: a = d
    return a


cdef inline long _min4(long a, long b, long c, long d):
    if b < a: a = b
    if c < a: a = c
    if d < a: a = d
    return a


def grid_oracle(long n):
    """Enumerate every grid point (a,b,c,d,eps,gam,dlt) in units of 1/n.

    Returns (best, count, argmax): best = max of 2b - 2c (that is n * (<X> + <Z>)),
    count = number of points meeting every constraint, argmax the first point
    attaining best in (a, b, c, eps, gam) lexicographic order.
    """
    cdef long a, b, c, d, e, g, dl, s, val
    cdef long elo, ehi, glo, ghi, dlo, dhi
    cdef long best = -4 * n - 1
    cdef long long count = 0
    cdef long ba = 0, bb = 0, bc = 0, bd = 0, be = 0, bg = 0, bdl = 0
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for c in range(n + 1 - a - b):
                d = n - a - b - c
                s = 2 * (a + d) - n
                elo = _max4(-b, a - n, d - n, -c)
                ehi = _min4(n - b, a, d, n - c)
                glo = _max4(d - n, -c, -b, a - n)
                ghi = _min4(d, n - c, n - b, a)
                dlo = _max4(-c, d - n, a - n, -b)
                dhi = _min4(n - c, d, a, n - b)
                val = 2 * b - 2 * c
                for e in range(elo, ehi + 1):
                    for g in range(glo, ghi + 1):
                        dl = s - e - g
                        if dl < dlo or dl > dhi:
                            continue
                        count += 1
                        if val > best:
                            best = val
                            ba, bb, bc, bd, be, bg, bdl = a, b, c, d, e, g, dl
    return best, count, (ba, bb, bc, bd, be, bg, bdl)
