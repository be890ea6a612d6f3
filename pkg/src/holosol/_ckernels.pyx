# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops; same contracts as ``_pykernels``."""

from math import gcd

cdef dict _FACTOR_CACHE = {}


cdef list _pair_factors(int b, int c):
    cdef tuple key = (b, c)
    cdef list out = _FACTOR_CACHE.get(key)
    cdef int k
    if out is None:
        out = []
        coef = 1
        for k in range(min(b, c) + 1):
            out.append((k, coef))
            coef = coef * (b - k) * (c - k) // (k + 1)
        _FACTOR_CACHE[key] = out
    return out


cpdef list mono_mul(tuple m1, tuple m2, int n, bint homog):
    cdef int i, b, c, k, tot, size
    cdef bint overlap = False
    cdef list base, mono, results, nxt, factors
    cdef tuple ks
    size = len(m1)
    for i in range(n):
        if <int>m1[n + i] and <int>m2[i]:
            overlap = True
            break
    if not overlap:
        return [(tuple([<int>m1[i] + <int>m2[i] for i in range(size)]), 1)]
    results = [((), 1, 0)]
    for i in range(n):
        b = m1[n + i]
        c = m2[i]
        if b and c:
            factors = _pair_factors(b, c)
            nxt = []
            for ks, coef, tot in results:
                for k, f in factors:
                    nxt.append((ks + (k,), coef * f, tot + k))
            results = nxt
        else:
            results = [(ks + (0,), coef, tot) for ks, coef, tot in results]
    base = [<int>m1[i] + <int>m2[i] for i in range(size)]
    cdef list out = []
    for ks, coef, tot in results:
        mono = list(base)
        for i in range(n):
            k = ks[i]
            if k:
                mono[i] -= k
                mono[n + i] -= k
        if homog:
            mono[2 * n] += 2 * tot
        out.append((tuple(mono), coef))
    return out


cpdef dict poly_mul(dict p, dict q, int n, bint homog):
    cdef dict out = {}
    cdef tuple m1, m2, mono
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            c12 = c1 * c2
            for mono, f in mono_mul(m1, m2, n, homog):
                val = out.get(mono, 0) + c12 * f
                if val:
                    out[mono] = val
                else:
                    out.pop(mono, None)
    return out


cpdef dict vec_lmul(dict p, dict v, int n, bint homog):
    cdef dict out = {}
    cdef tuple m1, m2, mono, key
    for m1, c1 in p.items():
        for (comp, m2), c2 in v.items():
            c12 = c1 * c2
            for mono, f in mono_mul(m1, m2, n, homog):
                key = (comp, mono)
                val = out.get(key, 0) + c12 * f
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


cpdef dict vec_mono_lmul(coef, tuple mono, dict v, int n, bint homog):
    cdef dict out = {}
    cdef tuple m2, prod, key
    for (comp, m2), c2 in v.items():
        c12 = coef * c2
        for prod, f in mono_mul(mono, m2, n, homog):
            key = (comp, prod)
            val = out.get(key, 0) + c12 * f
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


cpdef dict axpy(a, dict f, b, dict g):
    cdef dict out
    if a == 1:
        out = dict(f)
    else:
        out = {k: a * c for k, c in f.items()}
    for k, c in g.items():
        val = out.get(k, 0) + b * c
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


cdef list _primitive(list row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


cpdef tuple int_rref(list rows, int ncols):
    cdef list work = [list(r) for r in rows if any(r)]
    cdef list pivots = []
    cdef int rank = 0
    cdef int col, i, best, nrows
    cdef list prow, row
    nrows = len(work)
    for col in range(ncols):
        best = -1
        for i in range(rank, nrows):
            val = work[i][col]
            if val and (best < 0 or abs(val) < abs(work[best][col])):
                best = i
        if best < 0:
            continue
        work[rank], work[best] = work[best], work[rank]
        prow = work[rank]
        if prow[col] < 0:
            prow = [-x for x in prow]
        prow = _primitive(prow)
        work[rank] = prow
        pv = prow[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = work[i]
            f = row[col]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            work[i] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(col)
        rank += 1
    return work[:rank], pivots
