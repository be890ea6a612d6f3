"""Pure-Python versions of the hot loops.

Monomials are flat exponent tuples ``(a_1..a_n, b_1..b_n)`` standing for
``x^a d^b``; in the homogenized algebra a trailing ``h`` exponent is appended.
Polynomials are dicts ``monomial -> coefficient`` and module vectors are dicts
``(component, monomial) -> coefficient``.  Coefficients may be ``int`` or
``Fraction``; nothing here rounds.

The compiled module ``_ckernels`` exposes the same functions.
"""

from math import gcd

_FACTOR_CACHE = {}


def _pair_factors(b, c):
    # d^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) d^(b-k)
    key = (b, c)
    out = _FACTOR_CACHE.get(key)
    if out is None:
        out = []
        coef = 1
        for k in range(min(b, c) + 1):
            out.append((k, coef))
            coef = coef * (b - k) * (c - k) // (k + 1)
        _FACTOR_CACHE[key] = out
    return out


def mono_mul(m1, m2, n, homog):
    """Normally ordered product of two monomials as a list of (monomial, int)."""
    overlap = False
    for i in range(n):
        if m1[n + i] and m2[i]:
            overlap = True
            break
    if not overlap:
        return [(tuple([p + q for p, q in zip(m1, m2)]), 1)]
    results = [((), 1, 0)]
    for i in range(n):
        b = m1[n + i]
        c = m2[i]
        if b and c:
            factors = _pair_factors(b, c)
            results = [(ks + (k,), coef * f, tot + k)
                       for ks, coef, tot in results for k, f in factors]
        else:
            results = [(ks + (0,), coef, tot) for ks, coef, tot in results]
    base = [p + q for p, q in zip(m1, m2)]
    out = []
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


def poly_mul(p, q, n, homog):
    """Product p*q of two polynomials in the (homogenized) Weyl algebra."""
    out = {}
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


def vec_lmul(p, v, n, homog):
    """Left multiplication p*v of a module vector v by a polynomial p."""
    out = {}
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


def vec_mono_lmul(coef, mono, v, n, homog):
    """coef * mono * v for a single monomial mono."""
    out = {}
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


def axpy(a, f, b, g):
    """Return a*f + b*g for dict-backed vectors, dropping zero entries."""
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


def int_rref(rows, ncols):
    """Fraction-free Gauss-Jordan elimination on integer rows.

    Returns ``(echelon, pivots)`` where ``echelon`` holds the nonzero
    primitive integer rows, each with its pivot column cleared in every other
    row.  Pivot entries are positive but not normalized to 1.
    """
    work = [list(r) for r in rows if any(r)]
    pivots = []
    rank = 0
    for col in range(ncols):
        best = -1
        for i in range(rank, len(work)):
            val = work[i][col]
            if val and (best < 0 or abs(val) < abs(work[best][col])):
                best = i
        if best < 0:
            continue
        work[rank], work[best] = work[best], work[rank]
        prow = work[rank]
        if prow[col] < 0:
            prow = [-x for x in prow]
        g = 0
        for x in prow:
            if x:
                g = gcd(g, x)
        if g > 1:
            prow = [x // g for x in prow]
        work[rank] = prow
        pv = prow[col]
        for i in range(len(work)):
            if i == rank:
                continue
            row = work[i]
            f = row[col]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            row = [a * x - b * y for x, y in zip(row, prow)]
            g = 0
            for x in row:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                row = [x // g for x in row]
            work[i] = row
        pivots.append(col)
        rank += 1
    return work[:rank], pivots
