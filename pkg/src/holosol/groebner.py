"""Groebner bases of left submodules of D^r for weight orders with shifts.

Module vectors are tuples of :class:`WeylOp` (row vectors over D).  The
engine works on dict-backed vectors ``{(component, monomial): int}`` with
primitive integer coefficients.  For orders that are not well-orders
(any negative weight, e.g. the (-w, w) orders of the solution pipeline) the
computation is carried out in the homogenized Weyl algebra, where
``d_i x_i = x_i d_i + h^2``, and dehomogenized at the end.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import kernels
from .weyl import WeightOrder, WeylOp, WeylTerm

ModuleVector = tuple  # tuple[WeylOp, ...]


class GroebnerError(RuntimeError):
    """Raised when a reduction or completion exceeds its step cap."""


# ---------------------------------------------------------------- conversions

def as_vector(v) -> ModuleVector:
    if isinstance(v, WeylOp):
        return (v,)
    return tuple(v)


def to_internal(v: ModuleVector, homog_degree=None, comp_degrees=None) -> dict:
    """Clear denominators of v and optionally homogenize it.

    With ``homog_degree`` given, every term of component k is padded with
    h so that ``|a| + |b| + h + comp_degrees[k]`` equals that degree.
    """
    den = 1
    for op in v:
        for c in op.terms_dict.values():
            den = lcm(den, c.denominator)
    out = {}
    for k, op in enumerate(v):
        for mono, c in op.terms_dict.items():
            val = int(c * den)
            if homog_degree is None:
                out[(k, mono)] = val
            else:
                pad = homog_degree - sum(mono) - comp_degrees[k]
                out[(k, mono + (pad,))] = val
    return out


def homog_degree(v: ModuleVector, comp_degrees) -> int:
    return max(sum(mono) + comp_degrees[k]
               for k, op in enumerate(v) for mono in op.terms_dict)


def homogenize(v: ModuleVector, comp_degrees) -> tuple[dict, int]:
    deg = homog_degree(v, comp_degrees)
    return to_internal(v, deg, comp_degrees), deg


def dehomogenize(vec: dict, rank: int, n: int, homog: bool) -> ModuleVector:
    parts: list[dict] = [{} for _ in range(rank)]
    for (k, mono), c in vec.items():
        key = mono[: 2 * n] if homog else mono
        val = parts[k].get(key, 0) + c
        if val:
            parts[k][key] = val
        else:
            parts[k].pop(key, None)
    return tuple(WeylOp(n, p) for p in parts)


def _content(vec: dict) -> int:
    g = 0
    for c in vec.values():
        g = gcd(g, int(c))
        if g == 1:
            return 1
    return g


def _primitive(vec: dict) -> dict:
    g = _content(vec)
    if g > 1:
        return {k: c // g for k, c in vec.items()}
    return vec


def _scaled_internal(v: ModuleVector) -> tuple[dict, Fraction]:
    """Primitive integer form ``lam * v`` of v together with ``lam``."""
    den = 1
    for op in v:
        for c in op.terms_dict.values():
            den = lcm(den, c.denominator)
    vec = to_internal(v)
    g = _content(vec) if vec else 1
    if g > 1:
        vec = {k: c // g for k, c in vec.items()}
    return vec, Fraction(den, g)


# --------------------------------------------------------------------- engine

class _Engine:
    """Leading terms, reduction and S-pairs for one order and one algebra."""

    def __init__(self, n: int, order: WeightOrder, homog: bool):
        self.n = n
        self.order = order
        self.homog = homog
        self._keys: dict = {}

    def key(self, term) -> tuple:
        out = self._keys.get(term)
        if out is None:
            out = self.order.key(term[0], term[1])
            self._keys[term] = out
        return out

    def lead(self, vec: dict):
        return max(vec, key=self.key)

    def divides(self, small: tuple, big: tuple) -> bool:
        for a, b in zip(small, big):
            if a > b:
                return False
        return True

    def find_divisor(self, term, basis) -> int:
        comp, mono = term
        for idx, (lt, _lc, _vec) in enumerate(basis):
            if lt[0] == comp and self.divides(lt[1], mono):
                return idx
        return -1

    def reduce(self, f: dict, basis, full=True, track=False, max_steps=None):
        """Reduce f against basis entries ``(lead_term, lead_coeff, vec)``.

        Returns ``(scale, nf, quotients)`` with
        ``scale * f = sum_i quotients[i] * basis[i] + nf``; quotients are
        polynomial dicts (empty when ``track`` is False).
        """
        n, homog = self.n, self.homog
        f = dict(f)
        nf: dict = {}
        scale = Fraction(1)
        quot: list[dict] = [dict() for _ in basis] if track else []
        steps = 0
        while f:
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise GroebnerError(
                    f"reduction did not terminate within {max_steps} steps "
                    "(the order is not a well-order on this input)")
            lt = self.lead(f)
            idx = self.find_divisor(lt, basis)
            if idx < 0:
                if not full:
                    nf.update(f)
                    break
                nf[lt] = f.pop(lt)
                continue
            glt, glc, gvec = basis[idx]
            c = f[lt]
            g = gcd(c, glc)
            a = glc // g
            b = c // g
            if glc < 0:
                a, b = -a, -b
            qmono = tuple(x - y for x, y in zip(lt[1], glt[1]))
            f = kernels.axpy(a, f, -1, kernels.vec_mono_lmul(b, qmono, gvec, n, homog))
            if a != 1:
                scale *= a
                nf = {k: v * a for k, v in nf.items()}
                if track:
                    quot = [{m: v * a for m, v in q.items()} for q in quot]
            if track:
                q = quot[idx]
                val = q.get(qmono, 0) + b
                if val:
                    q[qmono] = val
                else:
                    q.pop(qmono, None)
            if a != 1:
                cg = gcd(_content(f), _content(nf)) if (f or nf) else 0
                if track and cg != 1:
                    for q in quot:
                        cg = gcd(cg, _content(q)) if q else cg
                        if cg == 1:
                            break
                if cg > 1:
                    f = {k: v // cg for k, v in f.items()}
                    nf = {k: v // cg for k, v in nf.items()}
                    if track:
                        quot = [{m: v // cg for m, v in q.items()} for q in quot]
                    scale /= cg
        return scale, nf, quot

    def spair(self, e1, e2):
        """S-vector of two basis entries plus the multipliers used."""
        (c, m1), lc1, v1 = e1
        (_, m2), lc2, v2 = e2
        lcm_mono = tuple(max(a, b) for a, b in zip(m1, m2))
        t1 = tuple(a - b for a, b in zip(lcm_mono, m1))
        t2 = tuple(a - b for a, b in zip(lcm_mono, m2))
        g = gcd(lc1, lc2)
        a = lc2 // g
        b = lc1 // g
        s = kernels.axpy(1, kernels.vec_mono_lmul(a, t1, v1, self.n, self.homog),
                         -1, kernels.vec_mono_lmul(b, t2, v2, self.n, self.homog))
        return s, (a, t1), (b, t2)

    def entry(self, vec: dict):
        vec = _primitive(vec)
        lt = self.lead(vec)
        return (lt, vec[lt], vec)


def _lcm_key(engine: _Engine, e1, e2):
    (c, m1) = e1[0]
    m2 = e2[0][1]
    return engine.key((c, tuple(max(a, b) for a, b in zip(m1, m2))))


def _complete(engine: _Engine, gens: list[dict], max_pairs=None, track=False):
    """Buchberger completion.  Returns entries and, if tracked, cofactors.

    Cofactors express each basis vector as a combination of ``gens``;
    they are vectors over ``len(gens)`` components.
    """
    n, homog = engine.n, engine.homog
    basis: list = []
    cofs: list[dict] = []
    pairs: list = []
    counter = 0

    def add(vec, cof):
        nonlocal counter
        g = _content(vec)
        if g > 1:
            vec = {k: v // g for k, v in vec.items()}
            if track:
                cof = {k: Fraction(v, g) for k, v in cof.items()}
        ent = engine.entry(vec)
        j = len(basis)
        for i, other in enumerate(basis):
            if other[0][0] == ent[0][0]:
                heapq.heappush(pairs, (_lcm_key(engine, other, ent), counter, i, j))
                counter += 1
        basis.append(ent)
        if track:
            cofs.append(cof)

    def lift(scale, nf, quot, cof0):
        # cofactor of nf = scale*cof0 - sum quot_i * cofs_i
        cof = {k: v * scale for k, v in cof0.items()}
        for i, q in enumerate(quot):
            if q:
                cof = kernels.axpy(1, cof, -1, kernels.vec_lmul(q, cofs[i], n, homog))
        return cof

    for gi, g in enumerate(gens):
        if not g:
            continue
        scale, nf, quot = engine.reduce(g, basis, track=track)
        if nf:
            cof = {}
            if track:
                unit = (0,) * (2 * n + (1 if homog else 0))
                cof = lift(scale, nf, quot, {(gi, unit): 1})
            add(nf, cof)
    processed = 0
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise GroebnerError(f"Buchberger exceeded {max_pairs} S-pairs")
        s, (a, t1), (b, t2) = engine.spair(basis[i], basis[j])
        if not s:
            continue
        scale, nf, quot = engine.reduce(s, basis, track=track)
        if nf:
            cof = {}
            if track:
                cof0 = kernels.axpy(1, kernels.vec_mono_lmul(a, t1, cofs[i], n, homog),
                                    -1, kernels.vec_mono_lmul(b, t2, cofs[j], n, homog))
                cof = lift(scale, nf, quot, cof0)
            add(nf, cof)
    return basis, cofs


def _minimalize(engine: _Engine, basis, cofs=None):
    """Drop entries whose leading term is divisible by another's."""
    keep = []
    for k, (lt, _, _) in enumerate(basis):
        redundant = False
        for l2, (lt2, _, _) in enumerate(basis):
            if l2 == k or lt2[0] != lt[0]:
                continue
            if engine.divides(lt2[1], lt[1]) and (lt2 != lt or l2 < k):
                redundant = True
                break
        if not redundant:
            keep.append(k)
    basis = [basis[k] for k in keep]
    if cofs is not None:
        cofs = [cofs[k] for k in keep]
    return basis, cofs


def _interreduce(engine: _Engine, basis, cofs=None, track=False):
    """Tail-reduce every entry against the others (leading terms unchanged)."""
    n, homog = engine.n, engine.homog
    out = list(basis)
    outc = list(cofs) if cofs is not None else None
    for k in range(len(out)):
        lt, lc, vec = out[k]
        others = [e if idx != k else ((None, ()), 1, {}) for idx, e in enumerate(out)]
        head = {lt: lc}
        tail = {t: c for t, c in vec.items() if t != lt}
        scale, nf, quot = engine.reduce(tail, others, track=track)
        new = kernels.axpy(scale, head, 1, nf)
        new = {t: c for t, c in new.items()}
        den = 1
        for c in new.values():
            den = lcm(den, Fraction(c).denominator)
        new = {t: int(c * den) for t, c in new.items()}
        factor = scale * den
        if outc is not None and track:
            cof = {t: c * factor for t, c in outc[k].items()}
            for i, q in enumerate(quot):
                if q:
                    q = {m: v * den for m, v in q.items()}
                    cof = kernels.axpy(1, cof, -1, kernels.vec_lmul(q, outc[i], n, homog))
            outc[k] = cof
        g = _content(new)
        if g > 1:
            new = {t: c // g for t, c in new.items()}
            if outc is not None and track:
                outc[k] = {t: Fraction(c) / g for t, c in outc[k].items()}
        out[k] = (lt, new[lt], new)
    return out, outc


# ---------------------------------------------------------------- public API

@dataclass
class GroebnerBasis:
    """A Groebner basis together with the data needed to continue from it."""

    generators: list
    order: WeightOrder
    rank: int
    n: int
    homogenized: bool = False
    comp_degrees: tuple = ()
    internal: list = field(default_factory=list, repr=False)
    cofactors: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.generators)

    def leading_terms(self):
        return [leading_term(g, self.order) for g in self.generators]


def needs_homogenization(order: WeightOrder) -> bool:
    return any(a < 0 for a in order.u) or any(b < 0 for b in order.v)


def leading_term(v, order: WeightOrder) -> tuple[int, WeylTerm]:
    """Leading (component index, term) of a nonzero module vector."""
    v = as_vector(v)
    best = None
    for k, op in enumerate(v):
        for mono in op.terms_dict:
            key = order.key(k, mono)
            if best is None or key > best[0]:
                best = (key, k, mono)
    if best is None:
        raise ValueError("the zero vector has no leading term")
    _, k, mono = best
    n = v[0].n
    return k, WeylTerm(v[k].terms_dict[mono], mono[:n], mono[n:])


def _check_rank(vectors, rank=None):
    ranks = {len(v) for v in vectors}
    if rank is not None:
        ranks.add(rank)
    if len(ranks) > 1:
        raise ValueError(f"module vectors of different ranks: {sorted(ranks)}")


def buchberger(gens: Sequence, order: WeightOrder, *, homogenize_input=None,
               comp_degrees=None, max_pairs=20000, track=False,
               reduced=True) -> GroebnerBasis:
    """Groebner basis of the left module generated by ``gens``.

    Orders with negative weights are handled through the homogenized Weyl
    algebra; ``comp_degrees`` are the total-degree shifts used to homogenize
    the components (zeros by default).
    """
    if not order.admissible:
        raise ValueError(f"inadmissible order: u+v has a negative component "
                         f"(u={order.u}, v={order.v})")
    vecs = [as_vector(g) for g in gens]
    if not vecs:
        raise ValueError("need at least one generator")
    _check_rank(vecs)
    rank = len(vecs[0])
    n = vecs[0][0].n
    if order.shift and len(order.shift) != rank:
        raise ValueError(f"shift vector of length {len(order.shift)} for rank {rank}")
    homog = needs_homogenization(order) if homogenize_input is None else homogenize_input
    comp_degrees = tuple(comp_degrees) if comp_degrees is not None else (0,) * rank
    if homog:
        internal = [homogenize(v, comp_degrees)[0] for v in vecs if any(v)]
    else:
        internal = [to_internal(v) for v in vecs if any(v)]
    return _basis_from_internal(internal, order, rank, n, homog, comp_degrees,
                                max_pairs=max_pairs, track=track, reduced=reduced)


def _basis_from_internal(internal, order, rank, n, homog, comp_degrees,
                         max_pairs=20000, track=False, reduced=True):
    engine = _Engine(n, order, homog)
    basis, cofs = _complete(engine, internal, max_pairs=max_pairs, track=track)
    basis, cofs = _minimalize(engine, basis, cofs if track else None)
    if reduced:
        basis, cofs = _interreduce(engine, basis, cofs, track=track)
    perm = sorted(range(len(basis)), key=lambda k: engine.key(basis[k][0]))
    basis = [basis[k] for k in perm]
    if track:
        cofs = [cofs[k] for k in perm]
    # positive leading coefficients
    for k, (lt, lc, vec) in enumerate(basis):
        if lc < 0:
            basis[k] = (lt, -lc, {key: -c for key, c in vec.items()})
            if track:
                cofs[k] = {key: -c for key, c in cofs[k].items()}
    gens = [dehomogenize(e[2], rank, n, homog) for e in basis]
    return GroebnerBasis(gens, order, rank, n, homog, tuple(comp_degrees),
                         [e[2] for e in basis], cofs if track else None)


def divide(v, basis: GroebnerBasis, max_steps=100000):
    """Division of v by the basis generators inside D.

    Returns ``(normal_form, quotients)`` with
    ``v = sum quotients[i] * basis.generators[i] + normal_form``.
    Terminates whenever the order is a well-order on the monomials met,
    e.g. for term orders or weight-homogeneous input; otherwise the step cap
    raises :class:`GroebnerError`.
    """
    v = as_vector(v)
    _check_rank([v], basis.rank)
    n = basis.n
    engine = _Engine(n, basis.order, False)
    entries, lams = [], []
    for g in basis.generators:
        vec, lam = _scaled_internal(g)
        entries.append(engine.entry(vec) if vec else ((None, ()), 1, {}))
        lams.append(lam)
    vec, lam_v = _scaled_internal(v)
    if not vec:
        return (tuple(WeylOp.zero(n) for _ in range(basis.rank)),
                [WeylOp.zero(n) for _ in entries])
    scale, nf, quot = engine.reduce(vec, entries, track=True, max_steps=max_steps)
    # scale * lam_v * v = sum q_i * lam_i * g_i + nf
    factor = 1 / (scale * lam_v)
    nf_vec = dehomogenize({k: c * factor for k, c in nf.items()}, basis.rank, n, False)
    quotients = [WeylOp(n, {m: c * factor * lams[i] for m, c in q.items()})
                 for i, q in enumerate(quot)]
    return nf_vec, quotients


def normal_form(v, basis: GroebnerBasis, max_steps=100000):
    return divide(v, basis, max_steps=max_steps)[0]


def is_member(v, basis: GroebnerBasis, max_steps=100000) -> bool:
    v = as_vector(v)
    if not any(v):
        return True
    nf, _ = divide(v, basis, max_steps=max_steps)
    return not any(nf)


def vector_initial_form(v, order: WeightOrder) -> ModuleVector:
    """Terms of maximal (u, v)-weight plus shift, across all components."""
    v = as_vector(v)
    top = None
    for k, op in enumerate(v):
        for mono in op.terms_dict:
            wt = order.weight(mono) + order.shift_of(k)
            if top is None or wt > top:
                top = wt
    if top is None:
        raise ValueError("the zero vector has no initial form")
    out = []
    for k, op in enumerate(v):
        out.append(WeylOp(op.n, {m: c for m, c in op.terms_dict.items()
                                 if order.weight(m) + order.shift_of(k) == top}))
    return tuple(out)


def vector_ord(v, order: WeightOrder) -> int:
    v = as_vector(v)
    vals = [order.weight(m) + order.shift_of(k)
            for k, op in enumerate(v) for m in op.terms_dict]
    if not vals:
        raise ValueError("the zero vector has no order")
    return max(vals)


def initial_module(basis: GroebnerBasis) -> list:
    return [vector_initial_form(g, basis.order) for g in basis.generators]


def schreyer_syzygies(basis: GroebnerBasis) -> list[dict]:
    """Syzygies of the (internal) basis vectors from their S-pairs.

    Each returned dict is a vector over ``len(basis)`` components in the same
    algebra as ``basis.internal``.  When the basis is homogenized the
    syzygies are homogeneous for the component degrees
    ``basis_homog_degrees(basis)``.
    """
    n, homog = basis.n, basis.homogenized
    engine = _Engine(n, basis.order, homog)
    entries = [engine.entry(v) for v in basis.internal]
    out = []
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if entries[i][0][0] != entries[j][0][0]:
                continue
            s, (a, t1), (b, t2) = engine.spair(entries[i], entries[j])
            syz = {(i, t1): a}
            syz = kernels.axpy(1, syz, -b, {(j, t2): 1})
            if s:
                scale, nf, quot = engine.reduce(s, entries, track=True)
                if nf:
                    raise GroebnerError("S-vector of a Groebner basis did not reduce to zero")
                syz = {k: c * scale for k, c in syz.items()}
                for k, q in enumerate(quot):
                    for m, c in q.items():
                        val = syz.get((k, m), 0) - c
                        if val:
                            syz[(k, m)] = val
                        else:
                            syz.pop((k, m), None)
            den = 1
            for c in syz.values():
                den = lcm(den, Fraction(c).denominator)
            syz = {k: int(c * den) for k, c in syz.items()}
            out.append(_primitive(syz))
    return out


def basis_homog_degrees(basis: GroebnerBasis) -> list[int]:
    """Total degree of each homogenized basis vector (component shifts included)."""
    degs = []
    for vec in basis.internal:
        (k, mono) = next(iter(vec))
        degs.append(sum(mono) + basis.comp_degrees[k])
    return degs


def syzygies(gens: Sequence, order: WeightOrder, comp_degrees=None, max_pairs=20000) -> list:
    """Generators of the syzygy module of arbitrary generators (as D-vectors).

    Computed through a tracked completion: syzygies of the Groebner basis
    pulled back along the cofactors, plus the relations expressing each
    generator through the basis.
    """
    vecs = [as_vector(g) for g in gens]
    _check_rank(vecs)
    rank = len(vecs[0])
    n = vecs[0][0].n
    m = len(vecs)
    homog = needs_homogenization(order)
    comp_degrees = tuple(comp_degrees) if comp_degrees is not None else (0,) * rank
    if homog:
        hv = [homogenize(v, comp_degrees) if any(v) else ({}, 0) for v in vecs]
        internal = [h for h, _ in hv]
        gen_degs = [d for _, d in hv]
    else:
        internal = [to_internal(v) for v in vecs]
        gen_degs = [0] * m
    engine = _Engine(n, order, homog)
    nonzero = [i for i in range(m) if internal[i]]
    basis, cofs = _complete(engine, [internal[i] for i in nonzero], max_pairs=max_pairs, track=True)
    # cofactor components refer to positions in ``nonzero``
    cofs = [{(nonzero[k], mono): c for (k, mono), c in cof.items()} for cof in cofs]
    gb = GroebnerBasis([dehomogenize(e[2], rank, n, homog) for e in basis], order, rank, n,
                       homog, comp_degrees, [e[2] for e in basis])
    out: list[dict] = []
    for syz in schreyer_syzygies(gb):
        pulled: dict = {}
        for (k, mono), c in syz.items():
            pulled = kernels.axpy(1, pulled, 1, kernels.vec_mono_lmul(c, mono, cofs[k], n, homog))
        if pulled:
            out.append(pulled)
    unit = (0,) * (2 * n + (1 if homog else 0))
    for i in range(m):
        if not internal[i]:
            out.append({(i, unit): 1})
            continue
        scale, nf, quot = engine.reduce(internal[i], basis, track=True)
        if nf:
            raise GroebnerError("generator does not reduce to zero against its own basis")
        rel = {(i, unit): scale}
        for k, q in enumerate(quot):
            if q:
                rel = kernels.axpy(1, rel, -1, kernels.vec_lmul(q, cofs[k], n, homog))
        if rel:
            out.append(rel)
    result = []
    seen = set()
    for vec in out:
        dv = dehomogenize(vec, m, n, homog)
        den = 1
        for op in dv:
            for c in op.terms_dict.values():
                den = lcm(den, c.denominator)
        dv = tuple(op * den for op in dv)
        if any(dv) and dv not in seen:
            seen.add(dv)
            result.append(dv)
    return result
