"""Free resolutions of D^r/J adapted to the weight (-w, w).

``maps[i-1]`` is the operator matrix of psi_i : D^{b_i}[m_i] -> D^{b_{i-1}}[m_{i-1}]
acting on row vectors (b_i rows, b_{i-1} columns); ``shifts[i]`` is m_i.
Each level is a Groebner basis (for (-w, w) with the inherited shifts) of the
syzygies of the previous level, obtained from S-pairs as in Schreyer's
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import (
    GroebnerBasis,
    _basis_from_internal,
    as_vector,
    basis_homog_degrees,
    buchberger,
    dehomogenize,
    is_member,
    needs_homogenization,
    schreyer_syzygies,
    syzygies,
    vector_initial_form,
    vector_ord,
)
from .weyl import WeightOrder, WeylOp


class ResolutionError(RuntimeError):
    pass


@dataclass
class ShiftedComplex:
    """A chain of operator matrices with degree-shift vectors."""

    maps: list
    shifts: list
    weight: tuple
    tiebreak: str = "lex"
    n: int = field(default=0)

    def __post_init__(self):
        self.weight = tuple(int(a) for a in self.weight)
        self.shifts = [tuple(int(a) for a in s) for s in self.shifts]
        self.maps = [[list(row) for row in m] for m in self.maps]
        if not self.n:
            self.n = len(self.weight)
        if len(self.shifts) != len(self.maps) + 1:
            raise ValueError(f"{len(self.maps)} maps need {len(self.maps) + 1} shift vectors, "
                             f"got {len(self.shifts)}")
        for i, m in enumerate(self.maps, start=1):
            rows, cols = len(self.shifts[i]), len(self.shifts[i - 1])
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"psi_{i} should be {rows} x {cols} to match the shifts")

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> list[int]:
        return [len(s) for s in self.shifts]

    def psi(self, i: int):
        """psi_i for 1 <= i <= length, else None."""
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        return None

    def order(self, level: int) -> WeightOrder:
        """(-w, w) order with the shifts of D^{b_level}."""
        return WeightOrder.from_weight(self.weight, self.shifts[level], self.tiebreak)


def matrix_product(P: Sequence[Sequence[WeylOp]], Q: Sequence[Sequence[WeylOp]], n: int):
    """Product of operator matrices (rows of P times Q)."""
    inner = len(Q)
    ncols = len(Q[0]) if Q else 0
    out = []
    for row in P:
        if len(row) != inner:
            raise ValueError("operator matrices do not compose")
        acc = []
        for j in range(ncols):
            total = WeylOp.zero(n)
            for k in range(inner):
                if row[k] and Q[k][j]:
                    total = total + row[k] * Q[k][j]
            acc.append(total)
        out.append(acc)
    return out


def is_complex(cx: ShiftedComplex) -> bool:
    """psi_{i+1} * psi_i == 0 for every consecutive pair."""
    for i in range(1, cx.length):
        prod = matrix_product(cx.maps[i], cx.maps[i - 1], cx.n)
        if any(op for row in prod for op in row):
            return False
    return True


def _shifts_of(rows, order: WeightOrder) -> tuple:
    return tuple(vector_ord(r, order) for r in rows)


def schreyer_step(basis: GroebnerBasis):
    """Syzygies of a Groebner basis from its S-pairs, with their shifts.

    The shift of the basis element g_i is ord(g_i) under the basis order;
    each syzygy gets its order with respect to those shifts.  Returns
    ``(syzygy vectors, basis shifts, syzygy shifts)``.
    """
    n = basis.n
    raw = schreyer_syzygies(basis)
    base_shifts = _shifts_of(basis.generators, basis.order)
    order = WeightOrder(basis.order.u, basis.order.v, base_shifts, basis.order.tiebreak)
    vecs = [dehomogenize(v, len(basis), n, basis.homogenized) for v in raw]
    vecs = [v for v in vecs if any(v)]
    return vecs, base_shifts, tuple(vector_ord(v, order) for v in vecs)


def build_resolution(gens: Sequence, w: Sequence[int], length: int,
                     tiebreak: str = "lex", max_pairs: int = 20000) -> ShiftedComplex:
    """Adapted resolution of D^r/J up to ``length`` maps (fewer if it stops)."""
    if length < 1:
        raise ValueError("length must be at least 1")
    vecs = [as_vector(g) for g in gens]
    if not vecs:
        raise ValueError("need at least one generator")
    rank = len(vecs[0])
    n = vecs[0][0].n
    shifts = [(0,) * rank]
    order = WeightOrder.from_weight(w, shifts[0], tiebreak)
    try:
        gb = buchberger(vecs, order, max_pairs=max_pairs)
    except RuntimeError as exc:
        raise ResolutionError(f"level 1: {exc}") from exc
    maps = [[list(g) for g in gb.generators]]
    shifts.append(_shifts_of(gb.generators, order))
    homog = needs_homogenization(order)
    while len(maps) < length:
        raw = schreyer_syzygies(gb)
        raw = [v for v in raw if v]
        if not raw:
            break
        level_order = WeightOrder.from_weight(w, shifts[-1], tiebreak)
        degs = basis_homog_degrees(gb) if homog else [0] * len(gb)
        try:
            gb = _basis_from_internal(raw, level_order, len(gb), n, homog, degs,
                                      max_pairs=max_pairs)
        except RuntimeError as exc:
            raise ResolutionError(f"level {len(maps) + 1}: {exc}") from exc
        if not gb.generators:
            break
        maps.append([list(g) for g in gb.generators])
        shifts.append(_shifts_of(gb.generators, level_order))
    return ShiftedComplex(maps, shifts, tuple(w), tiebreak, n)


def _term_order_basis(rows, n: int, rank: int):
    order = WeightOrder.term_order(n, "deglex", rank)
    return buchberger(rows, order)


def verify_adapted(cx: ShiftedComplex, at: int) -> bool:
    """Adaptedness of the complex at the object D^{b_at}[m_at].

    (1) the rows of psi_{at+1} generate the syzygies of the rows of psi_at;
    (2) their (-w, w)[m_at]-initial forms generate the initial module of
        those syzygies.
    """
    if not 1 <= at <= cx.length:
        raise ValueError(f"object index {at} outside 1..{cx.length}")
    n = cx.n
    outgoing = cx.psi(at)
    incoming = cx.psi(at + 1) or []
    rank = len(cx.shifts[at])
    src_order = cx.order(at - 1)
    here = cx.order(at)
    if incoming:
        prod = matrix_product(incoming, outgoing, n)
        if any(op for row in prod for op in row):
            return False
    kernel = syzygies([tuple(r) for r in outgoing], src_order)
    if not kernel:
        return True
    if not incoming:
        return False
    rows = [tuple(r) for r in incoming if any(r)]
    gb_rows = _term_order_basis(rows, n, rank)
    if not all(is_member(v, gb_rows) for v in kernel):
        return False
    kernel_gb = buchberger(kernel, here)
    init_kernel = [vector_initial_form(g, here) for g in kernel_gb.generators]
    init_rows = [vector_initial_form(r, here) for r in rows]
    gb_init = _term_order_basis(init_rows, n, rank)
    return all(is_member(v, gb_init) for v in init_kernel)
