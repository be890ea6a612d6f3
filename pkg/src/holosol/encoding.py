"""Coordinates on truncated power-series modules and the induced matrices.

A vector ``f = sum c[i, a] / a! x^a e_i`` of formal power series is encoded
by its derivative coordinates ``c[i, a] = f_i^(a)(0)``.  Positions ``(i, a)``
carry the degree ``w.a + s_i`` and are sorted by degree, then component, then
exponent (descending in the tie-break order).  An operator matrix A (p x q,
acting on row vectors) induces the matrix with entry

    row (l, k), column (j, i):  coefficient of d^k in (d^i A[j][l])|_{x=0},

which sends derivative coordinates of f to those of ``A . f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import NamedTuple, Sequence

from .weyl import WeylOp, d_power_at_zero, default_names, format_rational, tiebreak_key


class Position(NamedTuple):
    component: int
    alpha: tuple
    degree: int

    def label(self) -> list[int]:
        return [self.component, *self.alpha]


def position_degree(alpha: Sequence[int], component: int, w: Sequence[int],
                    shifts: Sequence[int]) -> int:
    """Degree ``w.alpha + s_i`` of the basis element e_i x^alpha."""
    return sum(a * b for a, b in zip(w, alpha)) + shifts[component]


def _exponents_up_to(w: Sequence[int], bound: int):
    """All alpha in N^n with w.alpha <= bound (w > 0)."""
    n = len(w)
    if bound < 0:
        return
    alpha = [0] * n

    def rec(i, budget):
        if i == n:
            yield tuple(alpha)
            return
        k = 0
        while k * w[i] <= budget:
            alpha[i] = k
            yield from rec(i + 1, budget - k * w[i])
            k += 1
        alpha[i] = 0

    yield from rec(0, bound)


@dataclass(frozen=True)
class Enumeration:
    """Sorted positions of a free module O^r[s] with degree in [lo, hi]."""

    rank: int
    shifts: tuple
    weight: tuple
    lo: int
    hi: int
    tiebreak: str = "lex"
    positions: tuple = ()
    index: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def labels(self) -> list[list[int]]:
        return [p.label() for p in self.positions]

    def count_upto(self, m: int) -> int:
        """Number of positions of degree <= m (a prefix, by the sort order)."""
        k = 0
        for p in self.positions:
            if p.degree > m:
                break
            k += 1
        return k

    def block(self, deg: int) -> range:
        start = self.count_upto(deg - 1)
        return range(start, self.count_upto(deg))

    def degrees(self) -> list[int]:
        return sorted({p.degree for p in self.positions})

    def position_index(self, component: int, alpha) -> int:
        return self.index[(component, tuple(alpha))]


def enumerate_positions(r: int, shifts: Sequence[int], w: Sequence[int],
                        window: tuple[int, int], tiebreak: str = "lex") -> Enumeration:
    lo, hi = window
    w = tuple(int(a) for a in w)
    shifts = tuple(int(s) for s in shifts)
    if any(a <= 0 for a in w):
        raise ValueError(f"weight vector must be positive, got {w}")
    if len(shifts) != r:
        raise ValueError(f"{len(shifts)} shifts for rank {r}")
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    found = []
    for i in range(r):
        for alpha in _exponents_up_to(w, hi - shifts[i]):
            deg = position_degree(alpha, i, w, shifts)
            if deg >= lo:
                found.append(Position(i, alpha, deg))
    found.sort(key=lambda p: tiebreak_key(p.alpha, tiebreak), reverse=True)
    found.sort(key=lambda p: (p.degree, p.component))
    positions = tuple(found)
    index = {(p.component, p.alpha): k for k, p in enumerate(positions)}
    return Enumeration(r, shifts, w, lo, hi, tiebreak, positions, index)


def truncate_enumeration(enum: Enumeration, m: int) -> Enumeration:
    if not enum.lo <= m <= enum.hi:
        raise ValueError(f"truncation degree {m} outside the window [{enum.lo}, {enum.hi}]")
    k = enum.count_upto(m)
    positions = enum.positions[:k]
    index = {(p.component, p.alpha): i for i, p in enumerate(positions)}
    return Enumeration(enum.rank, enum.shifts, enum.weight, enum.lo, m, enum.tiebreak,
                       positions, index)


def truncate_map(enum: Enumeration, m: int):
    """The projection tau_{m', m} on coordinate vectors of ``enum``."""
    target = truncate_enumeration(enum, m)
    k = len(target)

    def project(coords):
        if len(coords) != len(enum):
            raise ValueError("coordinate vector does not match the enumeration")
        return tuple(coords[:k])

    project.source = enum
    project.target = target
    return project


@dataclass(frozen=True)
class TruncatedMatrix:
    """A block upper-triangular rational matrix acting on row vectors."""

    rows: Enumeration
    cols: Enumeration
    entries: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, p: int, q: int) -> Fraction:
        return self.entries[p][q]

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def is_block_upper_triangular(self) -> bool:
        for i, p in enumerate(self.rows.positions):
            for j, q in enumerate(self.cols.positions):
                if q.degree < p.degree and self.entries[i][j]:
                    return False
        return True


def boundary_matrix(opmat: Sequence[Sequence[WeylOp]], rows: Enumeration,
                    cols: Enumeration) -> TruncatedMatrix:
    """Matrix of ``f -> A . f`` in derivative coordinates.

    ``opmat`` is p x q (p = cols.rank, q = rows.rank).  Entries of degree
    outside the row window are dropped, which is exact below the window
    when the operator matrix respects the shifts.
    """
    p, q = cols.rank, rows.rank
    if len(opmat) != p or any(len(r) != q for r in opmat):
        shape = (len(opmat), len(opmat[0]) if opmat else 0)
        raise ValueError(f"operator matrix of shape {shape} does not match "
                         f"ranks (p={p}, q={q}) of the enumerations")
    if rows.weight != cols.weight:
        raise ValueError("enumerations use different weight vectors")
    entries = [[Fraction(0)] * len(cols) for _ in range(len(rows))]
    for cidx, pos in enumerate(cols.positions):
        j, i = pos.component, pos.alpha
        for ell in range(q):
            op = opmat[j][ell]
            if op.is_zero():
                continue
            for k, c in d_power_at_zero(i, op).items():
                ridx = rows.index.get((ell, k))
                if ridx is not None:
                    entries[ridx][cidx] += c
    return TruncatedMatrix(rows, cols, tuple(tuple(r) for r in entries))


def truncate(M: TruncatedMatrix, m: int) -> TruncatedMatrix:
    """Leading block of M on positions of degree <= m (rows and columns)."""
    if not (M.rows.lo <= m <= M.rows.hi and M.cols.lo <= m <= M.cols.hi):
        raise ValueError(f"truncation degree {m} outside the matrix window")
    rows = truncate_enumeration(M.rows, m)
    cols = truncate_enumeration(M.cols, m)
    nr, nc = len(rows), len(cols)
    return TruncatedMatrix(rows, cols, tuple(tuple(r[:nc]) for r in M.entries[:nr]))


# -------------------------------------------------------------------- series

def alpha_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


@dataclass(frozen=True)
class SeriesSolution:
    """Truncated vector of power series in derivative coordinates."""

    enumeration: Enumeration
    coords: tuple
    order: int

    def records(self) -> list[dict]:
        out = []
        for pos, c in zip(self.enumeration.positions, self.coords):
            out.append({
                "component": pos.component,
                "exponent": list(pos.alpha),
                "derivative_coord": Fraction(c),
                "monomial_coeff": Fraction(c) / alpha_factorial(pos.alpha),
            })
        return out

    def monomial_coefficients(self) -> dict:
        """``{(component, alpha): c / alpha!}`` for the nonzero coordinates."""
        return sigma(self.coords, self.enumeration)

    def component_polynomials(self) -> list[dict]:
        polys: list[dict] = [{} for _ in range(self.enumeration.rank)]
        for (i, alpha), c in self.monomial_coefficients().items():
            polys[i][alpha] = c
        return polys

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_series(self.coords, self.enumeration, names)


def sigma(coords: Sequence, enumeration: Enumeration) -> dict:
    """Decode derivative coordinates to monomial coefficients c / alpha!."""
    if len(coords) != len(enumeration):
        raise ValueError(f"{len(coords)} coordinates for {len(enumeration)} positions")
    out = {}
    for pos, c in zip(enumeration.positions, coords):
        c = Fraction(c)
        if c:
            out[(pos.component, pos.alpha)] = c / alpha_factorial(pos.alpha)
    return out


def sigma_inv(series: dict, enumeration: Enumeration) -> tuple:
    """Encode ``{(component, alpha): monomial coefficient}`` as coordinates."""
    coords = [Fraction(0)] * len(enumeration)
    for (i, alpha), c in series.items():
        alpha = tuple(alpha)
        idx = enumeration.index.get((i, alpha))
        if idx is None:
            if Fraction(c):
                raise ValueError(f"position {[i, *alpha]} is not in the enumeration")
            continue
        coords[idx] = Fraction(c) * alpha_factorial(alpha)
    return tuple(coords)


def _format_monomial(alpha, names) -> str:
    parts = []
    for name, e in zip(names, alpha):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(poly: dict, names: Sequence[str], order_key=None) -> str:
    if not poly:
        return "0"
    keys = list(poly)
    if order_key is not None:
        keys.sort(key=order_key)
    out = []
    for alpha in keys:
        c = poly[alpha]
        body = _format_monomial(alpha, names)
        mag = abs(c)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


def format_series(coords: Sequence, enumeration: Enumeration,
                  names: Sequence[str] | None = None) -> str:
    """``(f_0, f_1, ...)`` with monomial coefficients, in enumeration order."""
    n = len(enumeration.weight)
    if names is None:
        names = default_names(n)
    polys: list[dict] = [{} for _ in range(enumeration.rank)]
    for pos, c in zip(enumeration.positions, coords):
        c = Fraction(c)
        if c:
            polys[pos.component][pos.alpha] = c / alpha_factorial(pos.alpha)
    parts = [format_polynomial(p, names) for p in polys]
    return "(" + ", ".join(parts) + ")"
