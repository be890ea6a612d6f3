"""Bases of Ext^d(D/I, O) by truncated linear algebra.

For the slice  D^p[s] --A--> D^q[t] --B--> D^r[u]  of an adapted resolution
(A = psi_{d+1}, B = psi_d), Ext^d is Ker(A.)/Im(B.) on power-series vectors.
In derivative coordinates both maps become block upper-triangular matrices;
the quotient at truncation degree k1 (maximal integral root of the
b-function) already has the right dimension, and every class there extends
degree by degree to a solution of any order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .bfunction import BFunction, compute_b
from .encoding import (
    SeriesSolution,
    TruncatedMatrix,
    boundary_matrix,
    enumerate_positions,
    truncate,
)
from .groebner import as_vector
from .resolution import ShiftedComplex, build_resolution
from .weyl import WeylOp


class SolverError(RuntimeError):
    """A step that cannot fail for a correct adapted resolution did fail."""


@dataclass
class ProblemSpec:
    """Inputs of one Ext computation."""

    w: tuple
    degree: int
    order: int
    generators: list | None = None
    complex: ShiftedComplex | None = None
    bfunction: BFunction | None = None
    tiebreak: str = "lex"
    window_lo: int | None = None
    names: list | None = None
    max_pairs: int = 20000
    max_b_degree: int = 20

    def __post_init__(self):
        self.w = tuple(int(a) for a in self.w)
        if any(a <= 0 for a in self.w):
            raise ValueError(f"weight vector must be positive, got {self.w}")
        if self.degree < 0:
            raise ValueError("cohomological degree must be nonnegative")
        if self.generators is None and self.complex is None:
            raise ValueError("give either generators or a complex")
        if self.generators is not None:
            self.generators = [as_vector(g) for g in self.generators]

    @property
    def n(self) -> int:
        return len(self.w)


@dataclass
class Slice:
    """D^p[s] --A--> D^q[t] --B--> D^r[u]; A is p x q, B is q x r."""

    A: list
    B: list
    s: tuple
    t: tuple
    u: tuple
    w: tuple
    tiebreak: str = "lex"
    n: int = 0

    @property
    def p(self) -> int:
        return len(self.s)

    @property
    def q(self) -> int:
        return len(self.t)

    @property
    def r(self) -> int:
        return len(self.u)

    def matrices(self, lo: int, m: int) -> tuple[TruncatedMatrix, TruncatedMatrix]:
        """tau_m(A-bar^T) (q-positions x p-positions) and tau_m(B-bar^T)."""
        qe = enumerate_positions(self.q, self.t, self.w, (lo, m), self.tiebreak)
        pe = enumerate_positions(self.p, self.s, self.w, (lo, m), self.tiebreak)
        re = enumerate_positions(self.r, self.u, self.w, (lo, m), self.tiebreak)
        return boundary_matrix(self.A, qe, pe), boundary_matrix(self.B, re, qe)


@dataclass
class ExtBasis:
    dimension: int
    solutions: list
    k0: int | None
    k1: int | None
    bfunction: BFunction | None
    slice: Slice | None = None
    window: tuple | None = None
    order: int = 0
    diagnostics: dict = field(default_factory=dict)


def select_slice(cx: ShiftedComplex, d: int) -> Slice | None:
    """The slice with A = psi_{d+1}, B = psi_d, or None when Ext^d vanishes."""
    if d < 0:
        raise ValueError("cohomological degree must be nonnegative")
    if d > cx.length:
        return None
    t = cx.shifts[d]
    A = cx.psi(d + 1) or []
    s = cx.shifts[d + 1] if d + 1 <= cx.length else ()
    if d >= 1:
        B = cx.psi(d)
        u = cx.shifts[d - 1]
    else:
        B, u = [[] for _ in t], ()
    return Slice(A, B, tuple(s), tuple(t), tuple(u), cx.weight, cx.tiebreak, cx.n)


def window_lower(k0: int | None, override: int | None = None) -> int:
    if override is not None:
        return override
    return min(0, k0) if k0 is not None else 0


def seed_basis(sl: Slice, k0: int, k1: int, lo: int | None = None) -> list[tuple]:
    """Canonical basis of Ker tau_k1(A^T) / Im tau_k1(B^T) (orthogonal to the image)."""
    lo = window_lower(k0, lo)
    Abar, Bbar = sl.matrices(lo, k1)
    return _quotient(Abar, Bbar)


def _quotient(Abar: TruncatedMatrix, Bbar: TruncatedMatrix) -> list[tuple]:
    nq = len(Abar.rows)
    ker = linalg.kernel_basis(Abar.as_lists(), nq, len(Abar.cols))
    im = linalg.image_basis(Bbar.as_lists(), nq)
    return linalg.quotient_basis(ker, im)


def quotient_dimension(sl: Slice, lo: int, m: int) -> int:
    Abar, Bbar = sl.matrices(lo, m)
    nq = len(Abar.rows)
    nullity = nq - (linalg.rank(Abar.as_lists(), len(Abar.cols)) if Abar.cols.positions else 0)
    rank_b = linalg.rank(Bbar.as_lists(), nq) if Bbar.rows.positions else 0
    return nullity - rank_b


def extend_once(Abar: TruncatedMatrix, coords: Sequence, m: int,
                particular: Callable | None = None) -> tuple:
    """Extend ``coords`` in Ker tau_m(A^T) to Ker tau_{m'}(A^T), m' = next degree.

    ``Abar`` must be built on a window whose top is at least m + 1; only its
    rows/columns of degree <= m + 1 are used.  Solves
    c' A22 = -c A21 with the given particular-solution routine
    (minimum norm by default).
    """
    particular = particular or linalg.solve_affine
    rows, cols = Abar.rows, Abar.cols
    nc = rows.count_upto(m)
    if len(coords) != nc:
        raise ValueError(f"{len(coords)} coordinates but {nc} positions of degree <= {m}")
    c_old = cols.count_upto(m)
    residual = linalg.vecmat(coords, [row[:c_old] for row in Abar.entries[:nc]], c_old)
    if any(residual):
        raise ValueError(f"coordinates are not in the kernel of the degree-{m} truncation")
    r_new = rows.block(m + 1)
    c_new = cols.block(m + 1)
    if not r_new:
        return tuple(coords)
    if not c_new:
        return tuple(coords) + (Fraction(0),) * len(r_new)
    A21 = [[Abar.entries[i][j] for j in c_new] for i in range(nc)]
    A22 = [[Abar.entries[i][j] for j in c_new] for i in r_new]
    rhs = [-x for x in linalg.vecmat(coords, A21, len(c_new))]
    try:
        cprime = particular(A22, rhs, len(r_new))
    except linalg.InconsistentSystemError as exc:
        raise SolverError(
            f"extension from degree {m} to {m + 1} has no solution "
            f"(A22 is {len(r_new)}x{len(c_new)}); k1 or the window is wrong") from exc
    return tuple(coords) + tuple(cprime)


def _resolution_for(spec: ProblemSpec) -> ShiftedComplex:
    if spec.complex is not None:
        return spec.complex
    return build_resolution(spec.generators, spec.w, spec.degree + 1, spec.tiebreak,
                            max_pairs=spec.max_pairs)


def _bfunction_for(spec: ProblemSpec, cx: ShiftedComplex) -> BFunction:
    if spec.bfunction is not None:
        return spec.bfunction
    if spec.generators is not None:
        gens = spec.generators
    else:
        gens = [tuple(row) for row in cx.psi(1)]
    return compute_b(gens, spec.w, spec.tiebreak, max_degree=spec.max_b_degree,
                     max_pairs=spec.max_pairs)


def solve_ext(spec: ProblemSpec, particular: Callable | None = None,
              extend: bool = True) -> ExtBasis:
    """Basis of Ext^d(M, O) as truncated series up to degree ``spec.order``."""
    cx = _resolution_for(spec)
    b = _bfunction_for(spec, cx)
    k0, k1 = b.k0, b.k1
    sl = select_slice(cx, spec.degree)
    if sl is None or k1 is None or sl.q == 0:
        return ExtBasis(0, [], k0, k1, b, sl, None, spec.order,
                        {"reason": "no integral roots" if k1 is None else "zero module"})
    if extend and spec.order < k1:
        raise ValueError(f"order {spec.order} is below k1 = {k1}")
    lo = window_lower(k0, spec.window_lo)
    if lo > k1:
        raise ValueError(f"window lower bound {lo} is above k1 = {k1}")
    top = spec.order if extend else k1
    Abar, Bbar = sl.matrices(lo, top)
    diagnostics = {"A_shape": Abar.shape, "B_shape": Bbar.shape}
    A_seed = truncate(Abar, k1)
    B_seed = truncate(Bbar, k1)
    seeds = _quotient(A_seed, B_seed)
    diagnostics["seed_shapes"] = (A_seed.shape, B_seed.shape)
    solutions = []
    for seed in seeds:
        coords = tuple(seed)
        m = k1
        while m < top:
            coords = extend_once(Abar, coords, m, particular)
            m += 1
        solutions.append(SeriesSolution(Abar.rows, coords, top))
    return ExtBasis(len(seeds), solutions, k0, k1, b, sl, (lo, top), top, diagnostics)


def dim_ext(spec: ProblemSpec) -> int:
    """Dimension of Ext^d from the degree-k1 quotient."""
    return solve_ext(spec, extend=False).dimension


def apply_operator_matrix(A: Sequence[Sequence[WeylOp]], polys: Sequence[dict]) -> list[dict]:
    """(A . f)_j = sum_l A[j][l] . f_l on polynomials ``{alpha: coeff}``."""
    out = []
    for row in A:
        acc: dict = {}
        for op, f in zip(row, polys):
            for mono, c in op.terms_dict.items():
                n = op.n
                a, b = mono[:n], mono[n:]
                for gamma, fc in f.items():
                    if any(g < bb for g, bb in zip(gamma, b)):
                        continue
                    coef = c * fc
                    for g, bb in zip(gamma, b):
                        for t in range(bb):
                            coef *= g - t
                    new = tuple(g - bb + aa for g, bb, aa in zip(gamma, b, a))
                    val = acc.get(new, 0) + coef
                    if val:
                        acc[new] = val
                    else:
                        acc.pop(new, None)
        out.append(acc)
    return out


def residual_check(sl: Slice, solution: SeriesSolution) -> bool:
    """A . f vanishes at every position of degree <= the solution order."""
    N = solution.order
    polys = solution.component_polynomials()
    result = apply_operator_matrix(sl.A, polys)
    for j, poly in enumerate(result):
        for alpha, c in poly.items():
            deg = sum(a * b for a, b in zip(sl.w, alpha)) + sl.s[j]
            if deg <= N and c:
                return False
    return True
