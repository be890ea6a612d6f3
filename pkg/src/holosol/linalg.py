"""Exact rational linear algebra with the row-vector convention ``c -> c*M``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels


class InconsistentSystemError(ArithmeticError):
    """The affine system has no solution."""


def _frac_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]


def _to_int_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            x = Fraction(x)
            if x:
                den = lcm(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in r])
    return out


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (pivots 1) of the nonzero row space."""
    ech, pivots = kernels.int_rref(_to_int_rows(rows), ncols)
    out = []
    for row, p in zip(ech, pivots):
        pv = row[p]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots


def transpose(M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], inner: int | None = None,
           ncols: int | None = None) -> list[list[Fraction]]:
    if ncols is None:
        ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [Fraction(0)] * ncols
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(ncols):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def vecmat(v: Sequence, M: Sequence[Sequence], ncols: int) -> list[Fraction]:
    return matmul([v], M, ncols=ncols)[0] if M else [Fraction(0)] * ncols


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v) if a and b), Fraction(0))


def rank(M: Sequence[Sequence], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return len(kernels.int_rref(_to_int_rows(M), ncols)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^dim stored by its canonical (RREF) basis."""

    dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Sequence[Sequence], dim: int) -> Subspace:
        for v in vectors:
            if len(v) != dim:
                raise ValueError(f"vector of length {len(v)} in a space of dimension {dim}")
        rows, _ = rref(vectors, dim)
        return cls(dim, tuple(tuple(r) for r in rows))

    @classmethod
    def full(cls, dim: int) -> Subspace:
        return cls(dim, tuple(tuple(Fraction(int(i == j)) for j in range(dim))
                              for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return coset_contains(self, v)


def kernel_basis(M: Sequence[Sequence], nrows: int | None = None,
                 ncols: int | None = None) -> Subspace:
    """Left null space ``{c : c*M = 0}`` of an nrows x ncols matrix."""
    if nrows is None:
        nrows = len(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if ncols == 0 or nrows == 0:
        return Subspace.full(nrows)
    Mt = transpose(M)
    rows, pivots = rref(Mt, nrows)
    pivset = set(pivots)
    vecs = []
    for f in range(nrows):
        if f in pivset:
            continue
        v = [Fraction(0)] * nrows
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, nrows)


def image_basis(M: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Row space ``{g*M}`` of M."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return Subspace.span(M, ncols)


def coset_contains(space: Subspace, v: Sequence) -> bool:
    """True iff v lies in the span of ``space``."""
    if len(v) != space.dim:
        raise ValueError(f"vector of length {len(v)} in a space of dimension {space.dim}")
    if not any(v):
        return True
    return rank(list(space.basis) + [list(v)], space.dim) == space.rank


def contains_subspace(big: Subspace, small: Subspace) -> bool:
    return all(coset_contains(big, v) for v in small.basis)


def quotient_basis(ker: Subspace, im: Subspace) -> list[tuple]:
    """Canonical basis of ``ker`` intersected with the orthogonal complement of ``im``.

    Its span is a complement of ``im`` inside ``ker`` (for ``im`` a subspace of
    ``ker``), so it represents ``ker / im``.
    """
    if ker.dim != im.dim:
        raise ValueError("subspaces live in different ambient spaces")
    if not contains_subspace(ker, im):
        raise ValueError("image is not contained in the kernel (broken complex)")
    if not ker.basis:
        return []
    if not im.basis:
        return list(ker.basis)
    # coefficients a with (a*K) . m_j = 0 for every image vector m_j
    gram = [[dot(k, m) for m in im.basis] for k in ker.basis]
    sol = kernel_basis(gram, len(ker.basis), len(im.basis))
    vecs = [vecmat(a, list(ker.basis), ker.dim) for a in sol.basis]
    return list(Subspace.span(vecs, ker.dim).basis)


def solve_affine(A: Sequence[Sequence], rhs: Sequence, nrows: int | None = None) -> list[Fraction]:
    """Minimum-norm x with ``x*A = rhs``.

    The minimum-norm solution is the one lying in the column space of A;
    writing ``x = y*C`` with C a basis of independent columns of A (as rows)
    leaves a full-rank system for y.
    """
    if nrows is None:
        nrows = len(A)
    ncols = len(rhs)
    rhs = [Fraction(b) for b in rhs]
    if nrows == 0:
        if any(rhs):
            raise InconsistentSystemError("no unknowns but a nonzero right-hand side")
        return []
    if ncols == 0:
        return [Fraction(0)] * nrows
    A = _frac_rows(A)
    _, pivots = rref(A, ncols)
    if not pivots:
        if any(rhs):
            raise InconsistentSystemError("x*0 = rhs with rhs nonzero")
        return [Fraction(0)] * nrows
    C = [[A[i][p] for i in range(nrows)] for p in pivots]  # r x nrows
    CA = matmul(C, A, ncols=ncols)  # r x ncols
    r = len(C)
    # y * CA = rhs  <=>  CA^T y^T = rhs^T; solve by elimination on the augmented system
    aug = [[CA[i][j] for i in range(r)] + [rhs[j]] for j in range(ncols)]
    red, piv2 = rref(aug, r + 1)
    if r in piv2:
        raise InconsistentSystemError("affine system x*A = rhs is inconsistent")
    y = [Fraction(0)] * r
    for row, p in zip(red, piv2):
        y[p] = row[r]
    x = vecmat(y, C, nrows)
    if vecmat(x, A, ncols) != rhs:
        raise InconsistentSystemError("affine system x*A = rhs is inconsistent")
    return x


def nullity(M: Sequence[Sequence], nrows: int, ncols: int) -> int:
    return nrows - (rank(M, ncols) if nrows and ncols else 0)
