"""b-functions of D/I (or D^r/J) for the weight (-w, w).

The b-function is the monic generator of in_(-w,w)(I) intersected with
Q[s], s = sum_i w_i x_i d_i.  It is found by linear algebra: normal forms of
1, s, s^2, ... against a Groebner basis of the initial ideal are searched for
the first linear dependency.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from . import linalg
from .groebner import as_vector, buchberger, divide, vector_initial_form
from .weyl import WeightOrder, WeylOp, euler_operator, format_rational


class BFunctionError(RuntimeError):
    """No b-function up to the degree cap."""


@dataclass(frozen=True)
class BFunction:
    """Monic univariate polynomial in s; ``coeffs[k]`` multiplies s^k."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            raise ValueError("the b-function must be nonzero")
        lead = coeffs[-1]
        object.__setattr__(self, "coeffs", tuple(c / lead for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, s) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * s + c
        return out

    @property
    def integral_roots(self) -> list[int]:
        return integer_roots(self.coeffs)

    @property
    def k0(self) -> int | None:
        roots = self.integral_roots
        return roots[0] if roots else None

    @property
    def k1(self) -> int | None:
        roots = self.integral_roots
        return roots[-1] if roots else None

    def as_operator(self, w: Sequence[int]) -> WeylOp:
        """b(s) with s replaced by the weighted Euler operator, normally ordered."""
        s = euler_operator(w)
        out = WeylOp.zero(len(w))
        power = WeylOp.const(1, len(w))
        for c in self.coeffs:
            if c:
                out = out + power * c
            power = power * s
        return out

    def __str__(self):
        return format_polynomial_in_s(self.coeffs)


def format_polynomial_in_s(coeffs: Sequence[Fraction]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if not c:
            continue
        body = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
        mag = abs(c)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if not parts:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append((" - " if c < 0 else " + ") + text)
    return "".join(parts) if parts else "0"


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
    return small + large[::-1]


def integer_roots(coeffs: Sequence) -> list[int]:
    """Sorted distinct integer roots of sum coeffs[k] s^k (rational-root test)."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and not ints[-1]:
        ints.pop()
    if not ints:
        raise ValueError("zero polynomial")
    roots = []
    low = 0
    while not ints[low]:
        low += 1
    if low:
        roots.append(0)
    trimmed = ints[low:]
    if len(trimmed) > 1:
        for d in _divisors(trimmed[0]):
            for cand in (d, -d):
                val = 0
                for c in reversed(trimmed):
                    val = val * cand + c
                if val == 0:
                    roots.append(cand)
    return sorted(set(roots))


def integral_roots(b: BFunction) -> tuple[int | None, int | None]:
    return b.k0, b.k1


def initial_ideal_basis(gens: Sequence, w: Sequence[int], tiebreak: str = "lex",
                        max_pairs: int = 20000):
    """Groebner basis of in_(-w,w) of the module generated by ``gens``."""
    vecs = [as_vector(g) for g in gens]
    rank = len(vecs[0])
    order = WeightOrder.from_weight(w, (0,) * rank, tiebreak)
    gb = buchberger(vecs, order, max_pairs=max_pairs)
    initials = [vector_initial_form(g, order) for g in gb.generators]
    return buchberger(initials, order, max_pairs=max_pairs)


def _minimal_polynomial(s: WeylOp, component: int, rank: int, gb, max_degree: int):
    """Monic coefficients of the least b with b(s) e_component in the module."""
    n = s.n
    power = WeylOp.const(1, n)
    columns: list[dict] = []
    for deg in range(max_degree + 1):
        vec = tuple(power if k == component else WeylOp.zero(n) for k in range(rank))
        nf, _ = divide(vec, gb)
        column = {(k, mono): c for k, op in enumerate(nf) for mono, c in op.terms_dict.items()}
        previous = columns
        columns = columns + [column]
        if not previous:
            if not column:
                return (Fraction(1),)
            power = power * s
            continue
        # the earlier normal forms are independent, so a solution is unique
        keys = sorted({key for col in columns for key in col})
        A = [[col.get(key, Fraction(0)) for key in keys] for col in previous]
        rhs = [-column.get(key, Fraction(0)) for key in keys]
        try:
            a = linalg.solve_affine(A, rhs, nrows=len(A))
        except linalg.InconsistentSystemError:
            power = power * s
            continue
        return tuple(a) + (Fraction(1),)
    raise BFunctionError(f"no b-function found up to degree {max_degree}")


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_divmod(num, den):
    num = list(num)
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        quot[shift] = f
        for i, c in enumerate(den):
            num[shift + i] -= f * c
        num.pop()
        while num and not num[-1]:
            num.pop()
    return quot, num


def _poly_gcd(p, q):
    a, b = list(p), list(q)
    while b and any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _poly_lcm(p, q):
    g = _poly_gcd(p, q)
    prod = _poly_mul(p, q)
    quot, _ = _poly_divmod(prod, g)
    while len(quot) > 1 and not quot[-1]:
        quot.pop()
    return quot


def compute_b(gens: Sequence, w: Sequence[int], tiebreak: str = "lex",
              max_degree: int = 20, max_pairs: int = 20000) -> BFunction:
    """b-function of D^r/J for the weight (-w, w).

    For r > 1 this is the least common multiple of the per-component
    polynomials b_i with b_i(s) e_i in in_(-w,w)(J).
    """
    w = tuple(int(a) for a in w)
    if any(a <= 0 for a in w):
        raise ValueError(f"weight vector must be positive, got {w}")
    vecs = [as_vector(g) for g in gens]
    if not vecs:
        raise ValueError("need at least one generator")
    rank = len(vecs[0])
    gb = initial_ideal_basis(vecs, w, tiebreak, max_pairs=max_pairs)
    s = euler_operator(w)
    result = [Fraction(1)]
    for comp in range(rank):
        b = _minimal_polynomial(s, comp, rank, gb, max_degree)
        result = _poly_lcm(result, list(b))
    return BFunction(tuple(result))
