"""Exact arithmetic in the Weyl algebra D = Q<x_1..x_n, d_1..d_n>.

Operators are stored normally ordered (all x's left of all d's) as a map from
flat exponent tuples ``(a_1..a_n, b_1..b_n)`` to ``Fraction`` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import kernels

TIEBREAKS = ("lex", "deglex", "grevlex")


class WeylTerm(NamedTuple):
    coeff: Fraction
    xexp: tuple
    dexp: tuple


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def tiebreak_key(mono: tuple, tiebreak: str = "lex"):
    """Sort key of a (possibly homogenized) monomial; larger key = larger term.

    Variables are ranked x_1 > .. > x_n > d_1 > .. > d_n (> h).
    """
    if tiebreak == "lex":
        return mono
    if tiebreak == "deglex":
        return (sum(mono), mono)
    if tiebreak == "grevlex":
        return (sum(mono), tuple(-e for e in reversed(mono)))
    raise ValueError(f"unknown tiebreak order {tiebreak!r}")


@dataclass(frozen=True)
class WeightOrder:
    """A (u, v)-weight order with component shifts, refined by a term order.

    ``u`` weighs the x's, ``v`` the d's.  For the solution pipeline
    ``u = -w`` and ``v = w``.
    """

    u: tuple
    v: tuple
    shift: tuple = ()
    tiebreak: str = "lex"

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(a) for a in self.u))
        object.__setattr__(self, "v", tuple(int(a) for a in self.v))
        object.__setattr__(self, "shift", tuple(int(a) for a in self.shift))
        if len(self.u) != len(self.v):
            raise ValueError("u and v must have the same length")
        if self.tiebreak not in TIEBREAKS:
            raise ValueError(f"unknown tiebreak order {self.tiebreak!r}")

    @classmethod
    def from_weight(cls, w: Sequence[int], shift=(), tiebreak="lex") -> WeightOrder:
        w = tuple(int(a) for a in w)
        if any(a <= 0 for a in w):
            raise ValueError(f"weight vector must be positive, got {w}")
        return cls(tuple(-a for a in w), w, tuple(shift), tiebreak)

    @classmethod
    def term_order(cls, n: int, tiebreak="lex", rank: int = 0) -> WeightOrder:
        return cls((0,) * n, (0,) * n, (0,) * rank, tiebreak)

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def admissible(self) -> bool:
        return all(a + b >= 0 for a, b in zip(self.u, self.v))

    def with_shift(self, shift) -> WeightOrder:
        return WeightOrder(self.u, self.v, tuple(shift), self.tiebreak)

    def weight(self, mono: tuple) -> int:
        n = len(self.u)
        total = 0
        for i in range(n):
            total += self.u[i] * mono[i] + self.v[i] * mono[n + i]
        return total

    def shift_of(self, comp: int) -> int:
        return self.shift[comp] if self.shift else 0

    def key(self, comp: int, mono: tuple):
        return (self.weight(mono) + self.shift_of(comp),
                tiebreak_key(mono, self.tiebreak), -comp)


class WeylOp:
    """A normally ordered element of the Weyl algebra with rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        clean = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != 2 * n:
                    raise ValueError(f"monomial {mono} does not match n={n}")
                c = Fraction(c)
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> WeylOp:
        op = cls.__new__(cls)
        op.n = n
        op._terms = terms
        op._hash = None
        return op

    # constructors
    @classmethod
    def zero(cls, n: int) -> WeylOp:
        return cls._raw(n, {})

    @classmethod
    def const(cls, c, n: int) -> WeylOp:
        return cls(n, {(0,) * (2 * n): c})

    @classmethod
    def x(cls, i: int, n: int) -> WeylOp:
        mono = [0] * (2 * n)
        mono[i] = 1
        return cls(n, {tuple(mono): 1})

    @classmethod
    def d(cls, i: int, n: int) -> WeylOp:
        mono = [0] * (2 * n)
        mono[n + i] = 1
        return cls(n, {tuple(mono): 1})

    @classmethod
    def monomial(cls, xexp, dexp, coeff=1) -> WeylOp:
        xexp, dexp = tuple(xexp), tuple(dexp)
        if len(xexp) != len(dexp):
            raise ValueError("x and d exponents differ in length")
        return cls(len(xexp), {xexp + dexp: coeff})

    @classmethod
    def from_terms(cls, n: int, terms: Iterable) -> WeylOp:
        out: dict = {}
        for c, a, b in terms:
            mono = tuple(a) + tuple(b)
            out[mono] = out.get(mono, 0) + Fraction(c)
        return cls(n, out)

    # access
    @property
    def terms_dict(self) -> dict:
        return self._terms

    def terms(self) -> list[WeylTerm]:
        """Terms in canonical order: (d-exponents, x-exponents) descending."""
        n = self.n
        keys = sorted(self._terms, key=lambda m: (m[n:], m[:n]), reverse=True)
        return [WeylTerm(self._terms[m], m[:n], m[n:]) for m in keys]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, xexp, dexp) -> Fraction:
        return self._terms.get(tuple(xexp) + tuple(dexp), Fraction(0))

    # arithmetic
    def _check(self, other: WeylOp):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def _coerce(self, other):
        if isinstance(other, WeylOp):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return WeylOp.const(other, self.n)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return WeylOp._raw(self.n, kernels.axpy(1, self._terms, 1, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return WeylOp._raw(self.n, kernels.axpy(1, self._terms, -1, other._terms))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return WeylOp.zero(self.n)
            return WeylOp._raw(self.n, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, WeylOp):
            return NotImplemented
        self._check(other)
        return WeylOp._raw(self.n, kernels.poly_mul(self._terms, other._terms, self.n, False))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in D")
        out = WeylOp.const(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.const(other, self.n)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_op(self, names)

    def __str__(self):
        return format_op(self)

    def __repr__(self):
        return f"WeylOp({format_op(self)!r})"


def add(p: WeylOp, q: WeylOp) -> WeylOp:
    return p + q


def mul(p: WeylOp, q: WeylOp) -> WeylOp:
    return p * q


def normally_ordered_at_zero(p: WeylOp) -> dict:
    """Terms of p free of x, keyed by their d-exponent."""
    n = p.n
    return {m[n:]: c for m, c in p.terms_dict.items() if not any(m[:n])}


def d_power_at_zero(i: Sequence[int], p: WeylOp) -> dict:
    """``normally_ordered_at_zero(d^i * p)`` without forming the full product.

    Only the terms of d^i x^a d^b that lose every x survive, which needs
    i >= a and contributes prod i!/(i-a)! to d^(i-a+b).
    """
    n = p.n
    out: dict = {}
    for mono, c in p.terms_dict.items():
        coef = c
        dexp = []
        for j in range(n):
            a = mono[j]
            if a > i[j]:
                break
            for t in range(a):
                coef *= i[j] - t
            dexp.append(i[j] - a + mono[n + j])
        else:
            key = tuple(dexp)
            val = out.get(key, 0) + coef
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def ord(p: WeylOp, order: WeightOrder, component: int = 0) -> int:  # noqa: A001
    """Maximal (u, v)-weight of the terms of p plus the component shift."""
    if p.is_zero():
        raise ValueError("the zero operator has no order")
    return max(order.weight(m) for m in p.terms_dict) + order.shift_of(component)


def initial_form(p: WeylOp, order: WeightOrder, component: int = 0) -> WeylOp:
    """Sum of the terms of p of maximal (u, v)-weight."""
    if p.is_zero():
        raise ValueError("the zero operator has no initial form")
    top = max(order.weight(m) for m in p.terms_dict)
    return WeylOp._raw(p.n, {m: c for m, c in p.terms_dict.items()
                             if order.weight(m) == top})


def euler_operator(w: Sequence[int]) -> WeylOp:
    """The weighted Euler operator s = sum_i w_i x_i d_i."""
    n = len(w)
    terms = {}
    for i, wi in enumerate(w):
        if wi:
            mono = [0] * (2 * n)
            mono[i] = mono[n + i] = 1
            terms[tuple(mono)] = wi
    return WeylOp(n, terms)


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_mono(mono: tuple, names: Sequence[str]) -> str:
    n = len(names)
    parts = []
    for i in range(n):
        e = mono[i]
        if e:
            parts.append(names[i] if e == 1 else f"{names[i]}^{e}")
    for i in range(n):
        e = mono[n + i]
        if e:
            dn = "d" + names[i]
            parts.append(dn if e == 1 else f"{dn}^{e}")
    return "*".join(parts)


def format_op(p: WeylOp, names: Sequence[str] | None = None) -> str:
    """Canonical text form, e.g. ``x*dx + 1`` or ``-3/2*dx^2``."""
    if names is None:
        names = default_names(p.n)
    if p.is_zero():
        return "0"
    out = []
    for t in p.terms():
        body = _format_mono(t.xexp + t.dexp, names)
        c = t.coeff
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
