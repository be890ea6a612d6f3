from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holosol.bfunction import BFunction, BFunctionError, compute_b, initial_ideal_basis, integer_roots, integral_roots
from holosol.groebner import is_member
from holosol.weyl import WeylOp


def test_f2_bfunction(f2):
    b = compute_b(f2.generators, (1, 1))
    assert b.coeffs == (0, 1)
    assert str(b) == "s"
    assert integral_roots(b) == (0, 0)


@pytest.mark.parametrize("text,coeffs,roots", [
    ("x*dx-2", (-2, 1), [2]),
    ("dx", (0, 1), [0]),
    ("dx-1", (0, 1), [0]),
    ("x*dx", (0, 1), [0]),
    ("x", (1, 1), [-1]),
    ("x*dx + 1/2", (Fraction(1, 2), 1), []),
])
def test_n1_bfunctions(P, text, coeffs, roots):
    b = compute_b([P(text, 1)], (1,))
    assert b.coeffs == tuple(Fraction(c) for c in coeffs)
    assert b.integral_roots == roots


def test_no_integral_roots():
    b = BFunction((1, 0, 1))
    assert str(b) == "s^2 + 1"
    assert integral_roots(b) == (None, None)


def test_roots_of_product():
    # (s+3)(s-2)(2s-1)
    b = BFunction((6, -13, 1, 2))
    assert b.integral_roots == [-3, 2]
    assert (b.k0, b.k1) == (-3, 2)


def test_b_operator_in_initial_ideal(f2, P):
    for gens, w in ((f2.generators, (1, 1)), ([P("x*dx - 2", 1)], (1,)),
                    ([P("x^2*dx - 3*x", 1)], (1,))):
        b = compute_b(gens, w)
        ini = initial_ideal_basis(gens, w)
        assert is_member((b.as_operator(w),), ini)
        # minimality: the lower-degree factors are not members
        if b.degree > 1:
            lower = BFunction(b.coeffs[1:])
            assert not is_member((lower.as_operator(w),), ini)


def test_weighted_euler(P):
    b = compute_b([P("x*dx - 1"), P("y*dy - 2")], (1, 2))
    assert b(5) == 0 and b.integral_roots == [5]


def test_module_bfunction(P):
    zero = WeylOp.zero(1)
    b = compute_b([(P("x*dx - 1", 1), zero), (zero, P("x*dx - 3", 1))], (1,))
    assert b.integral_roots == [1, 3]


def test_degree_cap(P):
    # s - 2 needs degree 1
    with pytest.raises(BFunctionError):
        compute_b([P("x*dx - 2", 1)], (1,), max_degree=0)


def test_rejects_bad_weight(P):
    with pytest.raises(ValueError):
        compute_b([P("dx", 1)], (0,))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3),
       st.lists(st.integers(1, 4), max_size=1))
def test_integer_roots_brute_force(roots, extra):
    poly = [Fraction(1)]
    for r in roots:
        poly = [a - r * b for a, b in zip([Fraction(0)] + poly, poly + [Fraction(0)])]
    for c in extra:  # an irreducible quadratic factor s^2 + c
        q = [Fraction(c), Fraction(0), Fraction(1)]
        out = [Fraction(0)] * (len(poly) + 2)
        for i, a in enumerate(poly):
            for j, b in enumerate(q):
                out[i + j] += a * b
        poly = out
    bound = max(abs(c) for c in poly) + 1
    brute = [k for k in range(-int(bound), int(bound) + 1)
             if sum(c * k**i for i, c in enumerate(poly)) == 0]
    assert integer_roots(poly) == brute == sorted(set(roots))
