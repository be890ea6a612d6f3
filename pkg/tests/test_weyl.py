import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holosol.encoding import position_degree
from holosol.weyl import (
    WeightOrder,
    WeylOp,
    add,
    d_power_at_zero,
    euler_operator,
    initial_form,
    mul,
    normally_ordered_at_zero,
    ord,
)

x, d = WeylOp.x(0, 1), WeylOp.d(0, 1)


def rand_op(rng, n, terms=5, top=3):
    out = WeylOp.zero(n)
    for _ in range(rng.randint(1, terms)):
        xe = tuple(rng.randint(0, top) for _ in range(n))
        de = tuple(rng.randint(0, top) for _ in range(n))
        out = out + WeylOp.monomial(xe, de, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return out


op_strategy = st.integers(0, 10**6).map(lambda s: rand_op(random.Random(s), 2))


def test_add_examples():
    assert add(x * d, -(x * d)).is_zero()
    assert str(add(d, WeylOp.const(1, 1))) == "dx + 1"
    assert add(x * d + 1, x * d - 1) == 2 * (x * d)


def test_mul_examples():
    assert mul(d, x) == x * d + 1
    assert mul(d**2, x**2) == x**2 * d**2 + 4 * x * d + 2
    assert str(mul(x, d)) == "x*dx"


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        add(x, WeylOp.x(0, 2))
    with pytest.raises(ValueError):
        mul(x, WeylOp.x(0, 2))


def test_commutation_relations():
    n = 3
    for i in range(n):
        for j in range(n):
            xi, dj = WeylOp.x(i, n), WeylOp.d(j, n)
            expected = WeylOp.const(1, n) if i == j else WeylOp.zero(n)
            assert dj * xi - xi * dj == expected
            assert WeylOp.x(i, n) * WeylOp.x(j, n) == WeylOp.x(j, n) * WeylOp.x(i, n)
            assert WeylOp.d(i, n) * WeylOp.d(j, n) == WeylOp.d(j, n) * WeylOp.d(i, n)


@settings(max_examples=40, deadline=None)
@given(op_strategy, op_strategy, op_strategy)
def test_associative_and_distributive(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


def test_exact_rationals():
    p = WeylOp.const(Fraction(1, 3), 1) * 3
    assert p == WeylOp.const(1, 1)
    assert (Fraction(1, 2) * d).coefficient((0,), (1,)) == Fraction(1, 2)


def test_no_zero_terms_and_canonical_print():
    p = x * d + 1 - 1 - x * d
    assert p.is_zero() and str(p) == "0"
    q = WeylOp.monomial((0,), (2,), Fraction(-3, 2)) + x * d + 1
    assert str(q) == "-3/2*dx^2 + x*dx + 1"


def test_normally_ordered_at_zero():
    assert normally_ordered_at_zero(x * d + 1) == {(0,): Fraction(1)}
    assert normally_ordered_at_zero(x**2 * d**3) == {}


def test_dy_times_a11_at_zero(f2):
    a11 = f2.complex.psi(2)[0][0]
    dy = WeylOp.d(1, 2)
    assert normally_ordered_at_zero(dy * a11) == {(0, 0): Fraction(-5)}
    assert d_power_at_zero((0, 1), a11) == {(0, 0): Fraction(-5)}


@settings(max_examples=40, deadline=None)
@given(op_strategy, st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_d_power_at_zero_matches_product(p, i):
    dpow = WeylOp.monomial((0, 0), i)
    expected = {k: c for k, c in normally_ordered_at_zero(dpow * p).items()}
    assert d_power_at_zero(i, p) == expected


def test_ord_examples():
    assert position_degree((1, 0), 2, (1, 1), (0, 0, -1)) == 0
    assert ord(x**2 * d**3, WeightOrder.from_weight((1,), (0,))) == 1
    dx = WeylOp.d(0, 2)
    xx = WeylOp.x(0, 2)
    assert ord(xx * dx, WeightOrder.from_weight((1, 1), (0,))) == 0
    assert ord(d, WeightOrder.from_weight((1,), (3, 5)), component=1) == 6
    with pytest.raises(ValueError):
        ord(WeylOp.zero(1), WeightOrder.from_weight((1,), (0,)))


def test_initial_form_examples(f2):
    order = WeightOrder.from_weight((1, 1), (0,))
    b1 = f2.complex.psi(1)[0][0]
    assert initial_form(b1, order) == WeylOp.x(0, 2) * WeylOp.d(0, 2)
    o1 = WeightOrder.from_weight((1,), (0,))
    assert initial_form(d + 1, o1) == d
    assert initial_form(x * d + 5, o1) == x * d + 5
    with pytest.raises(ValueError):
        initial_form(WeylOp.zero(1), o1)


@settings(max_examples=40, deadline=None)
@given(op_strategy)
def test_initial_form_idempotent(p):
    order = WeightOrder.from_weight((1, 2), (0,))
    if p.is_zero():
        return
    ini = initial_form(p, order)
    assert initial_form(ini, order) == ini


@settings(max_examples=40, deadline=None)
@given(op_strategy, op_strategy)
def test_weight_multiplicativity(p, q):
    order = WeightOrder.from_weight((1, 2), (0,))
    if p.is_zero() or q.is_zero():
        return
    assert ord(p * q, order) == ord(p, order) + ord(q, order)
    assert initial_form(p * q, order) == initial_form(p, order) * initial_form(q, order)


def test_weight_order_validation():
    with pytest.raises(ValueError):
        WeightOrder.from_weight((0, 1))
    assert not WeightOrder((-1,), (0,), (0,), "lex").admissible
    assert WeightOrder.from_weight((1, 3)).admissible
    with pytest.raises(ValueError):
        WeightOrder.from_weight((1,), tiebreak="nope")


def test_euler_operator():
    s = euler_operator((1, 2))
    assert str(s) == "x*dx + 2*y*dy"
