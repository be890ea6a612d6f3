import random
from fractions import Fraction

import pytest

from holosol.groebner import (
    buchberger,
    divide,
    initial_module,
    is_member,
    leading_term,
    syzygies,
)
from holosol.resolution import matrix_product
from holosol.weyl import WeightOrder, WeylOp

W1 = WeightOrder.from_weight((1,), (0,))
W2 = WeightOrder.from_weight((1, 1), (0,))


def zero(n=1):
    return WeylOp.zero(n)


def test_leading_term_examples(P):
    comp, term = leading_term((P("x*dx-2", 1),), W1)
    assert comp == 0 and (term.xexp, term.dexp) == ((1,), (1,))
    comp, term = leading_term((P("dx^2", 1), P("x", 1)), W1.with_shift((0, 0)))
    assert comp == 0 and term.dexp == (2,)
    comp, term = leading_term((zero(), WeylOp.const(1, 1)), W1.with_shift((0, 0)))
    assert comp == 1 and term.coeff == 1 and term.xexp == (0,) and term.dexp == (0,)
    with pytest.raises(ValueError):
        leading_term((zero(),), W1)


def test_leading_term_shift_breaks_tie(P):
    # the shift of the second component lifts x (weight -1) above dx^2 (weight 2)
    comp, _ = leading_term((P("dx^2", 1), P("x", 1)), W1.with_shift((0, 4)))
    assert comp == 1


def test_divide_examples(P):
    gb = buchberger([P("x*dx-2", 1)], W1)
    nf, quot = divide((P("x*dx", 1),), gb)
    assert nf == (WeylOp.const(2, 1),) and quot == [WeylOp.const(1, 1)]
    unit = buchberger([WeylOp.const(1, 1)], W1)
    assert divide((P("x*dx-2", 1),), unit)[0] == (zero(),)
    nf, _ = divide((P("dx", 1),), gb)
    assert nf == (P("dx", 1),)


def test_divide_identity(P):
    gb = buchberger([P("x*dx - 2", 1), P("dx^3", 1)], WeightOrder.term_order(1, "deglex", 1))
    v = (P("x^2*dx^4 + 3*dx - x", 1),)
    nf, quot = divide(v, gb)
    total = nf[0]
    for q, g in zip(quot, gb.generators):
        total = total + q * g[0]
    assert total == v[0]


def test_buchberger_examples(P):
    gb = buchberger([P("dx", 1)], W1)
    assert [g[0] for g in gb.generators] == [P("dx", 1)]
    gb = buchberger([P("x*dx-2", 1), P("dx^2", 1)], W1)
    assert is_member((WeylOp.const(1, 1),), gb)
    assert any(g[0] == WeylOp.const(1, 1) for g in gb.generators)


def test_buchberger_f2_initial_forms(f2):
    gb = buchberger(f2.generators, W2)
    ini = [str(g[0]) for g in initial_module(gb)]
    assert "x*dx" in ini and "y*dy" in ini


def test_buchberger_rejects_inadmissible(P):
    with pytest.raises(ValueError):
        buchberger([P("dx", 1)], WeightOrder((-1,), (0,), (0,), "lex"))


def test_initial_module_examples(P):
    assert initial_module(buchberger([P("x*dx-2", 1)], W1))[0] == (P("x*dx-2", 1),)
    assert initial_module(buchberger([P("dx+1", 1)], W1))[0] == (P("dx", 1),)
    assert initial_module(buchberger([WeylOp.const(1, 1)], W1))[0] == (WeylOp.const(1, 1),)


def test_is_member_examples(P):
    assert not is_member((P("x*dx", 1),), buchberger([P("x*dx-2", 1)], W1))
    gb = buchberger([P("dx", 1)], W1)
    assert is_member((P("x^2*dx^2", 1),), gb)
    assert is_member((zero(),), gb)


def _rand_op(rng, n, terms=3, top=2):
    out = WeylOp.zero(n)
    for _ in range(rng.randint(1, terms)):
        out = out + WeylOp.monomial(tuple(rng.randint(0, top) for _ in range(n)),
                                    tuple(rng.randint(0, top) for _ in range(n)),
                                    rng.randint(-3, 3))
    return out


@pytest.mark.parametrize("seed", range(6))
def test_soundness_random_ideals(seed):
    rng = random.Random(seed)
    n = 2
    order = WeightOrder.term_order(n, "deglex", 1)
    gens = [g for g in (_rand_op(rng, n) for _ in range(2)) if g]
    gb = buchberger(gens, order, max_pairs=5000)
    for g in gens:
        for _ in range(2):
            p = _rand_op(rng, n)
            assert is_member((p * g,), gb)
    # combinations
    comb = _rand_op(rng, n) * gens[0] + _rand_op(rng, n) * gens[-1]
    assert is_member((comb,), gb)
    # every basis element lies in the ideal: idempotence
    again = buchberger([g[0] for g in gb.generators], order, max_pairs=5000)
    assert all(is_member(g, again) for g in gb.generators)
    assert all(is_member(g, gb) for g in again.generators)


def test_soundness_weight_order(P):
    # (-w, w)-homogeneous input keeps division inside one weight
    gens = [P("x*dx - 2"), P("y*dy + x*dy")]
    gb = buchberger(gens, W2)
    for g in gens:
        assert is_member((P("x*dx + dy*y") * g,), gb)
    assert not is_member((P("x*dx"),), gb)


def test_deterministic(f2):
    a = buchberger(f2.generators, W2)
    b = buchberger(f2.generators, W2)
    assert [tuple(map(str, g)) for g in a.generators] == [tuple(map(str, g)) for g in b.generators]


def test_module_gb_and_syzygies(P):
    one, zero2 = WeylOp.const(1, 2), WeylOp.zero(2)
    gens = [(P("dx"), P("dy")), (P("x"), zero2), (zero2, one)]
    order = WeightOrder.term_order(2, "deglex", 2)
    gb = buchberger(gens, order)
    for g in gens:
        assert is_member(g, gb)
    syz = syzygies(gens, order)
    assert syz
    prod = matrix_product([list(s) for s in syz], [list(g) for g in gens], 2)
    assert all(not op for row in prod for op in row)


def test_rational_generators_are_scaled(P):
    g = P("x*dx") * Fraction(1, 3) - WeylOp.const(Fraction(2, 3), 2)
    gb = buchberger([g], W2)
    assert is_member((P("3*x*dx - 6"),), gb)
