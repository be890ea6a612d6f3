import random
from fractions import Fraction

import pytest
from f2_data import POSITIONS_11, TAU1_A, TAU1_B

from holosol.encoding import (
    SeriesSolution,
    boundary_matrix,
    enumerate_positions,
    format_series,
    sigma,
    sigma_inv,
    truncate,
    truncate_map,
)
from holosol.solver import select_slice


def test_example_one_positions():
    enum = enumerate_positions(3, (0, 0, -1), (1, 1), (0, 1))
    assert enum.labels() == POSITIONS_11
    assert [p.degree for p in enum] == [0] * 4 + [1] * 7
    proj = truncate_map(enum, 0)
    assert len(proj.source) == 11 and len(proj.target) == 4
    assert proj(tuple(range(11))) == (0, 1, 2, 3)


def test_small_enumerations():
    assert enumerate_positions(1, (0,), (1,), (0, 2)).labels() == [[0, 0], [0, 1], [0, 2]]
    assert enumerate_positions(2, (-1, 0), (1, 1), (0, 1)).labels() == [
        [0, 1, 0], [0, 0, 1], [1, 0, 0], [0, 2, 0], [0, 1, 1], [0, 0, 2], [1, 1, 0], [1, 0, 1]]


def test_enumeration_errors():
    with pytest.raises(ValueError):
        enumerate_positions(1, (0,), (0,), (0, 1))
    with pytest.raises(ValueError):
        enumerate_positions(1, (0,), (1,), (2, 1))
    with pytest.raises(ValueError):
        enumerate_positions(2, (0,), (1,), (0, 1))


def test_weighted_enumeration_sorted():
    enum = enumerate_positions(2, (0, 1), (1, 2), (-1, 4), "grevlex")
    keys = [p.degree for p in enum]
    assert keys == sorted(keys)
    assert all(-1 <= p.degree <= 4 for p in enum)
    assert len({(p.component, p.alpha) for p in enum}) == len(enum)


def test_f2_boundary_matrices(f2):
    A, B = select_slice(f2.complex, 1).matrices(0, 1)
    assert A.shape == (11, 8) and B.shape == (3, 11)
    assert A.as_lists() == [[Fraction(x) for x in r] for r in TAU1_A]
    assert B.as_lists() == [[Fraction(x) for x in r] for r in TAU1_B]
    assert A.entry(0, 1) == -5


def test_f2_underlined_blocks(f2):
    A, B = select_slice(f2.complex, 1).matrices(0, 1)
    A0 = truncate(A, 0)
    assert A0.as_lists() == [r[:3] for r in TAU1_A[:4]]
    B0 = truncate(B, 0)
    assert B0.shape == (1, 4) and not any(B0.as_lists()[0])
    assert truncate(A, 1).as_lists() == A.as_lists()
    with pytest.raises(ValueError):
        truncate(A, 2)


def test_diagonal_for_euler_operator(P):
    op = [[P("x*dx - 2", 1)]]
    enum = enumerate_positions(1, (0,), (1,), (0, 3))
    M = boundary_matrix(op, enum, enum)
    assert M.as_lists() == [[Fraction(i - 2) if i == j else 0 for j in range(4)] for i in range(4)]


def test_shape_mismatch(P):
    enum = enumerate_positions(1, (0,), (1,), (0, 1))
    with pytest.raises(ValueError):
        boundary_matrix([[P("dx", 1), P("x", 1)]], enum, enum)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_properties_on_f2(f2, m):
    for d in (0, 1):
        sl = select_slice(f2.complex, d)
        A, B = sl.matrices(0, m)
        assert A.is_block_upper_triangular() and B.is_block_upper_triangular()
        # B-bar^T * A-bar^T = 0
        from holosol.linalg import matmul
        prod = matmul(B.as_lists(), A.as_lists(), ncols=len(A.cols))
        assert not any(x for row in prod for x in row)
        # compatibility with the smaller window
        if m > 0:
            A_small, B_small = sl.matrices(0, m - 1)
            assert truncate(A, m - 1).as_lists() == A_small.as_lists()
            assert truncate(B, m - 1).as_lists() == B_small.as_lists()


def test_sigma_examples():
    enum = enumerate_positions(1, (0,), (1,), (0, 2))
    assert sigma((0, 0, 1), enum) == {(0, (2,)): Fraction(1, 2)}
    assert format_series((0, 0, 1), enum) == "(1/2*x^2)"
    assert sigma((0, 0, 0), enum) == {}
    assert format_series((0, 0, 0), enum) == "(0)"
    with pytest.raises(ValueError):
        sigma((1,), enum)
    with pytest.raises(ValueError):
        sigma_inv({(0, (5,)): 1}, enum)


def test_sigma_reference_first_order():
    enum = enumerate_positions(3, (0, 0, -1), (1, 1), (0, 1))
    coords = [1, 0, 0, -5, 0, 10, 0, 0, 0, -45, 60]
    assert format_series(coords, enum) == "(1 + 10*y, 0, -5*y - 45*x*y + 30*y^2)"


def test_sigma_round_trip():
    rng = random.Random(7)
    enum = enumerate_positions(2, (0, -1), (1, 2), (-1, 4))
    for _ in range(20):
        coords = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in enum)
        assert sigma_inv(sigma(coords, enum), enum) == coords


def test_series_records():
    enum = enumerate_positions(1, (0,), (1,), (0, 2))
    sol = SeriesSolution(enum, (Fraction(1), Fraction(0), Fraction(4)), 2)
    recs = sol.records()
    assert recs[2] == {"component": 0, "exponent": [2], "derivative_coord": 4, "monomial_coeff": 2}
    assert sol.component_polynomials() == [{(0,): 1, (2,): 2}]
