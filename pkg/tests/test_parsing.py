import random
from fractions import Fraction

import pytest

from holosol.parsing import (
    ParseContext,
    ParseError,
    ProblemError,
    dump_complex,
    loads_problem,
    parse_bfunction,
    parse_operator,
)
from holosol.weyl import WeylOp

XY = ParseContext(("x", "y"))


def test_f2_generator():
    op = parse_operator("x*dx - x*(x*dx+y*dy+2)*(x*dx+3)", XY)
    assert str(op) == "-x^3*dx^2 - x^2*y*dx*dy - 6*x^2*dx + x*dx - 3*x*y*dy - 6*x"


def test_simple_examples():
    x = ParseContext(("x",))
    assert parse_operator("dx*x", x) == WeylOp.x(0, 1) * WeylOp.d(0, 1) + 1
    assert parse_operator("3/2*dx^2", x) == WeylOp.monomial((0,), (2,), Fraction(3, 2))
    assert parse_operator("d1*x", x) == parse_operator("dx*x", x)
    assert parse_operator("-(x+1)^2/4", x) == -(WeylOp.x(0, 1) + 1) ** 2 * Fraction(1, 4)
    assert parse_operator("2^3", x) == WeylOp.const(8, 1)


def test_precedence():
    x = ParseContext(("x",))
    # ^ binds tighter than *, products left-associative
    assert parse_operator("2*dx^2", x) == 2 * WeylOp.d(0, 1) ** 2
    assert parse_operator("dx*x*x", x) == (WeylOp.d(0, 1) * WeylOp.x(0, 1)) * WeylOp.x(0, 1)
    assert parse_operator("1 - x + 1", x) == WeylOp.const(2, 1) - WeylOp.x(0, 1)


@pytest.mark.parametrize("text,pos", [
    ("x+*y", 2), ("x+z", 2), ("(x", 2), ("x/dx", 2), ("", 0), ("x^y", 2), ("x $", 2),
    ("x/0", 2), ("x)", 1),
])
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_operator(text, XY)
    assert info.value.pos == pos


def test_context_validation():
    with pytest.raises(ProblemError):
        ParseContext(("x", "x"))
    with pytest.raises(ProblemError):
        ParseContext(("x", "dx")).symbols()
    with pytest.raises(ProblemError):
        ParseContext(("1x",))


def test_long_names():
    ctx = ParseContext(("x1", "x2", "x3", "x4"))
    op = parse_operator("dx2*x2 - d4", ctx)
    assert str(op.format(ctx.names)) == "x2*dx2 - dx4 + 1"


def _rand_op(rng, n):
    out = WeylOp.zero(n)
    for _ in range(rng.randint(1, 5)):
        out = out + WeylOp.monomial(tuple(rng.randint(0, 3) for _ in range(n)),
                                    tuple(rng.randint(0, 3) for _ in range(n)),
                                    Fraction(rng.randint(-7, 7), rng.randint(1, 4)))
    return out


def test_round_trip(f2):
    rng = random.Random(3)
    corpus = [_rand_op(rng, 2) for _ in range(50)]
    corpus += [op for m in f2.complex.maps for row in m for op in row]
    corpus += [g[0] for g in f2.generators]
    for op in corpus:
        text = op.format(["x", "y"])
        again = parse_operator(text, XY)
        assert again == op
        assert again.format(["x", "y"]) == text


def test_bfunction_parse():
    assert parse_bfunction("s").coeffs == (0, 1)
    assert parse_bfunction("2*s^2 - 4*s").coeffs == (0, -2, 1)
    with pytest.raises(ParseError):
        parse_bfunction("ds")
    with pytest.raises(ParseError):
        parse_bfunction("0")


PROBLEM = """
variables = ["x"]
weight = [1]
degree = 0
order = 3
generators = ["x*dx - 2"]
"""


def test_problem_file_generators():
    pf = loads_problem(PROBLEM)
    assert pf.names == ("x",) and pf.weight == (1,)
    spec = pf.to_spec()
    assert spec.degree == 0 and spec.order == 3
    assert str(spec.generators[0][0]) == "x*dx - 2"


def test_problem_file_module_generators():
    pf = loads_problem('weight = [1]\ngenerators = [["dx", "0"], ["0", "x*dx"]]\n')
    assert pf.names == ("x",)
    assert len(pf.generators) == 2 and len(pf.generators[0]) == 2


@pytest.mark.parametrize("text", [
    "weight = [0]\ngenerators = ['dx']",
    "generators = ['dx']",
    "weight = [1]",
    "weight = [1]\ngenerators = ['dq']",
    "weight = [1]\ngenerators = []",
    "weight = [1]\nvariables = ['x', 'y']\ngenerators = ['dx']",
    "weight = [1]\ngenerators = ['dx']\ntiebreak = 'zz'",
    "weight = [1]\ngenerators = ['dx']\ncolour = 1",
    "weight = [1]\ngenerators = ['dx']\ndegree = -1",
    "weight = [1]\n[complex]\nshifts = [[0], [1, 2]]\nmaps = [[['dx']]]",
    "weight = [1]\n[complex]\nmaps = [[['dx']]]",
    "weight = [1]\ngenerators = [['dx'], ['dx', 'x']]",
    "weight = = [1]",
])
def test_problem_file_errors(text):
    with pytest.raises((ProblemError, ParseError)):
        loads_problem(text)


def test_missing_degree():
    pf = loads_problem("weight = [1]\ngenerators = ['dx']")
    with pytest.raises(ProblemError):
        pf.to_spec()
    with pytest.raises(ProblemError):
        pf.to_spec(degree=0)


def test_dump_complex_round_trip(f2):
    text = dump_complex(f2.complex, f2.names, f2.bfunction)
    again = loads_problem(text)
    assert again.complex.shifts == f2.complex.shifts
    assert again.complex.maps == f2.complex.maps
    assert again.bfunction == f2.bfunction
