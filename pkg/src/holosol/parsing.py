"""Operator expressions and problem files.

Grammar (products are noncommutative and left-associative, ``^`` binds
tighter than ``*``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      # "/" only by a nonzero constant
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INTEGER)?
    atom   := NUMBER | NAME | "(" expr ")"

For variables ``x, y`` the derivatives are ``dx, dy``; ``d1 .. dn`` are
accepted as aliases when they do not clash with a variable name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bfunction import BFunction
from .resolution import ShiftedComplex
from .weyl import TIEBREAKS, WeylOp, default_names


class ParseError(ValueError):
    """Bad operator text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))


class ProblemError(ValueError):
    """Invalid or inconsistent problem file."""


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class ParseContext:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ProblemError(f"variable names must be distinct: {list(names)}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ProblemError(f"bad variable name {nm!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def default(cls, n: int) -> ParseContext:
        return cls(tuple(default_names(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    def symbols(self) -> dict:
        n = self.n
        table = {nm: WeylOp.x(i, n) for i, nm in enumerate(self.names)}
        for i, nm in enumerate(self.names):
            if "d" + nm in table:
                raise ProblemError(f"variable {'d' + nm!r} clashes with the derivative of {nm!r}")
            table["d" + nm] = WeylOp.d(i, n)
        for i in range(n):
            table.setdefault(f"d{i + 1}", WeylOp.d(i, n))
        return table


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: ParseContext):
        self.text = text
        self.ctx = ctx
        self.symbols = ctx.symbols()
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def parse(self) -> WeylOp:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> WeylOp:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> WeylOp:
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            tok = self.peek()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                c = _constant(rhs)
                if c is None:
                    self.fail("division only by a constant", tok)
                if c == 0:
                    self.fail("division by zero", tok)
                acc = acc * (1 / c)
        return acc

    def unary(self) -> WeylOp:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("-", "+"):
            self.take()
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self) -> WeylOp:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> WeylOp:
        tok = self.take()
        kind, val, _ = tok
        n = self.ctx.n
        if kind == "num":
            return WeylOp.const(int(val), n)
        if kind == "name":
            if val not in self.symbols:
                self.fail(f"unknown symbol {val!r}", tok)
            return self.symbols[val]
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {val!r}", tok)


def _constant(op: WeylOp) -> Fraction | None:
    terms = op.terms_dict
    if not terms:
        return Fraction(0)
    if len(terms) == 1:
        mono, c = next(iter(terms.items()))
        if not any(mono):
            return c
    return None


def parse_operator(text: str, context: ParseContext | Sequence[str]) -> WeylOp:
    """Normally ordered operator from its text form."""
    if not isinstance(context, ParseContext):
        context = ParseContext(tuple(context))
    if not isinstance(text, str):
        raise ParseError(f"operator must be a string, got {type(text).__name__}")
    return _Parser(text, context).parse()


def parse_bfunction(text: str) -> BFunction:
    """A polynomial in the single variable ``s``."""
    op = parse_operator(str(text), ParseContext(("s",)))
    coeffs: dict[int, Fraction] = {}
    for mono, c in op.terms_dict.items():
        if mono[1]:
            raise ParseError("b-function must be a polynomial in s", text)
        coeffs[mono[0]] = c
    if not coeffs:
        raise ParseError("b-function must be nonzero", text)
    top = max(coeffs)
    return BFunction(tuple(coeffs.get(k, Fraction(0)) for k in range(top + 1)))


# ------------------------------------------------------------- problem files

@dataclass
class ProblemFile:
    names: tuple
    weight: tuple
    tiebreak: str = "lex"
    generators: list | None = None
    complex: ShiftedComplex | None = None
    bfunction: BFunction | None = None
    degree: int | None = None
    order: int | None = None
    window: int | None = None

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def context(self) -> ParseContext:
        return ParseContext(self.names)

    def to_spec(self, degree: int | None = None, order: int | None = None):
        from .solver import ProblemSpec

        d = self.degree if degree is None else degree
        N = self.order if order is None else order
        if d is None:
            raise ProblemError("no cohomological degree given (use --degree or 'degree =')")
        if N is None:
            raise ProblemError("no output order given (use --order or 'order =')")
        return ProblemSpec(w=self.weight, degree=d, order=N, generators=self.generators,
                           complex=self.complex, bfunction=self.bfunction,
                           tiebreak=self.tiebreak, window_lo=self.window,
                           names=list(self.names))


def _int_list(value, what: str) -> tuple:
    if not isinstance(value, list) or not all(isinstance(a, int) and not isinstance(a, bool)
                                              for a in value):
        raise ProblemError(f"{what} must be a list of integers")
    return tuple(value)


def _operator_matrix(raw, ctx: ParseContext, what: str) -> list:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ProblemError(f"{what} must be a list of rows of operator strings")
    return [[parse_operator(str(e), ctx) for e in row] for row in raw]


def load_problem(data: dict) -> ProblemFile:
    """Validate a decoded problem table."""
    known = {"variables", "weight", "tiebreak", "generators", "complex", "degree",
             "order", "window", "bfunction"}
    extra = set(data) - known
    if extra:
        raise ProblemError(f"unknown fields: {sorted(extra)}")
    if "weight" not in data:
        raise ProblemError("missing field 'weight'")
    weight = _int_list(data["weight"], "weight")
    if not weight or any(a <= 0 for a in weight):
        raise ProblemError(f"weight must be a nonempty list of positive integers, got {list(weight)}")
    names = data.get("variables")
    if names is None:
        names = default_names(len(weight))
    if not isinstance(names, list) or not all(isinstance(a, str) for a in names):
        raise ProblemError("variables must be a list of strings")
    if len(names) != len(weight):
        raise ProblemError(f"{len(names)} variables but a weight of length {len(weight)}")
    ctx = ParseContext(tuple(names))
    ctx.symbols()
    tiebreak = data.get("tiebreak", "lex")
    if tiebreak not in TIEBREAKS:
        raise ProblemError(f"tiebreak must be one of {list(TIEBREAKS)}")
    for key in ("degree", "order", "window"):
        val = data.get(key)
        if val is not None and (not isinstance(val, int) or isinstance(val, bool)):
            raise ProblemError(f"{key} must be an integer")
    if data.get("degree") is not None and data["degree"] < 0:
        raise ProblemError("degree must be nonnegative")
    if data.get("order") is not None and data["order"] < 0:
        raise ProblemError("order must be nonnegative")

    generators = None
    if "generators" in data:
        raw = data["generators"]
        if not isinstance(raw, list) or not raw:
            raise ProblemError("generators must be a nonempty list")
        if all(isinstance(g, str) for g in raw):
            generators = [(parse_operator(g, ctx),) for g in raw]
        elif all(isinstance(g, list) for g in raw):
            rank = len(raw[0])
            if rank == 0 or any(len(g) != rank for g in raw):
                raise ProblemError("module generators must all have the same positive length")
            generators = [tuple(parse_operator(str(e), ctx) for e in g) for g in raw]
        else:
            raise ProblemError("generators must be operator strings or lists of them")

    bfun_text = data.get("bfunction")
    cx = None
    if "complex" in data:
        table = data["complex"]
        if not isinstance(table, dict):
            raise ProblemError("complex must be a table")
        if set(table) - {"maps", "shifts", "bfunction"}:
            raise ProblemError(f"unknown complex fields: {sorted(set(table) - {'maps', 'shifts', 'bfunction'})}")
        if "maps" not in table or "shifts" not in table:
            raise ProblemError("complex needs 'maps' and 'shifts'")
        shifts = table["shifts"]
        if not isinstance(shifts, list):
            raise ProblemError("shifts must be a list of integer lists")
        shifts = [_int_list(s, "each shift vector") for s in shifts]
        maps = table["maps"]
        if not isinstance(maps, list):
            raise ProblemError("maps must be a list of operator matrices")
        maps = [_operator_matrix(m, ctx, f"map {i + 1}") for i, m in enumerate(maps)]
        try:
            cx = ShiftedComplex(maps, shifts, weight, tiebreak, len(weight))
        except ValueError as exc:
            raise ProblemError(str(exc)) from exc
        bfun_text = table.get("bfunction", bfun_text)
    if generators is None and cx is None:
        raise ProblemError("give 'generators' or a [complex] table")
    bfunction = parse_bfunction(bfun_text) if bfun_text is not None else None
    return ProblemFile(tuple(names), weight, tiebreak, generators, cx, bfunction,
                       data.get("degree"), data.get("order"), data.get("window"))


def read_problem(path) -> ProblemFile:
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ProblemError(f"{path}: {exc}") from exc
    return load_problem(data)


def loads_problem(text: str) -> ProblemFile:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ProblemError(str(exc)) from exc
    return load_problem(data)


def _toml_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dump_complex(cx: ShiftedComplex, names: Sequence[str], bfunction: BFunction | None = None,
                 extra: dict | None = None) -> str:
    """Problem-file text carrying a complex (the inverse of ``load_problem``)."""
    lines = [f"variables = [{', '.join(_toml_str(nm) for nm in names)}]",
             f"weight = [{', '.join(str(a) for a in cx.weight)}]",
             f"tiebreak = {_toml_str(cx.tiebreak)}"]
    for key, val in (extra or {}).items():
        if val is not None:
            lines.append(f"{key} = {val}")
    lines += ["", "[complex]"]
    if bfunction is not None:
        lines.append(f"bfunction = {_toml_str(str(bfunction))}")
    lines.append("shifts = [" + ", ".join("[" + ", ".join(str(a) for a in s) + "]"
                                          for s in cx.shifts) + "]")
    lines.append("maps = [")
    for m in cx.maps:
        lines.append("  [")
        for row in m:
            lines.append("    [" + ", ".join(_toml_str(op.format(names)) for op in row) + "],")
        lines.append("  ],")
    lines.append("]")
    return "\n".join(lines) + "\n"
