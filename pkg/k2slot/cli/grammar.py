# Purpose: The session language: a pyparsing grammar, the expression AST,
#          and the semantic pass that turns parsed text into library objects.
# Relationships: Produces ParsedSession for cli/session.py; cli/render.py
#               is its inverse.
#
# A session is a field declaration followed by commands, each ended by ';'.
# Expressions share one grammar everywhere: integers, identifiers, '^' with
# a signed integer exponent, unary minus, '*', '/', '+', '-'. Which
# identifiers are legal (t, or x and y, plus the tower generator) is decided
# in the semantic pass. '#' starts a comment.

import math
from dataclasses import dataclass, field
from typing import Any

import pyparsing as pp

from ..core.bivariate import BivariatePoly
from ..core.errors import InputError
from ..core.funcfield import RationalFunction
from ..core.gf import FieldSpec, field_make, is_prime, prime_divisors, prime_field
from ..core.k2 import K2Element, Symbol2
from ..core.local2d import FactoredBivariate, LocalSymbol


class SessionSyntaxError(InputError):
    def __init__(self, line: int, column: int, expected: list[str]) -> None:
        super().__init__(f"line {line}, column {column}: {'; '.join(expected)}")
        self.line = line
        self.column = column
        self.expected = expected


class SemanticError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# Expression AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: Any


@dataclass(frozen=True)
class Pow:
    base: Any
    exponent: int


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: Any
    rhs: Any


def _fold(toks: pp.ParseResults) -> Any:
    node = toks[0]
    for i in range(1, len(toks), 2):
        node = BinOp(toks[i], node, toks[i + 1])
    return node


def _make_expression() -> pp.ParserElement:
    expr = pp.Forward()
    number = pp.Word(pp.nums).set_parse_action(lambda t: Num(int(t[0])))
    ident = pp.Word(pp.alphas, pp.alphanums + "_").set_parse_action(lambda t: Var(t[0]))
    signed = pp.Combine(pp.Optional("-") + pp.Word(pp.nums)).set_parse_action(lambda t: int(t[0]))
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")

    atom = number | ident | (lpar + expr + rpar)
    power = atom + pp.Optional(pp.Suppress("^") + (signed | (lpar + signed + rpar)))
    power.set_parse_action(lambda t: Pow(t[0], t[1]) if len(t) == 2 else t[0])
    unary = pp.Optional(pp.one_of("+ -")) + power
    unary.set_parse_action(lambda t: Neg(t[1]) if len(t) == 2 and t[0] == "-" else t[-1])
    term = unary + pp.ZeroOrMore(pp.one_of("* /") + unary)
    term.set_parse_action(_fold)
    expr <<= term + pp.ZeroOrMore(pp.one_of("+ -") + term)
    expr.set_parse_action(_fold)
    return expr


# ---------------------------------------------------------------------------
# Session grammar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RawField:
    q: int
    m: int
    tower: tuple[int, str, Any] | None


@dataclass(frozen=True)
class RawSymbol:
    coefficient: int
    a: Any
    b: Any


@dataclass(frozen=True)
class RawCommand:
    kind: str
    args: tuple
    line: int
    column: int


def _raw_command(kind: str, body: pp.ParserElement) -> pp.ParserElement:
    def action(s: str, loc: int, toks: pp.ParseResults) -> RawCommand:
        return RawCommand(kind, tuple(toks), pp.lineno(loc, s), pp.col(loc, s))

    return body.set_parse_action(action)


def _make_session() -> pp.ParserElement:
    K = pp.Keyword
    expr = _make_expression()
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
    ident = pp.Word(pp.alphas, pp.alphanums + "_")
    lpar, rpar, lbrace, rbrace = map(pp.Suppress, "(){}")
    comma, semi, plus, star = map(pp.Suppress, ",;+*")

    gf = K("GF").suppress() + lpar + integer + rpar
    tower = (
        pp.Suppress("=") + gf + pp.Suppress("[") + ident + pp.Suppress("]")
        + pp.Suppress("/") + lpar + expr + rpar
    )
    field_decl = (
        K("field").suppress() - gf + pp.Optional(pp.Group(tower))
        + K("m").suppress() + pp.Suppress("=") + integer
    )

    def field_action(toks: pp.ParseResults) -> RawField:
        if len(toks) == 3:
            p, var, node = toks[1]
            return RawField(toks[0], toks[2], (p, var, node))
        return RawField(toks[0], toks[1], None)

    field_decl.set_parse_action(field_action)

    sym = pp.Optional(integer + star) + lbrace + expr + comma + expr + rbrace

    def sym_action(toks: pp.ParseResults) -> RawSymbol:
        if len(toks) == 3:
            return RawSymbol(toks[0], toks[1], toks[2])
        return RawSymbol(1, toks[0], toks[1])

    sym.set_parse_action(sym_action)

    symlist = pp.Group(sym + pp.ZeroOrMore((comma | plus) + sym))
    k2class = pp.Group(sym + pp.ZeroOrMore(plus + sym))
    classlist = pp.Group(k2class + pp.ZeroOrMore(comma + k2class))
    pair = lpar + expr + comma + expr + rpar

    k2_cmd = K("k2").suppress() - (
        _raw_command("residues", K("residues").suppress() - symlist)
        | _raw_command("zero", K("zero").suppress() - symlist)
        | _raw_command("reciprocity", K("reciprocity").suppress() - symlist)
        | _raw_command("k2-symbol", K("symbol").suppress() - symlist)
    )
    slot_cmd = K("slot").suppress() - (
        _raw_command("slot-find", K("find").suppress() - classlist)
        | _raw_command("slot-verify", K("verify").suppress() - expr + classlist)
    )
    alg_cmd = K("alg").suppress() - (
        _raw_command("alg-build", K("build").suppress() - pair)
        | _raw_command("alg-split", K("split").suppress() - pair)
    )
    r2d_cmd = K("r2d").suppress() - (
        _raw_command("r2d-mult", K("mult").suppress() - pair)
        | _raw_command("r2d-reciprocity", K("reciprocity").suppress() - pp.Group(sym + pp.ZeroOrMore(comma + sym)))
    )
    command = k2_cmd | slot_cmd | alg_cmd | r2d_cmd
    session = field_decl + semi + pp.ZeroOrMore(command + semi)
    session.ignore(pp.python_style_comment)
    return session


_SESSION = _make_session()


# ---------------------------------------------------------------------------
# Parsed objects
# ---------------------------------------------------------------------------

KINDS = (
    "residues",
    "zero",
    "reciprocity",
    "k2-symbol",
    "slot-find",
    "slot-verify",
    "alg-build",
    "alg-split",
    "r2d-mult",
    "r2d-reciprocity",
)


@dataclass(frozen=True)
class ParsedProblem:
    """
    kind and payload:
      residues / zero / reciprocity / k2-symbol: {"alpha": K2Element}
      slot-find: {"classes": tuple[K2Element, ...]}
      slot-verify: {"f": RationalFunction, "classes": tuple[K2Element, ...]}
      alg-build / alg-split: {"a": int, "b": int}
      r2d-mult: {"prime": BivariatePoly, "u": FactoredBivariate}
      r2d-reciprocity: {"symbols": tuple[LocalSymbol, ...]}
    """

    kind: str
    payload: dict[str, Any]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ParsedSession:
    field: FieldSpec
    problems: tuple[ParsedProblem, ...] = ()


# ---------------------------------------------------------------------------
# Semantic pass
# ---------------------------------------------------------------------------


class _Evaluator:
    def __init__(self, fld: FieldSpec, line: int | None = None, column: int | None = None) -> None:
        self.fld = fld
        self.line = line
        self.column = column

    def fail(self, message: str) -> SemanticError:
        return SemanticError(message, self.line, self.column)

    def _constant(self, name: str) -> int | None:
        if self.fld.e > 1 and name == self.fld.variable:
            return self.fld.generator_element()
        return None

    # -- univariate ----------------------------------------------------------

    def rational(self, node: Any, var: str = "t") -> RationalFunction:
        try:
            return self._rational(node, var)
        except InputError as exc:
            if isinstance(exc, SemanticError):
                raise
            raise self.fail(f"{type(exc).__name__}: {exc}") from None

    def _rational(self, node: Any, var: str) -> RationalFunction:
        F = self.fld
        match node:
            case Num(value):
                return RationalFunction.constant(F, F.embed(value))
            case Var(name):
                if name == var:
                    return RationalFunction.var(F)
                c = self._constant(name)
                if c is None:
                    raise self.fail(f"unknown identifier {name!r} (expected {var})")
                return RationalFunction.constant(F, c)
            case Neg(operand):
                return -self._rational(operand, var)
            case Pow(base, exponent):
                return self._rational(base, var) ** exponent
            case BinOp("+", lhs, rhs):
                return self._rational(lhs, var) + self._rational(rhs, var)
            case BinOp("-", lhs, rhs):
                return self._rational(lhs, var) - self._rational(rhs, var)
            case BinOp("*", lhs, rhs):
                return self._rational(lhs, var) * self._rational(rhs, var)
            case BinOp("/", lhs, rhs):
                return self._rational(lhs, var) / self._rational(rhs, var)
        raise self.fail(f"cannot evaluate {node!r}")

    def nonzero(self, node: Any) -> RationalFunction:
        f = self.rational(node)
        if not f:
            raise self.fail("symbol entries must be nonzero")
        return f

    def constant(self, node: Any) -> int:
        f = self.rational(node)
        if not f.is_constant():
            raise self.fail(f"{f.render()} is not a constant of GF({self.fld.q})")
        return f.constant_value()

    # -- bivariate -----------------------------------------------------------

    def bivariate(self, node: Any) -> BivariatePoly:
        F = self.fld
        match node:
            case Num(value):
                return BivariatePoly.constant(F, F.embed(value))
            case Var("x"):
                return BivariatePoly.x(F)
            case Var("y"):
                return BivariatePoly.y(F)
            case Var(name):
                c = self._constant(name)
                if c is None:
                    raise self.fail(f"unknown identifier {name!r} (expected x or y)")
                return BivariatePoly.constant(F, c)
            case Neg(operand):
                return -self.bivariate(operand)
            case Pow(base, exponent):
                if exponent < 0:
                    raise self.fail("negative powers are only allowed on factors")
                return self.bivariate(base) ** exponent
            case BinOp("+", lhs, rhs):
                return self.bivariate(lhs) + self.bivariate(rhs)
            case BinOp("-", lhs, rhs):
                return self.bivariate(lhs) - self.bivariate(rhs)
            case BinOp("*", lhs, rhs):
                return self.bivariate(lhs) * self.bivariate(rhs)
        raise self.fail("division is not allowed in a polynomial of R = k[x,y]")

    def _flatten(self, node: Any, exponent: int, out: list[tuple[Any, int]]) -> None:
        match node:
            case BinOp("*", lhs, rhs):
                self._flatten(lhs, exponent, out)
                self._flatten(rhs, exponent, out)
            case Pow(base, k):
                self._flatten(base, exponent * k, out)
            case Neg(operand):
                out.append((Num(-1), exponent))
                self._flatten(operand, exponent, out)
            case _:
                out.append((node, exponent))

    def factored(self, node: Any) -> FactoredBivariate:
        """unit * prod (poly)^e; a sum is a single factor, factors are made monic."""
        F = self.fld
        pieces: list[tuple[Any, int]] = []
        self._flatten(node, 1, pieces)
        unit = 1
        factors: list[list] = []
        for piece, e in pieces:
            f = self.bivariate(piece)
            if not f:
                raise self.fail("zero factor in a factored entry")
            if f.is_constant():
                unit = F.mul(unit, F.pow(f.constant_term, e))
                continue
            lc = f.leading_coefficient
            unit = F.mul(unit, F.pow(lc, e))
            f = f.monic()
            for slot in factors:
                if slot[0] == f:
                    slot[1] += e
                    break
            else:
                factors.append([f, e])
        return FactoredBivariate(F, unit, tuple((f, e) for f, e in factors if e))


def _tower_hint(q: int) -> str:
    primes = prime_divisors(q)
    if len(primes) != 1:
        return f"GF({q}) is not a field: {q} is not a prime power"
    p = primes[0]
    e = round(math.log(q, p))
    return f"GF({q}) needs a tower: declare GF({q})=GF({p})[u]/(g) with g irreducible of degree {e} over GF({p})"


def _make_field(raw: RawField) -> FieldSpec:
    try:
        if raw.tower is None:
            if not is_prime(raw.q):
                raise SemanticError(_tower_hint(raw.q))
            return field_make(raw.q, 1, None, raw.m)
        p, var, node = raw.tower
        base = prime_field(p)
        e = 1
        while p ** e < raw.q:
            e += 1
        if p ** e != raw.q:
            raise SemanticError(f"{raw.q} is not a power of {p}")
        if var in ("t", "x", "y"):
            raise SemanticError(f"{var!r} is reserved and cannot name the tower generator")
        g = _Evaluator(base).rational(node, var)
        if g.den.degree != 0:
            raise SemanticError("the tower modulus must be a polynomial")
        return field_make(p, e, g.num.coeffs, raw.m, var)
    except SemanticError:
        raise
    except InputError as exc:
        raise SemanticError(f"{type(exc).__name__}: {exc}") from None


def _k2(ev: _Evaluator, syms: Any) -> K2Element:
    return K2Element(ev.fld, tuple(Symbol2(ev.nonzero(s.a), ev.nonzero(s.b), s.coefficient) for s in syms))


def _local_symbol(ev: _Evaluator, s: RawSymbol) -> LocalSymbol:
    a, b = ev.factored(s.a), ev.factored(s.b)
    return LocalSymbol(a, b, s.coefficient)


def _problem(fld: FieldSpec, raw: RawCommand) -> ParsedProblem:
    ev = _Evaluator(fld, raw.line, raw.column)
    kind, args = raw.kind, raw.args
    if kind in ("residues", "zero", "reciprocity", "k2-symbol"):
        payload = {"alpha": _k2(ev, args[0])}
    elif kind == "slot-find":
        payload = {"classes": tuple(_k2(ev, c) for c in args[0])}
    elif kind == "slot-verify":
        payload = {"f": ev.nonzero(args[0]), "classes": tuple(_k2(ev, c) for c in args[1])}
    elif kind in ("alg-build", "alg-split"):
        payload = {"a": ev.constant(args[0]), "b": ev.constant(args[1])}
    elif kind == "r2d-mult":
        payload = {"prime": ev.bivariate(args[0]), "u": ev.factored(args[1])}
    else:
        payload = {"symbols": tuple(_local_symbol(ev, s) for s in args[0])}
    return ParsedProblem(kind, payload, raw.line)


def parse(text: str) -> ParsedSession:
    try:
        toks = _SESSION.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise SessionSyntaxError(exc.lineno, exc.col, [exc.msg]) from None
    raw_field, *commands = toks
    fld = _make_field(raw_field)
    return ParsedSession(fld, tuple(_problem(fld, c) for c in commands))
