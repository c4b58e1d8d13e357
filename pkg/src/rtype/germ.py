"""Expression grammar for Reinhardt defining functions and the monomial germ model.

Grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)* ;
    term   := factor ('*' factor)* ;
    factor := base ('^' INT)? ;
    base   := RATIONAL | '(' expr ')' | '|' prod '|' | 'log' '|' prod '|' ;
    prod   := COORD ('*' COORD)* ;   COORD := 'z' INT ;

A leading sign is accepted on any factor.  Coordinates may only appear inside
``|...|`` or ``log|...|``; this is what makes the resulting function invariant
under rotations of the individual coordinates.

Germs come in two parsed models.  ``MOD`` uses ``t_j = |z_j|^2`` and ``LOG``
uses ``u_j = log|z_j|``.  Germs built by :mod:`rtype.geometry` may mix the two
kinds per coordinate; see :attr:`Germ.kinds`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import mpoly
from .exact import ExactComplex, as_complex, format_rational
from .mpoly import Exps, Poly

__all__ = [
    "ExprAst",
    "Germ",
    "GermError",
    "ParseError",
    "NonReinhardtError",
    "UnknownCoordinateError",
    "MixedModelError",
    "OddModulusPowerError",
    "parse_expr",
    "to_germ",
    "parse_germ",
    "germ_derivatives",
    "eval_ast",
]


class GermError(ValueError):
    pass


class ParseError(GermError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NonReinhardtError(ParseError):
    pass


class UnknownCoordinateError(ParseError):
    pass


class MixedModelError(GermError):
    pass


class OddModulusPowerError(GermError):
    pass


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class ModAtom:
    """``|z_{i1} * ... * z_{im}|`` with zero-based indices."""

    indices: Tuple[int, ...]


@dataclass(frozen=True)
class LogAtom:
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Const, ModAtom, LogAtom, BinOp, Neg, Pow]


@dataclass(frozen=True)
class ExprAst:
    root: Node
    n: int
    text: str = ""

    def atoms(self) -> List[Node]:
        out: List[Node] = []

        def walk(node):
            if isinstance(node, (ModAtom, LogAtom)):
                out.append(node)
            elif isinstance(node, BinOp):
                walk(node.left)
                walk(node.right)
            elif isinstance(node, (Neg,)):
                walk(node.operand)
            elif isinstance(node, Pow):
                walk(node.base)

        walk(self.root)
        return out


# --- tokenizer / parser ----------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<coord>z\d+)|(?P<log>log)|(?P<op>[-+*/^()|]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Tok]:
    src = text.replace("−", "-").replace("·", "*")
    toks: List[_Tok] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        line = src.count("\n", 0, pos) + 1
        if not m or m.end() == pos:
            rest = src[pos:]
            if not rest.strip():
                break
            skip = len(rest) - len(rest.lstrip())
            at = pos + skip
            line = src.count("\n", 0, at) + 1
            col = at - (src.rfind("\n", 0, at) + 1) + 1
            raise ParseError(f"unexpected character {src[at]!r}", line, col)
        start = m.start(m.lastgroup)
        line = src.count("\n", 0, start) + 1
        col = start - (src.rfind("\n", 0, start) + 1) + 1
        kind = m.lastgroup
        toks.append(_Tok(kind if kind != "op" else m.group("op"), m.group(kind), line, col))
        pos = m.end()
    end_line = src.count("\n") + 1
    end_col = len(src) - (src.rfind("\n") + 1) + 1
    toks.append(_Tok("eof", "", end_line, end_col))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.tok
        if t.kind != kind:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {kind!r}, found {found}", t.line, t.col)
        return self.advance()

    def parse(self) -> Node:
        if self.tok.kind == "eof":
            raise ParseError("empty expression", 1, 1)
        node = self.expr()
        if self.tok.kind != "eof":
            t = self.tok
            raise ParseError(f"unexpected {t.text!r}", t.line, t.col)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        if self.tok.kind in ("+", "-"):
            sign = self.advance().kind
            inner = self.factor()
            if sign == "+":
                return inner
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Neg(inner)
        node = self.base()
        if self.tok.kind == "^":
            self.advance()
            e = self.expect("int")
            node = Pow(node, int(e.text))
        return node

    def base(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.advance()
            num = int(t.text)
            if self.tok.kind == "/":
                self.advance()
                d = self.expect("int")
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.line, d.col)
                return Const(Fraction(num, int(d.text)))
            return Const(Fraction(num))
        if t.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "|":
            self.advance()
            idx = self.prod()
            self.expect("|")
            return ModAtom(idx)
        if t.kind == "log":
            self.advance()
            self.expect("|")
            idx = self.prod()
            self.expect("|")
            return LogAtom(idx)
        if t.kind == "coord":
            raise NonReinhardtError(f"{t.text} used outside |·| or log|·|", t.line, t.col)
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"unexpected {found}", t.line, t.col)

    def prod(self) -> Tuple[int, ...]:
        idx = [self.coord()]
        while self.tok.kind == "*":
            self.advance()
            idx.append(self.coord())
        return tuple(sorted(idx))

    def coord(self) -> int:
        t = self.expect("coord")
        j = int(t.text[1:])
        if j < 1 or j > self.n:
            raise UnknownCoordinateError(f"unknown coordinate {t.text} (n = {self.n})", t.line, t.col)
        return j - 1


def parse_expr(text: str, n: int) -> ExprAst:
    """Parse a defining-function expression over ``n`` coordinates."""
    if not text or not text.strip():
        raise ParseError("empty expression", 1, 1)
    return ExprAst(_Parser(text, n).parse(), n, text)


def eval_ast(ast: ExprAst, values: Sequence) -> Fraction:
    """Evaluate exactly; ``values[i]`` is ``|z_i|`` for modulus atoms, ``log|z_i|`` for log atoms."""

    def ev(node) -> Fraction:
        if isinstance(node, Const):
            return node.value
        if isinstance(node, ModAtom):
            r = Fraction(1)
            for i in node.indices:
                r *= values[i]
            return r
        if isinstance(node, LogAtom):
            return sum((Fraction(values[i]) for i in node.indices), Fraction(0))
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            return ev(node.base) ** node.exponent
        a, b = ev(node.left), ev(node.right)
        return a + b if node.op == "+" else a - b if node.op == "-" else a * b

    return ev(ast.root)


# --- germs -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Germ:
    """Monomial-sum model of a defining function near ``base_point``.

    ``kinds[i]`` is ``"t"`` when variable ``i`` stands for ``|z_i|^2`` and
    ``"u"`` when it stands for ``log|z_i / base_i|``.  For parsed LOG germs the
    base coordinates have modulus one, so ``u_i`` is just ``log|z_i|``.
    ``trunc`` is ``None`` for exact polynomials, otherwise the total degree up
    to which the support is exact.
    """

    kinds: Tuple[str, ...]
    support: Dict[Exps, Fraction]
    constant: Fraction = Fraction(0)
    base_point: Tuple[ExactComplex, ...] = ()
    normal_index: Optional[int] = None
    trunc: Optional[int] = None
    flags: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        sup = {tuple(e): Fraction(c) for e, c in self.support.items() if c}
        const = Fraction(self.constant) + sup.pop(mpoly.zero_exps(len(self.kinds)), Fraction(0))
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "constant", const)
        object.__setattr__(self, "base_point", tuple(as_complex(x) for x in self.base_point))
        if self.base_point and len(self.base_point) != len(self.kinds):
            raise GermError("base point dimension does not match the germ")
        for e in sup:
            if len(e) != len(self.kinds):
                raise GermError("exponent vector dimension does not match the germ")

    @property
    def n(self) -> int:
        return len(self.kinds)

    @property
    def model(self) -> str:
        if all(k == "t" for k in self.kinds):
            return "MOD"
        if all(k == "u" for k in self.kinds):
            return "LOG"
        return "MIXED"

    def poly(self) -> Poly:
        p = dict(self.support)
        if self.constant:
            p[mpoly.zero_exps(self.n)] = self.constant
        return p

    def with_(self, **changes) -> "Germ":
        return replace(self, **changes)

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return (
            self.kinds == other.kinds
            and self.support == other.support
            and self.constant == other.constant
            and self.base_point == other.base_point
            and self.normal_index == other.normal_index
            and self.trunc == other.trunc
        )

    def __hash__(self):
        return hash((self.kinds, tuple(sorted(self.support.items())), self.constant, self.base_point))

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a point of the variable space (t- or u-coordinates)."""
        if len(point) != self.n:
            raise GermError(f"point has {len(point)} coordinates, germ has {self.n}")
        return mpoly.evaluate(self.poly(), [Fraction(x) for x in point])

    def base_variables(self) -> Tuple[Fraction, ...]:
        """Variable-space coordinates of the base point."""
        if not self.base_point:
            raise GermError("germ has no base point")
        return tuple(
            p.abs2() if k == "t" else Fraction(0) for k, p in zip(self.kinds, self.base_point)
        )

    def value_at_base(self) -> Fraction:
        return self.evaluate(self.base_variables())

    def degree(self) -> int:
        return mpoly.degree(self.support)

    def coefficients_positive(self) -> bool:
        return all(c > 0 for c in self.support.values())

    def to_text(self) -> str:
        """Canonical text; monomials in lexicographic exponent order."""
        parts: List[Tuple[Fraction, str]] = []
        for e in sorted(self.poly()):
            c = self.poly()[e]
            factors = []
            for i, k in enumerate(e):
                if not k:
                    continue
                if self.kinds[i] == "t":
                    factors.append(f"|z{i + 1}|^{2 * k}")
                else:
                    factors.append(f"log|z{i + 1}|" + (f"^{k}" if k > 1 else ""))
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = format_rational(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{format_rational(mag)}*{body}"
            parts.append((c, text))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for c, text in parts[1:]:
            out += (" - " if c < 0 else " + ") + text
        return out

    def __repr__(self):
        return f"Germ({self.model}, {self.to_text()!r}, base={[str(p) for p in self.base_point]})"


def _ast_to_poly(ast: ExprAst) -> Tuple[str, Poly]:
    atoms = ast.atoms()
    kinds = {type(a) for a in atoms}
    if not atoms:
        raise GermError("expression has no coordinate dependence")
    if len(kinds) > 1:
        raise MixedModelError("expression mixes |z| and log|z| atoms")
    model = "MOD" if ModAtom in kinds else "LOG"
    n = ast.n

    def conv(node) -> Poly:
        if isinstance(node, Const):
            return mpoly.const(node.value, n)
        if isinstance(node, ModAtom):
            e = [0] * n
            for i in node.indices:
                e[i] += 1
            return {tuple(e): Fraction(1)}
        if isinstance(node, LogAtom):
            p: Poly = {}
            for i in node.indices:
                p = mpoly.add(p, mpoly.var(i, n))
            return p
        if isinstance(node, Neg):
            return mpoly.scale(conv(node.operand), -1)
        if isinstance(node, Pow):
            return mpoly.power(conv(node.base), node.exponent, n)
        a, b = conv(node.left), conv(node.right)
        if node.op == "+":
            return mpoly.add(a, b)
        if node.op == "-":
            return mpoly.add(a, b, -1)
        return mpoly.mul(a, b)

    poly = conv(ast.root)
    if model == "MOD":
        halved: Poly = {}
        for e, c in poly.items():
            if any(k % 2 for k in e):
                raise OddModulusPowerError(
                    f"odd power of a modulus in monomial {e}: not smooth in |z|^2"
                )
            halved[tuple(k // 2 for k in e)] = c
        poly = halved
    return model, poly


def to_germ(ast: ExprAst, base_point: Sequence = ()) -> Germ:
    """Expand the AST into a monomial germ (MOD or LOG model)."""
    model, poly = _ast_to_poly(ast)
    base = tuple(as_complex(x) for x in base_point)
    if base and len(base) != ast.n:
        raise GermError(f"base point has {len(base)} coordinates, expected {ast.n}")
    if model == "LOG" and base:
        for i, p in enumerate(base):
            if p.abs2() != 1:
                raise GermError(
                    f"log model needs |p_{i + 1}| = 1 so that log|p| is exact (got {p})"
                )
    kind = "t" if model == "MOD" else "u"
    zero = mpoly.zero_exps(ast.n)
    return Germ(
        kinds=(kind,) * ast.n,
        support={e: c for e, c in poly.items() if e != zero},
        constant=poly.get(zero, Fraction(0)),
        base_point=base,
    )


def parse_germ(text: str, n: int, base_point: Sequence = ()) -> Germ:
    return to_germ(parse_expr(text, n), base_point)


def germ_derivatives(g: Germ, point: Sequence, order: str = "gradient"):
    """Exact gradient (list) or Hessian (list of rows) in the germ's variables."""
    if len(point) != g.n:
        raise GermError(f"point has {len(point)} coordinates, germ has {g.n}")
    pt = [Fraction(x) for x in point]
    p = g.poly()
    if order == "gradient":
        return [mpoly.evaluate(mpoly.diff(p, i), pt) for i in range(g.n)]
    if order == "hessian":
        firsts = [mpoly.diff(p, i) for i in range(g.n)]
        return [[mpoly.evaluate(mpoly.diff(firsts[i], j), pt) for j in range(g.n)] for i in range(g.n)]
    raise ValueError(f"unknown derivative order {order!r}")
