"""A small text format for Sullivan algebras.

    # comment
    algebra NAME
    generator x1 : 2
    generator y : 7
    d x1 = 0
    d y = x1^4 - 1/2*x1^2*x2

Statements are one per line; the grammar is in docs/dsl.ebnf.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .differential import SullivanAlgebra, check_d_squared, check_minimal_1connected
from .graded import Element, FreeAlgebra


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: tuple = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {' or '.join(expected)})"
        super().__init__(text)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[:=+\-*/^])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str  # "int" | "ident" | "op" | "eol"
    text: str
    line: int
    col: int


def tokenize_line(text: str, lineno: int) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            ch = text[pos]
            raise ParseError(f"unexpected character {ch!r}", lineno, pos + 1,
                             ("identifier", "integer", "operator"))
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), lineno, pos + 1))
        pos = m.end()
    out.append(Token("eol", "", lineno, len(text) + 1))
    return out


class _Line:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, text: str | None = None, label: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            what = label or (repr(text) if text else kind)
            found = "end of line" if t.kind == "eol" else repr(t.text)
            raise ParseError(f"found {found}", t.line, t.col, (what,))
        return self.next()

    def end(self):
        t = self.tok
        if t.kind != "eol":
            raise ParseError(f"unexpected {t.text!r}", t.line, t.col, ("end of line",))


@dataclass
class _Factor:
    name: str
    exp: int
    tok: Token


@dataclass
class _Term:
    coeff: Fraction
    factors: list
    tok: Token


def _parse_coeff(L: _Line) -> Fraction:
    num = int(L.next().text)
    if L.tok.kind == "op" and L.tok.text == "/":
        L.next()
        t = L.expect("int", label="integer denominator")
        den = int(t.text)
        if den == 0:
            raise ParseError("zero denominator", t.line, t.col)
        return Fraction(num, den)
    return Fraction(num)


def _parse_term(L: _Line, sign: int) -> _Term:
    start = L.tok
    coeff = Fraction(sign)
    factors = []
    if L.tok.kind == "int":
        coeff *= _parse_coeff(L)
        if not (L.tok.kind == "op" and L.tok.text == "*"):
            return _Term(coeff, factors, start)
        L.next()
    while True:
        t = L.expect("ident", label="generator name")
        exp = 1
        if L.tok.kind == "op" and L.tok.text == "^":
            L.next()
            exp = int(L.expect("int", label="integer exponent").text)
        factors.append(_Factor(t.text, exp, t))
        if L.tok.kind == "op" and L.tok.text == "*":
            L.next()
            continue
        return _Term(coeff, factors, start)


def _parse_expr(L: _Line) -> list[_Term]:
    terms = []
    sign = 1
    if L.tok.kind == "op" and L.tok.text in "+-":
        sign = -1 if L.next().text == "-" else 1
    if L.tok.kind not in ("int", "ident"):
        t = L.tok
        raise ParseError("missing term", t.line, t.col, ("integer", "generator name"))
    terms.append(_parse_term(L, sign))
    while L.tok.kind == "op" and L.tok.text in "+-":
        sign = -1 if L.next().text == "-" else 1
        if L.tok.kind not in ("int", "ident"):
            t = L.tok
            raise ParseError("missing term", t.line, t.col, ("integer", "generator name"))
        terms.append(_parse_term(L, sign))
    return terms


@dataclass
class DslDocument:
    name: str
    generators: list  # (name, degree, Token)
    differentials: dict  # name -> (terms, Token of the statement)


def parse_document(text: str) -> DslDocument:
    name = None
    gens: list = []
    diffs: dict = {}
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(raw, lineno)
        L = _Line(toks)
        t = L.tok
        if t.kind == "eol":
            continue
        if t.kind != "ident" or t.text not in ("algebra", "generator", "d"):
            raise ParseError(f"unknown statement {t.text!r}", t.line, t.col, ("'algebra'", "'generator'", "'d'"))
        L.next()
        if t.text == "algebra":
            n = L.expect("ident", label="algebra name")
            if name is not None:
                raise ParseError("algebra name given twice", t.line, t.col)
            name = n.text
            L.end()
        elif t.text == "generator":
            g = L.expect("ident", label="generator name")
            L.expect("op", ":", "':'")
            dt = L.expect("int", label="integer degree")
            L.end()
            if g.text in seen:
                raise ParseError(f"generator {g.text} declared twice", g.line, g.col)
            if diffs:
                raise ParseError("generator declared after a differential", t.line, t.col)
            seen[g.text] = g
            gens.append((g.text, int(dt.text), dt))
        else:
            g = L.expect("ident", label="generator name")
            L.expect("op", "=", "'='")
            terms = _parse_expr(L)
            L.end()
            if g.text not in seen:
                raise ParseError(f"unknown generator {g.text}", g.line, g.col, tuple(sorted(seen)) or ())
            if g.text in diffs:
                raise ParseError(f"differential of {g.text} given twice", g.line, g.col)
            for term in terms:
                for f in term.factors:
                    if f.name not in seen:
                        raise ParseError(f"unknown generator {f.name}", f.tok.line, f.tok.col)
            diffs[g.text] = (terms, g)
    if name is None:
        name = "A"
    if not gens:
        raise ParseError("no generators declared", max(1, len(text.splitlines())), 1, ("'generator'",))
    for g, _, tok in gens:
        if g not in diffs:
            raise ParseError(f"no differential given for {g}", tok.line, 1, (f"'d {g} = ...'",))
    return DslDocument(name, gens, diffs)


def _element(free: FreeAlgebra, terms: list[_Term]) -> Element:
    out = free.zero()
    for term in terms:
        word = []
        for f in term.factors:
            word.extend([f.name] * f.exp)
        out = out + free.normalize(word, term.coeff)
    return out


def parse_dsl(text: str, *, validate: bool = True) -> SullivanAlgebra:
    doc = parse_document(text)
    for g, deg, tok in doc.generators:
        if deg < 2:
            raise ParseError(f"generator {g} has degree {deg}; degrees must be at least 2", tok.line, tok.col)
    free = FreeAlgebra([(g, d) for g, d, _ in doc.generators])
    diff = {}
    for g, deg, _ in doc.generators:
        terms, tok = doc.differentials[g]
        e = _element(free, terms)
        for term in terms:
            if not term.coeff:
                continue
            mono_deg = sum(free.decl(f.name).degree * f.exp for f in term.factors)
            if mono_deg != deg + 1:
                raise ParseError(f"term of degree {mono_deg} in d {g}; expected degree {deg + 1}",
                                 term.tok.line, term.tok.col)
        diff[g] = e
    A = SullivanAlgebra(free, diff, doc.name)
    if validate:
        minimal = check_minimal_1connected(A)
        if not minimal:
            g, problem = minimal.failures[0]
            tok = doc.differentials[g][1]
            raise ParseError(f"d {g} is not decomposable: {problem}", tok.line, tok.col)
        d2 = check_d_squared(A)
        if not d2:
            g, residual = d2.failures[0]
            tok = doc.differentials[g][1]
            raise ParseError(f"d(d {g}) = {residual} is not zero", tok.line, tok.col)
    return A


def emit_dsl(A: SullivanAlgebra) -> str:
    lines = [f"algebra {A.name}"]
    for g in A.generators:
        lines.append(f"generator {g.name} : {g.degree}")
    for g in A.generators:
        lines.append(f"d {g.name} = {A.diff[g.name]}")
    return "\n".join(lines) + "\n"
