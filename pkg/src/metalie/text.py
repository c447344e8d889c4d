"""Text formats for algebras, modules and elements.

Algebra files::

    algebra A {
      gens: a1 a2 a3;
      rels: [a1,a2,a3];
    }

Element expressions: ``[u,v,w]`` is the left-normed product ``(u o v) o w``
(entries may be sums or nested brackets), ``p/q*`` sets a coefficient, and a
tail ``*a2^k`` multiplies on the right by ``a2`` ``k`` times.  The printed
form of any element reparses to the same element.

Module files::

    module M over [x1,x2] {
      gens: e21@2 e31@2;
      rels: e21*x1 - e31*x2;
    }

``@d`` is the generator degree (default 1).  Generator names may be
identifiers or bracket tokens like ``[a2,a1]``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .fp import AlgebraPresentation, LinearRelatorError
from .free import free_context
from .lie import AlgebraContext, LieElement
from .modules import FreeModuleElement, ModulePresentation, Terms, t_add
from .poly import VariableSet


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.message, self.line, self.col = message, line, col


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "id" | "op" | "end"
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<num>\d+)"
                    r"|(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[\[\](){},;:+\-*/^@])")


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind in ("num", "id", "op"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("end", "", line, pos - start + 1))
    return out


class _Stream:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "id") and tok.text == text

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "end":
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise self.error(f"expected {what}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek
        return ParseError(message, tok.line, tok.col)


def _scalar(s: _Stream) -> Fraction:
    num = int(s.expect_kind("num", "a number").text)
    if s.at("/") and s.tokens[s.i + 1].kind == "num":
        s.next()
        den = int(s.next().text)
        if den == 0:
            raise s.error("zero denominator")
        return Fraction(num, den)
    return Fraction(num)


# -- Lie element expressions -----------------------------------------------------

class _ElementParser:
    def __init__(self, s: _Stream, ctx: AlgebraContext):
        self.s, self.ctx = s, ctx

    def expr(self) -> LieElement:
        s = self.s
        sign = Fraction(1)
        if s.at("+") or s.at("-"):
            sign = Fraction(-1) if s.next().text == "-" else sign
        acc = self.term().scale(sign)
        while s.at("+") or s.at("-"):
            sign = Fraction(-1) if s.next().text == "-" else Fraction(1)
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> LieElement:
        s = self.s
        coeff = Fraction(1)
        base: Optional[LieElement] = None
        first = s.peek
        while True:
            if s.peek.kind == "num":
                coeff *= _scalar(s)
            else:
                start = s.peek
                atom = self.atom()
                power = 1
                if s.at("^"):
                    s.next()
                    power = int(s.expect_kind("num", "an exponent").text)
                if base is None:
                    if power != 1:
                        raise s.error("a power needs something on its left to act on", start)
                    base = atom
                else:
                    for _ in range(power):
                        base = self.ctx.mul(base, atom)
            if not s.at("*"):
                break
            s.next()
        if base is None:
            if coeff == 0:
                return self.ctx.zero()
            raise s.error("a bare nonzero scalar is not a Lie element", first)
        return base.scale(coeff)

    def atom(self) -> LieElement:
        s = self.s
        tok = s.peek
        if tok.kind == "id":
            s.next()
            if tok.text not in self.ctx.vars.names:
                raise s.error(f"unknown generator {tok.text!r}", tok)
            return self.ctx.gen(tok.text)
        if s.at("("):
            s.next()
            out = self.expr()
            s.expect(")")
            return out
        if s.at("["):
            s.next()
            items = [self.expr()]
            while s.at(","):
                s.next()
                items.append(self.expr())
            s.expect("]")
            if len(items) < 2:
                raise s.error("a bracket needs at least two entries", tok)
            acc = items[0]
            for x in items[1:]:
                acc = self.ctx.mul(acc, x)
            return acc
        raise s.error(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_element(text: str, ctx: AlgebraContext) -> LieElement:
    s = _Stream(tokenize(text))
    out = _ElementParser(s, ctx).expr()
    if s.peek.kind != "end":
        raise s.error(f"unexpected {s.peek.text!r}")
    return out


def format_element(a: LieElement) -> str:
    return str(a)


# -- algebra files -----------------------------------------------------------------

def _name_list(s: _Stream) -> List[Token]:
    out = []
    while s.peek.kind == "id" and s.peek.text != "rels":
        out.append(s.next())
    return out


def _parse_algebra(s: _Stream) -> AlgebraPresentation:
    s.expect("algebra")
    name = s.expect_kind("id", "an algebra name").text
    s.expect("{")
    s.expect("gens")
    s.expect(":")
    gens: List[str] = []
    for tok in _name_list(s):
        if tok.text in gens:
            raise s.error(f"duplicate generator {tok.text!r}", tok)
        gens.append(tok.text)
    s.expect(";")
    free = free_context(gens, name=name)
    relators: List[LieElement] = []
    if s.at("rels"):
        s.next()
        s.expect(":")
        parser = _ElementParser(s, free)
        if not s.at(";"):
            while True:
                tok = s.peek
                r = parser.expr()
                if r.linear:
                    raise s.error(f"relator {r} has a nonzero linear part", tok)
                relators.append(r)
                if not s.at(","):
                    break
                s.next()
        s.expect(";")
    s.expect("}")
    try:
        return AlgebraPresentation(name, free, tuple(relators))
    except LinearRelatorError as exc:  # pragma: no cover - caught above with a position
        raise ParseError(str(exc)) from exc


def parse_algebra_file(text: str) -> AlgebraPresentation:
    """Parse one ``algebra NAME { ... }`` block."""
    s = _Stream(tokenize(text))
    pres = _parse_algebra(s)
    if s.peek.kind != "end":
        raise s.error(f"trailing input {s.peek.text!r}")
    return pres


def parse_algebra_files(text: str) -> List[AlgebraPresentation]:
    s = _Stream(tokenize(text))
    out = []
    while s.peek.kind != "end":
        out.append(_parse_algebra(s))
    return out


def format_algebra(pres: AlgebraPresentation) -> str:
    rels = ", ".join(str(r) for r in pres.relators)
    lines = [f"algebra {pres.name} {{", f"  gens: {' '.join(pres.names)};"]
    lines.append(f"  rels: {rels};" if rels else "  rels: ;")
    lines.append("}")
    return "\n".join(lines) + "\n"


def same_presentation(a: AlgebraPresentation, b: AlgebraPresentation) -> bool:
    if a.name != b.name or a.names != b.names or len(a.relators) != len(b.relators):
        return False
    return all(x.linear == y.linear and x.comm == y.comm for x, y in zip(a.relators, b.relators))


# -- module files --------------------------------------------------------------------

def _gen_token(s: _Stream) -> Tuple[str, Token]:
    tok = s.peek
    if tok.kind == "id":
        s.next()
        return tok.text, tok
    if s.at("["):
        parts = []
        depth = 0
        while True:
            t = s.next()
            if t.kind == "end":
                raise s.error("unclosed bracket in generator name", tok)
            parts.append(t.text)
            depth += {"[": 1, "]": -1}.get(t.text, 0)
            if depth == 0:
                return "".join(parts), tok
    raise s.error(f"expected a generator name, found {tok.text or 'end of input'!r}", tok)


def _module_element(s: _Stream, ring: VariableSet, gens: Sequence[str]) -> FreeModuleElement:
    index = {g: i for i, g in enumerate(gens)}
    terms: Terms = {}
    sign = Fraction(1)
    if s.at("+") or s.at("-"):
        sign = Fraction(-1) if s.next().text == "-" else sign
    while True:
        coeff = sign
        gen: Optional[int] = None
        exps = [0] * len(ring)
        while True:
            tok = s.peek
            if tok.kind == "num":
                coeff *= _scalar(s)
            else:
                name, tok = _gen_token(s)
                power = 1
                if s.at("^"):
                    s.next()
                    power = int(s.expect_kind("num", "an exponent").text)
                if name in index:
                    if gen is not None or power != 1:
                        raise s.error("each term needs exactly one generator", tok)
                    gen = index[name]
                elif name in ring.names:
                    exps[ring.index(name)] += power
                else:
                    raise s.error(f"unknown symbol {name!r}", tok)
            if not s.at("*"):
                break
            s.next()
        if gen is None:
            raise s.error("term without a module generator")
        t_add(terms, {(gen, tuple(exps)): coeff})
        if not (s.at("+") or s.at("-")):
            break
        sign = Fraction(-1) if s.next().text == "-" else Fraction(1)
    return FreeModuleElement(ring, gens, terms)


def parse_module_element(text: str, pres: ModulePresentation) -> FreeModuleElement:
    s = _Stream(tokenize(text))
    out = _module_element(s, pres.ring, pres.gens)
    if s.peek.kind != "end":
        raise s.error(f"unexpected {s.peek.text!r}")
    return out


def parse_module_file(text: str) -> ModulePresentation:
    s = _Stream(tokenize(text))
    s.expect("module")
    name = s.expect_kind("id", "a module name").text
    s.expect("over")
    s.expect("[")
    names = []
    while not s.at("]"):
        tok = s.expect_kind("id", "a variable name")
        if tok.text in names:
            raise s.error(f"duplicate variable {tok.text!r}", tok)
        names.append(tok.text)
        if not s.at("]"):
            s.expect(",")
    s.expect("]")
    ring = VariableSet(tuple(names))
    s.expect("{")
    s.expect("gens")
    s.expect(":")
    gens, degrees = [], []
    while not s.at(";"):
        g, tok = _gen_token(s)
        if g in gens or g in ring.names:
            raise s.error(f"duplicate name {g!r}", tok)
        d = 1
        if s.at("@"):
            s.next()
            d = int(s.expect_kind("num", "a degree").text)
        gens.append(g)
        degrees.append(d)
    s.expect(";")
    rels: List[FreeModuleElement] = []
    if s.at("rels"):
        s.next()
        s.expect(":")
        if not s.at(";"):
            rels.append(_module_element(s, ring, gens))
            while s.at(","):
                s.next()
                rels.append(_module_element(s, ring, gens))
        s.expect(";")
    s.expect("}")
    if s.peek.kind != "end":
        raise s.error(f"trailing input {s.peek.text!r}")
    return ModulePresentation(ring, tuple(gens), tuple(rels), tuple(degrees), name)


def format_module(pres: ModulePresentation) -> str:
    gens = " ".join(f"{g}@{d}" for g, d in zip(pres.gens, pres.degrees))
    rels = ", ".join(str(r) for r in pres.relations)
    return (f"module {pres.name} over [{','.join(pres.ring.names)}] {{\n"
            f"  gens: {gens};\n  rels: {rels};\n}}\n")


# -- machine-readable output ---------------------------------------------------------

def element_records(a: LieElement) -> Iterator[str]:
    """One ``term <coefficient> <body>`` line per term, coefficients as ``p/q``."""
    ctx = a.ctx
    for i, c in a.linear:
        yield f"term {c} {ctx.names[i]}"
    for (g, e), c in sorted(a.comm.items(), key=lambda kv: ctx.gb.order.key(kv[0]), reverse=True):
        mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(ctx.names, e) if k)
        body = ctx.module.gens[g] + (f"*{mono}" if mono else "")
        yield f"term {c} {body}"
