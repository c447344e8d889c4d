"""Exact scalars, monomials and polynomials over the rationals.

Monomials are exponent tuples indexed by position in a :class:`VariableSet`.
The term order is degree-lexicographic: total degree first, then the
exponent of the earliest declared variable, so ``x1 > x2 > ... `` among
variables of equal degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Scalar = Fraction
Exps = Tuple[int, ...]


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot make a scalar from {value!r}")


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class VariableMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VariableSet:
    """Ordered, duplicate-free variable names; declaration order is precedence."""

    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def one(self) -> Exps:
        return (0,) * len(self.names)

    def var(self, i: int) -> Exps:
        e = [0] * len(self.names)
        e[i] = 1
        return tuple(e)

    def extend(self, *names: str) -> "VariableSet":
        return VariableSet(self.names + tuple(names))


# -- raw exponent-tuple helpers (hot paths use these directly) -------------

def emul(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def ediv(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))


def edivides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def elcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def deglex_key(e: Exps):
    return (sum(e), e)


_MONOMIAL_CACHE: Dict[Tuple[int, int], Tuple[Exps, ...]] = {}


def monomials_of_degree(nvars: int, degree: int) -> Tuple[Exps, ...]:
    """All exponent tuples of the given total degree, in descending deglex order."""
    key = (nvars, degree)
    hit = _MONOMIAL_CACHE.get(key)
    if hit is not None:
        return hit
    if degree < 0:
        out: Tuple[Exps, ...] = ()
    elif nvars == 0:
        out = ((),) if degree == 0 else ()
    else:
        found = []
        for combo in combinations_with_replacement(range(nvars), degree):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            found.append(tuple(e))
        out = tuple(sorted(found, reverse=True))
    _MONOMIAL_CACHE[key] = out
    return out


# -- term order -------------------------------------------------------------

@dataclass(frozen=True)
class TermOrder:
    """Degree-lexicographic order; earlier variables are larger."""

    kind: str = "deglex"

    def key(self, e: Exps):
        return deglex_key(e)

    def compare(self, a: Exps, b: Exps) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


DEGLEX = TermOrder()


@dataclass(frozen=True)
class Monomial:
    vars: VariableSet
    exps: Exps

    def __post_init__(self):
        if len(self.exps) != len(self.vars):
            raise ValueError("exponent vector does not match the variable set")
        if any(x < 0 for x in self.exps):
            raise ValueError("negative exponent")

    @classmethod
    def one(cls, vars: VariableSet) -> "Monomial":
        return cls(vars, vars.one())

    @classmethod
    def of(cls, vars: VariableSet, **powers: int) -> "Monomial":
        e = [0] * len(vars)
        for name, k in powers.items():
            e[vars.index(name)] += k
        return cls(vars, tuple(e))

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def support(self) -> Dict[int, int]:
        return {i: k for i, k in enumerate(self.exps) if k}

    def __mul__(self, other: "Monomial") -> "Monomial":
        return mono_mul(self, other)

    def divides(self, other: "Monomial") -> bool:
        _check_vars(self.vars, other.vars)
        return edivides(self.exps, other.exps)

    def __str__(self) -> str:
        return format_exps(self.exps, self.vars) or "1"


def _check_vars(a: VariableSet, b: VariableSet) -> None:
    if a != b:
        raise VariableMismatch(f"variable sets differ: {a.names} vs {b.names}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    _check_vars(a.vars, b.vars)
    return Monomial(a.vars, emul(a.exps, b.exps))


def mono_compare(a: Monomial, b: Monomial, order: TermOrder = DEGLEX) -> int:
    """-1, 0 or 1 as ``a`` is smaller, equal or larger than ``b``."""
    _check_vars(a.vars, b.vars)
    return order.compare(a.exps, b.exps)


def format_exps(e: Exps, vars: VariableSet | Sequence[str]) -> str:
    names = vars.names if isinstance(vars, VariableSet) else tuple(vars)
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


# -- polynomials ------------------------------------------------------------

class Polynomial:
    """Sparse polynomial with rational coefficients; treat as immutable."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VariableSet, terms: Mapping[Exps, Fraction] | None = None):
        self.vars = vars
        clean: Dict[Exps, Fraction] = {}
        n = len(vars)
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError("exponent vector does not match the variable set")
            c = scalar(c)
            if c:
                clean[tuple(e)] = clean.get(tuple(e), Fraction(0)) + c
                if not clean[tuple(e)]:
                    del clean[tuple(e)]
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, vars: VariableSet, c) -> "Polynomial":
        return cls(vars, {vars.one(): scalar(c)})

    @classmethod
    def variable(cls, vars: VariableSet, name: str | int) -> "Polynomial":
        i = vars.index(name) if isinstance(name, str) else name
        return cls(vars, {vars.var(i): Fraction(1)})

    @classmethod
    def linear(cls, vars: VariableSet, coeffs: Mapping[int, Fraction] | Sequence) -> "Polynomial":
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        return cls(vars, {vars.var(i): c for i, c in items})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_linear_form(self) -> bool:
        return all(sum(e) == 1 for e in self.terms)

    def leading(self, order: TermOrder = DEGLEX) -> Tuple[Exps, Fraction]:
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order: TermOrder = DEGLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def _same(self, other: "Polynomial") -> None:
        _check_vars(self.vars, other.vars)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._same(other)
            return other
        return Polynomial.constant(self.vars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._same(other)
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = emul(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.vars, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = scalar(c)
        if not c:
            return Polynomial(self.vars)
        return Polynomial(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def poly_arith(a: Polynomial, b, op: str) -> Polynomial:
    """Dispatch for ``add``, ``sub``, ``mul`` and ``scale`` (``b`` a scalar)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        if not isinstance(b, Polynomial):
            raise TypeError("mul expects a polynomial; use scale for scalars")
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def format_terms(terms: Iterable[Tuple[str, Fraction]]) -> str:
    """Join ``(body, coefficient)`` pairs as ``c*body`` with signs; empty body is a constant."""
    out = []
    for body, c in terms:
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not body:
            text = format_scalar(a)
        elif a == 1:
            text = body
        else:
            text = f"{format_scalar(a)}*{body}"
        if not out:
            out.append(("-" if sign == "-" else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out) if out else "0"


def format_polynomial(p: Polynomial) -> str:
    return format_terms((format_exps(e, p.vars), c) for e, c in p.sorted_terms())


_POLY_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|([-+*]))")


def parse_polynomial(text: str, vars: VariableSet) -> Polynomial:
    """Parse ``3/2*x1^2*y1 - y2`` style input over ``vars``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        num, name, caret, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif caret:
            tokens.append(("^", caret))
        else:
            tokens.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    i = 0
    total: Dict[Exps, Fraction] = {}
    n = len(vars)
    if not tokens:
        raise ValueError("empty polynomial")
    while i < len(tokens):
        sign = 1
        if tokens[i] == ("op", "-") or tokens[i] == ("op", "+"):
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif total or i > 0:
            raise ValueError("expected + or - between terms")
        coeff = Fraction(sign)
        exps = [0] * n
        expect_factor = True
        while expect_factor:
            if i >= len(tokens):
                raise ValueError("dangling operator")
            kind, val = tokens[i]
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                k = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "^":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                        raise ValueError("exponent must be a nonnegative integer")
                    k = int(tokens[i + 1][1])
                    i += 2
                if val not in vars.names:
                    raise ValueError(f"unknown variable {val!r}")
                exps[vars.index(val)] += k
            else:
                raise ValueError(f"unexpected {val!r}")
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
            else:
                expect_factor = False
        e = tuple(exps)
        v = total.get(e, 0) + coeff
        if v:
            total[e] = v
        else:
            total.pop(e, None)
    return Polynomial(vars, total)
