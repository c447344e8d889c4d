"""Metabelian Lie algebras as ``V (+) M``: a linear part over the generators and a
commutant part in a module over the polynomial ring on those generators.

Every context carries one module generator per unordered pair of algebra
generators, standing for their product ``g_p o g_q``.  The product of two
elements ``(v1, m1)`` and ``(v2, m2)`` is ``(0, v1 v2 - m2.v1 + m1.v2)``,
where ``v1 v2`` is read off the pair table and ``m.v`` is the module action
of the linear form ``v``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .modules import (
    DEFAULT_BUDGET,
    FreeModuleElement,
    GroebnerBasis,
    ModulePresentation,
    Terms,
    buchberger,
    t_act,
    t_add,
)
from .poly import Exps, Polynomial, VariableSet, format_exps, format_scalar, monomials_of_degree

Pair = Tuple[int, int]


class ContextMismatch(ValueError):
    pass


class AlgebraContext:
    """A finitely presented metabelian Lie algebra with its compiled commutant module.

    ``pairs[g] = (p, q)`` says module generator ``g`` is ``gen_p o gen_q``;
    each unordered pair of distinct generators appears exactly once.
    """

    def __init__(self, names: Sequence[str] | VariableSet, pairs: Sequence[Pair],
                 relations: Iterable[FreeModuleElement] = (), *, kind: str = "presented",
                 name: str = "A", budget: int = DEFAULT_BUDGET, info: Optional[dict] = None):
        self.vars = names if isinstance(names, VariableSet) else VariableSet(tuple(names))
        self.name = name
        self.kind = kind
        self.info = dict(info or {})
        n = len(self.vars)
        self.pairs: Tuple[Pair, ...] = tuple(pairs)
        self.pair_index: Dict[Pair, int] = {}
        for g, (p, q) in enumerate(self.pairs):
            if p == q or not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"bad generator pair {(p, q)}")
            if (p, q) in self.pair_index or (q, p) in self.pair_index:
                raise ValueError(f"pair {(p, q)} listed twice")
            self.pair_index[(p, q)] = g
        if len(self.pairs) != n * (n - 1) // 2:
            raise ValueError("every unordered pair of generators needs a module generator")
        gen_names = tuple(f"[{self.vars.names[p]},{self.vars.names[q]}]" for p, q in self.pairs)
        self.module = ModulePresentation(self.vars, gen_names, tuple(relations), (2,) * len(self.pairs), name)
        self.gb: GroebnerBasis = buchberger(self.module, budget=budget)

    # -- construction helpers ------------------------------------------------
    @property
    def names(self) -> Tuple[str, ...]:
        return self.vars.names

    @property
    def rank(self) -> int:
        return len(self.vars)

    def bracket_terms(self, p: int, q: int) -> Terms:
        """``gen_p o gen_q`` as raw module terms."""
        if p == q:
            return {}
        one = self.vars.one()
        g = self.pair_index.get((p, q))
        if g is not None:
            return {(g, one): Fraction(1)}
        return {(self.pair_index[(q, p)], one): Fraction(-1)}

    def element(self, linear: Mapping[int, Fraction] | None = None,
                comm: Mapping | FreeModuleElement | None = None) -> "LieElement":
        if isinstance(comm, FreeModuleElement):
            if comm.gens != self.module.gens or comm.ring != self.vars:
                raise ContextMismatch("commutant part belongs to another module")
            comm = comm.terms
        return LieElement(self, _clean_linear(linear or {}), self.gb.reduce_terms(comm or {}))

    def zero(self) -> "LieElement":
        return LieElement(self, (), {})

    def gen(self, which: int | str) -> "LieElement":
        i = self.vars.index(which) if isinstance(which, str) else which
        return LieElement(self, ((i, Fraction(1)),), {})

    def gens(self):
        return [self.gen(i) for i in range(self.rank)]

    def module_gen(self, g: int) -> "LieElement":
        return self.element(comm={(g, self.vars.one()): Fraction(1)})

    def pair(self, p: int | str, q: int | str) -> "LieElement":
        p = self.vars.index(p) if isinstance(p, str) else p
        q = self.vars.index(q) if isinstance(q, str) else q
        return self.element(comm=self.bracket_terms(p, q))

    def linear_poly(self, a: "LieElement") -> Dict[Exps, Fraction]:
        return {self.vars.var(i): c for i, c in a.linear}

    # -- arithmetic ------------------------------------------------------------
    def _check(self, *elems: "LieElement") -> None:
        for e in elems:
            if e.ctx is not self:
                raise ContextMismatch("element belongs to a different algebra context")

    def mul(self, a: "LieElement", b: "LieElement") -> "LieElement":
        self._check(a, b)
        out: Terms = {}
        for i, c1 in a.linear:
            for j, c2 in b.linear:
                if i != j:
                    t_add(out, self.bracket_terms(i, j), c1 * c2)
        if a.comm and b.linear:
            t_add(out, t_act(a.comm, self.linear_poly(b)))
        if b.comm and a.linear:
            t_add(out, t_act(b.comm, self.linear_poly(a)), Fraction(-1))
        return LieElement(self, (), self.gb.reduce_terms(out))

    def act(self, a: "LieElement", p: Polynomial) -> "LieElement":
        """Module action on a commutant element."""
        self._check(a)
        if a.linear:
            raise ValueError("only commutant elements carry the module action")
        return LieElement(self, (), self.gb.reduce_terms(t_act(a.comm, p.terms)))

    def is_zero(self, a: "LieElement") -> bool:
        self._check(a)
        return not a.linear and not a.comm

    def equal(self, a: "LieElement", b: "LieElement") -> bool:
        self._check(a, b)
        return a == b

    def is_abelian(self) -> bool:
        one = self.vars.one()
        return all(not self.gb.reduce_terms({(g, one): Fraction(1)}) for g in range(len(self.pairs)))

    def commutant_generators(self):
        """Nonzero module generators as Lie elements."""
        out = []
        for g in range(len(self.pairs)):
            e = self.module_gen(g)
            if e.comm:
                out.append(e)
        return out

    def left_normed(self, letters: Sequence[int | str], coeff=1) -> "LieElement":
        it = iter(letters)
        acc = self.gen(next(it))
        for x in it:
            acc = self.mul(acc, self.gen(x))
        return acc.scale(coeff)

    def random_element(self, rng: random.Random, max_degree: int = 4, coeff_range: int = 2,
                       density: float = 0.5, linear: bool = True) -> "LieElement":
        lin = {}
        if linear:
            lin = {i: Fraction(rng.randint(-coeff_range, coeff_range)) for i in range(self.rank) if rng.random() < density}
        comm: Terms = {}
        n = self.rank
        for g in range(len(self.pairs)):
            for k in range(0, max(0, max_degree - 2) + 1):
                for e in monomials_of_degree(n, k):
                    if rng.random() < density / (k + 1):
                        c = rng.randint(-coeff_range, coeff_range)
                        if c:
                            comm[(g, e)] = Fraction(c)
        return self.element(lin, comm)

    def random_commutant_element(self, rng: random.Random, max_degree: int = 4, coeff_range: int = 2) -> "LieElement":
        return self.random_element(rng, max_degree, coeff_range, linear=False)

    # -- text ------------------------------------------------------------------
    def format(self, a: "LieElement") -> str:
        items = []
        for i, c in a.linear:
            items.append((self.names[i], c))
        order = self.gb.order
        for (g, e), c in sorted(a.comm.items(), key=lambda kv: order.key(kv[0]), reverse=True):
            body = self.module.gens[g]
            mono = format_exps(e, self.vars)
            items.append((f"{body}*{mono}" if mono else body, c))
        if not items:
            return "0"
        parts = []
        for body, c in items:
            sign = "-" if c < 0 else "+"
            text = f"{format_scalar(abs(c))}*{body}"
            if not parts:
                parts.append(("-" if c < 0 else "") + text)
            else:
                parts.append(f" {sign} {text}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraContext({self.name!r}, gens={list(self.names)}, kind={self.kind!r})"


def _clean_linear(linear: Mapping[int, Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
    return tuple(sorted((i, Fraction(c)) for i, c in linear.items() if c))


class LieElement:
    """``(linear part, commutant part)``; the commutant part is kept in normal form."""

    __slots__ = ("ctx", "linear", "comm", "_hash")

    def __init__(self, ctx: AlgebraContext, linear: Tuple[Tuple[int, Fraction], ...], comm: Terms):
        self.ctx = ctx
        self.linear = linear
        self.comm = comm
        self._hash = None

    def _same(self, other: "LieElement") -> None:
        if other.ctx is not self.ctx:
            raise ContextMismatch("elements belong to different algebra contexts")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._same(other)
        lin = dict(self.linear)
        for i, c in other.linear:
            lin[i] = lin.get(i, 0) + c
        comm = dict(self.comm)
        t_add(comm, other.comm)
        return LieElement(self.ctx, _clean_linear(lin), comm)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return LieElement(self.ctx, tuple((i, c * v) for i, v in self.linear),
                          {t: c * v for t, v in self.comm.items()})

    def __rmul__(self, c) -> "LieElement":
        return self.scale(c)

    def bracket(self, other: "LieElement") -> "LieElement":
        return self.ctx.mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.linear or self.comm)

    @property
    def in_commutant(self) -> bool:
        return not self.linear

    def commutant_part(self) -> "LieElement":
        return LieElement(self.ctx, (), self.comm)

    def module_element(self) -> FreeModuleElement:
        return FreeModuleElement(self.ctx.vars, self.ctx.module.gens, self.comm)

    def linear_form(self) -> Polynomial:
        return Polynomial(self.ctx.vars, self.ctx.linear_poly(self))

    def degree(self) -> int:
        if self.comm:
            return max(2 + sum(e) for _, e in self.comm)
        return 1 if self.linear else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.ctx is other.ctx and self.linear == other.linear and self.comm == other.comm

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.ctx), self.linear, frozenset(self.comm.items())))
        return self._hash

    def __str__(self) -> str:
        return self.ctx.format(self)

    def __repr__(self) -> str:
        return f"LieElement({str(self)!r})"
