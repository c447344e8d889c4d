"""Finitely presented metabelian Lie algebras ``<generators | relators>``.

Relators must lie in the commutant.  The ideal they generate is then the
submodule they generate (products of two commutant elements vanish), so the
commutant of the quotient is the free commutant module modulo the relator
images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .free import descending_pairs, free_context, jacobi_relations, normalized_words
from .lie import AlgebraContext, ContextMismatch, LieElement
from .modules import DEFAULT_BUDGET, BudgetExceeded, FreeModuleElement
from .poly import Polynomial
from .torsion import saturation, stable_annihilator_power


class LinearRelatorError(ValueError):
    """A relator with a nonzero component outside the commutant."""


@dataclass(frozen=True)
class AlgebraPresentation:
    """Generators plus relators, the relators being elements of ``free``."""

    name: str
    free: AlgebraContext
    relators: Tuple[LieElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        for r in self.relators:
            if r.ctx is not self.free:
                raise ContextMismatch("relators must be elements of the presentation's free algebra")
            if r.linear:
                raise LinearRelatorError(f"relator {r} has a nonzero linear part")

    @property
    def names(self) -> Tuple[str, ...]:
        return self.free.names

    @classmethod
    def build(cls, name: str, gens: Sequence[str], words: Sequence[Sequence[str]] = ()) -> "AlgebraPresentation":
        """Presentation whose relators are single left-normed words."""
        free = free_context(gens)
        return cls(name, free, tuple(free.left_normed(w) for w in words))


def compile(pres: AlgebraPresentation, budget: int = DEFAULT_BUDGET) -> AlgebraContext:
    vars = pres.free.vars
    pairs = descending_pairs(len(vars))
    relations = list(jacobi_relations(vars, pairs))
    for r in pres.relators:
        relations.append(r.module_element())
    kind = "presented" if any(r.comm for r in pres.relators) else "free"
    return AlgebraContext(vars, pairs, relations, kind=kind, name=pres.name, budget=budget,
                          info={"presentation": pres})


def abelian(names: Sequence[str] | int, name: str = "Ab") -> AlgebraContext:
    """The abelian algebra on the given generators (all products are relators)."""
    if isinstance(names, int):
        names = [f"a{i + 1}" for i in range(names)]
    free = free_context(names)
    rel = [free.pair(p, q) for p, q in descending_pairs(len(names))]
    return compile(AlgebraPresentation(name, free, tuple(rel)))


def nilpotent_quotient(names: Sequence[str] | int, cls: int, name: str | None = None) -> AlgebraContext:
    """Free metabelian algebra modulo all products of length greater than ``cls``."""
    if cls < 1:
        raise ValueError("nilpotency class must be at least 1")
    if isinstance(names, int):
        names = [f"a{i + 1}" for i in range(names)]
    free = free_context(names)
    rel = [free.left_normed(w) for w in normalized_words(len(names), cls + 1)] if cls + 1 >= 2 else []
    return compile(AlgebraPresentation(name or f"N{cls}", free, tuple(r for r in rel if r)))


def mul(a: LieElement, b: LieElement, ctx: AlgebraContext) -> LieElement:
    return ctx.mul(a, b)


def is_zero(a: LieElement, ctx: AlgebraContext) -> bool:
    return ctx.is_zero(a)


def equal(a: LieElement, b: LieElement, ctx: AlgebraContext) -> bool:
    return ctx.equal(a, b)


def is_abelian(ctx: AlgebraContext) -> bool:
    return ctx.is_abelian()


@dataclass
class FittingAnswer:
    verdict: str  # "yes" | "no" | "budget_exceeded"
    index: Optional[int] = None
    generators: List[LieElement] = field(default_factory=list)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict == "yes"


def ideal_generators(e: LieElement) -> List[LieElement]:
    """Module generators of ``<e> o A``: ``e o g`` for generators and ``m . v`` for commutant generators.

    ``<e> = k e + N`` with ``N`` this submodule, and ``<e>^(k+1) = N . v^k``.
    """
    ctx = e.ctx
    v = e.linear_form()
    out = [ctx.mul(e, g) for g in ctx.gens()]
    for m in ctx.commutant_generators():
        out.append(ctx.act(m, v))
    return [n for n in out if n]


def _lex_top(n: LieElement, weights) -> FreeModuleElement:
    ws = {t: tuple(w + x for w, x in zip(weights[t[0]], t[1])) for t in n.comm}
    top = max(ws.values())
    return FreeModuleElement(n.ctx.vars, n.ctx.module.gens, {t: c for t, c in n.comm.items() if ws[t] == top})


def fitting_contains(e: LieElement, ctx: AlgebraContext | None = None, budget: int = DEFAULT_BUDGET) -> FittingAnswer:
    """Is the principal ideal of ``e`` nilpotent?

    Commutant elements always are.  Otherwise ``<e>`` is nilpotent iff the
    linear form ``v`` of ``e`` acts nilpotently on every generator of the
    submodule ``N`` from :func:`ideal_generators`.
    """
    ctx = ctx or e.ctx
    ctx._check(e)
    if not e.linear:
        return FittingAnswer("yes", 1 if e else 0, [], "commutant element")
    try:
        gens = ideal_generators(e)
        if not gens:
            return FittingAnswer("yes", 0, gens, "ideal is one-dimensional")
        v = e.linear_form()
        weights = ctx.module.multigrading()
        index = 0
        for n in gens:
            if weights is not None:
                # the lex-top component must be killed by a power of the leading variable
                s = min(i for i, _ in e.linear)
                top = _lex_top(n, weights)
                xs = Polynomial.variable(ctx.vars, s)
                if not saturation(ctx.gb, xs, budget).is_member(top):
                    return FittingAnswer("no", None, gens, f"{ctx.names[s]}-power never kills {top}")
            res = stable_annihilator_power(n.module_element(), v, ctx.gb, budget)
            if not res.nilpotent:
                return FittingAnswer("no", None, gens, f"{n} is not killed by a power of {v}")
            index = max(index, res.index)
        return FittingAnswer("yes", index, gens, f"N . ({v})^{index} = 0")
    except BudgetExceeded as exc:
        return FittingAnswer("budget_exceeded", reason=str(exc))
