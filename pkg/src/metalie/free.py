"""Free metabelian Lie algebras.

Generators ``e_ij`` (``i > j``) of the commutant stand for ``a_i o a_j``.  They
are declared in descending pair order, so in the position-over-term order the
Jacobi relation ``e_ij.x_k - e_ik.x_j + e_jk.x_i`` (``i > j > k``) has leading
term ``e_ij.x_k``.  The standard monomials are then exactly ``e_ij.x^a`` with
every letter of ``x^a`` at least ``j``, i.e. the left-normed words
``a_i a_j a_k ...`` with ``i > j <= k <= ...``.  Normal forms are written in
that word basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple

from .lie import AlgebraContext, LieElement
from .modules import DEFAULT_BUDGET, FreeModuleElement, ModulePresentation
from .poly import VariableSet


def descending_pairs(n: int) -> List[Tuple[int, int]]:
    return [(p, q) for p in range(n - 1, 0, -1) for q in range(p - 1, -1, -1)]


def jacobi_relations(vars: VariableSet, pairs: Sequence[Tuple[int, int]]) -> List[FreeModuleElement]:
    n = len(vars)
    index = {pq: g for g, pq in enumerate(pairs)}
    gens = tuple(f"[{vars.names[p]},{vars.names[q]}]" for p, q in pairs)
    out = []
    for i in range(n):
        for j in range(i):
            for k in range(j):
                terms = {
                    (index[(i, j)], vars.var(k)): Fraction(1),
                    (index[(i, k)], vars.var(j)): Fraction(-1),
                    (index[(j, k)], vars.var(i)): Fraction(1),
                }
                out.append(FreeModuleElement(vars, gens, terms))
    return out


def commutant_presentation(names: Sequence[str] | int) -> ModulePresentation:
    """Presentation of ``F(X)^2`` as a module over ``k[X]``."""
    vars = _vars(names)
    pairs = descending_pairs(len(vars))
    gens = tuple(f"[{vars.names[p]},{vars.names[q]}]" for p, q in pairs)
    return ModulePresentation(vars, gens, tuple(jacobi_relations(vars, pairs)), (2,) * len(pairs), "F2")


def _vars(names) -> VariableSet:
    if isinstance(names, int):
        if names < 1:
            raise ValueError("rank must be at least 1")
        return VariableSet(tuple(f"a{i + 1}" for i in range(names)))
    return names if isinstance(names, VariableSet) else VariableSet(tuple(names))


def free_context(names: Sequence[str] | int, name: str = "F", budget: int = DEFAULT_BUDGET) -> AlgebraContext:
    vars = _vars(names)
    pairs = descending_pairs(len(vars))
    return AlgebraContext(vars, pairs, jacobi_relations(vars, pairs), kind="free", name=name, budget=budget)


@dataclass(frozen=True)
class LeftNormedWord:
    """``coeff * (((a_i1 o a_i2) o a_i3) o ...)``."""

    letters: Tuple[int, ...]
    coeff: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if not self.letters:
            raise ValueError("a word needs at least one letter")


def normalize(word: LeftNormedWord | Sequence[int | str], ctx: AlgebraContext) -> LieElement:
    """Rewrite a left-normed word to normal form, multiplying left to right."""
    if not isinstance(word, LeftNormedWord):
        letters = [ctx.vars.index(a) if isinstance(a, str) else a for a in word]
        word = LeftNormedWord(tuple(letters))
    for a in word.letters:
        if not 0 <= a < ctx.rank:
            raise KeyError(f"unknown generator index {a}")
    return ctx.left_normed(word.letters, word.coeff)


def is_normalized(letters: Sequence[int]) -> bool:
    if len(letters) == 1:
        return True
    if not letters[0] > letters[1]:
        return False
    return all(letters[k] <= letters[k + 1] for k in range(1, len(letters) - 1))


def normalized_words(n: int, length: int) -> List[Tuple[int, ...]]:
    """All normalized words ``i1 > i2 <= i3 <= ...`` of a given length on ``n`` letters."""
    if length == 1:
        return [(i,) for i in range(n)]
    out = []
    for i2 in range(n):
        for i1 in range(i2 + 1, n):
            for tail in combinations_with_replacement(range(i2, n), length - 2):
                out.append((i1, i2) + tail)
    return out


def word_of_term(ctx: AlgebraContext, term) -> Tuple[int, ...]:
    """The left-normed word ``a_p a_q x^e`` of a commutant standard monomial."""
    g, e = term
    p, q = ctx.pairs[g]
    tail = []
    for i, k in enumerate(e):
        tail.extend([i] * k)
    return (p, q) + tuple(tail)


def as_words(elem: LieElement) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """Expansion of an element of a free context in left-normed words."""
    out = [((i,), c) for i, c in elem.linear]
    for t, c in elem.comm.items():
        out.append((word_of_term(elem.ctx, t), c))
    return out


def fitting_contains_free(e: LieElement) -> bool:
    """Fitting radical membership in a free metabelian algebra of rank at least 2.

    Free commutants are torsion free, so a nonzero linear part always gives a
    non-nilpotent ideal; the radical is the commutant.
    """
    if e.ctx.kind != "free":
        raise ValueError("expected an element of a free metabelian context")
    if e.ctx.rank < 2:
        return True
    return not e.linear
