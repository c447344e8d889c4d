"""Small algebras used by the reproduction suite, the CLI and the tests."""

from __future__ import annotations

from typing import Sequence

from .fp import AlgebraPresentation, abelian, compile, nilpotent_quotient
from .lie import AlgebraContext


def torsion_algebra(names: Sequence[str] = ("a1", "a2", "a3"), name: str = "T") -> AlgebraContext:
    """``<a1, a2, a3 | [a1,a2,a3]>``: its commutant has linear torsion."""
    a1, a2, a3 = names
    return compile(AlgebraPresentation.build(name, names, [[a1, a2, a3]]))


def free_algebra(names: Sequence[str] | int = 2, name: str = "F") -> AlgebraContext:
    if isinstance(names, int):
        names = [f"a{i + 1}" for i in range(names)]
    return compile(AlgebraPresentation.build(name, names))


def letters(prefix: str, n: int) -> list:
    return [f"{prefix}{i + 1}" for i in range(n)]


__all__ = ["abelian", "free_algebra", "letters", "nilpotent_quotient", "torsion_algebra"]
