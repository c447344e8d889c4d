"""Sparse exact linear algebra over the rationals.

Vectors are dicts from hashable coordinates to nonzero Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Sequence, Tuple

Vector = Dict[Hashable, Fraction]


def axpy(y: Vector, a: Fraction, x: Vector) -> None:
    """In place ``y += a*x``, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    """Incrementally maintained reduced row basis.

    ``add`` returns the combination of previously added vectors that reduces
    the new one to zero when it is dependent, which gives kernels for free.
    """

    def __init__(self, coord_key=None):
        self.rows: List[Tuple[Hashable, Vector, Vector]] = []
        self._pivot_index: Dict[Hashable, int] = {}
        self._count = 0
        # pivot choice is deterministic: the largest coordinate under coord_key
        self._key = coord_key

    def __len__(self) -> int:
        return len(self.rows)

    def _pivot(self, v: Vector) -> Hashable:
        if self._key is None:
            return max(v, key=repr) if len(v) > 1 else next(iter(v))
        return max(v, key=self._key)

    def reduce(self, v: Vector) -> Tuple[Vector, Vector]:
        """Return ``(remainder, combination)`` with ``v = remainder + sum(c_i row_i)``."""
        r = dict(v)
        combo: Vector = {}
        changed = True
        while changed and r:
            changed = False
            for k in list(r):
                idx = self._pivot_index.get(k)
                if idx is None or k not in r:
                    continue
                pivot, row, tag = self.rows[idx]
                a = r[k] / row[pivot]
                axpy(r, -a, row)
                axpy(combo, a, tag)
                changed = True
        return r, combo

    def add(self, v: Vector) -> Vector | None:
        """Insert ``v``; return None if independent, else the dependency.

        The dependency is a dict ``{i: c}`` over insertion numbers with
        ``v = sum(c * vector_i)``.
        """
        n = self._count
        self._count += 1
        r, combo = self.reduce(v)
        if not r:
            return combo
        tag = {n: Fraction(1)}
        axpy(tag, Fraction(-1), combo)
        pivot = self._pivot(r)
        # keep other rows free of the new pivot
        for j, (p, row, t) in enumerate(self.rows):
            c = row.get(pivot)
            if c:
                a = c / r[pivot]
                axpy(row, -a, r)
                axpy(t, -a, tag)
        self._pivot_index[pivot] = len(self.rows)
        self.rows.append((pivot, r, tag))
        return None

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Sequence[Vector]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(images: Sequence[Vector]) -> List[Vector]:
    """Basis of ``{c : sum(c_i * images[i]) = 0}`` as dicts over indices."""
    e = Echelon()
    out = []
    for i, v in enumerate(images):
        dep = e.add(v)
        if dep is not None:
            k = {i: Fraction(1)}
            axpy(k, Fraction(-1), dep)
            out.append(k)
    return out


def solve_in_span(vectors: Sequence[Vector], target: Vector) -> Vector | None:
    """Coefficients expressing ``target`` in the span of ``vectors``, or None."""
    e = Echelon()
    for v in vectors:
        e.add(v)
    r, combo = e.reduce(target)
    return None if r else combo
