from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from metalie.linalg import Echelon, kernel, rank, solve_in_span

entries = st.integers(-3, 3).map(Fraction)
matrices = st.integers(1, 5).flatmap(
    lambda cols: st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=1, max_size=6))


def as_vectors(rows):
    return [{j: v for j, v in enumerate(r) if v} for r in rows]


@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(as_vectors(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_kernel_vectors_are_relations(rows):
    vecs = as_vectors(rows)
    ker = kernel(vecs)
    assert len(ker) == len(vecs) - rank(vecs)
    for k in ker:
        total = {}
        for i, c in k.items():
            for j, v in vecs[i].items():
                total[j] = total.get(j, 0) + c * v
        assert not any(total.values())


@given(matrices, st.lists(entries, min_size=5, max_size=5))
def test_solve_in_span(rows, weights):
    vecs = as_vectors(rows)
    target = {}
    for w, v in zip(weights, vecs):
        for j, x in v.items():
            target[j] = target.get(j, 0) + w * x
    target = {j: x for j, x in target.items() if x}
    combo = solve_in_span(vecs, target)
    assert combo is not None
    back = {}
    for i, c in combo.items():
        for j, x in vecs[i].items():
            back[j] = back.get(j, 0) + c * x
    assert {j: x for j, x in back.items() if x} == target


def test_echelon_reports_dependency():
    e = Echelon()
    assert e.add({0: Fraction(1)}) is None
    assert e.add({1: Fraction(1)}) is None
    assert e.add({0: Fraction(2), 1: Fraction(-1)}) == {0: 2, 1: -1}
    assert solve_in_span([{0: Fraction(1)}], {1: Fraction(1)}) is None
