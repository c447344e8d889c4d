import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metalie.catalog import abelian, free_algebra, nilpotent_quotient, torsion_algebra
from metalie.fp import (
    AlgebraPresentation,
    LinearRelatorError,
    compile,
    fitting_contains,
    ideal_generators,
    is_abelian,
)
from metalie.free import fitting_contains_free, free_context
from metalie.lie import ContextMismatch
from metalie.poly import Polynomial


def power(p: Polynomial, k: int) -> Polynomial:
    out = Polynomial.constant(p.vars, 1)
    for _ in range(k):
        out = out * p
    return out


def test_relator_becomes_zero():
    T = torsion_algebra()
    assert not T.left_normed(["a1", "a2", "a3"])
    assert T.left_normed(["a2", "a1", "a3"]) == -T.left_normed(["a1", "a2", "a3"])
    assert T.left_normed(["a3", "a1", "a2"])


def test_linear_relator_rejected():
    free = free_context(2)
    with pytest.raises(LinearRelatorError):
        AlgebraPresentation("bad", free, (free.gen("a1"),))


def test_relators_must_live_in_the_free_algebra():
    other = free_context(2)
    with pytest.raises(ContextMismatch):
        AlgebraPresentation("bad", free_context(2), (other.pair("a2", "a1"),))


def test_is_abelian():
    assert is_abelian(abelian(3))
    assert not is_abelian(free_algebra(2))
    assert not is_abelian(torsion_algebra())
    assert is_abelian(nilpotent_quotient(3, 1))


def test_compile_kind():
    free = free_context(2)
    assert compile(AlgebraPresentation("F", free)).kind == "free"
    assert compile(AlgebraPresentation("Ab", free, (free.pair(1, 0),))).kind == "presented"


def test_fitting_examples():
    T = torsion_algebra()
    for g in T.gens():
        assert fitting_contains(g).verdict == "no"
    assert fitting_contains(T.pair("a2", "a1")).verdict == "yes"
    assert fitting_contains(T.zero()).index == 0
    N = nilpotent_quotient(2, 3)
    ans = fitting_contains(N.gen("a1") + N.gen("a2"))
    assert ans.verdict == "yes" and ans.index == 2
    assert fitting_contains(abelian(2).gen("a1")).verdict == "yes"


def test_fitting_in_free_algebra_is_the_commutant():
    F = free_algebra(3)
    assert not fitting_contains(F.gen("a1"))
    assert fitting_contains(F.left_normed(["a2", "a1", "a3"]))


def test_fitting_agrees_with_free_shortcut_on_random_elements():
    rng = random.Random(7)
    F = free_algebra(3)
    for _ in range(50):
        e = F.random_element(rng, 4)
        assert bool(fitting_contains(e)) == fitting_contains_free(e)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_fitting_certificates_check_out(seed):
    """``yes`` comes with an index k and N . v^k = 0; ``no`` with N . v^k nonzero for small k."""
    rng = random.Random(seed)
    ctx = rng.choice([torsion_algebra(), nilpotent_quotient(2, 3), nilpotent_quotient(3, 2), free_algebra(2)])
    e = ctx.random_element(rng, 3)
    ans = fitting_contains(e)
    if not e.linear:
        assert ans.verdict == "yes"
        return
    v = e.linear_form()
    gens = ideal_generators(e)
    if ans.verdict == "yes":
        assert all(not ctx.act(n, power(v, ans.index)) for n in gens)
    else:
        assert ans.verdict == "no"
        assert any(ctx.act(n, power(v, 8)) for n in gens)


def test_nilpotent_quotient_kills_long_words():
    N = nilpotent_quotient(3, 3)
    assert N.left_normed(["a2", "a1", "a3"])
    assert not N.left_normed(["a2", "a1", "a3", "a1"])
    with pytest.raises(ValueError):
        nilpotent_quotient(2, 0)
