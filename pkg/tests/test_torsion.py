import random

from hypothesis import given
from hypothesis import strategies as st

from metalie.catalog import free_algebra, nilpotent_quotient, torsion_algebra
from metalie.linalg import kernel
from metalie.modules import buchberger
from metalie.poly import Polynomial
from metalie.text import parse_module_file
from metalie.torsion import (
    linear_torsion_search,
    saturation,
    stable_annihilator_power,
    torsion_free_by_saturation,
)

KILLED = parse_module_file("module K over [x1,x2] { gens: e; rels: e*x1; }")


def test_killed_generator_is_a_witness():
    res = linear_torsion_search(KILLED, 2)
    assert res.found and res.witness.degree == 1
    gb = buchberger(KILLED)
    assert gb.normal_form(res.witness.element.times(res.witness.f)).is_zero()
    assert not gb.normal_form(res.witness.element).is_zero()


def test_free_module_has_no_torsion():
    pres = parse_module_file("module F over [x1,x2,x3] { gens: e f; }")
    assert linear_torsion_search(pres, 4).status == "none"
    assert torsion_free_by_saturation(pres) == (True, None)


def test_free_commutant_is_torsion_free():
    F = free_algebra(3)
    assert linear_torsion_search(F.module, 4, gb=F.gb).status == "none"
    assert torsion_free_by_saturation(F.module, F.gb)[0] is True


def test_torsion_algebra_witness():
    T = torsion_algebra()
    res = linear_torsion_search(T.module, 3, gb=T.gb)
    assert res.found
    w = res.witness
    assert T.gb.normal_form(w.element.times(w.f)).is_zero()
    assert not T.gb.normal_form(w.element).is_zero()
    ok, wit = torsion_free_by_saturation(T.module, T.gb)
    assert ok is False and T.gb.normal_form(wit.element.times(wit.f)).is_zero()


def test_inhomogeneous_search_uses_filtration():
    pres = parse_module_file("module I over [x1,x2] { gens: e@1; rels: e*x1^2 - e*x2; }")
    assert pres.multigrading() is None
    res = linear_torsion_search(pres, 3)
    assert res.method == "filtered"
    if res.found:
        gb = buchberger(pres)
        assert gb.normal_form(res.witness.element.times(res.witness.f)).is_zero()


def test_stable_annihilator_power_examples():
    free = parse_module_file("module F over [x1] { gens: e; }")
    gb = buchberger(free)
    x1 = Polynomial.variable(free.ring, 0)
    assert str(stable_annihilator_power(free.gen("e"), x1, gb)) == "not_nilpotent"
    gb = buchberger(parse_module_file("module K over [x1] { gens: e; rels: e*x1; }"))
    assert str(stable_annihilator_power(free.gen("e"), x1, gb)) == "nilpotent(1)"
    gb = buchberger(parse_module_file("module K over [x1] { gens: e; rels: e*x1^3; }"))
    power = stable_annihilator_power(free.gen("e"), x1, gb)
    assert power.nilpotent and power.index == 3


def test_saturation_of_killed_generator_is_everything():
    gb = buchberger(KILLED)
    x1 = Polynomial.variable(KILLED.ring, 0)
    x2 = Polynomial.variable(KILLED.ring, 1)
    assert saturation(gb, x1).is_member(KILLED.gen("e"))
    assert not saturation(gb, x2).is_member(KILLED.gen("e"))


@given(st.integers(0, 10**6))
def test_search_agrees_with_single_variable_kernels(seed):
    """In multigraded modules torsion exists iff some variable has a kernel."""
    rng = random.Random(seed)
    ctx = rng.choice([torsion_algebra(), free_algebra(2), nilpotent_quotient(2, 3)])
    res = linear_torsion_search(ctx.module, 3, gb=ctx.gb)
    brute = False
    for d in range(4):
        basis = ctx.gb.standard_terms(ctx.module.degrees, d)
        for s in range(ctx.rank):
            x = Polynomial.variable(ctx.vars, s)
            images = [ctx.gb.reduce_terms(ctx.module.element({t: 1}).times(x).terms) for t in basis]
            brute = brute or bool(basis and kernel(images))
    assert res.found == brute
