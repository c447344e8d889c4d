import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metalie.catalog import abelian, free_algebra, letters, torsion_algebra
from metalie.product import (
    NameClash,
    ProductModel,
    build_M,
    mprime_act,
    product_mul,
    transport,
    verify_lemma_mprime,
    verify_product_theorems,
)


def models():
    return [
        ProductModel(free_algebra(letters("a", 2), "F"), abelian(["b1"], "Ab1")),
        ProductModel(abelian(letters("a", 2), "Ab"), abelian(letters("b", 2), "Ab'")),
        ProductModel(torsion_algebra(letters("a", 3), "T"), abelian(["b1"], "Ab1")),
        ProductModel(free_algebra(letters("a", 2), "F"), free_algebra(letters("b", 2), "F'")),
    ]


MODELS = models()


def test_build_M_generators():
    M = build_M(abelian(2), abelian(["b1", "b2"]))
    assert M.gens == ("[a2,b2]", "[a2,b1]", "[a1,b2]", "[a1,b1]", "[a2,a1]", "[b2,b1]")
    assert all(d == 2 for d in M.degrees)


def test_mprime_spill_into_left_factor():
    model = MODELS[0]
    mp = model.mprime
    out = mprime_act(model, mp.w(1, 0), "a1")
    # x2 y1 . x1 keeps the mixed monomial and spills [a2,a1] . y1
    assert out.m0 == {(1, 1, 1): 1}
    assert out.m1 == {(0, (0, 0, 1)): 1}
    assert not out.m2
    # acting by a letter of larger index spills nothing
    out = mprime_act(model, mp.w(0, 0), "a2")
    assert not out.m1 and not out.m2


def test_mprime_spill_into_right_factor():
    model = MODELS[3]
    out = mprime_act(model, model.mprime.w(0, 1), "b1")
    assert out.m2 and not out.m1


def test_product_mul_examples():
    model = MODELS[0]
    x, y = model.x(0), model.y(0)
    assert product_mul(x, y, model, cross_check=True) == model.w(0, 0)
    assert product_mul(y, x, model, cross_check=True) == -model.w(0, 0)
    assert not product_mul(x, x, model)


def test_name_clash_and_rename():
    with pytest.raises(NameClash):
        ProductModel(free_algebra(2), free_algebra(2))
    model = ProductModel(free_algebra(2), free_algebra(2), rename=True)
    assert model.context.names == ("a1", "a2", "a1'", "a2'")
    assert model.right.rank == 2


def test_factors_embed():
    model = MODELS[2]
    T = model.left
    rel = model.context.left_normed(["a1", "a2", "a3"])
    assert not rel
    w = transport(T.left_normed(["a3", "a1", "a2"]), model.context)
    assert w and w == model.context.left_normed(["a3", "a1", "a2"])


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
def test_jacobi_on_generator_triples(model):
    P = model.context
    gens = P.gens() + P.commutant_generators()
    for a, b, c in itertools.product(gens, repeat=3):
        m = model.mul
        assert not (m(m(a, b), c) + m(m(b, c), a) + m(m(c, a), b))


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
def test_random_products_agree_across_models(model):
    rng = random.Random(11)
    P = model.context
    for _ in range(50):
        a, b = P.random_element(rng, 3), P.random_element(rng, 3)
        ab = model.mul(a, b, cross_check=True)
        assert ab == -model.mul(b, a)
        # zero in one model iff zero in the others
        assert (not ab) == (not model.to_C(ab)) == model.mprime.is_zero(model.evaluate(ab))


@settings(max_examples=200)
@given(st.integers(0, 3), st.integers(0, 10**6))
def test_jacobi_random(which, seed):
    model = MODELS[which]
    rng = random.Random(seed)
    P = model.context
    a, b, c = (P.random_element(rng, 3) for _ in range(3))
    m = model.mul
    assert not (m(m(a, b), c) + m(m(b, c), a) + m(m(c, a), b))
    assert not m(m(a, b), m(b, c))


@given(st.integers(0, 3), st.integers(0, 10**6))
def test_zero_agreement(which, seed):
    model = MODELS[which]
    rng = random.Random(seed)
    v = model.C.random_commutant_element(rng, 4)
    image = model.evaluate(v)
    assert bool(v) != model.mprime.is_zero(image)
    assert (not model.from_C(v)) == (not v)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
def test_reports_pass(model):
    assert verify_lemma_mprime(model, 4).ok
    assert verify_product_theorems(model, 4).ok


def test_abelian_product_dimensions():
    rep = verify_product_theorems(MODELS[1], 5)
    assert [r.values["union"] for r in rep.rows] == [4, 12, 25, 44]
    one = ProductModel(abelian(["a1"], "A"), abelian(["b1"], "B"))
    rep = verify_product_theorems(one, 6)
    assert [r.values["union"] for r in rep.rows] == [1, 2, 3, 4, 5]


def test_quotient_by_factor_commutants_is_mixed_part():
    model = MODELS[0]
    from metalie.modules import graded_dimension

    dims = graded_dimension(model.quotient_by_z(), 5).dims
    assert [dims[d] for d in range(2, 6)] == [model.mprime.dim_m0(d) for d in range(2, 6)]
