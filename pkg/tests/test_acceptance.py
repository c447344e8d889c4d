"""Acceptance suite.  Each ``test_criterion_<n>_<title>`` is one criterion; the
terminal summary prints a PASS/FAIL line per criterion."""

import random
import sys
import time
from math import comb

import pytest

from metalie.catalog import abelian, free_algebra, letters, torsion_algebra
from metalie.fp import fitting_contains
from metalie.free import as_words, commutant_presentation, free_context, normalize, normalized_words
from metalie.modules import ModulePresentation, buchberger, graded_dimension
from metalie.product import ProductModel, verify_lemma_mprime
from metalie.semidomain import classify, is_zero_divisor_pair, product_semidomain
from metalie.torsion import linear_torsion_search

from oracles import mixed_monomial_count, second_derived_span, tensor_word


def ab2(prefix, name):
    return abelian(letters(prefix, 2), name)


def f2(prefix, name):
    return free_algebra(letters(prefix, 2), name)


def commutant_dims(ctx, bound):
    return graded_dimension(ctx.module, bound, gb=ctx.gb).dims


def test_criterion_1_torsion_algebra_regression():
    start = time.perf_counter()
    T = torsion_algebra()
    cert = is_zero_divisor_pair(T.left_normed(["a1", "a2"]), T.gen("a3"))
    assert cert.valid and len(cert.checks) > 1
    assert fitting_contains(T.gen("a3")).verdict == "no"
    cls = classify(T)
    assert cls.verdict == "not_semidomain" and cls.torsion is not None
    w = cls.torsion
    assert T.gb.normal_form(w.element.times(w.f)).is_zero() and not T.gb.normal_form(w.element).is_zero()
    assert T.left_normed(["a3", "a1", "a3", "a3"])
    assert time.perf_counter() - start < 1.0


def test_criterion_2_module_splitting_certificate():
    start = time.perf_counter()
    for A, B in ((f2("a", "F"), abelian(["b1"], "Ab1")), (ab2("a", "Ab"), ab2("b", "Ab'"))):
        model = ProductModel(A, B)
        rep = verify_lemma_mprime(model, 5)
        assert rep.ok, "\n".join(rep.lines())
        M = graded_dimension(model.M, 5, gb=model.C.gb).dims
        mp = model.mprime
        for d in range(1, 6):
            assert M[d] == mp.dim_m0(d) + mp.dim_m1(d) + mp.dim_m2(d)
    model = ProductModel(ab2("a", "Ab"), ab2("b", "Ab'"))
    m0 = [model.mprime.dim_m0(d) for d in (2, 3, 4)]
    assert m0 == [mixed_monomial_count(2, 2, d) for d in (2, 3, 4)] == [4, 12, 25]
    assert time.perf_counter() - start < 30.0


def test_criterion_3_abelian_product_commutant_is_mixed_ideal():
    model = ProductModel(ab2("a", "Ab"), ab2("b", "Ab'"))
    dims = commutant_dims(model.context, 6)
    for d in range(1, 7):
        assert dims[d] == mixed_monomial_count(2, 2, d)
        assert dims[d] == comb(d + 3, 3) - 2 * (d + 1)


@pytest.mark.parametrize("pair", ["abelian*abelian", "free2*abelian", "free2*free2"])
def test_criterion_4_union_presentation_matches_structural_module(pair):
    A, B = {
        "abelian*abelian": (ab2("a", "Ab"), ab2("b", "Ab'")),
        "free2*abelian": (f2("a", "F"), abelian(["b1"], "Ab1")),
        "free2*free2": (f2("a", "F"), f2("b", "F'")),
    }[pair]
    model = ProductModel(A, B)
    union = commutant_dims(model.context, 5)
    structural = graded_dimension(model.M, 5, gb=model.C.gb).dims
    assert all(union[d] == structural[d] for d in range(6))


PRODUCTS = {
    "abelian*abelian": lambda: (ab2("a", "Ab"), ab2("b", "Ab'")),
    "free2*abelian": lambda: (f2("a", "F"), abelian(["b1"], "Ab1")),
    "torsion*abelian": lambda: (torsion_algebra(letters("a", 3), "T"), abelian(["b1"], "Ab1")),
}


@pytest.mark.parametrize("pair", sorted(PRODUCTS))
def test_criterion_5_product_fitting_radical_is_commutant(pair):
    rng = random.Random(2024)
    P = ProductModel(*PRODUCTS[pair]()).context
    linear = 0
    while linear < 20:
        a = P.random_element(rng, 3)
        if not a.linear:
            continue
        linear += 1
        assert fitting_contains(a).verdict == "no", str(a)
    commutant = 0
    while commutant < 20:
        c = P.random_commutant_element(rng, 4)
        if not c:
            continue
        commutant += 1
        assert fitting_contains(c).verdict == "yes"


def test_criterion_6_product_semidomain_verdicts_match_direct_search():
    cases = [
        (ab2("a", "Ab"), ab2("b", "Ab'")),
        (ab2("a", "Ab"), f2("b", "F'")),
        (f2("a", "F"), f2("b", "F'")),
        (torsion_algebra(letters("a", 3), "T"), ab2("b", "Ab'")),
    ]
    negatives = 0
    for A, B in cases:
        model = ProductModel(A, B)
        verdict = product_semidomain(A, B, 4, model)
        direct = linear_torsion_search(model.context.module, 4, gb=model.context.gb)
        assert direct.status in ("none", "witness")
        assert verdict.semidomain == (direct.status == "none"), model.name
        if verdict.semidomain is False:
            assert verdict.witness is not None and verdict.witness.valid
            assert fitting_contains(verdict.witness.y).verdict == "no"
            negatives += 1
    assert negatives == 1


def test_criterion_7_algebraic_identities():
    rng = random.Random(7)
    contexts = [
        free_algebra(3),
        torsion_algebra(),
        ProductModel(f2("a", "F"), abelian(["b1"], "Ab1")).context,
        ProductModel(torsion_algebra(letters("a", 3), "T"), abelian(["b1"], "Ab1")).context,
    ]
    for k in range(500):
        ctx = contexts[k % len(contexts)]
        a, b, c, d = (ctx.random_element(rng, 4) for _ in range(4))
        s = rng.randint(-3, 3)
        m = ctx.mul
        assert not (m(a, b) + m(b, a))
        assert not (m(m(a, b), c) + m(m(b, c), a) + m(m(c, a), b))
        assert not m(m(a, b), m(c, d))
        assert not (m(a.scale(s) + b, c) - m(a, c).scale(s) - m(b, c))
        assert not (m(a, b.scale(s) + c) - m(a, b).scale(s) - m(a, c))


def test_criterion_8_normalization_oracle():
    F = free_context(3)
    spans = {d: second_derived_span(3, d) for d in range(4, 6)}
    rng = random.Random(8)
    for _ in range(200):
        word = [rng.randrange(3) for _ in range(rng.randint(1, 5))]
        diff = dict(tensor_word(word))
        for w, c in as_words(normalize(word, F)):
            for t, v in tensor_word(list(w)).items():
                diff[t] = diff.get(t, 0) - c * v
        diff = {t: v for t, v in diff.items() if v}
        if len(word) < 4:
            assert not diff, word
        else:
            assert spans[len(word)].contains(diff), word
    for n in range(1, 5):
        dims = graded_dimension(commutant_presentation(n), 6).dims
        for d in range(2, 7):
            assert len(normalized_words(n, d)) == dims[d]


def _presentations():
    T = torsion_algebra()
    rng = random.Random(9)
    ring = T.vars
    gens = ("e", "f")
    rels = []
    for _ in range(4):
        terms = {}
        for _ in range(3):
            e = [0, 0, 0]
            for _ in range(2):
                e[rng.randrange(3)] += 1
            terms[(rng.randrange(2), tuple(e))] = rng.choice([-2, -1, 1, 3])
        rels.append(ModulePresentation(ring, gens).element(terms))
    return [
        free_context(3).module,
        T.module,
        ProductModel(ab2("a", "Ab"), ab2("b", "Ab'")).context.module,
        ProductModel(f2("a", "F"), abelian(["b1"], "Ab1")).M,
        ModulePresentation(ring, gens, tuple(rels)),
    ]


def test_criterion_9_engine_properties():
    rng = random.Random(10)
    for pres in _presentations():
        gb = buchberger(pres)
        rels = list(pres.relations)
        for _ in range(20):
            rng.shuffle(rels)
            assert buchberger(ModulePresentation(pres.ring, pres.gens, tuple(rels), pres.degrees)) == gb
        for _ in range(10):
            terms = {}
            for _ in range(5):
                e = tuple(rng.randint(0, 2) for _ in range(len(pres.ring)))
                terms[(rng.randrange(len(pres.gens)), e)] = rng.randint(-3, 3)
            v = pres.element({t: c for t, c in terms.items() if c})
            nf = gb.normal_form(v)
            assert gb.normal_form(nf) == nf
            for k in range(5):
                assert gb.normal_form(v, rng=random.Random(k)) == nf


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
