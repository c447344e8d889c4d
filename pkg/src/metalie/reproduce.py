"""Replays the worked examples and structural statements as exact checks."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List

from .catalog import abelian, free_algebra, letters, nilpotent_quotient, torsion_algebra
from .fp import fitting_contains
from .modules import DEFAULT_BUDGET
from .product import ProductModel, fitting_of_product, verify_lemma_mprime, verify_product_theorems
from .semidomain import (
    classify,
    fit_vs_divisors,
    is_zero_divisor_pair,
    lemma_as_check,
    product_semidomain,
)
from .torsion import linear_torsion_search


@dataclass
class SuiteItem:
    name: str
    ok: bool
    lines: List[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class SuiteReport:
    items: List[SuiteItem]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def lines(self, verbose: bool = False) -> List[str]:
        out = []
        for i in self.items:
            out.append(f"{'PASS' if i.ok else 'FAIL'} {i.name}")
            if verbose or not i.ok:
                out.extend(f"    {l}" for l in i.lines)
        out.append(f"{sum(i.ok for i in self.items)}/{len(self.items)} passed")
        return out


@dataclass
class SuiteConfig:
    seed: int = 0
    bound: int = 5
    search_bound: int = 4
    budget: int = DEFAULT_BUDGET


def _factors():
    return {
        "abelian": (abelian(letters("a", 2), "Ab"), abelian(letters("b", 2), "Ab'")),
        "free": (free_algebra(letters("a", 2), "F"), free_algebra(letters("b", 2), "F'")),
        "torsion": (torsion_algebra(letters("a", 3), "T"), torsion_algebra(letters("b", 3), "T'")),
    }


# -- items -----------------------------------------------------------------------

def nilpotent_zero_divisors(cfg: SuiteConfig) -> SuiteItem:
    """Every element of a nilpotent algebra pairs with a central element."""
    rng = random.Random(cfg.seed)
    lines, ok = [], True
    for n, c in ((2, 2), (3, 2), (2, 3)):
        ctx = nilpotent_quotient(n, c, f"N({n},{c})")
        top = ctx.gb.standard_terms(ctx.module.degrees, c)
        y = ctx.element(comm={top[0]: Fraction(1)})
        central = all(not ctx.mul(y, g) for g in ctx.gens())
        xs = ctx.gens() + [ctx.random_element(rng, 3) for _ in range(10)]
        good = all(is_zero_divisor_pair(x, y) for x in xs if x)
        ok = ok and central and good
        lines.append(f"{ctx.name}: central y = {y}: {central}; all sampled x pair with y: {good}")
    return SuiteItem("nilpotent-zero-divisors", ok, lines)


def fitting_zero_divisors(cfg: SuiteConfig) -> SuiteItem:
    ok, lines = True, []
    for ctx in (torsion_algebra(), free_algebra(2), nilpotent_quotient(2, 3), abelian(2)):
        rep = fit_vs_divisors(ctx, 15, cfg.seed)
        ok = ok and rep.ok and rep.checked > 0
        lines.append(f"{ctx.name}: {rep.checked} radical members, partners certified: {rep.ok}")
    return SuiteItem("fitting-zero-divisors", ok, lines)


def commutant_annihilator_pairs(cfg: SuiteConfig) -> SuiteItem:
    """``x`` in the commutant with ``x o y = 0`` gives a zero-divisor pair."""
    rng = random.Random(cfg.seed)
    T = torsion_algebra()
    F = free_algebra(3)
    pairs = [(T.pair("a2", "a1"), T.gen("a3"))]
    e21 = F.pair("a2", "a1")
    pairs.append((e21, F.mul(e21, F.gen("a1"))))
    for _ in range(10):
        x = F.random_commutant_element(rng, 4)
        y = F.random_commutant_element(rng, 4)
        if x and y:
            pairs.append((x, y))
    ok = True
    for x, y in pairs:
        assert not x.ctx.mul(x, y)
        ok = ok and bool(is_zero_divisor_pair(x, y)) and bool(is_zero_divisor_pair(y, x))
    return SuiteItem("commutant-annihilator-pairs", ok, [f"{len(pairs)} pairs certified both ways: {ok}"])


def non_semidomain(cfg: SuiteConfig) -> SuiteItem:
    T = torsion_algebra()
    x, y = T.pair("a1", "a2"), T.gen("a3")
    cert = is_zero_divisor_pair(x, y)
    fit = fitting_contains(y)
    cls = classify(T, cfg.search_bound)
    words = [T.left_normed(["a3", "a1"] + ["a3"] * k) for k in range(1, 7)]
    alive = all(words)
    lines = [f"pair ({x}, {y}): " + ", ".join(cert.lines()), f"fitting({y}) = {fit.verdict}",
             f"classify = {cls} with witness {cls.torsion}", f"[a3,a1,a3,...,a3] nonzero up to length 8: {alive}"]
    ok = cert.valid and fit.verdict == "no" and cls.verdict == "not_semidomain" and cls.torsion is not None and alive
    return SuiteItem("non-semidomain", ok, lines)


def _pairs_for_products():
    ab = _factors()["abelian"]
    return [
        ("free2 * abelian1", free_algebra(letters("a", 2), "F"), abelian(["b1"], "Ab1")),
        ("abelian2 * abelian2", ab[0], ab[1]),
    ]


def module_splitting(cfg: SuiteConfig) -> SuiteItem:
    ok, lines = True, []
    for label, A, B in _pairs_for_products():
        rep = verify_lemma_mprime(ProductModel(A, B, cfg.budget), cfg.bound)
        ok = ok and rep.ok
        lines.append(label)
        lines.extend(rep.lines())
    ab = _factors()["abelian"]
    m0 = [ProductModel(*ab).mprime.dim_m0(d) for d in (2, 3, 4)]
    ok = ok and m0 == [4, 12, 25]
    lines.append(f"mixed monomials, abelian 2x2, degrees 2..4: {m0}")
    return SuiteItem("module-splitting", ok, lines)


def product_isomorphism(cfg: SuiteConfig) -> SuiteItem:
    ab, fr, _ = _factors().values()
    ok, lines = True, []
    for A, B in ((ab[0], ab[1]), (fr[0], abelian(["b1"], "Ab1")), (fr[0], fr[1])):
        rep = verify_product_theorems(ProductModel(A, B, cfg.budget), cfg.bound)
        ok = ok and rep.ok
        lines.extend(rep.lines())
    return SuiteItem("product-isomorphism", ok, lines)


def abelian_product_commutant(cfg: SuiteConfig) -> SuiteItem:
    ab = _factors()["abelian"]
    rep = verify_product_theorems(ProductModel(*ab, budget=cfg.budget), cfg.bound + 1)
    one = ProductModel(abelian(["a1"], "Ab1"), abelian(["b1"], "Ab1'"))
    rep1 = verify_product_theorems(one, cfg.bound + 1)
    # the ideal (x1 y1) of k[x1, y1] has d - 1 monomials in degree d
    counts = all(r.values["union"] == r.degree - 1 for r in rep1.rows)
    return SuiteItem("abelian-product-commutant", rep.ok and rep1.ok and counts,
                     rep.lines() + rep1.lines() + [f"rank 1 * rank 1 dims equal d - 1: {counts}"])


def product_fitting_radical(cfg: SuiteConfig) -> SuiteItem:
    rng = random.Random(cfg.seed)
    ab, fr, tor = _factors().values()
    ok, lines = True, []
    for A, B in ((ab[0], ab[1]), (fr[0], abelian(["b1"], "Ab1")), (tor[0], abelian(["b1"], "Ab1"))):
        model = ProductModel(A, B, cfg.budget)
        spot = fitting_of_product(model, rng)
        P = model.context
        lin_no = 0
        for _ in range(20):
            a = P.random_element(rng, 3)
            while not a.linear:
                a = P.random_element(rng, 3)
            lin_no += fitting_contains(a).verdict == "no"
        comm_yes = 0
        for _ in range(20):
            c = P.random_commutant_element(rng, 4)
            comm_yes += fitting_contains(c).verdict == "yes"
        good = spot.ok and lin_no == 20 and comm_yes == 20
        ok = ok and good
        lines.append(f"{model.name}: spot checks {spot.ok}, linear -> no {lin_no}/20, commutant -> yes {comm_yes}/20")
    return SuiteItem("product-fitting-radical", ok, lines)


def strict_semidomain_criterion(cfg: SuiteConfig) -> SuiteItem:
    expected = [
        (free_algebra(2, "F2"), "strict_semidomain"),
        (free_algebra(3, "F3"), "strict_semidomain"),
        (abelian(3, "Ab3"), "abelian"),
        (torsion_algebra(), "not_semidomain"),
        (nilpotent_quotient(2, 2, "N(2,2)"), "semidomain_not_strict"),
    ]
    ok, lines = True, []
    for ctx, want in expected:
        got = classify(ctx, cfg.search_bound)
        ok = ok and got.verdict == want
        lines.append(f"{ctx.name}: {got} (expected {want}); {got.rationale}")
    return SuiteItem("strict-semidomain-criterion", ok, lines)


def scalar_extension_torsion(cfg: SuiteConfig) -> SuiteItem:
    cases = [
        (free_algebra(letters("a", 2), "F"), abelian(["b1"], "Ab1"), "met"),
        (abelian(letters("a", 2), "Ab"), abelian(["b1"], "Ab1"), "vacuous"),
        (torsion_algebra(), abelian(["b1"], "Ab1"), "not met"),
    ]
    ok, lines = True, []
    for A, B, want in cases:
        rep = lemma_as_check(ProductModel(A, B, cfg.budget), cfg.search_bound)
        status = rep.search.status if rep.search else "-"
        good = rep.hypothesis == want and rep.ok
        ok = ok and good
        lines.append(f"{A.name} * {B.name}: hypothesis {rep.hypothesis}, search {status}")
    return SuiteItem("scalar-extension-torsion", ok, lines)


def product_semidomain_criterion(cfg: SuiteConfig) -> SuiteItem:
    ab, fr, tor = _factors().values()
    cases = [(ab[0], ab[1]), (ab[0], fr[1]), (fr[0], fr[1]), (tor[0], ab[1])]
    ok, lines = True, []
    negatives = 0
    for A, B in cases:
        model = ProductModel(A, B, cfg.budget)
        verdict = product_semidomain(A, B, cfg.search_bound, model)
        direct = linear_torsion_search(model.context.module, cfg.search_bound, gb=model.context.gb)
        agree = verdict.semidomain == (direct.status == "none")
        if verdict.semidomain is False:
            negatives += verdict.witness is not None and verdict.witness.valid
        ok = ok and agree
        lines.append(f"{model.name}: semidomain={verdict.semidomain} ({verdict.rationale}); direct search {direct.status}")
    ok = ok and negatives >= 1
    return SuiteItem("product-semidomain-criterion", ok, lines)


ITEMS: List[Callable[[SuiteConfig], SuiteItem]] = [
    nilpotent_zero_divisors,
    fitting_zero_divisors,
    commutant_annihilator_pairs,
    non_semidomain,
    module_splitting,
    product_isomorphism,
    abelian_product_commutant,
    product_fitting_radical,
    strict_semidomain_criterion,
    scalar_extension_torsion,
    product_semidomain_criterion,
]


def run_suite(cfg: SuiteConfig | None = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    items = []
    for fn in ITEMS:
        start = time.perf_counter()
        try:
            item = fn(cfg)
        except Exception as exc:  # a crash is a failed item, not a crashed suite
            item = SuiteItem(fn.__name__.replace("_", "-"), False, [f"{type(exc).__name__}: {exc}"])
        item.seconds = time.perf_counter() - start
        items.append(item)
    return SuiteReport(items)
