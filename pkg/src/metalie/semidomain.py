"""Zero divisors, Fitting radical comparisons and semidomain classification.

In a metabelian algebra ``<x> o <y> = 0`` reduces to finitely many checks:
``x o y = 0``, ``(g o x) o y = 0`` for every generator ``g`` and
``m . (x_bar y_bar) = 0`` for every commutant generator ``m``.  Longer
products are polynomial multiples of these because the action commutes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .fp import FittingAnswer, fitting_contains
from .lie import AlgebraContext, LieElement
from .modules import DEFAULT_BUDGET, ModulePresentation
from .poly import Polynomial
from .torsion import (
    TorsionSearchResult,
    TorsionWitness,
    linear_torsion_search,
    stable_annihilator_power,
    torsion_free_by_saturation,
)

DEFAULT_BOUND = 4


@dataclass
class ZeroDivisorCertificate:
    x: LieElement
    y: LieElement
    checks: Dict[str, bool]

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> List[str]:
        return [f"{k}: {'0' if v else 'nonzero'}" for k, v in self.checks.items()]


def is_zero_divisor_pair(x: LieElement, y: LieElement, ctx: AlgebraContext | None = None) -> ZeroDivisorCertificate:
    """Finite check of ``<x> o <y> = 0``; truthiness of the certificate is the answer."""
    ctx = ctx or x.ctx
    ctx._check(x, y)
    if not x or not y:
        raise ValueError("zero divisors are nonzero by definition")
    checks: Dict[str, bool] = {"x o y": not ctx.mul(x, y)}
    for g in range(ctx.rank):
        a = ctx.gen(g)
        checks[f"({ctx.names[g]} o x) o y"] = not ctx.mul(ctx.mul(a, x), y)
        checks[f"({ctx.names[g]} o y) o x"] = not ctx.mul(ctx.mul(a, y), x)
    xy = x.linear_form() * y.linear_form()
    if xy.terms:
        for m in ctx.commutant_generators():
            checks[f"{m} . x y"] = not ctx.act(m, xy)
    return ZeroDivisorCertificate(x, y, checks)


# -- Fitting radical versus zero divisors -------------------------------------

@dataclass
class FitPartner:
    element: LieElement
    fitting: FittingAnswer
    partner: Optional[LieElement]
    certificate: Optional[ZeroDivisorCertificate]

    @property
    def ok(self) -> bool:
        return self.fitting.verdict != "yes" or bool(self.certificate)


@dataclass
class FitDivisorReport:
    items: List[FitPartner]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    @property
    def checked(self) -> int:
        return sum(1 for i in self.items if i.fitting.verdict == "yes")


def fitting_partner(x: LieElement, answer: FittingAnswer | None = None) -> Optional[LieElement]:
    """A nonzero ``y`` with ``<x> o <y> = 0`` for ``x`` in the Fitting radical.

    ``y`` is taken in the last nonzero power of ``<x>``: ``x`` itself when
    ``<x>`` is abelian, otherwise ``n . v^(K-1)`` for an ideal generator ``n``
    with ``n . v^K = 0`` and ``n . v^(K-1) != 0``.
    """
    ctx = x.ctx
    answer = answer or fitting_contains(x)
    if answer.verdict != "yes" or not x:
        return None
    if not x.linear or not answer.generators:
        return x
    v = x.linear_form()
    best, best_k = None, -1
    for n in answer.generators:
        k = stable_annihilator_power(n.module_element(), v, ctx.gb).index or 0
        if k > best_k:
            best, best_k = n, k
    y = best
    for _ in range(best_k - 1):
        y = ctx.act(y, v)
    return y


def fit_vs_divisors(ctx: AlgebraContext, sample_budget: int = 20, seed: int = 0,
                    extra: List[LieElement] = ()) -> FitDivisorReport:
    """Sample the Fitting radical and certify a zero-divisor partner for each member."""
    rng = random.Random(seed)
    samples = list(extra)
    samples += [ctx.gen(i) for i in range(ctx.rank)]
    while len(samples) < sample_budget + ctx.rank + len(extra):
        samples.append(ctx.random_element(rng, max_degree=3, linear=rng.random() < 0.5))
    items = []
    for x in samples:
        if not x:
            continue
        ans = fitting_contains(x)
        y = fitting_partner(x, ans)
        cert = is_zero_divisor_pair(x, y) if y is not None else None
        items.append(FitPartner(x, ans, y, cert))
    return FitDivisorReport(items)


# -- linear torsion and classification ----------------------------------------

@dataclass
class TorsionFreedom:
    status: str  # "structural_yes" | "torsion_free_up_to" | "torsion"
    bound: Optional[int] = None
    witness: Optional[TorsionWitness] = None
    rationale: str = ""

    def __str__(self) -> str:
        if self.status == "torsion_free_up_to":
            return f"torsion_free_up_to({self.bound})"
        if self.status == "torsion":
            return f"torsion({self.witness})"
        return "structural_yes"


def linear_torsion_free(ctx: AlgebraContext, degree_bound: int = DEFAULT_BOUND,
                        budget: int = DEFAULT_BUDGET) -> TorsionFreedom:
    if ctx.kind == "free":
        return TorsionFreedom("structural_yes", rationale="free commutant over a domain")
    factors = ctx.info.get("factors")
    if factors is not None:
        verdicts = [classify(f, degree_bound, budget).verdict for f in factors]
        if all(v in ("abelian", "strict_semidomain") for v in verdicts):
            return TorsionFreedom("structural_yes", rationale="product of abelian or strict semidomain factors")
    res = linear_torsion_search(ctx.module, degree_bound, gb=ctx.gb, budget=budget)
    if res.found:
        return TorsionFreedom("torsion", degree_bound, res.witness, f"{res.method} search")
    proved, witness = torsion_free_by_saturation(ctx.module, ctx.gb, budget)
    if proved:
        return TorsionFreedom("structural_yes", rationale="saturation by every variable is trivial")
    if witness is not None:
        return TorsionFreedom("torsion", witness.degree, witness, "saturation")
    return TorsionFreedom("torsion_free_up_to", degree_bound, rationale=f"{res.method} search")


VERDICTS = ("abelian", "strict_semidomain", "semidomain_not_strict", "not_semidomain", "unknown")


@dataclass
class Classification:
    verdict: str
    bound: Optional[int] = None
    torsion: Optional[TorsionWitness] = None
    zero_divisors: Optional[ZeroDivisorCertificate] = None
    rationale: str = ""

    def __str__(self) -> str:
        return f"unknown({self.bound})" if self.verdict == "unknown" else self.verdict


def _torsion_pair(ctx: AlgebraContext, w: TorsionWitness) -> Tuple[LieElement, LieElement]:
    x = ctx.element(comm=w.element)
    y = ctx.element({i: c for i, c in enumerate(_linear_coeffs(w.f)) if c})
    return x, y


def _linear_coeffs(f: Polynomial) -> List[Fraction]:
    out = [Fraction(0)] * len(f.vars)
    for e, c in f.terms.items():
        out[e.index(1)] = c
    return out


def classify(ctx: AlgebraContext, degree_bound: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET,
             seed: int = 0) -> Classification:
    """Abelian, strict semidomain (nonabelian and linear-torsion free), or a witnessed failure.

    A torsion pair ``m . f = 0`` makes ``y`` (linear part ``f``) a zero divisor
    outside the commutant; when some such ``y`` lies outside the Fitting
    radical the algebra is not a semidomain.
    """
    if ctx.is_abelian():
        return Classification("abelian", rationale="all products vanish")
    ltf = linear_torsion_free(ctx, degree_bound, budget)
    if ltf.status == "structural_yes":
        return Classification("strict_semidomain", rationale=ltf.rationale)
    if ltf.status == "torsion_free_up_to":
        return Classification("unknown", degree_bound, rationale="no torsion up to the bound and no proof")
    x, y = _torsion_pair(ctx, ltf.witness)
    cert = is_zero_divisor_pair(x, y)
    if all(fitting_contains(g, budget=budget).verdict == "yes" for g in ctx.gens()):
        # the radical is an ideal containing every generator, so D(A) = A = Fit(A)
        return Classification("semidomain_not_strict", degree_bound, ltf.witness, cert,
                              "every generator lies in the Fitting radical")
    rng = random.Random(seed)
    candidates = [y] + [y + ctx.random_commutant_element(rng, 3) for _ in range(4)]
    for cand in candidates:
        ans = fitting_contains(cand, budget=budget)
        if ans.verdict == "no":
            return Classification("not_semidomain", degree_bound, ltf.witness,
                                  is_zero_divisor_pair(x, cand),
                                  f"{cand} is a zero divisor outside the Fitting radical")
    return Classification("unknown", degree_bound, ltf.witness, cert,
                          "torsion found but every tried partner lies in the Fitting radical")


# -- products -----------------------------------------------------------------

@dataclass
class ProductVerdict:
    semidomain: Optional[bool]
    rationale: str
    factors: Tuple[Classification, Classification]
    witness: Optional[ZeroDivisorCertificate] = None
    search: Optional[TorsionSearchResult] = None


def product_semidomain(A: AlgebraContext, B: AlgebraContext, degree_bound: int = DEFAULT_BOUND,
                       model=None, budget: int = DEFAULT_BUDGET) -> ProductVerdict:
    """``A * B`` is a semidomain iff each factor is abelian or a strict semidomain."""
    from .product import ProductModel, transport

    if A.rank == 0 or B.rank == 0:
        raise ValueError("both factors need at least one generator")
    ca, cb = classify(A, degree_bound, budget), classify(B, degree_bound, budget)
    good = ("abelian", "strict_semidomain")
    if ca.verdict in good and cb.verdict in good:
        return ProductVerdict(True, "each factor is abelian or a strict semidomain", (ca, cb))
    model = model or ProductModel(A, B, budget)
    P = model.context
    for k, (c, offset) in enumerate(((ca, 0), (cb, A.rank))):
        if c.torsion is not None and c.verdict in ("not_semidomain", "semidomain_not_strict", "unknown"):
            src = (A, B)[k]
            x, y = _torsion_pair(src, c.torsion)
            index_map = [offset + i for i in range(src.rank)]
            px, py = transport(x, P, index_map), transport(y, P, index_map)
            cert = is_zero_divisor_pair(px, py)
            if cert and fitting_contains(py).verdict == "no":
                return ProductVerdict(False, f"factor {src.name} has linear torsion, which embeds in the product",
                                      (ca, cb), cert)
    res = linear_torsion_search(P.module, degree_bound, gb=P.gb, budget=budget)
    if res.found:
        x, y = _torsion_pair(P, res.witness)
        return ProductVerdict(False, "direct torsion search on the product commutant", (ca, cb),
                              is_zero_divisor_pair(x, y), res)
    return ProductVerdict(None, f"no torsion up to degree {degree_bound}; factors not classified", (ca, cb), None, res)


@dataclass
class ScalarExtensionReport:
    hypothesis: str  # "met" | "vacuous" | "not met" | "unverified"
    search: Optional[TorsionSearchResult]

    @property
    def ok(self) -> bool:
        if self.hypothesis == "vacuous":
            return True
        if self.hypothesis == "not met":
            return True
        return self.search is not None and self.search.status == "none"


def scalar_extension(model) -> ModulePresentation:
    """``A^2`` tensored up to the joint polynomial ring (the ``M1`` component)."""
    mp = model.mprime
    A = model.left
    return ModulePresentation(mp.vars, A.module.gens, tuple(mp.gb1), A.module.degrees, "M1")


def lemma_as_check(model, degree_bound: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET) -> ScalarExtensionReport:
    """Scalar extension of a linear-torsion-free left commutant stays linear-torsion free."""
    A = model.left
    if A.is_abelian():
        return ScalarExtensionReport("vacuous", None)
    ltf = linear_torsion_free(A, degree_bound, budget)
    pres = scalar_extension(model)
    res = linear_torsion_search(pres, degree_bound, gb=model.mprime.gb1, budget=budget)
    if ltf.status == "torsion":
        return ScalarExtensionReport("not met", res)
    return ScalarExtensionReport("met" if ltf.status == "structural_yes" else "unverified", res)
