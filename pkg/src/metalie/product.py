"""The metabelian product ``A * B``.

Two independent models are built:

* the union presentation ``<X u Y | R_A u R_B>``, compiled like any other
  finitely presented algebra;
* the structural algebra ``C = V (+) M`` where ``M`` is generated by the
  mixed products ``w_ij = x_i y_j`` together with the commutant generators
  of both factors, subject to the factor relations and the two exchange
  families

      w_{i j1}.y_{j2} = w_{i j2}.y_{j1} + (y_{j2} y_{j1}).x_i      (j1 > j2)
      w_{i1 j}.x_{i2} = w_{i2 j}.x_{i1} + (x_{i1} x_{i2}).y_j      (i1 > i2)

Alongside sits the direct model ``M' = M0 (+) M1 (+) M2``: ``M0`` is the
monomial ideal spanned by the monomials using letters of both alphabets and
``M1 = A^2 (x) k[X u Y]``, ``M2 = B^2 (x) k[X u Y]``.  Its action is the
case split on least indices and uses no Gröbner basis of ``M``, so it serves
as an oracle for ``M``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .fp import AlgebraPresentation, compile, fitting_contains
from .free import free_context
from .lie import AlgebraContext, LieElement
from .linalg import Echelon
from .modules import (
    DEFAULT_BUDGET,
    FreeModuleElement,
    GroebnerBasis,
    ModulePresentation,
    POT,
    Terms,
    graded_dimension,
    t_add,
    t_shift,
)
from .poly import Exps, VariableSet, ediv, emul, monomials_of_degree


class NameClash(ValueError):
    pass


def _presentation_of(ctx_or_pres) -> AlgebraPresentation:
    if isinstance(ctx_or_pres, AlgebraPresentation):
        return ctx_or_pres
    pres = ctx_or_pres.info.get("presentation")
    if pres is None:
        raise ValueError(f"{ctx_or_pres!r} carries no presentation")
    return pres


def transport_terms(terms: Terms, src: AlgebraContext, target: AlgebraContext,
                    index_map: Sequence[int]) -> Terms:
    """Raw image of commutant terms under a map of generators; not reduced."""
    m = len(target.vars)
    out: Terms = {}
    for (g, e), c in terms.items():
        p, q = src.pairs[g]
        exps = [0] * m
        for i, k in enumerate(e):
            exps[index_map[i]] += k
        t_add(out, t_shift(target.bracket_terms(index_map[p], index_map[q]), tuple(exps)), c)
    return out


def transport(elem: LieElement, target: AlgebraContext, index_map: Sequence[int] | None = None) -> LieElement:
    """Image of ``elem`` under the homomorphism sending generator ``i`` to ``index_map[i]``."""
    src = elem.ctx
    if index_map is None:
        index_map = [target.vars.index(n) for n in src.names]
    lin = {index_map[i]: c for i, c in elem.linear}
    return target.element(lin, transport_terms(elem.comm, src, target, index_map))


def product_presentation(A, B, rename: bool = False, name: str | None = None) -> AlgebraPresentation:
    """``<X u Y | R_A u R_B>``; with ``rename`` clashing names of ``B`` get a prime."""
    pa, pb = _presentation_of(A), _presentation_of(B)
    xa, yb = list(pa.names), list(pb.names)
    clash = set(xa) & set(yb)
    if clash:
        if not rename:
            raise NameClash(f"generator names shared by both factors: {sorted(clash)}")
        renamed_b: List[str] = []
        for n in yb:
            while n in xa or n in renamed_b:
                n += "'"
            renamed_b.append(n)
        yb = renamed_b
    union = free_context(xa + yb)
    nA = len(xa)
    rels = [transport(r, union, list(range(nA))) for r in pa.relators]
    rels += [transport(r, union, [nA + j for j in range(len(yb))]) for r in pb.relators]
    return AlgebraPresentation(name or f"{pa.name}*{pb.name}", union, tuple(rels))


def renamed(ctx: AlgebraContext, taken, budget: int = DEFAULT_BUDGET) -> AlgebraContext:
    """Copy of ``ctx`` whose generator names avoid ``taken`` (clashing names get primes)."""
    pres = _presentation_of(ctx)
    names: List[str] = []
    for n in pres.names:
        while n in taken or n in names:
            n += "'"
        names.append(n)
    free = free_context(names, name=ctx.name)
    rels = tuple(transport(r, free, list(range(ctx.rank))) for r in pres.relators)
    return compile(AlgebraPresentation(ctx.name, free, rels), budget)


# -- the structural algebra C = V + M ---------------------------------------

def _lift(terms: Terms, gen_map: Sequence[int], offset: int, width: int) -> Terms:
    out: Terms = {}
    for (g, e), c in terms.items():
        exps = [0] * width
        exps[offset:offset + len(e)] = e
        out[(gen_map[g], tuple(exps))] = c
    return out


def _mixed_pairs(nA: int, nB: int) -> List[Tuple[int, int]]:
    return [(i, nA + j) for i in range(nA - 1, -1, -1) for j in range(nB - 1, -1, -1)]


def build_structural(A: AlgebraContext, B: AlgebraContext, budget: int = DEFAULT_BUDGET) -> AlgebraContext:
    """The algebra ``C`` on ``X u Y`` whose commutant is the module ``M``."""
    nA, nB = A.rank, B.rank
    names = A.names + B.names
    if len(set(names)) != len(names):
        raise NameClash("factor alphabets must be disjoint")
    n = nA + nB
    pairs = _mixed_pairs(nA, nB)
    pairs += list(A.pairs)
    pairs += [(p + nA, q + nA) for p, q in B.pairs]
    index = {pq: g for g, pq in enumerate(pairs)}
    one = (0,) * n
    vars = VariableSet(names)

    def bt(p, q) -> Terms:
        if (p, q) in index:
            return {(index[(p, q)], one): Fraction(1)}
        return {(index[(q, p)], one): Fraction(-1)}

    def var(i):
        return vars.var(i)

    relations: List[Terms] = []
    a_map = [index[pq] for pq in A.pairs]
    b_map = [index[(p + nA, q + nA)] for p, q in B.pairs]
    relations += [_lift(el, a_map, 0, n) for el in A.gb.elements]
    relations += [_lift(el, b_map, nA, n) for el in B.gb.elements]
    for i in range(nA):
        for j1 in range(nB):
            for j2 in range(j1):
                r: Terms = {}
                t_add(r, t_shift(bt(i, nA + j1), var(nA + j2)))
                t_add(r, t_shift(bt(i, nA + j2), var(nA + j1)), Fraction(-1))
                t_add(r, t_shift(bt(nA + j2, nA + j1), var(i)), Fraction(-1))
                relations.append(r)
    for j in range(nB):
        for i1 in range(nA):
            for i2 in range(i1):
                r = {}
                t_add(r, t_shift(bt(i1, nA + j), var(i2)))
                t_add(r, t_shift(bt(i2, nA + j), var(i1)), Fraction(-1))
                t_add(r, t_shift(bt(i1, i2), var(nA + j)), Fraction(-1))
                relations.append(r)
    gens = tuple(f"[{names[p]},{names[q]}]" for p, q in pairs)
    rel_elems = [FreeModuleElement(vars, gens, r) for r in relations if r]
    return AlgebraContext(vars, pairs, rel_elems, kind="product", name=f"C({A.name}*{B.name})",
                          budget=budget, info={"factors": (A, B)})


# -- the direct model M' ---------------------------------------------------------

@dataclass
class MPrimeElement:
    m0: Dict[Exps, Fraction] = field(default_factory=dict)
    m1: Terms = field(default_factory=dict)
    m2: Terms = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not (self.m0 or self.m1 or self.m2)

    def vector(self) -> Dict:
        out = {("M0", e): c for e, c in self.m0.items()}
        out.update({("M1",) + t: c for t, c in self.m1.items()})
        out.update({("M2",) + t: c for t, c in self.m2.items()})
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MPrimeElement) and self.vector() == other.vector()


class MPrime:
    """``M0 (+) M1 (+) M2`` with the least-index action on ``M0``."""

    def __init__(self, A: AlgebraContext, B: AlgebraContext):
        self.A, self.B = A, B
        self.nA, self.nB = A.rank, B.rank
        n = self.nA + self.nB
        self.vars = VariableSet(A.names + B.names)
        self.n = n
        ident_a = list(range(len(A.pairs)))
        ident_b = list(range(len(B.pairs)))
        # a Gröbner basis stays one after adding variables
        self.gb1 = GroebnerBasis(self.vars, A.module.gens, [_lift(el, ident_a, 0, n) for el in A.gb.elements], POT)
        self.gb2 = GroebnerBasis(self.vars, B.module.gens, [_lift(el, ident_b, self.nA, n) for el in B.gb.elements], POT)
        self._cache: Dict[Tuple[int, Exps], MPrimeElement] = {}

    # -- basics -------------------------------------------------------------
    def least_indices(self, w: Exps) -> Tuple[int, int]:
        i = next(k for k in range(self.nA) if w[k])
        j = next(k for k in range(self.nB) if w[self.nA + k])
        return i, j

    def w(self, i: int, j: int) -> MPrimeElement:
        e = [0] * self.n
        e[i] += 1
        e[self.nA + j] += 1
        return MPrimeElement(m0={tuple(e): Fraction(1)})

    def from_A(self, terms: Terms) -> MPrimeElement:
        return MPrimeElement(m1=self.gb1.reduce_terms(_lift(terms, list(range(len(self.A.pairs))), 0, self.n)))

    def from_B(self, terms: Terms) -> MPrimeElement:
        return MPrimeElement(m2=self.gb2.reduce_terms(_lift(terms, list(range(len(self.B.pairs))), self.nA, self.n)))

    def add(self, a: MPrimeElement, b: MPrimeElement, c: Fraction = Fraction(1)) -> MPrimeElement:
        m0 = dict(a.m0)
        for e, v in b.m0.items():
            s = m0.get(e, 0) + c * v
            if s:
                m0[e] = s
            else:
                m0.pop(e, None)
        m1 = dict(a.m1)
        t_add(m1, b.m1, c)
        m2 = dict(a.m2)
        t_add(m2, b.m2, c)
        return MPrimeElement(m0, m1, m2)

    def is_zero(self, a: MPrimeElement) -> bool:
        return not a.m0 and not self.gb1.reduce_terms(a.m1) and not self.gb2.reduce_terms(a.m2)

    # -- the action -----------------------------------------------------------
    def act(self, a: MPrimeElement, v: int) -> MPrimeElement:
        """Action of the letter with joint index ``v``."""
        unit = self.vars.var(v)
        m0: Dict[Exps, Fraction] = {}
        m1 = self.gb1.reduce_terms(t_shift(a.m1, unit)) if a.m1 else {}
        m2 = self.gb2.reduce_terms(t_shift(a.m2, unit)) if a.m2 else {}
        spill1: Terms = {}
        spill2: Terms = {}
        for w, c in a.m0.items():
            m0[emul(w, unit)] = m0.get(emul(w, unit), 0) + c
            i, j = self.least_indices(w)
            if v < self.nA:
                if v < i:
                    # (x_i x_v) . w* y_j  where  w* y_j = w / x_i
                    rest = ediv(w, self.vars.var(i))
                    t_add(spill1, t_shift(_lift(self.A.bracket_terms(i, v), list(range(len(self.A.pairs))), 0, self.n), rest), c)
            else:
                j1 = v - self.nA
                if j1 < j:
                    # (y_j1 y_j) . w* x_i  where  w* x_i = w / y_j
                    rest = ediv(w, self.vars.var(self.nA + j))
                    t_add(spill2, t_shift(_lift(self.B.bracket_terms(j1, j), list(range(len(self.B.pairs))), self.nA, self.n), rest), c)
        m0 = {e: c for e, c in m0.items() if c}
        if spill1:
            t_add(m1, self.gb1.reduce_terms(spill1))
        if spill2:
            t_add(m2, self.gb2.reduce_terms(spill2))
        return MPrimeElement(m0, m1, m2)

    def act_monomial(self, a: MPrimeElement, e: Exps) -> MPrimeElement:
        for v, k in enumerate(e):
            for _ in range(k):
                a = self.act(a, v)
        return a

    # -- the comparison map M -> M' ------------------------------------------
    def image_of_generator(self, C: AlgebraContext, g: int) -> MPrimeElement:
        p, q = C.pairs[g]
        nA = self.nA
        if p < nA <= q:
            return self.w(p, q - nA)
        if q < nA <= p:
            return self.add(MPrimeElement(), self.w(q, p - nA), Fraction(-1))
        if p < nA:
            return self.from_A(self.A.bracket_terms(p, q))
        return self.from_B(self.B.bracket_terms(p - nA, q - nA))

    def image_term(self, C: AlgebraContext, g: int, e: Exps) -> MPrimeElement:
        hit = self._cache.get((g, e))
        if hit is not None:
            return hit
        if not any(e):
            out = self.image_of_generator(C, g)
        else:
            v = max(i for i, k in enumerate(e) if k)
            out = self.act(self.image_term(C, g, ediv(e, self.vars.var(v))), v)
        self._cache[(g, e)] = out
        return out

    def evaluate(self, C: AlgebraContext, terms: Terms) -> MPrimeElement:
        acc = MPrimeElement()
        for (g, e), c in terms.items():
            acc = self.add(acc, self.image_term(C, g, e), c)
        acc.m1 = self.gb1.reduce_terms(acc.m1)
        acc.m2 = self.gb2.reduce_terms(acc.m2)
        return acc

    # -- dimensions by enumeration ------------------------------------------
    def dim_m0(self, d: int) -> int:
        count = 0
        for e in monomials_of_degree(self.n, d):
            if any(e[:self.nA]) and any(e[self.nA:]):
                count += 1
        return count

    def _dim_ext(self, ctx: AlgebraContext, other_rank: int, d: int) -> int:
        total = 0
        for k in range(2, d + 1):
            std = len(ctx.gb.standard_terms(ctx.module.degrees, k)) if ctx.pairs else 0
            total += std * len(monomials_of_degree(other_rank, d - k))
        return total

    def dim_m1(self, d: int) -> int:
        return self._dim_ext(self.A, self.nB, d)

    def dim_m2(self, d: int) -> int:
        return self._dim_ext(self.B, self.nA, d)


# -- the model ------------------------------------------------------------------

class ProductModel:
    """Both models of ``A * B`` plus the direct model ``M'``.

    ``context`` (the compiled union presentation) is where products are
    computed; ``C`` and ``mprime`` serve as independent cross-checks.
    """

    def __init__(self, A: AlgebraContext, B: AlgebraContext, budget: int = DEFAULT_BUDGET,
                 rename: bool = False):
        if A.rank == 0 or B.rank == 0:
            raise ValueError("both factors need at least one generator")
        if rename and set(A.names) & set(B.names):
            B = renamed(B, set(A.names), budget)
        self.left, self.right = A, B
        self.budget = budget
        self.presentation = product_presentation(A, B)
        self.context = compile(self.presentation, budget)
        self.context.kind = "product"
        self.context.info["factors"] = (A, B)
        self.C = build_structural(A, B, budget)
        self.mprime = MPrime(A, B)

    @property
    def M(self) -> ModulePresentation:
        return self.C.module

    @property
    def nA(self) -> int:
        return self.left.rank

    @property
    def name(self) -> str:
        return self.presentation.name

    def x(self, i: int) -> LieElement:
        return self.context.gen(i)

    def y(self, j: int) -> LieElement:
        return self.context.gen(self.nA + j)

    def w(self, i: int, j: int) -> LieElement:
        """``x_i o y_j``."""
        return self.context.pair(i, self.nA + j)

    def z_generators(self) -> List[int]:
        """Indices in ``C`` of the generators coming from the factors' own commutants."""
        return [g for g, (p, q) in enumerate(self.C.pairs) if (p < self.nA) == (q < self.nA)]

    def to_C(self, a: LieElement) -> LieElement:
        return transport(a, self.C, list(range(self.context.rank)))

    def from_C(self, a: LieElement) -> LieElement:
        return transport(a, self.context, list(range(self.C.rank)))

    def mul(self, a: LieElement, b: LieElement, cross_check: bool = False) -> LieElement:
        out = self.context.mul(a, b)
        if cross_check:
            other = self.C.mul(self.to_C(a), self.to_C(b))
            if self.from_C(other) != out:
                raise AssertionError(f"models disagree on ({a}) o ({b})")
            if self.evaluate(other) != self.evaluate(self.to_C(out)):
                raise AssertionError(f"direct model disagrees on ({a}) o ({b})")
        return out

    def evaluate(self, v: FreeModuleElement | LieElement) -> MPrimeElement:
        """Image in ``M'`` of a commutant element of ``C`` (or of a raw element of ``M``)."""
        if isinstance(v, LieElement):
            if v.ctx is self.context:
                v = self.to_C(v)
            terms = v.comm
        else:
            terms = v.terms
        return self.mprime.evaluate(self.C, terms)

    def quotient_by_z(self) -> ModulePresentation:
        """``M / M3`` where ``M3`` is generated by the factor commutants."""
        return self.M.with_relations([self.M.gen(g) for g in self.z_generators()])


def build_M(A: AlgebraContext, B: AlgebraContext, degree_bound: int | None = None) -> ModulePresentation:
    """Presentation of ``M``; the relation set is finite, so no truncation is applied."""
    return build_structural(A, B).module


def mprime_act(model: ProductModel, a: MPrimeElement, v: int | str) -> MPrimeElement:
    i = model.C.vars.index(v) if isinstance(v, str) else v
    return model.mprime.act(a, i)


def product_mul(a: LieElement, b: LieElement, model: ProductModel, cross_check: bool = False) -> LieElement:
    return model.mul(a, b, cross_check)


# -- certificates ------------------------------------------------------------------

@dataclass
class DegreeRow:
    degree: int
    values: Dict[str, int]
    ok: bool


@dataclass
class Report:
    title: str
    rows: List[DegreeRow] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and all(self.checks.values())

    def lines(self) -> List[str]:
        out = [f"{self.title}: {'pass' if self.ok else 'FAIL'}"]
        for r in self.rows:
            vals = " ".join(f"{k}={v}" for k, v in r.values.items())
            out.append(f"  d={r.degree} {vals} {'ok' if r.ok else 'MISMATCH'}")
        for k, v in self.checks.items():
            out.append(f"  {k}: {'ok' if v else 'FAIL'}")
        out.extend(f"  note: {n}" for n in self.notes)
        return out


def verify_lemma_mprime(model: ProductModel, degree_bound: int) -> Report:
    """Graded comparison of ``M`` with ``M'`` and rank of the comparison map."""
    mp = model.mprime
    dims_M = graded_dimension(model.M, degree_bound, gb=model.C.gb).dims
    quotient = model.quotient_by_z()
    dims_Q = graded_dimension(quotient, degree_bound).dims
    rep = Report(f"module splitting {model.left.name}*{model.right.name}")
    for d in range(2, degree_bound + 1):
        m0, m1, m2 = mp.dim_m0(d), mp.dim_m1(d), mp.dim_m2(d)
        dm, dq = dims_M[d], dims_Q[d]
        dm3 = dm - dq
        basis = model.C.gb.standard_terms(model.M.degrees, d)
        ech = Echelon()
        for t in basis:
            ech.add(mp.evaluate(model.C, {t: Fraction(1)}).vector())
        phi = len(ech)
        ok = dm3 == m1 + m2 and dq == m0 and dm == m0 + m1 + m2 and phi == dm
        rep.rows.append(DegreeRow(d, {"M": dm, "M3": dm3, "M/M3": dq, "M0": m0, "M1": m1, "M2": m2, "rank_phi": phi}, ok))
    return rep


def relations_transport(src: AlgebraContext, dst: AlgebraContext) -> bool:
    """Every relation of ``src`` vanishes in ``dst`` under the identity on generators."""
    ident = list(range(src.rank))
    return all(not dst.gb.reduce_terms(transport_terms(r.terms, src, dst, ident)) for r in src.gb)


def verify_product_theorems(model: ProductModel, degree_bound: int) -> Report:
    """Union presentation against ``M`` (and against the mixed-monomial ideal for abelian factors)."""
    rep = Report(f"product isomorphism {model.left.name}*{model.right.name}")
    dims_union = graded_dimension(model.context.module, degree_bound, gb=model.context.gb).dims
    dims_M = graded_dimension(model.M, degree_bound, gb=model.C.gb).dims
    both_abelian = model.left.is_abelian() and model.right.is_abelian()
    for d in range(2, degree_bound + 1):
        vals = {"union": dims_union[d], "M": dims_M[d]}
        ok = dims_union[d] == dims_M[d]
        if both_abelian:
            vals["mixed_ideal"] = model.mprime.dim_m0(d)
            ok = ok and dims_union[d] == vals["mixed_ideal"]
        rep.rows.append(DegreeRow(d, vals, ok))
    rep.checks["union relations hold in C"] = relations_transport(model.context, model.C)
    rep.checks["C relations hold in union"] = relations_transport(model.C, model.context)
    if both_abelian:
        rep.notes.append("both factors abelian: commutant compared with the ideal of mixed monomials")
    return rep


@dataclass
class FittingOfProduct:
    statement: str
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def fitting_of_product(model: ProductModel, rng: random.Random | None = None, samples: int = 5,
                       powers: int = 6) -> FittingOfProduct:
    """Fitting radical of a product of nonzero factors is its commutant; spot-checked."""
    rng = rng or random.Random(0)
    C = model.context
    checks: Dict[str, bool] = {}
    c = model.w(0, 0)
    checks["x1 not in Fit"] = fitting_contains(model.x(0)).verdict == "no"
    checks["w11 in Fit"] = fitting_contains(c).verdict == "yes"
    for k in range(samples):
        a = C.random_element(rng, max_degree=3)
        while not a.linear:
            a = C.random_element(rng, max_degree=3)
        cur = c
        alive = True
        for _ in range(powers):
            cur = C.mul(cur, a)
            alive = alive and bool(cur)
        checks[f"sample {k}: c o a^{powers} != 0"] = alive
        checks[f"sample {k}: a not in Fit"] = fitting_contains(a).verdict == "no"
    return FittingOfProduct("Fit(A*B) = (A*B)^2", checks)
