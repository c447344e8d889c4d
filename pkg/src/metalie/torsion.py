"""Torsion under linear polynomials, saturation and annihilator powers.

Multigraded modules (every relation homogeneous for some Z^n weighting of
the generators, with ``x_i`` of weight ``e_i``) get an exact treatment: if
``m.f = 0`` for a linear form ``f``, then the lex-top multihomogeneous
component of ``m`` is killed by the most significant variable of ``f``.  So
torsion by any linear form exists iff torsion by a single variable does,
and that is a kernel computation per multidegree, or a saturation test for
a proof valid in every degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import kernel
from .modules import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DegreeOverPosition,
    EliminateLast,
    FreeModuleElement,
    GroebnerBasis,
    ModulePresentation,
    POT,
    Term,
    Terms,
    buchberger,
    groebner_terms,
    t_act,
    t_add,
)
from .poly import Exps, Polynomial, emul


@dataclass
class TorsionWitness:
    element: FreeModuleElement
    f: Polynomial
    degree: int

    def __str__(self) -> str:
        return f"({self.element}) . ({self.f}) = 0"


@dataclass
class TorsionSearchResult:
    status: str  # "witness" | "none" | "inconclusive"
    bound: int
    method: str
    witness: Optional[TorsionWitness] = None
    undecided: List[int] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "witness"


def _weight(weights, t: Term) -> Exps:
    g, e = t
    return emul(weights[g], e)


def _image(gb: GroebnerBasis, basis: Sequence[Term], s: int) -> List[Terms]:
    n = len(gb.ring)
    unit = tuple(1 if i == s else 0 for i in range(n))
    return [gb.reduce_terms({(g, emul(e, unit)): Fraction(1)}) for g, e in basis]


def _linear_image(gb: GroebnerBasis, basis: Sequence[Term], coeffs: Sequence[Fraction]) -> List[Terms]:
    n = len(gb.ring)
    poly = {tuple(1 if i == s else 0 for i in range(n)): c for s, c in enumerate(coeffs) if c}
    return [gb.reduce_terms(t_act({t: Fraction(1)}, poly)) for t in basis]


def _witness(gb, basis, vec, f: Polynomial, degrees) -> TorsionWitness:
    terms: Terms = {}
    for i, c in vec.items():
        t_add(terms, {basis[i]: c})
    m = FreeModuleElement(gb.ring, gb.gens, gb.reduce_terms(terms))
    deg = max(m.degrees(degrees)) if m.terms else 0
    return TorsionWitness(m, f, deg)


def linear_torsion_search(pres: ModulePresentation, degree_bound: int, gb: GroebnerBasis | None = None,
                          budget: int = DEFAULT_BUDGET, seed: int = 0) -> TorsionSearchResult:
    """Look for nonzero ``m`` of degree at most ``degree_bound`` and linear ``f`` with ``m.f = 0``.

    Exhaustive for multigraded presentations.  Otherwise each degree is
    settled by single-variable kernels plus the linearised system
    ``sum_s A_s z_s = 0`` (trivial kernel rules out every linear form); a
    degree that neither settles is reported in ``undecided``.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    n = len(pres.ring)
    degrees = pres.degrees
    weights = pres.multigrading()
    if weights is not None:
        gb = gb if gb is not None else buchberger(pres, budget=budget)
        groups: Dict[Tuple[int, Exps], List[Term]] = {}
        for d in range(degree_bound + 1):
            for t in gb.standard_terms(degrees, d):
                groups.setdefault((d, _weight(weights, t)), []).append(t)
        steps = 0
        for (d, w) in sorted(groups, key=lambda k: (k[0], tuple(-x for x in k[1]))):
            basis = groups[(d, w)]
            for s in range(n):
                steps += len(basis)
                if steps > budget:
                    raise BudgetExceeded("torsion search exceeded its budget")
                ker = kernel(_image(gb, basis, s))
                if ker:
                    f = Polynomial.variable(pres.ring, s)
                    return TorsionSearchResult("witness", degree_bound, "multigraded",
                                               _witness(gb, basis, ker[0], f, degrees))
        return TorsionSearchResult("none", degree_bound, "multigraded")

    homogeneous = pres.is_homogeneous()
    if gb is None or (not homogeneous and not isinstance(gb.order, DegreeOverPosition)):
        gb = buchberger(pres, POT if homogeneous else DegreeOverPosition(degrees), budget)
    method = "graded" if homogeneous else "filtered"
    rng = random.Random(seed)
    undecided = []
    for d in range(degree_bound + 1):
        if homogeneous:
            basis = gb.standard_terms(degrees, d)
        else:
            basis = [t for k in range(d + 1) for t in gb.standard_terms(degrees, k)]
        if not basis:
            continue
        images = []
        for s in range(n):
            img = _image(gb, basis, s)
            ker = kernel(img)
            if ker:
                f = Polynomial.variable(pres.ring, s)
                return TorsionSearchResult("witness", degree_bound, method, _witness(gb, basis, ker[0], f, degrees))
            images.append(img)
        # linearised system: unknowns z[i, s] stand for m_i * c_s
        flat = [images[s][i] for s in range(n) for i in range(len(basis))]
        if not kernel(flat):
            continue
        found = None
        for _ in range(4 * n):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            if not any(coeffs):
                continue
            ker = kernel(_linear_image(gb, basis, coeffs))
            if ker:
                f = Polynomial.linear(pres.ring, coeffs)
                found = _witness(gb, basis, ker[0], f, degrees)
                break
        if found is not None:
            return TorsionSearchResult("witness", degree_bound, method, found)
        undecided.append(d)
    return TorsionSearchResult("inconclusive" if undecided else "none", degree_bound, method, undecided=undecided)


# -- saturation ----------------------------------------------------------------

def saturation(gb: GroebnerBasis, f: Polynomial, budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Gröbner basis (position over term) of ``N : f^oo`` for the submodule ``N`` of ``gb``.

    Uses ``(N + (1 - t f) F[t]) ∩ F``, eliminating the extra variable ``t``.
    Cached on the basis object.
    """
    if f.vars != gb.ring:
        raise ValueError("polynomial ring differs from the module's ring")
    cache = gb.__dict__.setdefault("_saturations", {})
    key = frozenset(f.terms.items())
    hit = cache.get(key)
    if hit is not None:
        return hit
    lifted: List[Terms] = [{(g, e + (0,)): c for (g, e), c in el.items()} for el in gb.elements]
    one_minus_tf: Dict[Exps, Fraction] = {gb.ring.one() + (0,): Fraction(1)}
    for e, c in f.terms.items():
        one_minus_tf[e + (1,)] = -c
    n = len(gb.ring)
    for g in range(len(gb.gens)):
        lifted.append({(g, e): c for e, c in one_minus_tf.items()})
    elim = groebner_terms(lifted, EliminateLast(), budget)
    kept = [{(g, e[:n]): c for (g, e), c in el.items()} for el in elim if all(e[n] == 0 for (_, e) in el)]
    out = GroebnerBasis(gb.ring, gb.gens, kept, POT)
    cache[key] = out
    return out


@dataclass(frozen=True)
class AnnihilatorPower:
    nilpotent: bool
    index: Optional[int] = None

    def __str__(self) -> str:
        return f"nilpotent({self.index})" if self.nilpotent else "not_nilpotent"


def stable_annihilator_power(v: FreeModuleElement, f: Polynomial, gb: GroebnerBasis,
                             budget: int = DEFAULT_BUDGET) -> AnnihilatorPower:
    """Least ``k`` with ``v.f^k = 0`` in the quotient, or ``not_nilpotent``.

    Membership of ``v`` in the saturation ``N : f^oo`` decides whether any
    power works; only then are powers iterated.
    """
    cur = gb.normal_form(v)
    if not cur.terms:
        return AnnihilatorPower(True, 0)
    sat = saturation(gb, f, budget)
    if not sat.is_member(cur):
        return AnnihilatorPower(False)
    k = 0
    while cur.terms:
        k += 1
        if k > budget:
            raise BudgetExceeded("annihilator power search exceeded its budget")
        cur = gb.normal_form(cur.times(f))
    return AnnihilatorPower(True, k)


def torsion_free_by_saturation(pres: ModulePresentation, gb: GroebnerBasis | None = None,
                               budget: int = DEFAULT_BUDGET):
    """Decide linear-torsion freeness in all degrees for multigraded presentations.

    Returns ``(True, None)``, ``(False, witness)`` or ``(None, None)`` when the
    presentation is not multigraded.
    """
    if pres.multigrading() is None:
        return None, None
    gb = gb if gb is not None else buchberger(pres, budget=budget)
    for s in range(len(pres.ring)):
        x = Polynomial.variable(pres.ring, s)
        sat = saturation(gb, x, budget)
        for u in sat:
            u = gb.normal_form(u)
            if not u.terms:
                continue
            # u.x^k in N for some k: the last nonzero u.x^j is x-torsion
            prev = u
            cur = gb.normal_form(u.times(x))
            while cur.terms:
                prev, cur = cur, gb.normal_form(cur.times(x))
            deg = max(prev.degrees(pres.degrees))
            return False, TorsionWitness(prev, x, deg)
    return True, None
