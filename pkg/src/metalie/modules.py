"""Finitely presented modules over a polynomial ring.

A free module element is a sparse map ``(generator index, exponents) -> Fraction``.
Gröbner bases of submodules are computed by Buchberger's algorithm with the
normal selection strategy and the chain criterion.  The default module order
is position over term: an earlier declared generator is larger, ties are
broken by the deglex order of the ring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .poly import (
    Exps,
    Polynomial,
    VariableSet,
    edivides,
    elcm,
    ediv,
    emul,
    format_exps,
    format_scalar,
    monomials_of_degree,
)

Term = Tuple[int, Exps]
Terms = Dict[Term, Fraction]

DEFAULT_BUDGET = 50_000


class BudgetExceeded(RuntimeError):
    """A computation ran past its configured step budget."""


class GeneratorMismatch(ValueError):
    pass


class InhomogeneousPresentation(ValueError):
    pass


# -- raw term-dict helpers -------------------------------------------------

def t_add(acc: Terms, other: Mapping[Term, Fraction], c: Fraction = Fraction(1)) -> None:
    for t, v in other.items():
        s = acc.get(t, 0) + c * v
        if s:
            acc[t] = s
        else:
            acc.pop(t, None)


def t_shift(terms: Mapping[Term, Fraction], e: Exps, c: Fraction = Fraction(1)) -> Terms:
    return {(g, emul(m, e)): c * v for (g, m), v in terms.items()}


def t_act(terms: Mapping[Term, Fraction], poly: Mapping[Exps, Fraction]) -> Terms:
    out: Terms = {}
    for e, c in poly.items():
        t_add(out, t_shift(terms, e), c)
    return out


# -- module orders -----------------------------------------------------------

class ModuleOrder:
    """A monomial order on ``(generator, exponents)`` pairs given by a sort key."""

    name = "abstract"

    def __init__(self):
        self._cache: Dict[Term, tuple] = {}

    def _key(self, t: Term) -> tuple:  # pragma: no cover - abstract
        raise NotImplementedError

    def key(self, t: Term) -> tuple:
        k = self._cache.get(t)
        if k is None:
            k = self._cache[t] = self._key(t)
        return k

    def leading(self, terms: Mapping[Term, Fraction]) -> Term:
        return max(terms, key=self.key)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self), self._ident()))

    def _ident(self):
        return ()


class PositionOverTerm(ModuleOrder):
    name = "pot"

    def _key(self, t):
        g, e = t
        return (-g, sum(e), e)


class DegreeOverPosition(ModuleOrder):
    """Total degree (generator degree plus monomial degree) first, then POT."""

    name = "degpot"

    def __init__(self, degrees: Sequence[int]):
        super().__init__()
        self.degrees = tuple(degrees)

    def _ident(self):
        return self.degrees

    def _key(self, t):
        g, e = t
        d = sum(e)
        return (self.degrees[g] + d, -g, d, e)


class EliminateLast(ModuleOrder):
    """Eliminates the last ring variable: its exponent is compared first."""

    name = "elim"

    def _key(self, t):
        g, e = t
        rest = e[:-1]
        return (e[-1], -g, sum(rest), rest)


POT = PositionOverTerm()


# -- public element and presentation types ---------------------------------

class FreeModuleElement:
    """Element of a free module ``R^gens``; immutable by convention."""

    __slots__ = ("ring", "gens", "terms", "_hash")

    def __init__(self, ring: VariableSet, gens: Sequence[str], terms: Mapping[Term, Fraction] | None = None):
        self.ring = ring
        self.gens = tuple(gens)
        clean: Terms = {}
        if terms:
            t_add(clean, {(g, tuple(e)): Fraction(c) for (g, e), c in terms.items()})
        self.terms = clean
        self._hash = None

    @classmethod
    def basis(cls, ring: VariableSet, gens: Sequence[str], g: int | str, poly: Polynomial | None = None):
        gi = gens.index(g) if isinstance(g, str) else g
        if poly is None:
            return cls(ring, gens, {(gi, ring.one()): Fraction(1)})
        return cls(ring, gens, {(gi, e): c for e, c in poly.terms.items()})

    def _same(self, other: "FreeModuleElement") -> None:
        if self.gens != other.gens or self.ring != other.ring:
            raise GeneratorMismatch("module elements live in different free modules")

    def with_terms(self, terms: Mapping[Term, Fraction]) -> "FreeModuleElement":
        return FreeModuleElement(self.ring, self.gens, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._same(other)
        out = dict(self.terms)
        t_add(out, other.terms)
        return self.with_terms(out)

    def __sub__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._same(other)
        out = dict(self.terms)
        t_add(out, other.terms, Fraction(-1))
        return self.with_terms(out)

    def __neg__(self) -> "FreeModuleElement":
        return self.with_terms({t: -c for t, c in self.terms.items()})

    def scale(self, c) -> "FreeModuleElement":
        c = Fraction(c)
        return self.with_terms({t: c * v for t, v in self.terms.items()} if c else {})

    def __rmul__(self, c) -> "FreeModuleElement":
        return self.scale(c)

    def times(self, p: Polynomial) -> "FreeModuleElement":
        """Scalar-extension action by a ring element (no reduction)."""
        if p.vars != self.ring:
            raise GeneratorMismatch("polynomial ring differs from the module's ring")
        return self.with_terms(t_act(self.terms, p.terms))

    def coordinates(self) -> Dict[int, Polynomial]:
        out: Dict[int, Dict[Exps, Fraction]] = {}
        for (g, e), c in self.terms.items():
            out.setdefault(g, {})[e] = c
        return {g: Polynomial(self.ring, d) for g, d in out.items()}

    def degrees(self, gen_degrees: Sequence[int]) -> set:
        return {gen_degrees[g] + sum(e) for g, e in self.terms}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.gens == other.gens and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self, order: ModuleOrder = POT):
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def __str__(self) -> str:
        return format_module_terms(self.sorted_terms(), self.gens, self.ring)

    def __repr__(self) -> str:
        return f"FreeModuleElement({str(self)!r})"


def format_module_terms(items, gens: Sequence[str], ring: VariableSet) -> str:
    out = []
    for (g, e), c in items:
        body = gens[g]
        mono = format_exps(e, ring)
        if mono:
            body = f"{body}*{mono}"
        a = -c if c < 0 else c
        text = body if a == 1 else f"{format_scalar(a)}*{body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out) if out else "0"


@dataclass(frozen=True)
class ModulePresentation:
    """``<gens | relations>`` over the polynomial ring on ``ring``."""

    ring: VariableSet
    gens: Tuple[str, ...]
    relations: Tuple[FreeModuleElement, ...] = ()
    degrees: Optional[Tuple[int, ...]] = None
    name: str = "M"

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("duplicate module generator names")
        if self.degrees is None:
            object.__setattr__(self, "degrees", (1,) * len(self.gens))
        else:
            object.__setattr__(self, "degrees", tuple(self.degrees))
            if len(self.degrees) != len(self.gens) or any(d < 0 for d in self.degrees):
                raise ValueError("generator degrees must be nonnegative, one per generator")
        for r in self.relations:
            if r.gens != self.gens or r.ring != self.ring:
                raise GeneratorMismatch("relation references undeclared generators")

    def element(self, terms: Mapping[Term, Fraction] | None = None) -> FreeModuleElement:
        return FreeModuleElement(self.ring, self.gens, terms)

    def gen(self, g: int | str, poly: Polynomial | None = None) -> FreeModuleElement:
        return FreeModuleElement.basis(self.ring, self.gens, g, poly)

    def with_relations(self, extra: Iterable[FreeModuleElement]) -> "ModulePresentation":
        return ModulePresentation(self.ring, self.gens, self.relations + tuple(extra), self.degrees, self.name)

    def is_homogeneous(self) -> bool:
        return all(len(r.degrees(self.degrees)) <= 1 for r in self.relations)

    def multigrading(self) -> Optional[Tuple[Exps, ...]]:
        """Generator weights in Z^n making every relation multihomogeneous, if any.

        Weights are found by propagating offsets between generators that
        share a relation; unconstrained components are pinned to zero.
        """
        return infer_multigrading(self.gens, self.relations, len(self.ring))


def infer_multigrading(gens: Sequence[str], relations: Iterable[FreeModuleElement], n: int):
    parent = list(range(len(gens)))
    offset: List[Exps] = [(0,) * n for _ in gens]  # weight(g) = weight(root) + offset[g]

    def find(g):
        if parent[g] == g:
            return g, (0,) * n
        root, off = find(parent[g])
        parent[g] = root
        offset[g] = emul(offset[g], off)
        return root, offset[g]

    for r in relations:
        items = list(r.terms)
        if not items:
            continue
        g0, e0 = items[0]
        for g, e in items[1:]:
            # weight(g0) + e0 == weight(g) + e
            r0, o0 = find(g0)
            r1, o1 = find(g)
            need = ediv(emul(o0, e0), emul(o1, e))  # weight(r1) - weight(r0)
            if r0 == r1:
                if any(need):
                    return None
            else:
                parent[r1] = r0
                offset[r1] = need
    weights = []
    for g in range(len(gens)):
        _, off = find(g)
        weights.append(off)
    return tuple(weights)


# -- Gröbner bases -----------------------------------------------------------

class _Reducer:
    """Lead-term index of a list of monic module elements."""

    def __init__(self, order: ModuleOrder):
        self.order = order
        self.by_gen: Dict[int, List[Tuple[Exps, Terms]]] = {}

    def add(self, elem: Terms) -> None:
        g, e = self.order.leading(elem)
        self.by_gen.setdefault(g, []).append((e, elem))

    def find(self, t: Term, rng: random.Random | None = None):
        g, e = t
        cands = self.by_gen.get(g)
        if not cands:
            return None
        if rng is None:
            for le, elem in cands:
                if edivides(le, e):
                    return le, elem
            return None
        hits = [(le, elem) for le, elem in cands if edivides(le, e)]
        return rng.choice(hits) if hits else None

    def reduce(self, p: Mapping[Term, Fraction], full: bool = True, rng: random.Random | None = None,
               counter: List[int] | None = None, budget: int | None = None) -> Terms:
        if rng is not None:
            return self._reduce_random(p, rng)
        key = self.order.key
        p = dict(p)
        out: Terms = {}
        while p:
            t = max(p, key=key)
            hit = self.find(t, rng)
            if hit is None:
                if not full:
                    out.update(p)
                    return out
                out[t] = p.pop(t)
                continue
            le, elem = hit
            c = p[t]
            # elem is monic
            t_add(p, t_shift(elem, ediv(t[1], le)), -c)
            if counter is not None:
                counter[0] += 1
                if budget is not None and counter[0] > budget:
                    raise BudgetExceeded(f"normal form exceeded {budget} reduction steps")
        return out

    def _reduce_random(self, p: Mapping[Term, Fraction], rng: random.Random) -> Terms:
        # any reducible term, any applicable reducer: terminates because each
        # step replaces a term by strictly smaller ones
        p = dict(p)
        while True:
            reducible = sorted((t for t in p if self.find(t) is not None), key=self.order.key)
            if not reducible:
                return p
            t = rng.choice(reducible)
            le, elem = self.find(t, rng)
            t_add(p, t_shift(elem, ediv(t[1], le)), -p[t])


def _monic(p: Terms, order: ModuleOrder) -> Terms:
    c = p[order.leading(p)]
    return {t: v / c for t, v in p.items()} if c != 1 else p


class GroebnerBasis:
    """Reduced Gröbner basis of a submodule; immutable after construction."""

    def __init__(self, ring: VariableSet, gens: Sequence[str], elements: Sequence[Terms], order: ModuleOrder):
        self.ring = ring
        self.gens = tuple(gens)
        self.order = order
        self.elements: Tuple[Terms, ...] = tuple(elements)
        self._reducer = _Reducer(order)
        for el in self.elements:
            self._reducer.add(el)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        for el in self.elements:
            yield FreeModuleElement(self.ring, self.gens, el)

    def lead_terms(self) -> List[Term]:
        return [self.order.leading(el) for el in self.elements]

    def _check(self, v: FreeModuleElement) -> None:
        if v.gens != self.gens or v.ring != self.ring:
            raise GeneratorMismatch("element does not live in this basis' free module")

    def reduce_terms(self, terms: Mapping[Term, Fraction], rng: random.Random | None = None) -> Terms:
        return self._reducer.reduce(terms, full=True, rng=rng)

    def normal_form(self, v: FreeModuleElement, rng: random.Random | None = None) -> FreeModuleElement:
        """Fully reduced representative; ``rng`` randomizes reducer choice."""
        self._check(v)
        return FreeModuleElement(self.ring, self.gens, self.reduce_terms(v.terms, rng))

    def is_member(self, v: FreeModuleElement) -> bool:
        return not self.normal_form(v).terms

    def is_standard(self, t: Term) -> bool:
        return self._reducer.find(t) is None

    def standard_terms(self, degrees: Sequence[int], degree: int) -> List[Term]:
        """Standard (gen, monomial) pairs of exact total degree, in descending order."""
        out = []
        n = len(self.ring)
        for g in range(len(self.gens)):
            k = degree - degrees[g]
            for e in monomials_of_degree(n, k):
                if self.is_standard((g, e)):
                    out.append((g, e))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.gens == other.gens and self.ring == other.ring and self.order == other.order
                and set(map(_freeze, self.elements)) == set(map(_freeze, other.elements)))

    def __hash__(self):
        return hash((self.gens, frozenset(map(_freeze, self.elements))))

    def __str__(self) -> str:
        return "\n".join(str(el) for el in self)


def _freeze(p: Terms):
    return frozenset(p.items())


def buchberger(pres: ModulePresentation, order: ModuleOrder | None = None,
               budget: int = DEFAULT_BUDGET, extra: Iterable[Terms] = ()) -> GroebnerBasis:
    """Reduced Gröbner basis of the relation submodule of ``pres``.

    ``budget`` bounds the number of reduction steps; exceeding it raises
    :class:`BudgetExceeded`.
    """
    order = order or POT
    gens = [dict(r.terms) for r in pres.relations] + [dict(t) for t in extra]
    return GroebnerBasis(pres.ring, pres.gens, groebner_terms(gens, order, budget), order)


def groebner_terms(generators: Iterable[Terms], order: ModuleOrder, budget: int = DEFAULT_BUDGET) -> List[Terms]:
    key = order.key
    counter = [0]
    basis: List[Terms] = []
    leads: List[Term] = []
    red = _Reducer(order)
    pairs: set = set()

    def insert(p: Terms) -> None:
        p = _monic(p, order)
        lt = order.leading(p)
        i = len(basis)
        for j, lj in enumerate(leads):
            if lj[0] == lt[0]:
                pairs.add((j, i))
        basis.append(p)
        leads.append(lt)
        red.add(p)

    # seed with inter-reduced input so duplicates never enter
    seeds = sorted((dict(g) for g in generators if g), key=lambda p: key(order.leading(p)))
    for s in seeds:
        r = red.reduce(s, full=False, counter=counter, budget=budget)
        if r:
            insert(r)

    def lcm_of(pair):
        i, j = pair
        return (leads[i][0], elcm(leads[i][1], leads[j][1]))

    done: set = set()
    while pairs:
        pair = min(pairs, key=lambda pr: (key(lcm_of(pr)), pr))
        pairs.discard(pair)
        i, j = pair
        g, lcm = lcm_of(pair)
        done.add(pair)
        if _chain_skip(i, j, g, lcm, leads, pairs):
            continue
        s = t_shift(basis[i], ediv(lcm, leads[i][1]))
        t_add(s, t_shift(basis[j], ediv(lcm, leads[j][1])), Fraction(-1))
        r = red.reduce(s, full=False, counter=counter, budget=budget)
        if r:
            insert(r)
    return _interreduce(basis, order, counter, budget)


def _chain_skip(i, j, g, lcm, leads, pending) -> bool:
    for k, (gk, ek) in enumerate(leads):
        if k in (i, j) or gk != g:
            continue
        if not edivides(ek, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _interreduce(basis: List[Terms], order: ModuleOrder, counter, budget) -> List[Terms]:
    leads = [order.leading(p) for p in basis]
    keep = []
    for i, (g, e) in enumerate(leads):
        redundant = False
        for j, (h, f) in enumerate(leads):
            if j == i or h != g or not edivides(f, e):
                continue
            if f != e or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(basis[i])
    out = []
    for i, p in enumerate(keep):
        red = _Reducer(order)
        for j, q in enumerate(keep):
            if j != i:
                red.add(q)
        lt = order.leading(p)
        rest = {t: c for t, c in p.items() if t != lt}
        tail = red.reduce(rest, full=True, counter=counter, budget=budget)
        tail[lt] = p[lt]
        out.append(_monic(tail, order))
    out.sort(key=lambda p: order.key(order.leading(p)), reverse=True)
    return out


def groebner(pres: ModulePresentation, order: ModuleOrder | None = None, budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    return buchberger(pres, order, budget)


# -- queries -----------------------------------------------------------------

def normal_form(v: FreeModuleElement, gb: GroebnerBasis) -> FreeModuleElement:
    return gb.normal_form(v)


def is_member(v: FreeModuleElement, gb: GroebnerBasis) -> bool:
    return gb.is_member(v)


def submodule_equal(gb1: GroebnerBasis, gb2: GroebnerBasis) -> bool:
    if gb1.gens != gb2.gens or gb1.ring != gb2.ring:
        raise GeneratorMismatch("bases live in different free modules")
    return all(gb2.is_member(v) for v in gb1) and all(gb1.is_member(v) for v in gb2)


def act(v: FreeModuleElement, p: Polynomial, gb: GroebnerBasis) -> FreeModuleElement:
    """Module action ``v . p`` followed by reduction to normal form."""
    if p.vars != v.ring:
        raise GeneratorMismatch("polynomial ring differs from the module's ring")
    return gb.normal_form(v.times(p))


@dataclass
class GradedDimensionReport:
    dims: Dict[int, int]
    filtered: bool = False
    name: str = "M"

    def __getitem__(self, d: int) -> int:
        return self.dims[d]

    def lines(self) -> List[str]:
        kind = "filtered" if self.filtered else "graded"
        return [f"{self.name}.{kind}.dim[{d}]={n}" for d, n in sorted(self.dims.items())]


def graded_dimension(pres: ModulePresentation, up_to: int, filtered: bool = False,
                     gb: GroebnerBasis | None = None, budget: int = DEFAULT_BUDGET) -> GradedDimensionReport:
    """Dimensions of the graded pieces of the quotient up to degree ``up_to``.

    For inhomogeneous relations pass ``filtered=True``: the counts are then
    those of the associated graded module for the degree filtration,
    obtained from a Gröbner basis in a degree-compatible order.
    """
    degrees = pres.degrees
    if filtered:
        if gb is None or not isinstance(gb.order, DegreeOverPosition):
            gb = buchberger(pres, DegreeOverPosition(degrees), budget)
    else:
        if not pres.is_homogeneous():
            raise InhomogeneousPresentation("relations are not homogeneous; use filtered=True")
        if gb is None:
            gb = buchberger(pres, budget=budget)
    dims = {d: len(gb.standard_terms(degrees, d)) for d in range(0, up_to + 1)}
    return GradedDimensionReport(dims, filtered, pres.name)
