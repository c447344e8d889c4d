"""Independent oracles: the tensor algebra model of free Lie words and
plain monomial enumeration.  Nothing here uses the Gröbner engine."""

from fractions import Fraction
from itertools import product

from metalie.linalg import Echelon


def tensor_bracket(u, v):
    """Commutator ``uv - vu`` of tensor-algebra elements ``{word tuple: coeff}``."""
    out = {}
    for a, ca in u.items():
        for b, cb in v.items():
            for w, c in ((a + b, ca * cb), (b + a, -ca * cb)):
                s = out.get(w, 0) + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return out


def tensor_word(letters):
    """Left-normed word as a tensor-algebra element."""
    acc = {(letters[0],): Fraction(1)}
    for a in letters[1:]:
        acc = tensor_bracket(acc, {(a,): Fraction(1)})
    return acc


def left_normed_commutators(n, d):
    return [tensor_word(w) for w in product(range(n), repeat=d)]


def second_derived_span(n, d):
    """Span of ``[[P, Q]]`` in degree ``d``: the degree-``d`` part of the second
    derived ideal of the free Lie algebra, valid for ``d <= 5``."""
    assert d <= 5
    ech = Echelon()
    for dp in range(2, d - 1):
        dq = d - dp
        for p in left_normed_commutators(n, dp):
            for q in left_normed_commutators(n, dq):
                ech.add(tensor_bracket(p, q))
    return ech


def mixed_monomial_count(nx, ny, d):
    """Monomials of degree ``d`` in ``nx + ny`` variables using both alphabets."""
    count = 0
    for e in product(range(d + 1), repeat=nx + ny):
        if sum(e) == d and any(e[:nx]) and any(e[nx:]):
            count += 1
    return count
