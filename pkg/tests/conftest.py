"""Shared fixtures and independent oracles.

The oracles deliberately avoid the Groebner engine: membership of homogeneous
elements is decided by plain linear algebra on a Macaulay matrix, and generic
ranks by evaluating at random rational points.
"""

import itertools
import random
from fractions import Fraction

import pytest

from koszulkit import FreeVector, PolyRing, SubquotientModule

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def Rxy():
    return PolyRing(("x", "y"))


@pytest.fixture
def Rxyz():
    return PolyRing(("x", "y", "z"))


@pytest.fixture
def R4():
    return PolyRing(("x", "y", "z", "w"))


# exact linear algebra over Fraction


def fraction_rank(rows):
    rows = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def monomials_of_degree(n, d):
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _vector_terms(vec):
    """{(component, exponent): Fraction} for a vector given as a sequence of Poly."""
    out = {}
    for comp, p in enumerate(vec):
        for e, c in p.items():
            out[(comp, e)] = Fraction(int(c.numerator), int(c.denominator))
    return out


def in_span_homogeneous(target, gens):
    """Membership of a homogeneous vector in the module spanned by homogeneous vectors.

    Vectors are sequences of Poly; every entry of a vector must share one
    degree (or be zero).  Decided in the single degree of ``target``.
    """
    tterms = _vector_terms(target)
    if not tterms:
        return True
    deg = {sum(e) for _, e in tterms}
    assert len(deg) == 1, "target must be homogeneous"
    d = deg.pop()
    n = target[0].ring.nvars
    columns = []
    for g in gens:
        gterms = _vector_terms(g)
        if not gterms:
            continue
        gd = {sum(e) for _, e in gterms}
        assert len(gd) == 1, "generators must be homogeneous"
        gd = gd.pop()
        if gd > d:
            continue
        for m in monomials_of_degree(n, d - gd):
            columns.append({(c, tuple(a + b for a, b in zip(e, m))): v for (c, e), v in gterms.items()})
    keys = sorted(set(tterms).union(*columns) if columns else set(tterms))
    base = [[col.get(k, 0) for k in keys] for col in columns]
    with_target = base + [[tterms.get(k, 0) for k in keys]]
    return fraction_rank(with_target) == fraction_rank(base) if base else False


def evaluation_rank(matrix, trials=4, seed=0):
    """max over random rational points of the rank of the evaluated matrix."""
    rng = random.Random(seed)
    n = matrix.ring.nvars
    best = 0
    for _ in range(trials):
        point = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]
        rows = [[_eval(e, point) for e in row] for row in matrix.entries]
        if rows and rows[0]:
            best = max(best, fraction_rank(rows))
    return best


def _eval(p, point):
    total = Fraction(0)
    for e, c in p.items():
        v = Fraction(int(c.numerator), int(c.denominator))
        for x, k in zip(point, e):
            v *= x**k
        total += v
    return total


# random instance generators shared by the property and acceptance suites


def random_monomial(rng, ring, max_deg=2):
    exp = [0] * ring.nvars
    for _ in range(rng.randint(1, max_deg)):
        exp[rng.randrange(ring.nvars)] += 1
    return ring.monomial(tuple(exp))


def random_small_vector(rng, ring, rank, max_deg=1):
    entries = []
    for _ in range(rank):
        if rng.random() < 0.4:
            entries.append(ring.zero)
        else:
            entries.append(random_monomial(rng, ring, max_deg) * rng.choice([1, -1, 2]))
    return FreeVector(ring, entries)


def random_lemma_instance(rng, ring):
    """(M, P, Q): M a subquotient of R^r, P and Q generated by elements of M."""
    r = rng.randint(1, 2)
    if rng.random() < 0.5:
        gens = [FreeVector.basis(ring, r, i) for i in range(r)]
    else:
        gens = [random_small_vector(rng, ring, r) for _ in range(rng.randint(1, 2))]
        gens = [g for g in gens if not g.is_zero()] or [FreeVector.basis(ring, r, 0)]
    rels = []
    if rng.random() < 0.5:
        g = rng.choice(gens)
        rels.append(g.scale(random_monomial(rng, ring, 2)))
    M = SubquotientModule(ring, r, tuple(gens), tuple(rels))

    def element():
        v = FreeVector.zero(ring, r)
        for g in gens:
            if rng.random() < 0.7:
                v = v + g.scale(random_monomial(rng, ring, 2) * rng.choice([1, -1]))
        return v

    P = SubquotientModule(ring, r, tuple(element() for _ in range(rng.randint(1, 2))))
    Q = SubquotientModule(ring, r, tuple(element() for _ in range(rng.randint(1, 2))))
    return M, P, Q
