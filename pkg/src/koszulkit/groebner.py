"""Buchberger's algorithm for submodules of free modules R^r.

Module terms use position-over-term order with the lower component index
dominant.  Internally a term is a flat tuple ``(-component, *encoded
monomial)`` whose natural tuple order is the module order, so leading terms
are found with plain ``max``.  For grevlex the monomial is encoded as
``(degree, -e_n, ..., -e_1)``; for lex it is the exponent vector itself.
"""

from __future__ import annotations

from functools import lru_cache
from operator import add, ge, le, sub

from .errors import (
    NotFiniteDimensional,
    RankMismatch,
    RingMismatch,
    ShapeMismatch,
    ZeroDivisorArgument,
)
from .matrix import FreeMatrix, FreeVector
from .ring import Poly, PolyRing

__all__ = [
    "FreeVector",
    "ModuleGB",
    "groebner_basis",
    "ideal_quotient",
    "is_zero_dimensional",
    "membership_with_lift",
    "module_groebner",
    "normal_form",
    "quotient_dim",
    "syzygy",
]


class _Engine:
    """Term encoding and monomial arithmetic for one ring."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.n = ring.nvars
        self.p = ring.field.characteristic
        self.grevlex = ring.order == "grevlex"

    def encode(self, comp: int, exp) -> tuple:
        if self.grevlex:
            return (-comp, sum(exp), *(-e for e in reversed(exp)))
        return (-comp, *exp)

    def decode(self, term) -> tuple:
        if self.grevlex:
            return -term[0], tuple(-e for e in reversed(term[2:]))
        return -term[0], tuple(term[1:])

    def degree(self, term) -> int:
        return term[1] if self.grevlex else sum(term[1:])

    def divides(self, s, t) -> bool:
        if s[0] != t[0]:
            return False
        if self.grevlex:
            return all(map(ge, s[2:], t[2:]))
        return all(map(le, s[1:], t[1:]))

    def lcm(self, s, t):
        if self.grevlex:
            neg = tuple(map(min, s[2:], t[2:]))
            return (s[0], -sum(neg), *neg)
        return (s[0], *map(max, s[1:], t[1:]))

    @staticmethod
    def quo(t, s):
        # monomial shift m with m*s = t; component slot becomes 0
        return tuple(map(sub, t, s))

    @staticmethod
    def mul(t, m):
        return tuple(map(add, t, m))

    def vector_to_dict(self, entries, offset=0) -> dict:
        out = {}
        for comp, poly in enumerate(entries):
            for exp, c in poly.items():
                out[self.encode(comp + offset, exp)] = c
        return out

    def dict_to_entries(self, f: dict, rank: int, offset=0) -> list:
        buckets = [dict() for _ in range(rank)]
        for term, c in f.items():
            comp, exp = self.decode(term)
            buckets[comp - offset][exp] = c
        return [Poly._raw(self.ring, b) for b in buckets]

    def monic_items(self, f: dict) -> tuple:
        items = sorted(f.items(), reverse=True)
        lead = items[0][1]
        if lead != 1:
            inv = self.ring.field.inv(lead)
            p = self.p
            items = [(t, c * inv % p if p else c * inv) for t, c in items]
        return items[0][0], tuple(items)


def _reduce(eng: _Engine, f: dict, by_comp: dict, full=True) -> dict:
    """Reduce ``f`` (consumed) modulo monic elements grouped by component.

    With ``full=False`` stops at the first irreducible leading term.
    """
    p = eng.p
    divides, quo, mul = eng.divides, eng.quo, eng.mul
    rem = {}
    while f:
        t = max(f)
        for lt, items in by_comp.get(t[0], ()):
            if divides(lt, t):
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[t] = f.pop(t)
            continue
        c = f[t]
        shift = quo(t, lt)
        for gt, gc in items:
            nt = mul(gt, shift)
            v = f.get(nt, 0) - c * gc
            if p:
                v %= p
            if v:
                f[nt] = v
            else:
                del f[nt]
    return rem


def _group(elems) -> dict:
    by_comp = {}
    for e in elems:
        by_comp.setdefault(e[0][0], []).append(e)
    return by_comp


def _spoly(eng: _Engine, gi, gj) -> dict:
    lti, itemsi = gi
    ltj, itemsj = gj
    L = eng.lcm(lti, ltj)
    si, sj = eng.quo(L, lti), eng.quo(L, ltj)
    p = eng.p
    f = {eng.mul(t, si): c for t, c in itemsi[1:]}
    for t, c in itemsj[1:]:
        nt = eng.mul(t, sj)
        v = f.get(nt, 0) - c
        if p:
            v %= p
        if v:
            f[nt] = v
        else:
            f.pop(nt, None)
    return f


def _update(eng: _Engine, G: list, pairs: dict, lt_k, rank1: bool):
    """Gebauer-Moeller pair update for a new element with leading term ``lt_k``."""
    k = len(G)
    comp = lt_k[0]
    for (i, j), key in list(pairs.items()):
        L = key[1]
        if (
            L[0] == comp
            and eng.divides(lt_k, L)
            and eng.lcm(G[i][0], lt_k) != L
            and eng.lcm(G[j][0], lt_k) != L
        ):
            del pairs[(i, j)]
    classes = {}
    for i, (lt_i, _) in enumerate(G):
        if lt_i[0] == comp:
            classes.setdefault(eng.lcm(lt_i, lt_k), []).append(i)
    kept = []
    for L in sorted(classes):
        if any(eng.divides(M, L) for M in kept):
            continue
        kept.append(L)
        members = classes[L]
        # product criterion only holds for ideals, not for modules
        if rank1 and any(eng.mul(G[i][0], lt_k) == L for i in members):
            continue
        i = min(members)
        pairs[(i, k)] = (eng.degree(L), L, i, k)


def _interreduce(eng: _Engine, G: list) -> list:
    minimal = []
    for elem in sorted(G, key=lambda g: g[0]):
        if not any(eng.divides(m[0], elem[0]) for m in minimal):
            minimal.append(elem)
    out = []
    for idx, (lt, items) in enumerate(minimal):
        others = _group(minimal[:idx] + minimal[idx + 1 :])
        tail = _reduce(eng, dict(items[1:]), others)
        tail[lt] = items[0][1]
        out.append(eng.monic_items(tail))
    out.sort(key=lambda g: g[0], reverse=True)
    return out


def _buchberger(eng: _Engine, vecs, rank1: bool) -> list:
    G, pairs = [], {}
    by_comp = {}

    def insert(f):
        lt, items = eng.monic_items(f)
        _update(eng, G, pairs, lt, rank1)
        G.append((lt, items))
        by_comp.setdefault(lt[0], []).append((lt, items))

    for f in vecs:
        r = _reduce(eng, dict(f), by_comp)
        if r:
            insert(r)
    while pairs:
        i, j = min(pairs, key=pairs.__getitem__)
        del pairs[(i, j)]
        r = _reduce(eng, _spoly(eng, G[i], G[j]), by_comp)
        if r:
            insert(r)
    return _interreduce(eng, G)


@lru_cache(maxsize=None)
def _engine(ring: PolyRing) -> _Engine:
    return _Engine(ring)


class ModuleGB:
    """Reduced Groebner basis of a submodule of ``R^rank``."""

    def __init__(self, ring: PolyRing, rank: int, elems: list):
        self.ring = ring
        self.rank = rank
        self._eng = _engine(ring)
        self._elems = elems
        self._by_comp = _group(elems)
        self.reduced = True

    @property
    def basis(self) -> tuple:
        eng = self._eng
        return tuple(
            FreeVector(self.ring, eng.dict_to_entries(dict(items), self.rank))
            for _, items in self._elems
        )

    def __len__(self):
        return len(self._elems)

    def __eq__(self, other):
        if not isinstance(other, ModuleGB):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rank == other.rank
            and [i for _, i in self._elems] == [i for _, i in other._elems]
        )

    def __hash__(self):
        return hash((self.ring, self.rank, tuple(i for _, i in self._elems)))

    def leading_terms(self) -> list:
        """(component, exponent) of each basis element."""
        return [self._eng.decode(lt) for lt, _ in self._elems]

    def is_zero(self) -> bool:
        return not self._elems

    def normal_form(self, v: FreeVector) -> FreeVector:
        _check_rank(v, self.rank, self.ring)
        eng = self._eng
        rem = _reduce(eng, eng.vector_to_dict(v.entries), self._by_comp)
        return FreeVector(self.ring, eng.dict_to_entries(rem, self.rank))

    def contains(self, v: FreeVector) -> bool:
        _check_rank(v, self.rank, self.ring)
        eng = self._eng
        return not _reduce(eng, eng.vector_to_dict(v.entries), self._by_comp, full=False)

    def contains_module(self, other: ModuleGB) -> bool:
        return all(self.contains(b) for b in other.basis)

    def s_vectors_reduce(self) -> bool:
        """Re-check the Buchberger criterion on every same-component pair."""
        eng = self._eng
        for a in range(len(self._elems)):
            for b in range(a + 1, len(self._elems)):
                if self._elems[a][0][0] != self._elems[b][0][0]:
                    continue
                s = _spoly(eng, self._elems[a], self._elems[b])
                if _reduce(eng, s, self._by_comp):
                    return False
        return True

    def standard_monomial_count(self) -> float:
        """dim_k of R^rank / module; ``math.inf`` if infinite."""
        n = self._eng.n
        total = 0
        leads = {}
        for comp, exp in self.leading_terms():
            leads.setdefault(comp, []).append(exp)
        for comp in range(self.rank):
            mons = leads.get(comp, [])
            total += _count_standard(mons, n)
            if total == float("inf"):
                break
        return total

    def standard_monomials(self, comp: int) -> list:
        mons = [e for c, e in self.leading_terms() if c == comp]
        if _count_standard(mons, self._eng.n) == float("inf"):
            raise NotFiniteDimensional("infinitely many standard monomials")
        return _enumerate_standard(mons, self._eng.n)


def _has_pure_powers(mons, n) -> bool:
    for i in range(n):
        if not any(all(e == 0 for j, e in enumerate(m) if j != i) for m in mons):
            return False
    return True


def _enumerate_standard(mons, n) -> list:
    def divisible(x):
        return any(all(a <= b for a, b in zip(m, x)) for m in mons)

    start = (0,) * n
    if divisible(start):
        return []
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for i in range(n):
            y = x[:i] + (x[i] + 1,) + x[i + 1 :]
            if y not in seen and not divisible(y):
                seen.add(y)
                stack.append(y)
    return sorted(seen)


def _count_standard(mons, n) -> float:
    if not _has_pure_powers(mons, n):
        return float("inf")
    return len(_enumerate_standard(mons, n))


def _check_rank(v, rank, ring):
    if v.rank != rank:
        raise RankMismatch(f"vector of rank {v.rank}, expected {rank}")
    if v.ring != ring:
        raise RingMismatch(f"{v.ring} vs {ring}")


def _as_vectors(gens, ring=None, rank=None):
    vecs = []
    for g in gens:
        if isinstance(g, Poly):
            g = FreeVector(g.ring, [g])
        vecs.append(g)
    if vecs:
        ring = ring or vecs[0].ring
        rank = vecs[0].rank if rank is None else rank
    for v in vecs:
        if v.rank != rank:
            raise RankMismatch(f"generator of rank {v.rank}, expected {rank}")
        if v.ring != ring:
            raise RingMismatch(f"{v.ring} vs {ring}")
    return tuple(vecs), ring, rank


@lru_cache(maxsize=4096)
def _module_gb_cached(ring, rank, vecs) -> ModuleGB:
    eng = _engine(ring)
    dicts = [eng.vector_to_dict(v.entries) for v in vecs]
    return ModuleGB(ring, rank, _buchberger(eng, dicts, rank == 1))


def module_groebner(gens, ring: PolyRing | None = None, rank: int | None = None) -> ModuleGB:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``ring``/``rank`` are needed only when ``gens`` is empty.
    """
    vecs, ring, rank = _as_vectors(gens, ring, rank)
    if ring is None or rank is None:
        raise RankMismatch("ring and rank are required for an empty generator list")
    return _module_gb_cached(ring, rank, vecs)


def groebner_basis(polys, ring: PolyRing | None = None) -> list:
    """Reduced Groebner basis of an ideal, as a list of polynomials."""
    gb = module_groebner(polys, ring, 1)
    return [v[0] for v in gb.basis]


def normal_form(v, gb: ModuleGB):
    """Canonical remainder of ``v`` modulo ``gb`` (a Poly in, a Poly out for ideals)."""
    if isinstance(v, Poly):
        return gb.normal_form(FreeVector(v.ring, [v]))[0]
    return gb.normal_form(v)


class Lifter:
    """Groebner basis of the graph module {(sum c_j g_j, c)} for lifting and syzygies.

    Generator coordinates live in components ``rank .. rank+k-1``, below the
    ambient components, so position-over-term order eliminates the ambient part.
    """

    def __init__(self, ring: PolyRing, rank: int, gens: tuple):
        self.ring, self.rank, self.gens = ring, rank, gens
        self.k = len(gens)
        eng = self._eng = _engine(ring)
        one = ring.field.convert(1)
        zero_exp = (0,) * ring.nvars
        dicts = []
        for j, g in enumerate(gens):
            d = eng.vector_to_dict(g.entries)
            d[eng.encode(rank + j, zero_exp)] = one
            dicts.append(d)
        self._elems = _buchberger(eng, dicts, False)
        self._by_comp = _group(self._elems)

    def lift(self, v: FreeVector):
        """Coordinates c with sum c_j g_j = v, or None when v is not in the span."""
        _check_rank(v, self.rank, self.ring)
        eng = self._eng
        f = eng.vector_to_dict(v.entries)
        boundary = -self.rank  # terms with t[0] <= boundary are coordinate terms
        p = eng.p
        while f:
            t = max(f)
            if t[0] <= boundary:
                break
            for lt, items in self._by_comp.get(t[0], ()):
                if eng.divides(lt, t):
                    break
            else:
                return None
            c = f[t]
            shift = eng.quo(t, lt)
            for gt, gc in items:
                nt = eng.mul(gt, shift)
                w = f.get(nt, 0) - c * gc
                if p:
                    w %= p
                if w:
                    f[nt] = w
                else:
                    del f[nt]
        coords = eng.dict_to_entries(f, self.k, offset=self.rank)
        return [-c for c in coords]

    def syzygies(self) -> list:
        """Generators (a Groebner basis) of the relations among ``gens``."""
        eng = self._eng
        out = []
        for lt, items in self._elems:
            if lt[0] <= -self.rank:
                out.append(FreeVector(self.ring, eng.dict_to_entries(dict(items), self.k, self.rank)))
        return out


@lru_cache(maxsize=4096)
def lifter(ring: PolyRing, rank: int, gens: tuple) -> Lifter:
    return Lifter(ring, rank, gens)


def membership_with_lift(v, gens, ring: PolyRing | None = None):
    """Coordinates expressing ``v`` in the generators, or None if ``v`` is outside their span."""
    if isinstance(v, Poly):
        v = FreeVector(v.ring, [v])
    vecs, ring, _ = _as_vectors(gens, v.ring, v.rank)
    coords = lifter(ring, v.rank, vecs).lift(v)
    if coords is None:
        return None
    check = FreeVector.zero(ring, v.rank)
    for c, g in zip(coords, vecs):
        check = check + g.scale(c)
    assert check == v, "lift failed exact re-expansion"
    return coords


def syzygy(m: FreeMatrix) -> FreeMatrix:
    """Matrix whose columns generate the kernel of ``m`` acting on columns."""
    if not isinstance(m, FreeMatrix):
        raise ShapeMismatch("syzygy expects a FreeMatrix")
    cols = tuple(m.columns())
    if not cols:
        return FreeMatrix.zero(m.ring, 0, 0)
    syz = lifter(m.ring, m.rows, cols).syzygies()
    return FreeMatrix.from_columns(m.ring, m.cols, syz)


def ideal_quotient(I, f: Poly) -> list:
    """Reduced Groebner basis of (I : f) = {g : f g in I}."""
    if f.is_zero():
        raise ZeroDivisorArgument("cannot take the quotient by 0")
    ring = f.ring
    gens = [f] + [ring(g) for g in I]
    row = FreeMatrix(ring, [gens])
    syz = syzygy(row)
    firsts = [c[0] for c in syz.columns()]
    return groebner_basis(firsts, ring)


def is_zero_dimensional(I, ring: PolyRing | None = None) -> bool:
    """Whether R/I is finite dimensional over the field."""
    polys = list(I)
    ring = ring or (polys[0].ring if polys else None)
    if ring is None:
        raise ValueError("ring required for an empty ideal")
    gb = module_groebner(polys, ring, 1)
    mons = [e for _, e in gb.leading_terms()]
    if any(not any(m) for m in mons):
        return True
    return _has_pure_powers(mons, ring.nvars)


def quotient_dim(I, ring: PolyRing | None = None) -> int:
    """dim_k R/I for a zero-dimensional ideal."""
    polys = list(I)
    ring = ring or (polys[0].ring if polys else None)
    if ring is None:
        raise ValueError("ring required for an empty ideal")
    gb = module_groebner(polys, ring, 1)
    count = gb.standard_monomial_count()
    if count == float("inf"):
        raise NotFiniteDimensional("R/I is not finite dimensional")
    return int(count)
