"""Subquotient modules U/V inside a free ambient, and maps between them.

A :class:`SubquotientModule` stores generators ``U`` and relations ``V`` as
vectors of ``R^ambient_rank`` with ``<V> <= <U>``.  Elements are represented
by ambient vectors lying in ``<U>``.  A :class:`ModuleMap` records, column by
column, the image of each source generator in the target's ambient.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import (
    AmbientMismatch,
    HasRelations,
    IllFormed,
    IllFormedMap,
    LengthNotLocal,
    NotContained,
    RingMismatch,
    TargetMismatch,
)
from .groebner import lifter, module_groebner, syzygy
from .matrix import FreeMatrix, FreeVector
from .ring import Poly, PolyRing

INFINITE = math.inf


@dataclass(frozen=True, eq=False)
class SubquotientModule:
    ring: PolyRing
    ambient_rank: int
    gens: tuple = ()
    rels: tuple = ()

    def __post_init__(self):
        gens = tuple(_vec(self.ring, g) for g in self.gens)
        rels = tuple(_vec(self.ring, r) for r in self.rels)
        for v in gens + rels:
            if v.rank != self.ambient_rank:
                raise AmbientMismatch(f"vector of rank {v.rank} in ambient R^{self.ambient_rank}")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "rels", rels)

    # constructors
    @classmethod
    def free(cls, ring: PolyRing, rank: int) -> SubquotientModule:
        return cls(ring, rank, tuple(FreeVector.basis(ring, rank, i) for i in range(rank)))

    @classmethod
    def zero(cls, ring: PolyRing, rank: int = 0) -> SubquotientModule:
        return cls(ring, rank)

    @classmethod
    def cyclic(cls, ring: PolyRing, ideal) -> SubquotientModule:
        """R/I on the generator 1."""
        return cls(ring, 1, (FreeVector(ring, [ring.one]),), tuple(FreeVector(ring, [ring(f)]) for f in ideal))

    @property
    def has_relations(self) -> bool:
        return bool(self.rels)

    @cached_property
    def gens_gb(self):
        return module_groebner(self.gens, self.ring, self.ambient_rank)

    @cached_property
    def rels_gb(self):
        return module_groebner(self.rels, self.ring, self.ambient_rank)

    @cached_property
    def lifter(self):
        return lifter(self.ring, self.ambient_rank, self.gens)

    def lift(self, v: FreeVector):
        """Coordinates of ``v`` on the generators, or None if ``v`` is outside ``<U>``."""
        return self.lifter.lift(v)

    def combine(self, coords) -> FreeVector:
        out = FreeVector.zero(self.ring, self.ambient_rank)
        for c, g in zip(coords, self.gens):
            if not c.is_zero():
                out = out + g.scale(c)
        return out

    def is_well_formed(self) -> bool:
        return all(self.gens_gb.contains(r) for r in self.rels)

    def is_zero(self) -> bool:
        return all(self.rels_gb.contains(g) for g in self.gens)

    def contains(self, v: FreeVector) -> bool:
        """Whether an ambient vector lies in ``<U>``."""
        return self.gens_gb.contains(v)

    def is_zero_element(self, v: FreeVector) -> bool:
        return self.rels_gb.contains(v)

    @cached_property
    def presentation(self) -> FreeMatrix:
        return _presentation(self)

    def generic_rank(self) -> int:
        return _gen_matrix(self.ring, self.ambient_rank, self.gens).generic_rank() - _gen_matrix(
            self.ring, self.ambient_rank, self.rels
        ).generic_rank()

    def describe(self) -> list:
        """Lines listing the reduced Groebner bases of ``<U>`` and ``<V>``."""
        lines = [f"ambient R^{self.ambient_rank}"]
        lines.append("gens: " + (", ".join(str(v) for v in self.gens_gb.basis) or "0"))
        lines.append("rels: " + (", ".join(str(v) for v in self.rels_gb.basis) or "0"))
        return lines

    def __repr__(self):
        return f"SubquotientModule(R^{self.ambient_rank}, {len(self.gens)} gens, {len(self.rels)} rels)"


def _vec(ring, v) -> FreeVector:
    if isinstance(v, FreeVector):
        if v.ring != ring:
            raise RingMismatch(f"{v.ring} vs {ring}")
        return v
    if isinstance(v, Poly):
        return FreeVector(ring, [v])
    return FreeVector(ring, v)


def _gen_matrix(ring, rank, vecs) -> FreeMatrix:
    return FreeMatrix.from_columns(ring, rank, vecs)


def _same_ambient(A, B):
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.ambient_rank != B.ambient_rank:
        raise AmbientMismatch(f"R^{A.ambient_rank} vs R^{B.ambient_rank}")


def _no_relations(*mods):
    for M in mods:
        if M.rels:
            raise HasRelations("operation requires a submodule without relations")


def submodule(ring: PolyRing, rank: int, gens) -> SubquotientModule:
    return SubquotientModule(ring, rank, tuple(gens))


def kernel_module(m: FreeMatrix) -> SubquotientModule:
    """ker(m) as a submodule of the source ``R^cols``."""
    return SubquotientModule(m.ring, m.cols, tuple(syzygy(m).columns()))


def image_module(m: FreeMatrix) -> SubquotientModule:
    return SubquotientModule(m.ring, m.rows, tuple(m.columns()))


def scale_submodule(M: SubquotientModule, x) -> SubquotientModule:
    _no_relations(M)
    x = M.ring(x)
    return SubquotientModule(M.ring, M.ambient_rank, tuple(u.scale(x) for u in M.gens))


def submodule_contains(A: SubquotientModule, B: SubquotientModule) -> bool:
    """Whether <U_B> is contained in <U_A>."""
    _same_ambient(A, B)
    return all(A.gens_gb.contains(u) for u in B.gens)


def submodule_equal(A: SubquotientModule, B: SubquotientModule) -> bool:
    _same_ambient(A, B)
    _no_relations(A, B)
    return A.gens_gb == B.gens_gb


def subquotient_equal(A: SubquotientModule, B: SubquotientModule) -> bool:
    """Identical (U, V) pairs up to equality of the spans of U and of V."""
    _same_ambient(A, B)
    return A.gens_gb == B.gens_gb and A.rels_gb == B.rels_gb


def submodule_intersect(A: SubquotientModule, B: SubquotientModule) -> SubquotientModule:
    """<U_A> ∩ <U_B> from the kernel of the stacked map [U_A | U_B]."""
    _same_ambient(A, B)
    _no_relations(A, B)
    ring, r = A.ring, A.ambient_rank
    if not A.gens or not B.gens:
        return SubquotientModule(ring, r)
    stacked = _gen_matrix(ring, r, A.gens + B.gens)
    k = len(A.gens)
    gens = []
    for s in syzygy(stacked).columns():
        v = A.combine(s.entries[:k])
        if not v.is_zero():
            gens.append(v)
    return SubquotientModule(ring, r, tuple(module_groebner(gens, ring, r).basis))


def submodule_sum(A: SubquotientModule, B: SubquotientModule) -> SubquotientModule:
    _same_ambient(A, B)
    _no_relations(A, B)
    return SubquotientModule(A.ring, A.ambient_rank, A.gens + B.gens)


def quotient_module(N: SubquotientModule, W: SubquotientModule) -> SubquotientModule:
    """N/W for a submodule <U_W> of <U_N>; the result is (U_N, V_N ∪ U_W)."""
    _same_ambient(N, W)
    for u in W.gens:
        if not N.gens_gb.contains(u):
            raise NotContained(f"{u} is not in the numerator")
    return SubquotientModule(N.ring, N.ambient_rank, N.gens, N.rels + W.gens)


def _presentation(M: SubquotientModule) -> FreeMatrix:
    cols = []
    for v in M.rels:
        c = M.lift(v)
        if c is None:
            raise IllFormed(f"relation {v} is not in the span of the generators")
        cols.append(c)
    k = len(M.gens)
    if k:
        cols.extend(s.entries for s in M.lifter.syzygies())
    return FreeMatrix.from_columns(M.ring, k, cols)


def presentation(M: SubquotientModule) -> FreeMatrix:
    """Matrix P with coker(P) ≅ M through the generators of M."""
    return M.presentation


def _supported_at_origin(gb, dim) -> bool:
    # every variable acts nilpotently: x_i^dim kills every generator
    ring, rank = gb.ring, gb.rank
    for comp in range(rank):
        for x in ring.gens:
            vec = FreeVector(ring, [x**dim if j == comp else ring.zero for j in range(rank)])
            if not gb.contains(vec):
                return False
    return True


def module_length(M: SubquotientModule, local: bool = True):
    """dim_k of M, or ``INFINITE``.

    With ``local=True`` a finite answer is only returned for modules supported
    at the origin, where it equals the length over the local ring there.
    """
    P = M.presentation
    gb = module_groebner(P.columns(), M.ring, P.rows)
    dim = gb.standard_monomial_count()
    if dim == INFINITE:
        return INFINITE
    dim = int(dim)
    if local and dim and not _supported_at_origin(gb, dim):
        raise LengthNotLocal("module is not supported only at the origin; global dimension is not a local length")
    return dim


def generic_rank(M: SubquotientModule) -> int:
    return M.generic_rank()


# maps


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: SubquotientModule
    target: SubquotientModule
    matrix: FreeMatrix = field(repr=False)

    def __post_init__(self):
        m = self.matrix
        if m.rows != self.target.ambient_rank or m.cols != len(self.source.gens):
            raise IllFormedMap(
                f"matrix {m.shape} does not fit R^{len(self.source.gens)} -> R^{self.target.ambient_rank}"
            )

    def apply(self, coords) -> FreeVector:
        """Image of the source element with the given generator coordinates."""
        return self.matrix @ FreeVector(self.matrix.ring, coords)

    def apply_element(self, v: FreeVector) -> FreeVector:
        c = self.source.lift(v)
        if c is None:
            raise NotContained(f"{v} is not an element of the source")
        return self.apply(c)

    def well_defined_failures(self) -> list:
        """Source presentation columns whose image is not a relation of the target."""
        bad = []
        for j, u in enumerate(self.matrix.columns()):
            if not self.target.gens_gb.contains(u):
                bad.append(("generator", j, u))
        for col in self.source.presentation.columns():
            img = self.matrix @ col
            if not self.target.rels_gb.contains(img):
                bad.append(("relation", col, img))
        return bad

    def is_well_defined(self) -> bool:
        return not self.well_defined_failures()

    def compose(self, first: ModuleMap) -> ModuleMap:
        """``self ∘ first``."""
        cols = []
        for u in first.matrix.columns():
            c = self.source.lift(u)
            if c is None:
                raise IllFormedMap("image of the first map leaves the middle module")
            cols.append(self.apply(c))
        return ModuleMap(first.source, self.target, FreeMatrix.from_columns(self.matrix.ring, self.target.ambient_rank, cols))


def identity_map(M: SubquotientModule) -> ModuleMap:
    return ModuleMap(M, M, FreeMatrix.from_columns(M.ring, M.ambient_rank, M.gens))


def projection(source: SubquotientModule, target: SubquotientModule) -> ModuleMap:
    """Map induced by the identity of a shared ambient (e.g. U/V -> U/V')."""
    _same_ambient(source, target)
    return ModuleMap(source, target, FreeMatrix.from_columns(source.ring, source.ambient_rank, source.gens))


def diagonal_map(source: SubquotientModule, target: SubquotientModule) -> ModuleMap:
    """u -> (u, u) into a target whose ambient is two copies of the source ambient."""
    r = source.ambient_rank
    if target.ambient_rank != 2 * r:
        raise AmbientMismatch("diagonal target must have doubled ambient rank")
    cols = [u.concat(u) for u in source.gens]
    return ModuleMap(source, target, FreeMatrix.from_columns(source.ring, 2 * r, cols))


def maps_equal(f: ModuleMap, g: ModuleMap) -> bool:
    """Equality as maps: every generator image agrees modulo target relations."""
    if f.source is not g.source and not subquotient_equal(f.source, g.source):
        return False
    if f.target is not g.target and not subquotient_equal(f.target, g.target):
        return False
    return all(
        f.target.rels_gb.contains(a - b) for a, b in zip(f.matrix.columns(), g.matrix.columns())
    )


def pullback(f: ModuleMap, g: ModuleMap):
    """Fibre product {(a, b) : f(a) = g(b)} inside the ambient R^a ⊕ R^b.

    Returns ``(P, p1, p2)`` with the two coordinate projections.
    """
    T = f.target
    if not (g.target is T or subquotient_equal(g.target, T)):
        raise TargetMismatch("maps do not share a target")
    A, B = f.source, g.source
    ring = A.ring
    ka, kb = len(A.gens), len(B.gens)
    big = f.matrix.hstack(-g.matrix, _gen_matrix(ring, T.ambient_rank, T.rels))
    gens = []
    if big.cols:
        for s in syzygy(big).columns():
            c, d = s.entries[:ka], s.entries[ka : ka + kb]
            v = A.combine(c).concat(B.combine(d))
            if not v.is_zero():
                gens.append(v)
    zero_b = FreeVector.zero(ring, B.ambient_rank)
    zero_a = FreeVector.zero(ring, A.ambient_rank)
    rels = tuple(v.concat(zero_b) for v in A.rels) + tuple(zero_a.concat(v) for v in B.rels)
    gens = tuple(module_groebner(gens, ring, A.ambient_rank + B.ambient_rank).basis)
    P = SubquotientModule(ring, A.ambient_rank + B.ambient_rank, gens, rels)
    ra = A.ambient_rank
    p1 = ModuleMap(P, A, FreeMatrix.from_columns(ring, ra, [FreeVector(ring, u.entries[:ra]) for u in gens]))
    p2 = ModuleMap(P, B, FreeMatrix.from_columns(ring, B.ambient_rank, [FreeVector(ring, u.entries[ra:]) for u in gens]))
    return P, p1, p2


class MapStatus(enum.Enum):
    BIJECTIVE = "Bijective"
    NOT_INJECTIVE = "NotInjective"
    NOT_SURJECTIVE = "NotSurjective"


class MapCertificate(NamedTuple):
    status: MapStatus
    witness: FreeVector | None = None

    @property
    def bijective(self) -> bool:
        return self.status is MapStatus.BIJECTIVE


def surjectivity_witness(phi: ModuleMap):
    T = phi.target
    span = module_groebner(tuple(phi.matrix.columns()) + T.rels, T.ring, T.ambient_rank)
    for u in T.gens:
        if not span.contains(u):
            return u
    return None


def injectivity_witness(phi: ModuleMap):
    """A source element outside <V_source> that maps into <V_target>, if any."""
    S, T = phi.source, phi.target
    k = len(S.gens)
    if not k:
        return None
    big = phi.matrix.hstack(_gen_matrix(S.ring, T.ambient_rank, T.rels))
    for s in syzygy(big).columns():
        v = S.combine(s.entries[:k])
        if not S.rels_gb.contains(v):
            return v
    return None


def map_is_bijective(phi: ModuleMap) -> MapCertificate:
    if not phi.is_well_defined():
        raise IllFormedMap("map is not well defined")
    w = injectivity_witness(phi)
    if w is not None:
        return MapCertificate(MapStatus.NOT_INJECTIVE, w)
    w = surjectivity_witness(phi)
    if w is not None:
        return MapCertificate(MapStatus.NOT_SURJECTIVE, w)
    return MapCertificate(MapStatus.BIJECTIVE)


def multiplication_kernel_witness(M: SubquotientModule, x):
    """An element m of M, nonzero in M, with x*m = 0 in M; None if there is none."""
    x = M.ring(x)
    k = len(M.gens)
    if not k:
        return None
    scaled = [u.scale(x) for u in M.gens]
    big = _gen_matrix(M.ring, M.ambient_rank, tuple(scaled) + M.rels)
    for s in syzygy(big).columns():
        v = M.combine(s.entries[:k])
        if not M.rels_gb.contains(v):
            return v
    return None


def mult_injective(M: SubquotientModule, x) -> bool:
    """Whether multiplication by ``x`` is injective on M."""
    return multiplication_kernel_witness(M, x) is None


def direct_sum(A: SubquotientModule, B: SubquotientModule) -> SubquotientModule:
    """A ⊕ B with A's ambient components first."""
    ring = A.ring
    za, zb = FreeVector.zero(ring, A.ambient_rank), FreeVector.zero(ring, B.ambient_rank)
    gens = tuple(u.concat(zb) for u in A.gens) + tuple(za.concat(u) for u in B.gens)
    rels = tuple(u.concat(zb) for u in A.rels) + tuple(za.concat(u) for u in B.rels)
    return SubquotientModule(ring, A.ambient_rank + B.ambient_rank, gens, rels)
