"""Tor and multitor computations, intersection multiplicities and verifiers.

Every verifier returns a :class:`VerifierReport` listing each check it ran
with a pass/fail flag and, on failure, an explicit witness.  Conclusions are
``Verified`` only if every check passed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb

from .complexes import FreeComplex, free_resolution, homology, koszul_complex, tensor_complex
from .errors import NotZeroDimensional, ZeroDivisorGenerator, ZeroScalar
from .groebner import groebner_basis, ideal_quotient, is_zero_dimensional, module_groebner, syzygy
from .matrix import FreeMatrix, FreeVector
from .modmath import (
    INFINITE,
    SubquotientModule,
    diagonal_map,
    image_module,
    kernel_module,
    map_is_bijective,
    module_length,
    multiplication_kernel_witness,
    projection,
    pullback,
    quotient_module,
    scale_submodule,
    submodule_equal,
    submodule_intersect,
    subquotient_equal,
)
from .ring import Poly, PolyRing


class Conclusion(enum.Enum):
    VERIFIED = "Verified"
    PRECONDITION_FAILED = "PreconditionFailed"
    REFUTED = "Refuted"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    precondition: bool = False


@dataclass
class VerifierReport:
    claim: str
    instance: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, passed, detail="", precondition=False) -> bool:
        self.checks.append(Check(name, bool(passed), detail, precondition))
        return bool(passed)

    @property
    def conclusion(self) -> Conclusion:
        if any(not c.passed for c in self.checks if c.precondition):
            return Conclusion.PRECONDITION_FAILED
        if any(not c.passed for c in self.checks):
            return Conclusion.REFUTED
        return Conclusion.VERIFIED

    @property
    def verified(self) -> bool:
        return self.conclusion is Conclusion.VERIFIED

    def witnesses(self) -> list:
        return [(c.name, c.detail) for c in self.checks if not c.passed and c.detail]

    def to_text(self) -> str:
        lines = [f"claim: {self.claim}", f"instance: {self.instance}"]
        for c in self.checks:
            tag = "pass" if c.passed else "FAIL"
            kind = " (precondition)" if c.precondition else ""
            lines.append(f"  [{tag}] {c.name}{kind}" + (f": {c.detail}" if c.detail else ""))
        lines.extend(f"  note: {n}" for n in self.notes)
        lines.append(f"verdict: {self.conclusion.value}")
        return "\n".join(lines)

    def to_pairs(self, prefix: str = "") -> list:
        out = [(f"{prefix}claim", self.claim), (f"{prefix}instance", self.instance)]
        for i, c in enumerate(self.checks):
            out.append((f"{prefix}check.{i}.name", c.name))
            out.append((f"{prefix}check.{i}.passed", str(c.passed).lower()))
            if c.detail:
                out.append((f"{prefix}check.{i}.detail", c.detail))
        for i, n in enumerate(self.notes):
            out.append((f"{prefix}note.{i}", n))
        out.append((f"{prefix}verdict", self.conclusion.value))
        return out


@dataclass
class TorDegree:
    module: SubquotientModule
    length: float
    generic_rank: int


@dataclass
class TorReport:
    degrees: dict
    provenance: str

    def length(self, q: int):
        return self.degrees[q].length if q in self.degrees else 0


def _ring_of(*seqs) -> PolyRing:
    for s in seqs:
        for p in s:
            if isinstance(p, Poly):
                return p.ring
    raise ValueError("cannot infer the ring from empty input")


def _fmt(polys) -> str:
    return "(" + ", ".join(str(p) for p in polys) + ")"


# regularity and hypersurface multitors


def is_regular_sequence(f) -> tuple:
    """(True, None) if f is regular, else (False, index) with a 1-based failing index."""
    f = list(f)
    if not f:
        return True, None
    ring = _ring_of(f)
    prefix = []
    for i, g in enumerate(f, start=1):
        g = ring(g)
        current = groebner_basis(prefix, ring) if prefix else []
        if g.is_zero():
            if current != [ring.one]:
                return False, i
        elif groebner_basis(ideal_quotient(prefix, g), ring) != current:
            return False, i
        prefix.append(g)
    return True, None


def multitor_hypersurfaces(f, q: int) -> SubquotientModule:
    """H^{-q} of the Koszul complex on f: the q-th multitor of the hypersurfaces f_i = 0."""
    f = list(f)
    if any(g.is_zero() for g in f):
        raise ZeroDivisorGenerator("every hypersurface equation must be nonzero")
    K = koszul_complex(f)
    if q > K.length:
        return SubquotientModule.zero(K.ring)
    return homology(K, -q)


def multitor_by_tensoring(f, q: int) -> SubquotientModule:
    """Same multitor via iterated tensor products of the two-term complexes R -> R."""
    f = list(f)
    if any(g.is_zero() for g in f):
        raise ZeroDivisorGenerator("every hypersurface equation must be nonzero")
    C = koszul_complex(f[:1])
    for g in f[1:]:
        C = tensor_complex(C, koszul_complex([g]))
    if q > C.length:
        return SubquotientModule.zero(C.ring)
    return homology(C, -q)


def multitor_report(f, qmax: int | None = None) -> TorReport:
    f = list(f)
    qmax = len(f) if qmax is None else qmax
    degrees = {}
    for q in range(qmax + 1):
        M = multitor_hypersurfaces(f, q)
        degrees[q] = TorDegree(M, module_length(M, local=False), M.generic_rank())
    return TorReport(degrees, "koszul")


# two-argument Tor and Serre's formula


def _tensor_homology(F: FreeComplex, J, q: int) -> SubquotientModule:
    """H_q(F ⊗ R/J) as a subquotient of R^{rank F_q}."""
    ring = F.ring
    if q > F.length:
        return SubquotientModule.zero(ring)
    rank = F.ranks[q]
    J = [ring(g) for g in J]

    def j_multiples(r):
        return [
            FreeVector(ring, [g if i == c else ring.zero for i in range(r)]) for c in range(r) for g in J if not g.is_zero()
        ]

    if q == 0:
        gens = tuple(FreeVector.basis(ring, rank, i) for i in range(rank))
    else:
        d = F.differentials[q - 1]
        cols = j_multiples(d.rows)
        big = d.hstack(FreeMatrix.from_columns(ring, d.rows, cols)) if cols else d
        gens = []
        for s in syzygy(big).columns():
            v = FreeVector(ring, s.entries[:rank])
            if not v.is_zero():
                gens.append(v)
        gens = tuple(module_groebner(gens, ring, rank).basis)
    rels = j_multiples(rank)
    if q < F.length:
        rels = list(F.differentials[q].columns()) + rels
    return SubquotientModule(ring, rank, gens, tuple(rels))


def tor_pair(I, J, q: int, max_len: int | None = None) -> SubquotientModule:
    """Tor_q(R/I, R/J), resolving the first argument and tensoring with R/J."""
    ring = _ring_of(I, J)
    F = free_resolution([ring(g) for g in I], max_len, ring=ring)
    return _tensor_homology(F, J, q)


def tor_report(I, J, qmax: int | None = None, max_len: int | None = None, local: bool = True) -> TorReport:
    ring = _ring_of(I, J)
    F = free_resolution([ring(g) for g in I], max_len, ring=ring)
    top = F.length if qmax is None else qmax
    degrees = {}
    for q in range(top + 1):
        M = _tensor_homology(F, J, q)
        degrees[q] = TorDegree(M, module_length(M, local=local), M.generic_rank())
    return TorReport(degrees, f"resolution of first ideal (betti {F.ranks}) tensored with second quotient")


def serre_multiplicity(I, J, report: TorReport | None = None) -> int:
    """Alternating sum of the lengths of Tor_i(R/I, R/J)."""
    ring = _ring_of(I, J)
    if not is_zero_dimensional([ring(g) for g in list(I) + list(J)], ring):
        raise NotZeroDimensional("I + J is not zero-dimensional")
    report = report or tor_report(I, J)
    total = 0
    for q, deg in sorted(report.degrees.items()):
        if deg.length == INFINITE:
            raise NotZeroDimensional(f"Tor_{q} has infinite length")
        total += (-1) ** q * deg.length
    return total


# the scaled Koszul model and its verifiers


def _koszul_pieces(f, q: int, ring=None):
    """(ker d^{-q}, im d^{-q-1}) of K(f) as submodules of R^{C(n,q)}."""
    K = koszul_complex(f, ring)
    ring = K.ring
    rank = K.ranks[q]
    if q == 0:
        ker = SubquotientModule.free(ring, rank)
    else:
        ker = kernel_module(K.differentials[q - 1])
    if q < K.length:
        im = image_module(K.differentials[q])
    else:
        im = SubquotientModule.zero(ring, rank)
    return K, ker, im


def scaled_cohomology_model(f, x, q: int) -> SubquotientModule:
    """ker(d_f^{-q}) / x·im(d_f^{-q-1}), a model of H^{-q}(K(x f))."""
    f = list(f)
    ring = _ring_of(f, [x])
    x = ring(x)
    if x.is_zero():
        raise ZeroScalar("x must be a nonzero element")
    _, ker, im = _koszul_pieces(f, q, ring)
    return quotient_module(ker, scale_submodule(im, x))


def check_prop_affine(f, x, q: int) -> VerifierReport:
    f = list(f)
    ring = _ring_of(f, [x])
    x = ring(x)
    rep = VerifierReport("prop31", f"f={_fmt(f)} x={x} q={q} over {ring}")
    if not rep.add("x is a nonzero element of the domain", not x.is_zero(), precondition=True):
        return rep
    n = len(f)
    if not rep.add("q within 0..n", 0 <= q <= n, f"q={q} n={n}", precondition=True):
        return rep
    Kf = koszul_complex(f, ring)
    Kxf = koszul_complex([x * g for g in f], ring)
    bad = [
        k + 1 for k, (a, b) in enumerate(zip(Kxf.differentials, Kf.differentials)) if a != b.scale(x)
    ]
    rep.add("d_xf = x * d_f entrywise", not bad, f"differs out of degrees {[-k for k in bad]}" if bad else "")
    _, ker_f, im_f = _koszul_pieces(f, q, ring)
    _, ker_xf, im_xf = _koszul_pieces([x * g for g in f], q, ring)
    rep.add("ker d_xf^{-q} = ker d_f^{-q}", submodule_equal(ker_xf, ker_f))
    rep.add("im d_xf^{-q-1} = x * im d_f^{-q-1}", submodule_equal(im_xf, scale_submodule(im_f, x)))
    H = homology(Kxf, -q)
    model = quotient_module(ker_f, scale_submodule(im_f, x))
    same = subquotient_equal(H, model)
    rep.add("H^{-q}(K(xf)) and ker/x·im agree as (U, V)", same)
    return rep


def check_cor_regular(f, x, q: int) -> VerifierReport:
    f = list(f)
    ring = _ring_of(f, [x])
    x = ring(x)
    rep = VerifierReport("cor32", f"f={_fmt(f)} x={x} q={q} over {ring}")
    regular, idx = is_regular_sequence(f)
    if not rep.add("f is a regular sequence", regular, f"fails at index {idx}" if not regular else "", precondition=True):
        return rep
    if not rep.add("x nonzero and q >= 1", not x.is_zero() and 1 <= q <= len(f), precondition=True):
        return rep
    _, ker, im = _koszul_pieces(f, q, ring)
    rep.add("im d^{-q-1} = ker d^{-q} (exactness)", submodule_equal(im, ker))
    model = quotient_module(ker, scale_submodule(im, x))
    tensored = quotient_module(ker, scale_submodule(ker, x))
    cert = map_is_bijective(projection(model, tensored))
    rep.add("canonical map ker/x·im -> ker ⊗ R/(x) is bijective", cert.bijective, _witness_text(cert))
    return rep


def _witness_text(cert) -> str:
    if cert.bijective:
        return ""
    return f"{cert.status.value} witness {cert.witness}"


@dataclass
class PullbackSquare:
    model: SubquotientModule
    ker_mod_x: SubquotientModule
    cohomology: SubquotientModule
    corner: SubquotientModule
    pullback: SubquotientModule
    canonical: object


def _pullback_square(ker, im, x) -> PullbackSquare:
    ring = ker.ring
    x_im = scale_submodule(im, x)
    x_ker = scale_submodule(ker, x)
    model = quotient_module(ker, x_im)
    top_right = quotient_module(ker, x_ker)
    bottom_left = quotient_module(ker, im)
    corner = SubquotientModule(ring, ker.ambient_rank, ker.gens, im.gens + x_ker.gens)
    P, _, _ = pullback(projection(top_right, corner), projection(bottom_left, corner))
    return PullbackSquare(model, top_right, bottom_left, corner, P, diagonal_map(model, P))


def check_pullback_square(f, x, q: int) -> VerifierReport:
    f = list(f)
    ring = _ring_of(f, [x])
    x = ring(x)
    rep = VerifierReport("pullback", f"f={_fmt(f)} x={x} q={q} over {ring}")
    if not rep.add("x is nonzero", not x.is_zero(), precondition=True):
        return rep
    _, ker, im = _koszul_pieces(f, q, ring)
    H = quotient_module(ker, im)
    w = multiplication_kernel_witness(H, x)
    if not rep.add(
        "multiplication by x is injective on H = ker/im",
        w is None,
        f"nonzero class {w} is killed by {x}" if w is not None else "",
        precondition=True,
    ):
        return rep
    x_im = scale_submodule(im, x)
    rep.add("im ∩ x·ker = x·im", submodule_equal(submodule_intersect(im, scale_submodule(ker, x)), x_im))
    sq = _pullback_square(ker, im, x)
    maps = [sq.canonical] + [
        projection(sq.model, sq.ker_mod_x),
        projection(sq.model, sq.cohomology),
    ]
    rep.add("square maps are well defined", all(m.is_well_defined() for m in maps))
    cert = map_is_bijective(sq.canonical)
    rep.add("canonical map ker/x·im -> pullback is bijective", cert.bijective, _witness_text(cert))
    if H.is_zero():
        rep.notes.append("bottom row vanishes: H = 0, so the pullback is ker ⊗ R/(x)")
    return rep


def check_lemma_square(M: SubquotientModule, P: SubquotientModule, Q: SubquotientModule) -> VerifierReport:
    """M/(P∩Q) maps isomorphically onto the pullback of M/P -> M/(P+Q) <- M/Q.

    P and Q are given by generators in M's ambient; the relations of M are
    added to both, so they stand for submodules of M.
    """
    rep = VerifierReport("lemma_square", f"{M!r}, P with {len(P.gens)} gens, Q with {len(Q.gens)} gens")
    inside = all(M.contains(v) for v in P.gens + Q.gens)
    if not rep.add("P and Q lie in M", inside, precondition=True):
        return rep
    ring, r = M.ring, M.ambient_rank
    Pf = SubquotientModule(ring, r, P.gens + M.rels)
    Qf = SubquotientModule(ring, r, Q.gens + M.rels)
    meet = submodule_intersect(Pf, Qf)
    M_P = SubquotientModule(ring, r, M.gens, Pf.gens)
    M_Q = SubquotientModule(ring, r, M.gens, Qf.gens)
    M_sum = SubquotientModule(ring, r, M.gens, Pf.gens + Qf.gens)
    M_meet = SubquotientModule(ring, r, M.gens, meet.gens)
    X, p1, p2 = pullback(projection(M_P, M_sum), projection(M_Q, M_sum))
    canonical = diagonal_map(M_meet, X)
    rep.add("canonical map is well defined", canonical.is_well_defined())
    cert = map_is_bijective(canonical)
    rep.add("M/(P∩Q) -> pullback is bijective", cert.bijective, _witness_text(cert))
    return rep


def check_tor_independence(I, x) -> VerifierReport:
    I = list(I)
    ring = _ring_of(I, [x])
    x = ring(x)
    if x.is_zero():
        raise ZeroScalar("x must be nonzero")
    rep = VerifierReport("torind", f"I={_fmt(I)} x={x} over {ring}")
    gb_I = groebner_basis(I, ring)
    quotient = ideal_quotient(I, x)
    I_mod = module_groebner(gb_I, ring, 1)
    witness = next((g for g in quotient if not I_mod.contains(FreeVector(ring, [g]))), None)
    rep.add(
        "Tor_1(R/I, R/(x)) = (I:x)/I vanishes",
        witness is None,
        f"{witness} lies in (I:{x}) but not in I" if witness is not None else "",
    )
    # cross-check through the resolution R --x--> R of R/(x)
    T1 = tor_pair([x], I, 1)
    rep.add("Tor_1 via resolution of R/(x) agrees", T1.is_zero() == (witness is None))
    T2 = tor_pair([x], I, 2)
    rep.add("Tor_2 vanishes (resolution of R/(x) has length 1)", T2.is_zero())
    return rep


def verify_main_theorem_affine(f, x, qmax: int) -> VerifierReport:
    f = list(f)
    ring = _ring_of(f, [x])
    x = ring(x)
    rep = VerifierReport("main", f"f={_fmt(f)} x={x} qmax={qmax} over {ring}")
    ok = rep.add("x is nonzero", not x.is_zero(), precondition=True)
    ok &= rep.add("every f_i is nonzero", all(not g.is_zero() for g in f), precondition=True)
    if not ok:
        return rep
    rep.notes.append(f"hypersurfaces Y_i cut out by x*f_i: {_fmt([x * g for g in f])}")
    rep.notes.append("single affine chart: O(D) is trivial, no twist factor applied")
    Kxf = koszul_complex([x * g for g in f], ring)
    for q in range(min(qmax, len(f)) + 1):
        _, ker, im = _koszul_pieces(f, q, ring)
        H = quotient_module(ker, im)
        w = multiplication_kernel_witness(H, x)
        if not rep.add(
            f"q={q}: x injective on H^{{-q}}(K(f))",
            w is None,
            f"nonzero class {w} is killed by {x}" if w is not None else "",
            precondition=True,
        ):
            continue
        direct = homology(Kxf, -q)
        model = quotient_module(ker, scale_submodule(im, x))
        rep.add(f"q={q}: Koszul homology of xf equals ker/x·im", subquotient_equal(direct, model))
        sq = _pullback_square(ker, im, x)
        cert = map_is_bijective(sq.canonical)
        rep.add(f"q={q}: ker/x·im -> pullback is bijective", cert.bijective, _witness_text(cert))
        length = module_length(direct, local=False)
        shown = "infinite" if length == INFINITE else length
        rep.notes.append(f"q={q}: Tor length {shown}, generic rank {direct.generic_rank()}")
    return rep


def kernel_generic_rank(f, q: int) -> int:
    """Generic rank of ker(d^{-q}) of the Koszul complex on f."""
    _, ker, _ = _koszul_pieces(list(f), q)
    return ker.generic_rank()


def expected_kernel_rank(n: int, q: int) -> int:
    """Rank of ker(d^{-q}) on an exact Koszul complex of length n."""
    return comb(n - 1, q) if n else int(q == 0)
