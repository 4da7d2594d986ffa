"""Finite complexes of free modules in degrees [-N, 0].

``ranks[q]`` is the rank of the term in degree ``-q`` and
``differentials[q - 1]`` is the map from degree ``-q`` to degree ``-q + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import DegreeOutOfRange, ResolutionTruncated, RingMismatch, ShapeMismatch
from .groebner import module_groebner, syzygy
from .matrix import FreeMatrix, FreeVector
from .modmath import SubquotientModule
from .ring import PolyRing


@dataclass(frozen=True, eq=False)
class FreeComplex:
    ring: PolyRing
    ranks: tuple
    differentials: tuple

    def __post_init__(self):
        ranks, diffs = tuple(self.ranks), tuple(self.differentials)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "differentials", diffs)
        if not ranks or len(diffs) != len(ranks) - 1:
            raise ShapeMismatch("need one differential between each pair of adjacent terms")
        for q, d in enumerate(diffs, start=1):
            if d.shape != (ranks[q - 1], ranks[q]):
                raise ShapeMismatch(f"differential out of degree -{q} has shape {d.shape}")
            if d.ring != self.ring:
                raise RingMismatch(f"{d.ring} vs {self.ring}")
        for q in range(1, len(diffs)):
            if not (diffs[q - 1] @ diffs[q]).is_zero():
                raise ValueError(f"d∘d != 0 at degree -{q + 1}")

    @property
    def length(self) -> int:
        """N, the most negative degree is -N."""
        return len(self.ranks) - 1

    def rank(self, degree: int) -> int:
        self._check(degree)
        return self.ranks[-degree]

    def differential(self, degree: int) -> FreeMatrix:
        """The map out of ``degree`` (degree in [-N, -1])."""
        if not -self.length <= degree <= -1:
            raise DegreeOutOfRange(f"no differential out of degree {degree}")
        return self.differentials[-degree - 1]

    def _check(self, degree):
        if not -self.length <= degree <= 0:
            raise DegreeOutOfRange(f"degree {degree} outside [-{self.length}, 0]")

    def to_text(self) -> str:
        lines = [f"ring {self.ring}", f"length {self.length}"]
        for q, r in enumerate(self.ranks):
            lines.append(f"degree {-q}: rank {r}")
            if q:
                d = self.differentials[q - 1]
                lines.append(f"  d^{-q}: {d.rows}x{d.cols}")
                for row in d.entries:
                    lines.append("    [" + ", ".join(str(e) for e in row) + "]")
        return "\n".join(lines)


def koszul_complex(f, ring: PolyRing | None = None) -> FreeComplex:
    """Koszul complex with column S -> row S minus its j-th element carrying (-1)^j f_{i_j}."""
    f = list(f)
    if ring is None:
        if not f:
            raise ValueError("ring required for the empty sequence")
        ring = f[0].ring
    f = [ring(g) for g in f]
    n = len(f)
    bases = [list(combinations(range(n), q)) for q in range(n + 1)]
    diffs = []
    for q in range(1, n + 1):
        rows = {S: i for i, S in enumerate(bases[q - 1])}
        grid = [[ring.zero] * len(bases[q]) for _ in bases[q - 1]]
        for col, S in enumerate(bases[q]):
            for j, i in enumerate(S, start=1):
                face = S[: j - 1] + S[j:]
                grid[rows[face]][col] = f[i] if j % 2 == 0 else -f[i]
        diffs.append(FreeMatrix(ring, grid, len(bases[q - 1]), len(bases[q])))
    return FreeComplex(ring, tuple(comb(n, q) for q in range(n + 1)), tuple(diffs))


def unit_complex(ring: PolyRing) -> FreeComplex:
    """R in degree 0."""
    return FreeComplex(ring, (1,), ())


def _kron(a: FreeMatrix, b: FreeMatrix) -> FreeMatrix:
    grid = []
    for ra in a.entries:
        for rb in b.entries:
            grid.append([x * y for x in ra for y in rb])
    return FreeMatrix(a.ring, grid, a.rows * b.rows, a.cols * b.cols)


def tensor_complex(A: FreeComplex, B: FreeComplex) -> FreeComplex:
    """A ⊗ B with d(a⊗b) = da⊗b + (-1)^{deg a} a⊗db; blocks ordered by A-degree."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    ring = A.ring
    N = A.length + B.length

    def blocks(k):
        return [(i, k - i) for i in range(k + 1) if i <= A.length and k - i <= B.length]

    def offsets(k):
        out, pos = {}, 0
        for i, j in blocks(k):
            out[(i, j)] = pos
            pos += A.ranks[i] * B.ranks[j]
        return out, pos

    ranks = tuple(offsets(k)[1] for k in range(N + 1))
    diffs = []
    for k in range(1, N + 1):
        src, ncols = offsets(k)
        dst, nrows = offsets(k - 1)
        grid = [[ring.zero] * ncols for _ in range(nrows)]

        def place(block, r0, c0):
            for r, row in enumerate(block.entries):
                for c, e in enumerate(row):
                    if not e.is_zero():
                        grid[r0 + r][c0 + c] = e

        for (i, j), c0 in src.items():
            if i >= 1:
                block = _kron(A.differentials[i - 1], FreeMatrix.identity(ring, B.ranks[j]))
                place(block, dst[(i - 1, j)], c0)
            if j >= 1:
                block = _kron(FreeMatrix.identity(ring, A.ranks[i]), B.differentials[j - 1])
                if i % 2:
                    block = -block
                place(block, dst[(i, j - 1)], c0)
        diffs.append(FreeMatrix(ring, grid, nrows, ncols))
    return FreeComplex(ring, ranks, tuple(diffs))


def mapping_cone(t, A: FreeComplex) -> FreeComplex:
    """Cone of multiplication by ``t`` on A.

    Degree -k holds A^{-k+1} (shifted copy, first) ⊕ A^{-k}; the differential is
    [[-dA, 0], [t, dA]].
    """
    ring = A.ring
    t = ring(t)
    N = A.length + 1

    def rk(q):
        return A.ranks[q] if 0 <= q <= A.length else 0

    def dA(q):
        # map A^{-q} -> A^{-q+1}, as a (rk(q-1) x rk(q)) matrix
        if 1 <= q <= A.length:
            return A.differentials[q - 1]
        return FreeMatrix.zero(ring, rk(q - 1), rk(q))

    ranks = tuple(rk(k - 1) + rk(k) for k in range(N + 1))
    diffs = []
    for k in range(1, N + 1):
        # source: A^{-(k-1)} ⊕ A^{-k}; target: A^{-(k-2)} ⊕ A^{-(k-1)}
        top = (-dA(k - 1)).hstack(FreeMatrix.zero(ring, rk(k - 2), rk(k)))
        bottom = FreeMatrix.identity(ring, rk(k - 1)).scale(t).hstack(dA(k))
        diffs.append(top.vstack(bottom))
    return FreeComplex(ring, ranks, tuple(diffs))


def homology(C: FreeComplex, degree: int) -> SubquotientModule:
    """H^degree(C) = ker(d out of degree) / im(d into degree), degree in [-N, 0]."""
    C._check(degree)
    ring = C.ring
    q = -degree
    rank = C.ranks[q]
    if q == 0:
        gens = tuple(FreeVector.basis(ring, rank, i) for i in range(rank))
    else:
        gens = tuple(syzygy(C.differentials[q - 1]).columns())
    rels = tuple(C.differentials[q].columns()) if q < C.length else ()
    return SubquotientModule(ring, rank, gens, rels)


def _prune_generators(vecs, ring, rank):
    """Drop generators lying in the span of the others (greedy, last first)."""
    vecs = [v for v in vecs if not v.is_zero()]
    i = len(vecs) - 1
    while i >= 0 and len(vecs) > 1:
        others = vecs[:i] + vecs[i + 1 :]
        if module_groebner(others, ring, rank).contains(vecs[i]):
            vecs = others
        i -= 1
    return vecs


def _unit_entry(d: FreeMatrix):
    for r, row in enumerate(d.entries):
        for c, e in enumerate(row):
            if not e.is_zero() and e.is_constant():
                return r, c
    return None


def minimalize(ranks: list, diffs: list):
    """Cancel unit entries of the differentials (Gaussian elimination of complexes)."""
    ranks, diffs = list(ranks), list(diffs)
    changed = True
    while changed:
        changed = False
        for q, d in enumerate(diffs, start=1):
            hit = _unit_entry(d)
            if hit is None:
                continue
            r, c = hit
            ring = d.ring
            u_inv = ring.field.inv(d[r, c].constant_value())
            gamma = [d[i, c] for i in range(d.rows)]
            delta = [d[r, j] for j in range(d.cols)]
            grid = [
                [d[i, j] - gamma[i] * delta[j] * u_inv for j in range(d.cols) if j != c]
                for i in range(d.rows)
                if i != r
            ]
            diffs[q - 1] = FreeMatrix(ring, grid, d.rows - 1, d.cols - 1)
            if q < len(diffs):
                diffs[q] = diffs[q].delete(rows=[c])
            if q >= 2:
                diffs[q - 2] = diffs[q - 2].delete(cols=[r])
            ranks[q - 1] -= 1
            ranks[q] -= 1
            changed = True
            break
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
        diffs.pop()
    return ranks, diffs


def free_resolution(I, max_len: int | None = None, ring: PolyRing | None = None) -> FreeComplex:
    """Free resolution of R/I by iterated syzygies, then unit-entry minimalization."""
    polys = list(I)
    if ring is None:
        if not polys:
            raise ValueError("ring required for the zero ideal")
        ring = polys[0].ring
    polys = [ring(p) for p in polys]
    if max_len is None:
        max_len = ring.nvars + 1
    first = _prune_generators([FreeVector(ring, [p]) for p in polys], ring, 1)
    ranks, diffs = [1], []
    current = FreeMatrix.from_columns(ring, 1, first)
    while current.cols:
        if len(diffs) == max_len:
            raise ResolutionTruncated(f"resolution not exact after {max_len} steps")
        diffs.append(current)
        ranks.append(current.cols)
        kernel = syzygy(current).columns()
        kernel = _prune_generators(kernel, ring, current.cols)
        current = FreeMatrix.from_columns(ring, current.cols, kernel)
    ranks, diffs = minimalize(ranks, diffs)
    return FreeComplex(ring, tuple(ranks), tuple(diffs))


def betti_numbers(C: FreeComplex) -> tuple:
    return C.ranks
