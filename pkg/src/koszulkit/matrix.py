"""Vectors and matrices over a polynomial ring."""

from __future__ import annotations

from .errors import RankMismatch, RingMismatch, ShapeMismatch
from .ring import Poly, PolyRing


class FreeVector:
    """An element of the free module ``R^rank``."""

    __slots__ = ("ring", "entries", "_hash")

    def __init__(self, ring: PolyRing, entries):
        entries = tuple(ring(e) for e in entries)
        self.ring = ring
        self.entries = entries
        self._hash = None

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> FreeVector:
        return cls(ring, [ring.zero] * rank)

    @classmethod
    def basis(cls, ring: PolyRing, rank: int, i: int) -> FreeVector:
        return cls(ring, [ring.one if j == i else ring.zero for j in range(rank)])

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def _check(self, other):
        if not isinstance(other, FreeVector):
            raise TypeError("expected a FreeVector")
        if other.rank != self.rank:
            raise RankMismatch(f"ranks {self.rank} and {other.rank}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        return FreeVector(self.ring, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        return FreeVector(self.ring, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return FreeVector(self.ring, [-a for a in self.entries])

    def scale(self, c) -> FreeVector:
        c = self.ring(c)
        return FreeVector(self.ring, [c * a for a in self.entries])

    def concat(self, other: FreeVector) -> FreeVector:
        return FreeVector(self.ring, self.entries + other.entries)

    def __eq__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    __repr__ = __str__


class FreeMatrix:
    """A map ``R^cols -> R^rows`` acting on column vectors."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PolyRing, entries, rows: int | None = None, cols: int | None = None):
        grid = tuple(tuple(ring(e) for e in row) for row in entries)
        self.ring = ring
        self.rows = len(grid) if rows is None else rows
        if cols is None:
            cols = len(grid[0]) if grid else 0
        self.cols = cols
        if len(grid) != self.rows or any(len(r) != cols for r in grid):
            raise ShapeMismatch(f"entries do not form a {self.rows}x{cols} grid")
        self.entries = grid

    @classmethod
    def from_columns(cls, ring: PolyRing, rows: int, columns) -> FreeMatrix:
        columns = list(columns)
        for c in columns:
            if len(c) != rows:
                raise ShapeMismatch(f"column of length {len(c)}, expected {rows}")
        grid = [[c[i] for c in columns] for i in range(rows)]
        return cls(ring, grid, rows, len(columns))

    @classmethod
    def zero(cls, ring: PolyRing, rows: int, cols: int) -> FreeMatrix:
        return cls(ring, [[ring.zero] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> FreeMatrix:
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def parse(cls, ring: PolyRing, rows) -> FreeMatrix:
        return cls(ring, [[ring(t) for t in row] for row in rows])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> FreeVector:
        return FreeVector(self.ring, [row[j] for row in self.entries])

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> FreeMatrix:
        return FreeMatrix(self.ring, [list(c) for c in zip(*self.entries)] if self.rows else [], self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __matmul__(self, other):
        if isinstance(other, FreeVector):
            if other.rank != self.cols:
                raise ShapeMismatch(f"{self.shape} times vector of rank {other.rank}")
            return FreeVector(self.ring, [_dot(row, other.entries, self.ring) for row in self.entries])
        if not isinstance(other, FreeMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot compose {self.shape} with {other.shape}")
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        ocols = [c.entries for c in other.columns()]
        grid = [[_dot(row, c, self.ring) for c in ocols] for row in self.entries]
        return FreeMatrix(self.ring, grid, self.rows, other.cols)

    def scale(self, c) -> FreeMatrix:
        c = self.ring(c)
        return FreeMatrix(self.ring, [[c * e for e in row] for row in self.entries], self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        grid = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        return FreeMatrix(self.ring, grid, self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def hstack(self, *others) -> FreeMatrix:
        mats = (self,) + others
        for m in others:
            if m.rows != self.rows:
                raise ShapeMismatch("hstack needs equal row counts")
        grid = [sum((m.entries[i] for m in mats), ()) for i in range(self.rows)]
        return FreeMatrix(self.ring, grid, self.rows, sum(m.cols for m in mats))

    def vstack(self, *others) -> FreeMatrix:
        mats = (self,) + others
        for m in others:
            if m.cols != self.cols:
                raise ShapeMismatch("vstack needs equal column counts")
        grid = [row for m in mats for row in m.entries]
        return FreeMatrix(self.ring, grid, sum(m.rows for m in mats), self.cols)

    def delete(self, rows=(), cols=()) -> FreeMatrix:
        rows, cols = set(rows), set(cols)
        keep_c = [j for j in range(self.cols) if j not in cols]
        grid = [[r[j] for j in keep_c] for i, r in enumerate(self.entries) if i not in rows]
        return FreeMatrix(self.ring, grid, self.rows - len(rows), len(keep_c))

    def generic_rank(self) -> int:
        """Rank over the fraction field, by fraction-free elimination."""
        rows = [list(r) for r in self.entries]
        rank = 0
        for c in range(self.cols):
            candidates = [r for r in range(rank, len(rows)) if not rows[r][c].is_zero()]
            if not candidates:
                continue
            # cheapest pivot keeps entry growth down
            piv = min(candidates, key=lambda r: (len(rows[r][c]), rows[r][c].total_degree(), r))
            rows[rank], rows[piv] = rows[piv], rows[rank]
            p = rows[rank][c]
            for r in range(rank + 1, len(rows)):
                a = rows[r][c]
                if not a.is_zero():
                    rows[r] = [p * x - a * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def __eq__(self, other):
        if not isinstance(other, FreeMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __str__(self):
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols} matrix>"
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)

    def __repr__(self):
        return f"FreeMatrix({self.rows}x{self.cols})"


def _dot(row, col, ring) -> Poly:
    total = ring.zero
    for a, b in zip(row, col):
        if not a.is_zero() and not b.is_zero():
            total = total + a * b
    return total
