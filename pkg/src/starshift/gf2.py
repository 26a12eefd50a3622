"""Exact linear algebra over GF(2) and over the rationals.

Vectors and matrix rows are bit-packed into Python ints (bit ``j`` holds
column ``j``), so XOR-based elimination runs at word speed even for
window systems with thousands of variables.  Rational ranks use
fraction-free integer elimination with unbounded precision; nothing in
this module touches floating point.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "IntVector",
    "F2Vector",
    "F2Matrix",
    "RowReduction",
    "RationalEchelon",
    "weight",
    "dot",
    "cw_product",
    "row_reduce",
    "kernel_basis",
    "rational_rank",
    "rational_kernel_vector",
    "echelon_pivots",
    "reduced_rows",
    "reduce_bits",
]

IntVector = tuple[int, ...]


def _lowest_set_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class F2Vector:
    """A vector over GF(2); bit ``j`` of ``bits`` is coordinate ``j``."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("vector length must be at least 1")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError("bits outside the declared length")

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> F2Vector:
        coords = list(coords)
        bits = 0
        for j, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError("coordinates must be 0 or 1")
            bits |= c << j
        return cls(len(coords), bits)

    @classmethod
    def from_string(cls, text: str) -> F2Vector:
        """Parse a row of '0'/'1' characters; character ``i`` is coordinate ``i``."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a 0/1 row: {text!r}")
        return cls.from_coords(int(ch) for ch in text)

    @classmethod
    def zero(cls, length: int) -> F2Vector:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> F2Vector:
        return cls(length, (1 << length) - 1)

    @classmethod
    def unit(cls, length: int, j: int) -> F2Vector:
        if not 0 <= j < length:
            raise ValueError("unit coordinate out of range")
        return cls(length, 1 << j)

    def coord(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError("coordinate out of range")
        return (self.bits >> j) & 1

    def coords(self) -> IntVector:
        return tuple((self.bits >> j) & 1 for j in range(self.length))

    def support(self) -> IntVector:
        """Sorted indices of the nonzero coordinates."""
        out: list[int] = []
        b = self.bits
        while b:
            j = _lowest_set_bit(b)
            out.append(j)
            b &= b - 1
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: F2Vector) -> F2Vector:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return F2Vector(self.length, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))


@dataclass(frozen=True)
class F2Matrix:
    """A matrix over GF(2); each row is a bit-packed int."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        if self.cols < 1:
            raise ValueError("matrix must have at least one column")
        limit = 1 << self.cols
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError("row outside the declared width")

    @classmethod
    def from_vectors(cls, vectors: Iterable[F2Vector], cols: int | None = None) -> F2Matrix:
        vecs = list(vectors)
        if not vecs:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            return cls((), cols)
        width = vecs[0].length
        if any(v.length != width for v in vecs):
            raise ValueError("rows have mixed lengths")
        if cols is not None and cols != width:
            raise ValueError("declared column count disagrees with the rows")
        return cls(tuple(v.bits for v in vecs), width)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> F2Matrix:
        return cls.from_vectors([F2Vector.from_string(s) for s in rows])

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(tuple(1 << j for j in range(n)), n)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.cols, self.rows[i])

    def row_vectors(self) -> tuple[F2Vector, ...]:
        return tuple(F2Vector(self.cols, r) for r in self.rows)

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.num_rows))


def weight(v: F2Vector) -> int:
    """Hamming weight."""
    return v.bits.bit_count()


def dot(v: F2Vector, w: F2Vector) -> int:
    """GF(2) inner product."""
    if v.length != w.length:
        raise ValueError("length mismatch")
    return (v.bits & w.bits).bit_count() & 1


def cw_product(v: F2Vector, w: F2Vector) -> F2Vector:
    """Coordinatewise product (logical AND of the two rows)."""
    if v.length != w.length:
        raise ValueError("length mismatch")
    return F2Vector(v.length, v.bits & w.bits)


def echelon_pivots(rows: Iterable[int]) -> dict[int, int]:
    """Row-echelon pivots of bit-packed rows.

    Returns a map from pivot column to an echelon row whose lowest set
    bit is that column.  Rows are inserted in order, each reduced against
    the pivots found so far, so the result is deterministic.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        cur = r
        while cur:
            c = _lowest_set_bit(cur)
            p = pivots.get(c)
            if p is None:
                pivots[c] = cur
                break
            cur ^= p
    return pivots


def reduce_bits(bits: int, pivots: dict[int, int]) -> int:
    """Residue of a bit-packed row after elimination against echelon pivots.

    The residue is zero exactly when ``bits`` lies in the row space of the
    pivot rows.
    """
    cur = bits
    while True:
        scan = cur
        hit = -1
        while scan:
            c = _lowest_set_bit(scan)
            if c in pivots:
                hit = c
                break
            scan &= scan - 1
        if hit < 0:
            return cur
        # clears the hit bit; only columns above it can toggle
        cur ^= pivots[hit]


def reduced_rows(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon rows and their pivot columns.

    Returns ``(rref_rows, pivot_cols)`` with both lists sorted by pivot
    column; zero rows are dropped.  Pivot choice is the lowest column
    index with a nonzero entry, which makes the output the canonical
    reduced basis of the row space.
    """
    pivots = echelon_pivots(rows)
    cols_desc = sorted(pivots, reverse=True)
    for c in cols_desc:
        row = pivots[c]
        for b in cols_desc:
            if b <= c:
                break
            if (row >> b) & 1:
                row ^= pivots[b]
        pivots[c] = row
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


class RowReduction(NamedTuple):
    reduced: "F2Matrix"
    rank: int
    pivot_columns: tuple[int, ...]


def row_reduce(m: F2Matrix) -> RowReduction:
    """Reduced row-echelon form over GF(2).

    The reduced matrix keeps the input row count, with zero rows at the
    bottom; ``rank`` is the number of nonzero rows.  Deterministic and
    idempotent.
    """
    rref, pivot_cols = reduced_rows(m.rows)
    padded = tuple(rref) + (0,) * (m.num_rows - len(rref))
    return RowReduction(F2Matrix(padded, m.cols), len(rref), tuple(pivot_cols))


def kernel_basis(m: F2Matrix) -> F2Matrix:
    """A basis of the right kernel ``{x : m x = 0}`` as matrix rows.

    One basis row per free column, in increasing free-column order; a
    full-rank matrix yields a matrix with no rows.
    """
    rref, pivot_cols = reduced_rows(m.rows)
    pivot_set = set(pivot_cols)
    basis: list[int] = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        bits = 1 << f
        for prow, pcol in zip(rref, pivot_cols):
            if (prow >> f) & 1:
                bits |= 1 << pcol
        basis.append(bits)
    return F2Matrix(tuple(basis), m.cols)


def _int_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    mat = [list(map(int, r)) for r in rows]
    if mat:
        width = len(mat[0])
        if width == 0 or any(len(r) != width for r in mat):
            raise ValueError("rows must be nonempty and of equal length")
    return mat


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix.

    Uses fraction-free (Bareiss) elimination: every intermediate entry is
    an exact integer minor, and each division is exact.
    """
    mat = _int_rows(rows)
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    prev = 1
    pr = 0
    for col in range(ncols):
        piv = next((r for r in range(pr, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[pr], mat[piv] = mat[piv], mat[pr]
        p = mat[pr][col]
        prow = mat[pr]
        for r in range(pr + 1, len(mat)):
            row = mat[r]
            factor = row[col]
            for c in range(col, ncols):
                num = p * row[c] - factor * prow[c]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                row[c] = q
        prev = p
        rank += 1
        pr += 1
        if pr == len(mat):
            break
    return rank


class RationalEchelon:
    """Incremental reduced row echelon over the rationals.

    Rows are added one at a time; ``add_row`` reports whether the rank
    grew, which supports early exit in enumeration sweeps.  All
    arithmetic is exact ``Fraction`` arithmetic.
    """

    def __init__(self, cols: int):
        if cols < 1:
            raise ValueError("need at least one column")
        self.cols = cols
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add_row(self, row: Sequence[int | Fraction]) -> bool:
        if len(row) != self.cols:
            raise ValueError("row width mismatch")
        vec = [Fraction(x) for x in row]
        for prow, p in zip(self._rows, self._pivots):
            if vec[p]:
                coef = vec[p]
                vec = [a - coef * b for a, b in zip(vec, prow)]
        piv = next((j for j, a in enumerate(vec) if a), None)
        if piv is None:
            return False
        inv = vec[piv]
        vec = [a / inv for a in vec]
        for i, prow in enumerate(self._rows):
            if prow[piv]:
                coef = prow[piv]
                self._rows[i] = [a - coef * b for a, b in zip(prow, vec)]
        pos = bisect_left(self._pivots, piv)
        self._pivots.insert(pos, piv)
        self._rows.insert(pos, vec)
        return True

    def kernel_vector(self) -> IntVector | None:
        """A normalized nonzero integer kernel vector, or None at full rank.

        Uses the lowest free column; entries are coprime integers with
        the first nonzero entry positive.
        """
        pivot_set = set(self._pivots)
        free = next((j for j in range(self.cols) if j not in pivot_set), None)
        if free is None:
            return None
        vec = [Fraction(0)] * self.cols
        vec[free] = Fraction(1)
        for prow, p in zip(self._rows, self._pivots):
            vec[p] = -prow[free]
        denom = 1
        for a in vec:
            denom = lcm(denom, a.denominator)
        ints = [int(a * denom) for a in vec]
        g = 0
        for a in ints:
            g = gcd(g, a)
        if g > 1:
            ints = [a // g for a in ints]
        first = next(a for a in ints if a)
        if first < 0:
            ints = [-a for a in ints]
        return tuple(ints)


def rational_kernel_vector(rows: Sequence[Sequence[int]], cols: int) -> IntVector | None:
    """Normalized integer vector in the rational right kernel, or None."""
    ech = RationalEchelon(cols)
    for r in rows:
        ech.add_row(r)
    return ech.kernel_vector()
