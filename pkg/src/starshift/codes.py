"""Binary linear codes over GF(2).

A code is stored through the canonical reduced-echelon generator basis,
so equal subspaces compare equal structurally.  The module covers duals,
weight classification, coordinatewise-product closure between a pair of
codes, the integer support-sum pairing, and the integral non-degeneracy
certificate with explicit rational kernel witnesses.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gf2
from .errors import CodeFileError, DegenerateCodeError, GuardExceededError
from .gf2 import F2Matrix, F2Vector, IntVector

__all__ = [
    "ENUMERATION_GUARD_DIM",
    "HAMMING8_GENERATORS",
    "BinaryCode",
    "NondegeneracyCertificate",
    "code_from_generators",
    "dual",
    "is_self_orthogonal",
    "weight_class",
    "contains_all_ones",
    "contains_vector",
    "is_subcode",
    "support_sum",
    "codewords",
    "codewords_by_weight",
    "is_integrally_nondegenerate",
    "nondegeneracy_witness",
    "star_closure_check",
    "direct_sum",
    "even_weight_code",
    "hamming8_code",
    "full_code",
    "repetition_code",
    "standard_code",
    "parse_generator_file",
    "render_generator_file",
]

# Exhaustive codeword sweeps cover 2^dim words; refuse anything larger.
ENUMERATION_GUARD_DIM = 24

# Generator rows of the self-dual doubly even [8, 4] code (the extended
# Hamming code), kept verbatim as the reference presentation.
HAMMING8_GENERATORS = ("11110000", "00111100", "00001111", "10101010")


@dataclass(frozen=True)
class BinaryCode:
    """A linear code, held as its canonical reduced-echelon basis.

    Build instances through :func:`code_from_generators`; the constructor
    only validates that the supplied basis really is canonical.
    """

    length: int
    basis: F2Matrix

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("code length must be at least 1")
        if self.basis.cols != self.length:
            raise ValueError("basis width disagrees with code length")
        rows = self.basis.rows
        prev_pivot = -1
        for r in rows:
            if r == 0:
                raise ValueError("canonical basis cannot contain zero rows")
            pivot = (r & -r).bit_length() - 1
            if pivot <= prev_pivot:
                raise ValueError("basis rows must have strictly increasing pivots")
            prev_pivot = pivot
        for i, r in enumerate(rows):
            pivot = (r & -r).bit_length() - 1
            for j, other in enumerate(rows):
                if i != j and (other >> pivot) & 1:
                    raise ValueError("basis is not fully reduced")

    @property
    def dim(self) -> int:
        return self.basis.num_rows

    def __str__(self) -> str:
        if self.dim == 0:
            return f"<zero code, length {self.length}>"
        return str(self.basis)


@dataclass(frozen=True)
class NondegeneracyCertificate:
    """Outcome of the integral non-degeneracy test.

    ``kernel_witness`` is populated exactly when ``verdict`` is False: a
    nonzero integer vector n with support_sum(n, v) = 0 for every
    codeword v.
    """

    verdict: bool
    kernel_witness: IntVector | None = None


def code_from_generators(
    rows: F2Matrix | Iterable[F2Vector] | Iterable[str],
    length: int | None = None,
) -> BinaryCode:
    """Canonicalize arbitrary generator rows into a code.

    Accepts a matrix, vectors, or '0'/'1' strings.  Dependent and zero
    rows are dropped by the reduction.
    """
    if isinstance(rows, F2Matrix):
        m = rows
    else:
        rows = list(rows)
        if rows and isinstance(rows[0], str):
            m = F2Matrix.from_strings(rows)  # type: ignore[arg-type]
        else:
            m = F2Matrix.from_vectors(rows, cols=length)  # type: ignore[arg-type]
    if length is not None and m.cols != length:
        raise ValueError("declared length disagrees with the generator rows")
    rref, _ = gf2.reduced_rows(m.rows)
    return BinaryCode(m.cols, F2Matrix(tuple(rref), m.cols))


def dual(c: BinaryCode) -> BinaryCode:
    """The dual code, every vector orthogonal to all of ``c``."""
    kernel = gf2.kernel_basis(F2Matrix(c.basis.rows, c.length))
    return code_from_generators(kernel)


def is_self_orthogonal(c: BinaryCode) -> bool:
    """Whether every pair of codewords (including equal pairs) is orthogonal."""
    rows = c.basis.row_vectors()
    return all(gf2.dot(v, w) == 0 for i, v in enumerate(rows) for w in rows[i:])


@functools.lru_cache(maxsize=None)
def _pivot_map(c: BinaryCode) -> dict[int, int]:
    return {(r & -r).bit_length() - 1: r for r in c.basis.rows}


def contains_vector(c: BinaryCode, v: F2Vector) -> bool:
    if v.length != c.length:
        raise ValueError("length mismatch")
    return gf2.reduce_bits(v.bits, _pivot_map(c)) == 0


def contains_all_ones(c: BinaryCode) -> bool:
    return contains_vector(c, F2Vector.ones(c.length))


def is_subcode(inner: BinaryCode, outer: BinaryCode) -> bool:
    if inner.length != outer.length:
        raise ValueError("length mismatch")
    return all(contains_vector(outer, v) for v in inner.basis.row_vectors())


def codewords(c: BinaryCode) -> Iterable[F2Vector]:
    """All codewords, in Gray-code enumeration order (the zero word first)."""
    if c.dim > ENUMERATION_GUARD_DIM:
        raise GuardExceededError(
            f"codeword enumeration needs 2^{c.dim} words, guard is 2^{ENUMERATION_GUARD_DIM}"
        )
    rows = c.basis.rows
    cur = 0
    yield F2Vector(c.length, 0)
    prev_gray = 0
    for k in range(1, 1 << c.dim):
        gray = k ^ (k >> 1)
        changed = gray ^ prev_gray
        cur ^= rows[changed.bit_length() - 1]
        prev_gray = gray
        yield F2Vector(c.length, cur)


@functools.lru_cache(maxsize=None)
def codewords_by_weight(c: BinaryCode) -> tuple[F2Vector, ...]:
    """All codewords sorted by (weight, numeric bit pattern)."""
    return tuple(sorted(codewords(c), key=lambda v: (gf2.weight(v), v.bits)))


def weight_class(c: BinaryCode) -> str:
    """Classify all codeword weights: 'doubly-even', 'even', or 'neither'.

    A doubly even pairwise-orthogonal basis settles 'doubly-even' without
    enumeration; otherwise every codeword is inspected, subject to the
    enumeration guard.
    """
    rows = c.basis.row_vectors()
    if all(gf2.weight(v) % 4 == 0 for v in rows) and all(
        gf2.dot(rows[i], rows[j]) == 0 for i in range(len(rows)) for j in range(i + 1, len(rows))
    ):
        return "doubly-even"
    all_doubly = True
    all_even = True
    for v in codewords(c):
        w = gf2.weight(v)
        if w % 4:
            all_doubly = False
        if w % 2:
            all_even = False
            break
    if all_doubly:
        return "doubly-even"
    return "even" if all_even else "neither"


def support_sum(n: Sequence[int], v: F2Vector) -> int:
    """Sum of the entries of the integer vector ``n`` over the support of ``v``."""
    if len(n) != v.length:
        raise ValueError("length mismatch")
    return sum(n[j] for j in v.support())


@functools.lru_cache(maxsize=None)
def is_integrally_nondegenerate(c: BinaryCode) -> NondegeneracyCertificate:
    """Exact non-degeneracy certificate for the support-sum pairing.

    The code is integrally non-degenerate when for every nonzero integer
    vector n some codeword v has support_sum(n, v) != 0; equivalently the
    codeword supports span all of Q^length.  Codewords are swept in
    increasing weight with early exit once the rational rank fills up.

    Returns:
        A certificate whose ``kernel_witness`` on failure is annihilated
        by every codeword support.
    """
    ech = gf2.RationalEchelon(c.length)
    for v in codewords_by_weight(c):
        if v.is_zero:
            continue
        if ech.add_row(v.coords()) and ech.rank == c.length:
            return NondegeneracyCertificate(True, None)
    witness = ech.kernel_vector()
    assert witness is not None
    return NondegeneracyCertificate(False, witness)


def nondegeneracy_witness(c: BinaryCode, n: Sequence[int]) -> F2Vector:
    """First codeword (by increasing weight, then bit pattern) separating ``n``.

    Raises:
        ValueError: if ``n`` is zero or has the wrong length.
        DegenerateCodeError: if no codeword separates ``n``; the error
            carries the rational kernel witness of the code.
    """
    n = tuple(int(x) for x in n)
    if len(n) != c.length:
        raise ValueError("length mismatch")
    if all(x == 0 for x in n):
        raise ValueError("the zero vector has no separating codeword")
    for v in codewords_by_weight(c):
        if support_sum(n, v) != 0:
            return v
    cert = is_integrally_nondegenerate(c)
    raise DegenerateCodeError(
        f"no codeword separates n={n}; the code is integrally degenerate",
        kernel_witness=cert.kernel_witness,
    )


def star_closure_check(c: BinaryCode, c_prime: BinaryCode) -> bool:
    """Whether every coordinatewise product of codewords of ``c`` lies in ``c_prime``.

    The product is bilinear over GF(2), so checking all pairs of basis
    rows of ``c`` suffices.
    """
    if c.length != c_prime.length:
        raise ValueError("length mismatch")
    rows = c.basis.row_vectors()
    return all(
        contains_vector(c_prime, gf2.cw_product(rows[i], rows[j]))
        for i in range(len(rows))
        for j in range(i, len(rows))
    )


def direct_sum(c1: BinaryCode, c2: BinaryCode) -> BinaryCode:
    """Block-diagonal sum on disjoint coordinate blocks."""
    shifted = [r << c1.length for r in c2.basis.rows]
    rows = list(c1.basis.rows) + shifted
    return code_from_generators(F2Matrix(tuple(rows), c1.length + c2.length))


def even_weight_code(d: int) -> BinaryCode:
    """All even-weight vectors of length ``d`` (dimension d - 1); needs d >= 2."""
    if d < 2:
        raise ValueError("the even-weight code needs length at least 2")
    rows = [1 | (1 << j) for j in range(1, d)]
    return code_from_generators(F2Matrix(tuple(rows), d))


def hamming8_code() -> BinaryCode:
    """The self-dual doubly even [8, 4] code, from its reference generator rows."""
    return code_from_generators(HAMMING8_GENERATORS)


def full_code(d: int) -> BinaryCode:
    """The whole space GF(2)^d."""
    return code_from_generators(F2Matrix.identity(d))


def repetition_code(d: int) -> BinaryCode:
    """The code {0, all-ones} of length ``d``."""
    return code_from_generators(F2Matrix(((1 << d) - 1,), d))


def standard_code(kind: str, d: int | None = None) -> BinaryCode:
    """Named example codes: 'even', 'hamming8', 'full', 'repetition'."""
    if kind == "hamming8":
        if d not in (None, 8):
            raise ValueError("the hamming8 code has length 8")
        return hamming8_code()
    if d is None:
        raise ValueError(f"kind {kind!r} needs an explicit length")
    if kind == "even":
        return even_weight_code(d)
    if kind == "full":
        return full_code(d)
    if kind == "repetition":
        return repetition_code(d)
    raise ValueError(f"unknown code kind {kind!r}")


def parse_generator_file(text: str) -> BinaryCode:
    """Parse a generator file: one 0/1 row per line.

    Blank lines and lines starting with '#' are ignored.  All rows must
    have the same length; parse errors name the offending line.
    """
    rows: list[str] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if any(ch not in "01" for ch in line):
            raise CodeFileError(f"line {lineno}: expected only '0' and '1', got {line!r}")
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise CodeFileError(
                f"line {lineno}: row length {len(line)} differs from earlier rows of length {width}"
            )
        rows.append(line)
    if not rows:
        raise CodeFileError("no generator rows found")
    return code_from_generators(rows)


def render_generator_file(c: BinaryCode, header: str | None = None) -> str:
    """Render the canonical basis in generator-file format."""
    lines = []
    if header:
        lines.append(f"# {header}")
    lines.extend(str(v) for v in c.basis.row_vectors())
    if c.dim == 0:
        lines.append(f"# zero code of length {c.length}: no generator rows")
        lines.append("0" * c.length)
    return "\n".join(lines) + "\n"
