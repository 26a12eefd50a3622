"""Shared exception types."""

from __future__ import annotations


class GuardExceededError(RuntimeError):
    """A resource guard was exceeded (site count, constraint rows,
    enumeration size, or expansion budget)."""


class CodeFileError(ValueError):
    """A generator file failed to parse; the message names the offending line."""


class UnsupportedDimensionError(ValueError):
    """A construction was requested outside the dimension range it is defined for."""


class DegenerateCodeError(ValueError):
    """An operation required an integrally non-degenerate code.

    ``kernel_witness``, when present, is a nonzero integer vector whose
    support sum vanishes on every codeword.
    """

    def __init__(self, message: str, kernel_witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.kernel_witness = kernel_witness
