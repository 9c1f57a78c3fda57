"""Exact rational helpers: parsing, canonical formatting, Gaussian elimination."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are rejected: they would silently smuggle rounding into an
    exact pipeline.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} {value!r} as an exact rational")


def format_fraction(value: Fraction) -> int | str:
    """Integers stay bare, everything else becomes a reduced ``"p/q"`` string."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def solve_columns(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> Matrix | None:
    """Solve ``A X = RHS`` where ``A`` is given column by column.

    ``rhs`` is a list of right-hand-side vectors. Returns the solution
    vectors (one per right-hand side) or ``None`` if ``A`` is singular.
    """
    size = len(columns)
    width = len(rhs)
    # augmented rows: [A | RHS]
    rows = [
        [columns[c][r] for c in range(size)] + [rhs[k][r] for k in range(width)]
        for r in range(size)
    ]
    total = size + width
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        if inv != 1:
            for c in range(col, total):
                if prow[c]:
                    prow[c] *= inv
        for r in range(size):
            if r == col:
                continue
            factor = rows[r][col]
            if factor == 0:
                continue
            row = rows[r]
            for c in range(col, total):
                if prow[c]:
                    row[c] -= factor * prow[c]
    return [[rows[r][size + k] for r in range(size)] for k in range(width)]


def identity(size: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def lex_positive(vector: Sequence[Fraction]) -> bool:
    """True if the first nonzero entry is positive (zero vector is not)."""
    for value in vector:
        if value:
            return value > 0
    return False
