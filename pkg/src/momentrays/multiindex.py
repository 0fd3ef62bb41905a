"""Graded lexicographic multi-index tables.

A multi-index is a tuple of nonnegative integer exponents, one per variable.
Tables enumerate either all multi-indices of exact total degree d or all of
total degree at most d, sorted by total degree ascending and, within each
degree, lexicographically descending (so for n = 2, degree 2 the order is
(2,0), (1,1), (0,2)).  This is the single ordering used everywhere in the
package: monomial vectors, moment matrix rows, and constraint grouping all
index against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["MultiIndexTable", "add", "binomial", "build_table", "graded_lex_key"]


def binomial(a: int, b: int) -> int:
    """Exact integer binomial coefficient, 0 when b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def add(alpha: tuple[int, ...], beta: tuple[int, ...]) -> tuple[int, ...]:
    """Componentwise sum of two multi-indices of equal length."""
    if len(alpha) != len(beta):
        raise ValueError(f"length mismatch: {len(alpha)} vs {len(beta)}")
    return tuple(a + b for a, b in zip(alpha, beta))


def graded_lex_key(alpha: tuple[int, ...]):
    """Sort key realizing the table order: degree ascending, lex descending."""
    return (sum(alpha), tuple(-a for a in alpha))


def _exact_degree(n: int, degree: int):
    """Yield multi-indices of exact total degree in lex-descending order."""
    if n == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _exact_degree(n - 1, degree - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MultiIndexTable:
    """Ordered multi-index set with O(1) position lookup.

    entries holds the multi-indices in graded lexicographic order; index_of
    maps each entry back to its position.  exponents is the same data as an
    integer array of shape (len(entries), n) for vectorized evaluation.
    """

    n: int
    d: int
    mode: str
    entries: tuple[tuple[int, ...], ...]
    index_of: dict[tuple[int, ...], int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def exponents(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64).reshape(len(self.entries), self.n)


def build_table(n: int, d: int, mode: str = "upto") -> MultiIndexTable:
    """Build the multi-index table for n variables.

    mode "exact" enumerates total degree d (size C(n+d-1, d)); mode "upto"
    enumerates total degree <= d (size C(n+d, d)).
    """
    if n < 1:
        raise ValueError(f"need at least one variable, got n={n}")
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got d={d}")
    if mode == "exact":
        degrees = [d]
    elif mode == "upto":
        degrees = list(range(d + 1))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    entries: list[tuple[int, ...]] = []
    for degree in degrees:
        entries.extend(_exact_degree(n, degree))
    index_of = {alpha: i for i, alpha in enumerate(entries)}
    return MultiIndexTable(n=n, d=d, mode=mode, entries=tuple(entries), index_of=index_of)
