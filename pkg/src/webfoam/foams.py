"""Closed-foam evaluations: dotted spheres and dotted theta foams.

The two closed-foam families evaluate to elements of the Laurent ring.
A sphere with m dots evaluates to 0 for m < 2, to 1 for m = 2, and each
further pair of dots contributes a factor of the distinguished element P.
A theta foam (three disks sharing a circle) with dots (m1, m2, m3)
vanishes when all three counts are positive, when the total is even, or
when the total is below three; the base case (0, 1, 2) evaluates to 1
and any entry of size at least 3 can be reduced by 2 at the cost of a
factor of P.

The reduction here always sorts descending and reduces the largest
entry.  The rules are order-independent (reducing any entry >= 3 gives
the same value); the test suite confirms this exhaustively rather than
assuming it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .laurent import LaurentPoly, ONE, P, ZERO

__all__ = [
    "DottedSphere",
    "DottedTheta",
    "eval_sphere",
    "eval_theta",
    "pairing_matrix",
    "THETA_BASIS_DOTS",
]

#: Dot triples indexing the rank-6 pairing: first entry 0, middle in
#: {0, 1}, last in {0, 1, 2}.
THETA_BASIS_DOTS: tuple[tuple[int, int, int], ...] = tuple(
    (0, m, n) for m in (0, 1) for n in (0, 1, 2)
)


@dataclass(frozen=True)
class DottedSphere:
    """A 2-sphere carrying ``dots`` dots."""

    dots: int

    def __post_init__(self):
        if self.dots < 0:
            raise ValueError("dot count must be nonnegative")

    def evaluate(self) -> LaurentPoly:
        return eval_sphere(self.dots)


@dataclass(frozen=True)
class DottedTheta:
    """Three disks with a common boundary circle, carrying dots per disk."""

    dots: tuple[int, int, int]

    def __post_init__(self):
        if any(m < 0 for m in self.dots):
            raise ValueError("dot counts must be nonnegative")

    def evaluate(self) -> LaurentPoly:
        return eval_theta(*self.dots)


def eval_sphere(m: int) -> LaurentPoly:
    """Evaluation of the m-dotted sphere: 0, 0, 1, then P per extra dot pair.

    >>> print(eval_sphere(2))
    1
    >>> eval_sphere(5) == ZERO
    True
    >>> eval_sphere(6) == P * P
    True
    """
    if m < 0:
        raise ValueError("dot count must be nonnegative")
    if m % 2 == 1 or m == 0:
        return ZERO
    return P ** (m // 2 - 1)


@functools.lru_cache(maxsize=None)
def _eval_theta_sorted(triple: tuple[int, int, int]) -> LaurentPoly:
    a, b, c = triple  # descending
    if c > 0 or (a + b + c) % 2 == 0 or a + b + c < 3:
        return ZERO
    if triple == (2, 1, 0):
        return ONE
    return P * _eval_theta_sorted(tuple(sorted((a - 2, b, c), reverse=True)))


def eval_theta(m1: int, m2: int, m3: int) -> LaurentPoly:
    """Evaluation of the theta foam with the given dot counts.

    Symmetric in its arguments; every nonzero value is a power of P.

    >>> print(eval_theta(0, 1, 2))
    1
    >>> eval_theta(1, 1, 1) == ZERO
    True
    >>> eval_theta(0, 3, 4) == P * P
    True
    """
    if m1 < 0 or m2 < 0 or m3 < 0:
        raise ValueError("dot counts must be nonnegative")
    return _eval_theta_sorted(tuple(sorted((m1, m2, m3), reverse=True)))


def pairing_matrix(
    left_dots: tuple[tuple[int, int, int], ...] = THETA_BASIS_DOTS,
    right_dots: tuple[tuple[int, int, int], ...] = THETA_BASIS_DOTS,
) -> list[list[LaurentPoly]]:
    """Gram matrix of theta evaluations between two dotted families.

    Entry (i, j) is the evaluation of the theta foam whose dot counts
    are the componentwise sum of ``left_dots[i]`` and ``right_dots[j]``.
    For the standard six-element families the matrix is unimodular.
    """
    for dots in (*left_dots, *right_dots):
        if dots not in THETA_BASIS_DOTS:
            raise ValueError(
                f"dot triple {dots} is outside the pairing index set "
                f"{{(0, m, n): m in {{0,1}}, n in {{0,1,2}}}}"
            )
    return [
        [eval_theta(a[0] + v[0], a[1] + v[1], a[2] + v[2]) for v in right_dots]
        for a in left_dots
    ]
