"""Differential modules over the Laurent ring and their rank/torsion data.

A differential module is a free module of finite rank with a square-zero
endomorphism.  There is no homological grading; a two-term complex
``A: R^a -> R^b`` embeds as the square-zero block matrix
``((0, A), (0, 0))`` on ``R^(b+a)``.

Three quantities are computed exactly:

* the homology rank over the fraction field, ``n - 2*rank(d)``;
* the homology dimension over F2 after evaluating every entry at
  T1 = T2 = T3 = 1, which can only be larger;
* after substituting ``T_i = 1 + c_i t`` along a line direction, the
  Smith normal form over F2[t] of the cleared differential, whose
  positive diagonal t-valuations are the torsion exponents ``a_i`` of
  the homology over the local ring.  With ``r`` the free rank and ``l``
  the number of torsion summands, the specialized dimension satisfies
  ``f2_dim = r + 2*l``; the identity is asserted on every analysis.

Shipped models: the mapping cone of P times the identity on R^2 (pure
torsion, two summands with exponent 4), and the rank-6 cone of
``u^2 + P`` on the circle model (free of rank 4).  A seeded generator
produces random square-zero modules for the property suites.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import InputError, InternalConsistencyError, ValidationError
from .laurent import (
    LaurentPoly,
    P,
    UnivariateRational,
    ZERO,
    eval_at_ones,
    gf2_mul,
    gf2_pow,
    gf2_valuation,
    m_adic_order,
    substitute_line,
)
from . import linalg
from .linalg import Matrix
from .operators import unknot_module

__all__ = [
    "DifferentialModule",
    "SpecializationReport",
    "OrderFourCertificate",
    "DIRECTIONS",
    "cone_of_p",
    "linked_handcuffs_model",
    "random_complex",
    "order_four_certificate",
    "complex_from_dict",
    "complex_to_dict",
    "load_complex",
]

#: The two shipped substitution directions.
DIRECTIONS: tuple[tuple[int, int, int], ...] = ((1, 1, 1), (1, 1, 0))


@dataclass(frozen=True)
class SpecializationReport:
    """Rank and torsion data of a differential module along a line."""

    direction: tuple[int, int, int]
    frac_rank: int
    f2_dim: int
    r: int
    l: int
    torsion_exponents: tuple[int, ...]
    degenerate_direction: bool

    def to_dict(self) -> dict:
        return {
            "direction": ",".join(str(c) for c in self.direction),
            "frac_rank": self.frac_rank,
            "f2_dim": self.f2_dim,
            "r": self.r,
            "l": self.l,
            "torsion_exponents": list(self.torsion_exponents),
            "degenerate_direction": self.degenerate_direction,
        }


class DifferentialModule:
    """Free module over the Laurent ring with a square-zero endomorphism."""

    __slots__ = ("rank", "differential", "two_term")

    def __init__(
        self,
        rank: int,
        differential: Sequence[Sequence[LaurentPoly]],
        two_term: tuple[int, int, Matrix] | None = None,
    ):
        if rank < 0:
            raise ValidationError("rank must be nonnegative")
        d = [list(row) for row in differential]
        if len(d) != rank or any(len(row) != rank for row in d):
            raise ValidationError(f"differential must be {rank}x{rank}")
        if not linalg.is_zero_matrix(linalg.mat_mul(d, d)):
            raise ValidationError("differential does not square to zero")
        self.rank = rank
        self.differential = d
        self.two_term = two_term

    @classmethod
    def from_map(cls, a: Sequence[Sequence[LaurentPoly]]) -> "DifferentialModule":
        """Mapping cone of ``a: R^cols -> R^rows`` as a square-zero block."""
        rows = len(a)
        cols = len(a[0]) if rows else 0
        n = rows + cols
        d = linalg.zeros(n, n)
        for i in range(rows):
            for j in range(cols):
                d[i][rows + j] = a[i][j]
        return cls(n, d, two_term=(rows, cols, [list(r) for r in a]))

    # -- rank computations -------------------------------------------

    def frac_rank(self, seed: int = 0) -> int:
        """Homology rank over the fraction field: n - 2*rank(d).

        The differential's rank runs through both the exact and the
        randomized route (they must agree).
        """
        return self.rank - 2 * linalg.fraction_rank(self.differential, seed=seed)

    def two_term_ranks(self, seed: int = 0) -> tuple[int, int]:
        """(kernel rank, cokernel rank) of the underlying map over Frac(R)."""
        if self.two_term is None:
            raise ValueError("module was not built from a two-term map")
        rows, cols, a = self.two_term
        rank_a = linalg.fraction_rank(a, seed=seed)
        return cols - rank_a, rows - rank_a

    def f2_dim(self) -> int:
        """Homology dimension over F2 after evaluating at T = (1, 1, 1)."""
        packed = []
        for row in self.differential:
            bits = 0
            for j, x in enumerate(row):
                if eval_at_ones(x):
                    bits |= 1 << j
            packed.append(bits)
        return self.rank - 2 * linalg.rank_f2(packed)

    def bockstein(self, direction: tuple[int, int, int]) -> SpecializationReport:
        """Torsion analysis along a substitution direction.

        The substituted differential is cleared to a matrix over F2[t]
        by a common unit at t = 0; the positive t-valuations on the
        Smith diagonal are the torsion exponents.
        """
        if direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        substituted: list[list[UnivariateRational]] = [
            [substitute_line(x, direction) for x in row]  # type: ignore[misc]
            for row in self.differential
        ]
        max_k = 0
        for row in substituted:
            for x in row:
                k = x.den.bit_length() - 1
                if x.den != gf2_pow(0b11, k):
                    raise InternalConsistencyError(
                        "denominator after line substitution is not a power of 1+t"
                    )
                max_k = max(max_k, k)
        cleared = [
            [
                gf2_mul(x.num, gf2_pow(0b11, max_k - (x.den.bit_length() - 1)))
                for x in row
            ]
            for row in substituted
        ]
        diag = linalg.smith_normal_form(cleared)
        valuations = [gf2_valuation(d) for d in diag]
        if any(v is math.inf for v in valuations):
            raise InternalConsistencyError("zero entry on the Smith diagonal")
        torsion = tuple(sorted(v for v in valuations if v > 0))
        r = self.rank - 2 * len(diag)
        l = len(torsion)
        f2 = self.f2_dim()
        if f2 != r + 2 * l:
            raise InternalConsistencyError(
                f"universal-coefficient identity violated: "
                f"f2_dim {f2} != {r} + 2*{l}"
            )
        fr = self.frac_rank()
        if r < fr:
            raise InternalConsistencyError(
                f"free rank {r} after substitution is below the generic rank {fr}"
            )
        return SpecializationReport(
            direction=direction,
            frac_rank=fr,
            f2_dim=f2,
            r=r,
            l=l,
            torsion_exponents=torsion,
            degenerate_direction=r > fr,
        )


def cone_of_p() -> DifferentialModule:
    """Mapping cone of P times the identity on R^2: pure torsion."""
    a = [[P, ZERO], [ZERO, P]]
    return DifferentialModule.from_map(a)


def linked_handcuffs_model() -> DifferentialModule:
    """Cone of u^2 + P on the rank-3 circle model.

    The map has rank 1 over the fraction field, so kernel and cokernel
    are each of rank 2 and the homology is free of rank 4 with no
    torsion in either shipped direction.
    """
    u = unknot_module().operator("e")
    a = linalg.mat_add(linalg.mat_mul(u, u), linalg.mat_scale(P, linalg.identity(3)))
    return DifferentialModule.from_map(a)


def random_complex(seed: int, size: int) -> DifferentialModule:
    """Seeded random square-zero module of the given rank (at most 12).

    Built as a mapping cone of a sparse random matrix over the ring,
    then conjugated by random elementary matrices with monomial
    multipliers; conjugation preserves squaring to zero and all the
    homological invariants of interest.
    """
    if size < 2 or size > 12:
        raise ValueError("size must be between 2 and 12")
    rng = random.Random(seed)
    rows = rng.randint(1, size - 1)
    cols = size - rows

    def random_entry() -> LaurentPoly:
        if rng.random() < 0.45:
            return ZERO
        acc = ZERO
        for _ in range(rng.randint(1, 2)):
            acc = acc + LaurentPoly.monomial(
                rng.randint(-1, 1), rng.randint(-1, 1), rng.randint(-1, 1)
            )
        return acc

    a = [[random_entry() for _ in range(cols)] for _ in range(rows)]
    n = rows + cols
    d = linalg.zeros(n, n)
    for i in range(rows):
        for j in range(cols):
            d[i][rows + j] = a[i][j]

    for _ in range(size):
        i, j = rng.sample(range(n), 2)
        c = LaurentPoly.monomial(
            rng.randint(-1, 1), rng.randint(-1, 1), rng.randint(-1, 1)
        )
        # conjugate by I + c*E_ij: row_i += c*row_j, then col_j += c*col_i
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        for row in d:
            row[j] = row[j] + c * row[i]
    return DifferentialModule(n, d)


@dataclass(frozen=True)
class OrderFourCertificate:
    """Computed evidence that P vanishes to order exactly 4 at (1,1,1)."""

    entries: tuple[tuple[str, str, bool], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, _, ok in self.entries)

    def __str__(self) -> str:
        return "\n".join(
            f"{'PASS' if ok else 'FAIL'}  {claim}: {got}"
            for claim, got, ok in self.entries
        )


def order_four_certificate() -> OrderFourCertificate:
    entries = []

    order = m_adic_order(P)
    entries.append(("order of vanishing of P at (1,1,1)", str(order), order == 4))

    series = substitute_line(P, "symbolic")
    k, lead = series.leading()
    expected_lead = (
        LaurentPoly.monomial(2, 2, 0)
        + LaurentPoly.monomial(2, 0, 2)
        + LaurentPoly.monomial(0, 2, 2)
    )
    entries.append(
        (
            "symbolic substitution T_i = 1 + z_i*t, leading term",
            f"({str(lead).replace('T', 'z')}) * t^{k}",
            (k, lead) == (4, expected_lead),
        )
    )

    img = substitute_line(P, (1, 1, 1))
    expected = UnivariateRational(0b10000, 0b11)  # t^4 / (1+t)
    entries.append(
        (
            "image of P along (1,1,1), exactly t^4/(1+t)",
            str(img),
            img == expected and img.valuation() == 4,
        )
    )

    img = substitute_line(P, (1, 1, 0))
    expected = UnivariateRational(0b10000, gf2_mul(0b11, 0b11))  # t^4 / (1+t)^2
    entries.append(
        (
            "image of P along (1,1,0), exactly t^4/(1+t)^2",
            str(img),
            img == expected and img.valuation() == 4,
        )
    )
    return OrderFourCertificate(tuple(entries))


# ---------------------------------------------------------------------------
# JSON input format for differential modules.
# ---------------------------------------------------------------------------


def complex_from_dict(data: object, source: str = "<complex>") -> DifferentialModule:
    def fail(path: str, message: str) -> InputError:
        return InputError(f"{source}: {path}: {message}")

    if not isinstance(data, dict):
        raise fail("$", "expected a JSON object")
    rank = data.get("rank")
    if not isinstance(rank, int) or rank < 0:
        raise fail("rank", "expected a nonnegative integer")
    rows = data.get("differential")
    if not isinstance(rows, list) or len(rows) != rank:
        raise fail("differential", f"expected a list of {rank} rows")
    parsed: Matrix = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != rank:
            raise fail(f"differential[{i}]", f"expected a list of {rank} entries")
        out = []
        for j, entry in enumerate(row):
            if not isinstance(entry, str):
                raise fail(f"differential[{i}][{j}]", "expected a string")
            try:
                out.append(LaurentPoly.parse(entry))
            except ValueError as exc:
                raise fail(f"differential[{i}][{j}]", str(exc)) from exc
        parsed.append(out)
    try:
        return DifferentialModule(rank, parsed)
    except ValidationError as exc:
        # structurally fine but semantically invalid: keep the distinction
        raise ValidationError(f"{source}: {exc}") from exc


def complex_to_dict(module: DifferentialModule) -> dict:
    return {
        "rank": module.rank,
        "differential": [[str(x) for x in row] for row in module.differential],
    }


def load_complex(path: str | Path) -> DifferentialModule:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return complex_from_dict(data, source=str(path))
