"""Exact arithmetic in the Laurent ring F2[T1^±1, T2^±1, T3^±1].

Because the coefficient field is F2, a Laurent polynomial is fully
determined by the set of exponent triples whose coefficient is 1, so a
:class:`LaurentPoly` stores a frozenset of ``(e1, e2, e3)`` integer
triples.  Addition is symmetric difference, multiplication is exponent
convolution with parity bookkeeping.  Values are immutable and hashable;
two values are equal exactly when their term sets are equal.

The module also provides the companion scalar domains used elsewhere in
the package:

* :class:`RationalFunction` -- the fraction field of the Laurent ring.
  Fractions are never reduced (there is no multivariate gcd here);
  equality is tested by cross-multiplication.
* univariate polynomials over F2 in a variable ``t``, represented as
  Python integers with bit ``k`` holding the coefficient of ``t**k``
  (functions :func:`gf2_mul`, :func:`gf2_divmod`, ...), and
  :class:`UnivariateRational` built on top of them.
* :class:`TruncatedSeries` -- power series in ``t`` truncated at a fixed
  order, with coefficients that are polynomials in auxiliary variables
  ``z1, z2, z3`` (stored as LaurentPoly values with nonnegative
  exponents).

The distinguished element ``P`` is the sum of the four monomials with
all exponents in {-1, +1} and an even number of -1 entries; see
:func:`p_monomials`.
"""

from __future__ import annotations

import itertools
import math
import re
from typing import Iterable, Iterator

Triple = tuple[int, int, int]

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "T1",
    "T2",
    "T3",
    "P",
    "p_monomials",
    "eval_at_ones",
    "m_adic_order",
    "poly_divexact",
    "RationalFunction",
    "TruncatedSeries",
    "UnivariateRational",
    "substitute_line",
    "gf2_mul",
    "gf2_divmod",
    "gf2_gcd",
    "gf2_pow",
    "gf2_valuation",
    "T_POWER_SERIES_DEFAULT_ORDER",
]

#: Default truncation order for symbolic line substitution: one past the
#: first order at which the image of P can fail to be visible.
T_POWER_SERIES_DEFAULT_ORDER = 6


class LaurentPoly:
    """A Laurent polynomial over F2 in three variables.

    >>> print(T1 + T2)
    T1 + T2
    >>> print(T1 * T1.inverse_monomial())
    1
    >>> P + P == ZERO
    True
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Triple] = ()):
        self.terms: frozenset[Triple] = frozenset(terms)
        self._hash: int | None = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def monomial(e1: int, e2: int, e3: int) -> "LaurentPoly":
        return LaurentPoly([(e1, e2, e3)])

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the textual term grammar used for serialization.

        Terms are joined by ``" + "``; a term is a ``*``-joined product
        of factors ``T1^e``, ``T2^e``, ``T3^e`` (``^1`` omitted, absent
        variables omitted), the constant monomial is ``1`` and the zero
        polynomial is ``0``.

        >>> LaurentPoly.parse("T1*T2^-1 + 1") == T1 * T2.inverse_monomial() + ONE
        True
        """
        text = text.strip()
        if text == "0":
            return ZERO
        terms: set[Triple] = set()
        pos = 0
        for chunk in text.split(" + "):
            exps = _parse_term(chunk, pos)
            if exps in terms:
                raise ValueError(
                    f"duplicate term {chunk!r} at position {pos}: "
                    "terms of a canonical F2 polynomial are distinct"
                )
            terms.add(exps)
            pos += len(chunk) + 3
        return cls(terms)

    # -- ring structure ----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(self.terms ^ other.terms)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self.terms) > len(other.terms):
            self, other = other, self
        acc: set[Triple] = set()
        for (a1, a2, a3) in self.terms:
            for (b1, b2, b3) in other.terms:
                acc ^= {(a1 + b1, a2 + b2, a3 + b3)}
        return LaurentPoly(acc)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a general Laurent polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of a single-term polynomial (the only units of the ring)."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the Laurent ring")
        ((e1, e2, e3),) = self.terms
        return LaurentPoly.monomial(-e1, -e2, -e3)

    # -- comparison / hashing ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- inspection ---------------------------------------------------

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def exponent_range(self) -> tuple[Triple, Triple]:
        """Componentwise (min, max) exponents; only valid for nonzero values."""
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        lo = tuple(min(t[i] for t in self.terms) for i in range(3))
        hi = tuple(max(t[i] for t in self.terms) for i in range(3))
        return lo, hi  # type: ignore[return-value]

    def shifted(self, e1: int, e2: int, e3: int) -> "LaurentPoly":
        """Multiply by the monomial T1^e1 T2^e2 T3^e3."""
        return LaurentPoly((a + e1, b + e2, c + e3) for (a, b, c) in self.terms)

    def sorted_terms(self) -> list[Triple]:
        """Terms in canonical order: lexicographic, descending."""
        return sorted(self.terms, reverse=True)

    # -- formatting ---------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for exps in self.sorted_terms():
            factors = [
                f"T{i + 1}^{e}" if e != 1 else f"T{i + 1}"
                for i, e in enumerate(exps)
                if e != 0
            ]
            rendered.append("*".join(factors) if factors else "1")
        return " + ".join(rendered)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


_FACTOR_RE = re.compile(r"^T([123])(?:\^(-?\d+))?$")


def _parse_term(chunk: str, pos: int) -> Triple:
    if chunk == "1":
        return (0, 0, 0)
    exps = [0, 0, 0]
    seen: set[int] = set()
    offset = pos
    for factor in chunk.split("*"):
        m = _FACTOR_RE.match(factor)
        if m is None:
            raise ValueError(
                f"bad factor {factor!r} at position {offset}: expected T1/T2/T3 "
                "with an optional integer exponent, '1', or '0'"
            )
        idx = int(m.group(1)) - 1
        if idx in seen:
            raise ValueError(f"variable T{idx + 1} repeated at position {offset}")
        seen.add(idx)
        exps[idx] = int(m.group(2)) if m.group(2) is not None else 1
        offset += len(factor) + 1
    return (exps[0], exps[1], exps[2])


ZERO = LaurentPoly()
ONE = LaurentPoly.monomial(0, 0, 0)
T1 = LaurentPoly.monomial(1, 0, 0)
T2 = LaurentPoly.monomial(0, 1, 0)
T3 = LaurentPoly.monomial(0, 0, 1)


def p_monomials() -> frozenset[LaurentPoly]:
    """The four monomials with exponents in {-1, +1} summing to ``P``.

    Each has an even number of negative exponents; no preferred ordering
    is exposed.  Their product is 1 and their sum is :data:`P`.
    """
    return frozenset(
        LaurentPoly.monomial(*signs)
        for signs in itertools.product((1, -1), repeat=3)
        if signs.count(-1) % 2 == 0
    )


P = LaurentPoly(
    [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
)


def eval_at_ones(p: LaurentPoly) -> int:
    """Evaluate at T1 = T2 = T3 = 1: an element of F2, returned as 0 or 1.

    Every monomial evaluates to 1, so the value is the parity of the
    number of terms.

    >>> eval_at_ones(P)
    0
    >>> eval_at_ones(T1 + T2 + T3)
    1
    """
    return len(p.terms) & 1


def m_adic_order(p: LaurentPoly) -> int | float:
    """Order of vanishing at (1, 1, 1): substitute T_i = 1 + eps_i.

    The polynomial is first multiplied by a monomial to make every
    exponent nonnegative (a unit of the local ring, so the order is
    unchanged), then expanded in F2[eps1, eps2, eps3] with the mod-2
    binomial theorem.  Returns the minimal total degree of a surviving
    term, or ``math.inf`` for the zero polynomial.

    >>> m_adic_order(P)
    4
    >>> m_adic_order(ONE + T1)
    1
    >>> m_adic_order(ZERO)
    inf
    """
    if not p.terms:
        return math.inf
    lo, _ = p.exponent_range()
    shifted = p.shifted(-lo[0], -lo[1], -lo[2])
    acc: set[Triple] = set()
    for (a1, a2, a3) in shifted.terms:
        # (1+eps)^a = sum over bitwise submasks k of a of eps^k (Lucas).
        for k1 in _submasks(a1):
            for k2 in _submasks(a2):
                for k3 in _submasks(a3):
                    acc ^= {(k1, k2, k3)}
    if not acc:
        return math.inf
    return min(k1 + k2 + k3 for (k1, k2, k3) in acc)


def _submasks(a: int) -> Iterator[int]:
    sub = a
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & a


def poly_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a / b in the Laurent ring; b must divide a.

    Both operands are shifted to plain polynomials, divided by leading
    terms in lexicographic order, and shifted back.  Raises ValueError
    if the division leaves a remainder.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ZERO
    lo_a, _ = a.exponent_range()
    lo_b, _ = b.exponent_range()
    aa = a.shifted(-lo_a[0], -lo_a[1], -lo_a[2]).terms
    bb = b.shifted(-lo_b[0], -lo_b[1], -lo_b[2]).terms
    lead_b = max(bb)
    rem = set(aa)
    quot: set[Triple] = set()
    while rem:
        lead_r = max(rem)
        m = (lead_r[0] - lead_b[0], lead_r[1] - lead_b[1], lead_r[2] - lead_b[2])
        if min(m) < 0:
            raise ValueError("inexact division of Laurent polynomials")
        quot ^= {m}
        for (b1, b2, b3) in bb:
            rem ^= {(b1 + m[0], b2 + m[1], b3 + m[2])}
    shift = (lo_a[0] - lo_b[0], lo_a[1] - lo_b[1], lo_a[2] - lo_b[2])
    return LaurentPoly(quot).shifted(*shift)


class RationalFunction:
    """An element of the fraction field of the Laurent ring.

    Fractions are kept unreduced; equality is by cross-multiplication.
    The localization R[1/P] consists of the values whose denominator is
    a power of ``P``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE):
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def of(p: LaurentPoly) -> "RationalFunction":
        return RationalFunction(p, ONE)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):  # pragma: no cover - unhashable by design
        raise TypeError("RationalFunction is not hashable (unreduced form)")

    def __bool__(self) -> bool:
        return bool(self.num)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


# ---------------------------------------------------------------------------
# Univariate polynomials over F2, packed into integers (bit k <-> t^k).
# ---------------------------------------------------------------------------


def gf2_mul(a: int, b: int) -> int:
    """Carry-less product of two F2[t] polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder in F2[t]."""
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length()
    quot = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        quot ^= 1 << shift
        a ^= b << shift
    return quot, a


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_divmod(a, b)[1]
    return a


def gf2_pow(a: int, n: int) -> int:
    result = 1
    while n:
        if n & 1:
            result = gf2_mul(result, a)
        a = gf2_mul(a, a)
        n >>= 1
    return result


def gf2_valuation(a: int) -> int | float:
    """t-adic valuation: index of the lowest set bit; inf for zero."""
    if a == 0:
        return math.inf
    return (a & -a).bit_length() - 1


class UnivariateRational:
    """An element of F2[t] localized at (t): num/den with den(0) != 0.

    Numerator and denominator are bit-packed F2[t] polynomials.  The
    t-adic valuation of the value is the valuation of the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not den & 1:
            raise ValueError("denominator must be a unit at t = 0")
        self.num = num
        self.den = den

    def __add__(self, other: "UnivariateRational") -> "UnivariateRational":
        if not isinstance(other, UnivariateRational):
            return NotImplemented
        return UnivariateRational(
            gf2_mul(self.num, other.den) ^ gf2_mul(other.num, self.den),
            gf2_mul(self.den, other.den),
        )

    def __mul__(self, other: "UnivariateRational") -> "UnivariateRational":
        if not isinstance(other, UnivariateRational):
            return NotImplemented
        return UnivariateRational(
            gf2_mul(self.num, other.num), gf2_mul(self.den, other.den)
        )

    def __truediv__(self, other: "UnivariateRational") -> "UnivariateRational":
        if not isinstance(other, UnivariateRational):
            return NotImplemented
        if other.num == 0:
            raise ZeroDivisionError
        v = gf2_valuation(other.num)
        num = gf2_mul(self.num, other.den)
        den = gf2_mul(self.den, other.num >> v)
        # A factor t^v in the divisor must be absorbed by the numerator,
        # or the quotient leaves the local ring.
        if v:
            if gf2_valuation(num) < v:
                raise ValueError("quotient has negative t-adic valuation")
            num >>= v
        return UnivariateRational(num, den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnivariateRational):
            return NotImplemented
        return gf2_mul(self.num, other.den) == gf2_mul(other.num, self.den)

    def __hash__(self):  # pragma: no cover - unhashable by design
        raise TypeError("UnivariateRational is not hashable (unreduced form)")

    def __bool__(self) -> bool:
        return self.num != 0

    def valuation(self) -> int | float:
        return gf2_valuation(self.num)

    def residue_at_zero(self) -> int:
        """Value in F2 of the function at t = 0."""
        return (self.num & 1) & 1  # den(0) = 1 always

    def __str__(self) -> str:
        num = _format_gf2(self.num)
        if self.den == 1:
            return num
        return f"({num}) / ({_format_gf2(self.den)})"

    def __repr__(self) -> str:
        return f"UnivariateRational({str(self)!r})"


def _format_gf2(a: int) -> str:
    if a == 0:
        return "0"
    parts = []
    k = 0
    while a:
        if a & 1:
            parts.append("1" if k == 0 else ("t" if k == 1 else f"t^{k}"))
        a >>= 1
        k += 1
    return " + ".join(parts)


class TruncatedSeries:
    """Power series in t modulo t^(order+1), coefficients in F2[z1,z2,z3].

    Coefficients are LaurentPoly values with nonnegative exponents (the
    z-variables reuse the triple-exponent representation).
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[LaurentPoly], order: int):
        coeffs = list(coeffs)
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) != order + 1:
            raise ValueError("need exactly order+1 coefficients")
        self.coeffs = tuple(coeffs)
        self.order = order

    @staticmethod
    def constant(c: LaurentPoly, order: int) -> "TruncatedSeries":
        return TruncatedSeries([c] + [ZERO] * order, order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_order(other)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_order(other)
        out = [ZERO] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, self.order)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires unit constant term."""
        if self.coeffs[0] != ONE:
            raise ValueError("series with non-unit constant term is not invertible")
        inv = [ONE] + [ZERO] * self.order
        for k in range(1, self.order + 1):
            # coefficient k of (self * inv) must vanish
            acc = ZERO
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * inv[k - i]
            inv[k] = acc  # constant term is 1, so no division needed
        return TruncatedSeries(inv, self.order)

    def __pow__(self, n: int) -> "TruncatedSeries":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = TruncatedSeries.constant(ONE, self.order)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def leading(self) -> tuple[int, LaurentPoly]:
        """First nonzero coefficient as ``(t-exponent, coefficient)``.

        Raises ValueError when every stored coefficient vanishes: the
        truncation order is then too small to certify a nonzero leading
        term.
        """
        for k, c in enumerate(self.coeffs):
            if c:
                return k, c
        raise ValueError(
            f"series vanishes to order {self.order}; "
            "increase the truncation order to certify a leading term"
        )

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError("mismatched truncation orders")

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            zc = str(c).replace("T", "z")
            parts.append(zc if k == 0 else f"({zc})*t^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.order + 1})"

    def __repr__(self) -> str:
        return f"TruncatedSeries({str(self)!r})"


def substitute_line(
    p: LaurentPoly,
    direction: str | tuple[int, int, int] = "symbolic",
    truncation_order: int = T_POWER_SERIES_DEFAULT_ORDER,
) -> TruncatedSeries | UnivariateRational:
    """Restrict to a line through (1,1,1): substitute T_i = 1 + c_i t.

    With ``direction="symbolic"`` the c_i are the formal variables z_i
    and the result is a :class:`TruncatedSeries` of the requested order.
    With a concrete 0/1 tuple such as ``(1, 1, 1)`` or ``(1, 1, 0)`` the
    substitution is exact and the result is a :class:`UnivariateRational`
    (denominators are powers of 1 + t, hence units at t = 0).

    >>> substitute_line(P, (1, 1, 1)) == UnivariateRational(0b10000, 0b11)
    True
    """
    if direction == "symbolic":
        if truncation_order < 0:
            raise ValueError("truncation order must be nonnegative")
        order = truncation_order
        z = [LaurentPoly.monomial(1, 0, 0), LaurentPoly.monomial(0, 1, 0),
             LaurentPoly.monomial(0, 0, 1)]
        bases = [
            TruncatedSeries([ONE, z[i]] + [ZERO] * (order - 1), order)
            if order >= 1
            else TruncatedSeries([ONE], order)
            for i in range(3)
        ]
        total = TruncatedSeries.constant(ZERO, order)
        for (e1, e2, e3) in p.terms:
            term = TruncatedSeries.constant(ONE, order)
            for base, e in zip(bases, (e1, e2, e3)):
                if e:
                    term = term * base**e
            total = total + term
        return total

    if (
        not isinstance(direction, tuple)
        or len(direction) != 3
        or any(c not in (0, 1) for c in direction)
    ):
        raise ValueError(
            "direction must be 'symbolic' or a tuple of 0/1 entries "
            "such as (1, 1, 1) or (1, 1, 0)"
        )
    # T_i with c_i = 1 maps to 1 + t, with c_i = 0 to 1; a monomial maps
    # to (1+t)^s with s the sum of the selected exponents.
    sums = [
        sum(e for e, c in zip(exps, direction) if c) for exps in p.terms
    ]
    if not sums:
        return UnivariateRational(0, 1)
    shift = max(0, -min(sums))
    num = 0
    for s in sums:
        num ^= gf2_pow(0b11, s + shift)
    return UnivariateRational(num, gf2_pow(0b11, shift))
