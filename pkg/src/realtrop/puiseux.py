"""Exact arithmetic in the ordered valued ring of finite rational-exponent
polynomials in t with rational coefficients.

Elements are finite term lists with strictly increasing rational
exponents.  The order is determined by the lowest-exponent term: f > 0
exactly when its leading coefficient is positive, and the valuation of a
nonzero f is its leading exponent.  Constants double as trivially valued
scalars, so the same type serves both the trivially and non-trivially
valued regimes.

Division is deliberately absent: quotients only ever appear downstream
as (sign, valuation) pairs or leading-term pairs, both computable from
numerator and denominator separately.  Determinants are computed by
division-free expansion, which keeps every intermediate value in the
ring.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .hyperfields import INF, RT, RT_ZERO, Val, format_val

DEFAULT_MAX_EXP_DENOMINATOR = 10**9


class PuiseuxParseError(ValueError):
    """Syntax or bound violation, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@functools.total_ordering
@dataclass(frozen=True)
class PuiseuxSeries:
    """Canonical term list: ((coeff, exponent), ...), exponents increasing."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_terms(pairs: Iterable[tuple]) -> "PuiseuxSeries":
        acc: dict[Fraction, Fraction] = {}
        for c, q in pairs:
            c, q = Fraction(c), Fraction(q)
            acc[q] = acc.get(q, Fraction(0)) + c
        terms = tuple((c, q) for q, c in sorted(acc.items()) if c != 0)
        return PuiseuxSeries(terms)

    @staticmethod
    def zero() -> "PuiseuxSeries":
        return _ZERO

    @staticmethod
    def one() -> "PuiseuxSeries":
        return _ONE

    @staticmethod
    def constant(c) -> "PuiseuxSeries":
        c = Fraction(c)
        return PuiseuxSeries(((c, Fraction(0)),)) if c else _ZERO

    @staticmethod
    def t_power(q, coeff=1) -> "PuiseuxSeries":
        coeff = Fraction(coeff)
        return PuiseuxSeries(((coeff, Fraction(q)),)) if coeff else _ZERO

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][1] == 0)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a constant")
        return self.terms[0][0] if self.terms else Fraction(0)

    def leading(self) -> tuple[Fraction, Fraction] | None:
        """(coefficient, exponent) of the lowest-exponent term, or None."""
        return self.terms[0] if self.terms else None

    @property
    def valuation(self) -> Val:
        return self.terms[0][1] if self.terms else INF

    @property
    def sign(self) -> int:
        if not self.terms:
            return 0
        return 1 if self.terms[0][0] > 0 else -1

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return PuiseuxSeries.from_terms(self.terms + other.terms)

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(tuple((-c, q) for c, q in self.terms))

    def __sub__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return self + (-other)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        return PuiseuxSeries.from_terms(
            (c1 * c2, q1 + q2) for c1, q1 in self.terms for c2, q2 in other.terms
        )

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if n < 0:
            raise ValueError("negative powers leave the ring")
        out = _ONE
        for _ in range(n):
            out = out * self
        return out

    # -- order --------------------------------------------------------------

    def __lt__(self, other: "PuiseuxSeries") -> bool:
        return (self - other).sign < 0

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"PuiseuxSeries({format_series(self)!r})"


_ZERO = PuiseuxSeries(())
_ONE = PuiseuxSeries(((Fraction(1), Fraction(0)),))


def as_series(x) -> PuiseuxSeries:
    """Coerce strings (literals), ints and Fractions into the ring."""
    if isinstance(x, PuiseuxSeries):
        return x
    if isinstance(x, str):
        return parse_puiseux(x)
    if isinstance(x, (int, Fraction)):
        return PuiseuxSeries.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a Puiseux series")


def compare(f: PuiseuxSeries, g: PuiseuxSeries) -> int:
    """-1, 0 or +1; f exceeds g exactly when f - g has positive leading coefficient."""
    return (f - g).sign


def signed_value(f: PuiseuxSeries) -> RT:
    """Sign of the leading coefficient together with the leading exponent."""
    lead = f.leading()
    if lead is None:
        return RT_ZERO
    c, q = lead
    return RT(1 if c > 0 else -1, q)


@dataclass(frozen=True)
class FineValue:
    """Leading coefficient and valuation of a series; (None, INF) for zero."""

    coeff: Fraction | None
    val: Val

    def __post_init__(self):
        if (self.coeff is None) != (self.val == INF):
            raise ValueError("zero fine value must be (None, inf)")

    @property
    def is_zero(self) -> bool:
        return self.coeff is None

    def __mul__(self, other: "FineValue") -> "FineValue":
        if self.is_zero or other.is_zero:
            return FINE_ZERO
        return FineValue(self.coeff * other.coeff, self.val + other.val)

    def __repr__(self):
        if self.is_zero:
            return "FineValue(0)"
        return f"FineValue({self.coeff}, {format_val(self.val)})"


FINE_ZERO = FineValue(None, INF)


def fval(f: PuiseuxSeries) -> FineValue:
    lead = f.leading()
    if lead is None:
        return FINE_ZERO
    return FineValue(lead[0], lead[1])


# ---------------------------------------------------------------------------
# Parsing and printing
#
# series := term (("+"|"-") term)* ; term := coeff | coeff "*" mono | mono ;
# mono := "t" | "t^" exp ; coeff := int | int "/" int ;
# exp := int | "(" int "/" int ")" | "(-" int "/" int ")" | "-" int.
# Whitespace is ignored.  The parser also accepts "(-3)" style integer
# exponents, which the canonical printer emits.

_INT_RE = re.compile(r"[+-]?\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise PuiseuxParseError(f"expected {ch!r}", self.pos)

    def integer(self) -> int:
        self.skip_ws()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            raise PuiseuxParseError("expected an integer", self.pos)
        self.pos = m.end()
        return int(m.group())

    def fraction(self) -> Fraction:
        num = self.integer()
        if self.take("/"):
            den = self.integer()
            if den == 0:
                raise PuiseuxParseError("zero denominator", self.pos)
            return Fraction(num, den)
        return Fraction(num)


def parse_puiseux(
    text: str, max_exp_denominator: int = DEFAULT_MAX_EXP_DENOMINATOR
) -> PuiseuxSeries:
    """Parse a series literal into canonical form.

    Raises PuiseuxParseError on malformed input or when an exponent
    denominator exceeds the configured bound.
    """
    sc = _Scanner(text)
    terms: list[tuple[Fraction, Fraction]] = []
    first = True
    while True:
        sc.skip_ws()
        if first and not sc.peek():
            raise PuiseuxParseError("empty literal", sc.pos)
        negate = False
        if first:
            # a leading sign may precede a bare monomial, e.g. "-t"
            if sc.take("-"):
                negate = True
            else:
                sc.take("+")
        else:
            if not sc.peek():
                break
            if sc.take("+"):
                pass
            elif sc.take("-"):
                negate = True
            else:
                raise PuiseuxParseError("expected '+' or '-'", sc.pos)
        first = False
        coeff, expo = _parse_term(sc, max_exp_denominator)
        terms.append((-coeff if negate else coeff, expo))
    if sc.peek():
        raise PuiseuxParseError("trailing input", sc.pos)
    return PuiseuxSeries.from_terms(terms)


def _parse_term(sc: _Scanner, max_den: int) -> tuple[Fraction, Fraction]:
    if sc.peek() == "t":
        return Fraction(1), _parse_mono(sc, max_den)
    coeff = sc.fraction()
    if sc.take("*"):
        return coeff, _parse_mono(sc, max_den)
    if sc.peek() == "t":
        raise PuiseuxParseError("missing '*' before 't'", sc.pos)
    return coeff, Fraction(0)


def _parse_mono(sc: _Scanner, max_den: int) -> Fraction:
    sc.expect("t")
    if not sc.take("^"):
        return Fraction(1)
    if sc.take("("):
        expo = sc.fraction()
        sc.expect(")")
    else:
        expo = Fraction(sc.integer())
    if expo.denominator > max_den:
        raise PuiseuxParseError(
            f"exponent denominator {expo.denominator} exceeds bound {max_den}", sc.pos
        )
    return expo


def _format_exponent(q: Fraction) -> str:
    if q.denominator == 1 and q >= 0:
        return str(q)
    return f"({q})"


def format_series(f: PuiseuxSeries) -> str:
    """Canonical printing: increasing exponents, explicit '*', fractional
    and negative exponents parenthesized.  parse(format(f)) == f."""
    if not f.terms:
        return "0"
    chunks: list[str] = []
    for i, (c, q) in enumerate(f.terms):
        mag = abs(c)
        if q == 0:
            body = str(mag)
        else:
            mono = "t" if q == 1 else f"t^{_format_exponent(q)}"
            body = f"{mag}*{mono}"
        if i == 0:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append((" - " if c < 0 else " + ") + body)
    return "".join(chunks)


# ---------------------------------------------------------------------------
# Exact linear algebra in the ring (division-free)

Matrix = Sequence[Sequence[PuiseuxSeries]]


def coerce_matrix(rows) -> tuple[tuple[PuiseuxSeries, ...], ...]:
    out = tuple(tuple(as_series(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def det(rows: Matrix, size_bound: int = 12) -> PuiseuxSeries:
    """Determinant by division-free expansion with subset memoization."""
    rows = coerce_matrix(rows)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n > size_bound:
        raise ValueError(f"matrix size {n} exceeds bound {size_bound}")
    if n == 0:
        return _ONE

    cache: dict[tuple[int, ...], PuiseuxSeries] = {}

    def minor(cols: tuple[int, ...]) -> PuiseuxSeries:
        if len(cols) == 1:
            return rows[n - 1][cols[0]]
        got = cache.get(cols)
        if got is not None:
            return got
        r = n - len(cols)
        acc = _ZERO
        for j, cidx in enumerate(cols):
            entry = rows[r][cidx]
            if entry.is_zero:
                continue
            sub = minor(cols[:j] + cols[j + 1 :])
            term = entry * sub
            acc = acc + term if j % 2 == 0 else acc - term
        cache[cols] = acc
        return acc

    return minor(tuple(range(n)))


def dot(u: Sequence[PuiseuxSeries], v: Sequence[PuiseuxSeries]) -> PuiseuxSeries:
    if len(u) != len(v):
        raise ValueError("dot product length mismatch")
    acc = _ZERO
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def columns_independent(cols: Sequence[Sequence[PuiseuxSeries]]) -> bool:
    """True when the column vectors are linearly independent.

    A k-subset of columns is independent exactly when some k x k
    row-submatrix has nonzero determinant; heights here are small enough
    for direct enumeration.
    """
    import itertools

    cols = [tuple(as_series(x) for x in c) for c in cols]
    k = len(cols)
    if k == 0:
        return True
    height = len(cols[0])
    if k > height:
        return False
    for rowsel in itertools.combinations(range(height), k):
        sub = [[cols[j][i] for j in range(k)] for i in rowsel]
        if not det(sub).is_zero:
            return True
    return False


def column_rank(cols: Sequence[Sequence[PuiseuxSeries]]) -> int:
    """Greedy matroid rank of a list of column vectors."""
    basis: list = []
    for c in cols:
        if columns_independent(basis + [c]):
            basis.append(c)
    return len(basis)
