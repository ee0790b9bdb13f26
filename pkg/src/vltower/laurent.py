"""Exact arithmetic for integer Laurent polynomials in one variable ``b``.

This is the group ring of the infinite cyclic group on ``b``.  The module
also provides the augmentation map (sum of coefficients), the predicate for
the multiplicative set S of augmentation-1 elements, and a deterministic
enumerator of S within finite support/coefficient bounds.

Literal grammar (EBNF), shared with the command line interface::

    poly   = [ sign ] term { sign term } ;
    term   = integer [ "*" ] [ bpart ] | bpart ;
    bpart  = "b" [ "^" [ "-" ] integer ] ;
    sign   = "+" | "-" ;

Whitespace is allowed between tokens.  Examples: ``1-b+b^2``, ``2b^-1 - b^3``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction as _QFrac
from typing import Iterator

from .errors import LaurentParseError, NotInSError


@dataclass(frozen=True)
class LaurentPoly:
    """A sparse integer Laurent polynomial.

    ``terms`` is the canonical form: pairs ``(exponent, coefficient)`` sorted
    by exponent, with no zero coefficients.  Two values are equal exactly when
    their canonical forms are identical.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for e, c in self.terms:
            if c == 0:
                raise ValueError("canonical form must not contain zero coefficients")
        if list(self.terms) != sorted(self.terms):
            raise ValueError("canonical form must be sorted by exponent")

    @staticmethod
    def from_dict(coeffs: dict[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @staticmethod
    def constant(n: int) -> "LaurentPoly":
        return LaurentPoly.from_dict({0: n})

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly.from_dict({exp: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        return self.terms[-1][0]

    @property
    def span(self) -> int:
        return 0 if not self.terms else self.max_exp - self.min_exp

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by b**m."""
        return LaurentPoly(tuple((e + m, c) for e, c in self.terms))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = self.coeffs
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a general polynomial are not defined")
        acc = ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, n: int) -> "LaurentPoly":
        return LaurentPoly.from_dict({e: n * c for e, c in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (e, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "b" if e == 1 else f"b^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
B = LaurentPoly.monomial(1)


def augmentation(s: LaurentPoly) -> int:
    """Sum of coefficients: image under the ring map sending b to 1."""
    return sum(c for _, c in s.terms)


def in_S(s: LaurentPoly) -> bool:
    """Membership in the multiplicative set S of augmentation-1 elements."""
    return augmentation(s) == 1


@dataclass(frozen=True)
class SMembership:
    """A polynomial together with its augmentation and the S-membership flag."""

    poly: LaurentPoly
    augmentation: int
    is_member: bool


def s_membership(s: LaurentPoly) -> SMembership:
    a = augmentation(s)
    return SMembership(s, a, a == 1)


def require_in_S(s: LaurentPoly) -> LaurentPoly:
    if not in_S(s):
        raise NotInSError(f"{s} has augmentation {augmentation(s)}, expected 1")
    return s


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<b>b)|(?P<caret>\^)|(?P<star>\*)|(?P<sign>[+-]))")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a Laurent polynomial literal.  See the module docstring for the grammar."""
    pos = 0
    n = len(text)
    tokens: list[tuple[str, str, int]] = []
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise LaurentParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()

    coeffs: dict[int, int] = {}
    i = 0

    def peek(kind: str) -> bool:
        return i < len(tokens) and tokens[i][0] == kind

    def expect(kind: str) -> tuple[str, int]:
        nonlocal i
        if not peek(kind):
            where = tokens[i][2] if i < len(tokens) else n
            raise LaurentParseError(f"expected {kind}", where)
        _, val, at = tokens[i]
        i += 1
        return val, at

    first = True
    while i < len(tokens):
        sign = 1
        if peek("sign"):
            val, _ = expect("sign")
            sign = -1 if val == "-" else 1
        elif not first:
            raise LaurentParseError("expected '+' or '-' between terms", tokens[i][2])
        first = False

        mag: int | None = None
        if peek("int"):
            mag = int(expect("int")[0])
            if peek("star"):
                expect("star")
        exp = 0
        has_b = False
        if peek("b"):
            expect("b")
            has_b = True
            exp = 1
            if peek("caret"):
                expect("caret")
                esign = 1
                if peek("sign"):
                    v, at = expect("sign")
                    if v == "+":
                        raise LaurentParseError("exponent sign must be '-' or absent", at)
                    esign = -1
                ev, _ = expect("int")
                exp = esign * int(ev)
        if mag is None and not has_b:
            where = tokens[i][2] if i < len(tokens) else n
            raise LaurentParseError("expected a coefficient or 'b'", where)
        coeff = sign * (1 if mag is None else mag)
        coeffs[exp] = coeffs.get(exp, 0) + coeff

    if first:
        raise LaurentParseError("empty polynomial literal", 0)
    return LaurentPoly.from_dict(coeffs)


def enumerate_S(max_degree_span: int, max_abs_coeff: int) -> Iterator[LaurentPoly]:
    """Enumerate S-elements with support in [0, max_degree_span], coefficients
    in [-max_abs_coeff, max_abs_coeff].

    Deterministic total order: ascending actual support span, then
    lexicographic on the coefficient tuple (n_0, ..., n_d).  No duplicates:
    each polynomial corresponds to exactly one tuple within the fixed window.
    """
    if max_degree_span < 0 or max_abs_coeff < 0:
        raise ValueError("bounds must be nonnegative")
    width = max_degree_span + 1
    rng = range(-max_abs_coeff, max_abs_coeff + 1)
    found = [t for t in itertools.product(rng, repeat=width) if sum(t) == 1]

    def order_key(t: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        support = [i for i, c in enumerate(t) if c]
        return (support[-1] - support[0], t)

    found.sort(key=order_key)
    for t in found:
        yield LaurentPoly.from_dict({i: c for i, c in enumerate(t)})


def divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Exact division in Z[b, b^-1]: return q with den*q == num, else None.

    Division is performed over the rationals (shift both operands so the
    divisor is an honest polynomial with nonzero constant term); the result
    is accepted only when the remainder vanishes and q has integer
    coefficients.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return ZERO
    nshift = num.min_exp
    dshift = den.min_exp
    rem: dict[int, _QFrac] = {e - nshift: _QFrac(c) for e, c in num.terms}
    d: dict[int, _QFrac] = {e - dshift: _QFrac(c) for e, c in den.terms}
    ddeg = max(d)
    dlead = d[ddeg]
    q: dict[int, _QFrac] = {}
    while rem:
        rdeg = max(rem)
        if rdeg < ddeg:
            return None
        f = rem[rdeg] / dlead
        q[rdeg - ddeg] = f
        for e, c in d.items():
            k = e + rdeg - ddeg
            v = rem.get(k, _QFrac(0)) - f * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if any(f.denominator != 1 for f in q.values()):
        return None
    return LaurentPoly.from_dict({e + nshift - dshift: int(f) for e, f in q.items()})
