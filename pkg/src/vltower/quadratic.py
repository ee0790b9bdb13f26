"""The rank-2 integer module carrying the conjugation action of b.

Coordinates are row vectors in the ordered basis {a, a^b}; b acts on the
right by the fixed matrix U = [[0, 1], [1, 3]], so that a |-> a^b is one
right multiplication and the defining relation of the ambient group reads
U^2 = 3U + I.  Evaluating an element s of the group ring at U gives the
multiplication-by-s map; its determinant is the norm |s| whose 2-adic part
drives everything downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import PreconditionError
from .laurent import LaurentPoly, enumerate_S, require_in_S

Vec = tuple[int, int]


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 integer matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def rows(self) -> tuple[Vec, Vec]:
        return (self.a, self.b), (self.c, self.d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return self + (-other)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, n: int) -> "Mat2":
        return Mat2(n * self.a, n * self.b, n * self.c, n * self.d)


IDENTITY = Mat2(1, 0, 0, 1)
U = Mat2(0, 1, 1, 3)
# U^-1 = U - 3I, from the Cayley-Hamilton relation U^2 - 3U - I = 0.
U_INV = Mat2(-3, 1, 1, 0)


def action_matrix() -> Mat2:
    """The right-action matrix of conjugation by b on the module."""
    return U


def u_pow(i: int) -> Mat2:
    base = U if i >= 0 else U_INV
    out = IDENTITY
    for _ in range(abs(i)):
        out = out * base
    return out


def vec_mat(v: Vec, m: Mat2) -> Vec:
    return (v[0] * m.a + v[1] * m.c, v[0] * m.b + v[1] * m.d)


def vec_add(v: Vec, w: Vec) -> Vec:
    return (v[0] + w[0], v[1] + w[1])


def vec_neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


def evaluate_at_U(s: LaurentPoly) -> Mat2:
    """Sum of n_i * U^i over the support of s (U^-1 = U - 3I for negative i)."""
    out = Mat2(0, 0, 0, 0)
    for e, c in s.terms:
        out = out + u_pow(e).scale(c)
    return out


def norm(s: LaurentPoly) -> int:
    """det of s evaluated at U; multiplicative, and nonzero on S."""
    return evaluate_at_U(s).det()


def two_adic_split(n: int) -> tuple[int, int]:
    """Write n = 2**p * v with v odd; rejects n = 0."""
    if n == 0:
        raise PreconditionError("two_adic_split of zero")
    p = 0
    while n % 2 == 0:
        n //= 2
        p += 1
    return p, n


@dataclass(frozen=True)
class NormData:
    """The norm of an S-element with its 2-adic decomposition."""

    s: LaurentPoly
    norm: int
    p: int
    v: int


def norm_data(s: LaurentPoly) -> NormData:
    require_in_S(s)
    n = norm(s)
    p, v = two_adic_split(n)
    return NormData(s, n, p, v)


def predicted_parity(s: LaurentPoly) -> int:
    """Predicted value of |s| mod 2 from the coefficient pair formula.

    The formula is stated for supports starting at exponent 0; a general
    Laurent support is first shifted by a power of b.  The shift multiplies
    the norm by det(U) = -1 per step, which leaves the parity unchanged.
    """
    require_in_S(s)
    terms = [(e - s.min_exp, c) for e, c in s.terms]
    total = 1
    for x in range(len(terms)):
        for y in range(x + 1, len(terms)):
            i, ni = terms[x]
            j, nj = terms[y]
            if (j - i) % 3 != 0:
                total += ni * nj
    return total % 2


@dataclass(frozen=True)
class ParityReport:
    """Result of the exhaustive parity check over an enumeration window."""

    max_degree_span: int
    max_abs_coeff: int
    checked: int
    counterexamples: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_parity_range(max_degree_span: int, max_abs_coeff: int) -> ParityReport:
    """Compare predicted_parity against the determinant parity on all of
    enumerate_S(max_degree_span, max_abs_coeff)."""
    bad: list[str] = []
    checked = 0
    for s in enumerate_S(max_degree_span, max_abs_coeff):
        checked += 1
        if predicted_parity(s) != norm(s) % 2:
            bad.append(str(s))
    return ParityReport(max_degree_span, max_abs_coeff, checked, tuple(bad))


class Lattice:
    """A subgroup of Z^2 given by a canonical row basis in Hermite form.

    The basis is () for the zero lattice, one row for rank 1, two rows
    ((a, b), (0, c)) with a > 0, c > 0, 0 <= b < c for full rank.  Equality
    of lattices is equality of canonical bases.
    """

    __slots__ = ("basis",)

    def __init__(self, basis: tuple[Vec, ...]):
        self.basis = basis

    @staticmethod
    def from_rows(rows: Iterable[Vec]) -> "Lattice":
        return Lattice(_hnf(list(rows)))

    @staticmethod
    def zero() -> "Lattice":
        return Lattice(())

    @staticmethod
    def whole() -> "Lattice":
        return Lattice(((1, 0), (0, 1)))

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Lattice{self.basis!r}"

    def contains(self, v: Vec) -> bool:
        x, y = v
        rows = self.basis
        if not rows:
            return v == (0, 0)
        if len(rows) == 1:
            (a, b), = rows
            if a != 0:
                if x % a != 0:
                    return False
                return y == (x // a) * b
            return x == 0 and (y % b == 0)
        (a, b), (_, c) = rows
        if x % a != 0:
            return False
        return (y - (x // a) * b) % c == 0

    def index(self) -> int | float:
        """Index in Z^2: |det| of the basis for full rank, math.inf otherwise."""
        if len(self.basis) == 2:
            return abs(self.basis[0][0] * self.basis[1][1])
        return math.inf

    def mul_mat(self, m: Mat2) -> "Lattice":
        """Image of this lattice under right multiplication by m."""
        return Lattice.from_rows([vec_mat(r, m) for r in self.basis])

    def issubset(self, other: "Lattice") -> bool:
        return all(other.contains(r) for r in self.basis)


def _hnf(rows: list[Vec]) -> tuple[Vec, ...]:
    work = [list(r) for r in rows if r != (0, 0)]
    if not work:
        return ()
    # Clear the first column down to a single pivot by repeated division.
    while True:
        nz = [r for r in work if r[0] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[0]))
        piv, rest = nz[0], nz[1:]
        for r in rest:
            q = r[0] // piv[0]
            r[0] -= q * piv[0]
            r[1] -= q * piv[1]
        work = [r for r in work if r != [0, 0]]
    first = [r for r in work if r[0] != 0]
    second = [r for r in work if r[0] == 0]
    g2 = 0
    for r in second:
        g2 = math.gcd(g2, r[1])
    out: list[Vec] = []
    if first:
        a, b = first[0]
        if a < 0:
            a, b = -a, -b
        if g2:
            b %= g2
        out.append((a, b))
    if g2:
        out.append((0, g2))
    return tuple(out)


def image(m: Mat2) -> Lattice:
    """The row span of m as a lattice (image of Z^2 under right multiplication)."""
    return Lattice.from_rows(m.rows())


def intersect_chain_probe(
    v: Vec, chain: Callable[[int], Lattice], bound: int
) -> int | None:
    """Least i in [1, bound] with v not in chain(i); None if it never exits."""
    for i in range(1, bound + 1):
        if not chain(i).contains(v):
            return i
    return None
