"""S-localized module elements, dyadic rationals mod 1, and the tower center.

Fractions are pairs (numerator vector, S-denominator) compared by
cross-multiplication: n_f * den_g(U) == n_g * den_f(U).  That relation is
transitive because every s-map on the module is injective (its determinant,
the norm, is nonzero on S), so fractions are never reduced to any canonical
form; no divisor theory in the quadratic order is assumed.

Dyadic values model the 2-quasi-cyclic group: num / 2**k taken mod 1,
canonically with num odd, or (0, 0) for zero.  CenterColim is the
tower-indexed view of the same group: a residue mod 2**(level of its stage),
pushed along tower edges by multiplying with the edge norm.  Odd unit
factors accumulated by those pushes are stripped only at the dyadic
boundary, in center_to_dyadic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as _QFrac

from .errors import PreconditionError
from .laurent import LaurentPoly, require_in_S
from .quadratic import Vec, evaluate_at_U, u_pow, vec_add, vec_mat, vec_neg


@dataclass(frozen=True)
class Fraction:
    """An element of the S-localized module: num / den with den in S."""

    num: Vec
    den: LaurentPoly

    def __post_init__(self):
        require_in_S(self.den)


def frac_eq(f: Fraction, g: Fraction) -> bool:
    return vec_mat(f.num, evaluate_at_U(g.den)) == vec_mat(g.num, evaluate_at_U(f.den))


def frac_add(f: Fraction, g: Fraction) -> Fraction:
    num = vec_add(
        vec_mat(f.num, evaluate_at_U(g.den)), vec_mat(g.num, evaluate_at_U(f.den))
    )
    return Fraction(num, f.den * g.den)


def frac_neg(f: Fraction) -> Fraction:
    return Fraction(vec_neg(f.num), f.den)


def frac_act_b(f: Fraction, power: int = 1) -> Fraction:
    """Apply the b-action: U acts on the numerator, the denominator is a
    scalar of the commutative ring image and is untouched."""
    return Fraction(vec_mat(f.num, u_pow(power)), f.den)


def frac_scale(f: Fraction, s: LaurentPoly) -> Fraction:
    return Fraction(vec_mat(f.num, evaluate_at_U(s)), f.den)


def frac_is_zero(f: Fraction) -> bool:
    return f.num == (0, 0)


@dataclass(frozen=True)
class Dyadic:
    """num / 2**k mod 1, canonical: 0 <= num < 2**k with num odd, or (0, 0)."""

    num: int
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("negative denominator exponent")
        if self.num == 0:
            if self.k != 0:
                raise ValueError("zero must be represented as (0, 0)")
        elif not (0 < self.num < (1 << self.k)) or self.num % 2 == 0:
            raise ValueError("non-canonical dyadic; use dyadic_make")

    def as_fraction(self) -> _QFrac:
        return _QFrac(self.num, 1 << self.k)

    def __str__(self) -> str:
        return f"{self.num}/{1 << self.k}" if self.num else "0"


DYADIC_ZERO = Dyadic(0, 0)
DYADIC_HALF = Dyadic(1, 1)


def dyadic_make(num: int, k: int) -> Dyadic:
    """Canonicalize num / 2**k mod 1."""
    if k < 0:
        raise ValueError("negative denominator exponent")
    num %= 1 << k
    while num and num % 2 == 0:
        num //= 2
        k -= 1
    return Dyadic(num, k) if num else DYADIC_ZERO


def dyadic_add(x: Dyadic, y: Dyadic) -> Dyadic:
    k = max(x.k, y.k)
    return dyadic_make((x.num << (k - x.k)) + (y.num << (k - y.k)), k)


def dyadic_neg(x: Dyadic) -> Dyadic:
    return dyadic_make(-x.num, x.k)


def dyadic_double(x: Dyadic) -> Dyadic:
    return dyadic_make(2 * x.num, x.k)


def dyadic_halve(x: Dyadic) -> Dyadic:
    """The canonical preimage num / 2**(k+1) under doubling.

    Doubling is 2-to-1 with kernel {0, 1/2}; the other preimage is this one
    plus 1/2.
    """
    return dyadic_make(x.num, x.k + 1)


def dyadic_scale(x: Dyadic, n: int) -> Dyadic:
    return dyadic_make(x.num * n, x.k)


def parse_dyadic(text: str) -> Dyadic:
    """Parse 'num/den' (den a power of two) or an integer (which is 0 mod 1)."""
    text = text.strip()
    if "/" not in text:
        return dyadic_make(int(text), 0)
    a, b = text.split("/", 1)
    num, den = int(a), int(b)
    if den <= 0 or den & (den - 1):
        raise ValueError(f"denominator {den} is not a positive power of two")
    return dyadic_make(num, den.bit_length() - 1)


@dataclass(frozen=True)
class CenterColim:
    """A center element seen at a tower stage: residue mod 2**(stage level)."""

    stage: int
    residue: int


def _check_stage(tower, stage: int) -> int:
    if not (0 <= stage < len(tower.levels)):
        raise PreconditionError(f"stage {stage} outside tower of {len(tower.levels)} stages")
    return tower.levels[stage]


def center_make(tower, stage: int, residue: int) -> CenterColim:
    k = _check_stage(tower, stage)
    return CenterColim(stage, residue % (1 << k))


def center_push(c: CenterColim, s: LaurentPoly, tower) -> CenterColim:
    """Push one stage up the tower: residue is multiplied by the edge norm."""
    _check_stage(tower, c.stage)
    if c.stage >= len(tower.edges):
        raise PreconditionError(f"no tower edge leaves stage {c.stage}")
    if tower.edges[c.stage] != s:
        raise PreconditionError(
            f"edge mismatch at stage {c.stage}: tower has {tower.edges[c.stage]}, got {s}"
        )
    k_next = tower.levels[c.stage + 1]
    return CenterColim(c.stage + 1, (c.residue * tower.norms[c.stage]) % (1 << k_next))


def center_push_to(c: CenterColim, stage: int, tower) -> CenterColim:
    while c.stage < stage:
        c = center_push(c, tower.edges[c.stage], tower)
    return c


def center_to_dyadic(c: CenterColim, tower) -> Dyadic:
    """Strip the odd units accumulated along the path from stage 0.

    The composite of the tower's center maps differs from the composite of
    the standard doubling inclusions by the product u of the odd parts of the
    edge norms; dividing the residue by u (mod 2**k) makes the square with
    dyadic doubling commute exactly.
    """
    k = _check_stage(tower, c.stage)
    if k == 0:
        return DYADIC_ZERO
    u = 1
    for i in range(c.stage):
        u *= tower.odd_parts[i]
    mod = 1 << k
    u_inv = pow(u % mod, -1, mod)
    return dyadic_make(c.residue * u_inv, k)


def center_eq(c1: CenterColim, c2: CenterColim, tower) -> bool:
    stage = max(c1.stage, c2.stage)
    return center_push_to(c1, stage, tower).residue == center_push_to(c2, stage, tower).residue
