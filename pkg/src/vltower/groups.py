"""Normal-form models and exact group laws for the tower groups.

Five element models live here:

* ``HElem``: the base group, a rank-2 module extended by the cyclic group on
  b; normal form b^j a^n.
* ``G2Elem``: the class-2 central extension with infinite cyclic center
  generated by t = [a, a^b]; normal form t^c a^m (a^b)^n b^j (b rightmost).
* ``GammaKElem``: the level-k truncation, same laws with c read mod 2**k.
  Level 0 is the base group again (t dies).
* ``HbarElem``: the localized base group, module part an S-fraction.
* ``LElem``: the colimit model over a built tower prefix, stored as a staged
  truncation element.

Collection conventions (fixed once, used everywhere): x^y = y^-1 x y and
[x, y] = x^-1 y^-1 x y.  Writing A = a, B = a^b inside the class-2 models,
the defining relations give B A = A B t^-1 with t central among A, B, and
conjugation by b acts as A |-> B, B |-> A B^3, t |-> t^-1.  For an S-element
s, a^s is the product of the conjugates a^(n_i b^i) taken in ascending
exponent order.

The closed-form product law is derived from two ingredients: the reordering
cocycle of A and B powers, and the center corrections of b-conjugation
(collected forms of B^m (A B^3)^n and (t^3 A^-3 B)^m A^n).  The independent
``word_oracle`` never uses those aggregate corrections: it evaluates words by
prepending one generator at a time, crossing b letter by letter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import (
    InsufficientTowerError,
    LevelMismatchError,
    PreconditionError,
    TheoremViolationError,
)
from .laurent import ONE, LaurentPoly, augmentation, divide_exact, require_in_S
from .localization import CenterColim, Fraction, frac_eq
from .quadratic import (
    Vec,
    evaluate_at_U,
    norm,
    two_adic_split,
    u_pow,
    vec_add,
    vec_mat,
)

Heis = tuple[int, int, int]  # (c, m, n) meaning t^c A^m B^n

Model = Literal["H", "G2"] | int
"""Model selector: "H", "G2", or an integer k >= 0 for the level-k truncation."""


# ---------------------------------------------------------------------------
# collection inside the class-2 subgroup generated by A, B, t


def heis_mul(x: Heis, y: Heis) -> Heis:
    # Moving A^m2 left past B^n1 costs t^(-m2*n1), one BA -> AB t^-1 swap at a time.
    c1, m1, n1 = x
    c2, m2, n2 = y
    return (c1 + c2 - m2 * n1, m1 + m2, n1 + n2)


def heis_inv(x: Heis) -> Heis:
    c, m, n = x
    return (-c - m * n, -m, -n)


def heis_pow(x: Heis, e: int) -> Heis:
    if e < 0:
        return heis_pow(heis_inv(x), -e)
    out: Heis = (0, 0, 0)
    base = x
    while e:
        if e & 1:
            out = heis_mul(out, base)
        base = heis_mul(base, base)
        e >>= 1
    return out


def phi(h: Heis) -> Heis:
    """Conjugation by b: b^-1 (t^c A^m B^n) b, collected.

    B^m (A B^3)^n = A^n B^(m+3n) t^(e(n) - m n) with e(n) = -3 n (n-1) / 2.
    """
    c, m, n = h
    return (-c - 3 * n * (n - 1) // 2 - m * n, n, m + 3 * n)


def phi_inv(h: Heis) -> Heis:
    """Conjugation by b^-1: b (t^c A^m B^n) b^-1, collected.

    (t^3 A^-3 B)^m A^n = A^(n-3m) B^m t^(f(m) - m n) with f(m) = 3 m (m+1) / 2.
    """
    c, m, n = h
    return (-c + 3 * m * (m + 1) // 2 - m * n, n - 3 * m, m)


def conj_by_b_pow(h: Heis, j: int) -> Heis:
    """b^j (t^c A^m B^n) b^-j."""
    f = phi_inv if j >= 0 else phi
    for _ in range(abs(j)):
        h = f(h)
    return h


# ---------------------------------------------------------------------------
# the base group H: normal form b^j a^n


@dataclass(frozen=True)
class HElem:
    """b^j a^n with n a module vector."""

    n: Vec
    j: int


H_IDENTITY = HElem((0, 0), 0)
H_A = HElem((1, 0), 0)
H_AB = HElem((0, 1), 0)
H_B = HElem((0, 0), 1)


def h_mul(x: HElem, y: HElem) -> HElem:
    # (b^j a^n)(b^j' a^m) = b^(j+j') a^(n U^j' + m)
    return HElem(vec_add(vec_mat(x.n, u_pow(y.j)), y.n), x.j + y.j)


def h_inv(x: HElem) -> HElem:
    n = vec_mat(x.n, u_pow(-x.j))
    return HElem((-n[0], -n[1]), -x.j)


def h_pow(x: HElem, e: int) -> HElem:
    if e < 0:
        return h_pow(h_inv(x), -e)
    out = H_IDENTITY
    base = x
    while e:
        if e & 1:
            out = h_mul(out, base)
        base = h_mul(base, base)
        e >>= 1
    return out


def h_s_action(s: LaurentPoly, x: HElem) -> HElem:
    """The endomorphism of the base group induced by s: a |-> a^s, b |-> b."""
    return HElem(vec_mat(x.n, evaluate_at_U(s)), x.j)


# ---------------------------------------------------------------------------
# the class-2 models: t^c A^m B^n b^j


@dataclass(frozen=True)
class G2Elem:
    """t^c a^(n1) (a^b)^(n2) b^j with an infinite cyclic center on t."""

    c: int
    n: Vec
    j: int


@dataclass(frozen=True)
class GammaKElem:
    """Level-k truncation element; center exponent reduced mod 2**k."""

    k: int
    c: int
    n: Vec
    j: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("negative truncation level")
        if not 0 <= self.c < max(1, 1 << self.k):
            raise ValueError("center exponent not reduced")


def _central_mul(x_c, x_n, x_j, y_c, y_n, y_j) -> tuple[int, Vec, int]:
    h2 = conj_by_b_pow((y_c, y_n[0], y_n[1]), x_j)
    c, m, n = heis_mul((x_c, x_n[0], x_n[1]), h2)
    return c, (m, n), x_j + y_j


def _central_inv(x_c, x_n, x_j) -> tuple[int, Vec, int]:
    h = heis_inv((x_c, x_n[0], x_n[1]))
    c, m, n = conj_by_b_pow(h, -x_j)
    return c, (m, n), -x_j


def g2_mul(x: G2Elem, y: G2Elem) -> G2Elem:
    c, n, j = _central_mul(x.c, x.n, x.j, y.c, y.n, y.j)
    return G2Elem(c, n, j)


def g2_inv(x: G2Elem) -> G2Elem:
    c, n, j = _central_inv(x.c, x.n, x.j)
    return G2Elem(c, n, j)


def g2_pow(x: G2Elem, e: int) -> G2Elem:
    if e < 0:
        return g2_pow(g2_inv(x), -e)
    out = G2_IDENTITY
    base = x
    while e:
        if e & 1:
            out = g2_mul(out, base)
        base = g2_mul(base, base)
        e >>= 1
    return out


def g2_conj(x: G2Elem, y: G2Elem) -> G2Elem:
    return g2_mul(g2_inv(y), g2_mul(x, y))


def g2_comm(x: G2Elem, y: G2Elem) -> G2Elem:
    return g2_mul(g2_inv(x), g2_mul(g2_inv(y), g2_mul(x, y)))


G2_IDENTITY = G2Elem(0, (0, 0), 0)
G2_A = G2Elem(0, (1, 0), 0)
G2_AB = G2Elem(0, (0, 1), 0)
G2_B = G2Elem(0, (0, 0), 1)
G2_T = G2Elem(1, (0, 0), 0)


def gamma_make(k: int, c: int, n: Vec, j: int) -> GammaKElem:
    return GammaKElem(k, c % max(1, 1 << k), n, j)


def gamma_identity(k: int) -> GammaKElem:
    return gamma_make(k, 0, (0, 0), 0)


def gamma_gen(k: int, name: str) -> GammaKElem:
    vec = {"a": (1, 0), "ab": (0, 1)}.get(name)
    if vec is not None:
        return gamma_make(k, 0, vec, 0)
    if name == "b":
        return gamma_make(k, 0, (0, 0), 1)
    if name == "t":
        return gamma_make(k, 1, (0, 0), 0)
    raise ValueError(f"unknown generator {name!r}")


def _same_level(x: GammaKElem, y: GammaKElem) -> int:
    if x.k != y.k:
        raise LevelMismatchError(f"levels {x.k} and {y.k}")
    return x.k


def gamma_mul(x: GammaKElem, y: GammaKElem) -> GammaKElem:
    k = _same_level(x, y)
    c, n, j = _central_mul(x.c, x.n, x.j, y.c, y.n, y.j)
    return gamma_make(k, c, n, j)


def gamma_inv(x: GammaKElem) -> GammaKElem:
    c, n, j = _central_inv(x.c, x.n, x.j)
    return gamma_make(x.k, c, n, j)


def gamma_pow(x: GammaKElem, e: int) -> GammaKElem:
    if e < 0:
        return gamma_pow(gamma_inv(x), -e)
    out = gamma_identity(x.k)
    base = x
    while e:
        if e & 1:
            out = gamma_mul(out, base)
        base = gamma_mul(base, base)
        e >>= 1
    return out


def gamma_conj(x: GammaKElem, y: GammaKElem) -> GammaKElem:
    return gamma_mul(gamma_inv(y), gamma_mul(x, y))


def gamma_comm(x: GammaKElem, y: GammaKElem) -> GammaKElem:
    return gamma_mul(gamma_inv(x), gamma_mul(gamma_inv(y), gamma_mul(x, y)))


def gamma_from_g2(k: int, x: G2Elem) -> GammaKElem:
    return gamma_make(k, x.c, x.n, x.j)


def gamma_project_h(x: GammaKElem) -> HElem:
    """Quotient by the center: t^c a^n b^j |-> b^j a^(n U^j)."""
    return HElem(vec_mat(x.n, u_pow(x.j)), x.j)


# ---------------------------------------------------------------------------
# word oracle: slow, letter-level evaluator over the rewriting rules

Word = Sequence[tuple[str, int]]
"""A word: pairs (generator, exponent) with generator in {"a", "b"}."""


class _OracleState:
    """Normal form t^c A^m B^n b^j built by prepending letters.

    Only single-letter rewrite rules are used: t is central among A and B;
    one B past A^m costs t^-m (m swaps of BA -> AB t^-1); crossing one b
    rebuilds the prefix from the letter images b X b^-1 (t -> t^-1,
    A -> t^3 A^-3 B, B -> A) or b^-1 X b (t -> t^-1, A -> B, B -> A B^3),
    appended one letter or run at a time.
    """

    __slots__ = ("c", "m", "n", "j", "mod")

    def __init__(self, modulus: int | None):
        self.c = 0
        self.m = 0
        self.n = 0
        self.j = 0
        self.mod = modulus

    def _reduce(self):
        if self.mod is not None:
            self.c %= self.mod

    # appends act on the A/B prefix only (used while rebuilding after a b-crossing)
    def _append_t(self, e: int):
        self.c += e

    def _append_a(self, e: int):
        self.c -= e * self.n  # A^e crossing B^n
        self.m += e

    def _append_b_gen(self, e: int):
        self.n += e

    def prepend_t(self, e: int):
        self.c += e
        self._reduce()

    def prepend_a(self, e: int):
        self.m += e

    def prepend_ab(self, e: int):
        self.c -= e * self.m  # B^e crossing A^m
        self.n += e
        self._reduce()

    def prepend_b(self, e: int):
        if e not in (1, -1):
            raise ValueError("prepend one b at a time")
        src_c, src_m, src_n = self.c, self.m, self.n
        self.c, self.m, self.n = -src_c, 0, 0
        if e == 1:
            # b A b^-1 = t^3 A^-3 B; inverse letters in reversed order.
            if src_m >= 0:
                for _ in range(src_m):
                    self._append_t(3)
                    self._append_a(-3)
                    self._append_b_gen(1)
            else:
                for _ in range(-src_m):
                    self._append_b_gen(-1)
                    self._append_a(3)
                    self._append_t(-3)
            self._append_a(src_n)  # b B b^-1 = A
        else:
            self._append_b_gen(src_m)  # b^-1 A b = B
            # b^-1 B b = A B^3; inverse letters in reversed order.
            if src_n >= 0:
                for _ in range(src_n):
                    self._append_a(1)
                    self._append_b_gen(3)
            else:
                for _ in range(-src_n):
                    self._append_b_gen(-3)
                    self._append_a(-1)
        self.j += e
        self._reduce()


def _oracle_collect(word: Word, modulus: int | None) -> tuple[int, int, int, int]:
    st = _OracleState(modulus)
    for gen, e in reversed(list(word)):
        if e == 0:
            continue
        if gen == "a":
            st.prepend_a(e)
        elif gen == "b":
            sgn = 1 if e > 0 else -1
            for _ in range(abs(e)):
                st.prepend_b(sgn)
        elif gen == "t":
            st.prepend_t(e)
        elif gen == "ab":
            sgn = 1 if e > 0 else -1
            for _ in range(abs(e)):
                st.prepend_ab(sgn)
        else:
            raise ValueError(f"unknown generator {gen!r}")
    st._reduce()
    return st.c, st.m, st.n, st.j


def word_oracle(word: Word, model: Model):
    """Evaluate a word over {a, b} (plus derived letters t, ab) in a model.

    Returns an HElem, G2Elem, or GammaKElem according to ``model``.  This
    path shares no formulas with the closed-form laws beyond the single
    rewrite rules listed on _OracleState.
    """
    if model == "G2":
        c, m, n, j = _oracle_collect(word, None)
        return G2Elem(c, (m, n), j)
    if model == "H":
        _, m, n, j = _oracle_collect(word, 1)
        return HElem(vec_mat((m, n), u_pow(j)), j)
    k = int(model)
    if k < 0:
        raise ValueError("truncation level must be nonnegative")
    c, m, n, j = _oracle_collect(word, max(1, 1 << k))
    return GammaKElem(k, c, (m, n), j)


def h_eval_word(word: Word) -> HElem:
    """Evaluate a word with the closed-form base-group law."""
    gens = {"a": H_A, "b": H_B, "ab": H_AB}
    out = H_IDENTITY
    for gen, e in word:
        if gen == "t":
            continue  # t is trivial in the base group
        out = h_mul(out, h_pow(gens[gen], e))
    return out


def g2_eval_word(word: Word) -> G2Elem:
    gens = {"a": G2_A, "b": G2_B, "ab": G2_AB, "t": G2_T}
    out = G2_IDENTITY
    for gen, e in word:
        out = g2_mul(out, g2_pow(gens[gen], e))
    return out


def gamma_eval_word(word: Word, k: int) -> GammaKElem:
    out = gamma_identity(k)
    for gen, e in word:
        out = gamma_mul(out, gamma_pow(gamma_gen(k, gen), e))
    return out


# ---------------------------------------------------------------------------
# the maps between truncation levels


def a_power_s(s: LaurentPoly) -> Heis:
    """a^s: the product of a^(n_i b^i) over the support of s, ascending."""
    out: Heis = (0, 0, 0)
    for e, c in s.terms:
        out = heis_mul(out, conj_by_b_pow((0, c, 0), -e))
    return out


def relator_defect(s: LaurentPoly) -> tuple[int, int]:
    """Exact center bookkeeping of the image of the defining relation.

    Returns (l, d) computed with the integer center: l is the exponent in
    (a^s)^(b^2) = a^s (a^(3s))^b t^l, and d = center(a^(3s)) - center((a^s)^3)
    measures how far a^(3s) is from being the cube of a^s.  Both module-part
    identities are asserted on the way.
    """
    require_in_S(s)
    x = a_power_s(s)
    y = a_power_s(s.scale(3))
    lhs = phi(phi(x))
    rhs = heis_mul(x, phi(y))
    if lhs[1:] != rhs[1:]:
        raise TheoremViolationError(f"relator module parts differ for s={s}")
    x3 = heis_pow(x, 3)
    if y[1:] != x3[1:]:
        raise TheoremViolationError(f"cube module parts differ for s={s}")
    return lhs[0] - rhs[0], y[0] - x3[0]


def compute_l(s: LaurentPoly, k: int) -> int:
    """The center exponent l of the defining-relation image at level k."""
    l_exact, _ = relator_defect(s)
    return l_exact % max(1, 1 << k)


@dataclass(frozen=True)
class PhiData:
    """A validated level map: a |-> a^s t^r, b |-> b, from level source_k.

    ``r`` is the unique solution of the relator equation in the target group
    (the congruence 3r = d - l mod 2**target_k with l, d from
    relator_defect); ``l`` is the source-level value of the relation
    exponent, ``l_exact`` its integer refinement.  ``source_congruence_ok``
    records whether r also satisfies the historical source-level congruence
    3r = l mod 2**source_k, which is a consistency note and not an input to
    the construction.
    """

    s: LaurentPoly
    source_k: int
    target_k: int
    r: int
    l: int
    l_exact: int
    source_congruence_ok: bool
    img_a: GammaKElem = field(repr=False)
    img_ab: GammaKElem = field(repr=False)
    img_t: GammaKElem = field(repr=False)

    @property
    def p(self) -> int:
        return self.target_k - self.source_k


def _gamma_iterated_comm_with_b(x: GammaKElem, times: int) -> GammaKElem:
    out = x
    bgen = gamma_gen(x.k, "b")
    for _ in range(times):
        out = gamma_comm(out, bgen)
    return out


def phi_build(s: LaurentPoly, k: int) -> PhiData:
    """Construct and verify the level map for edge s leaving level k.

    The center exponent r is solved in the *target* group, where the map must
    be well-defined; every defining relator of the source is then evaluated
    on the images and required to vanish.
    """
    require_in_S(s)
    if k < 0:
        raise PreconditionError("negative source level")
    p, _ = two_adic_split(norm(s))
    target_k = k + p
    l_exact, d = relator_defect(s)
    target_mod = max(1, 1 << target_k)
    # 3 is invertible mod any power of two.
    inv3 = pow(3, -1, target_mod) if target_mod > 1 else 0
    r = ((d - l_exact) * inv3) % target_mod

    x = a_power_s(s)
    img_a = gamma_make(target_k, x[0] + r, (x[1], x[2]), 0)
    bgen = gamma_gen(target_k, "b")
    img_ab = gamma_conj(img_a, bgen)
    img_t = gamma_comm(img_a, img_ab)

    expected_t = gamma_make(target_k, norm(s), (0, 0), 0)
    if img_t != expected_t:
        raise TheoremViolationError(
            f"center image for s={s}, k={k}: got {img_t}, expected t^{norm(s)}"
        )

    # Relator images in the target group.
    lhs = gamma_conj(gamma_conj(img_a, bgen), bgen)
    rhs = gamma_mul(img_a, gamma_conj(gamma_pow(img_a, 3), bgen))
    if lhs != rhs:
        raise TheoremViolationError(f"main relator image nonzero for s={s}, k={k}")
    for other in (img_a, img_ab):
        if gamma_comm(img_t, other) != gamma_identity(target_k):
            raise TheoremViolationError(f"centrality relator image nonzero for s={s}, k={k}")
    if _gamma_iterated_comm_with_b(img_t, k) != gamma_identity(target_k):
        raise TheoremViolationError(f"order relator image nonzero for s={s}, k={k}")

    source_mod = max(1, 1 << k)
    l_mod = l_exact % source_mod
    source_ok = (3 * r - l_exact) % source_mod == 0
    return PhiData(
        s=s,
        source_k=k,
        target_k=target_k,
        r=r,
        l=l_mod,
        l_exact=l_exact,
        source_congruence_ok=source_ok,
        img_a=img_a,
        img_ab=img_ab,
        img_t=img_t,
    )


def phi_apply(phi_data: PhiData, g: GammaKElem) -> GammaKElem:
    if g.k != phi_data.source_k:
        raise LevelMismatchError(
            f"element at level {g.k}, map expects {phi_data.source_k}"
        )
    out = gamma_pow(phi_data.img_t, g.c)
    out = gamma_mul(out, gamma_pow(phi_data.img_a, g.n[0]))
    out = gamma_mul(out, gamma_pow(phi_data.img_ab, g.n[1]))
    return gamma_mul(out, gamma_pow(gamma_gen(phi_data.target_k, "b"), g.j))


def normal_surjectivity_check(phi_data: PhiData) -> bool:
    """Collapse test: quotient of the target by the normal closure of the image.

    Setting b = 1 identifies all conjugates of a and kills t, leaving the
    cyclic group on a with a^3 = 1 (from the defining relation) and
    a^(augmentation of s) = 1 (from the image of a); the quotient is trivial
    exactly when gcd(3, augmentation) = 1.
    """
    return math.gcd(3, augmentation(phi_data.s)) == 1


# ---------------------------------------------------------------------------
# tower prefixes


@dataclass(frozen=True)
class TowerPrefix:
    """A finite prefix of the tower: validated edges with accumulated levels."""

    edges: tuple[LaurentPoly, ...]
    levels: tuple[int, ...]
    norms: tuple[int, ...]
    odd_parts: tuple[int, ...]
    phis: tuple[PhiData, ...]

    @property
    def max_level(self) -> int:
        return self.levels[-1]

    def prefix_product(self, stage: int) -> LaurentPoly:
        out = ONE
        for s in self.edges[:stage]:
            out = out * s
        return out

    def has_even_edge(self) -> bool:
        return any(n % 2 == 0 for n in self.norms)


def tower_build(edges: Iterable[LaurentPoly], diagram_samples: int = 8) -> TowerPrefix:
    """Build a validated tower prefix from S-edges.

    Each edge gets a verified level map; the bottom square of the diagram
    (projection to the base group intertwines the map with the s-action) is
    spot-checked on deterministic sample elements.
    """
    edges = tuple(edges)
    levels = [0]
    norms: list[int] = []
    odd_parts: list[int] = []
    phis: list[PhiData] = []
    for s in edges:
        require_in_S(s)
        k = levels[-1]
        data = phi_build(s, k)
        p, v = two_adic_split(norm(s))
        levels.append(k + p)
        norms.append(norm(s))
        odd_parts.append(v)
        phis.append(data)
        _check_base_diagram(data, diagram_samples)
    return TowerPrefix(edges, tuple(levels), tuple(norms), tuple(odd_parts), tuple(phis))


def _check_base_diagram(data: PhiData, samples: int) -> None:
    k = data.source_k
    pool = [
        gamma_make(k, c, (m, n), j)
        for c in (0, 1)
        for m in (-1, 0, 2)
        for n in (0, 1)
        for j in (-1, 0, 1)
    ][: max(1, samples * 3)]
    for g in pool:
        lhs = gamma_project_h(phi_apply(data, g))
        rhs = h_s_action(data.s, gamma_project_h(g))
        if lhs != rhs:
            raise TheoremViolationError(
                f"base diagram does not commute for s={data.s} at level {k}"
            )


# ---------------------------------------------------------------------------
# the localized base group


@dataclass(frozen=True)
class HbarElem:
    """b^j a^f with f an S-fraction."""

    n: Fraction
    j: int


def hbar_mul(x: HbarElem, y: HbarElem) -> HbarElem:
    from .localization import frac_act_b, frac_add

    return HbarElem(frac_add(frac_act_b(x.n, y.j), y.n), x.j + y.j)


def hbar_inv(x: HbarElem) -> HbarElem:
    from .localization import frac_act_b, frac_neg

    return HbarElem(frac_neg(frac_act_b(x.n, -x.j)), -x.j)


def hbar_eq(x: HbarElem, y: HbarElem) -> bool:
    return x.j == y.j and frac_eq(x.n, y.n)


def hbar_from_h(x: HElem) -> HbarElem:
    return HbarElem(Fraction(x.n, ONE), x.j)


# ---------------------------------------------------------------------------
# the colimit model


@dataclass(frozen=True)
class LElem:
    """An element of the colimit model: a truncation element at a tower stage."""

    stage: int
    g: GammaKElem


def l_identity(tower: TowerPrefix) -> LElem:
    return LElem(0, gamma_identity(tower.levels[0]))


def l_from_gamma(tower: TowerPrefix, stage: int, g: GammaKElem) -> LElem:
    if not (0 <= stage < len(tower.levels)):
        raise PreconditionError(f"stage {stage} outside tower")
    if g.k != tower.levels[stage]:
        raise LevelMismatchError(f"element level {g.k} != stage level {tower.levels[stage]}")
    return LElem(stage, g)


def fraction_stage_vector(f: Fraction, tower: TowerPrefix, stage: int) -> Vec | None:
    """Integral stage representative of a fraction, if its denominator is a
    divisor of the stage's telescope product within the edge monoid."""
    q = divide_exact(tower.prefix_product(stage), f.den)
    if q is None:
        return None
    return vec_mat(f.num, evaluate_at_U(q))


def l_make(center: CenterColim, f: Fraction, j: int, tower: TowerPrefix) -> LElem:
    """Assemble t^center a^f b^j at the center's stage."""
    stage = center.stage
    vec = fraction_stage_vector(f, tower, stage)
    if vec is None:
        raise InsufficientTowerError(
            f"denominator {f.den} is not realizable at stage {stage}"
        )
    k = tower.levels[stage]
    return LElem(stage, gamma_make(k, center.residue, vec, j))


def l_push_to(x: LElem, stage: int, tower: TowerPrefix) -> LElem:
    while x.stage < stage:
        x = LElem(x.stage + 1, phi_apply(tower.phis[x.stage], x.g))
    return x


def l_mul(x: LElem, y: LElem, tower: TowerPrefix) -> LElem:
    stage = max(x.stage, y.stage)
    xg = l_push_to(x, stage, tower).g
    yg = l_push_to(y, stage, tower).g
    return LElem(stage, gamma_mul(xg, yg))


def l_inv(x: LElem) -> LElem:
    return LElem(x.stage, gamma_inv(x.g))


def l_eq(x: LElem, y: LElem, tower: TowerPrefix) -> bool:
    stage = max(x.stage, y.stage)
    return l_push_to(x, stage, tower).g == l_push_to(y, stage, tower).g


def l_project(x: LElem, tower: TowerPrefix) -> HbarElem:
    """Drop the center: the localized-base-group component."""
    h = gamma_project_h(x.g)
    return HbarElem(Fraction(h.n, tower.prefix_product(x.stage)), h.j)


def l_parts(x: LElem, tower: TowerPrefix) -> tuple[CenterColim, Fraction, int]:
    """The (center, module fraction, b-exponent) coordinates at x's stage."""
    hb = l_project(x, tower)
    return CenterColim(x.stage, x.g.c), hb.n, x.g.j
