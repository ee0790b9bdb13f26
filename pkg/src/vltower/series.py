"""Lower-central-series engine and the non-transfinite-nilpotence witness.

Finite stages are computed exactly: in every model here the i-th stage (for
i >= 2) is a set of the shape (center part <t^(2^e)>, module lattice, trivial
b part), the module part advancing by one (U - I) multiplication per step and
the center part generated by the commutator pairings of the module generators
together with [t^(2^e), b] = t^(-2^(e+1)).

The limit stage of a truncation is certified, not computed by an infinite
intersection: the center parts of the finite stages are constant and every
nonzero probe vector exits the module chain at a finite index.  Transfinite
stages of a truncation then halve the center until it dies; the witness
shows the colimit model instead never runs out, by exhibiting for each
sampled dyadic center element a full chain of commutator preimages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import homology
from .errors import InsufficientTowerError, PreconditionError, TheoremViolationError
from .groups import Model, TowerPrefix, gamma_comm, gamma_gen, gamma_make, gamma_pow
from .localization import Dyadic, dyadic_double, dyadic_halve, dyadic_neg
from .quadratic import IDENTITY, U, Lattice, Vec, intersect_chain_probe

_U_MINUS_I = U - IDENTITY


def _is_central_model(model: Model) -> bool:
    return model != "H"


def _truncation_level(model: Model) -> int | None:
    """2-power center modulus exponent: None for the infinite-center model."""
    if model == "G2":
        return None
    if model == "H":
        return 0
    k = int(model)
    if k < 0:
        raise ValueError("negative truncation level")
    return k


@dataclass(frozen=True)
class SubgroupData:
    """A subgroup in the shape the lower central series takes here.

    center_exp = e means the center part is <t^(2^e)> (inside Z or Z/2^k
    depending on the model); None means no center part.  The b part is the
    whole cyclic group for the first stage only.
    """

    center_exp: int | None
    module: Lattice
    b_whole: bool

    def center_order(self, model: Model) -> int | float:
        if self.center_exp is None:
            return 1
        k = _truncation_level(model)
        if k is None:
            return math.inf
        return 1 << max(0, k - self.center_exp)

    def contains(self, c: int, n: Vec, j: int, model: Model) -> bool:
        if j != 0 and not self.b_whole:
            return False
        if not self.module.contains(n):
            return False
        if self.center_exp is None:
            return c == 0 or not _is_central_model(model)
        k = _truncation_level(model)
        mod = None if k is None else (1 << k)
        step = 1 << self.center_exp
        if mod is None:
            return c % step == 0
        return (c % mod) % math.gcd(step, mod) == 0


def whole_group(model: Model) -> SubgroupData:
    center = 0 if _is_central_model(model) else None
    return SubgroupData(center, Lattice.whole(), True)


def lcs_step(model: Model, s: SubgroupData) -> SubgroupData:
    """One lower-central-series step: the subgroup generated by commutators
    of s with the group generators, in the representable shape.

    Contributions: [x, b] advances the module part by (U - I); [x, a] and
    [x, a^b] are pure center elements with exponents given by the symplectic
    pairings of x against the basis; [t^(2^e), b] doubles the center depth.
    The module part must be b-invariant for the shape to be representable.
    """
    if not s.module.mul_mat(U).issubset(s.module):
        raise PreconditionError("module part is not b-invariant; not a series stage")
    central = _is_central_model(model)
    candidates: list[int] = []
    if central and s.center_exp is not None:
        candidates.append(1 << (s.center_exp + 1))
    if central:
        for row in s.module.basis:
            candidates.extend((row[0], row[1]))  # pairings against a and a^b
        if s.b_whole:
            candidates.append(2)  # [b, t]
    g = 0
    for cand in candidates:
        g = math.gcd(g, cand)
    if not central or g == 0:
        center_exp = None
    else:
        if g & (g - 1):
            raise TheoremViolationError(f"center generator gcd {g} is not a 2-power")
        center_exp = g.bit_length() - 1
    return SubgroupData(center_exp, s.module.mul_mat(_U_MINUS_I), False)


def lcs_chain(model: Model, depth: int) -> list[SubgroupData]:
    """Stages 1..depth of the lower central series."""
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    chain = [whole_group(model)]
    for _ in range(depth - 1):
        chain.append(lcs_step(model, chain[-1]))
    return chain


def module_chain_lattice(i: int) -> Lattice:
    """The module part of stage i+1: the image of (U - I)^i."""
    m = IDENTITY
    for _ in range(i):
        m = m * _U_MINUS_I
    return Lattice.from_rows(m.rows())


@dataclass(frozen=True)
class GammaOmegaCertificate:
    """Desk certificate for the limit stage of one model."""

    model: Model | str
    depth_bound: int
    center_exps: tuple[int | None, ...]
    center_constant: bool
    probes: tuple[tuple[Vec, int], ...]
    all_probes_exit: bool

    @property
    def ok(self) -> bool:
        return self.center_constant and self.all_probes_exit


def _default_probes(bound: int) -> list[Vec]:
    return [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if (x, y) != (0, 0)
    ]


def gamma_omega(
    model: Model,
    depth_bound: int = 12,
    probe_set: list[Vec] | None = None,
    probe_exit_bound: int = 60,
) -> tuple[SubgroupData, GammaOmegaCertificate]:
    """The limit stage with its two-part certificate.

    (a) the center parts of the finite stages are constantly the full <t>
    from stage 2 through depth_bound (vacuous for the base model); (b) every
    probe vector exits the module chain at a finite index, so the module part
    of the limit is trivial on all probes.
    """
    chain = lcs_chain(model, depth_bound)
    central = _is_central_model(model)
    exps = tuple(stage.center_exp for stage in chain[1:])
    center_constant = all(e == 0 for e in exps) if central else all(e is None for e in exps)
    probes = probe_set if probe_set is not None else _default_probes(2)
    results: list[tuple[Vec, int]] = []
    all_exit = True
    for v in probes:
        exit_i = intersect_chain_probe(v, module_chain_lattice, probe_exit_bound)
        if exit_i is None:
            all_exit = False
            raise TheoremViolationError(f"probe {v} never exits the module chain")
        results.append((v, exit_i))
    cert = GammaOmegaCertificate(
        model, depth_bound, exps, center_constant, tuple(results), all_exit
    )
    if central and not center_constant:
        raise TheoremViolationError(f"center parts of finite stages not constant: {exps}")
    limit = SubgroupData(0 if central else None, Lattice.zero(), False)
    return limit, cert


@dataclass(frozen=True)
class TransfiniteReport:
    """Stages past the limit for a truncation: orders and quotient orders."""

    k: int
    stages: tuple[SubgroupData, ...]
    orders: tuple[int, ...]
    quotient_orders: tuple[int, ...]
    terminates_at: int

    @property
    def ok(self) -> bool:
        return (
            self.terminates_at == self.k
            and all(q == 2 for q in self.quotient_orders)
            and self.orders[-1] == 1
        )


def transfinite_chain(k: int, j_bound: int | None = None) -> TransfiniteReport:
    """Stages omega + j of the level-k truncation, until trivial.

    Starting from the limit stage (<t>, zero module), each step is one
    lcs_step; the center halves each time, so the chain dies at j = k with
    all successive quotients of order 2.
    """
    if k < 0:
        raise PreconditionError("negative truncation level")
    limit = j_bound if j_bound is not None else k
    stages = [SubgroupData(0, Lattice.zero(), False)]
    while stages[-1].center_order(k) > 1 and len(stages) <= limit:
        stages.append(lcs_step(k, stages[-1]))
    orders = tuple(int(s.center_order(k)) for s in stages)
    quotients = tuple(orders[i] // orders[i + 1] for i in range(len(orders) - 1))
    terminates = next((i for i, o in enumerate(orders) if o == 1), len(orders))
    return TransfiniteReport(k, tuple(stages), orders, quotients, terminates)


def commutator_preimage(c: Dyadic) -> Dyadic:
    """y with [y, b] = c in the colimit center: -2y = c mod 1, y the canonical
    halve of -c.  Verified by evaluation before returning."""
    y = dyadic_halve(dyadic_neg(c))
    if dyadic_neg(dyadic_double(y)) != c:
        raise TheoremViolationError(f"preimage check failed for {c}")
    return y


def default_center_samples(max_log_den: int = 10, per_level: int = 7, seed: int = 0) -> list[Dyadic]:
    """Deterministic nonzero dyadic samples across denominators up to 2**max_log_den.

    All odd numerators are taken at shallow levels; deeper levels contribute a
    seeded sample of ``per_level`` odd numerators each.
    """
    import random

    rng = random.Random(seed)
    samples: list[Dyadic] = []
    for k in range(1, max_log_den + 1):
        odds = list(range(1, 1 << k, 2))
        take = odds if len(odds) <= per_level else sorted(rng.sample(odds, per_level))
        samples.extend(Dyadic(n, k) for n in take)
    return samples


@dataclass(frozen=True)
class WitnessSample:
    value: str
    depth: int
    chain_ok: bool
    model_level: int
    model_chain_ok: bool
    commutator_power_ok: bool
    realizable_stage: int | None

    @property
    def ok(self) -> bool:
        return self.chain_ok and self.model_chain_ok and self.commutator_power_ok


@dataclass(frozen=True)
class WitnessReport:
    """Executable evidence that the colimit model is not transfinitely nilpotent."""

    edges: tuple[str, ...]
    j_bound: int
    samples: tuple[WitnessSample, ...]
    gamma_omega_ok: bool
    five_term_consistent: bool

    @property
    def passed(self) -> bool:
        return (
            self.gamma_omega_ok
            and self.five_term_consistent
            and bool(self.samples)
            and all(s.ok for s in self.samples)
        )


def _model_residue(c: Dyadic, level: int) -> int:
    """The t-exponent representing c in the level-k truncation via the
    standard doubling inclusions (no odd units involved here)."""
    if c.k > level:
        raise PreconditionError(f"denominator 2^{c.k} exceeds level {level}")
    return c.num << (level - c.k)


def _check_iterated_commutator_power(c: Dyadic, level: int) -> bool:
    """Verify t^(residue of c) is a power of the iterated commutator
    [a, a^b, b, ..., b] of depth matching the 2-adic valuation."""
    if c.num == 0:
        return True
    e = level - c.k
    w = gamma_comm(gamma_gen(level, "a"), gamma_gen(level, "ab"))
    for _ in range(e):
        w = gamma_comm(w, gamma_gen(level, "b"))
    # w = t^((-2)^e); solve w^x = t^residue with x odd.
    residue = _model_residue(c, level)
    x = (c.num * pow(-1, e, 1 << c.k)) % (1 << c.k)
    return gamma_pow(w, x) == gamma_make(level, residue, (0, 0), 0)


def witness_not_transfinitely_nilpotent(
    tower: TowerPrefix,
    j_bound: int,
    samples: list[Dyadic] | None = None,
    seed: int = 0,
    depth_bound: int = 12,
) -> WitnessReport:
    """Certify that the limit stage of the colimit model never shrinks.

    For each sampled nonzero center element c: (a) c lies in the limit stage,
    witnessed by the constancy certificate plus an explicit iterated-commutator
    power expression evaluated in a truncation deep enough to hold c; (b) a
    full chain of commutator preimages c = [y1, b], y1 = [y2, b], ... of
    length j_bound exists, verified both in dyadic arithmetic and in the
    truncation model, so c lies in every stage omega + j.  Requires at least
    one even-norm edge, since otherwise the prefix's center colimit is trivial.
    """
    if j_bound < 0:
        raise PreconditionError("negative stage bound")
    if not tower.has_even_edge():
        raise InsufficientTowerError(
            "no even-norm edge: the center colimit of this prefix is trivial"
        )
    if samples is None:
        samples = default_center_samples(seed=seed)
    if not samples:
        raise PreconditionError("at least one center sample is required")
    if any(s.num == 0 for s in samples):
        raise PreconditionError("witness samples must be nonzero center elements")

    _, omega_cert_low = gamma_omega(max(tower.max_level, 1), depth_bound=depth_bound)
    deep_level_needed = max(s.k for s in samples) + j_bound
    _, omega_cert_deep = gamma_omega(deep_level_needed, depth_bound=depth_bound)
    gamma_omega_ok = omega_cert_low.ok and omega_cert_deep.ok

    out: list[WitnessSample] = []
    for c in samples:
        chain = [c]
        chain_ok = True
        for _ in range(j_bound):
            chain.append(commutator_preimage(chain[-1]))
        for j in range(j_bound):
            if dyadic_neg(dyadic_double(chain[j + 1])) != chain[j]:
                chain_ok = False
        level = c.k + j_bound
        bgen = gamma_gen(level, "b")
        model_ok = True
        for j in range(j_bound):
            y = gamma_make(level, _model_residue(chain[j + 1], level), (0, 0), 0)
            target = gamma_make(level, _model_residue(chain[j], level), (0, 0), 0)
            if gamma_comm(y, bgen) != target:
                model_ok = False
        comm_ok = _check_iterated_commutator_power(c, level) and all(
            _check_iterated_commutator_power(y, level) for y in chain[1:]
        )
        realizable = next(
            (i for i, lev in enumerate(tower.levels) if lev >= c.k), None
        )
        out.append(
            WitnessSample(
                value=str(c),
                depth=c.k,
                chain_ok=chain_ok,
                model_level=level,
                model_chain_ok=model_ok,
                commutator_power_ok=comm_ok,
                realizable_stage=realizable,
            )
        )

    h2 = homology.colim_h2(tower)
    five = homology.five_term_report(h2)
    return WitnessReport(
        edges=tuple(str(s) for s in tower.edges),
        j_bound=j_bound,
        samples=tuple(out),
        gamma_omega_ok=gamma_omega_ok,
        five_term_consistent=five.emitted,
    )
