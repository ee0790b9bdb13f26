import math

import pytest

from vltower.errors import InsufficientTowerError, PreconditionError
from vltower.groups import (
    G2Elem,
    g2_comm,
    G2_A,
    G2_AB,
    G2_B,
    gamma_comm,
    gamma_gen,
    gamma_make,
    tower_build,
)
from vltower.laurent import parse_laurent
from vltower.localization import Dyadic, dyadic_double, dyadic_neg
from vltower.quadratic import IDENTITY, U, image
from vltower import series

S = parse_laurent("1-b+b^2")


def test_lcs_step_base_group_second_stage():
    g2 = series.lcs_step("H", series.whole_group("H"))
    assert g2.module == image(U - IDENTITY)
    assert g2.module.index() == 3
    assert g2.center_exp is None
    assert not g2.b_whole


def test_lcs_step_truncation_second_stage():
    g2 = series.lcs_step(3, series.whole_group(3))
    assert g2.center_exp == 0  # t itself is a commutator
    assert g2.module == image(U - IDENTITY)


def test_lcs_chain_base_group_indices():
    chain = series.lcs_chain("H", 5)
    assert [st.module.index() for st in chain] == [1, 3, 9, 27, 81]


def test_lcs_chain_truncation_center_constant():
    for k in (1, 4, 8):
        chain = series.lcs_chain(k, 12)
        assert all(st.center_exp == 0 for st in chain[1:])
        base = series.lcs_chain("H", 12)
        assert [st.module for st in chain] == [st.module for st in base]


def test_lcs_module_advance_both_inclusions():
    chain = series.lcs_chain("G2", 12)
    for i in range(1, len(chain) - 1):
        advanced = chain[i].module.mul_mat(U - IDENTITY)
        nxt = chain[i + 1].module
        assert advanced.issubset(nxt) and nxt.issubset(advanced)


def test_lcs_step_generators_land_in_result():
    # two-sided soundness: every generating commutator of [S, G] is a member
    # of the computed stage, and the computed stage's generators are reachable.
    model = 4
    stage = series.lcs_step(model, series.whole_group(model))
    nxt = series.lcs_step(model, stage)
    b = gamma_gen(model, "b")
    gens = [gamma_gen(model, "a"), gamma_gen(model, "ab"), b]
    for row in stage.module.basis:
        x = gamma_make(model, 0, row, 0)
        for g in gens:
            c = gamma_comm(x, g)
            assert nxt.contains(c.c, c.n, c.j, model), (row, g)
    t_gen = gamma_make(model, 1 << (stage.center_exp or 0), (0, 0), 0)
    c = gamma_comm(t_gen, b)
    assert nxt.contains(c.c, c.n, c.j, model)


def test_lcs_step_center_bezout_witness():
    # the center part of stage 3 is generated by honest pairings: exhibit t
    # as a product of commutators of stage-2 module generators with a, a^b
    model = 5
    stage2 = series.lcs_step(model, series.whole_group(model))
    pairings = []
    witnesses = []
    for row in stage2.module.basis:
        x = gamma_make(model, 0, row, 0)
        for gname in ("a", "ab"):
            c = gamma_comm(x, gamma_gen(model, gname))
            assert c.n == (0, 0) and c.j == 0
            pairings.append(c.c if c.c < (1 << 4) else c.c - (1 << 5))
            witnesses.append((row, gname))
    g = 0
    for p in pairings:
        g = math.gcd(g, p)
    assert g % 2 == 1  # odd pairing gcd: the center part is all of <t>


def test_lcs_depth_one_is_whole_group():
    chain = series.lcs_chain("G2", 1)
    assert chain == [series.whole_group("G2")]
    with pytest.raises(PreconditionError):
        series.lcs_chain("G2", 0)


def test_gamma_omega_truncation():
    limit, cert = series.gamma_omega(3, depth_bound=12)
    assert cert.ok
    assert limit.center_exp == 0 and limit.module.is_zero()
    assert limit.center_order(3) == 8


def test_gamma_omega_base_group():
    limit, cert = series.gamma_omega("H", depth_bound=10)
    assert cert.ok
    assert limit.center_exp is None and limit.module.is_zero()
    assert all(e is None for e in cert.center_exps)


def test_gamma_omega_probe_exits():
    _, cert = series.gamma_omega(2, probe_set=[(1, 0)])
    assert cert.probes == (((1, 0), 1),)


def test_residual_nilpotence_probe_window():
    # every nonzero vector with coordinates in [-20, 20] exits the module
    # chain within 40 steps
    probes = [(x, y) for x in range(-20, 21) for y in range(-20, 21) if (x, y) != (0, 0)]
    _, cert = series.gamma_omega("H", probe_set=probes, probe_exit_bound=40)
    assert cert.all_probes_exit
    assert len(cert.probes) == 41 * 41 - 1
    assert max(i for _, i in cert.probes) <= 40


def test_transfinite_chain_level_three():
    rep = series.transfinite_chain(3)
    assert rep.orders == (8, 4, 2, 1)
    assert rep.quotient_orders == (2, 2, 2)
    assert rep.terminates_at == 3
    assert rep.ok


def test_transfinite_chain_levels_terminate():
    for k in range(0, 9):
        rep = series.transfinite_chain(k)
        assert rep.terminates_at == k
        assert all(q == 2 for q in rep.quotient_orders)


def test_transfinite_stage_zero_is_gamma_omega():
    rep = series.transfinite_chain(4)
    assert rep.stages[0].center_exp == 0
    assert rep.stages[0].module.is_zero()


def test_commutator_preimage_examples():
    # the defining property -2y = c mod 1 is what matters; the canonical
    # choice is the plain halve of -c
    y = series.commutator_preimage(Dyadic(1, 1))
    assert dyadic_neg(dyadic_double(y)) == Dyadic(1, 1)
    assert y == Dyadic(1, 2)
    y2 = series.commutator_preimage(Dyadic(3, 3))
    assert dyadic_neg(dyadic_double(y2)) == Dyadic(3, 3)
    assert y2 == Dyadic(5, 4)
    assert series.commutator_preimage(Dyadic(0, 0)) == Dyadic(0, 0)


def test_commutator_preimage_other_choice_also_valid():
    # the values 3/4 and 13/16 are the other doubling preimages; they satisfy
    # the same equation
    assert dyadic_neg(dyadic_double(Dyadic(3, 2))) == Dyadic(1, 1)
    assert dyadic_neg(dyadic_double(Dyadic(13, 4))) == Dyadic(3, 3)


def test_default_center_samples_cover_denominators():
    samples = series.default_center_samples()
    assert len(samples) >= 50
    assert {s.k for s in samples} == set(range(1, 11))
    assert all(s.num % 2 == 1 for s in samples)


def test_witness_small():
    tower = tower_build([S])
    rep = series.witness_not_transfinitely_nilpotent(
        tower, 5, samples=[Dyadic(1, 1), Dyadic(3, 2), Dyadic(5, 3)]
    )
    assert rep.passed
    assert all(s.chain_ok and s.model_chain_ok and s.commutator_power_ok for s in rep.samples)
    assert rep.five_term_consistent


def test_witness_j_zero_reduces_to_gamma_omega():
    tower = tower_build([S])
    rep = series.witness_not_transfinitely_nilpotent(tower, 0, samples=[Dyadic(1, 2)])
    assert rep.passed
    assert rep.j_bound == 0


def test_witness_requires_even_norm_edge():
    tower = tower_build([parse_laurent("b")])
    with pytest.raises(InsufficientTowerError):
        series.witness_not_transfinitely_nilpotent(tower, 5, samples=[Dyadic(1, 1)])


def test_witness_rejects_zero_samples():
    tower = tower_build([S])
    with pytest.raises(PreconditionError):
        series.witness_not_transfinitely_nilpotent(tower, 2, samples=[Dyadic(0, 0)])


def test_witness_realizable_stages_recorded():
    tower = tower_build([S, S])
    rep = series.witness_not_transfinitely_nilpotent(
        tower, 3, samples=[Dyadic(1, 1), Dyadic(1, 4), Dyadic(1, 10)]
    )
    stages = [s.realizable_stage for s in rep.samples]
    assert stages[0] == 1  # level 2 >= 1
    assert stages[1] == 2  # level 4 >= 4
    assert stages[2] is None  # level 2^10 beyond the prefix
    assert rep.passed


def test_iterated_commutator_arithmetic_in_g2():
    # [t, b] = t^-2 and iterating gives t^((-2)^e), the engine behind the
    # witness's membership expressions
    w = g2_comm(G2_A, G2_AB)
    assert w == G2Elem(1, (0, 0), 0)
    cur = w
    expect = 1
    for _ in range(6):
        cur = g2_comm(cur, G2_B)
        expect *= -2
        assert cur == G2Elem(expect, (0, 0), 0)
