import pytest

from vltower.errors import NotInSError
from vltower.groups import phi_build, tower_build
from vltower.laurent import ONE, enumerate_S, parse_laurent
from vltower.quadratic import norm, predicted_parity
from vltower import homology

S = parse_laurent("1-b+b^2")


def test_h2_constants():
    assert homology.h2_group("H").group_value == "Z/2"
    assert homology.h2_group("H").generator_valuation == 0
    assert homology.h2_group(5).generator_valuation == 5
    with pytest.raises(ValueError):
        homology.h2_group("G2")


def test_s_star_examples():
    assert homology.s_star_on_H2(S) == "zero"
    assert homology.s_star_on_H2(ONE) == "iso"
    assert homology.s_star_on_H2(parse_laurent("b")) == "iso"
    with pytest.raises(NotInSError):
        homology.s_star_on_H2(parse_laurent("2b"))


def test_three_way_parity_agreement():
    for s in enumerate_S(4, 2):
        zero = homology.s_star_on_H2(s) == "zero"
        assert zero == (predicted_parity(s) == 0)
        assert zero == (norm(s) % 2 == 0)


def test_valuation_worked_examples():
    assert homology.h2_generator_image_valuation(phi_build(S, 0)) == 2
    assert homology.h2_generator_image_valuation(phi_build(S, 2)) == 4
    for k in (0, 1, 3):
        assert homology.h2_generator_image_valuation(phi_build(ONE, k)) == k


def test_valuation_equals_source_plus_p_for_enumerated_edges():
    count = 0
    for s in enumerate_S(3, 1):
        if norm(s) % 2 == 0:
            data = phi_build(s, 1)
            assert homology.h2_generator_image_valuation(data) == data.target_k
            count += 1
    assert count > 0


def test_two_connected_certificate_examples():
    cert = homology.two_connected_certificate(phi_build(S, 0))
    assert cert.ok
    assert cert.h1_a_multiplier_mod3 == 1
    assert cert.h2_valuation == 2
    assert homology.two_connected_certificate(phi_build(ONE, 4)).ok


def test_two_connected_for_all_edges_of_a_tower():
    tower = tower_build([S, parse_laurent("b"), S])
    for data in tower.phis:
        assert homology.two_connected_certificate(data).ok


def test_colim_h2_folds():
    assert homology.colim_h2(tower_build([S])).value == "zero"
    assert homology.colim_h2(tower_build([parse_laurent("b")] * 2)).value == "Z/2-so-far"
    assert homology.colim_h2(tower_build([])).value == "Z/2-so-far"
    mixed = homology.colim_h2(tower_build([parse_laurent("b"), S]))
    assert mixed.value == "zero" and mixed.first_even_edge == 1


def test_five_term_statement():
    zero = homology.colim_h2(tower_build([S]))
    stmt = homology.five_term_report(zero)
    assert stmt.emitted
    assert "omega" in stmt.conclusion
    assert stmt.provenance == "paper-assumed"
    # idempotent: same input, same output
    assert homology.five_term_report(zero) == stmt


def test_five_term_withheld():
    odd = homology.colim_h2(tower_build([parse_laurent("b")]))
    stmt = homology.five_term_report(odd)
    assert not stmt.emitted
    assert stmt.reason
