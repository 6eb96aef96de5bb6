import pytest

from satake_verify.exact import VarTable
from satake_verify.lgroup import INERT, SPLIT, TwistedTorusElement, linear, unitary
from satake_verify.wcf import (
    ParabolicSpec,
    char_fixed_point_sum,
    d_factor,
    d_factor_dense,
    generic_element,
    schur_oracle,
    singular_invariant_weights,
    verify_epsilon_orbit,
    verify_parabolic_d_sum,
    verify_schur_oracle,
    verify_singular_vanishing,
    verify_singular_vanishing_all,
)


def _diag(names, place=SPLIT):
    T = VarTable(names)
    return T, TwistedTorusElement.make(unitary(len(names), place), T.gens())


def test_d_factor_rank_two():
    T, S = _diag(["a", "b"])
    a, b = T.gens()
    # lower root vectors: the identity term of the character sum is chi(S)/(1 - b/a)
    assert d_factor(S.group, ParabolicSpec.borel(2), S) == 1 - b / a


def test_d_factor_parabolic_matches_dense():
    T, S = _diag(["a", "b", "c"])
    a, b, c = T.gens()
    q = ParabolicSpec((2, 1))
    assert d_factor(S.group, q, S) == (1 - c / a) * (1 - c / b)
    assert d_factor(S.group, q, S) == d_factor_dense(S.group, q, S)


@pytest.mark.parametrize("g", [unitary(3, INERT), unitary(4, INERT), linear(2, INERT), linear(3, SPLIT)])
def test_d_factor_dense_agreement(g):
    _, S = generic_element(g)
    assert d_factor(g, None, S) == d_factor_dense(g, None, S)


@pytest.mark.parametrize("g", [unitary(3, SPLIT), unitary(4, INERT), linear(2, INERT), linear(3, SPLIT)])
def test_d_factor_multiplicative_over_levi(g):
    from satake_verify.wcf import adjoint_operator, root_labels, stable_parabolics

    _, S = generic_element(g)
    for q in stable_parabolics(g):
        levi_labels = [lab for lab in root_labels(g) if lab not in set(root_labels(g, q))]
        d_levi = 1
        for _, p in adjoint_operator(S, levi_labels).cycle_data():
            d_levi = d_levi * (1 - p)
        assert d_factor(g, None, S) == d_factor(g, q, S) * d_levi


def test_character_examples():
    T, S = _diag(["a", "b"])
    a, b = T.gens()
    assert char_fixed_point_sum((0, 0), S) == 1
    assert char_fixed_point_sum((1, 0), S) == a + b
    T1 = VarTable(["a1", "a2"])
    S1 = TwistedTorusElement.make(linear(1, INERT), T1.gens())
    a1, a2 = T1.gens()
    assert char_fixed_point_sum((2,), S1) == (a1 * a2) ** 2


def test_unitary_three_inert_characters():
    T, S = generic_element(unitary(3, INERT))
    t1, _, t3 = T.gens()
    assert char_fixed_point_sum((1, 0, -1), S) == t1 / t3 + t3 / t1
    assert char_fixed_point_sum((-1, 0, 1), S).is_zero()


def test_singular_vanishing_examples():
    assert verify_singular_vanishing(unitary(2, SPLIT), (-1, 0)).passed
    assert singular_invariant_weights(unitary(3, INERT)) == [(-1, 0, 1)]
    assert verify_singular_vanishing_all(linear(2, SPLIT)).passed


def test_epsilon_examples():
    rep = verify_epsilon_orbit(unitary(2, SPLIT), (-2, 0))
    assert rep.passed and rep.details["epsilon"] == "-1"
    rep = verify_epsilon_orbit(unitary(3, SPLIT), (2, 1, 0))
    assert rep.passed and rep.details["epsilon"] == "1"


def test_parabolic_sum_examples():
    assert verify_parabolic_d_sum(unitary(3, SPLIT), ParabolicSpec.whole(3)).passed
    assert verify_parabolic_d_sum(unitary(3, SPLIT), ParabolicSpec((2, 1))).passed
    assert verify_parabolic_d_sum(unitary(4, INERT), ParabolicSpec((1, 2, 1))).passed
    with pytest.raises(ValueError):
        verify_parabolic_d_sum(unitary(3, INERT), ParabolicSpec((2, 1)))


def test_schur_oracle_examples():
    T = VarTable(["a", "b", "c"])
    a, b, c = T.gens()
    assert schur_oracle((1, 0), [a, b]) == a + b
    assert schur_oracle((1, 1), [a, b]) == a * b
    tableaux = a * a * b + a * a * c + a * b * b + 2 * a * b * c + a * c * c + b * b * c + b * c * c
    assert schur_oracle((2, 1, 0), [a, b, c]) == tableaux


def test_schur_oracle_matches_characters():
    assert verify_schur_oracle(unitary(3, SPLIT), 4).passed
    assert verify_schur_oracle(linear(2, SPLIT), 4).passed
