import random

import pytest

from satake_verify.exact import VarTable
from satake_verify.lgroup import (
    INERT,
    SPLIT,
    CapacityExceeded,
    RegularOrbit,
    Singular,
    TwistedTorusElement,
    WeylElement,
    char_eval,
    classify_weight,
    cocharacter_weight,
    dot_action,
    enumerate_lambda_pp,
    is_dominant,
    is_regular,
    linear,
    twisted_weyl_group,
    unitary,
    weyl_act,
)


def test_twisted_weyl_group_orders():
    assert len(twisted_weyl_group(unitary(2, INERT))) == 2
    assert len(twisted_weyl_group(unitary(3, INERT))) == 2
    assert len(twisted_weyl_group(unitary(4, INERT))) == 8
    assert len(twisted_weyl_group(linear(2, SPLIT))) == 4
    assert len(twisted_weyl_group(linear(2, INERT))) == 2


def test_twisted_weyl_group_is_closed_under_products():
    group = twisted_weyl_group(unitary(4, INERT))
    perms = {w.perm for w in group}
    for u in group:
        for v in group:
            assert (u * v).perm in perms


def test_capacity_bound():
    with pytest.raises(CapacityExceeded):
        twisted_weyl_group(unitary(9, SPLIT))


def test_weyl_act_examples():
    T = VarTable(["a1", "a2", "b1", "b2"])
    g = linear(2, SPLIT)
    S = TwistedTorusElement.make(g, T.gens())
    assert weyl_act(WeylElement.identity(g), S) == S
    swap = WeylElement.from_pair(g, (1, 0), (0, 1))
    moved = weyl_act(swap, S)
    assert moved.coords[0] == T.var("a2") and moved.coords[1] == T.var("a1")
    assert moved.coords[2:] == S.coords[2:]
    (gen,) = [w for w in twisted_weyl_group(unitary(2, INERT)) if not w.is_identity()]
    S2 = TwistedTorusElement.make(unitary(2, INERT), VarTable(["c1", "c2"]).gens())
    assert weyl_act(gen, weyl_act(gen, S2)) == S2


def test_is_regular_examples():
    T = VarTable(["a", "b"])
    g = unitary(2, SPLIT)
    assert is_regular(TwistedTorusElement.make(g, T.gens()))
    a = T.var("a")
    assert not is_regular(TwistedTorusElement.make(g, [a, a]))


def test_dot_action_examples():
    g = unitary(2, SPLIT)
    ident = WeylElement.identity(g)
    swap = WeylElement(g, (1, 0))
    assert dot_action(ident, (3, 1)) == (3, 1)
    assert dot_action(swap, (0, 0)) == (-1, 1)


def test_dot_action_is_an_action():
    rng = random.Random(1)
    g = linear(3, SPLIT)
    group = twisted_weyl_group(g)
    for _ in range(20):
        u, v = rng.choice(group), rng.choice(group)
        chi = tuple(rng.randint(-3, 3) for _ in range(6))
        assert dot_action(u * v, chi) == dot_action(u, dot_action(v, chi))


def test_classify_weight_examples():
    g = unitary(2, SPLIT)
    dom = classify_weight((2, -1), g)
    assert isinstance(dom, RegularOrbit) and dom.w_chi.is_identity() and dom.chi_plus == (2, -1)
    assert isinstance(classify_weight((-1, 0), g), Singular)
    # (-2, 0) + rho = (-3/2, -1/2); the transposition gives (-1, -1), which is dominant
    cls = classify_weight((-2, 0), g)
    assert cls.chi_plus == (-1, -1)
    assert is_dominant(cls.chi_plus, g)
    assert dot_action(cls.w_chi, (-2, 0)) == cls.chi_plus


def test_enumerate_lambda_pp_examples():
    assert enumerate_lambda_pp(1, 3) == [(0,), (1,), (2,), (3,)]
    assert enumerate_lambda_pp(2, 2) == [(0, 0), (1, 0), (1, 1), (2, 0)]
    assert len(enumerate_lambda_pp(2, 4)) == 9
    # split cocharacters are pairs of partitions, graded by total size
    assert len(enumerate_lambda_pp(1, 2, SPLIT)) == 6


def test_char_eval_examples():
    T = VarTable(["a1", "a2"])
    S = TwistedTorusElement.make(linear(1, INERT), T.gens())
    assert char_eval((0,), S) == 1
    a1, a2 = T.gens()
    assert char_eval(cocharacter_weight((3,), 1), S) == (a1 * a2) ** 3
    assert char_eval((1, 2), S) * char_eval((2, 0), S) == char_eval((3, 2), S)
