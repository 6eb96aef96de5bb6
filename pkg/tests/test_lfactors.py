from fractions import Fraction

import pytest

from satake_verify.exact import VarTable
from satake_verify.lgroup import INERT, SPLIT, UNITARY, LINEAR, TwistedTorusElement, linear, unitary
from satake_verify.lfactors import (
    PoleZeroCollision,
    SatakeData,
    asai_op,
    assemble_L_quotient,
    block_decompose_itimes,
    delta_constant,
    empty_op,
    eta_lfactor,
    itimes,
    levi_blocks,
    lfactor,
    lfactor_dense,
    liu_constant,
    modulus_exponents,
    modulus_identity_defect,
    normalized_L_quotient,
    star_coords,
    star_embed,
    star_linear,
    verify_modulus_identity,
)

T = VarTable(["a1", "a2", "b1", "b2", "c1", "c2", "z", "Q", "X"])
a1, a2, b1, b2, c1, c2, z, Q, X = T.gens()


def _det(op, z):
    out = T.one()
    for f in op.char_factors(z):
        out = out * f
    return out


def test_itimes_rank_one():
    S1 = TwistedTorusElement.make(linear(1, INERT), [a1, a2])
    S2 = TwistedTorusElement.make(linear(1, INERT), [b1, b2])
    op = itimes(S1, S2)
    assert op.dimension == 2
    assert _det(op, z) == 1 - z**2 * a1 * a2 * b1 * b2
    Ss1 = TwistedTorusElement.make(linear(1, SPLIT), [a1, a2])
    Ss2 = TwistedTorusElement.make(linear(1, SPLIT), [b1, b2])
    assert _det(itimes(Ss1, Ss2), z) == (1 - z * a1 * b1) * (1 - z * a2 * b2)


def test_itimes_frobenius_square_is_block_diagonal():
    S1 = TwistedTorusElement.make(linear(1, INERT), [a1, a2])
    S2 = TwistedTorusElement.make(linear(1, INERT), [b1, b2])
    op = itimes(S1, S2)
    sq = op.compose(op)
    assert sq.perm == (0, 1)
    assert all(w == a1 * a2 * b1 * b2 for w in sq.weights)


def test_star_embedding_examples():
    S = TwistedTorusElement.make(unitary(1, INERT), [c1])
    assert star_embed(S).coords == (c1, 1 / c1)
    S = TwistedTorusElement.make(unitary(2, INERT), [c1, c2])
    assert star_embed(S).coords == (c1, c2, 1 / c2, 1 / c1)
    assert star_coords(star_coords((c1, c2))) == (c1, c2)
    L = TwistedTorusElement.make(linear(2, INERT), [a1, a2, b1, b2])
    assert star_linear(star_linear(L)) == L


def test_asai_examples():
    S = TwistedTorusElement.make(linear(1, INERT), [a1, a2])
    assert _det(asai_op(S, 0), z) == 1 - z * a1 * a2
    assert _det(asai_op(S, 1), z) == 1 + z * a1 * a2
    Ss = TwistedTorusElement.make(linear(1, SPLIT), [a1, a2])
    assert _det(asai_op(Ss, 1), z) == 1 - z * a1 * a2


def test_asai_pair_is_tensor_square_at_inert_places():
    S = TwistedTorusElement.make(linear(2, INERT), [a1, a2, b1, b2])
    lhs = _det(asai_op(S, 0), z) * _det(asai_op(S, 1), z)
    assert lhs == _det(itimes(S, S), z)


def test_lfactor_examples():
    assert lfactor(empty_op(), 0).reciprocal() == 1
    assert eta_lfactor(1, 0, INERT, Q, X).reciprocal() == 1 + X
    assert eta_lfactor(1, 0, SPLIT, Q, X).reciprocal() == 1 - X
    S = TwistedTorusElement.make(linear(2, INERT), [a1, a2, b1, b2])
    op1, op2 = itimes(S, S), asai_op(S, 1)
    both = lfactor(op1.direct_sum(op2), Fraction(1, 2), Q, X).reciprocal()
    split = lfactor(op1, Fraction(1, 2), Q, X).reciprocal() * lfactor(op2, Fraction(1, 2), Q, X).reciprocal()
    assert both == split
    assert lfactor(op1, 1, Q, X).reciprocal() == lfactor_dense(op1, 1, Q, X)


def test_delta_constants():
    assert delta_constant(LINEAR, 0, INERT, Q) == 1
    assert delta_constant(LINEAR, 1, INERT, Q) == 1 / (1 - Q**-4)
    expected = 1 / ((1 - Q**-2) ** 2 * (1 - Q**-4) ** 2)
    assert delta_constant(LINEAR, 2, SPLIT, Q) == expected
    assert liu_constant(2, INERT, Q) == (1 + Q**-2) * (1 - Q**-4)
    assert delta_constant(UNITARY, 0, SPLIT, Q) == 1


def test_modulus_exponents():
    assert modulus_exponents("B_r", 2, 0) == [1, -1]
    assert modulus_exponents("P", 1, 0) == [2]
    for r in (1, 2, 3):
        for m in (0, 1, 2, 3):
            assert modulus_identity_defect(r, m) == [Fraction(1, 2)] * r
    assert verify_modulus_identity(2, 2).passed
    with pytest.raises(ValueError):
        modulus_exponents("R", 1, 0)


def test_block_map_reads_first_and_star_of_last():
    data = SatakeData.generic(1, 0, INERT)
    d1, d2, d3 = data.table.gens(["d1", "d2", "d3"])
    Sr, Smid = levi_blocks(data.S_n1, 1, 0)
    assert Sr.coords == (d1, 1 / d3)
    assert Smid.coords == (d2,)


def test_block_decomposition_of_the_tensor_product():
    data = SatakeData.generic(1, 0, INERT)
    blocks = block_decompose_itimes(data)
    assert sum(b.dimension for b in blocks) == 2 * data.r * data.n1
    whole = lfactor(itimes(data.S_tau_s, data.S_n1), Fraction(1, 2), data.Q, data.X, 0).reciprocal()
    prod = T_one = data.table.one()
    for b in blocks:
        prod = prod * lfactor(b, Fraction(1, 2), data.Q, data.X, 0).reciprocal()
    assert whole == prod
    del T_one


def test_normalized_quotient_degenerate_ranks():
    data = SatakeData.generic(0, 0, INERT)
    q = assemble_L_quotient(data, "bessel")
    # L(s+1/2, eta) cancels the Asai factor of the rank-one parameter
    assert q.collisions
    assert q.value == 1
    with pytest.raises(PoleZeroCollision):
        normalized_L_quotient(data, strict=True)


def test_normalized_quotient_against_hand_assembly():
    data = SatakeData.generic(1, 1, INERT)
    Q, X = data.Q, data.X
    n1 = data.n1
    value = normalized_L_quotient(data, "bessel")
    num = data.table.one()
    for i in range(1, n1 + 1):
        num = num / (1 - (-1) ** i * Q ** (1 - 2 * i) * X)
    num = num / lfactor(itimes(data.S_m, data.S_n1), 0, Q, X).reciprocal()
    den = lfactor(asai_op(star_embed(data.S_m), 1), Fraction(1, 2), Q, X).reciprocal()
    den = den * lfactor(asai_op(star_embed(data.S_n1), 0), Fraction(1, 2), Q, X).reciprocal()
    assert value == num * den
