import pytest

from satake_verify.bessel import (
    bessel_value_lemma,
    bessel_value_liu,
    coset_counts,
    galois_conjugate,
    is_dominant_cochar,
    is_positive_cochar,
    key_lhs,
    key_rhs,
    series_table,
    to_series_variable,
    verify_cauchy,
    verify_key_identity,
    verify_lemma_equivalence,
    verify_liu_normalization,
    verify_lquotient_factorization,
    verify_rhs_constancy,
    verify_unramified_proposition,
    weight_bounds_ok,
    whittaker_value,
    zeta_series,
)
from satake_verify.lfactors import SatakeData
from satake_verify.lgroup import INERT, SPLIT, CapacityExceeded

PLACES = [INERT, SPLIT]


def test_cochar_cones():
    assert is_dominant_cochar((2, 1), 2, INERT)
    assert not is_dominant_cochar((1, 2), 2, INERT)
    assert is_dominant_cochar((-1, -2), 2, INERT)
    assert not is_positive_cochar((-1, -2), 2, INERT)
    assert is_positive_cochar((1, 0, 2, 1), 2, SPLIT)
    with pytest.raises(ValueError):
        is_dominant_cochar((1,), 1, SPLIT)


@pytest.mark.parametrize("place", PLACES)
def test_whittaker_values(place):
    data = SatakeData.generic(1, 0, place)
    zero = (0,) if place == INERT else (0, 0)
    assert whittaker_value(zero, data) == 1
    if place == INERT:
        assert not whittaker_value((1,), data).is_zero()


def test_whittaker_vanishes_off_the_dominant_cone():
    data = SatakeData.generic(2, 0, INERT)
    assert whittaker_value((0, 1), data).is_zero()


@pytest.mark.parametrize("place", PLACES)
@pytest.mark.parametrize("m", [0, 1])
def test_bessel_value_at_origin_is_one(place, m):
    data = SatakeData.generic(1, m, place)
    zero = (0,) if place == INERT else (0, 0)
    assert bessel_value_liu(zero, data) == 1
    assert bessel_value_lemma(zero, data) == 1


def test_bessel_value_vanishes_outside_the_cone():
    data = SatakeData.generic(1, 0, INERT)
    assert bessel_value_liu((-1,), data).is_zero()
    assert bessel_value_lemma((-1,), data).is_zero()


@pytest.mark.parametrize("place", PLACES)
@pytest.mark.parametrize("m", [0, 1, 2])
def test_liu_normalization(place, m):
    assert verify_liu_normalization(m, place).passed


@pytest.mark.parametrize("place", PLACES)
@pytest.mark.parametrize("rm", [(1, 0), (1, 1)])
def test_lemma_matches_liu(place, rm):
    assert verify_lemma_equivalence(*rm, place, 3).passed


def test_coset_counts():
    for args in [(1, 0, INERT), (1, 1, SPLIT), (2, 1, INERT)]:
        left, right = coset_counts(*args)
        assert left == right


def test_series_variable_rejects_odd_powers_at_inert_places():
    T = series_table(["Q", "X"])
    Q, X = T.var("Q"), T.var("X")
    assert to_series_variable(X**2, INERT) == Q**2 * T.var("Z")
    assert to_series_variable(X, SPLIT) == Q * T.var("Z")
    with pytest.raises(ArithmeticError):
        to_series_variable(X, INERT)


@pytest.mark.parametrize("place", PLACES)
@pytest.mark.parametrize("r", [1, 2])
def test_cauchy(place, r):
    rep = verify_cauchy(r, place, 4)
    assert rep.passed, rep.witness


def test_cauchy_pins_the_series_convention():
    rep = verify_cauchy(1, INERT, 4)
    assert rep.details["convention"]["ok"]


def test_zeta_series_is_the_same_with_either_bessel_formula():
    data = SatakeData.generic(1, 1, INERT, extra_names=("Z",))
    a = zeta_series(data, 2)
    b = zeta_series(data, 2, bessel=bessel_value_liu)
    assert a.first_mismatch(b) is None
    assert a[0] == 1


@pytest.mark.parametrize("mode", ["symbolic", "specialized"])
@pytest.mark.parametrize("rm", [(1, 0), (1, 1), (2, 0)])
def test_key_identity_inert(mode, rm):
    rep = verify_key_identity(*rm, INERT, mode)
    assert rep.passed, rep.witness


def test_key_identity_numeric_inert():
    rep = verify_key_identity(2, 1, INERT, "numeric", trials=5, seed=3)
    assert rep.passed, rep.witness


def test_key_identity_split_rank_zero_m():
    assert verify_key_identity(1, 0, SPLIT).passed


def test_key_identity_capacity():
    with pytest.raises(CapacityExceeded):
        verify_key_identity(3, 0, INERT)
    with pytest.raises(ValueError):
        verify_key_identity(1, 0, INERT, "guess")


# At split places with m >= 1 the identities hold only after exchanging the
# two components of tau in the factor pairing tau with sigma_m.


@pytest.mark.xfail(strict=True, reason="split pairing: literal tau x sigma_m factor does not match")
@pytest.mark.parametrize("mode", ["symbolic", "specialized", "numeric"])
def test_key_identity_split_with_sigma(mode):
    assert verify_key_identity(1, 1, SPLIT, mode, trials=3).passed


@pytest.mark.xfail(strict=True, reason="split pairing: literal tau x sigma_m factor does not match")
def test_proposition_split_with_sigma():
    assert verify_unramified_proposition(1, 1, SPLIT, 2).passed


@pytest.mark.xfail(strict=True, reason="split pairing: literal tau x sigma_m factor does not match")
def test_lquotient_split_with_sigma():
    assert verify_lquotient_factorization(1, 1, SPLIT).passed


def test_split_identities_hold_with_the_conjugate_pairing():
    data = SatakeData.generic(1, 1, SPLIT)
    assert key_lhs(data, "conjugate") == key_rhs(data)
    for rep in (
        verify_key_identity(1, 1, SPLIT),
        verify_unramified_proposition(1, 1, SPLIT, 2),
        verify_lquotient_factorization(1, 1, SPLIT),
    ):
        assert rep.details["conjugate_pairing_matches"] is True


def test_galois_conjugate_is_an_involution():
    data = SatakeData.generic(2, 0, SPLIT)
    assert galois_conjugate(galois_conjugate(data.S_tau)) == data.S_tau


@pytest.mark.parametrize("place", PLACES)
def test_rhs_constancy(place):
    rep = verify_rhs_constancy(1, 0, place)
    assert rep.passed, rep.witness
    assert rep.details["direct"] == "constant"


def test_weight_bounds():
    assert weight_bounds_ok((0, 0, 0), 1, 0)
    assert weight_bounds_ok((-1, 1, 1), 1, 0)
    assert not weight_bounds_ok((1, 0, 0), 1, 0)
    assert not weight_bounds_ok((0, 0), 1, 0)


@pytest.mark.parametrize("rm", [(1, 0), (1, 1), (2, 0)])
def test_proposition_inert(rm):
    rep = verify_unramified_proposition(*rm, INERT, 3)
    assert rep.passed, rep.witness


@pytest.mark.parametrize("place", PLACES)
def test_lquotient_rank_m_zero(place):
    rep = verify_lquotient_factorization(1, 0, place)
    assert rep.passed, rep.witness


@pytest.mark.parametrize("rm", [(0, 1), (1, 2), (2, 1)])
def test_lquotient_inert(rm):
    rep = verify_lquotient_factorization(*rm, INERT)
    assert rep.passed, rep.witness
