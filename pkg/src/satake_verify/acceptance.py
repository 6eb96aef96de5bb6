"""The acceptance suite: eleven criteria, each a list of checks with a time budget."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import bessel, wcf
from .lfactors import verify_modulus_identity
from .lgroup import INERT, SPLIT, linear, unitary

BOTH = (INERT, SPLIT)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    seconds: int
    run: object

    def execute(self):
        start = time.perf_counter()
        reports = list(self.run())
        elapsed = time.perf_counter() - start
        return reports, elapsed


def _singular_vanishing():
    for ell in (1, 2, 3):
        yield wcf.verify_singular_vanishing_all(unitary(ell, INERT))
    for k in (1, 2, 3):
        yield wcf.verify_singular_vanishing_all(linear(k, SPLIT))


def _parabolic_sums():
    for rank in (1, 2, 3, 4):
        for place in BOTH:
            yield wcf.verify_parabolic_d_sums(unitary(rank, place))
            yield wcf.verify_parabolic_d_sums(linear(rank, place))


def _schur():
    for rank in (1, 2, 3, 4):
        yield wcf.verify_schur_oracle(linear(rank, SPLIT), 4)
        yield wcf.verify_schur_oracle(unitary(rank, SPLIT), 4)


def _liu():
    for m in (0, 1, 2):
        for place in BOTH:
            yield bessel.verify_liu_normalization(m, place)


def _cauchy():
    for r in (1, 2):
        for place in BOTH:
            yield bessel.verify_cauchy(r, place, 6)


def _lemma():
    for r, m in ((1, 0), (1, 1)):
        for place in BOTH:
            yield bessel.verify_lemma_equivalence(r, m, place, 4)


def _key_identity():
    for r, m in ((1, 0), (1, 1)):
        yield bessel.verify_key_identity(r, m, INERT, "symbolic")
        yield bessel.verify_key_identity(r, m, INERT, "specialized")
    for r, m in ((2, 0), (2, 1)):
        yield bessel.verify_key_identity(r, m, INERT, "numeric", trials=10, seed=0)


def _constancy():
    for place in BOTH:
        yield bessel.verify_rhs_constancy(1, 0, place, routes=("weights",))


def _modulus():
    for r in (1, 2):
        for m in (0, 1, 2):
            yield verify_modulus_identity(r, m)


def _proposition():
    yield bessel.verify_unramified_proposition(1, 0, INERT, 4)
    yield bessel.verify_unramified_proposition(1, 1, INERT, 3)


def _lquotient():
    for place in BOTH:
        yield bessel.verify_lquotient_factorization(1, 0, place)


CRITERIA = [
    Criterion(1, "singular weights give vanishing fixed-point sums", 60, _singular_vanishing),
    Criterion(2, "parabolic D-sums", 120, _parabolic_sums),
    Criterion(3, "fixed-point sums agree with Jacobi-Trudi", 120, _schur),
    Criterion(4, "double-sum normalisation equals 1", 120, _liu),
    Criterion(5, "Cauchy identity and the q_E = q^2 convention", 60, _cauchy),
    Criterion(6, "Weyl-sum Bessel formula agrees with the double-sum formula", 300, _lemma),
    Criterion(7, "key identity: symbolic, specialised and numeric", 600, _key_identity),
    Criterion(8, "right-hand side constancy by weight classification", 60, _constancy),
    Criterion(9, "modulus character identity", 10, _modulus),
    Criterion(10, "zeta series equals the closed form", 600, _proposition),
    Criterion(11, "local L-quotient factorisation", 120, _lquotient),
]


def run_acceptance(numbers=None):
    """[(criterion, reports, seconds)] for the selected criteria."""
    out = []
    for c in CRITERIA:
        if numbers is None or c.number in numbers:
            reports, elapsed = c.execute()
            out.append((c, reports, elapsed))
    return out
