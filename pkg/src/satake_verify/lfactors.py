"""
Representations of L-groups built from Satake parameters, local L-factors
as determinant reciprocals, modulus characters and measure constants.

Conventions: Q stands for q^{1/2} and X for q^{-s}.  The L-factor
L(s + shift, R) of an operator R(S) has reciprocal det(1 - Q^{-2 shift} X R(S)).
Residue fields: q_E = q^2 = Q^4 at inert places; at split places every
E-factor is a pair of F-factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import MonomialMatrix, VarTable, dense_det
from .lgroup import (
    INERT,
    LINEAR,
    UNITARY,
    TwistedTorusElement,
    linear,
    unitary,
)

LRepOperator = MonomialMatrix


class PoleZeroCollision(ArithmeticError):
    """A factor occurs both in the numerator and the denominator of a quotient."""


def _one_like(x):
    return x**0


# ---------------------------------------------------------------------------
# operators


def star_coords(coords):
    """g -> J^t g^{-1} J^{-1} on diagonal entries: reverse and invert."""
    return tuple(1 / c for c in reversed(coords))


def star_embed(S):
    """^L U_l -> ^L G_l, g -> (g, g*)."""
    if S.group.kind != UNITARY:
        raise ValueError("star_embed takes a unitary-kind element")
    g = linear(S.group.rank, S.group.place)
    return TwistedTorusElement(g, tuple(S.coords) + star_coords(S.coords), S.frobenius)


def star_linear(S):
    """The automorphism (g1, g2) -> (g2*, g1*) of ^L G_r."""
    if S.group.kind != LINEAR:
        raise ValueError("star_linear takes a linear-kind element")
    return S.with_coords(star_coords(S.second) + star_coords(S.first))


def as_linear(S):
    return star_embed(S) if S.group.kind == UNITARY else S


def itimes(Sk, Sl):
    """S_k (x) S_l on C^k(x)C^l + C^k(x)C^l, copies swapped by Frobenius."""
    Sk, Sl = as_linear(Sk), as_linear(Sl)
    if Sk.group.place != Sl.group.place:
        raise ValueError("itimes needs both parameters at the same kind of place")
    if Sk.frobenius != Sl.frobenius:
        raise ValueError("fibered product needs matching Frobenius components")
    k, l = Sk.group.rank, Sl.group.rank
    halves_k = (Sk.first, Sk.second)
    halves_l = (Sl.first, Sl.second)
    labels = [(c, i, j) for c in (0, 1) for i in range(k) for j in range(l)]
    pos = {lab: n for n, lab in enumerate(labels)}
    perm, weights = [], []
    for c, i, j in labels:
        if Sk.frobenius:
            target = (1 - c, i, j)
            tc = 1 - c
        else:
            target = (c, i, j)
            tc = c
        perm.append(pos[target])
        weights.append(halves_k[tc][i] * halves_l[tc][j])
    return MonomialMatrix(perm, weights, labels)


def asai_op(S, parity):
    """g1 (x) g2 on C^r (x) C^r; Frobenius acts by (-1)^parity times the flip."""
    S = as_linear(S)
    r = S.group.rank
    g1, g2 = S.first, S.second
    labels = [(i, j) for i in range(r) for j in range(r)]
    pos = {lab: n for n, lab in enumerate(labels)}
    perm, weights = [], []
    for i, j in labels:
        if S.frobenius:
            perm.append(pos[(j, i)])
            w = g1[j] * g2[i]
            weights.append(-w if parity % 2 else w)
        else:
            perm.append(pos[(i, j)])
            weights.append(g1[i] * g2[j])
    return MonomialMatrix(perm, weights, labels)


def scalar_op(value):
    """A one-dimensional operator."""
    return MonomialMatrix((0,), (value,))


def empty_op():
    return MonomialMatrix((), ())


# ---------------------------------------------------------------------------
# L-factors


@dataclass
class LFactor:
    """L(s + shift, R): kept as the factors of its reciprocal polynomial."""

    factors: list
    shift: Fraction
    dimension: int
    one: object = 1

    def reciprocal(self):
        val = self.one
        for f in self.factors:
            val = val * f
        return val

    def value(self):
        """The L-factor itself, with one denominator factor per orbit."""
        val = self.one
        for f in self.factors:
            if f == 0:
                raise ZeroDivisionError("L-factor has a pole at this point")
            val = val / f
        return val


def _table_scalars(op):
    for w in op.weights:
        if hasattr(w, "table"):
            t = w.table
            return t.var("Q"), t.var("X")
    raise ValueError("pass Q and X explicitly for numeric operators")


def lfactor(op, s_shift, Q=None, X=None, s_scale=1):
    """Reciprocal det(1 - Q^{-2 shift} X^{s_scale} op) kept in factored form."""
    shift = Fraction(s_shift)
    if (2 * shift).denominator != 1:
        raise ValueError("shift must be a half-integer")
    if Q is None or X is None:
        if op.dimension == 0:
            return LFactor([], shift, 0)
        Q, X = _table_scalars(op)
    z = Q ** int(-2 * shift) * X**s_scale
    one = _one_like(z)
    return LFactor(op.char_factors(z), shift, op.dimension, one)


def lfactor_dense(op, s_shift, Q, X, s_scale=1):
    """Same reciprocal from the dense matrix determinant (independent check)."""
    shift = Fraction(s_shift)
    z = Q ** int(-2 * shift) * X**s_scale
    zero = z * 0
    rows = op.dense(zero)
    n = len(rows)
    m = [[(1 if i == j else 0) - z * rows[i][j] for j in range(n)] for i in range(n)]
    return dense_det(m) if n else _one_like(z)


def eta_sign(place):
    """eta(uniformizer) for the quadratic character: -1 inert, 1 split."""
    return -1 if place == INERT else 1


def eta_lfactor(power, s_shift, place, Q, X):
    """L(s + shift, eta^power)."""
    return lfactor(scalar_op(eta_sign(place) ** (power % 2) * _one_like(Q)), s_shift, Q, X)


def delta_constant(kind, rank, place, Q):
    """Local measure constant of G_k (kind 'linear') or U_l (kind 'unitary').

    For G_k this is prod_i zeta_{E_v}(i); for U_l it is prod_i L(i, eta^i).
    """
    one = _one_like(Q)
    val = one
    for i in range(1, rank + 1):
        if kind == LINEAR:
            if place == INERT:
                val = val / (1 - Q ** (-4 * i))
            else:
                val = val / (1 - Q ** (-2 * i)) ** 2
        else:
            val = val / (1 - eta_sign(place) ** i * Q ** (-2 * i))
    return val


def liu_constant(m, place, Q):
    """Normalising constant of the unramified Bessel formula: prod_{i<=m} L(i, eta^i)^{-1}."""
    return 1 / delta_constant(UNITARY, m, place, Q)


# ---------------------------------------------------------------------------
# Satake data


@dataclass
class SatakeData:
    """Parameters of tau on G_r, sigma_m on U_m and sigma_{n+1} on U_{n+1}."""

    r: int
    m: int
    place: str
    S_tau: TwistedTorusElement
    S_m: TwistedTorusElement
    S_n1: TwistedTorusElement
    Q: object
    X: object
    table: VarTable | None = None
    extra: dict = field(default_factory=dict)

    @property
    def n1(self):
        return self.m + 2 * self.r + 1

    @property
    def frob(self):
        return self.place == INERT

    @property
    def S_tau_s(self):
        return self.S_tau.scaled(self.X)

    def with_n1(self, coords):
        return SatakeData(
            self.r, self.m, self.place, self.S_tau, self.S_m,
            self.S_n1.with_coords(coords), self.Q, self.X, self.table, dict(self.extra),
        )

    @staticmethod
    def names(r, m, n1=None):
        n1 = m + 2 * r + 1 if n1 is None else n1
        return (
            [f"a{i + 1}" for i in range(r)]
            + [f"b{i + 1}" for i in range(r)]
            + [f"c{i + 1}" for i in range(m)]
            + [f"d{i + 1}" for i in range(n1)]
        )

    @classmethod
    def generic(cls, r, m, place=INERT, extra_names=()):
        names = cls.names(r, m) + ["Q", "X"] + list(extra_names)
        table = VarTable(names)
        a = table.gens([f"a{i + 1}" for i in range(r)])
        b = table.gens([f"b{i + 1}" for i in range(r)])
        c = table.gens([f"c{i + 1}" for i in range(m)])
        d = table.gens([f"d{i + 1}" for i in range(m + 2 * r + 1)])
        return cls._assemble(r, m, place, a, b, c, d, table.var("Q"), table.var("X"), table)

    @classmethod
    def numeric(cls, r, m, place=INERT, rng=None, bound=7):
        """Random rational Satake data (nonzero small fractions)."""
        rng = rng or random.Random(0)

        def pick():
            while True:
                num = rng.randint(-bound, bound)
                den = rng.randint(1, bound)
                if num:
                    return Fraction(num, den)

        a = [pick() for _ in range(r)]
        b = [pick() for _ in range(r)]
        c = [pick() for _ in range(m)]
        d = [pick() for _ in range(m + 2 * r + 1)]
        Q = Fraction(rng.randint(2, bound + 3), rng.randint(1, 3))
        X = pick()
        return cls._assemble(r, m, place, a, b, c, d, Q, X, None)

    @classmethod
    def _assemble(cls, r, m, place, a, b, c, d, Q, X, table):
        S_tau = TwistedTorusElement.make(linear(r, place), list(a) + list(b))
        S_m = TwistedTorusElement.make(unitary(m, place), c)
        S_n1 = TwistedTorusElement.make(unitary(m + 2 * r + 1, place), d)
        return cls(r, m, place, S_tau, S_m, S_n1, Q, X, table)


# ---------------------------------------------------------------------------
# block structure of S_{n+1}


def levi_blocks(S, r, m):
    """(S^{(r)}, S^{(m+1)}) for S in the Levi GL_r x GL_{m+1} x GL_r of ^L U_{n+1}."""
    d = S.coords
    if len(d) != m + 2 * r + 1:
        raise ValueError("rank mismatch in block extraction")
    g1, mid, g2 = d[:r], d[r : r + m + 1], d[r + m + 1 :]
    place = S.group.place
    Sr = TwistedTorusElement(linear(r, place), tuple(g1) + star_coords(g2), S.frobenius)
    Smid = TwistedTorusElement(unitary(m + 1, place), tuple(mid), S.frobenius)
    return Sr, Smid


def block_decompose_itimes(data, w=None):
    """The three blocks of S_{tau,s} (x) wS_{n+1} along the Levi of Q_{n+1}."""
    from .lgroup import weyl_act

    S = data.S_n1 if w is None else weyl_act(w, data.S_n1)
    Sr, Smid = levi_blocks(S, data.r, data.m)
    Sts = data.S_tau_s
    return itimes(Sts, Sr), itimes(Sts, Smid), itimes(Sts, star_linear(Sr))


# ---------------------------------------------------------------------------
# modulus characters


def _flag_model(context, r, m):
    """Ordered basis weights and block ids for the parabolic named by ``context``.

    Each basis vector carries the exponent vector of t = (t_1..t_r) by which
    the torus scales it: x_k has e_k, y_k has -e_k, the rest 0.
    """

    def unit(k, s):
        v = [0] * r
        v[k] = s
        return v

    if context == "B_r":
        # two copies of the upper triangular radical of GL_r over E
        basis = [unit(k, 1) for k in range(r)]
        return [(basis, list(range(r)))] * 2
    if context == "P":
        mid_dim, per_vector = m + 1, True
    elif context == "P'":
        mid_dim, per_vector = m, True
    elif context == "Q_n":
        mid_dim, per_vector = m, False
    else:
        raise ValueError(f"unknown modulus context {context!r}")
    weights = [unit(k, 1) for k in range(r)] + [[0] * r] * mid_dim + [unit(k, -1) for k in reversed(range(r))]
    if per_vector:
        blocks = list(range(r)) + [r] * mid_dim + [r + 1 + k for k in range(r)]
    else:
        blocks = [0] * r + [1] * mid_dim + [2] * r
    return [(weights, blocks)]


def modulus_exponents(context, r, m):
    """lambda with delta(t) = prod_k |t_k|_E^{lambda_k}, by weight enumeration.

    ``context`` is one of 'B_r', 'P', 'Q_n', "P'".  For the unitary groups the
    radical over E has one root vector per ordered pair of basis vectors in
    different blocks, and the F-structure halves the exponent.
    """
    copies = _flag_model(context, r, m)
    total = [0] * r
    for weights, blocks in copies:
        n = len(weights)
        for a in range(n):
            for b in range(a + 1, n):
                if blocks[a] != blocks[b]:
                    for k in range(r):
                        total[k] += weights[a][k] - weights[b][k]
    return [x // 2 if x % 2 == 0 else Fraction(x, 2) for x in total]


def modulus_identity_defect(r, m):
    """(delta_P + delta_B + delta_Q)/2 - delta_P' as an exponent vector (should be all 1/2)."""
    P = modulus_exponents("P", r, m)
    B = modulus_exponents("B_r", r, m)
    Qn = modulus_exponents("Q_n", r, m)
    Pp = modulus_exponents("P'", r, m)
    return [Fraction(p + b + q, 2) - pp for p, b, q, pp in zip(P, B, Qn, Pp)]


def cochar_sizes(t, r, place):
    """Per-coordinate valuation of |t_k|_E^{-1} measured in powers of q at split places."""
    if place == INERT:
        return list(t)
    return [t[k] + t[r + k] for k in range(r)]


def modulus_monomial(context, t, r, m, place, Q, power=Fraction(1, 2)):
    """delta_context(t)^power as a power of Q."""
    lam = modulus_exponents(context, r, m)
    sizes = cochar_sizes(t, r, place)
    # |t_k|_E = Q^{-4 t_k} inert, Q^{-2 (t'_k + t''_k)} split
    unit = 4 if place == INERT else 2
    e = -unit * power * sum(Fraction(l) * s for l, s in zip(lam, sizes))
    if e.denominator != 1:
        raise ArithmeticError("modulus character is not an integral power of Q")
    return Q ** int(e)


def det_power(t, r, place, X):
    """|det t|_E^s in terms of X = q^{-s}."""
    size = sum(cochar_sizes(t, r, place))
    return X ** (2 * size if place == INERT else size)


# ---------------------------------------------------------------------------
# normalized L-quotients


@dataclass
class LQuotient:
    numerator: list
    denominator: list
    value: object
    collisions: list


def _assemble(num_factors, den_factors, one):
    """prod(num L-factors)/prod(den L-factors) from reciprocals; report shared factors."""
    num_rec = [f for lf in num_factors for f in lf.factors]
    den_rec = [f for lf in den_factors for f in lf.factors]
    collisions = []
    for f in num_rec:
        for g in den_rec:
            if f == g:
                collisions.append(f)
                break
    val = one
    for f in den_rec:
        val = val * f
    for f in num_rec:
        val = val / f
    return LQuotient(num_factors, den_factors, val, collisions)


def _asai_of_unitary(S, ell):
    return asai_op(star_embed(S), ell % 2)


def corank_one_parameter(data):
    """Parameter of I(tau (x) sigma_m) on U_n: diag(A, C, B*) (Frobenius-twisted)."""
    g = unitary(data.m + 2 * data.r, data.place)
    A, B = data.S_tau.first, data.S_tau.second
    coords = tuple(A) + tuple(data.S_m.coords) + star_coords(B)
    return TwistedTorusElement(g, coords, data.S_tau.frobenius)


def assemble_L_quotient(data, which="bessel"):
    """Local factor of L(s, sigma_v): prod_i L(s+i-1/2, eta^i) L(s, Pi)/L(s+1/2, Pi, As')."""
    Q, X, place = data.Q, data.X, data.place
    if which == "bessel":
        S1, l1 = data.S_m, data.m
    elif which == "corank1":
        S1 = corank_one_parameter(data)
        l1 = data.m + 2 * data.r
    else:
        raise ValueError("which must be 'bessel' or 'corank1'")
    S2, l2 = data.S_n1, data.n1
    num = [eta_lfactor(i, Fraction(2 * i - 1, 2), place, Q, X) for i in range(1, l2 + 1)]
    num.append(lfactor(itimes(S1, S2), 0, Q, X))
    den = [
        lfactor(_asai_of_unitary(S1, l1), Fraction(1, 2), Q, X),
        lfactor(_asai_of_unitary(S2, l2), Fraction(1, 2), Q, X),
    ]
    return _assemble(num, den, _one_like(Q))


def normalized_L_quotient(data, which="bessel", strict=False):
    q = assemble_L_quotient(data, which)
    if strict and q.collisions:
        raise PoleZeroCollision(f"{len(q.collisions)} factor(s) cancel between numerator and denominator")
    return q.value


def adjoint_lfactor(S, s_shift, Q, X, s_scale=0):
    """L(shift, S, Ad) on the full Lie algebra of the dual group (Cartan included)."""
    from .wcf import adjoint_operator, root_labels

    op = adjoint_operator(S, root_labels(S.group, full=True))
    return lfactor(op, s_shift, Q, X, s_scale)


def verify_modulus_identity(r, m):
    """(delta_P + delta_B + delta_Q)/2 - delta_P' equals |det|^{1/2}, exponent by exponent."""
    from .report import Recorder

    rec = Recorder("modulus_identity", r=r, m=m)
    defect = modulus_identity_defect(r, m)
    rec.check(all(x == Fraction(1, 2) for x in defect), lambda: f"defect {[str(x) for x in defect]}")
    rec.details["exponents"] = {c: [str(x) for x in modulus_exponents(c, r, m)] for c in ("P", "B_r", "Q_n", "P'")}
    return rec.report()


__all__ = [
    "verify_modulus_identity",
    "LFactor",
    "LQuotient",
    "LRepOperator",
    "PoleZeroCollision",
    "SatakeData",
    "adjoint_lfactor",
    "asai_op",
    "assemble_L_quotient",
    "block_decompose_itimes",
    "corank_one_parameter",
    "delta_constant",
    "det_power",
    "eta_lfactor",
    "eta_sign",
    "itimes",
    "levi_blocks",
    "lfactor",
    "lfactor_dense",
    "liu_constant",
    "modulus_exponents",
    "modulus_identity_defect",
    "modulus_monomial",
    "normalized_L_quotient",
    "star_coords",
    "star_embed",
    "star_linear",
]
