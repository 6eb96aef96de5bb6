"""
Weyl character formula for possibly non-connected dual groups.

Characters of the L-group at a torus element S (possibly twisted by
Frobenius) are computed as fixed-point sums
    sum over w of chi(wS) / det(1 - Ad(wS) | Lie(G)/Lie(B)),
where the adjoint action on the twisted coset is built from the explicit
Galois automorphism of the Lie algebra.  Because that action is a weighted
permutation of root vectors, each determinant is a product of one factor
per orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import MonomialMatrix, VarTable, dense_det
from .lgroup import (
    LINEAR,
    UNITARY,
    GroupSpec,
    NotRegular,
    RegularOrbit,
    Singular,
    TwistedTorusElement,
    WeylElement,
    char_eval,
    classify_weight,
    full_weight,
    is_galois_invariant,
    twisted_weyl_group,
    weyl_act,
)
from .report import Recorder


@dataclass(frozen=True)
class ParabolicSpec:
    composition: tuple

    def __post_init__(self):
        if any(b < 1 for b in self.composition):
            raise ValueError("blocks must be positive")

    @classmethod
    def borel(cls, rank):
        return cls((1,) * rank)

    @classmethod
    def whole(cls, rank):
        return cls((rank,) if rank else ())

    @property
    def rank(self):
        return sum(self.composition)

    def block_index(self):
        """Block number of each coordinate of one GL factor."""
        out = []
        for b, size in enumerate(self.composition):
            out.extend([b] * size)
        return out

    def is_gamma_stable(self, g):
        if g.kind == UNITARY and g.twisted:
            return self.composition == tuple(reversed(self.composition))
        return True


def compositions(n):
    """All compositions of n into positive parts."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def stable_parabolics(g):
    return [ParabolicSpec(c) for c in compositions(g.rank) if ParabolicSpec(c).is_gamma_stable(g)]


def root_labels(g, q=None, full=False):
    """Basis labels (factor, j, k) of Lie(G)/Lie(Q), realised as lower root vectors.

    With ``full`` the whole Lie algebra of the dual group is listed,
    Cartan included.
    """
    k = g.rank
    if q is None:
        q = ParabolicSpec.borel(k)
    if q.rank != k:
        raise ValueError(f"parabolic of rank {q.rank} in {g}")
    blk = q.block_index()
    labels = []
    for b in range(len(g.blocks)):
        for j in range(k):
            for i in range(k):
                if full or blk[j] > blk[i]:
                    labels.append((b, j, i))
    return labels


def adjoint_operator(S, labels):
    """Ad(S) on the span of the root vectors E_{jk} named by ``labels``."""
    g = S.group
    k = g.rank
    pos = {lab: n for n, lab in enumerate(labels)}
    perm, weights = [], []
    for b, j, i in labels:
        if not S.frobenius:
            target = (b, j, i)
            off = b * k
            w = S.coords[off + j] / S.coords[off + i]
        elif g.kind == UNITARY:
            # Galois differential: E_{ji} -> -(-1)^{i+j} E_{k-1-i, k-1-j}
            jj, ii = k - 1 - i, k - 1 - j
            target = (0, jj, ii)
            w = S.coords[jj] / S.coords[ii]
            if (i + j) % 2 == 0:
                w = -w
        else:
            target = (1 - b, j, i)
            off = (1 - b) * k
            w = S.coords[off + j] / S.coords[off + i]
        if target not in pos:
            raise ValueError("label set is not stable under the adjoint action")
        perm.append(pos[target])
        weights.append(w)
    return MonomialMatrix(perm, weights, labels)


def d_factor_terms(S, q=None):
    """Factors of D_{G/Q}(S), one per orbit of root spaces."""
    op = adjoint_operator(S, root_labels(S.group, q))
    return [1 - p for _, p in op.cycle_data()]


def d_factor(g, q, S):
    """det(1 - Ad(S)) on Lie(G)/Lie(Q)."""
    if g != S.group:
        raise ValueError(f"{S.group} element for {g}")
    one = S.coords[0] ** 0 if S.coords else 1
    val = one
    for f in d_factor_terms(S, q):
        val = val * f
    return val


def d_factor_dense(g, q, S):
    """The same determinant from the dense adjoint matrix (independent check)."""
    op = adjoint_operator(S, root_labels(g, q))
    zero = S.coords[0] * 0 if S.coords else 0
    rows = op.dense(zero)
    n = len(rows)
    ident = [[(1 if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
    return dense_det(ident)


def inverse_d(S, q=None):
    """1 / D_{G/Q}(S), built factor by factor so denominators stay factored."""
    one = S.coords[0] ** 0 if S.coords else 1
    val = one
    for f in d_factor_terms(S, q):
        if f == 0:
            raise NotRegular(f"Weyl denominator vanishes at {S}")
        val = val / f
    return val


def _finish(val):
    return val.reduce() if hasattr(val, "reduce") else val


def char_fixed_point_sum(chi, S, weyl=None):
    """Sum over the twisted Weyl group of chi(wS)/D_{G/B}(wS)."""
    g = S.group
    chi = full_weight(chi, g)
    if weyl is None:
        weyl = twisted_weyl_group(g)
    total = None
    for w in weyl:
        wS = weyl_act(w, S)
        term = char_eval(chi, wS) * inverse_d(wS)
        total = term if total is None else total + term
    return _finish(total)


def schur_oracle(t, values):
    """Schur polynomial s_t(values) by the Jacobi-Trudi determinant det(h_{t_i - i + j})."""
    t = [x for x in t]
    if any(x < 0 for x in t) or any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        raise ValueError("Jacobi-Trudi needs a partition")
    values = list(values)
    one = values[0] ** 0 if values else 1
    zero = one * 0
    top = max(t) + len(t) if t else 0
    # h[k] for the full variable list, by adding variables one at a time
    h = [one] + [zero] * top
    for x in values:
        new = [one]
        for k in range(1, top + 1):
            new.append(h[k] + x * new[k - 1])
        h = new
    n = len(t)
    if n == 0:
        return one

    def hk(k):
        return h[k] if 0 <= k <= top else zero

    rows = [[hk(t[i] - i + j) for j in range(n)] for i in range(n)]
    return dense_det(rows)


def generic_element(g, prefix=None, table=None):
    """A torus element with independent symbolic coordinates.

    Unitary coordinates are named t1..tl, linear ones a1..ak, b1..bk
    (``prefix`` overrides).  Returns (table, element).
    """
    if g.kind == UNITARY:
        p = prefix or "t"
        names = [f"{p}{i + 1}" for i in range(g.rank)]
    else:
        p1, p2 = prefix or ("a", "b")
        names = [f"{p1}{i + 1}" for i in range(g.rank)] + [f"{p2}{i + 1}" for i in range(g.rank)]
    if table is None:
        table = VarTable(names)
    return table, TwistedTorusElement.make(g, table.gens(names))


def weyl_levi(g, q):
    """Twisted Weyl group elements preserving every block of q."""
    blk = q.block_index()
    k = g.rank
    out = []
    for w in twisted_weyl_group(g):
        if all(blk[i % k] == blk[j % k] for i, j in enumerate(w.perm)):
            out.append(w)
    return out


def verify_singular_vanishing(g, chi):
    chi = full_weight(chi, g)
    if not isinstance(classify_weight(chi, g), Singular):
        raise ValueError(f"{chi} is regular for {g}")
    rec = Recorder("singular_vanishing", group=str(g), chi=list(chi))
    _, S = generic_element(g)
    val = char_fixed_point_sum(chi, S)
    rec.check(val.is_zero(), lambda: f"fixed-point sum = {val!r}")
    return rec.report()


def verify_epsilon_orbit(g, chi):
    chi = full_weight(chi, g)
    cls = classify_weight(chi, g)
    if not isinstance(cls, RegularOrbit):
        raise ValueError(f"{chi} is singular for {g}")
    rec = Recorder("epsilon_orbit", group=str(g), chi=list(chi))
    _, S = generic_element(g)
    a = char_fixed_point_sum(chi, S)
    b = char_fixed_point_sum(cls.chi_plus, S)
    ratio = (a / b).as_laurent() if not b.is_zero() else None
    if ratio is None or not ratio.is_constant():
        rec.fail(f"ratio is not a constant: {a!r} / {b!r}")
        return rec.report()
    eps = ratio.constant_value()
    rec.details["epsilon"] = str(eps)
    rec.check(eps in (1, -1), f"epsilon {eps} is not a root of unity")
    if not g.twisted:
        expected = cls.w_chi.sign()
        rec.check(eps == expected, f"epsilon {eps} differs from sign(w) = {expected}")
    return rec.report()


def verify_parabolic_d_sum(g, q):
    if not q.is_gamma_stable(g):
        raise ValueError(f"{q.composition} is not Galois-stable for {g}")
    rec = Recorder("parabolic_d_sum", group=str(g), composition=list(q.composition))
    _, S = generic_element(g)
    lhs = None
    levi = weyl_levi(g, q)
    for w in levi:
        term = inverse_d(weyl_act(w, S))
        lhs = term if lhs is None else lhs + term
    rhs = inverse_d(S, q)
    rec.check(lhs == rhs, lambda: f"difference {(lhs - rhs).reduce()!r}")
    rec.details["levi_weyl_order"] = len(levi)
    return rec.report()


def singular_invariant_weights(g, lo=-3, hi=3):
    """Galois-invariant singular weights with entries in [lo, hi]."""
    from itertools import product as iproduct

    n = g.rank if g.kind == LINEAR else g.ncoords
    out = []
    for chi in iproduct(range(lo, hi + 1), repeat=n):
        if not is_galois_invariant(chi, g):
            continue
        if isinstance(classify_weight(chi, g), Singular):
            out.append(full_weight(chi, g))
    return out


def _merge(rec, report):
    rec.ok(report.checked)
    if not report.passed:
        rec.fail(f"{report.params}: {report.witness}")


def verify_singular_vanishing_all(g, lo=-3, hi=3):
    """Every Galois-invariant singular weight in the box has a vanishing fixed-point sum."""
    rec = Recorder("singular_vanishing", group=str(g), box=[lo, hi])
    weights = singular_invariant_weights(g, lo, hi)
    _, S = generic_element(g)
    weyl = twisted_weyl_group(g)
    for chi in weights:
        val = char_fixed_point_sum(chi, S, weyl)
        rec.check(val.is_zero(), lambda chi=chi, val=val: f"chi={chi}: {val!r}")
    rec.details["weights"] = len(weights)
    return rec.report()


def verify_parabolic_d_sums(g):
    """The parabolic D-sum for every Galois-stable standard parabolic of g."""
    rec = Recorder("parabolic_d_sum", group=str(g))
    for q in stable_parabolics(g):
        _merge(rec, verify_parabolic_d_sum(g, q))
    return rec.report()


def verify_schur_oracle(g, max_degree=4):
    """Fixed-point sums at dominant weights against Jacobi-Trudi, untwisted groups only."""
    from .lgroup import enumerate_lambda_pp

    if g.twisted:
        raise ValueError("the Schur oracle applies to untwisted (split) groups")
    rec = Recorder("schur_oracle", group=str(g), max_degree=max_degree)
    _, S = generic_element(g)
    weyl = twisted_weyl_group(g)
    k = g.rank
    if g.kind == LINEAR:
        weights = enumerate_lambda_pp(k, max_degree, "split")
    else:
        weights = [t for d in range(max_degree + 1) for t in _partitions(d, k)]
    for chi in weights:
        val = char_fixed_point_sum(chi, S, weyl)
        expect = S.coords[0] ** 0 if S.coords else 1
        for start, size in g.blocks:
            expect = expect * schur_oracle(chi[start : start + size], S.coords[start : start + size])
        rec.check(val == expect, lambda chi=chi: f"chi={chi}: character differs from Jacobi-Trudi")
    rec.details["weights"] = len(weights)
    return rec.report()


def _partitions(d, k):
    from .lgroup import partitions_of

    return list(partitions_of(d, k))


def verify_epsilon_orbits(g, lo=-2, hi=2, limit=12):
    """epsilon_chi for a deterministic sample of regular non-dominant invariant weights."""
    from itertools import product as iproduct

    from .lgroup import is_dominant

    rec = Recorder("epsilon_orbit", group=str(g), box=[lo, hi])
    n = g.rank if g.kind == LINEAR else g.ncoords
    seen = 0
    eps = {}
    for chi in iproduct(range(lo, hi + 1), repeat=n):
        if seen >= limit:
            break
        if not is_galois_invariant(chi, g):
            continue
        full = full_weight(chi, g)
        if is_dominant(full, g) or not isinstance(classify_weight(full, g), RegularOrbit):
            continue
        report = verify_epsilon_orbit(g, full)
        _merge(rec, report)
        eps[str(list(full))] = report.details.get("epsilon")
        seen += 1
    rec.details["epsilon"] = eps
    return rec.report()


__all__ = [
    "ParabolicSpec",
    "verify_epsilon_orbits",
    "verify_parabolic_d_sums",
    "verify_schur_oracle",
    "verify_singular_vanishing_all",
    "adjoint_operator",
    "char_fixed_point_sum",
    "compositions",
    "d_factor",
    "d_factor_dense",
    "d_factor_terms",
    "generic_element",
    "inverse_d",
    "root_labels",
    "schur_oracle",
    "singular_invariant_weights",
    "stable_parabolics",
    "verify_epsilon_orbit",
    "verify_parabolic_d_sum",
    "verify_singular_vanishing",
    "weyl_levi",
]

