"""
Combinatorics of the dual groups of GL_k over a quadratic extension and of
unitary groups U_l, at inert and split places.

Dual groups are modelled by their diagonal tori.  For the unitary kind the
dual is GL_l with Galois involution g -> J^t g^{-1} J^{-1}, which acts on the
torus by reversing and inverting coordinates.  For the linear kind the dual
is GL_k x GL_k (coordinates listed as the first factor then the second) with
Galois swapping the factors.  At split places the Galois action is dropped.

Weyl group elements are permutations of the torus coordinates; w acts by
sending coordinate i to position w[i].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

INERT = "inert"
SPLIT = "split"
LINEAR = "linear"
UNITARY = "unitary"

DEFAULT_RANK_BOUND = 8
_MAX_AMBIENT = 10**6


class CapacityExceeded(RuntimeError):
    """The requested rank is beyond what the enumeration is allowed to handle."""


class NotRegular(ArithmeticError):
    """A torus element has vanishing Weyl denominator."""


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    rank: int
    place: str = INERT

    def __post_init__(self):
        if self.kind not in (LINEAR, UNITARY):
            raise ValueError(f"kind must be linear or unitary, got {self.kind!r}")
        if self.place not in (INERT, SPLIT):
            raise ValueError(f"place must be inert or split, got {self.place!r}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def twisted(self):
        return self.place == INERT

    @property
    def ncoords(self):
        return self.rank if self.kind == UNITARY else 2 * self.rank

    @property
    def blocks(self):
        """(start, size) of each GL factor of the dual group."""
        if self.kind == UNITARY:
            return [(0, self.rank)]
        return [(0, self.rank), (self.rank, self.rank)]

    def block_of(self, i):
        return 0 if self.kind == UNITARY or i < self.rank else 1

    def galois_coord(self, i):
        """Coordinate index that the Galois involution sends i to."""
        if self.kind == UNITARY:
            return self.rank - 1 - i
        return i + self.rank if i < self.rank else i - self.rank

    def __str__(self):
        letter = "U" if self.kind == UNITARY else "G"
        return f"{letter}{self.rank}/{self.place}"


def unitary(rank, place=INERT):
    return GroupSpec(UNITARY, rank, place)


def linear(rank, place=INERT):
    return GroupSpec(LINEAR, rank, place)


@dataclass(frozen=True)
class WeylElement:
    group: GroupSpec
    perm: tuple

    def __post_init__(self):
        n = self.group.ncoords
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"{self.perm} is not a permutation of {n} coordinates")
        for i, j in enumerate(self.perm):
            if self.group.block_of(i) != self.group.block_of(j):
                raise ValueError("Weyl elements must preserve the GL factors")

    @classmethod
    def identity(cls, group):
        return cls(group, tuple(range(group.ncoords)))

    @classmethod
    def from_pair(cls, group, p1, p2):
        k = group.rank
        return cls(group, tuple(p1) + tuple(x + k for x in p2))

    @property
    def pair(self):
        """The two permutations of a linear-kind element."""
        k = self.group.rank
        return self.perm[:k], tuple(x - k for x in self.perm[k:])

    def __mul__(self, other):
        if other.group != self.group:
            raise ValueError("Weyl elements of different groups")
        return WeylElement(self.group, tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(self.group, tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.perm))

    def sign(self):
        seen = [False] * len(self.perm)
        s = 1
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def __repr__(self):
        return f"WeylElement({self.group}, {self.perm})"


def ambient_weyl_group(g):
    """All coordinate permutations preserving the GL factors of the dual group."""
    size = 1
    for _, k in g.blocks:
        size *= factorial(k)
    if size > _MAX_AMBIENT:
        raise CapacityExceeded(f"ambient Weyl group of {g} has {size} elements")
    factors = [[tuple(start + x for x in p) for p in permutations(range(k))] for start, k in g.blocks]
    return [WeylElement(g, sum(choice, ())) for choice in product(*factors)]


def galois_on_weyl(w):
    """Image of w under the Galois action on the dual Weyl group."""
    g = w.group
    gam = [g.galois_coord(i) for i in range(g.ncoords)]
    return WeylElement(g, tuple(gam[w.perm[gam[i]]] for i in range(g.ncoords)))


def twisted_weyl_group(g, bound=DEFAULT_RANK_BOUND):
    """Galois-fixed part of the dual Weyl group (everything at split places)."""
    if g.rank > bound:
        raise CapacityExceeded(f"rank {g.rank} exceeds the bound {bound}")
    ambient = ambient_weyl_group(g)
    if not g.twisted:
        return ambient
    return [w for w in ambient if galois_on_weyl(w) == w]


@dataclass(frozen=True)
class TwistedTorusElement:
    """A point t or t*Frob of the dual torus; coordinates are exact scalars."""

    group: GroupSpec
    coords: tuple
    frobenius: bool = False

    def __post_init__(self):
        if len(self.coords) != self.group.ncoords:
            raise ValueError(f"{self.group} needs {self.group.ncoords} coordinates, got {len(self.coords)}")
        if self.frobenius and not self.group.twisted:
            raise ValueError("split places carry no Frobenius twist")

    @classmethod
    def make(cls, group, coords):
        """Element of the Frobenius coset at inert places, of the torus at split places."""
        return cls(group, tuple(coords), group.twisted)

    def with_coords(self, coords):
        return TwistedTorusElement(self.group, tuple(coords), self.frobenius)

    def scaled(self, x):
        """Multiply every coordinate by the scalar x."""
        return self.with_coords([x * c for c in self.coords])

    @property
    def first(self):
        return self.coords[: self.group.rank]

    @property
    def second(self):
        return self.coords[self.group.rank :]


def weyl_act(w, S):
    if w.group != S.group:
        raise ValueError(f"Weyl element of {w.group} acting on {S.group}")
    out = [None] * len(S.coords)
    for i, j in enumerate(w.perm):
        out[j] = S.coords[i]
    return S.with_coords(out)


def weight_act(w, chi):
    """Linear Weyl action on weights, compatible with weyl_act."""
    out = [0] * len(chi)
    for i, j in enumerate(w.perm):
        out[j] = chi[i]
    return tuple(out)


def rho2(g):
    """Twice the half sum of positive roots, per GL factor."""
    out = []
    for _, k in g.blocks:
        out.extend(k - 1 - 2 * i for i in range(k))
    return tuple(out)


def full_weight(chi, g):
    """Linear-kind weights of length k mean the Galois-invariant (t, t)."""
    chi = tuple(chi)
    if g.kind == LINEAR and len(chi) == g.rank:
        return chi + chi
    if len(chi) != g.ncoords:
        raise ValueError(f"weight of length {len(chi)} for {g}")
    return chi


def is_galois_invariant(chi, g):
    chi = full_weight(chi, g)
    if not g.twisted:
        return True
    if g.kind == UNITARY:
        return all(chi[i] == -chi[g.galois_coord(i)] for i in range(g.ncoords))
    return all(chi[i] == chi[g.galois_coord(i)] for i in range(g.ncoords))


def dot_action(w, chi):
    """w(chi + rho) - rho, computed in the doubled lattice."""
    g = w.group
    chi = full_weight(chi, g)
    r2 = rho2(g)
    moved = weight_act(w, tuple(2 * c + r for c, r in zip(chi, r2)))
    out = []
    for v, r in zip(moved, r2):
        d = v - r
        if d % 2:
            raise ArithmeticError("dot action left the weight lattice")
        out.append(d // 2)
    return tuple(out)


@dataclass(frozen=True)
class Singular:
    pass


@dataclass(frozen=True)
class RegularOrbit:
    w_chi: WeylElement
    chi_plus: tuple


def is_dominant(chi, g):
    chi = full_weight(chi, g)
    return all(
        chi[s + i] >= chi[s + i + 1] for s, k in g.blocks for i in range(k - 1)
    )


def classify_weight(chi, g):
    """Singular, or the unique w with w.chi dominant together with w.chi."""
    chi = full_weight(chi, g)
    shifted = [2 * c + r for c, r in zip(chi, rho2(g))]
    perm = [0] * len(chi)
    for start, k in g.blocks:
        block = shifted[start : start + k]
        if len(set(block)) < k:
            return Singular()
        order = sorted(range(k), key=lambda i: -block[i])
        for pos, i in enumerate(order):
            perm[start + i] = start + pos
    w = WeylElement(g, tuple(perm))
    return RegularOrbit(w, dot_action(w, chi))


def partitions_of(total, parts, largest=None):
    """Weakly decreasing non-negative tuples of length ``parts`` summing to ``total``."""
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in partitions_of(total - first, parts - 1, first):
            yield (first,) + rest


def enumerate_lambda_pp(r, degree_bound, place=INERT):
    """Cocharacters t_1 >= ... >= t_r >= 0 with sum <= bound, graded.

    At split places the torus of G_r is a product of two copies, and a
    cocharacter is a pair of such partitions (returned concatenated); the
    grading is by the total size.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    out = []
    for d in range(degree_bound + 1):
        if place == INERT:
            out.extend(sorted(partitions_of(d, r)))
        else:
            level = []
            for d1 in range(d + 1):
                for t1 in partitions_of(d1, r):
                    for t2 in partitions_of(d - d1, r):
                        level.append(t1 + t2)
            out.extend(sorted(level))
    return out


def cocharacter_degree(t):
    return sum(t)


def cocharacter_weight(t, r, place=INERT):
    """The Galois-trivial character chi_t of the dual torus of G_r."""
    t = tuple(t)
    if place == INERT:
        if len(t) != r:
            raise ValueError("inert cocharacters have r entries")
        return t + t
    if len(t) != 2 * r:
        raise ValueError("split cocharacters are pairs of r-tuples")
    return t


def monomial_value(coords, exps, one=1):
    val = one
    for c, k in zip(coords, exps):
        if k:
            val = val * c**k
    return val


def char_eval(chi, S):
    """Value of the Galois-trivial character chi at S (Frobenius contributes 1)."""
    chi = full_weight(chi, S.group)
    one = S.coords[0] ** 0 if S.coords else 1
    return monomial_value(S.coords, chi, one)


def is_regular(S):
    from .wcf import d_factor_terms

    return all(f != 0 for f in d_factor_terms(S))
