"""
Exact arithmetic over a declared set of variables.

The objects here are Laurent polynomials with rational coefficients,
rational functions whose denominators are kept as a multiset of canonical
polynomial factors, truncated power series in one variable, and monomial
(weighted permutation) matrices.  Everything is immutable after
construction and no floating point is involved.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from numbers import Rational
from operator import add, sub


class StructureError(ValueError):
    """Objects living over different variable tables were combined."""


class PoleAtOrigin(ArithmeticError):
    """A series expansion was requested at a pole."""


class DegenerateSubstitution(ZeroDivisionError):
    """A substitution made a denominator vanish identically."""


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _normalize(Fraction(a) / b)


class VarTable:
    """An ordered list of distinct variable names.

    Two tables are interchangeable exactly when their name lists agree.
    """

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"repeated variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarTable({', '.join(self.names)})"

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def zero_exp(self):
        return (0,) * len(self.names)

    def exponent(self, powers):
        """Exponent vector from a mapping name -> power."""
        e = [0] * len(self.names)
        for name, k in powers.items():
            e[self.index(name)] += k
        return tuple(e)

    def poly(self, name):
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return LaurentPoly(self, {tuple(e): 1})

    def monomial(self, powers, coeff=1):
        return LaurentPoly(self, {self.exponent(powers): coeff})

    def const(self, c):
        return LaurentPoly(self, {self.zero_exp: c})

    def var(self, name):
        """The variable ``name`` as a rational function."""
        return RationalFunction(self.poly(name))

    def gens(self, names=None):
        names = self.names if names is None else names
        return [self.var(n) for n in names]

    def one(self):
        return RationalFunction(self.const(1))

    def zero(self):
        return RationalFunction(self.const(0))


class LaurentPoly:
    """A Laurent polynomial: exponent tuple -> nonzero rational coefficient."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table, terms=None, _clean=False):
        self.table = table
        if terms is None:
            terms = {}
        elif not _clean:
            n = len(table)
            cleaned = {}
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise StructureError("exponent length does not match the variable table")
                    cleaned[e] = _normalize(c)
            terms = cleaned
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------

    def _new(self, terms):
        return LaurentPoly(self.table, terms, _clean=True)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.table != self.table:
                raise StructureError(f"{self.table} vs {other.table}")
            return other
        if isinstance(other, (int, Rational)):
            return self.table.const(other)
        return NotImplemented

    # predicates -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.table.zero_exp in self.terms)

    def constant_value(self):
        return self.terms.get(self.table.zero_exp, 0)

    def __len__(self):
        return len(self.terms)

    # ring operations --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        for e, c in b.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return self._new(res)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = res.get(e, 0) - c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return self._new(res)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return self._new({})
            return self._new({e: _normalize(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((eb, cb),) = b.items()
            if not any(eb):
                return self._new({e: _normalize(c * cb) for e, c in a.items()})
            return self._new({tuple(map(add, e, eb)): _normalize(c * cb) for e, c in a.items()})
        res = {}
        get = res.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                res[e] = get(e, 0) + ca * cb
        return self._new({e: _normalize(c) for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers exist only for monomials")
            ((e, c),) = self.terms.items()
            k = -k
            return self._new({tuple(-x * k for x in e): _normalize(Fraction(1) / Fraction(c) ** k)})
        if self.is_monomial():
            ((e, c),) = self.terms.items()
            return self._new({tuple(x * k for x in e): _normalize(c**k)})
        result = self.table.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.table.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.table != self.table:
            raise StructureError(f"{self.table} vs {other.table}")
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # structure --------------------------------------------------------------

    def min_exponents(self):
        if not self.terms:
            return self.table.zero_exp
        return tuple(map(min, zip(*self.terms)))

    def max_exponents(self):
        if not self.terms:
            return self.table.zero_exp
        return tuple(map(max, zip(*self.terms)))

    def shift(self, e):
        """Multiply by the monomial with exponent vector ``e``."""
        return self._new({tuple(map(add, x, e)): c for x, c in self.terms.items()})

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.table.names[i] for i in sorted(used)]

    def degree_range(self, name):
        i = self.table.index(name)
        es = [e[i] for e in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    def coefficients_in(self, name):
        """Split as sum_k coeff_k * name^k; returns {k: LaurentPoly without name}."""
        i = self.table.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1 :]
            out.setdefault(k, {})[e2] = c
        return {k: self._new(t) for k, t in out.items()}

    def map_exponents(self, table, fn):
        """Re-express over ``table`` with each exponent vector mapped by ``fn``."""
        res = {}
        for e, c in self.terms.items():
            e2 = tuple(fn(e))
            v = res.get(e2, 0) + c
            if v:
                res[e2] = v
            else:
                res.pop(e2, None)
        return LaurentPoly(table, res, _clean=True)

    def evaluate(self, point):
        """Exact value at ``point`` (name -> rational), all variables bound."""
        vals = [Fraction(point[n]) for n in self.table.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = Fraction(c)
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return _normalize(total)

    def content(self):
        """Positive rational number g such that self/g has coprime integer coefficients."""
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def divide_exact(self, f):
        """Return self / f if f divides self in the Laurent ring, else None."""
        if not f.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self._new({})
        if f.is_monomial():
            ((e, c),) = f.terms.items()
            neg = tuple(-x for x in e)
            return self._new({tuple(map(add, x, neg)): _exact_div(v, c) for x, v in self.terms.items()})
        fmin = f.min_exponents()
        if any(fmin):
            f = f.shift(tuple(-x for x in fmin))
        smin = self.min_exponents()
        q = _poly_divide(self.shift(tuple(-x for x in smin)).terms, f.terms)
        if q is None:
            return None
        back = tuple(map(sub, smin, fmin))
        return self._new({tuple(map(add, e, back)): c for e, c in q.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.table.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _poly_divide(num, den):
    """Lex-order exact division of polynomials (nonnegative exponents).

    Returns the quotient terms or None when the remainder is nonzero.  Once
    the leading term of the running remainder is not divisible by the
    leading term of ``den`` it stays in the remainder forever, because all
    later updates only touch strictly smaller monomials.
    """
    lt = max(den)
    lc = den[lt]
    rest = [(e, c) for e, c in den.items() if e != lt]
    rem = dict(num)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        e = tuple(-x for x in heapq.heappop(heap))
        c = rem.pop(e, 0)
        if not c:
            continue
        d = tuple(map(sub, e, lt))
        if min(d) < 0:
            return None
        k = _exact_div(c, lc)
        quot[d] = k
        for fe, fc in rest:
            key = tuple(map(add, d, fe))
            if key in rem:
                v = rem[key] - k * fc
                if v:
                    rem[key] = v
                else:
                    rem[key] = 0
            else:
                rem[key] = -k * fc
                heapq.heappush(heap, tuple(-x for x in key))
    return quot


def canonical_factor(p):
    """Split p = coeff * x^e * f with f a canonical polynomial.

    The canonical f has every variable's minimal exponent 0, coprime integer
    coefficients and a positive lex-leading coefficient.  Returns
    (coeff, e, f); for a monomial p, f is the constant 1.
    """
    if not p.terms:
        raise ZeroDivisionError("zero has no canonical factor")
    e = p.min_exponents()
    f = p.shift(tuple(-x for x in e))
    g = f.content()
    if f.terms[max(f.terms)] < 0:
        g = -g
    if g != 1:
        f = f._new({k: _normalize(Fraction(c) / g) for k, c in f.terms.items()})
    return _normalize(g), e, f


class RationalFunction:
    """numerator / prod(factor^mult) with canonical polynomial factors.

    Denominators never get expanded unless needed.  Equality is decided by
    cross-multiplication against the least common multiple of the factor
    multisets, so it is always exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den else {}

    @property
    def table(self):
        return self.num.table

    # coercion ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.num.table != self.num.table:
                raise StructureError(f"{self.table} vs {other.table}")
            return other
        if isinstance(other, LaurentPoly):
            if other.table != self.num.table:
                raise StructureError(f"{self.table} vs {other.table}")
            return RationalFunction(other)
        if isinstance(other, (int, Rational)):
            return RationalFunction(self.num.table.const(other))
        return NotImplemented

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    # predicates -------------------------------------------------------------

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return not self.den

    def is_monomial(self):
        return not self.den and self.num.is_monomial()

    def denominator(self):
        """The expanded denominator polynomial."""
        d = self.num.table.const(1)
        for f, k in self.den.items():
            d = d * f**k
        return d

    def numerator(self):
        return self.num

    # arithmetic -------------------------------------------------------------

    def _lcm(self, other):
        common = dict(self.den)
        for f, k in other.den.items():
            if common.get(f, 0) < k:
                common[f] = k
        return common

    @staticmethod
    def _cofactor(table, common, den):
        c = table.const(1)
        for f, k in common.items():
            extra = k - den.get(f, 0)
            if extra:
                c = c * f**extra
        return c

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        common = self._lcm(other)
        t = self.num.table
        n = self.num * self._cofactor(t, common, self.den) + other.num * self._cofactor(t, common, other.den)
        return RationalFunction(n, common)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return RationalFunction(self.num.table.const(0))
        den = dict(self.den)
        for f, k in other.den.items():
            den[f] = den.get(f, 0) + k
        return RationalFunction(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero rational function")
        c, e, f = canonical_factor(self.num)
        unit = LaurentPoly(self.num.table, {tuple(-x for x in e): _normalize(Fraction(1) / Fraction(c))}, _clean=True)
        num = unit * self.denominator()
        den = {} if f.is_constant() else {f: 1}
        return RationalFunction(num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            raise ZeroDivisionError("division by zero rational function")
        if other.num.is_monomial() and not other.den:
            ((e, c),) = other.num.terms.items()
            return RationalFunction(
                self.num.shift(tuple(-x for x in e)) * _normalize(Fraction(1) / Fraction(c)), self.den
            )
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return self.inverse() ** (-k)
        if not self.den:
            return RationalFunction(self.num**k)
        return RationalFunction(self.num**k, {f: m * k for f, m in self.den.items()})

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        common = self._lcm(other)
        t = self.num.table
        return self.num * self._cofactor(t, common, self.den) == other.num * self._cofactor(t, common, other.den)

    __hash__ = None

    # simplification ---------------------------------------------------------

    def reduce(self):
        """Cancel every denominator factor that divides the numerator."""
        num = self.num
        den = {}
        for f, k in self.den.items():
            left = k
            while left and num.terms:
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                left -= 1
            if left:
                den[f] = left
        if not num.terms:
            den = {}
        return RationalFunction(num, den)

    def as_laurent(self):
        """The Laurent polynomial equal to self, or None if it is not one."""
        r = self.reduce()
        return r.num if not r.den else None

    # evaluation and substitution ---------------------------------------------

    def evaluate(self, point):
        d = Fraction(1)
        for f, k in self.den.items():
            v = Fraction(f.evaluate(point))
            if v == 0:
                raise ZeroDivisionError("denominator vanishes at the point")
            d *= v**k
        return _normalize(Fraction(self.num.evaluate(point)) / d)

    def variables(self):
        used = set(self.num.variables())
        for f in self.den:
            used.update(f.variables())
        return [n for n in self.table.names if n in used]

    def substitute(self, bindings):
        return substitute(self, bindings)

    def __repr__(self):
        if not self.den:
            return f"RationalFunction({self.num!r})"
        den = " * ".join(f"({f!r})" + (f"^{k}" if k > 1 else "") for f, k in self.den.items())
        return f"RationalFunction(({self.num!r}) / {den})"


def as_ratfun(x, table):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    return RationalFunction(table.const(x))


def poly_arith(p, q, op):
    """Exact add/sub/mul of Laurent polynomials over the same table."""
    if p.table != q.table:
        raise StructureError(f"{p.table} vs {q.table}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def ratfun_eq(f, g):
    """Exact equality of rational functions."""
    if isinstance(f, (LaurentPoly, RationalFunction)):
        table = f.table
    else:
        table = g.table
    return as_ratfun(f, table) == as_ratfun(g, table)


def _monomial_image(value):
    """(coeff, exponent) when ``value`` is a monomial rational function."""
    if isinstance(value, RationalFunction) and value.is_monomial():
        ((e, c),) = value.num.terms.items()
        return c, e
    return None


def _subst_poly(p, table, images, generic):
    """Substitute into a Laurent polynomial; returns a RationalFunction."""
    if not generic:
        # every bound variable maps to a monomial: exponent arithmetic only
        n = len(table)
        res = {}
        for e, c in p.terms.items():
            out = [0] * n
            coeff = Fraction(c)
            for i, k in enumerate(e):
                if not k:
                    continue
                img = images[i]
                if img is None:
                    out[i] += k
                else:
                    ic, ie = img
                    coeff *= Fraction(ic) ** k
                    for j, x in enumerate(ie):
                        if x:
                            out[j] += x * k
            key = tuple(out)
            v = res.get(key, 0) + coeff
            if v:
                res[key] = v
            else:
                res.pop(key, None)
        return RationalFunction(LaurentPoly(table, res))
    total = RationalFunction(table.const(0))
    cache = {}
    for e, c in p.terms.items():
        term = RationalFunction(table.const(c))
        keep = [0] * len(table)
        for i, k in enumerate(e):
            if not k:
                continue
            img = images[i]
            if img is None:
                keep[i] = k
                continue
            key = (i, k)
            if key not in cache:
                cache[key] = img**k
            term = term * cache[key]
        if any(keep):
            term = RationalFunction(term.num.shift(tuple(keep)), term.den)
        total = total + term
    return total


def substitute(f, bindings):
    """Substitute variables of f by rational functions over the same table."""
    f = as_ratfun(f, f.table)
    table = f.table
    images = [None] * len(table)
    raw = {}
    for name, value in bindings.items():
        value = as_ratfun(value, table)
        if value.table != table:
            raise StructureError("bindings must live over the same variable table")
        raw[table.index(name)] = value
    generic = any(_monomial_image(v) is None for v in raw.values())
    for i, v in raw.items():
        images[i] = v if generic else _monomial_image(v)
    result = _subst_poly(f.num, table, images, generic)
    for fac, k in f.den.items():
        d = _subst_poly(fac, table, images, generic)
        if d.is_zero():
            raise DegenerateSubstitution("a denominator factor vanishes after substitution")
        result = result / d**k
    return result


class TruncatedSeries:
    """Coefficients 0..order of a power series in ``var``."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var, order, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("need exactly order+1 coefficients")
        self.var = var
        self.order = order
        self.coeffs = coeffs

    def __getitem__(self, k):
        return self.coeffs[k]

    def _check(self, other):
        if not isinstance(other, TruncatedSeries) or other.var != self.var:
            raise StructureError("series in different variables")
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._check(other)
        return TruncatedSeries(self.var, n, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other):
        n = self._check(other)
        return TruncatedSeries(self.var, n, [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __mul__(self, other):
        n = self._check(other)
        out = []
        for k in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return TruncatedSeries(self.var, n, out)

    def first_mismatch(self, other):
        """Index of the first differing coefficient, or None."""
        n = self._check(other)
        for k in range(n + 1):
            if not (self.coeffs[k] == other.coeffs[k]):
                return k
        return None

    def __eq__(self, other):
        return self.first_mismatch(other) is None and self.order == other.order

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries({self.var}, order={self.order}, {self.coeffs!r})"


def series_expand(f, var, order):
    """Expansion of f at var = 0 up to var^order."""
    f = as_ratfun(f, f.table)
    table = f.table
    if order < 0:
        raise ValueError("order must be non-negative")
    zero = RationalFunction(table.const(0))
    if f.is_zero():
        return TruncatedSeries(var, order, [zero] * (order + 1))
    num = f.num.coefficients_in(var)
    den = f.denominator().coefficients_in(var)
    n0, d0 = min(num), min(den)
    shift = n0 - d0
    if shift < 0:
        raise PoleAtOrigin(f"expansion in {var} has a pole of order {-shift}")
    lead = RationalFunction(den[d0])
    if lead.num.is_monomial():
        inv = 1 / lead
    else:
        inv = lead.inverse()
    dcoef = {k - d0: RationalFunction(v) for k, v in den.items() if k != d0}
    ncoef = {k - n0: RationalFunction(v) for k, v in num.items()}
    raw = []
    for k in range(order + 1 - shift):
        acc = ncoef.get(k, zero)
        for j, dj in dcoef.items():
            if j <= k:
                acc = acc - dj * raw[k - j]
        raw.append((acc * inv).reduce() if acc.den else acc * inv)
    coeffs = [zero] * shift + raw
    return TruncatedSeries(var, order, coeffs[: order + 1])


class MonomialMatrix:
    """A weighted permutation matrix: basis vector i maps to weights[i] * e_{perm[i]}.

    Every representation operator in this package has this shape, so
    characteristic polynomials factor over the cycles of ``perm``.
    """

    __slots__ = ("perm", "weights", "labels")

    def __init__(self, perm, weights, labels=None):
        perm = tuple(perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("perm must be a permutation of range(n)")
        if len(weights) != len(perm):
            raise ValueError("one weight per basis vector")
        self.perm = perm
        self.weights = tuple(weights)
        self.labels = tuple(labels) if labels is not None else None

    @property
    def dimension(self):
        return len(self.perm)

    def cycles(self):
        seen = [False] * len(self.perm)
        out = []
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.perm[j]
            out.append(cyc)
        return out

    def cycle_data(self):
        """[(length, product of weights along the cycle)] per cycle."""
        out = []
        for cyc in self.cycles():
            prod = self.weights[cyc[0]]
            for j in cyc[1:]:
                prod = prod * self.weights[j]
            out.append((len(cyc), prod))
        return out

    def char_factors(self, z):
        """Factors (1 - z^len * prod) whose product is det(1 - z*M)."""
        return [1 - (z**k) * p for k, p in self.cycle_data()]

    def dense(self, zero=0):
        """Dense matrix as a list of rows: entry [perm[i]][i] = weights[i]."""
        n = len(self.perm)
        rows = [[zero] * n for _ in range(n)]
        for i, (j, w) in enumerate(zip(self.perm, self.weights)):
            rows[j][i] = w
        return rows

    def direct_sum(self, other):
        n = len(self.perm)
        perm = self.perm + tuple(p + n for p in other.perm)
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = self.labels + other.labels
        return MonomialMatrix(perm, self.weights + other.weights, labels)

    def restrict(self, indices):
        """Restriction to the span of the basis vectors in ``indices`` (must be stable)."""
        indices = list(indices)
        pos = {i: k for k, i in enumerate(indices)}
        try:
            perm = [pos[self.perm[i]] for i in indices]
        except KeyError:
            raise ValueError("subspace is not stable under the operator") from None
        labels = [self.labels[i] for i in indices] if self.labels is not None else None
        return MonomialMatrix(perm, [self.weights[i] for i in indices], labels)

    def compose(self, other):
        """self after other."""
        n = len(self.perm)
        if len(other.perm) != n:
            raise ValueError("dimension mismatch")
        perm = [self.perm[other.perm[i]] for i in range(n)]
        weights = [other.weights[i] * self.weights[other.perm[i]] for i in range(n)]
        return MonomialMatrix(perm, weights, other.labels)

    def map_weights(self, fn):
        return MonomialMatrix(self.perm, [fn(w) for w in self.weights], self.labels)


def dense_det(rows):
    """Exact determinant by fraction-free Gaussian elimination over any field-like type."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] / p
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det * sign


class FactoredRational:
    """scalar * prod(factor^k) with canonical polynomial factors and signed multiplicities.

    Products and quotients of many binomials stay small here, and equality
    only expands whatever survives cancellation.
    """

    __slots__ = ("table", "scalar", "factors")

    def __init__(self, table, scalar=None, factors=None):
        self.table = table
        self.scalar = scalar if scalar is not None else table.const(1)
        self.factors = {f: k for f, k in (factors or {}).items() if k}

    @classmethod
    def from_value(cls, table, value):
        """Factor a polynomial or rational function into its canonical pieces (not further)."""
        value = as_ratfun(value, table)
        if value.is_zero():
            raise ZeroDivisionError("zero has no factored form")
        out = cls(table)
        coeff, e, canon = canonical_factor(value.num)
        out = out._times_atom(coeff, e, canon, 1)
        for atom, k in value.den.items():
            out = out._times_atom(1, table.zero_exp, atom, -k)
        return out

    @classmethod
    def product(cls, table, values):
        out = cls(table)
        for v in values:
            out = out * cls.from_value(table, v)
        return out

    def _times_atom(self, coeff, e, canon, k):
        scalar = self.scalar * (self.table.monomial({}, coeff) * LaurentPoly(self.table, {tuple(e): 1})) ** k
        factors = dict(self.factors)
        if not canon.is_constant():
            factors[canon] = factors.get(canon, 0) + k
        elif canon.constant_value() != 1:
            scalar = scalar * Fraction(canon.constant_value()) ** k
        return FactoredRational(self.table, scalar, factors)

    def __mul__(self, other):
        if not isinstance(other, FactoredRational):
            other = FactoredRational.from_value(self.table, other)
        factors = dict(self.factors)
        for f, k in other.factors.items():
            factors[f] = factors.get(f, 0) + k
        return FactoredRational(self.table, self.scalar * other.scalar, factors)

    def inverse(self):
        return FactoredRational(self.table, self.scalar**-1, {f: -k for f, k in self.factors.items()})

    def __truediv__(self, other):
        if not isinstance(other, FactoredRational):
            other = FactoredRational.from_value(self.table, other)
        return self * other.inverse()

    def map_factors(self, fn):
        """Apply a ring map ``fn`` (LaurentPoly -> value) to the scalar and every factor."""
        out = FactoredRational.from_value(self.table, fn(self.scalar))
        for f, k in self.factors.items():
            piece = FactoredRational.from_value(self.table, fn(f))
            out = out * FactoredRational(self.table, piece.scalar**k, {g: j * k for g, j in piece.factors.items()})
        return out

    def to_ratfun(self):
        num = self.scalar
        den = {}
        for f, k in self.factors.items():
            if k > 0:
                num = num * f**k
            else:
                den[f] = -k
        return RationalFunction(num, den)

    def leftover(self, other):
        """Factors of self/other that do not cancel, as (numerator, denominator) dicts."""
        q = self / other
        return q, {f: k for f, k in q.factors.items() if k > 0}, {f: -k for f, k in q.factors.items() if k < 0}

    def __eq__(self, other):
        if not isinstance(other, FactoredRational):
            return NotImplemented
        q, up, down = self.leftover(other)
        lhs = q.scalar
        for f, k in up.items():
            lhs = lhs * f**k
        rhs = self.table.const(1)
        for f, k in down.items():
            rhs = rhs * f**k
        return lhs == rhs

    __hash__ = None

    def __repr__(self):
        parts = [f"({f!r})^{k}" for f, k in self.factors.items()]
        return f"FactoredRational({self.scalar!r} * {' * '.join(parts) or '1'})"
