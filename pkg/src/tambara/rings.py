"""Exact finite commutative rings and rings with a group action.

Every ring exposes ``zero``, ``one``, ``add``, ``neg``, ``mul`` and, when it
is small enough to list, ``elements()``.  Elements are plain hashable
Python values (ints or tuples) so they can be used as dict keys.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from functools import cached_property
from itertools import product

ENUM_CAP = int(os.environ.get("TAMBARA_CAP", 4096))


def enum_cap():
    return ENUM_CAP


def set_enum_cap(n):
    global ENUM_CAP
    ENUM_CAP = int(n)


@contextmanager
def raised_cap(n):
    """Temporarily allow enumeration of rings with up to ``n`` elements."""
    old = ENUM_CAP
    set_enum_cap(max(n, old))
    try:
        yield
    finally:
        set_enum_cap(old)


class RingError(ValueError):
    pass


class NotEnumerable(RingError):
    """Raised when an operation needs to list the elements of a ring that
    is infinite or larger than the enumeration cap."""


class Ring:
    enumerable = True
    name = "ring"

    # subclasses provide zero, one, add, neg, mul, _elements

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k):
        out, base = self.one, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def from_int(self, n):
        out, base, k = self.zero, self.one, abs(n)
        while k:
            if k & 1:
                out = self.add(out, base)
            base = self.add(base, base)
            k >>= 1
        return self.neg(out) if n < 0 else out

    def sum(self, xs):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def prod(self, xs):
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def is_zero(self, a):
        return a == self.zero

    def elements(self):
        if not self.enumerable:
            raise NotEnumerable("%s cannot be enumerated" % self.name)
        if self._elts is None:
            if self.size > ENUM_CAP:
                raise NotEnumerable("%s has %d elements, above the cap %d" % (self.name, self.size, ENUM_CAP))
            self._elts = list(self._elements())
        return self._elts

    _elts = None

    @cached_property
    def _position(self):
        return {a: i for i, a in enumerate(self.elements())}

    def index(self, a):
        return self._position[a]

    def __contains__(self, a):
        try:
            return a in self._position
        except TypeError:
            return False

    def __len__(self):
        return self.size

    def sample(self, rng):
        return rng.choice(self.elements())

    def elt_to_json(self, a):
        return _to_jsonable(a)

    def elt_from_json(self, v):
        return _from_jsonable(v)

    def __repr__(self):
        return self.name


def _to_jsonable(a):
    if isinstance(a, tuple):
        return [_to_jsonable(x) for x in a]
    return a


def _from_jsonable(v):
    if isinstance(v, list):
        return tuple(_from_jsonable(x) for x in v)
    return v


# -- concrete rings -----------------------------------------------------------------

class ModRing(Ring):
    """``Z/n``."""

    def __init__(self, n):
        if n < 1:
            raise RingError("modulus must be positive")
        self.n = n
        self.size = n
        self.zero = 0
        self.one = 1 % n
        self.name = "Z/%d" % n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def _elements(self):
        return range(self.n)

    def __contains__(self, a):
        return isinstance(a, int) and 0 <= a < self.n

    def to_json(self):
        return {"kind": "mod", "n": self.n}


# Conway polynomials, coefficients from the constant term up.
CONWAY = {
    (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1), (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1), (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1), (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1), (7, 2): (3, 6, 1), (7, 3): (4, 0, 6, 1),
    (11, 2): (2, 7, 1), (13, 2): (2, 12, 1),
}


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _polys_irreducible(p, k):
    """Least monic irreducible of degree k by brute force (fallback only)."""
    for tail in product(range(p), repeat=k):
        poly = tuple(tail[::-1]) + (1,)
        if poly[0] == 0:
            continue
        F = GaloisField(p, k, poly=poly, check=False)
        if F.is_valid_field():
            return poly
    raise RingError("no irreducible polynomial found")


class GaloisField(Ring):
    """``GF(p^k)`` with elements encoded as ints ``sum c_i p^i`` where
    ``c_i`` are the coefficients of the residue polynomial."""

    def __init__(self, p, k=1, poly=None, check=True):
        if not _is_prime(p):
            raise RingError("%d is not prime" % p)
        self.p, self.k = p, k
        self.q = self.size = p ** k
        if self.q > 4 * ENUM_CAP:
            raise RingError("field too large")
        if k == 1:
            poly = (0, 1)
        elif poly is None:
            poly = CONWAY.get((p, k))
            if poly is None:
                poly = _polys_irreducible(p, k)
        self.poly = tuple(poly)
        if len(self.poly) != k + 1 or self.poly[-1] != 1:
            raise RingError("defining polynomial must be monic of degree %d" % k)
        self.zero, self.one = 0, 1
        self.name = "F%d" % self.q
        self._digits = [self._to_digits(a) for a in range(self.q)]
        self._mul_cache = {}
        if check and k > 1 and not self.is_valid_field():
            raise RingError("polynomial %r is reducible over F%d" % (self.poly, p))

    def _to_digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def _from_digits(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + c
        return a

    def coefficients(self, a):
        return self._digits[a]

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self._from_digits([(-x) % self.p for x in self._digits[a]])

    def _poly_mul(self, a, b):
        p, k = self.p, self.k
        da, db = self._digits[a], self._digits[b]
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] = (prod_[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod_[d]
            if c:
                for i in range(k + 1):
                    prod_[d - k + i] = (prod_[d - k + i] - c * self.poly[i]) % p
        return self._from_digits(prod_[:k])

    @cached_property
    def _log_tables(self):
        """``(exp, log)`` for a primitive element, or ``None`` if the
        polynomial is reducible."""
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp, x = [], 1
            seen = set()
            while x not in seen:
                seen.add(x)
                exp.append(x)
                x = self._poly_mul(x, g)
            if len(exp) == q - 1 and x == 1:
                log = {v: i for i, v in enumerate(exp)}
                return exp, log
        return None

    def is_valid_field(self):
        if self.k == 1:
            return True
        return self._log_tables is not None

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return (a * b) % self.p
        exp, log = self._log_tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._log_tables
        return exp[(-log[a]) % (self.q - 1)]

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** (times % self.k))

    def is_primitive_poly(self):
        """True when the class of ``x`` generates the multiplicative group."""
        if self.k == 1:
            return True
        x, order, cur = self.p, 1, self.p
        while cur != 1:
            cur = self._poly_mul(cur, x)
            order += 1
        return order == self.q - 1

    def _elements(self):
        return range(self.q)

    def __contains__(self, a):
        return isinstance(a, int) and 0 <= a < self.q

    def elt_to_json(self, a):
        return a if self.k == 1 else list(self._digits[a])

    def elt_from_json(self, v):
        return v if self.k == 1 else self._from_digits(v)

    def format(self, a):
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self._digits[a]):
            if c:
                mon = "1" if i == 0 else ("x" if i == 1 else "x^%d" % i)
                terms.append(mon if c == 1 and i else ("%d" % c if i == 0 else "%d%s" % (c, mon)))
        return " + ".join(reversed(terms)) or "0"

    def to_json(self):
        return {"kind": "gf", "p": self.p, "k": self.k, "poly": list(self.poly)}


def field(q):
    """``GF(q)`` with the documented default polynomial."""
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return GaloisField(p, k)
    raise RingError("%d is not a prime power" % q)


class ProductRing(Ring):
    def __init__(self, factors):
        self.factors = list(factors)
        self.enumerable = all(R.enumerable for R in self.factors)
        size = 1
        for R in self.factors:
            size *= R.size if R.enumerable else 0
        self.size = size if self.enumerable else float("inf")
        self.zero = tuple(R.zero for R in self.factors)
        self.one = tuple(R.one for R in self.factors)
        self.name = " x ".join(R.name for R in self.factors) or "0"

    def add(self, a, b):
        return tuple(R.add(x, y) for R, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(R.neg(x) for R, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(R.mul(x, y) for R, x, y in zip(self.factors, a, b))

    def _elements(self):
        return product(*(R.elements() for R in self.factors))

    def sample(self, rng):
        return tuple(R.sample(rng) for R in self.factors)

    def elt_to_json(self, a):
        return [R.elt_to_json(x) for R, x in zip(self.factors, a)]

    def elt_from_json(self, v):
        return tuple(R.elt_from_json(x) for R, x in zip(self.factors, v))

    def to_json(self):
        return {"kind": "product", "factors": [R.to_json() for R in self.factors]}


class FunRing(ProductRing):
    """``Fun(X, R)`` for a finite set ``X = {0..n-1}``, pointwise operations."""

    def __init__(self, n, base):
        super().__init__([base] * n)
        self.n, self.base = n, base
        self.name = "Fun(%d, %s)" % (n, base.name)

    def to_json(self):
        return {"kind": "fun", "n": self.n, "base": self.base.to_json()}


class TableRing(Ring):
    """A ring on ``{0..n-1}`` given by addition and multiplication tables."""

    def __init__(self, add_table, mul_table, zero, one, name="table ring", check=False):
        self.add_table = tuple(tuple(r) for r in add_table)
        self.mul_table = tuple(tuple(r) for r in mul_table)
        self.size = len(self.add_table)
        self.zero, self.one = zero, one
        self.name = name
        self._neg = [self.add_table[a].index(zero) for a in range(self.size)]
        if check:
            bad = check_ring_axioms(self)
            if bad:
                raise RingError("table is not a commutative ring: %s" % bad[0])

    def add(self, a, b):
        return self.add_table[a][b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def _elements(self):
        return range(self.size)

    def __contains__(self, a):
        return isinstance(a, int) and 0 <= a < self.size

    def to_json(self):
        return {"kind": "table", "add": [list(r) for r in self.add_table],
                "mul": [list(r) for r in self.mul_table], "zero": self.zero, "one": self.one}


def tabulate_ring(R, relabel=None, name=None):
    """Copy of ``R`` as a :class:`TableRing` on indices.

    ``relabel`` is an optional permutation: element ``R.elements()[i]`` gets
    the new label ``relabel[i]``.  Returns ``(table_ring, encode)`` with
    ``encode`` mapping old elements to new labels.
    """
    elts = R.elements()
    n = len(elts)
    relabel = list(range(n)) if relabel is None else list(relabel)
    encode = {a: relabel[i] for i, a in enumerate(elts)}
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for a in elts:
        ea = encode[a]
        for b in elts:
            eb = encode[b]
            add[ea][eb] = encode[R.add(a, b)]
            mul[ea][eb] = encode[R.mul(a, b)]
    T = TableRing(add, mul, encode[R.zero], encode[R.one], name=name or "table(%s)" % R.name)
    return T, encode


class RelabeledRing(Ring):
    """``R`` transported along a bijection onto ``{0..n-1}``; the operations
    go through the bijection, so no tables are stored."""

    def __init__(self, R, perm, name=None):
        elts = R.elements()
        self.source = R
        self.encode = {a: perm[i] for i, a in enumerate(elts)}
        self.decode = [None] * len(elts)
        for a, j in self.encode.items():
            self.decode[j] = a
        self.size = len(elts)
        self.zero = self.encode[R.zero]
        self.one = self.encode[R.one]
        self.name = name or "relabel(%s)" % R.name

    def add(self, a, b):
        d = self.decode
        return self.encode[self.source.add(d[a], d[b])]

    def neg(self, a):
        return self.encode[self.source.neg(self.decode[a])]

    def mul(self, a, b):
        d = self.decode
        return self.encode[self.source.mul(d[a], d[b])]

    def _elements(self):
        return range(self.size)

    def __contains__(self, a):
        return isinstance(a, int) and 0 <= a < self.size

    def to_json(self):
        perm = [self.encode[a] for a in self.source.elements()]
        return {"kind": "relabel", "source": self.source.to_json(), "perm": perm}


class SubRing(Ring):
    """A subset of ``parent`` closed under the operations.

    ``one`` may differ from the parent's unit: corner rings ``eR`` for an
    idempotent ``e`` are rings with unit ``e`` in this sense.
    """

    def __init__(self, parent, elements, one=None, name=None, check=False):
        self.parent = parent
        self._elts = sorted(set(elements), key=_sort_key)
        self.size = len(self._elts)
        self.zero = parent.zero
        self.one = parent.one if one is None else one
        self.name = name or "sub(%s)" % parent.name
        if check:
            S = set(self._elts)
            if self.zero not in S or self.one not in S:
                raise RingError("subring must contain 0 and 1")
            for a in self._elts:
                if parent.neg(a) not in S:
                    raise RingError("subring not closed under negation")
                for b in self._elts:
                    if parent.add(a, b) not in S or parent.mul(a, b) not in S:
                        raise RingError("subring not closed")

    def add(self, a, b):
        return self.parent.add(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def _elements(self):
        return self._elts

    def elt_to_json(self, a):
        return self.parent.elt_to_json(a)

    def elt_from_json(self, v):
        return self.parent.elt_from_json(v)

    def to_json(self):
        return {"kind": "subring", "parent": self.parent.to_json(),
                "elements": [self.parent.elt_to_json(a) for a in self._elts],
                "one": self.parent.elt_to_json(self.one)}


def _sort_key(a):
    return (0, a) if isinstance(a, int) else (1, a)


class QuotientRing(Ring):
    """``parent / I`` with cosets represented by their least element."""

    def __init__(self, parent, ideal, name=None):
        self.parent = parent
        self.ideal = frozenset(ideal)
        rep = {}
        for a in parent.elements():
            if a in rep:
                continue
            coset = [parent.add(a, i) for i in self.ideal]
            r = min(coset, key=_sort_key)
            for c in coset:
                rep[c] = r
        self._rep = rep
        self._elts = sorted(set(rep.values()), key=_sort_key)
        self.size = len(self._elts)
        self.zero = rep[parent.zero]
        self.one = rep[parent.one]
        self.name = name or "%s/I" % parent.name

    def reduce(self, a):
        return self._rep[a]

    def add(self, a, b):
        return self._rep[self.parent.add(a, b)]

    def neg(self, a):
        return self._rep[self.parent.neg(a)]

    def mul(self, a, b):
        return self._rep[self.parent.mul(a, b)]

    def _elements(self):
        return self._elts

    def elt_to_json(self, a):
        return self.parent.elt_to_json(a)

    def elt_from_json(self, v):
        return self._rep[self.parent.elt_from_json(v)]

    def to_json(self):
        return {"kind": "quotient", "parent": self.parent.to_json(),
                "ideal": [self.parent.elt_to_json(a) for a in sorted(self.ideal, key=_sort_key)]}


class PolynomialRing(Ring):
    """``R[x]``; elements are coefficient tuples with no trailing zeros."""

    enumerable = False

    def __init__(self, base):
        self.base = base
        self.zero = ()
        self.one = self._trim((base.one,))
        self.size = float("inf")
        self.name = "%s[x]" % base.name

    def _trim(self, cs):
        cs = list(cs)
        while cs and cs[-1] == self.base.zero:
            cs.pop()
        return tuple(cs)

    def coeff(self, a, i):
        return a[i] if i < len(a) else self.base.zero

    def add(self, a, b):
        n = max(len(a), len(b))
        R = self.base
        return self._trim(R.add(self.coeff(a, i), self.coeff(b, i)) for i in range(n))

    def neg(self, a):
        return self._trim(self.base.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        R = self.base
        out = [R.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
        return self._trim(out)

    def constant(self, c):
        return self._trim((c,))

    def variable(self):
        return self._trim((self.base.zero, self.base.one))

    def map_coefficients(self, fn, a):
        return self._trim(fn(c) for c in a)

    def evaluate(self, a, x, ring=None, coeff_map=None):
        """Evaluate at ``x`` in ``ring`` (default: the base ring), pushing
        coefficients through ``coeff_map`` first."""
        ring = ring or self.base
        out = ring.zero
        for c in reversed(a):
            cc = coeff_map(c) if coeff_map else c
            out = ring.add(ring.mul(out, x), cc)
        return out

    def degree(self, a):
        return len(a) - 1

    def sample(self, rng, max_degree=2):
        d = rng.randint(0, max_degree)
        return self._trim(self.base.sample(rng) for _ in range(d + 1))

    def elt_to_json(self, a):
        return [self.base.elt_to_json(c) for c in a]

    def elt_from_json(self, v):
        return self._trim(self.base.elt_from_json(c) for c in v)

    def to_json(self):
        return {"kind": "poly", "base": self.base.to_json()}


def ring_from_json(data):
    kind = data.get("kind")
    if kind == "mod":
        return ModRing(int(data["n"]))
    if kind == "gf":
        return GaloisField(int(data["p"]), int(data.get("k", 1)), poly=data.get("poly"))
    if kind == "product":
        return ProductRing([ring_from_json(f) for f in data["factors"]])
    if kind == "fun":
        return FunRing(int(data["n"]), ring_from_json(data["base"]))
    if kind == "table":
        return TableRing(data["add"], data["mul"], data["zero"], data["one"], check=True)
    if kind == "subring":
        P = ring_from_json(data["parent"])
        return SubRing(P, [P.elt_from_json(v) for v in data["elements"]], one=P.elt_from_json(data["one"]),
                       check=True)
    if kind == "quotient":
        P = ring_from_json(data["parent"])
        return QuotientRing(P, [P.elt_from_json(v) for v in data["ideal"]])
    if kind == "poly":
        return PolynomialRing(ring_from_json(data["base"]))
    if kind == "relabel":
        src = ring_from_json(data["source"])
        perm = [int(i) for i in data["perm"]]
        if sorted(perm) != list(range(src.size)):
            raise RingError("relabeling is not a permutation")
        return RelabeledRing(src, perm)
    raise RingError("unknown ring kind %r" % (kind,))


def parse_ring(text):
    """Short names: ``F4``, ``GF9``, ``Z/4``, ``Z4``."""
    s = text.strip().replace(" ", "")
    if s.startswith("GF"):
        return field(int(s[2:]))
    if s.startswith("F"):
        return field(int(s[1:]))
    if s.startswith("Z/"):
        return ModRing(int(s[2:]))
    if s.startswith("Z"):
        return ModRing(int(s[1:]))
    raise RingError("cannot parse ring %r" % text)


# -- structure of finite rings --------------------------------------------------------

def idempotents(R):
    return [e for e in R.elements() if R.mul(e, e) == e]


def units(R):
    elts = R.elements()
    return [a for a in elts if any(R.mul(a, b) == R.one for b in elts)]


def is_field(R):
    if not R.enumerable:
        return False
    if R.size < 2 or R.one == R.zero:
        return False
    if isinstance(R, GaloisField):
        return True
    return len(units(R)) == R.size - 1


def ring_ideal(R, gens):
    """The ideal generated by ``gens`` (additive closure of ``R·gens``)."""
    elts = R.elements()
    products = {R.mul(r, g) for g in gens for r in elts}
    return additive_closure(R, products)


def additive_closure(R, S):
    I = {R.zero}
    frontier = list(I)
    S = set(S)
    I |= S
    frontier = list(I)
    while frontier:
        new = []
        for a in frontier:
            for s in list(I):
                c = R.add(a, s)
                if c not in I:
                    I.add(c)
                    new.append(c)
        frontier = new
    return frozenset(I)


def check_ring_axioms(R, elements=None):
    """Exhaustive check of the commutative ring axioms; returns a list of
    failure descriptions (empty when lawful)."""
    elts = list(R.elements() if elements is None else elements)
    zero, one = R.zero, R.one
    bad = []
    for a in elts:
        if R.add(a, zero) != a:
            bad.append("additive identity fails at %r" % (a,))
        if R.mul(a, one) != a:
            bad.append("multiplicative identity fails at %r" % (a,))
        if R.add(a, R.neg(a)) != zero:
            bad.append("additive inverse fails at %r" % (a,))
        for b in elts:
            if R.add(a, b) != R.add(b, a):
                bad.append("addition not commutative at %r, %r" % (a, b))
            if R.mul(a, b) != R.mul(b, a):
                bad.append("multiplication not commutative at %r, %r" % (a, b))
            ab, ab_ = R.add(a, b), R.mul(a, b)
            for c in elts:
                if R.add(ab, c) != R.add(a, R.add(b, c)):
                    bad.append("addition not associative")
                if R.mul(ab_, c) != R.mul(a, R.mul(b, c)):
                    bad.append("multiplication not associative")
                if R.mul(a, R.add(b, c)) != R.add(ab_, R.mul(a, c)):
                    bad.append("distributivity fails")
            if len(bad) > 10:
                return bad
    return bad


def ring_generators(R):
    """A small list of elements generating ``R`` as a ring (greedy)."""
    gens = []
    S = subring_closure(R, [])
    for a in R.elements():
        if a not in S:
            gens.append(a)
            S = subring_closure(R, gens)
            if len(S) == R.size:
                break
    return gens


def subring_closure(R, gens):
    S = {R.zero, R.one, *gens}
    frontier = list(S)
    while frontier:
        new = []
        for a in frontier:
            for b in list(S):
                for c in (R.add(a, b), R.mul(a, b)):
                    if c not in S:
                        S.add(c)
                        new.append(c)
            c = R.neg(a)
            if c not in S:
                S.add(c)
                new.append(c)
        frontier = new
    return S


class RingHom:
    """A map of rings given as a dict (enumerable source) or a callable."""

    def __init__(self, src, dst, mapping):
        self.src, self.dst = src, dst
        self.mapping = mapping

    def __call__(self, a):
        m = self.mapping
        return m[a] if isinstance(m, dict) else m(a)

    def check(self, elements=None):
        return not check_ring_hom(self.src, self.dst, self, elements)


def check_ring_hom(src, dst, phi, elements=None):
    elts = list(src.elements() if elements is None else elements)
    bad = []
    if phi(src.one) != dst.one:
        bad.append("unit not preserved")
    if phi(src.zero) != dst.zero:
        bad.append("zero not preserved")
    for a in elts:
        pa = phi(a)
        for b in elts:
            pb = phi(b)
            if phi(src.add(a, b)) != dst.add(pa, pb):
                bad.append("addition not preserved at %r, %r" % (a, b))
                return bad
            if phi(src.mul(a, b)) != dst.mul(pa, pb):
                bad.append("multiplication not preserved at %r, %r" % (a, b))
                return bad
    return bad


def ring_homs(A, B):
    """All unital ring homomorphisms ``A -> B`` as dicts, by assigning the
    greedy ring generators of ``A`` and checking exhaustively."""
    gens = ring_generators(A)
    words = _expressions_in(A, gens)
    out = []
    for images in product(B.elements(), repeat=len(gens)):
        m = _evaluate_words(B, words, images)
        if m is None:
            continue
        if len(m) == A.size and not check_ring_hom(A, B, m.__getitem__):
            out.append(m)
    return out


def _expressions_in(R, gens):
    """For each element of ``R``: an expression tree over the generators,
    as a list of (element, op, args) in creation order."""
    words = [(R.zero, "zero", ()), (R.one, "one", ())]
    known = {R.zero, R.one}
    for i, g in enumerate(gens):
        if g not in known:
            known.add(g)
            words.append((g, "gen", (i,)))
    frontier = [w[0] for w in words]
    while frontier:
        new = []
        for a in frontier:
            for b in list(known):
                for op, c in (("add", R.add(a, b)), ("mul", R.mul(a, b))):
                    if c not in known:
                        known.add(c)
                        words.append((c, op, (a, b)))
                        new.append(c)
            c = R.neg(a)
            if c not in known:
                known.add(c)
                words.append((c, "neg", (a,)))
                new.append(c)
        frontier = new
    return words


def _evaluate_words(B, words, images):
    m = {}
    for elt, op, args in words:
        if op == "zero":
            v = B.zero
        elif op == "one":
            v = B.one
        elif op == "gen":
            v = images[args[0]]
        elif op == "add":
            v = B.add(m[args[0]], m[args[1]])
        elif op == "mul":
            v = B.mul(m[args[0]], m[args[1]])
        else:
            v = B.neg(m[args[0]])
        if elt in m and m[elt] != v:
            return None
        m[elt] = v
    return m


def field_embeddings(F, E):
    """All ring maps ``F -> E`` between Galois fields of the same
    characteristic (empty unless the degree of F divides that of E)."""
    if F.p != E.p or E.k % F.k:
        return []
    if F.k == 1:
        return [{a: a for a in F.elements()}]
    # image of the class of x must be a root of F's defining polynomial
    roots = [r for r in E.elements()
             if E.sum(E.mul(E.from_int(c), E.pow(r, i)) for i, c in enumerate(F.poly)) == E.zero]
    out = []
    for r in roots:
        m = {}
        for a in F.elements():
            m[a] = E.sum(E.mul(E.from_int(c), E.pow(r, i)) for i, c in enumerate(F.coefficients(a)))
        out.append(m)
    return out


# -- rings with a group action --------------------------------------------------------

class GRing:
    """A commutative ring ``base`` with a left action of ``group`` by ring
    automorphisms; ``action(g, x)`` gives ``g·x``."""

    def __init__(self, base, group, action, name=None, check=True):
        self.base, self.group = base, group
        self._action = action
        self.name = name or "%s with %s-action" % (base.name, group.name)
        self._tables = None
        if base.enumerable and base.size <= ENUM_CAP:
            elts = base.elements()
            self._tables = [{x: action(g, x) for x in elts} for g in group.elements]
        if check:
            bad = self.check()
            if bad:
                raise RingError("invalid group action: %s" % bad[0])

    def act(self, g, x):
        if self._tables is not None:
            return self._tables[g][x]
        return self._action(g, x)

    def check(self):
        G, R = self.group, self.base
        bad = []
        elts = R.elements()
        for g in G.elements:
            imgs = {self.act(g, x) for x in elts}
            if len(imgs) != len(elts):
                bad.append("element %s does not act bijectively" % G.labels[g])
            bad += ["element %s: %s" % (G.labels[g], b)
                    for b in check_ring_hom(R, R, lambda x, g=g: self.act(g, x))]
            for h in G.elements:
                gh = G.mul(g, h)
                if any(self.act(g, self.act(h, x)) != self.act(gh, x) for x in elts):
                    bad.append("action does not respect the group law")
                    return bad
        return bad

    def fixed_points(self, H):
        return [x for x in self.base.elements() if all(self.act(h, x) == x for h in H)]
