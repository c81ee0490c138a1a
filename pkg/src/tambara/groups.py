"""Finite groups given by multiplication tables, with the subgroup
combinatorics (conjugacy classes, cosets, double cosets, Weyl groups)
that index everything else in the package.

Elements are stored as integer indices ``0..n-1``; the user-facing labels
are kept alongside for printing and serialization.  Subgroups are
``frozenset`` objects of element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations

MAX_ORDER = 24


class GroupError(ValueError):
    """Malformed group data (bad table, missing identity, non-subgroup...)."""


def subgroup_key(H):
    """Ordering key for subgroups: by order, then lexicographically."""
    return (len(H), tuple(sorted(H)))


class FiniteGroup:
    """A finite group presented by an explicit Cayley table.

    ``table[a][b]`` is the index of ``labels[a] * labels[b]``.
    """

    def __init__(self, labels, table, identity=None, name=None, check=True):
        self.labels = [str(x) for x in labels]
        self.table = tuple(tuple(row) for row in table)
        self.n = len(self.labels)
        self.name = name or "G%d" % self.n
        if check:
            self._validate_shape()
        if identity is None:
            identity = self._find_identity()
        elif not isinstance(identity, int):
            identity = self.labels.index(str(identity))
        self.identity = identity
        if check:
            self._validate_axioms()
        self.inverses = tuple(self._inverse(a) for a in range(self.n))
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != self.n:
            raise GroupError("duplicate element labels")

    # -- construction helpers -------------------------------------------

    def _validate_shape(self):
        n = self.n
        if n == 0:
            raise GroupError("a group needs at least one element")
        if n > MAX_ORDER:
            raise GroupError("group order %d exceeds the desk-scale cap %d" % (n, MAX_ORDER))
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError("multiplication table must be %dx%d" % (n, n))
        for row in self.table:
            for c in row:
                if not (isinstance(c, int) and 0 <= c < n):
                    raise GroupError("table entry %r out of range" % (c,))

    def _find_identity(self):
        for e in range(self.n):
            if all(self.table[e][a] == a == self.table[a][e] for a in range(self.n)):
                return e
        raise GroupError("no two-sided identity")

    def _validate_axioms(self):
        t, n, e = self.table, self.n, self.identity
        for a in range(n):
            if t[e][a] != a or t[a][e] != a:
                raise GroupError("element %s is not the identity" % self.labels[e])
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError("multiplication is not associative")
        for a in range(n):
            if e not in t[a]:
                raise GroupError("element %s has no inverse" % self.labels[a])

    def _inverse(self, a):
        for b in range(self.n):
            if self.table[a][b] == self.identity:
                return b
        raise GroupError("element %s has no inverse" % self.labels[a])

    @classmethod
    def from_permutations(cls, generators, degree=None, name=None):
        """Close a list of permutations (tuples of images) under composition.

        Elements are sorted lexicographically, so the identity comes first.
        Composition is ``(p*q)(i) = p(q(i))``.
        """
        gens = [tuple(g) for g in generators]
        if degree is None:
            degree = max((len(g) for g in gens), default=1)
        gens = [g + tuple(range(len(g), degree)) for g in gens]
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(degree))
                    if q not in seen:
                        seen.add(q)
                        new.append(q)
                        if len(seen) > MAX_ORDER:
                            raise GroupError("generated group exceeds order %d" % MAX_ORDER)
            frontier = new
        perms = sorted(seen)
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[q[i]] for i in range(degree))] for q in perms] for p in perms]
        labels = [cycle_string(p) for p in perms]
        G = cls(labels, table, identity=0, name=name, check=False)
        G.permutations = perms
        return G

    @classmethod
    def from_cycles(cls, generators, degree=None, name=None):
        """``generators`` is a list of generators, each a list of cycles."""
        if degree is None:
            degree = 1 + max((x for gen in generators for cyc in gen for x in cyc), default=0)
        perms = []
        for gen in generators:
            img = list(range(degree))
            for cyc in gen:
                for i, x in enumerate(cyc):
                    img[x] = cyc[(i + 1) % len(cyc)]
            perms.append(tuple(img))
        return cls.from_permutations(perms, degree=degree, name=name)

    # -- basic arithmetic -----------------------------------------------

    def __len__(self):
        return self.n

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.n)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    @property
    def elements(self):
        return range(self.n)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def conj(self, g, h):
        """``g h g^-1``."""
        return self.table[self.table[g][h]][self.inverses[g]]

    def index_of(self, label):
        try:
            return self._index[str(label)]
        except KeyError:
            raise GroupError("unknown group element %r" % (label,)) from None

    def label(self, a):
        return self.labels[a]

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    # -- subgroups -------------------------------------------------------

    @cached_property
    def trivial_subgroup(self):
        return frozenset([self.identity])

    @cached_property
    def whole(self):
        return frozenset(range(self.n))

    def generated(self, gens):
        """Subgroup generated by ``gens``."""
        H = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in H:
                        H.add(y)
                        new.append(y)
            frontier = new
        return frozenset(H)

    def is_subgroup(self, S):
        S = frozenset(S)
        if self.identity not in S:
            return False
        t = self.table
        return all(t[a][b] in S for a in S for b in S)

    def check_subgroup(self, H):
        H = frozenset(H)
        if not self.is_subgroup(H):
            raise GroupError("%s is not a subgroup" % self.format_subset(H))
        return H

    @cached_property
    def _subgroups(self):
        cyclic = {self.generated([a]) for a in range(self.n)}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    J = self.generated(H | C)
                    if J not in found:
                        new.add(J)
            found |= new
            frontier = new
        return tuple(sorted(found, key=subgroup_key))

    def subgroups(self):
        """All subgroups, sorted by order then lexicographically."""
        return list(self._subgroups)

    def subgroups_of(self, H):
        return [K for K in self._subgroups if K <= H]

    @cached_property
    def _subgroup_names(self):
        names = {}
        for i, H in enumerate(self._subgroups):
            if len(H) == 1:
                names[H] = "e"
            elif len(H) == self.n:
                names[H] = "G"
            else:
                names[H] = "H%d" % i
        return names

    def subgroup_name(self, H):
        return self._subgroup_names[frozenset(H)]

    def subgroup_by_name(self, name):
        for H, nm in self._subgroup_names.items():
            if nm == name:
                return H
        raise GroupError("unknown subgroup name %r" % (name,))

    def format_subset(self, S):
        return "{" + ", ".join(self.labels[a] for a in sorted(S)) + "}"

    def conjugate_subgroup(self, g, H):
        return frozenset(self.conj(g, h) for h in H)

    @lru_cache(maxsize=None)
    def normalizer(self, H):
        return frozenset(g for g in range(self.n) if self.conjugate_subgroup(g, H) == H)

    @lru_cache(maxsize=None)
    def conjugates(self, H):
        """Conjugates of ``H`` sorted by :func:`subgroup_key`."""
        return tuple(sorted({self.conjugate_subgroup(g, H) for g in range(self.n)}, key=subgroup_key))

    def class_rep(self, H):
        """Canonical representative: the lexicographically least conjugate."""
        return self.conjugates(frozenset(H))[0]

    @lru_cache(maxsize=None)
    def transporter(self, H):
        """Least ``t`` with ``t H t^-1 == class_rep(H)``."""
        rep = self.class_rep(H)
        for t in range(self.n):
            if self.conjugate_subgroup(t, H) == rep:
                return t
        raise AssertionError("unreachable")

    def subconjugate(self, H, K):
        """True iff some conjugate of ``H`` lies in ``K``."""
        return any(C <= K for C in self.conjugates(frozenset(H)))

    @cached_property
    def class_reps(self):
        return [H for H in self._subgroups if self.class_rep(H) == H]

    def subgroup_lattice(self):
        """One :class:`SubgroupClass` per conjugacy class, with the
        subconjugacy relation as a set of index pairs ``(i, j)`` meaning
        class ``i`` is subconjugate to class ``j``."""
        classes = [SubgroupClass(H, self.conjugates(H), self.normalizer(H)) for H in self.class_reps]
        relation = {
            (i, j)
            for i, a in enumerate(classes)
            for j, b in enumerate(classes)
            if self.subconjugate(a.representative, b.representative)
        }
        return classes, relation

    # -- cosets ----------------------------------------------------------

    @lru_cache(maxsize=None)
    def left_cosets(self, H, within=None):
        """Left cosets ``gH`` (inside ``within`` if given), sorted by least element."""
        ambient = range(self.n) if within is None else sorted(within)
        seen, cosets = set(), []
        for g in ambient:
            if g in seen:
                continue
            c = frozenset(self.table[g][h] for h in H)
            seen |= c
            cosets.append(c)
        return tuple(sorted(cosets, key=min))

    def left_coset_reps(self, H, within=None):
        return [min(c) for c in self.left_cosets(frozenset(H), None if within is None else frozenset(within))]

    @lru_cache(maxsize=None)
    def right_cosets(self, H, within=None):
        ambient = range(self.n) if within is None else sorted(within)
        seen, cosets = set(), []
        for g in ambient:
            if g in seen:
                continue
            c = frozenset(self.table[h][g] for h in H)
            seen |= c
            cosets.append(c)
        return tuple(sorted(cosets, key=min))

    def double_cosets(self, K, H, within=None):
        """Representatives ``g`` of the double cosets ``K g H``, as pairs
        ``(g, KgH)`` sorted by least element.  ``within`` restricts the
        ambient group (it must contain both ``K`` and ``H``)."""
        K, H = frozenset(K), frozenset(H)
        ambient = range(self.n) if within is None else sorted(within)
        seen, out = set(), []
        for g in ambient:
            if g in seen:
                continue
            dc = frozenset(self.table[self.table[k][g]][h] for k in K for h in H)
            seen |= dc
            out.append((min(dc), dc))
        return sorted(out)

    def weyl_group(self, H):
        H = self.check_subgroup(H)
        N = self.normalizer(H)
        cosets = self.left_cosets(H, N)
        where = {}
        for i, c in enumerate(cosets):
            for x in c:
                where[x] = i
        reps = [min(c) for c in cosets]
        table = [[where[self.table[a][b]] for b in reps] for a in reps]
        return WeylGroup(H=H, normalizer=N, cosets=cosets, table=tuple(map(tuple, table)))

    # -- subgroups as groups in their own right ---------------------------

    @lru_cache(maxsize=None)
    def subgroup_as_group(self, H):
        """Return ``(K, embed)``: a FiniteGroup for ``H`` and the list mapping
        its indices to indices of ``self``.  Elements keep their labels."""
        H = self.check_subgroup(H)
        elems = sorted(H)
        pos = {x: i for i, x in enumerate(elems)}
        table = [[pos[self.table[a][b]] for b in elems] for a in elems]
        K = FiniteGroup([self.labels[a] for a in elems], table, identity=pos[self.identity],
                        name="%s<%s" % (self.subgroup_name(H), self.name), check=False)
        return K, tuple(elems)

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {
            "name": self.name,
            "elements": list(self.labels),
            "mul": [[self.labels[c] for c in row] for row in self.table],
            "id": self.labels[self.identity],
        }


@dataclass(frozen=True)
class SubgroupClass:
    representative: frozenset
    conjugates: tuple
    normalizer: frozenset

    @property
    def order(self):
        return len(self.representative)


@dataclass(frozen=True)
class WeylGroup:
    """``N_G(H)/H`` with coset multiplication on coset indices."""

    H: frozenset
    normalizer: frozenset
    cosets: tuple
    table: tuple

    @property
    def order(self):
        return len(self.cosets)

    def mul(self, i, j):
        return self.table[i][j]


def cycle_string(p):
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# -- named groups -------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclic(n):
    labels = [str(k) for k in range(n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(labels, table, identity=0, name="C%d" % n)


def trivial():
    return cyclic(1)


@lru_cache(maxsize=None)
def symmetric(n):
    if n == 1:
        return FiniteGroup.from_permutations([(0,)], name="S1")
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]
    return FiniteGroup.from_permutations(gens, degree=n, name="S%d" % n)


@lru_cache(maxsize=None)
def dihedral(n):
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], degree=n, name="D%d" % (2 * n))


@lru_cache(maxsize=None)
def alternating(n):
    perms = [p for p in permutations(range(n)) if _parity(p) == 0]
    return FiniteGroup.from_permutations(perms, degree=n, name="A%d" % n)


def _parity(p):
    seen, parity = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity += length - 1
    return parity % 2


def sign(G, a):
    """Sign of a permutation-group element (0 even, 1 odd)."""
    return _parity(G.permutations[a])


def by_name(name):
    """``C4``, ``S3``, ``D8``, ``A4``, ``e``."""
    name = name.strip()
    if name in ("e", "1", "C1"):
        return trivial()
    kind, num = name[0].upper(), name[1:]
    if not num.isdigit():
        raise GroupError("unknown group name %r" % name)
    k = int(num)
    if kind == "C":
        return cyclic(k)
    if kind == "S":
        return symmetric(k)
    if kind == "D" and k % 2 == 0:
        return dihedral(k // 2)
    if kind == "A":
        return alternating(k)
    raise GroupError("unknown group name %r" % name)


def group_from_json(data):
    """Parse the JSON group format (table, permutation generators, or name)."""
    if "perm_generators" in data:
        return FiniteGroup.from_cycles(data["perm_generators"], degree=data.get("degree"),
                                       name=data.get("name"))
    if "elements" in data:
        labels = [str(x) for x in data["elements"]]
        pos = {lab: i for i, lab in enumerate(labels)}
        try:
            table = [[pos[str(c)] for c in row] for row in data["mul"]]
        except KeyError as exc:
            raise GroupError("unknown label %s in multiplication table" % exc) from None
        ident = data.get("id")
        return FiniteGroup(labels, table, identity=None if ident is None else pos[str(ident)],
                           name=data.get("name"))
    if "name" in data:
        return by_name(data["name"])
    raise GroupError("group JSON needs 'elements'/'mul', 'perm_generators' or 'name'")
