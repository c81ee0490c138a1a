"""Finite G-sets, equivariant maps, and the finite limits the bispan
category needs: pullbacks and dependent products (the right adjoint to
pullback between slices).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .groups import subgroup_key

MAX_POINTS = 10 ** 5


class GSetError(ValueError):
    pass


class SizeLimitError(GSetError):
    """A construction would exceed :data:`MAX_POINTS` points."""


class GSet:
    """A finite set ``{0..n-1}`` with a left action of ``group``.

    ``act[g][x]`` is the image of point ``x`` under group element ``g``.
    ``labels`` are optional, hashable, and only used for display and JSON.
    """

    def __init__(self, group, act, labels=None, check=True):
        self.group = group
        self.act = tuple(tuple(row) for row in act)
        self.n = len(self.act[group.identity]) if self.act else 0
        if labels is None:
            labels = list(range(self.n))
        self.labels = list(labels)
        if check:
            self.validate()

    def validate(self):
        G = self.group
        if len(self.act) != G.n:
            raise GSetError("action must list one permutation per group element")
        n = self.n
        for row in self.act:
            if len(row) != n or sorted(row) != list(range(n)):
                raise GSetError("each group element must act by a permutation")
        if self.act[G.identity] != tuple(range(n)):
            raise GSetError("identity must act trivially")
        for g in G.elements:
            ag = self.act[g]
            for h in G.elements:
                ah = self.act[h]
                agh = self.act[G.mul(g, h)]
                if any(ag[ah[x]] != agh[x] for x in range(n)):
                    raise GSetError("act(g, act(h, x)) != act(gh, x)")
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise GSetError("labels must be distinct, one per point")

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, GSet) and self.group == other.group
                and self.act == other.act)

    def __hash__(self):
        return hash((self.n, self.act))

    def __repr__(self):
        return "GSet(%s)" % self.orbit_type_string()

    @property
    def points(self):
        return range(self.n)

    def __call__(self, g, x):
        return self.act[g][x]

    # -- orbits and stabilizers ------------------------------------------

    @cached_property
    def orbits(self):
        """Orbits as sorted tuples, ordered by least point."""
        seen, out = set(), []
        for x in range(self.n):
            if x in seen:
                continue
            orb = sorted({row[x] for row in self.act})
            seen.update(orb)
            out.append(tuple(orb))
        return tuple(out)

    @cached_property
    def orbit_reps(self):
        return tuple(o[0] for o in self.orbits)

    @cached_property
    def orbit_index(self):
        idx = [0] * self.n
        for i, o in enumerate(self.orbits):
            for x in o:
                idx[x] = i
        return tuple(idx)

    @cached_property
    def _stabilizers(self):
        return tuple(frozenset(g for g in self.group.elements if self.act[g][x] == x)
                     for x in range(self.n))

    def stabilizer(self, x):
        return self._stabilizers[x]

    def orbit_type_string(self):
        G = self.group
        counts = {}
        for r in self.orbit_reps:
            H = G.class_rep(self.stabilizer(r))
            counts[H] = counts.get(H, 0) + 1
        if not counts:
            return "0"
        parts = []
        for H in sorted(counts, key=subgroup_key):
            m = counts[H]
            parts.append(("%d*" % m if m > 1 else "") + "G/" + G.subgroup_name(H))
        return " + ".join(parts)

    # -- JSON --------------------------------------------------------------

    def to_json(self):
        G = self.group
        labels = [str(lab) for lab in self.labels]
        return {
            "points": labels,
            "act": {G.labels[g]: [labels[y] for y in self.act[g]] for g in G.elements},
        }


class GMap:
    """An equivariant map ``src -> dst`` given by the tuple ``f``."""

    def __init__(self, src, dst, f, check=True):
        self.src = src
        self.dst = dst
        self.f = tuple(f)
        if check:
            self.validate()

    def validate(self):
        if self.src.group != self.dst.group:
            raise GSetError("maps must be between G-sets over the same group")
        if len(self.f) != self.src.n or any(not 0 <= y < self.dst.n for y in self.f):
            raise GSetError("map is not a function src -> dst")
        for g in self.src.group.elements:
            a, b = self.src.act[g], self.dst.act[g]
            for x in range(self.src.n):
                if self.f[a[x]] != b[self.f[x]]:
                    raise GSetError("map is not equivariant")

    def __call__(self, x):
        return self.f[x]

    def __eq__(self, other):
        return (isinstance(other, GMap) and self.src == other.src and self.dst == other.dst
                and self.f == other.f)

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return "GMap(%r -> %r)" % (self.src, self.dst)

    def then(self, other):
        """``other ∘ self``."""
        if other.src != self.dst:
            raise GSetError("maps are not composable")
        return GMap(self.src, other.dst, [other.f[y] for y in self.f], check=False)

    @cached_property
    def fibers(self):
        fib = [[] for _ in range(self.dst.n)]
        for x, y in enumerate(self.f):
            fib[y].append(x)
        return tuple(tuple(v) for v in fib)

    def is_iso(self):
        return self.src.n == self.dst.n and len(set(self.f)) == self.src.n

    def to_json(self):
        return {"f": {str(self.src.labels[x]): str(self.dst.labels[y]) for x, y in enumerate(self.f)}}


def identity_map(X):
    return GMap(X, X, range(X.n), check=False)


# -- standard G-sets -------------------------------------------------------

def coset_space(G, H):
    """``G/H`` with points the left cosets, labelled by least element."""
    H = G.check_subgroup(H)
    cosets = G.left_cosets(H)
    where = {}
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    reps = [min(c) for c in cosets]
    act = [[where[G.mul(g, r)] for r in reps] for g in G.elements]
    labels = [G.labels[r] + G.subgroup_name(H) if len(H) > 1 else G.labels[r] for r in reps]
    return GSet(G, act, labels=labels, check=False)


def point(G):
    return GSet(G, [[0] for _ in G.elements], labels=["*"], check=False)


def empty(G):
    return GSet(G, [[] for _ in G.elements], labels=[], check=False)


def from_orbit_types(G, subgroups):
    """``⨿ G/H_i``; point labels are ``(i, coset rep)``."""
    act = [[] for _ in G.elements]
    labels = []
    offset = 0
    for i, H in enumerate(subgroups):
        H = frozenset(H)
        cosets = G.left_cosets(H)
        where = {}
        for j, c in enumerate(cosets):
            for x in c:
                where[x] = j
        reps = [min(c) for c in cosets]
        for g in G.elements:
            act[g].extend(offset + where[G.mul(g, r)] for r in reps)
        labels.extend((i, G.labels[r]) for r in reps)
        offset += len(reps)
        if offset > MAX_POINTS:
            raise SizeLimitError("G-set would have more than %d points" % MAX_POINTS)
    if not subgroups:
        return empty(G)
    return GSet(G, act, labels=labels, check=False)


def from_json(G, data):
    labels = [str(p) for p in data["points"]]
    pos = {lab: i for i, lab in enumerate(labels)}
    if len(pos) != len(labels):
        raise GSetError("duplicate point labels")
    act = [None] * G.n
    for g_label, images in data["act"].items():
        try:
            act[G.index_of(g_label)] = [pos[str(y)] for y in images]
        except KeyError as exc:
            raise GSetError("unknown point %s" % exc) from None
    if data["act"] and any(row is None for row in act):
        # fill in from the given elements by closure
        act = _complete_action(G, act, len(labels))
    if not labels:
        act = [[] for _ in G.elements]
    return GSet(G, act, labels=labels)


def _complete_action(G, act, n):
    known = {g for g in G.elements if act[g] is not None}
    act[G.identity] = list(range(n))
    known.add(G.identity)
    changed = True
    while changed:
        changed = False
        for g in list(known):
            for h in list(known):
                gh = G.mul(g, h)
                if act[gh] is None:
                    act[gh] = [act[g][act[h][x]] for x in range(n)]
                    known.add(gh)
                    changed = True
    if len(known) != G.n:
        raise GSetError("action given on elements that do not generate the group")
    return act


def map_from_json(X, Y, data):
    pos_x = {str(lab): i for i, lab in enumerate(X.labels)}
    pos_y = {str(lab): i for i, lab in enumerate(Y.labels)}
    f = [None] * X.n
    for k, v in data["f"].items():
        f[pos_x[str(k)]] = pos_y[str(v)]
    if any(y is None for y in f):
        raise GSetError("map must be defined on every point")
    return GMap(X, Y, f)


# -- orbit decomposition and isomorphism ----------------------------------

@dataclass(frozen=True)
class OrbitDecomposition:
    types: tuple          # ((class representative, multiplicity), ...)
    model: GSet           # ⨿ G/H_i in canonical order
    iso: GMap             # model -> X


def canonical_form(X):
    """Sorted tuple of stabilizer class representatives, one per orbit,
    plus the isomorphism from the standard model onto ``X``."""
    G = X.group
    entries = []
    for r in X.orbit_reps:
        S = X.stabilizer(r)
        t = G.transporter(S)
        entries.append((subgroup_key(G.class_rep(S)), X.act[t][r]))
    entries.sort()
    subgroups = [frozenset(k[1]) for k, _ in entries]
    model = from_orbit_types(G, subgroups)
    f = [0] * model.n
    offset = 0
    for H, (_, base) in zip(subgroups, entries):
        for j, c in enumerate(G.left_cosets(H)):
            f[offset + j] = X.act[min(c)][base]
        offset += len(G.left_cosets(H))
    code = tuple(k for k, _ in entries)
    return code, GMap(model, X, f, check=False)


def orbit_decompose(X):
    code, iso = canonical_form(X)
    types = []
    for key in code:
        H = frozenset(key[1])
        if types and types[-1][0] == H:
            types[-1][1] += 1
        else:
            types.append([H, 1])
    return OrbitDecomposition(tuple((H, m) for H, m in types), iso.src, iso)


def gset_iso(X, Y):
    """An equivariant bijection ``X -> Y`` or ``None``."""
    if X.group != Y.group or X.n != Y.n:
        return None
    cx, ix = canonical_form(X)
    cy, iy = canonical_form(Y)
    if cx != cy:
        return None
    inv = [0] * X.n
    for m, x in enumerate(ix.f):
        inv[x] = m
    return GMap(X, Y, [iy.f[inv[x]] for x in range(X.n)], check=False)


# -- coproducts, products, pullbacks ------------------------------------------

def coproduct(*sets):
    """Disjoint union with the list of injections."""
    G = sets[0].group
    act = [[] for _ in G.elements]
    labels, injections, offset = [], [], 0
    for i, X in enumerate(sets):
        for g in G.elements:
            act[g].extend(offset + y for y in X.act[g])
        labels.extend((i, lab) for lab in X.labels)
        injections.append(list(range(offset, offset + X.n)))
        offset += X.n
    U = GSet(G, act, labels=labels, check=False)
    return U, [GMap(X, U, inj, check=False) for X, inj in zip(sets, injections)]


def fold_map(X, copies=2):
    """The codiagonal ``X ⨿ ... ⨿ X -> X``."""
    U, _ = coproduct(*([X] * copies))
    return GMap(U, X, [x for _ in range(copies) for x in range(X.n)], check=False)


def pullback(f, g):
    """Pullback of ``f: X -> Z`` and ``g: Y -> Z``.

    Returns ``(P, p1, p2)`` with ``p1: P -> X``, ``p2: P -> Y``; the points
    of ``P`` are the pairs ``(x, y)`` with ``f(x) == g(y)``.
    """
    if f.dst != g.dst:
        raise GSetError("pullback needs a common codomain")
    X, Y = f.src, g.src
    gfib = g.fibers
    pairs = [(x, y) for x in range(X.n) for y in gfib[f.f[x]]]
    if len(pairs) > MAX_POINTS:
        raise SizeLimitError("pullback would have more than %d points" % MAX_POINTS)
    index = {p: i for i, p in enumerate(pairs)}
    G = X.group
    act = []
    for h in G.elements:
        ax, ay = X.act[h], Y.act[h]
        act.append([index[(ax[x], ay[y])] for x, y in pairs])
    labels = [(X.labels[x], Y.labels[y]) for x, y in pairs]
    P = GSet(G, act, labels=labels, check=False)
    return P, GMap(P, X, [x for x, _ in pairs], check=False), GMap(P, Y, [y for _, y in pairs], check=False)


def product_gset(X, Y):
    P, _, _ = pullback(GMap(X, point(X.group), [0] * X.n, check=False),
                       GMap(Y, point(Y.group), [0] * Y.n, check=False))
    return P


@dataclass(frozen=True)
class DependentProduct:
    """Output of :func:`dependent_product` for ``g: A -> X``, ``f: X -> Y``.

    ``pi``      ``Π_f g -> Y``
    ``base``    ``f^* Π_f g -> X``   (pullback leg to X)
    ``leg``     ``f^* Π_f g -> Π_f g`` (the other pullback leg)
    ``counit``  ``f^* Π_f g -> A``    (evaluation of sections)
    """

    pi: GMap
    base: GMap
    leg: GMap
    counit: GMap


def dependent_product_size(g, f):
    gfib = g.fibers
    total = 0
    for y in range(f.dst.n):
        k = 1
        for x in f.fibers[y]:
            k *= len(gfib[x])
            if k > MAX_POINTS:
                return MAX_POINTS + 1
        total += k
        if total > MAX_POINTS:
            return MAX_POINTS + 1
    return total


def dependent_product(g, f):
    """``Π_f(g)`` for ``g: A -> X`` and ``f: X -> Y``.

    Points are ``(y, t)`` with ``t`` a section of ``g`` over ``f^-1(y)``,
    stored as the tuple ``(t(x_1), ..., t(x_m))`` for the sorted fiber.
    The action is ``h.(y, t) = (hy, x -> h t(h^-1 x))``.
    """
    if g.dst != f.src:
        raise GSetError("dependent product needs g: A -> X and f: X -> Y")
    if dependent_product_size(g, f) > MAX_POINTS:
        raise SizeLimitError("dependent product would have more than %d points" % MAX_POINTS)
    A, X, Y = g.src, f.src, f.dst
    G = A.group
    ffib, gfib = f.fibers, g.fibers
    pts = []
    for y in range(Y.n):
        for t in product(*(gfib[x] for x in ffib[y])):
            pts.append((y, t))
    index = {p: i for i, p in enumerate(pts)}
    pos_in_fiber = [0] * X.n
    for y in range(Y.n):
        for i, x in enumerate(ffib[y]):
            pos_in_fiber[x] = i
    act = []
    for h in G.elements:
        ax, aa, ay = X.act[h], A.act[h], Y.act[h]
        row = []
        for y, t in pts:
            hy = ay[y]
            new = [0] * len(t)
            for i, x in enumerate(ffib[y]):
                new[pos_in_fiber[ax[x]]] = aa[t[i]]
            row.append(index[(hy, tuple(new))])
        act.append(row)
    labels = [(Y.labels[y], tuple(A.labels[a] for a in t)) for y, t in pts]
    Pi = GSet(G, act, labels=labels, check=False)
    pi = GMap(Pi, Y, [y for y, _ in pts], check=False)
    P, base, leg = pullback(f, pi)
    counit = []
    for x, p in zip(base.f, leg.f):
        _, t = pts[p]
        counit.append(t[pos_in_fiber[x]])
    return DependentProduct(pi=pi, base=base, leg=leg, counit=GMap(P, A, counit, check=False))


# -- enumeration helpers (used by tests and oracles) ---------------------------

def equivariant_maps(X, Y):
    """All equivariant maps ``X -> Y`` (choose an image for each orbit rep)."""
    G = X.group
    choices = []
    for r in X.orbit_reps:
        S = X.stabilizer(r)
        choices.append([y for y in range(Y.n) if all(Y.act[s][y] == y for s in S)])
    out = []
    for pick in product(*choices):
        f = [0] * X.n
        for r, y in zip(X.orbit_reps, pick):
            for g in G.elements:
                f[X.act[g][r]] = Y.act[g][y]
        out.append(GMap(X, Y, f, check=False))
    return out


def random_gset(G, rng, max_points, max_orbits=3):
    """A random G-set with at most ``max_points`` points."""
    subs = G.subgroups()
    orbits, size = [], 0
    for _ in range(rng.randint(1, max_orbits)):
        options = [H for H in subs if size + G.n // len(H) <= max_points]
        if not options:
            break
        H = rng.choice(options)
        orbits.append(H)
        size += G.n // len(H)
    return from_orbit_types(G, orbits)


def random_over(Y, rng, max_points, max_orbits=3, allow_empty=False):
    """A random G-set ``X`` together with an equivariant map ``X -> Y``."""
    G = Y.group
    act = [[] for _ in G.elements]
    f, size = [], 0
    lo = 0 if allow_empty else 1
    if Y.n == 0:
        return empty(G), GMap(empty(G), Y, [], check=False)
    for _ in range(rng.randint(lo, max_orbits)):
        y = rng.randrange(Y.n)
        options = [H for H in G.subgroups_of(Y.stabilizer(y)) if size + G.n // len(H) <= max_points]
        if not options:
            continue
        H = rng.choice(options)
        cosets = G.left_cosets(H)
        where = {}
        for j, c in enumerate(cosets):
            for x in c:
                where[x] = j
        reps = [min(c) for c in cosets]
        for g in G.elements:
            act[g].extend(size + where[G.mul(g, r)] for r in reps)
        f.extend(Y.act[r][y] for r in reps)
        size += len(reps)
    if size == 0:
        E = empty(G)
        return E, GMap(E, Y, [], check=False)
    X = GSet(G, act, check=False)
    return X, GMap(X, Y, f, check=False)
