"""Tambara functors as levelwise rings with restriction, transfer, norm and
conjugation; evaluation on bispans; the coherence checker; morphisms.

Conventions: every operation takes its *source* level first.

    res(H, K, a)   T(G/H) -> T(G/K)          K <= H
    tr(K, H, a)    T(G/K) -> T(G/H)          K <= H
    nm(K, H, a)    T(G/K) -> T(G/H)          K <= H
    conj(g, H, a)  T(G/H) -> T(G/gHg^-1)

Levels are stored for every subgroup, not only for class representatives;
agreement of conjugate levels is part of what the checker verifies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .bispans import Bispan, compose, n_of, r_of, random_bispan, t_of
from .gsets import GMap, SizeLimitError, coset_space, equivariant_maps, random_gset, random_over
from . import rings
from .rings import NotEnumerable, RelabeledRing, tabulate_ring


class TambaraError(ValueError):
    pass


class TambaraFunctor:
    """Base class; subclasses implement ``level`` and the four operations."""

    name = "T"

    def __init__(self, group, name=None):
        self.group = group
        if name:
            self.name = name

    # interface -----------------------------------------------------------

    def level(self, H):
        raise NotImplementedError

    def res(self, H, K, a):
        raise NotImplementedError

    def tr(self, K, H, a):
        raise NotImplementedError

    def nm(self, K, H, a):
        raise NotImplementedError

    def conj(self, g, H, a):
        raise NotImplementedError

    # derived ---------------------------------------------------------------

    @property
    def subgroups(self):
        return self.group.subgroups()

    @property
    def bottom(self):
        return self.group.trivial_subgroup

    @property
    def top(self):
        return self.group.whole

    @property
    def enumerable(self):
        return all(self.level(H).enumerable and self.level(H).size <= rings.ENUM_CAP for H in self.subgroups)

    def sample(self, H, rng):
        return self.level(H).sample(rng)

    def is_mrc(self):
        """All restrictions to the bottom level injective (needs enumerable levels)."""
        e = self.bottom
        for H in self.subgroups:
            elts = self.level(H).elements()
            if len({self.res(H, e, a) for a in elts}) != len(elts):
                return False
        return True

    def total_size(self):
        return sum(self.level(H).size for H in self.subgroups)

    def __repr__(self):
        return "<%s over %s>" % (self.name, self.group.name)


def subgroup_pairs(G):
    """All pairs ``(K, H)`` with ``K < H``."""
    subs = G.subgroups()
    return [(K, H) for H in subs for K in subs if K < H]


# -- tables ------------------------------------------------------------------------

class TableTambara(TambaraFunctor):
    """A Tambara functor given by explicit element maps.

    ``levels[H]`` is a ring; ``res[(H, K)]``, ``tr[(K, H)]``, ``nm[(K, H)]`` and
    ``conj[(g, H)]`` are dicts.  Missing identity entries are implied.
    """

    def __init__(self, group, levels, res, tr, nm, conj, name="table", meta=None):
        super().__init__(group, name)
        self.levels = dict(levels)
        self.res_maps, self.tr_maps, self.nm_maps, self.conj_maps = res, tr, nm, conj
        self.meta = dict(meta or {})

    def level(self, H):
        return self.levels[frozenset(H)]

    def _lookup(self, table, key, a, what):
        try:
            return table[key][a]
        except KeyError:
            raise TambaraError("no %s data for %r at %r" % (what, key, a)) from None

    def res(self, H, K, a):
        if H == K:
            return a
        return self._lookup(self.res_maps, (H, K), a, "res")

    def tr(self, K, H, a):
        if H == K:
            return a
        return self._lookup(self.tr_maps, (K, H), a, "tr")

    def nm(self, K, H, a):
        if H == K:
            return a
        return self._lookup(self.nm_maps, (K, H), a, "nm")

    def conj(self, g, H, a):
        if g == self.group.identity:
            return a
        return self._lookup(self.conj_maps, (g, H), a, "conj")


def tabulate(T, name=None):
    """Copy an enumerable functor into a :class:`TableTambara`."""
    G = T.group
    subs = T.subgroups
    levels = {H: T.level(H) for H in subs}
    res, tr, nm, conj = {}, {}, {}, {}
    for K, H in subgroup_pairs(G):
        res[(H, K)] = {a: T.res(H, K, a) for a in levels[H].elements()}
        tr[(K, H)] = {a: T.tr(K, H, a) for a in levels[K].elements()}
        nm[(K, H)] = {a: T.nm(K, H, a) for a in levels[K].elements()}
    for g in G.elements:
        if g == G.identity:
            continue
        for H in subs:
            conj[(g, H)] = {a: T.conj(g, H, a) for a in levels[H].elements()}
    return TableTambara(G, levels, res, tr, nm, conj, name=name or T.name)


def relabel(T, encoders, name=None):
    """Transport ``T`` along per-level bijections; ``encoders[H]`` maps old
    elements to ``(new_ring, dict)``."""
    G = T.group
    levels = {H: encoders[H][0] for H in T.subgroups}
    enc = {H: encoders[H][1] for H in T.subgroups}
    res, tr, nm, conj = {}, {}, {}, {}
    for K, H in subgroup_pairs(G):
        res[(H, K)] = {enc[H][a]: enc[K][T.res(H, K, a)] for a in enc[H]}
        tr[(K, H)] = {enc[K][a]: enc[H][T.tr(K, H, a)] for a in enc[K]}
        nm[(K, H)] = {enc[K][a]: enc[H][T.nm(K, H, a)] for a in enc[K]}
    for g in G.elements:
        if g == G.identity:
            continue
        for H in T.subgroups:
            gH = G.conjugate_subgroup(g, H)
            conj[(g, H)] = {enc[H][a]: enc[gH][T.conj(g, H, a)] for a in enc[H]}
    return TableTambara(G, levels, res, tr, nm, conj, name=name or T.name)


def scramble(T, seed, name=None):
    """Relabel every level by a seeded random permutation of its elements.

    Returns ``(scrambled, encoders)`` with ``encoders[H]`` the dict from old
    to new labels."""
    rng = random.Random(seed)
    encoders = {}
    for H in T.subgroups:
        R = T.level(H)
        perm = list(range(R.size))
        rng.shuffle(perm)
        if R.size <= 64:
            ring, enc = tabulate_ring(R, relabel=perm, name="%s~" % R.name)
        else:
            ring = RelabeledRing(R, perm, name="%s~" % R.name)
            enc = ring.encode
        encoders[H] = (ring, enc)
    S = relabel(T, encoders, name=name or "scrambled(%s)" % T.name)
    return S, {H: encoders[H][1] for H in encoders}


# -- bispan evaluation ---------------------------------------------------------------

def _orbit_data(X):
    """For each point ``x``: ``(orbit index, g)`` with ``g . rep == x``."""
    data = getattr(X, "_orbit_transport", None)
    if data is None:
        G = X.group
        data = [None] * X.n
        for o, r in enumerate(X.orbit_reps):
            for g in G.elements:
                y = X.act[g][r]
                if data[y] is None:
                    data[y] = (o, g)
        X._orbit_transport = data
    return data


class _Values:
    """Element of ``T(X)`` stored at orbit representatives, readable at any point."""

    def __init__(self, T, X, vals):
        self.T, self.X, self.vals = T, X, list(vals)
        self._cache = {}

    def at(self, x):
        if x in self._cache:
            return self._cache[x]
        X, G = self.X, self.T.group
        o, g = _orbit_data(X)[x]
        v = self.vals[o]
        if g != G.identity:
            v = self.T.conj(g, X.stabilizer(X.orbit_reps[o]), v)
        self._cache[x] = v
        return v


def apply_r(T, h, vals):
    """``T(R_h)``: restriction along ``h: A -> X``."""
    A = h.src
    v = _Values(T, h.dst, vals)
    return [T.res(h.dst.stabilizer(h.f[a]), A.stabilizer(a), v.at(h.f[a])) for a in A.orbit_reps]


def _fiber_orbits(A, b_stab, fiber):
    seen, out = set(), []
    for a in sorted(fiber):
        if a in seen:
            continue
        seen |= {A.act[l][a] for l in b_stab}
        out.append(a)
    return out


def apply_n(T, g, vals):
    """``T(N_g)``: norm along ``g: A -> B``."""
    A, B = g.src, g.dst
    v = _Values(T, A, vals)
    fib = g.fibers
    out = []
    for b in B.orbit_reps:
        L = B.stabilizer(b)
        R = T.level(L)
        acc = R.one
        for a in _fiber_orbits(A, L, fib[b]):
            acc = R.mul(acc, T.nm(A.stabilizer(a), L, v.at(a)))
        out.append(acc)
    return out


def apply_t(T, f, vals):
    """``T(T_f)``: transfer along ``f: B -> Y``."""
    B, Y = f.src, f.dst
    v = _Values(T, B, vals)
    fib = f.fibers
    out = []
    for y in Y.orbit_reps:
        L = Y.stabilizer(y)
        R = T.level(L)
        acc = R.zero
        for b in _fiber_orbits(B, L, fib[y]):
            acc = R.add(acc, T.tr(B.stabilizer(b), L, v.at(b)))
        out.append(acc)
    return out


def eval_bispan(T, b, xs):
    """Apply ``T(b)`` to ``xs`` (one element per orbit of ``b.X``, in the
    order of ``b.X.orbit_reps``, each in the level of that representative's
    stabilizer).  Returns one element per orbit of ``b.Y``."""
    xs = list(xs)
    if len(xs) != len(b.X.orbit_reps):
        raise TambaraError("expected %d inputs, got %d" % (len(b.X.orbit_reps), len(xs)))
    return tuple(apply_t(T, b.f, apply_n(T, b.g, apply_r(T, b.h, xs))))


def input_levels(X):
    return [X.stabilizer(r) for r in X.orbit_reps]


# -- the coherence checker -------------------------------------------------------------

@dataclass
class Violation:
    rule: str
    detail: dict


@dataclass
class CheckReport:
    functor: str
    seed: int
    pairs: int = 0
    samples: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    rule_counts: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def add(self, rule, **detail):
        self.violations.append(Violation(rule, detail))

    def count(self, rule, n=1):
        self.rule_counts[rule] = self.rule_counts.get(rule, 0) + n

    def to_json(self):
        return {
            "functor": self.functor, "seed": self.seed, "pairs": self.pairs,
            "samples": self.samples, "skipped": self.skipped, "ok": self.ok,
            "rule_counts": dict(sorted(self.rule_counts.items())),
            "violations": [{"rule": v.rule, **{k: str(x) for k, x in v.detail.items()}}
                           for v in self.violations[:20]],
            "violation_count": len(self.violations),
        }


@lru_cache(maxsize=4096)
def _compose_cached(b2, b1):
    return compose(b2, b1)


def _random_iso(X, rng):
    isos = [m for m in equivariant_maps(X, X) if m.is_iso()]
    return rng.choice(isos)


def random_pair(G, rng, max_points=6):
    """A random composable pair ``(rule, b2, b1)``.

    The rule names the rewriting that ``compose`` has to perform:
    ``mackey (R∘T)``, ``R∘N``, ``tambara reciprocity (N∘T)``,
    ``functoriality``, ``weyl`` or ``general``.
    """
    kind = rng.choice(["RT", "RN", "NT", "NT", "same", "weyl", "general", "general"])
    small = max(2, max_points // 2)
    if kind == "RT" or kind == "RN":
        Y = random_gset(G, rng, small, max_orbits=2)
        X, f = random_over(Y, rng, max_points, max_orbits=2)
        W, h = random_over(Y, rng, max_points, max_orbits=2)
        first = t_of(f) if kind == "RT" else n_of(f)
        return ("mackey (R∘T)" if kind == "RT" else "R∘N"), r_of(h), first
    if kind == "NT":
        Z = random_gset(G, rng, 2, max_orbits=1)
        Y, g = random_over(Z, rng, small, max_orbits=2)
        X, f = random_over(Y, rng, max_points, max_orbits=2)
        return "tambara reciprocity (N∘T)", n_of(g), t_of(f)
    if kind == "same":
        Z = random_gset(G, rng, small, max_orbits=2)
        Y, g = random_over(Z, rng, max_points, max_orbits=2)
        X, f = random_over(Y, rng, max_points, max_orbits=2)
        op = rng.choice([t_of, n_of])
        if rng.random() < 0.33:
            return "functoriality", r_of(f), r_of(g)
        return "functoriality", op(g), op(f)
    if kind == "weyl":
        H = rng.choice(G.subgroups())
        X = coset_space(G, H)
        phi = _random_iso(X, rng)
        Y, f = random_over(X, rng, max_points, max_orbits=1)
        auto = rng.choice([t_of, n_of, r_of])(phi)
        if rng.random() < 0.5:
            return "weyl", auto, rng.choice([t_of, n_of])(f)
        return "weyl", r_of(f), auto
    X = random_gset(G, rng, small, max_orbits=2)
    Y = random_gset(G, rng, small, max_orbits=2)
    Z = random_gset(G, rng, small, max_orbits=2)
    return "general", random_bispan(Y, Z, rng, max_points, 2), random_bispan(X, Y, rng, max_points, 2)


def _inputs(T, X, rng, exhaustive_limit, per_pair):
    levels = [T.level(H) for H in input_levels(X)]
    total = 1
    for R in levels:
        total = total * R.size if R.enumerable else float("inf")
    if total <= exhaustive_limit:
        return list(product(*(R.elements() for R in levels)))
    return [tuple(T.sample(H, rng) for H in input_levels(X)) for _ in range(per_pair)]


def check_axioms(T, seed, budget=200, max_points=6, exhaustive_limit=32, per_pair=2,
                 levelwise=True):
    """Both-ways evaluation on ``budget`` random composable pairs.

    For each pair ``(b2, b1)`` and each input ``x`` (all inputs when there
    are at most ``exhaustive_limit`` of them, else ``per_pair`` samples),
    compares ``T(b2)(T(b1)(x))`` with ``T(b2 ∘ b1)(x)``.  With
    ``levelwise`` the report also covers the Frobenius, Weyl and
    ring-hom identities on sampled elements.
    """
    rng = random.Random(seed)
    rep = CheckReport(T.name, seed)
    G = T.group
    while rep.pairs < budget:
        rule, b2, b1 = random_pair(G, rng, max_points)
        try:
            c = _compose_cached(b2, b1)
        except SizeLimitError:
            rep.skipped += 1
            continue
        rep.pairs += 1
        for x in _inputs(T, b1.X, rng, exhaustive_limit, per_pair):
            rep.samples += 1
            rep.count(rule)
            lhs = eval_bispan(T, b2, eval_bispan(T, b1, x))
            rhs = eval_bispan(T, c, x)
            if lhs != rhs:
                rep.add(rule, b1=b1.pretty(), b2=b2.pretty(), input=x, two_step=lhs, composite=rhs)
    if levelwise:
        check_levelwise(T, rng, rep, samples=max(8, budget // 10))
    return rep


def check_levelwise(T, rng, rep, samples=20):
    """Sampled Frobenius, Weyl and multiplicativity identities."""
    G = T.group
    pairs = subgroup_pairs(G)
    for _ in range(samples):
        if pairs:
            K, H = rng.choice(pairs)
            RK, RH = T.level(K), T.level(H)
            x, x2 = T.sample(K, rng), T.sample(K, rng)
            y, y2 = T.sample(H, rng), T.sample(H, rng)
            rep.samples += 1
            rep.count("frobenius")
            if T.tr(K, H, RK.mul(x, T.res(H, K, y))) != RH.mul(T.tr(K, H, x), y):
                rep.add("frobenius", K=G.format_subset(K), H=G.format_subset(H), x=x, y=y)
            rep.count("ring maps")
            if T.res(H, K, RH.mul(y, y2)) != RK.mul(T.res(H, K, y), T.res(H, K, y2)) \
                    or T.res(H, K, RH.add(y, y2)) != RK.add(T.res(H, K, y), T.res(H, K, y2)) \
                    or T.res(H, K, RH.one) != RK.one:
                rep.add("ring maps", what="res", H=G.format_subset(H), K=G.format_subset(K), y=y, y2=y2)
            if T.tr(K, H, RK.add(x, x2)) != RH.add(T.tr(K, H, x), T.tr(K, H, x2)):
                rep.add("ring maps", what="tr additive", K=G.format_subset(K), H=G.format_subset(H))
            if T.nm(K, H, RK.mul(x, x2)) != RH.mul(T.nm(K, H, x), T.nm(K, H, x2)) \
                    or T.nm(K, H, RK.one) != RH.one:
                rep.add("ring maps", what="nm multiplicative", K=G.format_subset(K), H=G.format_subset(H))
        H = rng.choice(T.subgroups)
        a = T.sample(H, rng)
        g1, g2 = rng.randrange(G.n), rng.randrange(G.n)
        rep.samples += 1
        rep.count("weyl")
        h = rng.choice(sorted(H))
        if T.conj(h, H, a) != a:
            rep.add("weyl", what="inner element acts nontrivially", H=G.format_subset(H), a=a)
        two = T.conj(g1, G.conjugate_subgroup(g2, H), T.conj(g2, H, a))
        if two != T.conj(G.mul(g1, g2), H, a):
            rep.add("weyl", what="conjugation not an action", H=G.format_subset(H), a=a)
    return rep


# -- exhaustive Mackey and Frobenius checks ----------------------------------------------

def level_elements(T, H, limit, box=None):
    """All elements of a level of size ``<= limit``; for Burnside levels a
    finite box of coefficient vectors (``box`` = max absolute coefficient)."""
    R = T.level(H)
    if R.enumerable:
        return R.elements() if R.size <= limit else None
    if box is not None and hasattr(R, "rank"):
        return [tuple(v) for v in product(range(-box, box + 1), repeat=R.rank)]
    return None


def mackey_violations(T, limit=81, box=1):
    """``res^H_K tr^H_L = Σ_{KhL} tr^K_{K∩hLh^-1} res conj_h`` on every
    pair of subgroups ``K, L <= H`` whose levels are small enough."""
    G = T.group
    bad, checked = [], 0
    for H in T.subgroups:
        subs = G.subgroups_of(H)
        for K in subs:
            for L in subs:
                xs = level_elements(T, L, limit, box)
                if xs is None or level_elements(T, K, limit, box) is None:
                    continue
                RK = T.level(K)
                dcs = G.double_cosets(K, L, within=H)
                for x in xs:
                    lhs = T.res(H, K, T.tr(L, H, x))
                    rhs = RK.zero
                    for h, _ in dcs:
                        hL = G.conjugate_subgroup(h, L)
                        M = K & hL
                        y = T.res(hL, M, T.conj(h, L, x))
                        rhs = RK.add(rhs, T.tr(M, K, y))
                    checked += 1
                    if lhs != rhs:
                        bad.append((G.subgroup_name(H), G.subgroup_name(K), G.subgroup_name(L), x))
    return bad, checked


def frobenius_violations(T, limit=81, box=1):
    """``tr(x · res y) = tr(x) · y`` for all ``x`` in ``T(G/K)``, ``y`` in ``T(G/H)``."""
    G = T.group
    bad, checked = [], 0
    for K, H in subgroup_pairs(G):
        xs, ys = level_elements(T, K, limit, box), level_elements(T, H, limit, box)
        if xs is None or ys is None:
            continue
        RK, RH = T.level(K), T.level(H)
        trx = {x: T.tr(K, H, x) for x in xs}
        for y in ys:
            ry = T.res(H, K, y)
            for x in xs:
                checked += 1
                if T.tr(K, H, RK.mul(x, ry)) != RH.mul(trx[x], y):
                    bad.append((G.subgroup_name(K), G.subgroup_name(H), x, y))
    return bad, checked


# -- morphisms -------------------------------------------------------------------------

class TambaraHom:
    """Levelwise maps ``maps[H]`` (dict or callable) from ``src`` to ``dst``."""

    def __init__(self, src, dst, maps, name="phi"):
        if src.group != dst.group:
            raise TambaraError("homs need a common group")
        self.src, self.dst = src, dst
        self.maps = {frozenset(H): m for H, m in maps.items()}
        self.name = name

    def __call__(self, H, a):
        m = self.maps[frozenset(H)]
        return m[a] if isinstance(m, dict) else m(a)

    def compose_after(self, other):
        """``self ∘ other``."""
        return TambaraHom(other.src, self.dst,
                          {H: (lambda a, H=H: self(H, other(H, a))) for H in other.src.subgroups})

    def table(self):
        return {H: {a: self(H, a) for a in self.src.level(H).elements()} for H in self.src.subgroups}


def _additive_generators(R):
    cache = getattr(R, "_add_gens", None)
    if cache is not None:
        return cache
    span, gens = {R.zero}, []
    for a in R.elements():
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            new = []
            for s in frontier:
                t = R.add(s, a)
                if t not in span:
                    span.add(t)
                    new.append(t)
            frontier = new
    R._add_gens = gens
    return gens


def hom_violations(phi, rng=None, samples=200, stop_at_first=False):
    """Reasons ``phi`` fails to be a Tambara morphism (empty list if valid).

    Enumerable source levels are checked exhaustively: additivity and
    multiplicativity against an additive generating set (which implies the
    full identities), and commutation with every res/tr/nm/conj on every
    element.  Other levels are sampled.
    """
    S, T, G = phi.src, phi.dst, phi.src.group
    rng = rng or random.Random(0)
    bad = []

    def elems(H):
        R = S.level(H)
        if R.enumerable and R.size <= rings.ENUM_CAP:
            return R.elements()
        return [S.sample(H, rng) for _ in range(samples)]

    def fail(msg):
        bad.append(msg)
        return stop_at_first

    for H in S.subgroups:
        RS, RT = S.level(H), T.level(H)
        name = G.subgroup_name(H)
        xs = elems(H)
        if phi(H, RS.one) != RT.one or phi(H, RS.zero) != RT.zero:
            if fail("level %s: units not preserved" % name):
                return bad
        gens = _additive_generators(RS) if RS.enumerable and RS.size <= rings.ENUM_CAP else xs[:8]
        ok = True
        for a in xs:
            pa = phi(H, a)
            for b in gens:
                pb = phi(H, b)
                if phi(H, RS.add(a, b)) != RT.add(pa, pb) or phi(H, RS.mul(a, b)) != RT.mul(pa, pb):
                    ok = False
                    break
            if not ok:
                break
        if not ok and fail("level %s: not a ring homomorphism" % name):
            return bad
        for g in G.elements:
            if g == G.identity:
                continue
            gH = G.conjugate_subgroup(g, H)
            if any(phi(gH, S.conj(g, H, a)) != T.conj(g, H, phi(H, a)) for a in xs):
                if fail("level %s: does not commute with conjugation by %s" % (name, G.labels[g])):
                    return bad
    for K, H in subgroup_pairs(G):
        nk, nh = G.subgroup_name(K), G.subgroup_name(H)
        for a in elems(H):
            if phi(K, S.res(H, K, a)) != T.res(H, K, phi(H, a)):
                if fail("does not commute with res %s->%s" % (nh, nk)):
                    return bad
                break
        for a in elems(K):
            if phi(H, S.tr(K, H, a)) != T.tr(K, H, phi(K, a)):
                if fail("does not commute with tr %s->%s" % (nk, nh)):
                    return bad
                break
        for a in elems(K):
            if phi(H, S.nm(K, H, a)) != T.nm(K, H, phi(K, a)):
                if fail("does not commute with nm %s->%s" % (nk, nh)):
                    return bad
                break
    return bad


def check_hom(phi, rng=None):
    return not hom_violations(phi, rng, stop_at_first=True)


def identity_hom(T):
    return TambaraHom(T, T, {H: (lambda a: a) for H in T.subgroups}, name="id")


def kernel(phi):
    """Levelwise kernels of a morphism with enumerable source."""
    return {H: frozenset(a for a in phi.src.level(H).elements() if phi(H, a) == phi.dst.level(H).zero)
            for H in phi.src.subgroups}


# -- generating sets and hom enumeration ---------------------------------------------------

@dataclass
class Closure:
    """Sub-Tambara functor generated by some elements, with a derivation
    (witness) for every element: ``steps`` lists ``(H, a, op, args)`` in
    creation order, where ``args`` refer to earlier ``(H, a)`` keys."""

    sets: dict
    steps: list
    generators: list


def closure(T, gens, limit=None):
    """Close ``gens`` (list of ``(H, a)``) under the ring operations, res,
    tr, nm and conj."""
    G = T.group
    subs = T.subgroups
    sets = {H: {} for H in subs}
    steps = []
    frontier = []

    def add(H, a, op, args):
        if a in sets[H]:
            return
        sets[H][a] = len(steps)
        steps.append((H, a, op, args))
        frontier.append((H, a))
        if limit is not None and len(steps) > limit:
            raise TambaraError("closure exceeded %d elements" % limit)

    for H in subs:
        R = T.level(H)
        add(H, R.zero, "zero", ())
        add(H, R.one, "one", ())
    for i, (H, a) in enumerate(gens):
        add(frozenset(H), a, "gen", (i,))
    upper = {H: [K for K in subs if H < K] for H in subs}
    lower = {H: [K for K in subs if K < H] for H in subs}
    while frontier:
        H, a = frontier.pop(0)
        R = T.level(H)
        add(H, R.neg(a), "neg", ((H, a),))
        for b in list(sets[H]):
            add(H, R.add(a, b), "add", ((H, a), (H, b)))
            add(H, R.mul(a, b), "mul", ((H, a), (H, b)))
        for K in lower[H]:
            add(K, T.res(H, K, a), "res", ((H, a), K))
        for K in upper[H]:
            add(K, T.tr(H, K, a), "tr", ((H, a), K))
            add(K, T.nm(H, K, a), "nm", ((H, a), K))
        for g in G.elements:
            if g != G.identity:
                add(G.conjugate_subgroup(g, H), T.conj(g, H, a), "conj", ((H, a), g))
    return Closure({H: set(d) for H, d in sets.items()}, steps, list(gens))


def generating_set(T, top_first=True):
    """Greedy generating set: walk the levels (top first by default) and add
    the first element not yet generated."""
    order = sorted(T.subgroups, key=lambda H: (-len(H), sorted(H))) if top_first else list(T.subgroups)
    gens = []
    cl = closure(T, gens)
    for H in order:
        for a in T.level(H).elements():
            if a not in cl.sets[H]:
                gens.append((H, a))
                cl = closure(T, gens)
    return cl


def best_generating_set(S, T=None):
    """Generating set minimizing the number of image assignments into ``T``."""
    best = None
    for top_first in (True, False):
        cl = generating_set(S, top_first)
        cost = 1
        for H, _ in cl.generators:
            cost *= (T or S).level(H).size
        if best is None or cost < best[0]:
            best = (cost, cl)
    return best[1]


def _push_forward(S, T, cl, images):
    """Evaluate the closure derivations in ``T``; ``None`` if two derivations
    of one element disagree (cannot happen with first-witness bookkeeping,
    but kept as a guard)."""
    val = {}
    for H, a, op, args in cl.steps:
        R = T.level(H)
        if op == "zero":
            v = R.zero
        elif op == "one":
            v = R.one
        elif op == "gen":
            v = images[args[0]]
        elif op == "neg":
            v = R.neg(val[args[0]])
        elif op == "add":
            v = R.add(val[args[0]], val[args[1]])
        elif op == "mul":
            v = R.mul(val[args[0]], val[args[1]])
        else:
            (H0, a0), extra = args
            x = val[(H0, a0)]
            if op == "res":
                v = T.res(H0, extra, x)
            elif op == "tr":
                v = T.tr(H0, extra, x)
            elif op == "nm":
                v = T.nm(H0, extra, x)
            else:
                v = T.conj(extra, H0, x)
        val[(H, a)] = v
    return val


HOM_SEARCH_CAP = 10 ** 6


def enumerate_homs(S, T, cap=HOM_SEARCH_CAP):
    """All Tambara morphisms ``S -> T``.

    ``S`` is either an enumerable Tambara functor or a presentation (see
    :mod:`tambara.free_poly`); in the latter case the result is a list of
    generator assignments satisfying the relations.
    """
    if hasattr(S, "relations"):
        from .free_poly import enumerate_presentation_homs
        return enumerate_presentation_homs(S, T, cap)
    if not S.enumerable:
        raise NotEnumerable("hom enumeration needs an enumerable source")
    cl = best_generating_set(S, T)
    spaces = [T.level(H).elements() for H, _ in cl.generators]
    total = 1
    for sp in spaces:
        total *= len(sp)
    if total > cap:
        raise TambaraError("hom search space %d exceeds cap %d" % (total, cap))
    out = []
    for images in product(*spaces):
        val = _push_forward(S, T, cl, images)
        maps = {H: {} for H in S.subgroups}
        for (H, a), v in val.items():
            maps[H][a] = v
        phi = TambaraHom(S, T, maps)
        if check_hom(phi):
            out.append(phi)
    return out
