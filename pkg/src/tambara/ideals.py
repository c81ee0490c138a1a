"""Nakaoka ideals of Tambara functors: closure, verification, quotients and
the field-like decision procedure."""

from __future__ import annotations

from dataclasses import dataclass

from .functor import TambaraFunctor, TambaraHom, _additive_generators, subgroup_pairs
from .rings import QuotientRing, additive_closure, idempotents


@dataclass
class NakaokaIdeal:
    """Levelwise subsets ``parts[H]`` of ``T(G/H)``."""

    functor: TambaraFunctor
    parts: dict

    def __getitem__(self, H):
        return self.parts[frozenset(H)]

    def is_zero(self):
        T = self.functor
        return all(self.parts[H] == {T.level(H).zero} for H in T.subgroups)

    def is_unit(self):
        T = self.functor
        return all(T.level(H).one in self.parts[H] for H in T.subgroups)

    def key(self):
        T = self.functor
        return tuple(frozenset(self.parts[H]) for H in T.subgroups)

    def sizes(self):
        return {self.functor.group.subgroup_name(H): len(self.parts[H]) for H in self.functor.subgroups}

    def to_json(self):
        T = self.functor
        G = T.group
        return {G.subgroup_name(H): sorted((T.level(H).elt_to_json(a) for a in self.parts[H]), key=str)
                for H in T.subgroups}


def _ring_ideal_from(R, elems):
    """Ideal of ``R`` generated by ``elems`` (an additive subgroup closed
    under multiplication by ``R``)."""
    S = set(elems) | {R.zero}
    gens = list(S)
    prods = {R.mul(r, g) for g in gens for r in R.elements()}
    return set(additive_closure(R, prods | S))


def ideal_closure(T, generators):
    """Least Nakaoka ideal containing ``generators`` (pairs ``(H, a)``).

    Closes under: levelwise ring ideal, conjugation, restriction, transfer,
    and the norm difference condition ``nm(x + a) - nm(x) ∈ I``.  For the
    last clause it is enough to let ``a`` run over additive generators of
    ``I(G/K)``, because the differences telescope.
    """
    G = T.group
    parts = {H: {T.level(H).zero} for H in T.subgroups}
    for H, a in generators:
        parts[frozenset(H)].add(a)
    pairs = subgroup_pairs(G)
    changed = True
    while changed:
        changed = False
        for H in T.subgroups:
            new = _ring_ideal_from(T.level(H), parts[H])
            if new != parts[H]:
                parts[H] = new
                changed = True
        adds = []
        for H in T.subgroups:
            for g in G.elements:
                gH = G.conjugate_subgroup(g, H)
                adds += [(gH, T.conj(g, H, a)) for a in parts[H]]
        for K, H in pairs:
            adds += [(K, T.res(H, K, a)) for a in parts[H]]
            adds += [(H, T.tr(K, H, a)) for a in parts[K]]
            R = T.level(K)
            gens = _subgroup_generators(R, parts[K])
            RH = T.level(H)
            for a in gens:
                for x in R.elements():
                    adds.append((H, RH.sub(T.nm(K, H, R.add(x, a)), T.nm(K, H, x))))
        for H, a in adds:
            if a not in parts[H]:
                parts[H].add(a)
                changed = True
    return NakaokaIdeal(T, {H: frozenset(p) for H, p in parts.items()})


def _subgroup_generators(R, S):
    """A small additive generating set of the subgroup ``S``."""
    span, gens = {R.zero}, []
    for a in sorted(S, key=lambda v: R.index(v)):
        if a in span:
            continue
        gens.append(a)
        span = set(additive_closure(R, span | {a}))
    return gens


def ideal_violations(T, I):
    """Clauses of the Nakaoka ideal definition that ``I`` fails."""
    G = T.group
    bad = []
    parts = {H: set(I[H]) for H in T.subgroups}
    for H in T.subgroups:
        R = T.level(H)
        name = G.subgroup_name(H)
        P = parts[H]
        if R.zero not in P:
            bad.append("level %s: does not contain 0" % name)
        if any(R.add(a, b) not in P for a in P for b in P) or any(R.neg(a) not in P for a in P):
            bad.append("level %s: not an additive subgroup" % name)
        if any(R.mul(r, a) not in P for a in P for r in R.elements()):
            bad.append("level %s: not closed under multiplication by the ring" % name)
        for g in G.elements:
            gH = G.conjugate_subgroup(g, H)
            if any(T.conj(g, H, a) not in parts[gH] for a in P):
                bad.append("level %s: not stable under conjugation by %s" % (name, G.labels[g]))
                break
    for K, H in subgroup_pairs(G):
        nk, nh = G.subgroup_name(K), G.subgroup_name(H)
        if any(T.res(H, K, a) not in parts[K] for a in parts[H]):
            bad.append("not closed under res %s->%s" % (nh, nk))
        if any(T.tr(K, H, a) not in parts[H] for a in parts[K]):
            bad.append("not closed under tr %s->%s" % (nk, nh))
        R, RH = T.level(K), T.level(H)
        if any(RH.sub(T.nm(K, H, R.add(x, a)), T.nm(K, H, x)) not in parts[H]
               for a in parts[K] for x in R.elements()):
            bad.append("norm condition fails for %s->%s" % (nk, nh))
    return bad


def is_ideal(T, I):
    return not ideal_violations(T, I)


class QuotientTambara(TambaraFunctor):
    """``T / I`` with levels ``T(G/H) / I(G/H)``; classes are represented by
    their least element."""

    def __init__(self, T, I, check=True):
        if check:
            bad = ideal_violations(T, I)
            if bad:
                raise ValueError("not a Nakaoka ideal: %s" % bad[0])
        super().__init__(T.group, "%s/I" % T.name)
        self.parent, self.ideal = T, I
        self._levels = {H: QuotientRing(T.level(H), I[H], name="%s/I" % T.level(H).name) for H in T.subgroups}

    def level(self, H):
        return self._levels[frozenset(H)]

    def res(self, H, K, a):
        return self._levels[K].reduce(self.parent.res(H, K, a))

    def tr(self, K, H, a):
        return self._levels[H].reduce(self.parent.tr(K, H, a))

    def nm(self, K, H, a):
        return self._levels[H].reduce(self.parent.nm(K, H, a))

    def conj(self, g, H, a):
        gH = self.group.conjugate_subgroup(g, H)
        return self._levels[gH].reduce(self.parent.conj(g, H, a))


def quotient(T, I):
    """``(T/I, projection)``."""
    Q = QuotientTambara(T, I)
    proj = TambaraHom(T, Q, {H: (lambda a, H=H: Q.level(H).reduce(a)) for H in T.subgroups}, name="projection")
    return Q, proj


# -- all ideals, field-like ------------------------------------------------------------

def principal_closures(T):
    """``{(H, a): closure of a}`` for every nonzero element."""
    out = {}
    for H in T.subgroups:
        R = T.level(H)
        for a in R.elements():
            if a != R.zero:
                out[(H, a)] = ideal_closure(T, [(H, a)])
    return out


def nakaoka_ideals(T):
    """Every Nakaoka ideal of a small enumerable functor (joins of principal
    closures)."""
    zero = ideal_closure(T, [])
    found = {zero.key(): zero}
    principals = {}
    for c in principal_closures(T).values():
        principals.setdefault(c.key(), c)
    frontier = list(found.values()) + list(principals.values())
    for c in principals.values():
        found.setdefault(c.key(), c)
    frontier = list(found.values())
    while frontier:
        new = []
        for I in frontier:
            for P in principals.values():
                gens = [(H, a) for H in T.subgroups for a in I[H] | P[H]]
                J = ideal_closure(T, gens)
                if J.key() not in found:
                    found[J.key()] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=lambda I: sum(map(len, I.key())))


def is_zero_functor(T):
    return all(T.level(H).size == 1 for H in T.subgroups)


@dataclass
class FieldLikeResult:
    field_like: bool
    path: str
    reason: str
    witness: NakaokaIdeal = None

    def __bool__(self):
        return self.field_like


def _nilpotents(R):
    """Nilpotency index in a ring of size n is at most log2(n) + 1, so
    squaring that many times decides it."""
    steps = max(1, R.size.bit_length())
    out = []
    for a in R.elements():
        x = a
        for _ in range(steps):
            if x == R.zero:
                break
            x = R.mul(x, x)
        if x == R.zero:
            out.append(a)
    return out


def primitive_idempotents(R):
    ids = [e for e in idempotents(R) if e != R.zero]
    return [e for e in ids if not any(f != e and R.mul(e, f) == f for f in ids)]


def stable_ideal_of_bottom(T):
    """A nonzero proper ``G``-stable ideal of ``T(G/e)``, or ``None``.

    A finite ring has none iff it is reduced (a product of fields) and the
    group permutes its primitive idempotents transitively.
    """
    e, G = T.bottom, T.group
    R = T.level(e)
    if R.size == 1:
        return None
    nil = _nilpotents(R)
    if len(nil) > 1:
        return frozenset(nil)
    prims = primitive_idempotents(R)
    orbit = {T.conj(g, e, prims[0]) for g in G.elements}
    if len(orbit) == len(prims):
        return None
    E = R.sum(orbit)
    return frozenset(R.mul(E, r) for r in R.elements())


def _preimage_ideal(T, J):
    e = T.bottom
    parts = {H: frozenset(a for a in T.level(H).elements() if T.res(H, e, a) in J) for H in T.subgroups}
    return NakaokaIdeal(T, parts)


def is_field_like_fast(T):
    """Criterion: ``T`` nonzero, every ``res^H_e`` injective, and ``T(G/e)``
    has no nonzero proper ``G``-stable ideal."""
    if is_zero_functor(T):
        return FieldLikeResult(False, "fast", "zero functor")
    e, G = T.bottom, T.group
    R = T.level(e)
    for H in T.subgroups:
        elts = T.level(H).elements()
        if len({T.res(H, e, a) for a in elts}) != len(elts):
            w = _preimage_ideal(T, {R.zero})
            return FieldLikeResult(False, "fast", "restriction %s->e is not injective" % G.subgroup_name(H), w)
    J = stable_ideal_of_bottom(T)
    if J is not None:
        return FieldLikeResult(False, "fast", "T(G/e) has a nonzero proper G-stable ideal", _preimage_ideal(T, J))
    return FieldLikeResult(True, "fast", "restrictions injective and T(G/e) is G-simple")


def is_field_like_exhaustive(T):
    """Every nonzero element generates the unit ideal, and ``T`` is nonzero."""
    if is_zero_functor(T):
        return FieldLikeResult(False, "exhaustive", "zero functor")
    for (H, a), I in principal_closures(T).items():
        if not I.is_unit():
            return FieldLikeResult(False, "exhaustive",
                                   "closure of %r at level %s is proper" % (a, T.group.subgroup_name(H)), I)
    return FieldLikeResult(True, "exhaustive", "every nonzero element generates the unit ideal")


EXHAUSTIVE_LIMIT = 64


def is_field_like(T, exhaustive=None):
    """Fast criterion, cross-checked by the exhaustive path when the total
    size is at most ``EXHAUSTIVE_LIMIT`` (or when asked).  A disagreement
    raises, since it would mean a bug in one of the two paths."""
    fast = is_field_like_fast(T)
    if exhaustive is None:
        exhaustive = T.total_size() <= EXHAUSTIVE_LIMIT
    if not exhaustive:
        return fast
    slow = is_field_like_exhaustive(T)
    if bool(slow) != bool(fast):
        raise AssertionError("field-like paths disagree: fast=%s exhaustive=%s" % (fast.reason, slow.reason))
    if not slow and slow.witness is not None:
        return FieldLikeResult(False, "fast+exhaustive", fast.reason, slow.witness)
    return FieldLikeResult(bool(fast), "fast+exhaustive", fast.reason, fast.witness)
