"""The category P_G of bispans ``X <-h- A -g-> B -f-> Y``.

A bispan is stored up to isomorphism: on construction it is reduced to a
canonical code and rebuilt from it, so two isomorphic diagrams give
identical objects.  The code lists one entry per orbit of ``B``::

    (y, L, ((x_1, M_1), ..., (x_k, M_k)))

meaning ``B ⊇ G/L`` mapping to ``y`` (with ``L ≤ Stab(y)``) and the fiber
over the base coset being ``⨿ L/M_i`` with ``L/M_i -> X`` sending the base
point to ``x_i``.  Each entry is minimized over base points, and the
entries are sorted.
"""

from __future__ import annotations

from functools import cached_property

from .groups import subgroup_key
from .gsets import (GMap, GSet, GSetError, SizeLimitError, coproduct, dependent_product,
                    dependent_product_size, empty, identity_map, point, pullback, random_over,
                    MAX_POINTS)


class BispanError(ValueError):
    pass


def _component_code(X, Y, A, B, h, g, f, orbit):
    best = None
    gfib = g.fibers
    for b in orbit:
        L = B.stabilizer(b)
        fiber = gfib[b]
        seen, entries = set(), []
        for a in fiber:
            if a in seen:
                continue
            orb = {A.act[l][a] for l in L}
            seen |= orb
            entries.append(min((h.f[a2], subgroup_key(A.stabilizer(a2))[1]) for a2 in orb))
        cand = (f.f[b], subgroup_key(L)[1], tuple(sorted(entries)))
        if best is None or cand < best:
            best = cand
    return best


def bispan_code(X, Y, A, B, h, g, f):
    return tuple(sorted(_component_code(X, Y, A, B, h, g, f, orb) for orb in B.orbits))


class Bispan:
    """Isomorphism class of ``X <-h- A -g-> B -f-> Y`` in canonical form."""

    def __init__(self, h, g, f, check=True):
        if check:
            if h.src != g.src or g.dst != f.src:
                raise BispanError("legs do not match: need X <- A -> B -> Y")
        X, Y = h.dst, f.dst
        self.code = bispan_code(X, Y, h.src, g.dst, h, g, f)
        self._build(X, Y, self.code)

    @classmethod
    def from_code(cls, X, Y, code):
        self = cls.__new__(cls)
        self.code = tuple(sorted(code))
        self._build(X, Y, self.code)
        return self

    def _build(self, X, Y, code):
        G = X.group
        self.X, self.Y = X, Y
        actA = [[] for _ in G.elements]
        actB = [[] for _ in G.elements]
        hA, gA, fB = [], [], []
        labA, labB = [], []
        nA = nB = 0
        for j, (y, L, fiber) in enumerate(code):
            L = frozenset(L)
            cosL = G.left_cosets(L)
            whereL = {x: i for i, c in enumerate(cosL) for x in c}
            repsL = [min(c) for c in cosL]
            for s in G.elements:
                actB[s].extend(nB + whereL[G.mul(s, r)] for r in repsL)
            fB.extend(Y.act[r][y] for r in repsL)
            labB.extend((j, G.labels[r]) for r in repsL)
            for i, (x, M) in enumerate(fiber):
                M = frozenset(M)
                cosM = G.left_cosets(M)
                whereM = {z: k for k, c in enumerate(cosM) for z in c}
                repsM = [min(c) for c in cosM]
                for s in G.elements:
                    actA[s].extend(nA + whereM[G.mul(s, r)] for r in repsM)
                hA.extend(X.act[r][x] for r in repsM)
                gA.extend(nB + whereL[r] for r in repsM)
                labA.extend((j, i, G.labels[r]) for r in repsM)
                nA += len(repsM)
            nB += len(repsL)
        A = GSet(G, actA, labels=labA, check=False) if nA else empty(G)
        B = GSet(G, actB, labels=labB, check=False) if nB else empty(G)
        self.A, self.B = A, B
        self.h = GMap(A, X, hA, check=False)
        self.g = GMap(A, B, gA, check=False)
        self.f = GMap(B, Y, fB, check=False)

    # -- equality ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Bispan) and self.code == other.code
                and self.X == other.X and self.Y == other.Y)

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return "Bispan(%s)" % self.pretty()

    def pretty(self):
        return "%s <-h- %s -g-> %s -f-> %s" % (
            self.X.orbit_type_string(), self.A.orbit_type_string(),
            self.B.orbit_type_string(), self.Y.orbit_type_string())

    @cached_property
    def kind(self):
        """``'id'``, ``'T'``, ``'N'``, ``'R'`` or ``'TNR'``."""
        hi, gi, fi = self.h.is_iso(), self.g.is_iso(), self.f.is_iso()
        if hi and gi and fi:
            return "id" if self == identity(self.X) else "iso"
        if hi and gi:
            return "T"
        if hi and fi:
            return "N"
        if gi and fi:
            return "R"
        return "TNR"

    # -- JSON ---------------------------------------------------------------

    def to_json(self):
        G = self.X.group
        comps = []
        for y, L, fiber in self.code:
            comps.append({
                "y": str(self.Y.labels[y]),
                "L": [G.labels[a] for a in L],
                "fiber": [{"x": str(self.X.labels[x]), "M": [G.labels[a] for a in M]} for x, M in fiber],
            })
        return {"X": self.X.to_json(), "Y": self.Y.to_json(), "components": comps}


def bispan_from_json(G, data):
    from .gsets import from_json as gset_from_json

    X = gset_from_json(G, data["X"])
    Y = gset_from_json(G, data["Y"])
    px = {str(lab): i for i, lab in enumerate(X.labels)}
    py = {str(lab): i for i, lab in enumerate(Y.labels)}
    code = []
    for comp in data["components"]:
        L = tuple(sorted(G.index_of(a) for a in comp["L"]))
        y = py[str(comp["y"])]
        if not G.is_subgroup(L) or not set(L) <= Y.stabilizer(y):
            raise BispanError("component subgroup must lie in the stabilizer of its image")
        fiber = []
        for ent in comp["fiber"]:
            M = tuple(sorted(G.index_of(a) for a in ent["M"]))
            x = px[str(ent["x"])]
            if not G.is_subgroup(M) or not set(M) <= set(L) or not set(M) <= X.stabilizer(x):
                raise BispanError("fiber subgroup must lie in L and in Stab(x)")
            fiber.append((x, M))
        code.append((y, L, tuple(sorted(fiber))))
    # re-canonicalize: the JSON may use a non-minimal base point
    b = Bispan.from_code(X, Y, code)
    return Bispan(b.h, b.g, b.f, check=False)


# -- generators -----------------------------------------------------------------

def identity(X):
    i = identity_map(X)
    return Bispan(i, i, i, check=False)


def t_of(f):
    """``T_f = [X <-id- X -id-> X -f-> Y]``."""
    i = identity_map(f.src)
    return Bispan(i, i, f, check=False)


def n_of(f):
    """``N_f = [X <-id- X -f-> Y -id-> Y]``."""
    return Bispan(identity_map(f.src), f, identity_map(f.dst), check=False)


def r_of(f):
    """``R_f = [Y <-f- X -id-> X -id-> X]`` (a morphism ``Y -> X``)."""
    i = identity_map(f.src)
    return Bispan(f, i, i, check=False)


def tnr(h, g, f):
    """``T_f ∘ N_g ∘ R_h``."""
    return Bispan(h, g, f)


# -- composition -----------------------------------------------------------------

def compose(b2, b1):
    """``b2 ∘ b1`` for ``b1: X -> Y`` and ``b2: Y -> Z``.

    Rewrites ``T N R T N R`` into ``T N R`` using the pullback rules for
    ``R∘T`` and ``R∘N`` and the distributor (dependent product + counit)
    for ``N∘T``.
    """
    if b1.Y != b2.X:
        raise BispanError("bispans are not composable")
    h1, g1, f1 = b1.h, b1.g, b1.f
    h2, g2, f2 = b2.h, b2.g, b2.f
    # R_{h2} T_{f1} = T_{f'} R_{h'} over P = A2 x_Y B1
    P, pA2, pB1 = pullback(h2, f1)
    # R_{pB1} N_{g1} = N_{g''} R_{h''} over Q = P x_{B1} A1
    Q, qP, qA1 = pullback(pB1, g1)
    # N_{g2} T_{pA2} = T_{Π} N_{leg} R_{counit}
    if dependent_product_size(pA2, g2) > MAX_POINTS:
        raise SizeLimitError("composition needs a dependent product with more than %d points" % MAX_POINTS)
    dp = dependent_product(pA2, g2)
    D = dp.base.src
    # R_{counit} N_{qP} = N_{g'''} R_{e'} over E = D x_P Q
    E, eD, eQ = pullback(dp.counit, qP)
    h = eQ.then(qA1).then(h1)
    g = eD.then(dp.leg)
    f = dp.pi.then(f2)
    return Bispan(h, g, f, check=False)


def compose_all(*bs):
    """``bs[0] ∘ bs[1] ∘ ... ∘ bs[-1]``."""
    out = bs[-1]
    for b in reversed(bs[:-1]):
        out = compose(b, out)
    return out


def coproduct_bispan(b1, b2):
    """``b1 ⨿ b2 : X1 ⨿ X2 -> Y1 ⨿ Y2``."""
    X, (ix1, ix2) = coproduct(b1.X, b2.X)
    Y, (iy1, iy2) = coproduct(b1.Y, b2.Y)
    A, _ = coproduct(b1.A, b2.A)
    B, _ = coproduct(b1.B, b2.B)
    h = list(ix1.f[x] for x in b1.h.f) + list(ix2.f[x] for x in b2.h.f)
    g = list(b1.g.f) + [b1.B.n + y for y in b2.g.f]
    f = list(iy1.f[y] for y in b1.f.f) + list(iy2.f[y] for y in b2.f.f)
    return Bispan(GMap(A, X, h, check=False), GMap(A, B, g, check=False), GMap(B, Y, f, check=False),
                  check=False)


# -- random generation ---------------------------------------------------------

def random_bispan(X, Y, rng, max_points=8, max_orbits=2):
    """A random bispan ``X -> Y`` whose middle objects have at most
    ``max_points`` points each."""
    G = X.group
    B, f = random_over(Y, rng, max_points, max_orbits, allow_empty=True)
    if B.n == 0 or X.n == 0:
        A = empty(G)
        return Bispan(GMap(A, X, [], check=False), GMap(A, B, [], check=False), f, check=False)
    # A over B x X
    BX, pB, pX = pullback(GMap(B, point(G), [0] * B.n, check=False),
                          GMap(X, point(G), [0] * X.n, check=False))
    A, a = random_over(BX, rng, max_points, max_orbits, allow_empty=True)
    g = a.then(pB)
    h = a.then(pX)
    return Bispan(h, g, f, check=False)


__all__ = [
    "Bispan", "BispanError", "bispan_from_json", "compose", "compose_all", "coproduct_bispan",
    "identity", "n_of", "r_of", "random_bispan", "t_of", "tnr", "SizeLimitError", "GSetError",
]
