"""Concrete Tambara functors: Burnside, fixed points of a G-ring, constant,
coinduction from the trivial group, and restriction to a subgroup."""

from __future__ import annotations

from functools import lru_cache

from . import groups as grp
from .burnside import BurnsideRing, burnside_conj, burnside_ind, burnside_norm, burnside_res
from .functor import TambaraFunctor, TambaraHom
from .rings import FunRing, GRing, GaloisField, ModRing, RingError, SubRing


class BurnsideTambara(TambaraFunctor):
    """Levels ``A(H)``; res/tr/conj of finite sets, norm by multiplicative
    induction (ghost formula once validated against the oracle)."""

    kind = "burnside"

    def __init__(self, G):
        super().__init__(G, "A")
        self._levels = {}

    def level(self, H):
        H = frozenset(H)
        if H not in self._levels:
            self._levels[H] = BurnsideRing(self.group, H)
        return self._levels[H]

    def res(self, H, K, a):
        return a if H == K else burnside_res(self.level(H), self.level(K), a)

    def tr(self, K, H, a):
        return a if H == K else burnside_ind(self.level(K), self.level(H), a)

    def nm(self, K, H, a):
        return a if H == K else burnside_norm(self.level(K), self.level(H), a)

    def conj(self, g, H, a):
        if g == self.group.identity:
            return a
        return burnside_conj(self.level(H), self.level(self.group.conjugate_subgroup(g, H)), g, a)

    def sample(self, H, rng):
        return self.level(H).sample(rng, max_coeff=1)


def burnside_tambara(G):
    return BurnsideTambara(G)


class FixedPointTambara(TambaraFunctor):
    """``underline(R)``: levels ``R^H``, res = inclusion,
    ``tr_K^H x = Σ_{hK} h x``, ``nm_K^H x = ∏_{hK} h x``, conj = action."""

    kind = "fixed"

    def __init__(self, R, name=None):
        super().__init__(R.group, name or "fixed(%s)" % R.name)
        self.gring = R
        self._levels = {}
        self._reps = {}

    def level(self, H):
        H = frozenset(H)
        if H not in self._levels:
            R = self.gring
            if len(H) == 1:
                self._levels[H] = R.base
            else:
                self._levels[H] = SubRing(R.base, R.fixed_points(H),
                                          name="%s^%s" % (R.base.name, self.group.subgroup_name(H)))
        return self._levels[H]

    def _coset_reps(self, K, H):
        key = (K, H)
        if key not in self._reps:
            self._reps[key] = self.group.left_coset_reps(K, H)
        return self._reps[key]

    def res(self, H, K, a):
        return a

    def tr(self, K, H, a):
        if H == K:
            return a
        R = self.gring
        return R.base.sum(R.act(h, a) for h in self._coset_reps(K, H))

    def nm(self, K, H, a):
        if H == K:
            return a
        R = self.gring
        return R.base.prod(R.act(h, a) for h in self._coset_reps(K, H))

    def conj(self, g, H, a):
        return self.gring.act(g, a)


def fixed_point(R, name=None):
    return FixedPointTambara(R, name)


def trivial_action(G, R):
    return GRing(R, G, lambda g, x: x, name=R.name, check=False)


def constant(G, R):
    """``underline(R)`` with the trivial action."""
    return FixedPointTambara(trivial_action(G, R), name="const(%s)" % R.name)


def fun_g_ring(G, R):
    """``Fun(G, R)`` with ``(g.φ)(h) = φ(hg)``; functions are tuples indexed by
    the element indices of ``G``."""
    F = FunRing(G.n, R)
    F.name = "Fun(%s,%s)" % (G.name, R.name)
    perm = [[G.mul(h, g) for h in G.elements] for g in G.elements]

    def act(g, phi):
        p = perm[g]
        return tuple(phi[p[h]] for h in G.elements)

    return GRing(F, G, act, name=F.name, check=False)


def coinduce(G, R):
    """``C_e^G R = underline(Fun(G, R))``."""
    return FixedPointTambara(fun_g_ring(G, R), name="coind(%s)" % R.name)


def diagonal(G, R, a):
    """The constant function with value ``a``: the top level of
    ``coinduce(G, R)`` is the image of this map."""
    return tuple(a for _ in G.elements)


def zero_functor(G):
    return constant(G, ModRing(1))


# -- Frobenius actions on finite fields ---------------------------------------------

def frobenius_gring(G, F, hom_to_cyclic=None):
    """``F`` with ``G`` acting through Frobenius powers.

    ``hom_to_cyclic(g)`` gives the exponent ``k`` so that ``g`` acts as
    ``x -> x^(p^k)``.  The default sends a generator of a cyclic group to
    Frobenius and uses the sign for symmetric groups.
    """
    if not isinstance(F, GaloisField):
        raise RingError("Frobenius action needs a Galois field")
    if hom_to_cyclic is None:
        hom_to_cyclic = default_frobenius_exponent(G, F.k)
    tables = {}
    for g in G.elements:
        k = hom_to_cyclic(g) % F.k
        tables[g] = [F.frobenius(x, k) if k else x for x in F.elements()]
    return GRing(F, G, lambda g, x: tables[g][x], name="%s(frob)" % F.name)


def default_frobenius_exponent(G, k):
    """A homomorphism ``G -> Z/k``: cyclic groups map their generator
    ``1`` to ``1``; permutation groups with ``k = 2`` use the sign; other
    groups act trivially."""
    if G.name.startswith("C") and G.name[1:].isdigit():
        if int(G.name[1:]) % k == 0:
            return lambda g: int(G.labels[g])
        return lambda g: 0
    if getattr(G, "permutations", None) is not None and k == 2:
        return lambda g: grp.sign(G, g)
    return lambda g: 0


def frobenius_fixed_point(G, F=None):
    """``underline(F)`` for ``F`` (default ``F4``) with the Frobenius action."""
    F = F or GaloisField(2, 2)
    return FixedPointTambara(frobenius_gring(G, F), name="fixed(%s,frob)" % F.name)


# -- restriction to a subgroup ------------------------------------------------------------

class RestrictedTambara(TambaraFunctor):
    """``(res^G_H T)(H/K) = T(G/K)`` as an ``H``-Tambara functor."""

    def __init__(self, T, H):
        G = T.group
        H = G.check_subgroup(H)
        K, embed = G.subgroup_as_group(H)
        super().__init__(K, "res(%s,%s)" % (T.name, G.subgroup_name(H)))
        self.parent, self.embed = T, embed

    def _up(self, L):
        return frozenset(self.embed[x] for x in L)

    def level(self, L):
        return self.parent.level(self._up(L))

    def res(self, H, K, a):
        return self.parent.res(self._up(H), self._up(K), a)

    def tr(self, K, H, a):
        return self.parent.tr(self._up(K), self._up(H), a)

    def nm(self, K, H, a):
        return self.parent.nm(self._up(K), self._up(H), a)

    def conj(self, g, H, a):
        return self.parent.conj(self.embed[g], self._up(H), a)

    def sample(self, H, rng):
        return self.parent.sample(self._up(H), rng)


def restrict(T, H):
    if frozenset(H) == T.group.whole:
        return T
    return RestrictedTambara(T, H)


# -- the comparison map T -> underline(T(G/e)) ------------------------------------------------

def bottom_gring(T):
    """``T(G/e)`` with the conjugation action."""
    e = T.bottom
    return GRing(T.level(e), T.group, lambda g, x: T.conj(g, e, x),
                 name="%s(G/e)" % T.name, check=False)


def comparison_hom(T):
    """The map ``T -> underline(T(G/e))`` given levelwise by restriction to
    the bottom level."""
    U = FixedPointTambara(bottom_gring(T), name="fixed(%s(G/e))" % T.name)
    e = T.bottom
    maps = {H: (lambda a, H=H: T.res(H, e, a)) for H in T.subgroups}
    return TambaraHom(T, U, maps, name="comparison"), U


@lru_cache(maxsize=None)
def named_group(name):
    return grp.by_name(name)
