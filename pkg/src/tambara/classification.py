"""Recognizing coinduced Tambara functors, maps into the finite-field
closure tower, and modules over coinduced Green functors."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import gcd

from .constructions import FixedPointTambara, coinduce, constant
from .functor import TambaraError, TambaraHom, enumerate_homs, hom_violations, subgroup_pairs
from .ideals import is_field_like, is_zero_functor
from .rings import GaloisField, raised_cap, ModRing, ProductRing, SubRing, field_embeddings, idempotents, is_field, ring_homs

IDEMPOTENT_CAP = 2 ** 16


# -- fixed-point form -----------------------------------------------------------------------

@dataclass
class FormCheck:
    ok: bool
    reason: str
    level: str = None
    witness: object = None

    def __bool__(self):
        return self.ok


def check_fixed_point_form(T):
    """Whether the comparison map ``T -> underline(T(G/e))`` (restriction to
    the bottom level) is an isomorphism: every ``res^H_e`` injective with
    image exactly the ``H``-fixed points of ``T(G/e)``.

    Levels that cannot be enumerated (Burnside) are tested with the element
    ``tr^H_e(1) - |H|``, which always restricts to zero; if it is nonzero the
    restriction is not injective.
    """
    G, e = T.group, T.bottom
    Re = T.level(e)
    for H in T.subgroups:
        if len(H) == 1:
            continue
        R = T.level(H)
        name = G.subgroup_name(H)
        w = R.sub(T.tr(e, H, Re.one), R.from_int(len(H)))
        if w != R.zero:
            return FormCheck(False, "tr(1) - |H| is a nonzero element of the kernel of res", name, w)
        if not (R.enumerable and Re.enumerable):
            return FormCheck(False, "level %s is not enumerable and no kernel witness was found" % name, name)
        image = {}
        for a in R.elements():
            b = T.res(H, e, a)
            if b in image:
                return FormCheck(False, "res %s->e is not injective" % name, name, (image[b], a))
            image[b] = a
        fixed = {x for x in Re.elements() if all(T.conj(h, e, x) == x for h in H)}
        if set(image) != fixed:
            extra = sorted(fixed - set(image), key=repr)
            wrong = sorted(set(image) - fixed, key=repr)
            what = "image misses fixed points" if extra else "image contains non-fixed elements"
            return FormCheck(False, what, name, (extra or wrong)[0])
    return FormCheck(True, "every restriction to e is injective onto the fixed points")


# -- splitting certificates -------------------------------------------------------------------

@dataclass
class SplittingCertificate:
    """``y[g]`` are the orbit idempotents with ``y[g] = conj(g^-1, y[e])``;
    ``base`` is the corner ring ``y_e T(G/e)`` with unit ``y_e``; ``iso`` is
    the verified isomorphism ``T -> coinduce(base)``."""

    functor: object
    y: dict
    base: object
    target: object
    iso: TambaraHom
    transcript: list = dc_field(default_factory=list)

    def to_json(self):
        T, G = self.functor, self.functor.group
        Re = T.level(T.bottom)
        return {
            "idempotents": {G.labels[g]: Re.elt_to_json(v) for g, v in sorted(self.y.items())},
            "base_ring": {"size": self.base.size,
                          "elements": [Re.elt_to_json(a) for a in self.base.elements()],
                          "one": Re.elt_to_json(self.base.one)},
            "iso": {G.subgroup_name(H): [[T.level(H).elt_to_json(a), _json(b)]
                                         for a, b in sorted(self.iso.table()[H].items(), key=lambda kv: repr(kv[0]))]
                    for H in T.subgroups},
        }


def _json(v):
    if isinstance(v, tuple):
        return [_json(x) for x in v]
    return v


class SplittingFailed(TambaraError):
    pass


def _orbit_of(T, y):
    """``{g: conj(g^-1, y)}`` or ``None`` if the stabilizer of ``y`` is nontrivial."""
    G, e = T.group, T.bottom
    out = {g: T.conj(G.inv(g), e, y) for g in G.elements}
    if len(set(out.values())) != G.n:
        return None
    return out


def find_coinduced_splitting(T, cap=IDEMPOTENT_CAP):
    """Search the idempotents of ``T(G/e)`` for one whose translates form a
    complete set of orthogonal idempotents permuted simply transitively.

    Returns ``(certificate or None, transcript)``.  A returned certificate
    has passed the morphism checker and levelwise bijectivity.
    """
    G, e = T.group, T.bottom
    Re = T.level(e)
    log = []
    ids = idempotents(Re)
    if len(ids) > cap:
        raise SplittingFailed("%d idempotents exceed the cap %d" % (len(ids), cap))
    log.append("%d idempotents in T(G/e)" % len(ids))
    free, seen = 0, set()
    for y in ids:
        if y == Re.zero or y in seen:
            continue
        orbit = _orbit_of(T, y)
        if orbit is None:
            continue
        seen |= set(orbit.values())
        free += 1
        vals = list(orbit.values())
        if any(Re.mul(a, b) != Re.zero for i, a in enumerate(vals) for b in vals[i + 1:]):
            continue
        if Re.sum(vals) != Re.one:
            continue
        cert = _certificate(T, orbit)
        if cert is not None:
            log.append("free orbit of %s is a complete orthogonal family" % (Re.elt_to_json(y),))
            cert.transcript = log
            return cert, log
    log.append("%d free idempotent orbits, none complete and orthogonal" % free)
    return None, log


def _certificate(T, y):
    G, e = T.group, T.bottom
    Re = T.level(e)
    ye = y[G.identity]
    A = SubRing(Re, {Re.mul(ye, r) for r in Re.elements()}, one=ye, name="corner")
    C = coinduce(G, A)

    def psi(s):
        return tuple(Re.mul(ye, T.conj(g, e, s)) for g in G.elements)

    maps = {H: (lambda a, H=H: psi(T.res(H, e, a))) for H in T.subgroups}
    iso = TambaraHom(T, C, maps, name="splitting")
    if hom_violations(iso, stop_at_first=True):
        return None
    for H in T.subgroups:
        imgs = {iso(H, a) for a in T.level(H).elements()}
        if len(imgs) != T.level(H).size or len(imgs) != C.level(H).size:
            return None
    return SplittingCertificate(T, y, A, C, iso)


# -- classification -----------------------------------------------------------------------------

@dataclass
class Verdict:
    coinduced: bool
    reason: str
    certificate: SplittingCertificate = None
    field_order: int = None
    characteristic: int = None
    field_iso: dict = None

    @property
    def kind(self):
        return "CoinducedFromField" if self.coinduced else "NotCoinduced"

    def to_json(self):
        out = {"verdict": self.kind, "reason": self.reason}
        if self.coinduced:
            out["field"] = {"order": self.field_order, "characteristic": self.characteristic}
            out["nullstellensatzian"] = ("coinduced from the finite field F_%d; Nullstellensatzian "
                                         "only in the limit along the closure tower" % self.field_order)
            out["certificate"] = self.certificate.to_json()
        return out


def characteristic(R):
    n, x = 1, R.one
    while x != R.zero:
        x = R.add(x, R.one)
        n += 1
        if n > R.size:
            return 0
    return n


def identify_field(A):
    """``(GaloisField, iso dict A -> GF)`` for a finite field ``A``."""
    p = characteristic(A)
    k, q = 0, 1
    while q < A.size:
        q *= p
        k += 1
    if q != A.size:
        raise ValueError("not a field of characteristic %d" % p)
    F = GaloisField(p, k)
    for m in ring_homs(A, F):
        if len(set(m.values())) == A.size:
            return F, m
    raise ValueError("no isomorphism to GF(%d)" % q)


def classify(T):
    """Decide whether ``T`` is coinduced from a field, with a certificate.

    A finite field is never algebraically closed, so a positive verdict
    means: coinduced from the finite field ``A``, and Nullstellensatzian
    only in the limit along the tower of finite extensions.
    """
    if is_zero_functor(T):
        return Verdict(False, "zero functor (terminal object)")
    fl = is_field_like(T)
    if not fl:
        return Verdict(False, "not field-like: %s" % fl.reason)
    form = check_fixed_point_form(T)
    if not form:
        return Verdict(False, "not in fixed-point form: %s at level %s" % (form.reason, form.level))
    cert, log = find_coinduced_splitting(T)
    if cert is None:
        return Verdict(False, "no splitting: " + "; ".join(log))
    A = cert.base
    if not is_field(A):
        return Verdict(False, "corner ring of size %d is not a field" % A.size, cert)
    F, iso = identify_field(A)
    return Verdict(True, "coinduced from a field", cert, A.size, F.p, iso)


# -- maps into the closure tower --------------------------------------------------------------

def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass
class ClosureMap:
    """``phi: T -> coinduce(F_{q^m})`` adjoint to ``rho: T(G/e) -> F_{q^m}``."""

    functor: object
    q: int
    m: int
    field: GaloisField
    rho: dict
    hom: TambaraHom
    factoring: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(f["factored"] == f["homs"] for f in self.factoring)

    def to_json(self):
        return {"q": self.q, "m": self.m, "target": "F_%d" % self.field.size,
                "rho": {str(k): self.field.elt_to_json(v) for k, v in sorted(self.rho.items(), key=repr)},
                "factoring": self.factoring, "ok": self.ok}


def fixed_field(T):
    e, G = T.bottom, T.group
    Re = T.level(e)
    return [x for x in Re.elements() if all(T.conj(g, e, x) == x for g in G.elements)]


def adjoint_hom(T, C, rho):
    """The morphism ``T -> coinduce(E)`` adjoint to the ring map ``rho`` on
    ``T(G/e)``: ``s -> (g -> rho(c_g res s))``."""
    G, e = T.group, T.bottom
    rho_ = rho.__getitem__ if isinstance(rho, dict) else rho
    maps = {H: (lambda a, H=H: tuple(rho_(T.conj(g, e, T.res(H, e, a))) for g in G.elements))
            for H in T.subgroups}
    return TambaraHom(T, C, maps, name="closure map")


def algebraic_closure_map(T, m, max_degree=4, check=True):
    """Build ``T -> coinduce(F_{q^m})`` and check that every morphism into
    ``coinduce(F_{p^d})``, ``d <= max_degree``, factors through it followed
    by a field inclusion (after passing to a common extension)."""
    G, e = T.group, T.bottom
    Re = T.level(e)
    fixed = fixed_field(T)
    p = characteristic(Re)
    k, q = 0, 1
    while q < len(fixed):
        q *= p
        k += 1
    if q != len(fixed) or p == 0:
        raise ValueError("fixed subring of T(G/e) has %d elements, not a field" % len(fixed))
    E = GaloisField(p, k * m)
    homs = ring_homs(Re, E)
    if not homs:
        raise ValueError("T(G/e) does not embed in F_%d; m too small" % E.size)
    rho = homs[0]
    C = coinduce(G, E)
    phi = adjoint_hom(T, C, rho)
    if hom_violations(phi, stop_at_first=True):
        raise TambaraError("adjoint map failed the morphism check")
    out = ClosureMap(T, q, m, E, rho, phi)
    if check:
        for d in range(1, max_degree + 1):
            out.factoring.append(factoring_check(T, phi, E, d))
    return out


def factoring_check(T, phi, E, d):
    """Count the morphisms ``psi: T -> coinduce(F_{p^d})`` and how many
    satisfy ``iota . psi = chi . phi`` for some ``chi`` adjoint to a
    coordinate evaluation followed by a field embedding.  Morphisms into a
    coinduced functor are determined by their bottom component, so the
    comparison happens at level e."""
    G, e = T.group, T.bottom
    Re = T.level(e)
    Ed = GaloisField(E.p, d)
    with raised_cap(Ed.size ** G.n):
        Cd = coinduce(G, Ed)
        psis = enumerate_homs(T, Cd)
    M = _lcm(E.k, d)
    big = GaloisField(E.p, M)
    iota = field_embeddings(Ed, big)[0]
    sigmas = field_embeddings(E, big)
    elts = Re.elements()
    phi_e = {s: phi(e, s) for s in elts}
    factored = 0
    for psi in psis:
        lhs = {s: tuple(iota[v] for v in psi(e, s)) for s in elts}
        found = False
        for sigma, g0 in product(sigmas, G.elements):
            shift = [G.mul(g0, g) for g in G.elements]
            if all(lhs[s] == tuple(sigma[phi_e[s][shift[g]]] for g in G.elements) for s in elts):
                found = True
                break
        factored += found
    return {"degree": d, "homs": len(psis), "factored": factored, "common_field": big.size}


# -- modules over Green functors ---------------------------------------------------------------

class MackeyModule:
    """Levelwise abelian groups (the additive groups of rings) with res, tr
    and conjugation, and an action ``act(H, r, m)`` of the Green functor
    ``ring`` (a Tambara functor whose norms are ignored)."""

    def __init__(self, ring, levels, res, tr, conj, act, name="M"):
        self.ring, self.group, self.name = ring, ring.group, name
        self._levels = {frozenset(H): R for H, R in levels.items()}
        self._res, self._tr, self._conj, self._act = res, tr, conj, act

    @property
    def subgroups(self):
        return self.group.subgroups()

    def level(self, H):
        return self._levels[frozenset(H)]

    def res(self, H, K, m):
        return m if H == K else self._res(H, K, m)

    def tr(self, K, H, m):
        return m if H == K else self._tr(K, H, m)

    def conj(self, g, H, m):
        return self._conj(g, H, m)

    def act(self, H, r, m):
        return self._act(H, r, m)


def self_module(R):
    """A Green functor as a module over itself."""
    return MackeyModule(R, {H: R.level(H) for H in R.subgroups}, R.res, R.tr, R.conj,
                        lambda H, r, m: R.level(H).mul(r, m), name="self(%s)" % R.name)


def direct_sum(M, N):
    if M.ring is not N.ring:
        raise ValueError("modules over different Green functors")
    levels = {H: ProductRing([M.level(H), N.level(H)]) for H in M.subgroups}
    return MackeyModule(
        M.ring, levels,
        lambda H, K, m: (M.res(H, K, m[0]), N.res(H, K, m[1])),
        lambda K, H, m: (M.tr(K, H, m[0]), N.tr(K, H, m[1])),
        lambda g, H, m: (M.conj(g, H, m[0]), N.conj(g, H, m[1])),
        lambda H, r, m: (M.act(H, r, m[0]), N.act(H, r, m[1])),
        name="%s+%s" % (M.name, N.name))


def top_only_module(G, F):
    """Over ``constant(F)``: ``F`` at the top level and zero below, all
    restrictions and transfers zero.  A valid module when the
    characteristic divides every index ``[G:K]``, e.g. ``F2`` over ``C2``."""
    R = constant(G, F)
    zero = ModRing(1)
    top = G.whole
    levels = {H: (F if H == top else zero) for H in G.subgroups()}

    def res(H, K, m):
        return levels[K].zero

    def tr(K, H, m):
        return levels[H].zero

    def act(H, r, m):
        return F.mul(r, m) if H == top else zero.zero

    M = MackeyModule(R, levels, res, tr, lambda g, H, m: m, act, name="top(%s)" % F.name)
    bad = module_axiom_violations(M)
    if bad:
        raise ValueError("not a module: %s" % bad[0])
    return M


def module_axiom_violations(M):
    """Exhaustive check: res/tr additive, conjugation compatible, unital
    action, res of an action, and both Frobenius reciprocity relations."""
    R, G = M.ring, M.group
    bad = []
    for H in M.subgroups:
        L, RH = M.level(H), R.level(H)
        for m in L.elements():
            if M.act(H, RH.one, m) != m:
                bad.append("action not unital at %s" % G.subgroup_name(H))
                break
        for g in G.elements:
            gH = G.conjugate_subgroup(g, H)
            for r in RH.elements():
                for m in L.elements():
                    if M.conj(g, H, M.act(H, r, m)) != M.act(gH, R.conj(g, H, r), M.conj(g, H, m)):
                        bad.append("conjugation does not commute with the action")
                        return bad
    for K, H in subgroup_pairs(G):
        LK, LH = M.level(K), M.level(H)
        nk, nh = G.subgroup_name(K), G.subgroup_name(H)
        for a in LH.elements():
            for b in LH.elements():
                if M.res(H, K, LH.add(a, b)) != LK.add(M.res(H, K, a), M.res(H, K, b)):
                    bad.append("res %s->%s not additive" % (nh, nk))
                    break
        for a in LK.elements():
            for b in LK.elements():
                if M.tr(K, H, LK.add(a, b)) != LH.add(M.tr(K, H, a), M.tr(K, H, b)):
                    bad.append("tr %s->%s not additive" % (nk, nh))
                    break
        for r in R.level(H).elements():
            rr = R.res(H, K, r)
            for m in LH.elements():
                if M.res(H, K, M.act(H, r, m)) != M.act(K, rr, M.res(H, K, m)):
                    bad.append("res %s->%s does not respect the action" % (nh, nk))
                    break
            for m in LK.elements():
                if M.tr(K, H, M.act(K, rr, m)) != M.act(H, r, M.tr(K, H, m)):
                    bad.append("Frobenius (module side) fails for %s->%s" % (nk, nh))
                    break
        for r in R.level(K).elements():
            tr_r = R.tr(K, H, r)
            for m in LH.elements():
                if M.tr(K, H, M.act(K, r, M.res(H, K, m))) != M.act(H, tr_r, m):
                    bad.append("Frobenius (ring side) fails for %s->%s" % (nk, nh))
                    break
    return bad


@dataclass
class ModuleReport:
    restrictions_injective: bool
    fixed_point_iso: bool
    decomposition: bool
    failures: list

    @property
    def ok(self):
        return self.restrictions_injective and self.fixed_point_iso and self.decomposition

    def to_json(self):
        return {"restrictions_injective": self.restrictions_injective,
                "fixed_point_iso": self.fixed_point_iso,
                "decomposition": self.decomposition, "ok": self.ok, "failures": self.failures}


def module_decomposition_check(M):
    """(a) every restriction of ``M`` is injective; (b) ``res^H_e`` maps
    ``M(G/H)`` bijectively onto ``M(G/e)^H``; (c) when the Green functor
    splits as ``coinduce(A)`` with idempotents ``y_g``, each ``M(G/H)`` is
    the direct sum over cosets ``xH`` of ``δ_{xH} M(G/H)``, and each
    summand maps isomorphically onto ``y_e M(G/e)`` via
    ``m -> c_x(y_x res m)``."""
    G, R = M.group, M.ring
    e = G.trivial_subgroup
    fails = []
    inj = True
    for K, H in subgroup_pairs(G):
        elts = M.level(H).elements()
        if len({M.res(H, K, m) for m in elts}) != len(elts):
            inj = False
            fails.append("res %s->%s is not injective" % (G.subgroup_name(H), G.subgroup_name(K)))
    fp = True
    Le = M.level(e)
    for H in M.subgroups:
        fixed = {m for m in Le.elements() if all(M.conj(h, e, m) == m for h in H)}
        image = [M.res(H, e, m) for m in M.level(H).elements()]
        if len(set(image)) != len(image) or set(image) != fixed:
            fp = False
            fails.append("res %s->e is not a bijection onto the fixed points" % G.subgroup_name(H))
    cert, _ = find_coinduced_splitting(R)
    if cert is None:
        fails.append("the Green functor is not coinduced, so there is no idempotent decomposition")
        return ModuleReport(inj, fp, False, fails)
    dec = True
    y = cert.y
    Re = R.level(e)
    for H in M.subgroups:
        RH, LH = R.level(H), M.level(H)
        target = {M.act(e, y[G.identity], m) for m in Le.elements()}
        total = 1
        for x in G.left_coset_reps(H):
            # indicator of the coset xH lives in R(G/H): it restricts to Σ_{h∈H} y_{xh}
            delta_e = Re.sum(y[G.mul(x, h)] for h in sorted(H))
            deltas = [d for d in RH.elements() if R.res(H, e, d) == delta_e]
            if len(deltas) != 1:
                dec = False
                fails.append("no coset idempotent for %s at level %s" % (G.labels[x], G.subgroup_name(H)))
                continue
            summand = {M.act(H, deltas[0], m) for m in LH.elements()}
            total *= len(summand)
            image = {M.conj(x, e, M.act(e, y[x], M.res(H, e, m))) for m in summand}
            if len(image) != len(summand) or image != target:
                dec = False
                fails.append("summand for coset %s%s is not isomorphic to y_e M(G/e)"
                             % (G.labels[x], G.subgroup_name(H)))
        if total != LH.size:
            dec = False
            fails.append("summands at level %s do not make up the whole level" % G.subgroup_name(H))
    return ModuleReport(inj, fp, dec, fails)


# -- the transfer obstruction lint ---------------------------------------------------------

@dataclass
class Obstruction:
    unit: object
    reason: str


def transfer_obstruction(S, T):
    """Named lint: if ``S(G/e)`` has a unit ``u`` with ``res tr u = 0``
    while ``T`` satisfies ``res tr v = |G| v`` at the bottom (as constant
    functors do) and ``|G|`` is a unit there, no morphism ``S -> T`` exists,
    because it would send ``u`` to a unit killed by ``|G|``.  Returns an
    :class:`Obstruction` or ``None`` when the lint does not apply."""
    G, e, top = S.group, S.bottom, S.top
    RS, RT = S.level(e), T.level(e)
    if RT.size == 1:
        return None
    nG = RT.from_int(G.n)
    if not any(RT.mul(nG, v) == RT.one for v in RT.elements()):
        return None
    if any(T.res(top, e, T.tr(e, top, v)) != RT.mul(nG, v) for v in RT.elements()):
        return None
    for u in RS.elements():
        if not any(RS.mul(u, v) == RS.one for v in RS.elements()):
            continue
        if S.res(top, e, S.tr(e, top, u)) == RS.zero:
            return Obstruction(u, "unit %r has res tr u = 0, but |G| = %d is invertible in the target"
                               % (RS.elt_to_json(u), G.n))
    return None
