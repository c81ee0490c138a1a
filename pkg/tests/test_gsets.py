import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tambara import groups as grp
from tambara.gsets import (GMap, GSet, GSetError, coset_space, dependent_product, equivariant_maps,
                           from_json, from_orbit_types, gset_iso, orbit_decompose, point, product_gset,
                           pullback, random_gset)

C2 = grp.cyclic(2)


def brute_maps(X, Y, over=None):
    """All equivariant maps by trying every function; ``over`` is an
    optional pair ``(p: X -> Z, q: Y -> Z)`` that the map must respect."""
    G = X.group
    out = []
    for f in product(range(Y.n), repeat=X.n):
        if any(f[X.act[g][x]] != Y.act[g][f[x]] for g in G.elements for x in range(X.n)):
            continue
        if over and any(over[1].f[f[x]] != over[0].f[x] for x in range(X.n)):
            continue
        out.append(f)
    return out


def test_orbit_examples():
    free = coset_space(C2, C2.trivial_subgroup)
    assert free.n == 2 and len(free.orbits) == 1
    dec = orbit_decompose(from_orbit_types(C2, [C2.whole, C2.trivial_subgroup, C2.whole]))
    assert [(len(H), m) for H, m in dec.types] == [(1, 1), (2, 2)]


def test_json_action_and_validation():
    X = from_json(C2, {"points": ["a", "b", "c"], "act": {"1": ["b", "a", "c"]}})
    assert len(X.orbits) == 2
    with pytest.raises(GSetError):
        GSet(C2, [[0, 1], [0, 0]])


def test_c2_pullback_of_free_orbits():
    free = coset_space(C2, C2.trivial_subgroup)
    to_pt = GMap(free, point(C2), [0, 0])
    P, p1, p2 = pullback(to_pt, to_pt)
    assert P.n == 4
    dec = orbit_decompose(P)
    assert [(len(H), m) for H, m in dec.types] == [(1, 2)]


def test_dependent_product_example():
    # Π along G/e -> * of the fold G/e ⨿ G/e -> G/e: sections of a 2-sheeted cover
    free = coset_space(C2, C2.trivial_subgroup)
    A = from_orbit_types(C2, [C2.trivial_subgroup, C2.trivial_subgroup])
    g = GMap(A, free, [0, 1, 0, 1])
    f = GMap(free, point(C2), [0, 0])
    Pi = dependent_product(g, f).pi.src
    assert Pi.n == 4
    dec = orbit_decompose(Pi)
    assert sorted((len(H), m) for H, m in dec.types) == [(1, 1), (2, 2)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["C2", "C3", "S3"]), st.integers(0, 10 ** 6))
def test_product_is_pullback_over_point(name, seed):
    G = grp.by_name(name)
    rng = random.Random(seed)
    X, Y = random_gset(G, rng, 6, 2), random_gset(G, rng, 6, 2)
    P = product_gset(X, Y)
    assert P.n == X.n * Y.n
    # universal property, counted: maps W -> X x Y  <->  pairs of maps
    W = random_gset(G, rng, 3, 1)
    assert len(equivariant_maps(W, P)) == len(equivariant_maps(W, X)) * len(equivariant_maps(W, Y))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["C2", "C3"]), st.integers(0, 10 ** 6))
def test_equivariant_maps_match_brute_force(name, seed):
    G = grp.by_name(name)
    rng = random.Random(seed)
    X, Y = random_gset(G, rng, 4, 2), random_gset(G, rng, 4, 2)
    assert sorted(tuple(m.f) for m in equivariant_maps(X, Y)) == sorted(brute_maps(X, Y))


def _random_map(rng, X, Y):
    maps = equivariant_maps(X, Y)
    return rng.choice(maps) if maps else None


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dependent_product_adjunction_counts(seed):
    """Maps ``W -> Π_f A`` over ``Y`` correspond to maps ``f^*W -> A`` over ``X``."""
    rng = random.Random(seed)
    G = C2
    Y = random_gset(G, rng, 2, 1)
    X = random_gset(G, rng, 3, 2)
    A = random_gset(G, rng, 4, 2)
    f, g = _random_map(rng, X, Y), _random_map(rng, A, X)
    W = random_gset(G, rng, 2, 1)
    w = _random_map(rng, W, Y)
    if f is None or g is None or w is None:
        return
    dp = dependent_product(g, f)
    lhs = brute_maps(W, dp.pi.src, over=(w, dp.pi))
    P, p1, p2 = pullback(f, w)
    rhs = brute_maps(P, A, over=(p1, g))
    assert len(lhs) == len(rhs)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["C2", "C3", "C4", "S3"]), st.integers(0, 10 ** 6))
def test_pullback_universal_property_counts(name, seed):
    rng = random.Random(seed)
    G = grp.by_name(name)
    Z = random_gset(G, rng, 3, 1)
    X, Y = random_gset(G, rng, 6, 2), random_gset(G, rng, 6, 2)
    f, g = _random_map(rng, X, Z), _random_map(rng, Y, Z)
    if f is None or g is None:
        return
    P, p1, p2 = pullback(f, g)
    assert all(f(p1(p)) == g(p2(p)) for p in range(P.n))
    W = random_gset(G, rng, 3, 1)
    cones = sum(1 for a in equivariant_maps(W, X) for b in equivariant_maps(W, Y)
                if all(f(a(w)) == g(b(w)) for w in range(W.n)))
    assert cones == len(equivariant_maps(W, P))


def test_canonical_iso():
    S3 = grp.symmetric(3)
    rng = random.Random(3)
    X = random_gset(S3, rng, 10, 3)
    dec = orbit_decompose(X)
    phi = gset_iso(dec.model, X)
    assert phi is not None and phi.is_iso()
    assert gset_iso(X, point(S3)) is None or X.n == 1
