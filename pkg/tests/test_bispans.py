import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from tambara import bispans as bs
from tambara import gsets
from tambara import groups as grp
from tambara.gsets import GMap, coset_space, equivariant_maps, from_orbit_types, point, random_gset

GROUPS = ["C2", "C3", "C4", "S3"]


def _objects(G, rng, k):
    return [random_gset(G, rng, 4, 2) for _ in range(k)]


def _some_map(rng, X, Y):
    maps = equivariant_maps(X, Y)
    return rng.choice(maps) if maps else None


def _relabel(b, rng):
    """The same bispan with the middle objects' points shuffled."""
    A, B = b.A, b.B
    pa, pb = list(range(A.n)), list(range(B.n))
    rng.shuffle(pa)
    rng.shuffle(pb)
    G = A.group
    A2 = gsets.GSet(G, [[pa[A.act[g][x]] for x in sorted(range(A.n), key=lambda i: pa[i])] for g in G.elements])
    B2 = gsets.GSet(G, [[pb[B.act[g][x]] for x in sorted(range(B.n), key=lambda i: pb[i])] for g in G.elements])
    inv_a = sorted(range(A.n), key=lambda i: pa[i])
    inv_b = sorted(range(B.n), key=lambda i: pb[i])
    h = GMap(A2, b.X, [b.h.f[inv_a[j]] for j in range(A.n)])
    g = GMap(A2, B2, [pb[b.g.f[inv_a[j]]] for j in range(A.n)])
    f = GMap(B2, b.Y, [b.f.f[inv_b[j]] for j in range(B.n)])
    return bs.Bispan(h, g, f)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_identity_laws(name, seed):
    rng = random.Random(seed)
    G = grp.by_name(name)
    X, Y = _objects(G, rng, 2)
    b = bs.random_bispan(X, Y, rng, max_points=5)
    assert bs.compose(b, bs.identity(X)) == b
    assert bs.compose(bs.identity(Y), b) == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_associativity(name, seed):
    rng = random.Random(seed)
    G = grp.by_name(name)
    W, X, Y, Z = _objects(G, rng, 4)
    b1 = bs.random_bispan(W, X, rng, max_points=4)
    b2 = bs.random_bispan(X, Y, rng, max_points=4)
    b3 = bs.random_bispan(Y, Z, rng, max_points=4)
    try:
        left = bs.compose(b3, bs.compose(b2, b1))
        right = bs.compose(bs.compose(b3, b2), b1)
    except bs.SizeLimitError:
        return
    assert left == right


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_generators_are_functorial(name, seed):
    rng = random.Random(seed)
    G = grp.by_name(name)
    X, Y, Z = _objects(G, rng, 3)
    f, f2 = _some_map(rng, X, Y), _some_map(rng, Y, Z)
    if f is None or f2 is None:
        return
    ff = f.then(f2)
    assert bs.compose(bs.t_of(f2), bs.t_of(f)) == bs.t_of(ff)
    assert bs.compose(bs.n_of(f2), bs.n_of(f)) == bs.n_of(ff)
    assert bs.compose(bs.r_of(f), bs.r_of(f2)) == bs.r_of(ff)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_tnr_factorization(name, seed):
    rng = random.Random(seed)
    G = grp.by_name(name)
    X, Y = _objects(G, rng, 2)
    b = bs.random_bispan(X, Y, rng, max_points=5)
    assert bs.compose_all(bs.t_of(b.f), bs.n_of(b.g), bs.r_of(b.h)) == b


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_equality_is_up_to_isomorphism(name, seed):
    rng = random.Random(seed)
    G = grp.by_name(name)
    X, Y = _objects(G, rng, 2)
    b = bs.random_bispan(X, Y, rng, max_points=5)
    assert _relabel(b, rng) == b
    assert hash(_relabel(b, rng)) == hash(b)


def test_distinct_bispans_differ():
    C2 = grp.cyclic(2)
    free = coset_space(C2, C2.trivial_subgroup)
    to_pt = GMap(free, point(C2), [0, 0])
    assert bs.t_of(to_pt) != bs.n_of(to_pt)
    assert bs.t_of(to_pt).kind == "T" and bs.n_of(to_pt).kind == "N" and bs.r_of(to_pt).kind == "R"


def test_norm_of_transfer_uses_distributor():
    # N_{G/e -> *} T_{fold} on G/e: C2 acts on the 4 sections of the
    # 2-sheeted trivial cover, giving two fixed points and one free orbit.
    C2 = grp.cyclic(2)
    free = coset_space(C2, C2.trivial_subgroup)
    two = from_orbit_types(C2, [C2.trivial_subgroup, C2.trivial_subgroup])
    fold = GMap(two, free, [0, 1, 0, 1])
    to_pt = GMap(free, point(C2), [0, 0])
    c = bs.compose(bs.n_of(to_pt), bs.t_of(fold))
    assert c.B.n == 4
    assert sorted(len(c.B.stabilizer(r)) for r in c.B.orbit_reps) == [1, 2, 2]


def test_json_round_trip():
    rng = random.Random(11)
    G = grp.symmetric(3)
    X, Y = _objects(G, rng, 2)
    b = bs.random_bispan(X, Y, rng, max_points=6)
    again = bs.bispan_from_json(G, json.loads(json.dumps(b.to_json())))
    assert again == b


def test_composition_size_guard(monkeypatch):
    C2 = grp.cyclic(2)
    n = 6
    many = from_orbit_types(C2, [C2.whole] * n)
    fold = GMap(from_orbit_types(C2, [C2.whole] * (2 * n)), many, [i % n for i in range(2 * n)])
    to_pt = GMap(many, point(C2), [0] * n)
    monkeypatch.setattr(bs, "MAX_POINTS", 20)
    with pytest.raises(bs.SizeLimitError):
        bs.compose(bs.n_of(to_pt), bs.t_of(fold))


def test_incomposable_rejected():
    C2 = grp.cyclic(2)
    X = point(C2)
    Y = coset_space(C2, C2.trivial_subgroup)
    with pytest.raises(bs.BispanError):
        bs.compose(bs.identity(X), bs.identity(Y))
