import json
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from tambara import rings
from tambara.rings import (GaloisField, ModRing, ProductRing, RelabeledRing, check_ring_axioms, field,
                           field_embeddings, idempotents, is_field, parse_ring, ring_from_json, ring_homs,
                           tabulate_ring)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_small_fields_satisfy_axioms(q):
    F = field(q)
    assert check_ring_axioms(F) == []
    assert is_field(F)


@pytest.mark.parametrize("p,k", sorted(rings.CONWAY))
def test_stored_polynomials_give_fields(p, k):
    if p ** k > 4 * rings.enum_cap():
        pytest.skip("beyond the default cap")
    F = GaloisField(p, k)
    assert F.is_valid_field()


def test_degree_twelve_polynomial_is_primitive():
    with rings.raised_cap(2 ** 12):
        F = GaloisField(2, 12)
        assert F.is_primitive_poly()


@given(st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)]), st.data())
def test_multiplication_matches_polynomial_oracle(pk, data):
    p, k = pk
    F = GaloisField(p, k)
    a = data.draw(st.integers(0, F.size - 1))
    b = data.draw(st.integers(0, F.size - 1))
    want = oracles.poly_mul_mod(F.coefficients(a), F.coefficients(b), p, list(F.poly))
    assert list(F.coefficients(F.mul(a, b))) == want


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25])
def test_frobenius_is_an_automorphism_of_order_k(q):
    F = field(q)
    orbit = {F.frobenius(a, F.k) == a for a in F.elements()}
    assert orbit == {True}
    if F.k > 1:
        assert any(F.frobenius(a) != a for a in F.elements())


@pytest.mark.parametrize("n", [2, 4, 6, 8, 12, 30])
def test_mod_idempotents(n):
    assert sorted(idempotents(ModRing(n))) == oracles.mod_idempotents(n)


def test_product_ring_axioms_and_idempotents():
    R = ProductRing([field(2), field(3)])
    assert check_ring_axioms(R) == []
    assert len(idempotents(R)) == 4
    assert not is_field(R)


def test_ring_hom_counts():
    # frozen by brute force over all set maps
    assert len(ring_homs(field(4), field(4))) == 2
    assert len(ring_homs(field(2), field(4))) == 1
    assert len(ring_homs(field(4), field(2))) == 0
    assert len(ring_homs(ModRing(4), field(2))) == 1
    assert len(ring_homs(ModRing(6), field(3))) == 1
    assert len(field_embeddings(field(4), field(16))) == 2
    assert len(field_embeddings(field(4), field(8))) == 0
    assert len(field_embeddings(field(8), field(64))) == 3


def test_relabeled_and_tabulated_rings_are_rings():
    rng = random.Random(5)
    F = field(9)
    perm = list(range(F.size))
    rng.shuffle(perm)
    R = RelabeledRing(F, perm)
    assert check_ring_axioms(R) == []
    assert is_field(R)
    T, _ = tabulate_ring(ModRing(6))
    assert check_ring_axioms(T) == []


@pytest.mark.parametrize("text", ["F2", "F4", "GF9", "Z/4", "Z6"])
def test_json_round_trip(text):
    R = parse_ring(text)
    S = ring_from_json(json.loads(json.dumps(R.to_json())))
    assert S.size == R.size
    for a in R.elements():
        for b in R.elements():
            assert S.elt_to_json(S.mul(S.elt_from_json(R.elt_to_json(a)), S.elt_from_json(R.elt_to_json(b)))) \
                == R.elt_to_json(R.mul(a, b))


def test_raised_cap_restores():
    before = rings.enum_cap()
    with rings.raised_cap(before * 10):
        assert rings.enum_cap() == before * 10
    assert rings.enum_cap() == before


def test_bad_inputs():
    with pytest.raises(rings.RingError):
        GaloisField(4, 1)
    with pytest.raises(rings.RingError):
        GaloisField(2, 2, poly=(1, 0, 1))
    with pytest.raises(rings.RingError):
        parse_ring("Q")
