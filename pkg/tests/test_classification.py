import pytest

from tambara import groups as grp
from tambara.classification import (algebraic_closure_map, check_fixed_point_form, classify, direct_sum,
                                    find_coinduced_splitting, identify_field, module_axiom_violations,
                                    module_decomposition_check, self_module, top_only_module,
                                    transfer_obstruction)
from tambara.constructions import burnside_tambara, coinduce, constant, frobenius_fixed_point, zero_functor
from tambara.functor import enumerate_homs, hom_violations, scramble
from tambara.rings import ModRing, ProductRing, field, ring_homs

C2 = grp.cyclic(2)


def _isomorphic(A, R):
    return any(len(set(m.values())) == R.size for m in ring_homs(A, R)) if A.size == R.size else False


SPLIT_CASES = [(G, R) for G in ("C2", "C3") for R in ("Z/4", "Z/6", "F2xF2", "F3")] + [("S3", "F3")]


def _ring(text):
    if text == "F2xF2":
        return ProductRing([field(2), field(2)])
    return ModRing(int(text[2:])) if text.startswith("Z/") else field(int(text[1:]))


@pytest.mark.parametrize("G,R", SPLIT_CASES)
def test_splitting_recovers_the_base_ring(G, R):
    Gp, R = grp.by_name(G), _ring(R)
    T, _ = scramble(coinduce(Gp, R), seed=17)
    cert, log = find_coinduced_splitting(T)
    assert cert is not None, log
    assert _isomorphic(cert.base, R)
    assert hom_violations(cert.iso) == []


def test_no_splitting_for_constant_functors():
    for T in (constant(C2, field(2)), constant(grp.cyclic(3), ModRing(4))):
        cert, log = find_coinduced_splitting(T)
        assert cert is None and log


@pytest.mark.parametrize("G", ["C2", "C3"])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_classify_scrambled_coinduced_fields(G, q):
    T, _ = scramble(coinduce(grp.by_name(G), field(q)), seed=q)
    v = classify(T)
    assert v.coinduced and v.field_order == q
    assert v.characteristic == field(q).p
    assert "only in the limit" in v.to_json()["nullstellensatzian"]


@pytest.mark.parametrize("T", [
    lambda: constant(C2, field(2)),
    lambda: constant(grp.symmetric(3), field(3)),
    lambda: frobenius_fixed_point(C2),
    lambda: constant(C2, ModRing(4)),
    lambda: zero_functor(C2),
    lambda: coinduce(C2, ModRing(4)),
])
def test_classify_negative_cases(T):
    assert not classify(T()).coinduced


def test_fixed_point_form():
    form = check_fixed_point_form(burnside_tambara(C2))
    assert not form and form.witness == (1, -2)
    assert check_fixed_point_form(frobenius_fixed_point(C2))
    assert check_fixed_point_form(coinduce(C2, field(3)))


def test_identify_field():
    F, iso = identify_field(field(9))
    assert F.size == 9 and len(set(iso.values())) == 9


def test_closure_map_on_coinduced_f2():
    cm = algebraic_closure_map(coinduce(C2, field(2)), 2, max_degree=3)
    assert cm.ok
    assert [f["homs"] for f in cm.factoring] == [2, 2, 2]


def test_closure_map_on_frobenius_f4():
    cm = algebraic_closure_map(frobenius_fixed_point(C2), 4, max_degree=4)
    assert cm.ok
    assert [f["homs"] for f in cm.factoring] == [0, 2, 0, 2]


def test_modules():
    R = coinduce(C2, field(2))
    M = self_module(R)
    assert module_axiom_violations(M) == []
    assert module_decomposition_check(M).ok
    assert module_decomposition_check(direct_sum(M, M)).ok
    bad = module_decomposition_check(top_only_module(C2, field(2)))
    assert not bad.restrictions_injective and not bad.fixed_point_iso and not bad.ok


def test_top_only_module_rejected_when_not_a_module():
    with pytest.raises(ValueError):
        top_only_module(C2, field(3))


def test_transfer_obstruction():
    S, T = coinduce(C2, field(3)), constant(C2, field(3))
    ob = transfer_obstruction(S, T)
    assert ob is not None
    assert enumerate_homs(S, T) == []
    assert transfer_obstruction(T, S) is None
