import pytest

from tambara import groups as grp
from tambara.constructions import coinduce, constant, frobenius_fixed_point, zero_functor
from tambara.functor import check_axioms
from tambara.ideals import (NakaokaIdeal, ideal_closure, ideal_violations, is_field_like,
                            is_field_like_exhaustive, is_field_like_fast, nakaoka_ideals, quotient)
from tambara.rings import ModRing, ProductRing, field

C2 = grp.cyclic(2)
e, top = C2.trivial_subgroup, C2.whole


def test_closure_of_two_in_constant_z4():
    T = constant(C2, ModRing(4))
    I = ideal_closure(T, [(e, 2)])
    assert I[e] == {0, 2} and I[top] == {0}
    assert ideal_violations(T, I) == []
    Q, proj = quotient(T, I)
    assert Q.level(e).size == 2 and Q.level(top).size == 4
    assert check_axioms(Q, seed=1, budget=60).ok


def test_closure_from_top_spreads_down():
    T = constant(C2, ModRing(4))
    I = ideal_closure(T, [(top, 2)])
    assert I[e] == {0, 2} and I[top] == {0, 2}


def test_non_ideal_is_reported():
    T = constant(C2, ModRing(4))
    bad = NakaokaIdeal(T, {e: frozenset({0}), top: frozenset({0, 2})})
    assert any("res" in v for v in ideal_violations(T, bad))


def test_norm_condition_matters():
    # in coinduce(F2), the top ideal generated through nm must contain nm(x+a)-nm(x)
    T = coinduce(C2, field(2))
    I = ideal_closure(T, [(e, (1, 0))])
    assert I.is_unit()


@pytest.mark.parametrize("T,expected", [
    (lambda: constant(C2, field(2)), True),
    (lambda: constant(C2, ModRing(4)), False),
    (lambda: coinduce(C2, field(3)), True),
    (lambda: frobenius_fixed_point(C2), True),
    (lambda: zero_functor(C2), False),
    (lambda: constant(C2, ProductRing([field(2), field(2)])), False),
    (lambda: constant(grp.symmetric(3), field(2)), True),
])
def test_field_like_paths_agree(T, expected):
    Tf = T()
    fast, slow = is_field_like_fast(Tf), is_field_like_exhaustive(Tf)
    assert bool(fast) == bool(slow) == expected
    assert bool(is_field_like(Tf)) == expected


def test_ideal_lattice_matches_subset_search():
    from itertools import combinations
    T = constant(C2, ModRing(4))
    subsets = [frozenset(c) for r in range(5) for c in combinations(range(4), r)]
    brute = {(a, b) for a in subsets for b in subsets
             if not ideal_violations(T, NakaokaIdeal(T, {e: a, top: b}))}
    found = {(I[e], I[top]) for I in nakaoka_ideals(T)}
    assert found == brute and len(found) == 4
