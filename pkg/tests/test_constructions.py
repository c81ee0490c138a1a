import pytest

from tambara import groups as grp
from tambara.constructions import (burnside_tambara, coinduce, comparison_hom, constant, diagonal,
                                   frobenius_fixed_point, restrict, zero_functor)
from tambara.functor import check_axioms, hom_violations
from tambara.rings import ModRing, field

GROUPS = ["C2", "C3", "C4", "S3"]


@pytest.mark.parametrize("name", GROUPS)
def test_coinduced_levels_are_fixed_functions(name):
    G = grp.by_name(name)
    F = field(3)
    T = coinduce(G, F)
    for H in G.subgroups():
        # functions G -> F constant on right H-cosets
        assert T.level(H).size == 3 ** (G.n // len(H))
    assert set(T.level(G.whole).elements()) == {diagonal(G, F, a) for a in F.elements()}


def test_frobenius_actions():
    C2, C3, S3 = grp.cyclic(2), grp.cyclic(3), grp.symmetric(3)
    assert frobenius_fixed_point(C2).level(C2.whole).size == 2
    # C3 cannot act nontrivially on F4 through Frobenius (order 2)
    assert frobenius_fixed_point(C3).level(C3.whole).size == 4
    T = frobenius_fixed_point(S3)
    sizes = {len(H): T.level(H).size for H in S3.subgroups()}
    assert sizes[3] == 4 and sizes[6] == 2
    assert {T.level(H).size for H in S3.subgroups() if len(H) == 2} == {2}


@pytest.mark.parametrize("name", GROUPS)
def test_fixed_point_norm_and_transfer_formulas(name):
    G = grp.by_name(name)
    T = coinduce(G, field(2))
    e, top = G.trivial_subgroup, G.whole
    R = T.level(e)
    for a in R.elements():
        n, t = T.nm(e, top, a), T.tr(e, top, a)
        prod_all, sum_all = 1, 0
        for g in G.elements:
            prod_all *= a[g]
            sum_all += a[g]
        assert n == tuple(prod_all for _ in G.elements)
        assert t == tuple(sum_all % 2 for _ in G.elements)


def test_comparison_map_is_a_morphism():
    for T in (constant(grp.cyclic(2), ModRing(4)), coinduce(grp.cyclic(3), field(2)),
              frobenius_fixed_point(grp.symmetric(3))):
        phi, U = comparison_hom(T)
        assert hom_violations(phi) == []


def test_restriction_to_a_subgroup():
    S3 = grp.symmetric(3)
    C3 = next(H for H in S3.subgroups() if len(H) == 3)
    T = restrict(coinduce(S3, field(2)), C3)
    assert T.group.n == 3
    assert check_axioms(T, seed=5, budget=40).ok
    assert restrict(burnside_tambara(S3), S3.whole).group is S3


def test_mrc_flags():
    C2 = grp.cyclic(2)
    assert constant(C2, field(3)).is_mrc()
    assert coinduce(C2, field(2)).is_mrc()
    assert zero_functor(C2).total_size() == 2
