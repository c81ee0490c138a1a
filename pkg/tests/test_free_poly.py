import random

import pytest
from hypothesis import given, settings, strategies as st

from tambara import free_poly as fp
from tambara import groups as grp
from tambara.constructions import burnside_tambara, coinduce, constant, frobenius_fixed_point
from tambara.free_poly import (ExprError, Presentation, enumerate_presentation_homs, eval_expr, format_expr,
                               free_presentation, integrality_witness, level_generators, norm_identity_holds,
                               parse_expr, polynomial_extension, witness_holds)
from tambara.functor import enumerate_homs
from tambara.rings import ModRing, field

C2 = grp.cyclic(2)
e, top = C2.trivial_subgroup, C2.whole


def test_parse_and_evaluate():
    T = constant(C2, ModRing(4))
    ex = parse_expr("(nm e G (res G e x))", C2)
    assert eval_expr(ex, T, {"x": 3}) == 1
    ex2 = parse_expr("(add (tr e G y) (int G 1))", C2)
    assert eval_expr(ex2, T, {"y": 1}) == 3


def test_format_parse_round_trip():
    S3 = grp.symmetric(3)
    for ex in level_generators(S3, S3.trivial_subgroup, S3.whole, 3):
        assert parse_expr(format_expr(ex, S3), S3) == ex


def test_level_errors():
    T = constant(C2, field(2))
    with pytest.raises(ExprError):
        eval_expr(parse_expr("(add x (res G e x))", C2), T, {"x": 1}, {"x": top})
    with pytest.raises(ExprError):
        parse_expr("(nm e G", C2)


def _coeff_oracle_norm(T, K, H, p):
    """Direct product of conjugates, valid for fixed-point functors: the
    polynomial extension is again a fixed-point functor of ``R[x]``."""
    G = T.group
    P = polynomial_extension(T)
    out = P.level(H).one
    for h in G.left_coset_reps(K, H):
        q = P.level(H).map_coefficients(lambda c: T.gring.act(h, c), p)
        out = P.level(H).mul(out, q)
    return out


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C2", "C3", "S3"]), st.sampled_from(["coind", "frob", "const"]), st.integers(0, 10 ** 6))
def test_polynomial_norm_matches_conjugate_product(name, kind, seed):
    G = grp.by_name(name)
    T = {"coind": lambda: coinduce(G, field(2)), "frob": lambda: frobenius_fixed_point(G),
         "const": lambda: constant(G, ModRing(4))}[kind]()
    P = polynomial_extension(T)
    rng = random.Random(seed)
    pairs = [(K, H) for H in G.subgroups() for K in G.subgroups() if K < H]
    K, H = rng.choice(pairs)
    p = P.sample(K, rng)
    assert P.nm(K, H, p) == _coeff_oracle_norm(T, K, H, p)


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "S3"])
def test_norm_identity_in_burnside_extension(name):
    G = grp.by_name(name)
    T = burnside_tambara(G)
    for H in G.subgroups():
        for K in G.subgroups_of(H):
            assert norm_identity_holds(T, K, H)


def test_norm_identity_fails_for_base_elements_of_burnside():
    # for a base element the identity is false: nm res [C2/e] = [C2/e] + 2, not [C2/e]^2
    A = burnside_tambara(C2)
    x = A.level(top).orbit(e)
    lhs = A.nm(e, top, A.res(top, e, x))
    assert lhs == (1, 2) and A.level(top).pow(x, 2) == (2, 0)


def test_free_presentation_counts():
    for T in (constant(C2, field(2)), coinduce(C2, field(2))):
        for H in C2.subgroups():
            homs = enumerate_homs(free_presentation(H), T)
            assert len(homs) == T.level(H).size


def test_presentation_with_relation():
    # x at e with x^2 = x: idempotents of T(G/e)
    x = fp.var("x")
    P = Presentation([("x", e)], [(x * x, x)])
    T = coinduce(C2, field(3))
    assert len(enumerate_presentation_homs(P, T)) == 4


def test_integrality_witness_f4_over_f2():
    T = frobenius_fixed_point(C2)
    F = T.level(e)
    a = next(v for v in F.elements() if v not in T.level(top).elements())
    w = integrality_witness(T, e, top, a)
    assert w.coefficients == (1, 1, 1)
    assert fp.format_poly(w.coefficients) == "x^2 + x + 1"
    assert witness_holds(T, w)


def test_integrality_witness_needs_injective_restriction():
    from tambara.ideals import ideal_closure, quotient
    T = constant(C2, ModRing(4))
    w = integrality_witness(T, e, top, 3)
    assert witness_holds(T, w)
    Q, _ = quotient(T, ideal_closure(T, [(e, 2)]))
    with pytest.raises(fp.UnsupportedError):
        integrality_witness(Q, e, top, 1)
