"""Formal expressions in free Tambara algebras and their evaluation.

Free algebras are infinite, so they are never built levelwise.  Instead an
element is a :class:`FormalExpr` tree over named generators, and a
morphism out of the free algebra is given by an assignment of generators,
applied by :func:`eval_expr`.

Also here: the polynomial extension ``T[x]`` with ``nm_K^H x = x^[H:K]``,
the bounded list of ring generators ``tr ∏ nm res x`` of a level, and the
integrality witness ``nm_K^H(x - a)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .functor import TambaraError, TambaraFunctor
from .rings import PolynomialRing


class ExprError(ValueError):
    pass


OPS = {"add": 2, "mul": 2, "neg": 1, "pow": 2, "res": 3, "tr": 3, "nm": 3, "conj": 3,
       "gen": 1, "const": 2, "int": 2}


@dataclass(frozen=True)
class FormalExpr:
    """``op`` with ``args``:

    ``gen (name,)``, ``const (H, value)``, ``int (H, n)``, ``add (a, b)``,
    ``mul (a, b)``, ``neg (a,)``, ``pow (a, k)``, ``res (H, K, a)``,
    ``tr (K, H, a)``, ``nm (K, H, a)``, ``conj (g, H, a)``.

    Subgroups are frozensets of element indices; ``g`` is an element index.
    """

    op: str
    args: tuple

    def __add__(self, other):
        return FormalExpr("add", (self, other))

    def __mul__(self, other):
        return FormalExpr("mul", (self, other))

    def __neg__(self):
        return FormalExpr("neg", (self,))

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, k):
        return FormalExpr("pow", (self, k))

    def generators(self):
        if self.op == "gen":
            return {self.args[0]}
        out = set()
        for a in self.args:
            if isinstance(a, FormalExpr):
                out |= a.generators()
        return out


def var(name):
    return FormalExpr("gen", (name,))


def res(H, K, a):
    return FormalExpr("res", (frozenset(H), frozenset(K), a))


def tr(K, H, a):
    return FormalExpr("tr", (frozenset(K), frozenset(H), a))


def nm(K, H, a):
    return FormalExpr("nm", (frozenset(K), frozenset(H), a))


def conj(g, H, a):
    return FormalExpr("conj", (g, frozenset(H), a))


def const(H, value):
    return FormalExpr("const", (frozenset(H), value))


def integer(H, n):
    return FormalExpr("int", (frozenset(H), n))


# -- levels and evaluation -------------------------------------------------------------

def expr_level(e, G, gen_levels):
    """Level of ``e``; raises :class:`ExprError` on inconsistent annotations."""
    op, a = e.op, e.args
    if op == "gen":
        try:
            return frozenset(gen_levels[a[0]])
        except KeyError:
            raise ExprError("generator %r has no level" % a[0]) from None
    if op in ("const", "int"):
        return a[0]
    if op in ("add", "mul"):
        l1, l2 = expr_level(a[0], G, gen_levels), expr_level(a[1], G, gen_levels)
        if l1 != l2:
            raise ExprError("%s of elements at different levels %s, %s"
                            % (op, G.subgroup_name(l1), G.subgroup_name(l2)))
        return l1
    if op in ("neg", "pow"):
        return expr_level(a[0], G, gen_levels)
    inner = expr_level(a[2], G, gen_levels)
    if op == "res":
        H, K = a[0], a[1]
        if inner != H or not K <= H:
            raise ExprError("res %s->%s applied at level %s" % (G.subgroup_name(H), G.subgroup_name(K),
                                                                G.subgroup_name(inner)))
        return K
    if op in ("tr", "nm"):
        K, H = a[0], a[1]
        if inner != K or not K <= H:
            raise ExprError("%s %s->%s applied at level %s" % (op, G.subgroup_name(K), G.subgroup_name(H),
                                                               G.subgroup_name(inner)))
        return H
    if op == "conj":
        g, H = a[0], a[1]
        if inner != H:
            raise ExprError("conj at %s applied at level %s" % (G.subgroup_name(H), G.subgroup_name(inner)))
        return G.conjugate_subgroup(g, H)
    raise ExprError("unknown operation %r" % op)


def eval_expr(e, T, assign, gen_levels=None):
    """Evaluate ``e`` in ``T``; ``assign[name]`` is the image of a generator.

    ``gen_levels`` (name -> subgroup) fixes the level of each generator; when
    omitted it is read off the surrounding operations, or from the unique
    level containing the assigned value.  Level mismatches raise
    :class:`ExprError`.
    """
    G = T.group
    if gen_levels is None:
        gen_levels = infer_gen_levels(e, T, assign)
    memo = {}

    def ev(x):
        key = id(x)
        if key in memo:
            return memo[key]
        op, a = x.op, x.args
        if op == "gen":
            if a[0] not in assign:
                raise ExprError("generator %r is not assigned" % a[0])
            out = (frozenset(gen_levels[a[0]]), assign[a[0]])
        elif op == "const":
            out = (a[0], a[1])
        elif op == "int":
            out = (a[0], T.level(a[0]).from_int(a[1]))
        elif op in ("add", "mul"):
            (l1, v1), (l2, v2) = ev(a[0]), ev(a[1])
            if l1 != l2:
                raise ExprError("%s of elements at different levels %s, %s"
                                % (op, G.subgroup_name(l1), G.subgroup_name(l2)))
            R = T.level(l1)
            out = (l1, R.add(v1, v2) if op == "add" else R.mul(v1, v2))
        elif op == "neg":
            l, v = ev(a[0])
            out = (l, T.level(l).neg(v))
        elif op == "pow":
            l, v = ev(a[0])
            out = (l, T.level(l).pow(v, a[1]))
        elif op in ("res", "tr", "nm", "conj"):
            l, v = ev(a[2])
            if op == "conj":
                if l != a[1]:
                    raise ExprError("conj at %s applied at level %s" % (G.subgroup_name(a[1]), G.subgroup_name(l)))
                out = (G.conjugate_subgroup(a[0], a[1]), T.conj(a[0], a[1], v))
            else:
                src, dst = a[0], a[1]
                small, big = (dst, src) if op == "res" else (src, dst)
                if l != src or not small <= big:
                    raise ExprError("%s %s->%s applied at level %s" % (op, G.subgroup_name(src), G.subgroup_name(dst),
                                                                       G.subgroup_name(l)))
                fn = {"res": T.res, "tr": T.tr, "nm": T.nm}[op]
                out = (dst, fn(src, dst, v))
        else:
            raise ExprError("unknown operation %r" % op)
        memo[key] = out
        return out

    return ev(e)[1]


def infer_gen_levels(e, T, assign):
    """Generator levels implied by the operations around them."""
    found = {}

    def walk(x, expected):
        op, a = x.op, x.args
        if op == "gen":
            if expected is not None:
                if found.setdefault(a[0], expected) != expected:
                    raise ExprError("generator %r used at two levels" % a[0])
            return
        if op in ("add", "mul"):
            walk(a[0], expected)
            walk(a[1], expected)
        elif op in ("neg", "pow"):
            walk(a[0], expected)
        elif op in ("res", "tr", "nm"):
            walk(a[2], a[0])
        elif op == "conj":
            walk(a[2], a[1])

    walk(e, None)
    for name in sorted(e.generators()):
        if name in found:
            continue
        hits = [H for H in T.subgroups if _member(T.level(H), assign.get(name))]
        if len(hits) != 1:
            raise ExprError("cannot infer the level of generator %r; pass gen_levels" % name)
        found[name] = hits[0]
    return found


def _member(R, v):
    try:
        return v in R
    except Exception:
        return False


# -- S-expressions ----------------------------------------------------------------------

_TOKEN = re.compile(r'\s*(\(|\)|"[^"]*"|[^\s()"]+)')


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError("cannot parse near %r" % text[pos:pos + 10])
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_expr(text, G, ring_parsers=None):
    """Parse the S-expression format, e.g. ``(nm e G (res G e x))``.

    Subgroups are written by name (``e``, ``G``, ``H1``...), group elements
    by label (quote labels containing spaces or parentheses), generators by
    bare symbols.  ``(int H n)`` is ``n·1`` at level ``H``; ``(const H v)``
    needs ``ring_parsers[H]`` to turn the token ``v`` into an element.
    """
    toks = _tokenize(text)
    pos = [0]

    def peek():
        if pos[0] >= len(toks):
            raise ExprError("unexpected end of expression")
        return toks[pos[0]]

    def take():
        t = peek()
        pos[0] += 1
        return t

    def atom(t):
        return t[1:-1] if t.startswith('"') else t

    def sub(t):
        return G.subgroup_by_name(atom(t))

    def parse():
        t = take()
        if t == ")":
            raise ExprError("unexpected ')'")
        if t != "(":
            return var(atom(t))
        op = take()
        if op == "add" or op == "mul":
            args = [parse()]
            while peek() != ")":
                args.append(parse())
            take()
            if len(args) < 2:
                raise ExprError("%s needs at least two arguments" % op)
            out = args[0]
            for a in args[1:]:
                out = FormalExpr(op, (out, a))
            return out
        if op == "sub":
            a, b = parse(), parse()
            _close()
            return a - b
        if op == "neg":
            a = parse()
            _close()
            return -a
        if op == "pow":
            a = parse()
            k = int(take())
            _close()
            return a ** k
        if op in ("res", "tr", "nm"):
            A, B = sub(take()), sub(take())
            a = parse()
            _close()
            return FormalExpr(op, (A, B, a))
        if op == "conj":
            g = G.index_of(atom(take()))
            H = sub(take())
            a = parse()
            _close()
            return conj(g, H, a)
        if op == "int":
            H = sub(take())
            n = int(take())
            _close()
            return integer(H, n)
        if op == "const":
            H = sub(take())
            tok = atom(take())
            _close()
            if not ring_parsers or H not in ring_parsers:
                raise ExprError("no parser for constants at level %s" % G.subgroup_name(H))
            return const(H, ring_parsers[H](tok))
        raise ExprError("unknown operation %r" % op)

    def _close():
        if take() != ")":
            raise ExprError("expected ')'")

    e = parse()
    if pos[0] != len(toks):
        raise ExprError("trailing tokens after expression")
    return e


def format_expr(e, G, fmt_const=repr):
    op, a = e.op, e.args

    def lab(g):
        s = G.labels[g]
        return '"%s"' % s if re.search(r'[\s()"]', s) else s

    if op == "gen":
        return a[0]
    if op == "int":
        return "(int %s %d)" % (G.subgroup_name(a[0]), a[1])
    if op == "const":
        return "(const %s %s)" % (G.subgroup_name(a[0]), fmt_const(a[1]))
    if op in ("add", "mul"):
        return "(%s %s %s)" % (op, format_expr(a[0], G, fmt_const), format_expr(a[1], G, fmt_const))
    if op == "neg":
        return "(neg %s)" % format_expr(a[0], G, fmt_const)
    if op == "pow":
        return "(pow %s %d)" % (format_expr(a[0], G, fmt_const), a[1])
    if op == "conj":
        return "(conj %s %s %s)" % (lab(a[0]), G.subgroup_name(a[1]), format_expr(a[2], G, fmt_const))
    return "(%s %s %s %s)" % (op, G.subgroup_name(a[0]), G.subgroup_name(a[1]), format_expr(a[2], G, fmt_const))


# -- level generators -------------------------------------------------------------------

def _factor_options(G, H, L):
    """Factors ``(M, g)`` meaning ``nm_M^L res_M c_g x`` for ``x`` at level
    ``H``: ``M <= L`` and ``M <= gHg^-1``; ``g`` runs over ``G/H``."""
    out = []
    for g in G.left_coset_reps(H):
        gH = G.conjugate_subgroup(g, H)
        for M in G.subgroups_of(L & gH):
            out.append((M, g))
    return out


def _coset_key(G, H, g):
    return min(G.mul(g, h) for h in H)


def _canon_factor(G, H, L, M, g):
    """Least representative of ``(M, gH)`` under ``(M, gH) -> (lMl^-1, lgH)``,
    ``l`` in ``L``."""
    best = None
    for l in sorted(L):
        cand = (tuple(sorted(G.conjugate_subgroup(l, M))), _coset_key(G, H, G.mul(l, g)))
        if best is None or cand < best:
            best = cand
    return best


def _canon_term(G, H, K, L, factors):
    best = None
    for k in sorted(K):
        kL = G.conjugate_subgroup(k, L)
        fs = tuple(sorted(_canon_factor(G, H, kL, G.conjugate_subgroup(k, frozenset(M)),
                                        G.mul(k, g)) for M, g in factors))
        cand = (tuple(sorted(kL)), fs)
        if best is None or cand < best:
            best = cand
    return best


def _term_expr(G, H, K, Lkey, factors, name):
    L = frozenset(Lkey)
    x = var(name)
    pieces = []
    for Mkey, g in factors:
        M = frozenset(Mkey)
        base = G.conjugate_subgroup(g, H)
        y = x if g in H else conj(g, H, x)
        if M != base:
            y = res(base, M, y)
        if M != L:
            y = nm(M, L, y)
        pieces.append(y)
    out, i = None, 0
    while i < len(pieces):
        j = i
        while j < len(pieces) and pieces[j] == pieces[i]:
            j += 1
        p = pieces[i] if j - i == 1 else pieces[i] ** (j - i)
        out = p if out is None else out * p
        i = j
    if L != K:
        out = tr(L, K, out)
    return out


def level_generators(G, H, K, bound, name="x"):
    """Expressions ``tr_L^K ∏_i nm_{M_i}^L res_{M_i} c_{g_i} x`` for a
    generator ``x`` at level ``H``, with output at level ``K`` and total
    degree ``Σ [L:M_i]`` between 1 and ``bound``, up to conjugation."""
    H, K = frozenset(H), frozenset(K)
    if bound < 1:
        raise ValueError("degree bound must be at least 1")
    seen = {}
    for L in G.subgroups_of(K):
        opts = sorted({_canon_factor(G, H, L, M, g) for M, g in _factor_options(G, H, L)})
        degs = [len(L) // len(Mk) for Mk, _ in opts]

        def rec(i, budget, chosen):
            if chosen:
                key = _canon_term(G, H, K, L, [(frozenset(M), g) for M, g in chosen])
                if key not in seen:
                    seen[key] = sum(len(L) // len(M) for M, _ in chosen)
            for j in range(i, len(opts)):
                if degs[j] <= budget:
                    rec(j, budget - degs[j], chosen + [opts[j]])

        rec(0, bound, [])
    keys = sorted(seen, key=lambda k: (seen[k], -len(k[0]), k))
    return [_term_expr(G, H, K, Lk, fs, name) for Lk, fs in keys]


def expr_degree(e, G):
    op, a = e.op, e.args
    if op == "gen":
        return 1
    if op in ("const", "int"):
        return 0
    if op == "mul":
        return expr_degree(a[0], G) + expr_degree(a[1], G)
    if op == "add":
        return max(expr_degree(a[0], G), expr_degree(a[1], G))
    if op == "pow":
        return a[1] * expr_degree(a[0], G)
    if op == "nm":
        return (len(a[1]) // len(a[0])) * expr_degree(a[2], G)
    if op == "neg":
        return expr_degree(a[0], G)
    return expr_degree(a[2], G)


# -- the polynomial extension T[x] ---------------------------------------------------------

class PolynomialExtension(TambaraFunctor):
    """``T[x]`` with levels ``T(G/H)[x]`` and ``nm_K^H x = x^[H:K]``.

    res, tr and conj act on coefficients.  The norm of a sum is expanded by
    the exponential formula: for ``p = Σ_i a_i x^i``,

        nm_K^H p = Σ over H-orbits of functions s: H/K -> degrees,
                   tr_{L}^H ∏_{L-orbits of H/K, rep hK}
                       nm_{L∩hKh^-1}^{L} res c_h(a_{s(hK)}) · x^{s(hK)·|orbit|}

    with ``L`` the stabilizer of ``s``.  Only ``T``'s own operations are used.
    """

    def __init__(self, T):
        super().__init__(T.group, "%s[x]" % T.name)
        self.base = T
        self._levels = {}

    def level(self, H):
        H = frozenset(H)
        if H not in self._levels:
            self._levels[H] = PolynomialRing(self.base.level(H))
        return self._levels[H]

    def variable(self, H=None):
        return self.level(H or self.group.whole).variable()

    def res(self, H, K, p):
        return self.level(K).map_coefficients(lambda c: self.base.res(H, K, c), p)

    def tr(self, K, H, p):
        return self.level(H).map_coefficients(lambda c: self.base.tr(K, H, c), p)

    def conj(self, g, H, p):
        gH = self.group.conjugate_subgroup(g, H)
        return self.level(gH).map_coefficients(lambda c: self.base.conj(g, H, c), p)

    def sample(self, H, rng):
        return self.level(H).sample(rng, max_degree=2)

    def nm(self, K, H, p):
        if K == H:
            return p
        T, G = self.base, self.group
        PH = self.level(H)
        if not p:
            return PH.zero
        cosets = G.left_cosets(K, H)
        where = {}
        for i, c in enumerate(cosets):
            for y in c:
                where[y] = i
        reps = [min(c) for c in cosets]
        # h . s  :  (h.s)(i) = s(h^-1 i)
        perm = {h: [where[G.mul(h, r)] for r in reps] for h in H}
        degrees = [i for i, c in enumerate(p) if c != T.level(K).zero]
        seen = set()
        total = PH.zero
        for s in product(degrees, repeat=len(reps)):
            if s in seen:
                continue
            orbit = set()
            L = []
            for h in sorted(H):
                t = [0] * len(reps)
                for i in range(len(reps)):
                    t[perm[h][i]] = s[i]
                t = tuple(t)
                orbit.add(t)
                if t == s:
                    L.append(h)
            seen |= orbit
            L = frozenset(L)
            RL = T.level(L)
            coeff, deg = RL.one, 0
            done = set()
            for i, r in enumerate(reps):
                if i in done:
                    continue
                orb = {perm[l][i] for l in L}
                done |= orb
                hK = G.conjugate_subgroup(r, K)
                M = L & hK
                a = T.conj(r, K, p[s[i]])
                coeff = RL.mul(coeff, T.nm(M, L, T.res(hK, M, a)))
                deg += s[i] * len(orb)
            term = (T.level(L).zero,) * deg + (coeff,)
            term = self.level(L)._trim(term)
            total = PH.add(total, self.tr(L, H, term))
        return total


def polynomial_extension(T):
    return PolynomialExtension(T)


def norm_identity_holds(T, K, H):
    """``nm_K^H res^G_K x == res^G_H(x)^[H:K]`` in ``T[x]`` for the variable
    ``x`` at the top level, evaluated through :func:`eval_expr`."""
    P = polynomial_extension(T)
    G = T.group
    top = G.whole
    x = var("x")
    lhs = nm(K, H, res(top, K, x)) if K != top else x
    rhs_base = res(top, H, x) if H != top else x
    rhs = rhs_base ** (len(H) // len(K))
    assign = {"x": P.variable()}
    levels = {"x": top}
    return eval_expr(lhs, P, assign, levels) == eval_expr(rhs, P, assign, levels)


# -- integrality ------------------------------------------------------------------------------

class UnsupportedError(TambaraError):
    pass


@dataclass
class IntegralityWitness:
    K: frozenset
    H: frozenset
    a: object
    coefficients: tuple   # over T(G/H), constant term first

    @property
    def degree(self):
        return len(self.coefficients) - 1


def _lift_table(T, H):
    """Inverse of the injective ``res^H_e`` as a dict, cached on ``T``."""
    cache = T.__dict__.setdefault("_lift_cache", {})
    if H in cache:
        return cache[H]
    e = T.bottom
    lift = {}
    for c in T.level(H).elements():
        r = T.res(H, e, c)
        if r in lift:
            raise UnsupportedError("restriction %s->e is not injective" % T.group.subgroup_name(H))
        lift[r] = c
    cache[H] = lift
    return lift


def integrality_witness(T, K, H, a):
    """``p(x) = nm_K^H(x - a)``, a monic polynomial over ``T(G/H)`` of degree
    ``[H:K]`` with ``p(a) = 0`` (coefficients pushed to level ``K``).

    Computed at the bottom level as ``∏_{hK in H/K} (x - c_h res^K_e a)``
    and lifted through the injective ``res^H_e``.
    """
    G = T.group
    K, H = frozenset(K), frozenset(H)
    if not K <= H:
        raise TambaraError("need K <= H")
    e = T.bottom
    Re = T.level(e)
    lift = _lift_table(T, H)
    base = T.res(K, e, a)
    P = PolynomialRing(Re)
    q = P.one
    for h in G.left_coset_reps(K, H):
        root = T.conj(h, e, base)
        q = P.mul(q, P._trim((Re.neg(root), Re.one)))
    coeffs = []
    for c in q:
        if c not in lift:
            raise TambaraError("coefficient does not lift to level %s" % G.subgroup_name(H))
        coeffs.append(lift[c])
    return IntegralityWitness(K, H, a, tuple(coeffs))


def witness_holds(T, w):
    """Monic of degree ``[H:K]`` and vanishing at ``a``."""
    RK, RH = T.level(w.K), T.level(w.H)
    if w.degree != len(w.H) // len(w.K) or w.coefficients[-1] != RH.one:
        return False
    acc = RK.zero
    for c in reversed(w.coefficients):
        acc = RK.add(RK.mul(acc, w.a), T.res(w.H, w.K, c))
    return acc == RK.zero


def format_poly(coeffs, fmt=str, var_name="x"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        s = fmt(c)
        if s == "0":
            continue
        mon = "" if i == 0 else (var_name if i == 1 else "%s^%d" % (var_name, i))
        if not mon:
            terms.append(s)
        elif s == "1":
            terms.append(mon)
        else:
            terms.append("%s*%s" % (s, mon))
    return " + ".join(terms) or "0"


# -- presentations ------------------------------------------------------------------------------

@dataclass
class Presentation:
    """Generators ``[(name, H)]`` and relations ``[(lhs, rhs)]``."""

    generators: list
    relations: list

    @property
    def gen_levels(self):
        return {name: frozenset(H) for name, H in self.generators}


def free_presentation(H, name="x"):
    return Presentation([(name, frozenset(H))], [])


def enumerate_presentation_homs(P, T, cap=10 ** 6):
    """Generator assignments into ``T`` satisfying every relation; each one
    is a morphism from the presented algebra by its universal property."""
    levels = P.gen_levels
    for lhs, rhs in P.relations:
        if expr_level(lhs, T.group, levels) != expr_level(rhs, T.group, levels):
            raise ExprError("relation sides live at different levels")
    spaces = [T.level(H).elements() for _, H in P.generators]
    total = 1
    for s in spaces:
        total *= len(s)
    if total > cap:
        raise TambaraError("hom search space %d exceeds cap %d" % (total, cap))
    names = [n for n, _ in P.generators]
    out = []
    for images in product(*spaces):
        assign = dict(zip(names, images))
        if all(eval_expr(l, T, assign, levels) == eval_expr(r, T, assign, levels) for l, r in P.relations):
            out.append(assign)
    return out
