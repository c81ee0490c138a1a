"""Brute-force reference computations, written against raw multiplication
tables and plain Python integers so they share no code with the package."""

from itertools import combinations, product


def table_of(G):
    return [list(row) for row in G.table], G.identity


def all_subgroups(G):
    """Every subset containing the identity and closed under products."""
    table, e = table_of(G)
    n = len(table)
    others = [x for x in range(n) if x != e]
    out = []
    for r in range(len(others) + 1):
        for rest in combinations(others, r):
            S = set(rest) | {e}
            if (n // len(S)) * len(S) != n:
                continue
            if all(table[a][b] in S for a in S for b in S):
                out.append(frozenset(S))
    return out


def inverse(table, e, a):
    return next(b for b in range(len(table)) if table[a][b] == e)


def conjugate(table, e, g, S):
    gi = inverse(table, e, g)
    return frozenset(table[table[g][s]][gi] for s in S)


def subgroup_classes(G):
    table, e = table_of(G)
    classes = []
    for S in all_subgroups(G):
        if not any(S in c for c in classes):
            classes.append({conjugate(table, e, g, S) for g in range(len(table))})
    return classes


def normalizer(G, H):
    table, e = table_of(G)
    return frozenset(g for g in range(len(table)) if conjugate(table, e, g, H) == frozenset(H))


def double_coset_count(G, K, H):
    table, _ = table_of(G)
    seen, count = set(), 0
    for g in range(len(table)):
        if g in seen:
            continue
        seen |= {table[table[k][g]][h] for k in K for h in H}
        count += 1
    return count


def left_cosets(G, H, within):
    table, _ = table_of(G)
    out = []
    for g in sorted(within):
        c = frozenset(table[g][h] for h in H)
        if c not in out:
            out.append(c)
    return out


def fixed_points_on_cosets(G, ambient, K, L):
    """``|(ambient/K)^L|`` by direct counting."""
    table, _ = table_of(G)
    return sum(1 for c in left_cosets(G, K, ambient)
               if all(frozenset(table[l][x] for x in c) == c for l in L))


def norm_marks(G, H, M, K, L):
    """Number of ``L``-fixed points of ``Map_H(K, H/M)``: all functions
    ``f: K -> H/M`` with ``f(hk) = h f(k)`` and ``f(kl) = f(k)``."""
    table, _ = table_of(G)
    X = left_cosets(G, M, H)
    where = {}
    for i, c in enumerate(X):
        for x in c:
            where[x] = i
    Ks = sorted(K)
    act = {h: [where[table[h][min(c)]] for c in X] for h in H}
    count = 0
    for values in product(range(len(X)), repeat=len(Ks)):
        f = dict(zip(Ks, values))
        if any(f[table[h][k]] != act[h][f[k]] for h in H for k in Ks):
            continue
        if any(f[table[k][l]] != f[k] for k in Ks for l in L):
            continue
        count += 1
    return count


def mod_idempotents(n):
    return [a for a in range(n) if a * a % n == a]


def poly_mul_mod(a, b, p, modulus):
    """Multiply coefficient lists (low first) over F_p and reduce by a monic modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    k = len(modulus) - 1
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for i, m in enumerate(modulus):
                out[d - k + i] = (out[d - k + i] - c * m) % p
    out = out[:k] + [0] * max(0, k - len(out))
    return out


def brute_tambara_homs(S, T):
    """Count levelwise maps ``S -> T`` that are ring maps on every level and
    commute with every res, tr, nm and conj, by trying all set maps."""
    G = S.group
    subs = G.subgroups()
    per_level = []
    for H in subs:
        RS, RT = S.level(H), T.level(H)
        xs, ys = RS.elements(), RT.elements()
        ok = []
        for vals in product(ys, repeat=len(xs)):
            f = dict(zip(xs, vals))
            if f[RS.one] != RT.one:
                continue
            if all(f[RS.add(a, b)] == RT.add(f[a], f[b]) and f[RS.mul(a, b)] == RT.mul(f[a], f[b])
                   for a in xs for b in xs):
                ok.append(f)
        per_level.append(ok)
    count = 0
    for choice in product(*per_level):
        phi = dict(zip(subs, choice))
        good = True
        for H in subs:
            for K in subs:
                if not (K < H):
                    continue
                for a in S.level(H).elements():
                    if phi[K][S.res(H, K, a)] != T.res(H, K, phi[H][a]):
                        good = False
                for a in S.level(K).elements():
                    if phi[H][S.tr(K, H, a)] != T.tr(K, H, phi[K][a]):
                        good = False
                    if phi[H][S.nm(K, H, a)] != T.nm(K, H, phi[K][a]):
                        good = False
            for g in G.elements:
                gH = G.conjugate_subgroup(g, H)
                for a in S.level(H).elements():
                    if phi[gH][S.conj(g, H, a)] != T.conj(g, H, phi[H][a]):
                        good = False
        count += good
    return count
