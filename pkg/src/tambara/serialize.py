"""JSON files for Tambara functors.

Two document kinds, both carrying ``schema_version``:

``tambara_table``
    explicit levels and element maps; every map is a list of
    ``[source element, image]`` pairs.  Keys: ``res`` ``"H>K"``, ``tr`` and
    ``nm`` ``"K<H"``, ``conj`` ``"g:H"``, with subgroups named as in
    ``FiniteGroup.subgroup_name``.
``tambara_construction``
    a recipe (``burnside``, ``constant``, ``fixed``, ``coinduce``) with a
    group and a ring; needed for Burnside functors, whose levels are
    infinite.
"""

from __future__ import annotations

import json

from . import groups as grp
from .constructions import burnside_tambara, coinduce, constant, frobenius_fixed_point
from .functor import TableTambara, scramble, subgroup_pairs, tabulate
from .rings import parse_ring, ring_from_json

SCHEMA_VERSION = "1.0"
SCHEMA_MAJOR = 1


class SchemaError(ValueError):
    pass


def check_version(data):
    v = str(data.get("schema_version", ""))
    try:
        major = int(v.split(".")[0])
    except ValueError:
        raise SchemaError("missing or malformed schema_version %r" % v) from None
    if major != SCHEMA_MAJOR:
        raise SchemaError("unsupported schema major version %d (expected %d)" % (major, SCHEMA_MAJOR))


def _pairs(R_src, R_dst, f, elts):
    return [[R_src.elt_to_json(a), R_dst.elt_to_json(f(a))] for a in elts]


def table_to_json(T, meta=None):
    """Serialize an enumerable functor as a ``tambara_table`` document."""
    G = T.group
    name = G.subgroup_name
    subs = T.subgroups
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "tambara_table",
        "name": T.name,
        "group": G.to_json(),
        "subgroups": {name(H): [G.labels[x] for x in sorted(H)] for H in subs},
        "levels": {name(H): T.level(H).to_json() for H in subs},
        "res": {}, "tr": {}, "nm": {}, "conj": {},
        "flags": {"enumerable": True, "mrc": T.is_mrc()},
    }
    for K, H in subgroup_pairs(G):
        RK, RH = T.level(K), T.level(H)
        out["res"]["%s>%s" % (name(H), name(K))] = _pairs(RH, RK, lambda a: T.res(H, K, a), RH.elements())
        out["tr"]["%s<%s" % (name(K), name(H))] = _pairs(RK, RH, lambda a: T.tr(K, H, a), RK.elements())
        out["nm"]["%s<%s" % (name(K), name(H))] = _pairs(RK, RH, lambda a: T.nm(K, H, a), RK.elements())
    for g in G.elements:
        if g == G.identity:
            continue
        for H in subs:
            RH, RgH = T.level(H), T.level(G.conjugate_subgroup(g, H))
            out["conj"]["%s:%s" % (G.labels[g], name(H))] = _pairs(RH, RgH, lambda a: T.conj(g, H, a),
                                                                   RH.elements())
    if meta:
        out["meta"] = meta
    return out


def _read_map(pairs, R_src, R_dst, what):
    m = {}
    for pair in pairs:
        if len(pair) != 2:
            raise SchemaError("%s: entries must be [source, image] pairs" % what)
        a, b = R_src.elt_from_json(pair[0]), R_dst.elt_from_json(pair[1])
        if a in m:
            raise SchemaError("%s: duplicate source element %r" % (what, pair[0]))
        m[a] = b
    if len(m) != R_src.size:
        raise SchemaError("%s: map covers %d of %d elements" % (what, len(m), R_src.size))
    return m


def table_from_json(data):
    check_version(data)
    G = grp.group_from_json(data["group"])
    by_name = {G.subgroup_name(H): H for H in G.subgroups()}
    for nm_, labels in data.get("subgroups", {}).items():
        H = frozenset(G.index_of(str(x)) for x in labels)
        if by_name.get(nm_) != H:
            raise SchemaError("subgroup %s does not match the canonical naming" % nm_)
    try:
        levels = {by_name[k]: ring_from_json(v) for k, v in data["levels"].items()}
    except KeyError as exc:
        raise SchemaError("unknown subgroup %s" % exc) from None
    if set(levels) != set(by_name.values()):
        raise SchemaError("levels must cover every subgroup")
    res, tr, nm, conj = {}, {}, {}, {}
    for key, pairs in data["res"].items():
        h, k = key.split(">")
        H, K = by_name[h], by_name[k]
        res[(H, K)] = _read_map(pairs, levels[H], levels[K], "res " + key)
    for table, out in (("tr", tr), ("nm", nm)):
        for key, pairs in data[table].items():
            k, h = key.split("<")
            K, H = by_name[k], by_name[h]
            out[(K, H)] = _read_map(pairs, levels[K], levels[H], table + " " + key)
    for key, pairs in data["conj"].items():
        g, h = key.split(":")
        gi, H = G.index_of(g), by_name[h]
        conj[(gi, H)] = _read_map(pairs, levels[H], levels[G.conjugate_subgroup(gi, H)], "conj " + key)
    for K, H in subgroup_pairs(G):
        if (H, K) not in res or (K, H) not in tr or (K, H) not in nm:
            raise SchemaError("missing operation data for %s<%s" % (G.subgroup_name(K), G.subgroup_name(H)))
    return TableTambara(G, levels, res, tr, nm, conj, name=data.get("name", "table"), meta=data.get("meta"))


# -- constructions ----------------------------------------------------------------------------

CONSTRUCTIONS = ("burnside", "constant", "fixed", "coinduce")


def construction_json(kind, group, ring=None, scramble_seed=None):
    out = {"schema_version": SCHEMA_VERSION, "kind": "tambara_construction",
           "construction": kind, "group": group}
    if ring is not None:
        out["ring"] = ring
    if scramble_seed is not None:
        out["scramble_seed"] = scramble_seed
    return out


def build(kind, group, ring=None):
    """``kind`` in :data:`CONSTRUCTIONS`; ``fixed`` is a Galois field with
    the Frobenius action (default ``F4``)."""
    G = grp.by_name(group) if isinstance(group, str) else grp.group_from_json(group)
    if kind == "burnside":
        return burnside_tambara(G)
    if kind == "constant":
        return constant(G, parse_ring(ring or "F2"))
    if kind == "coinduce":
        return coinduce(G, parse_ring(ring or "F2"))
    if kind == "fixed":
        return frobenius_fixed_point(G, parse_ring(ring or "F4"))
    raise SchemaError("unknown construction %r (expected one of %s)" % (kind, ", ".join(CONSTRUCTIONS)))


def construction_from_json(data):
    check_version(data)
    T = build(data["construction"], data["group"], data.get("ring"))
    seed = data.get("scramble_seed")
    if seed is not None:
        T, _ = scramble(T, int(seed))
    return T


def load_functor(data):
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "tambara_table":
        return table_from_json(data)
    if kind == "tambara_construction":
        return construction_from_json(data)
    check_version(data)
    raise SchemaError("unknown document kind %r" % (kind,))


def dump(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True)


def round_trip(T):
    """Serialize then parse; the result is a :class:`TableTambara`."""
    return table_from_json(json.loads(json.dumps(table_to_json(T))))


__all__ = ["SCHEMA_VERSION", "SchemaError", "table_to_json", "table_from_json", "construction_json",
           "build", "load_functor", "dump", "round_trip", "tabulate", "CONSTRUCTIONS"]
