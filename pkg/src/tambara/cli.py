"""Command line front end: ``tambara VERB [options]``.

Exit codes: 0 success, 1 a property was violated (the report carries the
counterexample), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import groups as grp
from . import rings
from .bispans import BispanError, bispan_from_json, compose, tnr
from .classification import (algebraic_closure_map, classify, direct_sum, module_decomposition_check,
                             self_module, top_only_module)
from .free_poly import ExprError, eval_expr, expr_level, infer_gen_levels, parse_expr
from .functor import TambaraError, check_axioms, scramble
from .gsets import GSetError, from_json as gset_from_json, map_from_json, orbit_decompose
from .ideals import ideal_closure, is_field_like
from .serialize import (CONSTRUCTIONS, SchemaError, build, construction_json, dump, load_functor,
                        table_to_json)

INPUT_ERRORS = (SchemaError, grp.GroupError, rings.RingError, GSetError, BispanError, ExprError,
                TambaraError, KeyError, ValueError, TypeError, AttributeError, OSError,
                json.JSONDecodeError)


class UsageError(Exception):
    pass


def _read_json(path):
    if path is None:
        raise UsageError("--input is required")
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _load(args):
    return load_functor(_read_json(args.input))


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(dump(payload))
    else:
        for line in text_lines:
            print(line)


# -- verbs --------------------------------------------------------------------------------

def cmd_group(args):
    G = grp.group_from_json(_read_json(args.input)) if args.input else grp.by_name(args.name)
    classes = []
    lines = ["%s: order %d, %d subgroup classes" % (G.name, G.n, len(G.class_reps))]
    for H in G.class_reps:
        N = G.normalizer(H)
        entry = {"name": G.subgroup_name(H), "order": len(H), "elements": [G.labels[x] for x in sorted(H)],
                 "conjugates": len(G.conjugates(H)), "normalizer_order": len(N), "weyl_order": len(N) // len(H),
                 "below": sorted(G.subgroup_name(K) for K in G.class_reps if K != H and G.subconjugate(K, H))}
        classes.append(entry)
        lines.append("  %-4s order %-2d conjugates %d  |W| = %d  above %s" % (
            entry["name"], entry["order"], entry["conjugates"], entry["weyl_order"], ", ".join(entry["below"]) or "-"))
    _emit(args, {"group": G.name, "order": G.n, "classes": classes}, lines)
    return 0


def cmd_gset(args):
    data = _read_json(args.input)
    G = grp.group_from_json(data["group"]) if isinstance(data.get("group"), dict) else grp.by_name(data["group"])
    X = gset_from_json(G, data)
    dec = orbit_decompose(X)
    types = [{"subgroup": G.subgroup_name(H), "multiplicity": m} for H, m in dec.types]
    _emit(args, {"points": X.n, "orbits": types},
          ["%d points: %s" % (X.n, X.orbit_type_string())])
    return 0


def _bispan(G, data):
    if "components" in data:
        return bispan_from_json(G, data)
    X, A, B, Y = (gset_from_json(G, data[k]) for k in ("X", "A", "B", "Y"))
    return tnr(map_from_json(A, X, data["h"]), map_from_json(A, B, data["g"]), map_from_json(B, Y, data["f"]))


def cmd_bispan(args):
    data = _read_json(args.input)
    G = grp.group_from_json(data["group"]) if isinstance(data["group"], dict) else grp.by_name(data["group"])
    b1, b2 = _bispan(G, data["b1"]), _bispan(G, data["b2"])
    c = compose(b2, b1)
    _emit(args, {"composite": c.to_json(), "pretty": c.pretty(), "kind": c.kind}, [c.pretty()])
    return 0


def cmd_build(args):
    if args.kind == "burnside":
        if args.scramble is not None:
            raise UsageError("Burnside functors cannot be scrambled (infinite levels)")
        payload = construction_json("burnside", args.group)
        build("burnside", args.group)
        print(dump(payload))
        return 0
    T = build(args.kind, args.group, args.ring)
    if args.scramble is not None:
        T, _ = scramble(T, args.scramble)
    print(dump(table_to_json(T, meta={"construction": args.kind, "group": args.group, "ring": args.ring,
                                      "scramble_seed": args.scramble})))
    return 0


def cmd_check(args):
    T = _load(args)
    rep = check_axioms(T, seed=args.seed, budget=args.budget)
    out = rep.to_json()
    out.pop("functor", None)
    lines = ["pairs %d, samples %d, violations %d" % (rep.pairs, rep.samples, len(rep.violations))]
    lines += ["  %s: %s" % (v.rule, v.detail) for v in rep.violations[:10]]
    _emit(args, out, lines)
    return 0 if rep.ok else 1


def _parse_assign(T, items):
    G = T.group
    assign, levels = {}, {}
    for item in items:
        if "=" not in item or "@" not in item.split("=")[0]:
            raise UsageError("assignments look like name@LEVEL=JSON, got %r" % item)
        lhs, value = item.split("=", 1)
        name, level = lhs.split("@")
        H = G.subgroup_by_name(level)
        levels[name] = H
        assign[name] = T.level(H).elt_from_json(json.loads(value))
    return assign, levels


def cmd_eval(args):
    T = _load(args)
    G = T.group
    assign, levels = _parse_assign(T, args.assign)
    e = parse_expr(args.expr, G)
    levels = levels or infer_gen_levels(e, T, assign)
    v = eval_expr(e, T, assign, levels)
    H = expr_level(e, G, levels)
    name = G.subgroup_name(H)
    _emit(args, {"level": name, "value": T.level(H).elt_to_json(v)}, ["%s @ %s" % (T.level(H).elt_to_json(v), name)])
    return 0


def cmd_ideal(args):
    T = _load(args)
    G = T.group
    gens = []
    for item in args.gen:
        level, value = item.split("=", 1)
        H = G.subgroup_by_name(level)
        gens.append((H, T.level(H).elt_from_json(json.loads(value))))
    I = ideal_closure(T, gens)
    lines = ["%s: %s" % (k, v) for k, v in I.to_json().items()]
    _emit(args, {"ideal": I.to_json(), "zero": I.is_zero(), "unit": I.is_unit()}, lines)
    return 0


def cmd_fieldlike(args):
    T = _load(args)
    r = is_field_like(T)
    out = {"field_like": r.field_like, "path": r.path, "reason": r.reason}
    if r.witness is not None:
        out["witness"] = r.witness.to_json()
    _emit(args, out, ["field-like: %s (%s)" % (r.field_like, r.reason)])
    return 0 if r.field_like else 1


def cmd_classify(args):
    T = _load(args)
    v = classify(T)
    out = v.to_json()
    lines = ["%s: %s" % (v.kind, v.reason)]
    if v.coinduced:
        lines.append("base field F_%d; Nullstellensatzian only in the limit along the closure tower"
                     % v.field_order)
    _emit(args, out, lines)
    return 0


def cmd_closure_map(args):
    T = _load(args)
    cm = algebraic_closure_map(T, args.m, max_degree=args.max_degree)
    lines = ["map into coinduce(F_%d)" % cm.field.size]
    lines += ["  degree %(degree)d: %(factored)d of %(homs)d homs factor" % f for f in cm.factoring]
    _emit(args, cm.to_json(), lines)
    return 0 if cm.ok else 1


def cmd_module_check(args):
    if args.module == "top-only":
        G = grp.by_name(args.group)
        M = top_only_module(G, rings.parse_ring(args.ring or "F2"))
    else:
        T = _load(args)
        M = self_module(T)
        if args.module == "square":
            M = direct_sum(M, M)
    rep = module_decomposition_check(M)
    _emit(args, rep.to_json(), ["ok: %s" % rep.ok] + ["  " + f for f in rep.failures])
    return 0 if rep.ok else 1


# -- parser ---------------------------------------------------------------------------------

def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file ('-' for stdin)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap for finite rings (default $TAMBARA_CAP or 4096)")
    p = argparse.ArgumentParser(prog="tambara", description="Exact workbench for Tambara functors.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("group", parents=[common], help="subgroup lattice of a group")
    s.add_argument("name", nargs="?", default="C2")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("gset", parents=[common], help="orbit decomposition of a G-set")
    s.set_defaults(func=cmd_gset)

    s = sub.add_parser("bispan", parents=[common], help="bispan operations")
    s.add_argument("action", choices=("compose",))
    s.set_defaults(func=cmd_bispan)

    s = sub.add_parser("build", parents=[common], help="emit a Tambara functor")
    s.add_argument("kind", choices=CONSTRUCTIONS)
    s.add_argument("--group", default="C2")
    s.add_argument("--ring", default=None)
    s.add_argument("--scramble", type=int, default=None, metavar="SEED")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("check", parents=[common], help="both-ways bispan evaluation checker")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--budget", type=int, default=200)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("eval", parents=[common], help="evaluate a formal expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--assign", action="append", default=[], metavar="NAME@LEVEL=JSON")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("ideal", parents=[common], help="Nakaoka ideal closure")
    s.add_argument("action", choices=("close",))
    s.add_argument("--gen", action="append", default=[], metavar="LEVEL=JSON")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("fieldlike", parents=[common], help="field-like test")
    s.set_defaults(func=cmd_fieldlike)

    s = sub.add_parser("classify", parents=[common], help="coinduced-from-field recognition")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("closure-map", parents=[common], help="map into coinduce(F_{q^m}) with factoring checks")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=4)
    s.set_defaults(func=cmd_closure_map)

    s = sub.add_parser("module-check", parents=[common], help="module decomposition check")
    s.add_argument("--module", choices=("self", "square", "top-only"), default="self")
    s.add_argument("--group", default="C2")
    s.add_argument("--ring", default=None)
    s.set_defaults(func=cmd_module_check)
    return p


def run(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cap = args.cap if args.cap is not None else int(os.environ.get("TAMBARA_CAP", rings.ENUM_CAP))
    old = rings.ENUM_CAP
    rings.set_enum_cap(cap)
    try:
        return args.func(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    finally:
        rings.set_enum_cap(old)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
