"""Command-line surface: tables, classification, biset algebra and verification."""

import argparse
import json
import os
import re
import shutil
import sys
from fractions import Fraction

from . import verify as verify_mod
from .bgroups import beta_delta
from .bisets import BisetElt, compose, elementary, goursat_basis, hom_space
from .burnside import deflation_number, idempotent, table_of_marks
from .charfun import dirichlet_tilde, unit_characters, unit_group, xi_mnp
from .cyclotomic import format_value
from .errors import ParseError
from .functors import SimpleLabel, simple_dim
from .groups import cache_dir, is_isomorphic, make_named, set_cache_dir
from .verify import run_criterion, CRITERIA, ALIASES


def emit_table(headers, rows, fmt, out=sys.stdout):
    if fmt == "json":
        data = [dict(zip(headers, row)) for row in rows]
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
        return
    rows = [[str(c) for c in row] for row in rows]
    if fmt == "csv":
        out.write(",".join(headers) + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
        return
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    out.write("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _class_names(G):
    tab = G.subgroup_table
    return [f"{tab.order_of_class(c)}:{c}" for c in range(tab.n_classes)]


def cmd_marks(args):
    G = make_named(args.group, bound=args.bound)
    marks = table_of_marks(G)
    names = _class_names(G)
    headers = ["[G/K]"] + names
    rows = [[names[i]] + [format_value(v) for v in row] for i, row in enumerate(marks)]
    emit_table(headers, rows, args.format)
    return 0


def cmd_idempotents(args):
    G = make_named(args.group, bound=args.bound)
    tab = G.subgroup_table
    names = _class_names(G)
    headers = ["e_H \\ [G/K]"] + names
    rows = []
    for c in range(tab.n_classes):
        e = idempotent(G, c)
        rows.append([names[c]] + [format_value(e.coeffs.get(k, Fraction(0)))
                                  for k in range(tab.n_classes)])
    emit_table(headers, rows, args.format)
    return 0


def _find_normal_subgroup(G, spec, bound):
    N = make_named(spec, bound=bound)
    tab = G.subgroup_table
    hits = []
    for i in range(tab.n_subgroups):
        if not tab.normal_flags[i] or len(tab.subgroups[i]) != N.order:
            continue
        K, _, _ = G.as_subgroup_group(tab.class_reps[tab.fusion[i]])
        ok, _ = is_isomorphic(K, N)
        if ok:
            hits.append(i)
    if not hits:
        raise ParseError(f"no normal subgroup of {args_name(G)} isomorphic to {spec}")
    reps = {tab.fusion[i] for i in hits}
    if len(reps) > 1:
        raise ParseError(f"ambiguous normal subgroup {spec}: {len(reps)} conjugacy classes match")
    return hits[0]


def args_name(G):
    return G.name or f"group of order {G.order}"


def cmd_deflation(args):
    G = make_named(args.group, bound=args.bound)
    n_idx = _find_normal_subgroup(G, args.normal, args.bound)
    m = deflation_number(G, n_idx)
    if args.format == "json":
        print(json.dumps({"group": args.group, "normal": args.normal,
                          "deflation_number": format_value(m)}, sort_keys=True))
    else:
        print(format_value(m))
    return 0


def cmd_classify(args):
    H = make_named(args.group, bound=args.bound)
    p = args.p or 2
    tab = H.subgroup_table
    headers = ["class", "order", "cyclic", "beta_delta", "beta"]
    rows = []
    for c in range(tab.n_classes):
        K, _, _ = H.as_subgroup_group(tab.class_reps[c])
        rec = beta_delta(K, p)
        rows.append([f"{c}", str(K.order), "yes" if K.is_cyclic else "no",
                     rec.beta_label, rec.classical_label])
    emit_table(headers, rows, args.format)
    return 0


_WORD_RE = re.compile(r"^(res|ind|inf|def|id)\[([^\]]*)\]$")


def _parse_biset_word(text, p, bound):
    """Expressions like `ind[S3,C3] . res[S3,C3]`, composed left to right."""
    factors = [t.strip() for t in text.split(".")]
    elts = []
    local = {}

    def get_group(spec):
        if spec not in local:
            local[spec] = make_named(spec, bound=bound)
        return local[spec]

    for tok in factors:
        m = _WORD_RE.match(tok)
        if not m:
            raise ParseError(f"bad factor {tok!r}; use kind[G,H] with kind in res/ind/inf/def/id")
        kind, argstr = m.group(1), m.group(2)
        parts = [a.strip() for a in argstr.split(",", 1)]
        G = get_group(parts[0])
        if kind == "id":
            elts.append(elementary("iso", (G, G, tuple(range(G.order))), p))
            continue
        if len(parts) != 2:
            raise ParseError(f"{kind} needs two arguments, got {tok!r}")
        if kind in ("res", "ind"):
            sub_spec = make_named(parts[1], bound=bound)
            tab = G.subgroup_table
            hits = []
            for c in range(tab.n_classes):
                K, _, _ = G.as_subgroup_group(tab.class_reps[c])
                if K.order == sub_spec.order:
                    ok, _ = is_isomorphic(K, sub_spec)
                    if ok:
                        hits.append(c)
            if not hits:
                raise ParseError(f"no subgroup of {parts[0]} isomorphic to {parts[1]}")
            if len(hits) > 1:
                raise ParseError(f"ambiguous subgroup {parts[1]} in {parts[0]}: "
                                 f"classes {hits}; refine the spec")
            elts.append(elementary(kind, (G, tab.class_reps[hits[0]]), p))
        else:
            n_idx = _find_normal_subgroup(G, parts[1], bound)
            elts.append(elementary(kind, (G, n_idx), p))
    out = elts[0]
    for e in elts[1:]:
        out = compose(out, e)
    return out


def cmd_biset(args):
    x = _parse_biset_word(args.expr, args.p, args.bound)
    basis = goursat_basis(x.target, x.source, args.p)
    headers = ["class", "|L|", "|q|", "coefficient"]
    rows = []
    for cls in basis:
        v = x.coeffs.get(cls, Fraction(0))
        if v or args.all:
            rows.append([str(cls.index), str(len(cls.L)), str(cls.q_order), format_value(v)])
    emit_table(headers, rows, args.format)
    return 0


def cmd_charfun(args):
    m = args.modulus
    chars = unit_characters(m)
    if args.xi is not None:
        if not 0 <= args.xi < len(chars):
            raise ParseError(f"xi index out of range; mod {m} has {len(chars)} characters")
        chars = [chars[args.xi]]
    if args.n:
        chars = [xi for xi in chars if xi.is_primitive()]
        if not chars:
            raise ParseError(f"no primitive characters mod {m} (xi_mnp needs one)")
    rows = []
    if args.n:
        if not args.p:
            raise ParseError("--n needs --p")
        order = m * args.p ** args.n
    else:
        order = m
    G = make_named(f"C{order}", bound=args.bound)
    res, _ = G.residue_maps
    headers = ["xi"] + [f"x={res[cls[0]]}" for cls in G.conjugacy_classes]
    for xi in chars:
        f = (xi_mnp(m, args.n, args.p, xi, group=G) if args.n
             else dirichlet_tilde(m, xi, group=G))
        rows.append([str(xi.exps)] + [format_value(v) for v in f.values])
    emit_table(headers, rows, args.format)
    return 0


def cmd_simple_dim(args):
    G0 = make_named(args.group0, bound=args.bound)
    H = make_named(args.at, bound=args.bound)
    if args.char == "trivial":
        label = SimpleLabel.trivial(G0)
    else:
        if not G0.is_cyclic:
            raise ParseError("--char exponents require a cyclic --group0; use 'trivial'")
        exps = tuple(int(t) for t in args.char.split(",") if t.strip())
        from .charfun import UnitCharacter

        label = SimpleLabel.from_unit_character(G0, UnitCharacter(G0.order, exps))
    flavor = None if args.classical else args.p
    if flavor is None and not args.classical:
        raise ParseError("--p is required unless --classical is given")
    d = simple_dim(label, H, flavor, bound=args.bound)
    if args.format == "json":
        print(json.dumps({"group0": args.group0, "char": args.char, "at": args.at,
                          "p": args.p, "classical": bool(args.classical), "dim": d},
                         sort_keys=True))
    else:
        print(d)
    return 0


def cmd_verify(args):
    kwargs = {}
    if args.theorem not in ("thm-9.3", "thm-9.7", "properties"):
        kwargs["primes"] = tuple(args.p_list) if args.p_list else verify_mod.DEFAULT_PRIMES
    if args.max_order:
        kwargs["max_order"] = args.max_order
    if args.theorem == "all":
        ids = list(CRITERIA)
    else:
        ids = [args.theorem]
    ok = True
    reports = []
    for tid in ids:
        key = ALIASES.get(tid, tid)
        per_kwargs = dict(kwargs)
        if key in ("thm-9.3", "thm-9.7", "properties"):
            per_kwargs.pop("primes", None)
        rep = run_criterion(key, **per_kwargs)
        reports.append(rep)
        ok = ok and rep.passed
        if args.format != "json":
            print(rep.summary())
            for r in rep.to_json()["failures"]:
                print(f"  FAIL {r['group']} [{r['check']}]: "
                      f"expected {r['expected']}, computed {r['computed']}")
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2))
    return 0 if ok else 1


def cmd_cache(args):
    d = cache_dir()
    if args.action == "stats":
        if not d or not os.path.isdir(d):
            print("cache: disabled (set --cache-dir or BISETFUN_CACHE_DIR)")
            return 0
        files = [f for f in os.listdir(d) if f.startswith("table-")]
        size = sum(os.path.getsize(os.path.join(d, f)) for f in files)
        print(f"cache: {len(files)} tables, {size} bytes at {d}")
        return 0
    if args.action == "clear":
        if d and os.path.isdir(d):
            for f in os.listdir(d):
                if f.startswith("table-") and f.endswith(".json"):
                    os.remove(os.path.join(d, f))
            print(f"cache cleared at {d}")
        else:
            print("cache: nothing to clear")
        return 0
    raise ParseError(f"unknown cache action {args.action!r}")


def _global_flags(ap, suppress):
    d = argparse.SUPPRESS if suppress else None
    ap.add_argument("--p", type=int, default=d if suppress else None,
                    help="prime for the p-bifree flavor")
    ap.add_argument("--bound", type=int, default=d if suppress else 200,
                    help="group order bound")
    ap.add_argument("--format", choices=["text", "json", "csv"],
                    default=d if suppress else "text")
    ap.add_argument("--cache-dir", default=d if suppress else None,
                    help="subgroup-table cache directory")


def build_parser():
    ap = argparse.ArgumentParser(prog="bisetfun",
                                 description="Exact Burnside/biset computations and "
                                             "theorem verification at desk scale.")
    _global_flags(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("marks", parents=[common], help="table of marks of a group")
    s.add_argument("--group", required=True)
    s.set_defaults(fn=cmd_marks)

    s = sub.add_parser("idempotents", parents=[common], help="idempotent coefficient table")
    s.add_argument("--group", required=True)
    s.set_defaults(fn=cmd_idempotents)

    s = sub.add_parser("deflation", parents=[common], help="deflation number m_{G,N}")
    s.add_argument("--group", required=True)
    s.add_argument("--normal", required=True)
    s.set_defaults(fn=cmd_deflation)

    s = sub.add_parser("classify", parents=[common],
                       help="beta classification of subgroup classes")
    s.add_argument("--group", required=True)
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("biset", parents=[common],
                       help="expand an elementary word in the Goursat basis")
    s.add_argument("expr", help="e.g. 'ind[S3,C3] . res[S3,C3]'")
    s.add_argument("--all", action="store_true", help="print zero coefficients too")
    s.set_defaults(fn=cmd_biset)

    s = sub.add_parser("charfun", parents=[common], help="Dirichlet class-function tables")
    s.add_argument("--modulus", type=int, required=True)
    s.add_argument("--xi", type=int, default=None, help="character index")
    s.add_argument("--n", type=int, default=0, help="p-power exponent for xi_{m,n,p}")
    s.set_defaults(fn=cmd_charfun)

    s = sub.add_parser("simple-dim", parents=[common],
                       help="dimension of a simple functor evaluation")
    s.add_argument("--group0", required=True)
    s.add_argument("--char", default="trivial")
    s.add_argument("--at", required=True)
    s.add_argument("--classical", action="store_true")
    s.set_defaults(fn=cmd_simple_dim)

    s = sub.add_parser("verify", parents=[common], help="run a theorem verification")
    s.add_argument("theorem", help=f"one of {sorted(CRITERIA)} (or 'all')")
    s.add_argument("--p-list", type=int, nargs="*", default=None)
    s.add_argument("--max-order", type=int, default=None,
                   help="restrict the corpus to groups of at most this order")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("cache", parents=[common], help="subgroup-table cache maintenance")
    s.add_argument("action", choices=["clear", "stats"])
    s.set_defaults(fn=cmd_cache)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.cache_dir:
        set_cache_dir(args.cache_dir)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
