"""Command-line front end.

Exit status: 0 on success, 1 when a validation or oracle run fails, 2 on
usage errors (including malformed JSON input).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import lattice as zl
from . import oracles
from .blocks import BLOCK_IDS, FAULTS, block_id, block_of, validate_partition
from .diagram import FORMATS, emit_square
from .subgroups import enumerate_subgroups, from_json as subgroup_from_json
from .weyl import AMBIENTS, count_full_classes, fuse, normalizer, weyl

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _load_json(text: str):
    """Inline JSON, '@path' for a file, or '-' for stdin."""
    try:
        if text == "-":
            return json.load(sys.stdin)
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {text[1:]!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _subgroup(text):
    data = _load_json(text)
    try:
        return subgroup_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad subgroup descriptor: {exc}") from exc


def _lattice(text):
    data = _load_json(text)
    if isinstance(data, list):
        data = {"basis": data}
    try:
        return zl.DualLattice.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad lattice: {exc}") from exc


class Output:
    def __init__(self, args):
        self.json = args.json
        self.command = args.command if args.command != "oracle" else f"oracle {args.which}"

    def emit(self, result, lines):
        if self.json:
            doc = {"command": self.command, "version": SCHEMA_VERSION, "result": result}
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            for line in lines:
                print(line)


# -- subcommands -------------------------------------------------------------------------

def cmd_enumerate_lattices(args, out):
    rows = zl.enumerate_invariant(args.max_index)
    result = [{"lattice": lat.to_json(), "class": cls.to_json(), "label": str(cls),
               "index": zl.index(lat)} for lat, cls in rows]
    out.emit(result, [f"{r['label']}\tindex {r['index']}\t{r['lattice']['basis']}" for r in result]
             + [f"{len(result)} lattices"])
    return 0


def cmd_classify_lattice(args, out):
    lat = _lattice(args.lattice)
    cls = zl.classify(lat)
    out.emit({"lattice": lat.to_json(), "class": cls.to_json(), "label": str(cls)}, [str(cls)])
    return 0


def cmd_enumerate_subgroups(args, out):
    subs = enumerate_subgroups(args.truncation)
    if args.block:
        subs = [k for k in subs if block_id(k) == args.block]
    result = [{"subgroup": k.to_json(), "label": str(k), "block": block_id(k)} for k in subs]
    out.emit(result, [f"{r['label']}\t{r['block']}" for r in result] + [f"{len(result)} subgroups"])
    return 0


def cmd_block_of(args, out):
    k = _subgroup(args.subgroup)
    b = block_of(k)
    out.emit({"subgroup": k.to_json(), "block": b.id, "dominant": b.dominant.to_json(),
              "dimension": b.dimension}, [b.id])
    return 0


def cmd_validate_partition(args, out):
    rule = FAULTS[args.fault] if args.fault else None
    rep = validate_partition(args.truncation, rule)
    result = rep.to_json()
    result["fault"] = args.fault
    lines = [f"truncation {rep.truncation}: {'ok' if rep.ok else 'FAILED'}",
             "blocks: " + ", ".join(f"{b}={n}" for b, n in rep.blocks.items()),
             f"pairs checked: {rep.pairs_checked}"]
    lines += [f"violation: {v['kind']}" for v in rep.violations[:20]]
    out.emit(result, lines)
    return 0 if rep.ok else 1


def cmd_weyl(args, out):
    k = _subgroup(args.subgroup)
    w = weyl(k, args.ambient)
    out.emit({"subgroup": k.to_json(), "ambient": args.ambient, **w.to_json(),
              "finite": w.is_finite},
             [f"identity rank {w.identity_rank}, component group {w.component_group}"])
    return 0


def cmd_normalizer(args, out):
    k = _subgroup(args.subgroup)
    big = normalizer(k, args.ambient)
    out.emit({"subgroup": k.to_json(), "ambient": args.ambient, "normalizer": big.to_json(),
              "label": str(big)}, [str(big)])
    return 0


def cmd_fuse(args, out):
    a, b = _subgroup(args.first), _subgroup(args.second)
    same = fuse(a, b)
    out.emit({"first": a.to_json(), "second": b.to_json(), "conjugate": same},
             ["conjugate" if same else "not conjugate"])
    return 0


def cmd_count_classes(args, out):
    try:
        a = count_full_classes(args.group, "preimage")
        b = count_full_classes(args.group, "U2")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out.emit({"group": args.group, "a": a, "b": b}, [f"a = {a}", f"b = {b}"])
    return 0


def cmd_oracle(args, out):
    if args.which == "normalizer":
        if args.subgroup is not None:
            rows = [_oracle_one(_subgroup(args.subgroup), args.level)]
        else:
            rows = oracles.normalizer_sweep(args.max_m, args.max_n)
        bad = [r for r in rows if not r["agree"]]
        out.emit({"rows": rows, "checked": len(rows), "mismatches": len(bad)},
                 [f"checked {len(rows)} descriptors, {len(bad)} mismatches"])
        return 1 if bad else 0
    tol = args.tol if args.tol is not None else 1e-6
    res = oracles.unitary_fusion_sample(args.trials, tol=tol, seed=args.seed)
    out.emit(res, [f"{res['tested']} tested, {res['rejected_in_N']} in N, "
                   f"{res['violations']} violations (tol {tol}, seed {args.seed})"])
    return 1 if res["violations"] else 0


def _oracle_one(k, level):
    model = oracles.FiniteModel(level or oracles.default_level(k))
    try:
        gens = oracles.descriptor_generators(model, k)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc
    got = oracles.oracle_normalizer(model, gens)
    big = normalizer(k, "N")
    want = oracles.predicted_order(model, big)
    return {"subgroup": k.to_json(), "normalizer": big.to_json(), "level": model.level,
            "oracle_order": got, "predicted_order": want, "agree": got == want}


def cmd_validate_object(args, out):
    from .models import load_object, validate_object
    data = _load_json(args.object)
    try:
        obj = load_object(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad model object: {exc}") from exc
    rep = validate_object(obj)
    out.emit(rep.to_json(), [rep.verdict] + [f"  {f}" for f in rep.failures[:20]]
             + [f"  inconclusive: {f}" for f in rep.inconclusive[:20]])
    return 0 if rep.ok else 1


def cmd_restrict_easy(args, out):
    from .models import validate_type1
    from .models.restrict import restrict_easy_block
    from .models.type1 import Type1Object
    data = _load_json(args.object)
    try:
        obj = Type1Object.from_json(data)
        res = restrict_easy_block(obj, args.group)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot restrict: {exc}") from exc
    rep = validate_type1(res)
    out.emit({"object": res.to_json(), "report": rep.to_json()},
             [f"{len(res.points)} points: " + ", ".join(p.label for p in res.points),
              f"restricted object: {rep.verdict}"])
    return 0 if rep.ok else 1


def cmd_enumerate_flags(args, out):
    from .models.flags import enumerate_flags
    flags = enumerate_flags(args.truncation, args.ambient)
    result = [f.to_json() for f in flags]
    out.emit(result, [" < ".join(r["classes"]) + f"\t{r['ring']}\t{r['component']}"
                      for r in result] + [f"{len(result)} flags"])
    return 0


def cmd_diagram(args, out):
    doc = emit_square(args.truncation, args.format, args.block)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc)
    if args.json:
        out.emit({"block": args.block, "format": args.format, "truncation": args.truncation,
                  "document": doc, "output": args.output}, [])
    elif not args.output:
        sys.stdout.write(doc)
    return 0


# -- parser ---------------------------------------------------------------------------------

def _global_flags(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="machine-readable output")
    parser.add_argument("--seed", type=int, default=d if suppress else 0)
    parser.add_argument("--truncation", type=int, default=d if suppress else 6)
    parser.add_argument("--tol", type=float, default=d)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="u2model", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("enumerate-lattices", cmd_enumerate_lattices, "W-invariant lattices by index")
    p.add_argument("--max-index", type=int, required=True)
    p = add("classify-lattice", cmd_classify_lattice, "name a lattice given by a basis")
    p.add_argument("lattice", help='JSON basis, e.g. [[1,1],[0,2]] or {"basis": ...}')
    p = add("enumerate-subgroups", cmd_enumerate_subgroups, "descriptors up to a truncation")
    p.add_argument("--block", choices=list(BLOCK_IDS))
    p = add("block-of", cmd_block_of, "block of a subgroup descriptor")
    p.add_argument("subgroup")
    p = add("validate-partition", cmd_validate_partition, "check the seven-block partition")
    p.add_argument("--fault", choices=sorted(FAULTS), help="validate a deliberately broken rule")
    for name, func in (("weyl", cmd_weyl), ("normalizer", cmd_normalizer)):
        p = add(name, func, f"{name} of a subgroup descriptor")
        p.add_argument("subgroup")
        p.add_argument("--ambient", choices=AMBIENTS, default="U2")
    p = add("fuse", cmd_fuse, "are two descriptors conjugate in U(2)")
    p.add_argument("first")
    p.add_argument("second")
    p = add("count-classes", cmd_count_classes, "a(H) and b(H) for an isolated subgroup")
    p.add_argument("group", help="SO3, A5, S4, A4 or D4")
    p = add("oracle", cmd_oracle, "brute-force oracles")
    osub = p.add_subparsers(dest="which", required=True)
    q = osub.add_parser("normalizer", parents=[common])
    q.add_argument("--max-m", type=int, default=6)
    q.add_argument("--max-n", type=int, default=6)
    q.add_argument("--subgroup", help="check one Toral or Full descriptor instead of the sweep")
    q.add_argument("--level", type=int, help="finite model level (default 2 lcm(4m, 4n))")
    q = osub.add_parser("fusion", parents=[common])
    q.add_argument("--trials", type=int, default=10_000)
    p = add("validate-object", cmd_validate_object, "validate a model object (JSON)")
    p.add_argument("object", help="inline JSON, @file or -")
    p = add("restrict-easy", cmd_restrict_easy, "restrict a Type 1 object to p^-1 H")
    p.add_argument("object")
    p.add_argument("--group", required=True, choices=["A5", "S4", "A4", "D4"])
    p = add("enumerate-flags", cmd_enumerate_flags, "cofree flags in the torus block")
    p.add_argument("--ambient", choices=["N", "U2"], default="N")
    p = add("diagram", cmd_diagram, "SVG or DOT picture of a block")
    p.add_argument("--block", default="T", choices=list(BLOCK_IDS))
    p.add_argument("--format", default="svg", choices=FORMATS)
    p.add_argument("--output")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("truncation", "max_index", "trials", "level", "max_m", "max_n"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            print(f"u2model: error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return 2
    if args.tol is not None and args.tol <= 0:
        print("u2model: error: --tol must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args, Output(args))
    except (UsageError, ValueError) as exc:
        print(f"u2model: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
