"""Command-line front end.

Exit status: 0 on success, 1 when a check or verdict fails (a failing
property suite, a pair that is not coalescable, a code that is not
correctable), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bayes, core, harness, measures, structure
from .document import DocumentError, map_columns_json, parse_document


class InputError(Exception):
    pass


def _base_tag(base: float) -> str:
    return f"[base {base:g}]"


def _entropy_line(name: str, value: float, base: float) -> str:
    return f"{name} = {value:.6f} {_base_tag(base)}"


def _format_map(f: core.StochMap, flagged=()) -> list[str]:
    lines = []
    for i, x in enumerate(f.src):
        body = ", ".join(f"{y}: {v}" for y, v in zip(f.tgt, f.column(i)) if v != 0)
        note = "  (uniform fill)" if x in flagged else ""
        lines.append(f"  {x} -> {body}{note}")
    return lines


def _format_space(p: core.ProbSpace) -> str:
    return "{" + ", ".join(f"{lab}: {v}" for lab, v in p.items()) + "}"


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return parse_document(text)


def _pair(doc, a: str, b: str):
    f, g = doc.morphism(a), doc.morphism(b)
    if f.tgt_dist != g.src_dist:
        raise InputError(f"{a} lands in a different space from where {b} starts")
    return f, g


def _emit(args, text_lines, payload):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_entropy(args):
    p = _load(args.file).space(args.space)
    h = measures.shannon_entropy(p, args.base)
    _emit(args, [_entropy_line(f"H({args.space})", h, args.base)],
          {"space": args.space, "entropy": h, "base": args.base})
    return 0


def cmd_condent(args):
    m = _load(args.file).morphism(args.map)
    h = measures.conditional_entropy(m, args.base)
    _emit(args, [_entropy_line(f"H({args.map}|p)", h, args.base)],
          {"map": args.map, "conditional_entropy": h, "base": args.base})
    return 0


def cmd_closs(args):
    m = _load(args.file).morphism(args.map)
    k = measures.conditional_information_loss(m, args.base)
    kc = measures.closs_closed_form(m, args.base)
    _emit(args, [
        _entropy_line(f"K({args.map})", k, args.base) + "  via H(p) - H(q) + H(f|p)",
        _entropy_line(f"K({args.map})", kc, args.base) + "  via joint-mass sum",
    ], {"map": args.map, "K": k, "K_closed_form": kc, "base": args.base})
    return 0


def cmd_invert(args):
    m = _load(args.file).morphism(args.map)
    pair = bayes.bayesian_inverse(m)
    inv = pair.inverse.map
    _emit(args, [f"inverse of {args.map}: {' '.join(m.map.tgt)} -> {' '.join(m.map.src)}"]
          + _format_map(inv, pair.filled),
          {"map": args.map, "inverse": map_columns_json(inv), "uniform_fill": list(pair.filled)})
    return 0


def cmd_compose(args):
    f, g = _pair(_load(args.file), args.first, args.second)
    gf = core.compose(g.map, f.map)
    _emit(args, [f"{args.second} ∘ {args.first}:"] + _format_map(gf),
          {"composite": map_columns_json(gf)})
    return 0


def cmd_coalescable(args):
    f, g = _pair(_load(args.file), args.first, args.second)
    h = structure.find_mediator(f, g)
    if h is not None:
        rows = [f"  h({z}, {x}) = {h.table[a][b]}"
                for a, z in enumerate(h.Z) for b, x in enumerate(h.X)]
        _emit(args, ["coalescable", "mediator:"] + rows,
              {"coalescable": True,
               "mediator": [[z, x, h.table[a][b]] for a, z in enumerate(h.Z)
                            for b, x in enumerate(h.X)]})
        return 0
    z, x, ys = structure.coalescability_witness(f, g)
    _emit(args, ["not coalescable",
                 f"witness: ({z}, {x}, {{{','.join(ys)}}})  several middle labels reach {z} from {x}"],
          {"coalescable": False, "witness": {"z": z, "x": x, "ys": list(ys)}})
    return 1


def cmd_deviation(args):
    f, g = _pair(_load(args.file), args.first, args.second)
    d = measures.functoriality_deviation(f, g, args.base)
    _emit(args, [_entropy_line("deviation", d, args.base)], {"deviation": d, "base": args.base})
    return 0


def cmd_bloom(args):
    m = _load(args.file).morphism(args.map)
    b = structure.bloom(m.map)
    _emit(args, [f"bloom of {args.map}:"] + _format_map(b), {"bloom": map_columns_json(b)})
    return 0


def cmd_factorize(args):
    m = _load(args.file).morphism(args.map)
    first, second = structure.bloom_shriek_factorize(m)
    mid = first.tgt_dist
    lines = ([f"midpoint: {_format_space(mid)}", "bloom:"] + _format_map(first.map)
             + ["projection:"] + _format_map(second.map))
    _emit(args, lines, {
        "midpoint": {lab: str(v) for lab, v in mid.items()},
        "bloom": map_columns_json(first.map),
        "projection": map_columns_json(second.map),
    })
    return 0


def cmd_correctable(args):
    m = _load(args.file).morphism(args.map)
    code = structure.code_from_morphism(m)
    d = structure.is_correctable(code)
    if d is not None:
        rows = [f"  {y} -> {{{','.join(v)}}}" for y, v in d.as_dict().items()]
        _emit(args, ["correctable", "recovery:"] + rows,
              {"correctable": True, "recovery": d.as_dict()})
        return 0
    y, a, b = structure.overlap_witness(code)
    _emit(args, ["not correctable", f"witness: {y} can come from both {a} and {b}"],
          {"correctable": False, "witness": {"y": y, "codewords": [a, b]}})
    return 1


def cmd_propcheck(args):
    names = args.suite or list(harness.SUITES)
    for name in names:
        harness.get_suite(name)
    cfg = harness.GenConfig(seed=args.seed, trials=args.trials, max_size=args.size)
    reports = [harness.run_suite(name, cfg, workers=args.workers) for name in names]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], ensure_ascii=False, indent=2))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}: trials={r.trials} failures={len(r.failures)} "
                  f"max_residual={r.max_residual:.3e}")
            for fail in r.failures[:3]:
                print(f"  trial {fail.trial}: expected {fail.expected}; observed "
                      f"{json.dumps(fail.observed, ensure_ascii=False)}")
                print(f"  witness {json.dumps(fail.witness, ensure_ascii=False)}")
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finstoch",
                                 description="Exact finite stochastic maps and their entropies.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, base=False, help=None):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        for pos in positional:
            sp.add_argument(pos)
        if base:
            sp.add_argument("--base", type=float, default=2.0)
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    add("entropy", cmd_entropy, "space", base=True, help="Shannon entropy of a space")
    add("condent", cmd_condent, "map", base=True, help="conditional entropy H(f|p)")
    add("closs", cmd_closs, "map", base=True, help="conditional information loss, two ways")
    add("invert", cmd_invert, "map", help="canonical Bayesian inverse")
    add("compose", cmd_compose, "first", "second", help="composite second ∘ first")
    add("coalescable", cmd_coalescable, "first", "second", help="mediator or violation")
    add("deviation", cmd_deviation, "first", "second", base=True,
        help="deviation of H from additivity on a pair")
    add("bloom", cmd_bloom, "map", help="bloom matrix X ~> X×Y")
    add("factorize", cmd_factorize, "map", help="bloom-shriek factorization")
    add("correctable", cmd_correctable, "map", help="recovery map for the induced code")

    pc = sub.add_parser("propcheck", help="run seeded property suites")
    pc.add_argument("--suite", action="append", metavar="NAME")
    pc.add_argument("--trials", type=int, default=500)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--size", type=int, default=4, help="largest generated set")
    pc.add_argument("--workers", type=int, default=1)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_propcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if getattr(args, "base", 2.0) <= 1:
        print("error: --base must exceed 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InputError, DocumentError, core.FinStochError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except harness.UnknownSuite as e:
        print(f"error: unknown suite {e.args[0]!r}; known: {', '.join(harness.SUITES)}",
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
