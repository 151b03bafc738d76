"""Command line interface.

Exit codes: 0 ok, 1 property failure, 2 usage or malformed input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bijections, checks, enumeration, lego, series, transfer
from ._validation import DEFAULT_BUDGET, BudgetExceeded, check_positive
from .heap import pyramid_from_json, render_ascii

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
REPRESENTATIONS = ("string", "pyramid", "walk", "path", "tree")


class UsageError(ValueError):
    pass


def parse_range(text):
    """``"2..5"`` -> [2, 3, 4, 5]; ``"2,4"`` -> [2, 4]; ``"3"`` -> [3]; reversed ranges are empty."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected e.g. 2..5 or 2,3") from None
    return out


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(text, out=None):
    if out:
        path = Path(out)
        try:
            path.write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text if text.endswith("\n") or not text else text + "\n")


# count / enumerate

def cmd_count(args):
    check_positive(args.m, "m")
    if args.cls == "flat":
        n = lego.count_flat_exhaustive(args.a, args.m, budget=args.budget)
        print(n)
        if args.verify == "enum":
            other = lego.count_flat_exhaustive(args.a, args.m, method="levels", budget=args.budget)
            print("verified" if other == n else f"MISMATCH: level-row generator gives {other}")
            return EXIT_OK if other == n else EXIT_FAIL
        return EXIT_OK
    cls = enumeration.PyramidClass(args.cls, args.s)
    n = cls.expected_count(args.a, args.m)
    print(n)
    if args.verify == "enum":
        got = enumeration.count_pyramids(args.a, args.m, cls, budget=args.budget, threads=args.threads)
        print("verified" if got == n else f"MISMATCH: enumeration gives {got}")
        return EXIT_OK if got == n else EXIT_FAIL
    return EXIT_OK


def cmd_enumerate(args):
    cls = enumeration.PyramidClass(args.cls, args.s)
    chunks = []
    for i, p in enumerate(enumeration.enumerate_pyramids(args.a, args.m, cls, budget=args.budget)):
        if args.limit is not None and i >= args.limit:
            break
        chunks.append(render_ascii(p) + "\n" if args.format == "ascii" else _dump(p.to_json()))
    _emit("\n".join(chunks), args.out)
    return EXIT_OK


# convert

def _read_input(args):
    text = args.input if args.input is not None else sys.stdin.read()
    return text.strip()


def _parse(kind, text, a):
    if kind == "string":
        return text
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        if kind in ("walk", "path"):
            obj = text  # bare bits or U/D steps
        else:
            raise UsageError(f"input is not valid JSON for {kind}") from None
    if kind == "pyramid":
        p = pyramid_from_json(obj)
        if p.a != a:
            raise UsageError(f"pyramid has a={p.a}, expected {a}")
        return p
    if kind == "walk":
        if isinstance(obj, str):
            return bijections.Walk(a, obj)
        return bijections.Walk(a, obj["bits"], int(obj.get("start", 0)))
    if kind == "path":
        steps = obj if isinstance(obj, str) else obj["steps"]
        return bijections.LatticePath(a, steps)
    tree_obj = obj["tree"] if isinstance(obj, dict) else obj
    return bijections.AryTree.from_json(tree_obj)


def _to_bits(kind, value, a):
    if kind == "string":
        return value
    if kind == "walk":
        if value.start != 0:
            raise UsageError("only walks from 0 correspond to strings")
        return value.bits
    if kind == "path":
        return bijections.path_to_walk(value).bits
    if kind == "tree":
        return bijections.path_to_walk(bijections.tree_to_dyck(value, a)).bits
    return _pyramid_to_bits(value, a)


def _pyramid_to_bits(p, a):
    if a == 2:
        return bijections.pyramid_to_string_a2(p)
    if p.is_right(0):
        return bijections.right_pyramid_to_string(p)
    raise UsageError("pyramid/string conversion for a >= 3 is only defined for right 0-pyramids; "
                     "the full correspondence is specific to a = 2")


def _from_bits(kind, bits, a):
    if kind == "string":
        return bits
    if kind == "walk":
        return bijections.Walk(a, bits)
    if kind in ("path", "tree"):
        path = bijections.walk_to_path(bijections.Walk(a, bits))
        if not path.is_dyck():
            raise UsageError("string is not positive, so it has no Dyck path or tree")
        return path if kind == "path" else bijections.dyck_to_tree(path)
    if a == 2:
        return bijections.string_to_pyramid_a2(bits)
    if bijections.is_positive_string(bits, a):
        return bijections.string_to_right_pyramid(bits, a)
    raise UsageError("only positive strings map to pyramids for a >= 3; "
                     "the full correspondence is specific to a = 2")


def _render(kind, value, a):
    if kind == "string":
        return value
    if kind == "pyramid":
        return _dump(value.to_json())
    if kind == "walk":
        return _dump({"schema_version": 1, "a": a, "bits": value.bits, "start": value.start,
                      "sites": value.all_sites})
    if kind == "path":
        return _dump({"schema_version": 1, "a": a, "steps": value.steps})
    return _dump({"schema_version": 1, "a": a, "tree": None if value is None else value.to_json()})


def convert(src_kind, dst_kind, text, a):
    value = _parse(src_kind, text, a)
    bits = _to_bits(src_kind, value, a)
    return _from_bits(dst_kind, bits, a), value


def cmd_convert(args):
    text = _read_input(args)
    out, value = convert(args.src, args.dst, text, args.a)
    rendered = _render(args.dst, out, args.a)
    print(rendered)
    if args.roundtrip:
        back, _ = convert(args.dst, args.src, rendered, args.a)
        same = _render(args.src, back, args.a) == _render(args.src, value, args.a)
        print("roundtrip: identical" if same else "roundtrip: DIFFERENT", file=sys.stderr)
        return EXIT_OK if same else EXIT_FAIL
    return EXIT_OK


# verify / report

def cmd_verify(args):
    try:
        results = checks.run_suite(args.suite, args.a, args.m, args.threads)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}") from None
    ok = all(c.ok for c in results)
    summary = {"schema_version": 1, "suite": args.suite, "passed": ok,
               "checks": len(results), "failed": [c.to_json() for c in results if not c.ok]}
    if args.details:
        summary["results"] = [c.to_json() for c in results]
    print(json.dumps(summary, indent=1))
    return EXIT_OK if ok else EXIT_FAIL


def _table(kind, args):
    a_values = args.a if args.a is not None else [2]
    M = args.M
    rows = []
    plot = []
    if kind == "counts":
        header = ["a", "m", "A_m", "B_m", "C_m"]
        for a in a_values:
            B = [series.count_B(a, m) for m in range(1, M + 1)]
            C = series.series_C(a, M, series.SeriesTable(a, "B", B)).coeffs if M else []
            for m in range(1, M + 1):
                rows.append([a, m, series.count_A(a, m), B[m - 1], C[m - 1]])
    elif kind == "bivariate":
        header = ["a", "m", "n", "B_mn"]
        for a in a_values:
            if M:
                for m, row in enumerate(series.series_B_bivariate(a, M).rows, start=1):
                    rows.extend([a, m, n, c] for n, c in enumerate(row))
    elif kind == "widths":
        header = ["a", "m", "average_width", "asymptote", "ratio"]
        for a in a_values:
            if M:
                for m, exact, asym, ratio in series.width_ratio_table(a, M, args.step):
                    rows.append([a, m, float(exact), asym, ratio])
                    plot.append((m, ratio))
    elif kind == "asymptotics":
        header = ["a", "m", "log_B", "log_stirling", "ratio"]
        for a in a_values:
            for r in series.asymptotic_report(a, range(1, M + 1, args.step)):
                rows.append([a, r.m, r.log_exact, r.log_asymptote, r.ratio])
                plot.append((r.m, r.ratio))
    elif kind == "lego":
        rep = lego.growth_report(a_values, args.mc_sizes, args.samples, args.seed)
        header = ["a", "lower_bound", "klarner_depth1_root", "conjecture", "fit_H", "k_a"]
        for r in rep["rows"]:
            rows.append([r["a"], r["lower_bound"], r["klarner_depth1_root"], r["conjecture"],
                         r.get("fit_H", ""), r.get("k_a", "")])
        return header, rows, plot, rep["context"]
    else:
        raise UsageError(f"unknown report {kind!r}")
    return header, rows, plot, []


def cmd_report(args):
    header, rows, plot, context = _table(args.kind, args)
    if args.format == "json":
        text = json.dumps({"schema_version": 1, "report": args.kind, "columns": header,
                           "rows": [[str(x) if isinstance(x, int) and x > 2**53 else x for x in r] for r in rows],
                           "context": context}, indent=1)
    else:
        text = "".join(f"# {line}\n" for line in context) + series.dumps_table(rows, header, "csv")
    _emit(text, args.out)
    if args.plot_data:
        _emit("x,y\n" + "".join(f"{x},{y}\n" for x, y in plot), args.plot_data)
    return EXIT_OK


def cmd_bfile(args):
    a, M = args.a, args.M
    if args.seq == "A":
        table = series.series_A_recursive(a, M)
    elif args.seq == "B":
        table = series.series_B_from_A(series.series_A_recursive(a, M))
    elif args.seq == "C":
        table = series.series_C(a, M)
    else:
        table = series.SeriesTable(a, "L", [lego.count_flat_exhaustive(a, m, budget=args.budget)
                                            for m in range(1, M + 1)])
    _emit(table.to_bfile(), args.out)
    return EXIT_OK


def cmd_transfer(args):
    _emit(transfer.dump_json(args.a), args.out)
    return EXIT_OK


def cmd_mc(args):
    est = lego.mc_estimate(args.a, args.m, args.samples, args.seed, args.mode)
    print(json.dumps(est.to_json(), indent=1))
    return EXIT_OK


# parser

def build_parser():
    p = argparse.ArgumentParser(prog="pyramids", description="Enumerate and verify pyramids of pieces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, a_default=None):
        sp.add_argument("--a", type=int, required=a_default is None, default=a_default,
                        help="piece length (a >= 2)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of objects an exhaustive run may visit")
        sp.add_argument("--threads", type=int, default=1, help="worker processes (1 = deterministic path)")

    c = sub.add_parser("count", help="exact counts, optionally checked by enumeration")
    common(c)
    c.add_argument("--m", type=int, required=True, help="number of pieces")
    c.add_argument("--class", dest="cls", choices=["general", "right", "left", "flat"], default="general")
    c.add_argument("--s", type=int, default=0, help="offset s for right/left s-pyramids")
    c.add_argument("--verify", choices=["enum"], help="cross-check against exhaustive enumeration")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list pyramids as JSON lines or ASCII drawings")
    common(e)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--class", dest="cls", choices=["general", "right", "left"], default="general")
    e.add_argument("--s", type=int, default=0)
    e.add_argument("--format", choices=["json", "ascii"], default="json")
    e.add_argument("--limit", type=int, help="stop after this many pyramids")
    e.add_argument("--out", help="write to this file instead of stdout")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("convert", help="convert between strings, pyramids, walks, paths and trees")
    v.add_argument("--a", type=int, required=True)
    v.add_argument("--from", dest="src", choices=REPRESENTATIONS, required=True)
    v.add_argument("--to", dest="dst", choices=REPRESENTATIONS, required=True)
    v.add_argument("--roundtrip", action="store_true", help="convert back and compare with the input")
    v.add_argument("input", nargs="?", help="bit string or JSON object (default: stdin)")
    v.set_defaults(func=cmd_convert)

    f = sub.add_parser("verify", help="run property suites; exit 1 on failure")
    f.add_argument("--suite", choices=sorted(checks.SUITES) + sorted(checks.ALIASES) + ["all"], default="all")
    f.add_argument("--a", type=parse_range, help="piece lengths, e.g. 2..5")
    f.add_argument("--m", "--r", dest="m", type=int,
                   help="size limit (pieces, series order, or r for transfer)")
    f.add_argument("--threads", type=int, default=1)
    f.add_argument("--details", action="store_true", help="list every check in the summary")
    f.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="CSV/JSON tables of counts, widths, asymptotics and growth bounds")
    r.add_argument("--kind", choices=["counts", "bivariate", "widths", "asymptotics", "lego"], default="counts")
    r.add_argument("--a", type=parse_range, help="piece lengths, e.g. 2..8")
    r.add_argument("--M", type=int, default=20, help="largest size")
    r.add_argument("--step", type=int, default=1, help="stride in m for widths/asymptotics")
    r.add_argument("--format", choices=["csv", "json"], default="csv")
    r.add_argument("--out", help="output file (default stdout)")
    r.add_argument("--plot-data", help="also write x,y columns to this file")
    r.add_argument("--samples", type=int, default=0, help="Monte Carlo samples per size (lego report)")
    r.add_argument("--mc-sizes", type=parse_range, default=None, help="sizes for the Monte Carlo fit")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_report)

    b = sub.add_parser("bfile", help="export a sequence in b-file format ('n a(n)' per line)")
    common(b)
    b.add_argument("--seq", choices=["A", "B", "C", "L"], default="B")
    b.add_argument("--M", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bfile)

    t = sub.add_parser("transfer", help="JSON dump of the transfer matrices and witness vectors")
    t.add_argument("--a", type=int, required=True)
    t.add_argument("--out")
    t.set_defaults(func=cmd_transfer)

    mc = sub.add_parser("mc", help="Monte Carlo estimate of pyramid or flat-structure counts")
    mc.add_argument("--a", type=int, required=True)
    mc.add_argument("--m", type=int, required=True)
    mc.add_argument("--samples", type=int, default=1000)
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--mode", choices=["pyramid", "flat"], default="pyramid")
    mc.set_defaults(func=cmd_mc)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
