"""Command-line front end.

Every input argument is either a path to a JSON file or an inline JSON
string.  Output is JSON on stdout (``--format text`` gives aligned
key/value lines).  Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import arcs as A
from . import homology as H
from . import oracles as O
from . import partitions as P
from .errors import CaeError, ParseError

DEFAULT_WINDOW = 8


def default_window() -> int:
    raw = os.environ.get("CAE_WINDOW")
    if raw is None:
        return DEFAULT_WINDOW
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"CAE_WINDOW must be an integer, got {raw!r}") from None


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# input helpers


def load_json(text: str) -> Any:
    path = Path(text)
    try:
        if not text.lstrip().startswith(("{", "[")) and path.exists():
            return json.loads(path.read_text(encoding="utf-8"))
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {text!r} ({exc.msg})") from exc
    except OSError as exc:
        raise ParseError(f"cannot read {text!r}: {exc}") from exc


def load_arc(text: str, n: Optional[int]) -> A.Arc:
    obj = load_json(text)
    if isinstance(obj, dict) and "n" in obj:
        n = int(obj["n"])
    if n is None:
        raise ParseError("arc input needs --n or an 'n' key")
    return A.arc_from_json(obj, n)


def load_object(text: str) -> H.DirectSum:
    return H.direct_sum_from_json(load_json(text))


def load_partition(text: str) -> P.Partition:
    return P.partition_from_json(load_json(text))


# output helpers


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, obj


def emit(result: dict, fmt: str, out=sys.stdout) -> None:
    if fmt == "json":
        out.write(json.dumps(result, sort_keys=False) + "\n")
        return
    rows = list(_flatten(result))
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        out.write(f"{k.ljust(width)}  {v if not isinstance(v, (list, dict)) else json.dumps(v)}\n")


# commands


def cmd_arc(args) -> dict:
    op = args.op
    if op == "classify":
        return {"kind": A.classify(load_arc(args.arcs[0], args.n)).value}
    if op == "suspend":
        x = load_arc(args.arcs[0], args.n)
        return {"arc": A.arc_to_json(A.suspend(x, args.j))}
    if op == "localize":
        x = load_arc(args.arcs[0], args.n)
        image = A.localize(x)
        return {"n": x.n // 2, "arc": None if image is None else A.arc_to_json(image)}
    if len(args.arcs) != 2:
        raise UsageError(f"arc {op} needs two arcs")
    x, y = load_arc(args.arcs[0], args.n), load_arc(args.arcs[1], args.n)
    if op == "cross":
        return {"cross": A.crosses(x, y)}
    if op == "ext":
        return {"ext1": A.ext1_dim(x, y), "ext1_reverse": A.ext1_dim(y, x), "hom": A.hom_dim(x, y)}
    cone = A.extension_middle(x, y)
    return {**A.cone_to_json(cone), "triangle": cone.triangle}


def _component_json(c: H.HcComponent, n: int) -> dict:
    return {"arcs": [A.arc_to_json(a) for a in c.summands], "sites": c.site_numbers(n)}


def cmd_hc_decompose(args) -> dict:
    g = load_object(args.object)
    return {"components": [_component_json(c, g.n) for c in H.hc_decompose(g)]}


def cmd_hom_length(args) -> dict:
    g = load_object(args.object)
    res = H.homological_length(g, args.window)
    if isinstance(res, H.Unstable):
        return {"unstable": True, "at_window": res.at_window, "at_double_window": res.at_double}
    return {"length": res}


def cmd_is_generator(args) -> dict:
    return {"generator": H.is_generator(load_object(args.object))}


def cmd_is_minimal(args) -> dict:
    return {"minimal": H.is_minimal_generator(load_object(args.object))}


def cmd_gen_time(args) -> dict:
    res = H.generation_time(load_object(args.object), args.window)
    if isinstance(res, H.LowerBoundOnly):
        return {"lower_bound": res.bound}
    return {"generation_time": res}


def cmd_make(args) -> dict:
    if args.which == "E":
        return H.direct_sum_to_json(H.standard_generator_E(args.n))
    if args.d is None:
        raise UsageError("make M needs --d")
    return H.direct_sum_to_json(H.generator_M(args.n, args.d))


def cmd_lattice(args) -> dict:
    p, q = load_partition(args.p), load_partition(args.q)
    if args.op == "meet":
        r = P.meet_e(p, q) if args.e else P.meet_nnc(p, q)
    else:
        r = P.join_e(p, q) if args.e else P.join_nnc(p, q)
    return P.partition_to_json(r)


def cmd_count(args) -> dict:
    fn = P.nnc_count if args.kind == "nnc" else P.ennc_count
    try:
        return {"count": fn(args.m)}
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args) -> dict:
    if args.kind == "ennc" and args.m % 2:
        raise UsageError("eNNC needs an even ground set size")
    fn = P.enumerate_nnc if args.kind == "nnc" else P.enumerate_ennc
    parts = fn(args.m, args.cap)
    return {"count": len(parts), "partitions": [P.partition_to_json(p)["blocks"] for p in parts]}


def cmd_thick_closure(args) -> dict:
    return P.partition_to_json(P.thick_closure(load_object(args.object)))


def cmd_member(args) -> dict:
    part = load_partition(args.partition)
    x = load_arc(args.arc, part.m // 2 if part.m else None)
    return {"member": P.thick_membership(x, part)}


def cmd_render(args) -> dict:
    from .plotting import RenderSpec, write_svg

    g = load_object(args.object)
    part = None
    if args.partition:
        part = load_partition(args.partition)
        if part.m != 2 * g.n:
            raise P.InvalidPartition(f"partition of [{part.m}] cannot shade a surface with n={g.n}")
    elif args.closure:
        part = P.thick_closure(g)
    labels = [f"{i + 1}" for i in range(len(g))] if args.labels else []
    write_svg(RenderSpec(g.n, g.arcs, labels, part, title=args.title), args.output)
    return {"written": str(args.output), "arcs": len(g)}


# verification suite


def _random_object(rng: random.Random, pool: list[A.Arc], n: int, most: int) -> H.DirectSum:
    return H.DirectSum(n, tuple(rng.choice(pool) for _ in range(rng.randint(1, most))))


def verify_closure(n: int, window: int, samples: int, seed: int) -> dict:
    rng = random.Random(seed)
    pool = H.window_arcs(n, min(3, window // 2))
    inner = H.window_arcs(n, window // 2)
    objects = [H.DirectSum(n, (a,)) for a in pool]
    objects += [_random_object(rng, pool, n, 4) for _ in range(samples)]
    checked, bad = 0, []
    for g in objects:
        closure = O.brute_closure(g, window)
        part = P.thick_closure(g)
        for x in inner:
            checked += 1
            if (x in closure) != P.thick_membership(x, part):
                bad.append({"object": H.direct_sum_to_json(g), "arc": A.arc_to_json(x), "closure": x in closure})
    return {"objects": len(objects), "checked": checked, "failures": bad}


def verify_pairs(n: int, window: int, samples: int, seed: int) -> dict:
    # offsets strictly below window/2, so crossing shifts of any pair fit in the window
    pool = H.window_arcs(n, (window - 1) // 2)
    checked, bad = 0, []
    for i, x in enumerate(pool):
        for y in pool[i:]:
            checked += 1
            if O.ext_graph_connected(x, y, window) != H.hc_connected_pair(x, y):
                bad.append({"x": A.arc_to_json(x), "y": A.arc_to_json(y)})
    return {"checked": checked, "failures": bad}


def oracle_length(g: H.DirectSum, window: int) -> float:
    """Largest oracle zig-zag distance from a summand to a shift of a summand."""
    best = 0
    half = window // 2
    for x in g.arcs:
        for y in g.arcs:
            for s in range(-half, half + 1):
                best = max(best, O.zigzag_distance(x, A.suspend(y, s), window, through=g))
    return best


def verify_distances(n: int, window: int, samples: int, seed: int) -> dict:
    checked, bad, rows = 0, [], []
    for d in range(1, max(1, 2 * n - 2) + 1):
        g = H.generator_M(n, d)
        got = H.homological_length(g, max(1, window // 2))
        ref = oracle_length(g, window)
        checked += 1
        rows.append({"d": d, "length": got if isinstance(got, int) else None, "oracle": ref})
        if got != ref:
            bad.append(rows[-1])
    return {"checked": checked, "rows": rows, "failures": bad}


VERIFIERS: dict[str, Callable[[int, int, int, int], dict]] = {
    "closure": verify_closure,
    "pairs": verify_pairs,
    "distances": verify_distances,
}


def _json_safe(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def cmd_verify(args) -> dict:
    report = VERIFIERS[args.check](args.n, args.window, args.samples, args.seed)
    report = _json_safe(report)
    failures = report["failures"]
    summary = {
        "check": args.check,
        "n": args.n,
        "window": args.window,
        "checked": report["checked"],
        "failed": len(failures),
        "pass": not failures,
    }
    if args.out:
        _write_report(Path(args.out), args, summary, report)
        summary["out"] = str(args.out)
    summary["counterexamples"] = failures[:10]
    return summary


def _write_report(out: Path, args, summary: dict, report: dict) -> None:
    from .plotting import RenderSpec, bar_chart_svg, write_svg

    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(json.dumps({**summary, **report}, indent=2) + "\n", encoding="utf-8")
    ok = summary["checked"] - summary["failed"]
    bar_chart_svg(out / "summary.svg", f"verify {args.check}, n={args.n}, W={args.window}", [args.check], [ok], [summary["failed"]])
    for i, fail in enumerate(report["failures"][:5]):
        if "object" in fail:
            g = H.direct_sum_from_json(fail["object"])
            x = A.arc_from_json(fail["arc"], g.n)
            spec = RenderSpec(g.n, g.arcs + (x,), [None] * len(g) + ["?"], P.thick_closure(g))
        elif "x" in fail:
            x, y = A.arc_from_json(fail["x"], args.n), A.arc_from_json(fail["y"], args.n)
            spec = RenderSpec(args.n, (x, y), ["x", "y"])
        else:
            g = H.generator_M(args.n, fail["d"])
            spec = RenderSpec(g.n, g.arcs, title=f"M_{fail['d']}")
        write_svg(spec, out / f"counterexample_{i}.svg")
    if args.check == "distances":
        for d in range(1, max(1, 2 * args.n - 2) + 1):
            g = H.generator_M(args.n, d)
            write_svg(RenderSpec(g.n, g.arcs, partition=P.thick_closure(g), title=f"M_{d}"), out / f"M_{d}.svg")


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cae", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    window = default_window()

    p = sub.add_parser("arc", help="single-arc and arc-pair operations")
    p.add_argument("op", choices=["classify", "suspend", "cross", "ext", "cone", "localize"])
    p.add_argument("arcs", nargs="+", help="arc JSON ({'a': point, 'b': point}) or file")
    p.add_argument("--n", type=int, help="number of accumulation points")
    p.add_argument("--j", type=int, default=1, help="suspension amount")
    p.set_defaults(func=cmd_arc)

    for name, func, helptext in [
        ("hc-decompose", cmd_hc_decompose, "split an object into homologically connected pieces"),
        ("is-generator", cmd_is_generator, "classical generator test"),
        ("is-minimal", cmd_is_minimal, "minimal generator test"),
        ("thick-closure", cmd_thick_closure, "partition labelling the thick closure"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("object")
        p.set_defaults(func=func)

    for name, func in [("hom-length", cmd_hom_length), ("gen-time", cmd_gen_time)]:
        p = sub.add_parser(name)
        p.add_argument("object")
        p.add_argument("--window", type=int, default=window)
        p.set_defaults(func=func)

    p = sub.add_parser("make", help="build E(n) or M_d(n)")
    p.add_argument("which", choices=["E", "M"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("lattice", help="meet or join of two partitions")
    p.add_argument("op", choices=["meet", "join"])
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--e", action="store_true", help="use the even-exclusive operations")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("count")
    p.add_argument("kind", choices=["nnc", "ennc"])
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate")
    p.add_argument("kind", choices=["nnc", "ennc"])
    p.add_argument("m", type=int)
    p.add_argument("--cap", type=int, default=P.ENUMERATION_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("member", help="is an arc in the thick subcategory of a partition")
    p.add_argument("arc")
    p.add_argument("partition")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("render", help="draw an object as SVG")
    p.add_argument("object")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--partition")
    p.add_argument("--closure", action="store_true", help="shade the thick closure")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--title")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="compare library results with the brute-force oracles")
    p.add_argument("check", choices=sorted(VERIFIERS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, default=window)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for report.json and figures")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        result = args.func(args)
    except UsageError as exc:
        emit({"error": "UsageError", "message": str(exc)}, fmt, out)
        return 2
    except CaeError as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, fmt, out)
        return 1
    emit(result, fmt, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
