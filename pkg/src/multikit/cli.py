"""Command-line front end: ``multikit <subcommand> ...``.

Msets travel as JSON (``{"entries": {...}}``), sampled functions as
``x,value`` CSV, lag series as ``lag,value`` CSV and reports as JSON with
sorted keys. Exit status is 1 for malformed input and 2 for operands that are
not aligned.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import density, expr, signal_ops, similarity, transform
from . import mset as ms
from ._format import dumps
from .errors import AlignmentError, MultikitError
from .mfunction import (
    BUILTINS, POINTWISE_OPS, Grid1D, integral, normalize_area, pointwise,
    read_function_csv, sample_builtin, write_function_csv,
)

SIM_KINDS = {
    "jaccard": "jaccard",
    "cosine-l2": "cosine_l2",
    "cosine-sum": "cosine_sum",
    "cosine-inter": "cosine_intersection",
    "common": "common_product",
    "sup": "sup_product",
}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise MultikitError(f"cannot read {path}: {exc.strerror}") from None


def _load_operand(path: str):
    """Mset for ``.json`` files, sampled function otherwise."""
    text = _read(path)
    if path.endswith(".json"):
        return ms.from_json(text)
    return read_function_csv(text)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def parse_grid(text: str) -> Grid1D:
    """``start:end:count`` with ``end`` exclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise MultikitError(f"grid must look like start:end:count, got {text!r}")
    try:
        start, end, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise MultikitError(f"grid must look like start:end:count, got {text!r}") from None
    if n < 1 or not end > start:
        raise MultikitError("grid needs end > start and count >= 1")
    return Grid1D.span(start, end, n)


def _params(pairs: list[str]) -> dict[str, float]:
    out = {}
    for pair in pairs:
        key, sep, val = pair.partition("=")
        if not sep:
            raise MultikitError(f"expected key=value, got {pair!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise MultikitError(f"parameter {key} is not a number") from None
    return out


def cmd_mset(args) -> None:
    a = ms.from_json(_read(args.inputs[0]))
    if args.op == "complement":
        res = ms.complement(a)
    elif args.op == "scale":
        if args.by is None:
            raise MultikitError("scale needs --by")
        res = ms.scale(a, args.by)
    else:
        if len(args.inputs) != 2:
            raise MultikitError(f"{args.op} needs two input files")
        b = ms.from_json(_read(args.inputs[1]))
        res = ms.quotient(a, b) if args.op == "quotient" else ms.combine(args.op, a, b)
    _emit(ms.to_json(res) + "\n", args.output)


def cmd_fn(args) -> None:
    if args.op == "sample":
        if not args.name or not args.grid:
            raise MultikitError("fn sample needs --name and --grid")
        f = sample_builtin(args.name, parse_grid(args.grid), **_params(args.param))
        _emit(write_function_csv(f), args.output)
        return
    if not args.inputs:
        raise MultikitError(f"fn {args.op} needs an input file")
    f = read_function_csv(_read(args.inputs[0]))
    if args.op == "integral":
        _emit(dumps({"integral": integral(f)}), args.output)
        return
    if args.op == "normalize":
        _emit(write_function_csv(normalize_area(f)), args.output)
        return
    g = None
    if args.op not in ("complement", "scale"):
        if len(args.inputs) != 2:
            raise MultikitError(f"{args.op} needs two input files")
        g = read_function_csv(_read(args.inputs[1]))
    _emit(write_function_csv(pointwise(args.op, f, g, args.by)), args.output)


def cmd_sim(args) -> None:
    f = _load_operand(args.inputs[0])
    g = _load_operand(args.inputs[1])
    rep = similarity.report(SIM_KINDS[args.kind], f, g)
    _emit(dumps(rep.as_dict()), args.output)


def cmd_match(args) -> None:
    meta = {"mode": args.mode}
    if args.benchmark:
        if args.inputs:
            raise MultikitError("give either --benchmark or two input files")
        f, g = signal_ops.benchmark()
        meta["benchmark"] = {"version": signal_ops.BENCHMARK_VERSION, "seed": signal_ops.BENCHMARK_SEED}
    else:
        if len(args.inputs) != 2:
            raise MultikitError("match needs a signal file and a template file")
        f = read_function_csv(_read(args.inputs[0]))
        g = read_function_csv(_read(args.inputs[1]))
    series = signal_ops.MATCH_MODES[args.mode](f, g)
    peaks = signal_ops.peak_report(series)
    _emit(signal_ops.write_lag_csv(series), args.output)
    text = dumps({**meta, "peaks": peaks.as_dict()})
    if args.report:
        _emit(text, args.report)
    else:
        sys.stderr.write(text)


def cmd_transform(args) -> None:
    f = read_function_csv(_read(args.input))
    if args.basis != "walsh":
        raise MultikitError(f"unknown basis {args.basis!r}")
    basis = transform.walsh_basis(args.k, f.grid)
    result = transform.greedy_decompose(f, basis, update=args.update)
    _emit(result.to_json(), args.output)


def cmd_cluster(args) -> None:
    if args.iris:
        points = density.load_iris()
    elif args.points:
        points = density.read_points_csv(_read(args.points))
    else:
        raise MultikitError("cluster needs a points file or --iris")
    fields = density.cluster_fields(points, args.bandwidth, args.cells)
    doc = {
        "labels": [f.label for f in fields],
        "bandwidths": [f.bandwidth for f in fields],
        "jaccard": density.cluster_jaccard_matrix(fields).tolist(),
        "multiway": density.cluster_jaccard_multi(fields) if len(fields) >= 3 else None,
    }
    _emit(dumps(doc), args.output)


def cmd_expr(args) -> None:
    env = {}
    for item in args.bind:
        name, sep, path = item.partition("=")
        if not sep or not name:
            raise MultikitError(f"--bind expects name=path, got {item!r}")
        env[name] = _load_operand(path)
    value = expr.eval_text(args.text, env)
    if isinstance(value, ms.Mset):
        _emit(ms.to_json(value) + "\n", args.output)
    else:
        _emit(write_function_csv(value), args.output)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors (1); 2 is reserved for misalignment
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multikit", description="Signed multiset algebra on msets and sampled functions.")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="output file (default: standard output)")

    sp = sub.add_parser("mset", help="combine msets given as JSON files")
    sp.add_argument("op", choices=list(ms.COMBINE_OPS) + ["quotient", "complement", "scale"])
    sp.add_argument("inputs", nargs="+", metavar="FILE")
    sp.add_argument("--by", type=float, help="factor for scale")
    out(sp)
    sp.set_defaults(func=cmd_mset)

    sp = sub.add_parser("fn", help="sample or combine functions given as x,value CSV")
    sp.add_argument("op", choices=list(POINTWISE_OPS) + ["sample", "integral", "normalize"])
    sp.add_argument("inputs", nargs="*", metavar="FILE")
    sp.add_argument("--name", choices=sorted(BUILTINS), help="builtin to sample")
    sp.add_argument("--grid", help="start:end:count, end exclusive (write --grid=-1:1:2048 for a negative start)")
    sp.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="builtin parameter")
    sp.add_argument("--by", type=float, help="factor for scale")
    out(sp)
    sp.set_defaults(func=cmd_fn)

    sp = sub.add_parser("sim", help="similarity report between two msets or two functions")
    sp.add_argument("--kind", required=True, choices=list(SIM_KINDS))
    sp.add_argument("inputs", nargs=2, metavar="FILE")
    out(sp)
    sp.set_defaults(func=cmd_sim)

    sp = sub.add_parser("match", help="template matching lag series and peak report")
    sp.add_argument("--mode", required=True, choices=list(signal_ops.MATCH_MODES))
    sp.add_argument("inputs", nargs="*", metavar="FILE", help="signal.csv template.csv")
    sp.add_argument("--benchmark", action="store_true", help="use the built-in three-template benchmark")
    sp.add_argument("--report", help="peak report JSON path (default: standard error)")
    out(sp)
    sp.set_defaults(func=cmd_match)

    sp = sub.add_parser("transform", help="greedy common-product transform")
    sp.add_argument("--basis", default="walsh", choices=["walsh"])
    sp.add_argument("--k", type=int, required=True, help="basis order; the input needs 2**k samples")
    sp.add_argument("--update", default="scaled", choices=["scaled", "literal"])
    sp.add_argument("input", metavar="FILE")
    out(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("cluster", help="KDE Jaccard matrix for labeled x,y,label points")
    sp.add_argument("points", nargs="?", metavar="FILE")
    sp.add_argument("--iris", action="store_true", help="use the bundled iris petal data")
    sp.add_argument("--bandwidth", type=float, help="kernel std (default: per-label Scott-style rule)")
    sp.add_argument("--cells", type=int, default=density.DEFAULT_CELLS, help="grid cells per axis")
    out(sp)
    sp.set_defaults(func=cmd_cluster)

    sp = sub.add_parser("expr", help="evaluate a set/arithmetic expression")
    sp.add_argument("text")
    sp.add_argument("--bind", action="append", default=[], metavar="NAME=FILE")
    out(sp)
    sp.set_defaults(func=cmd_expr)
    return p


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--grid -1:1:8" as two options; glue such values on
    merged = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--by", "--bandwidth"):
            nxt = next(it, None)
            merged.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            merged.append(tok)
    return merged


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_merge_negative_values(argv))
    try:
        args.func(args)
    except AlignmentError as exc:
        print(f"multikit: alignment error: {exc}", file=sys.stderr)
        return 2
    except MultikitError as exc:
        print(f"multikit: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
