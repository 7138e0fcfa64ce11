"""Command-line entry point: ``pyrit encode|decode|matrix|stats|verify|bench``."""
from __future__ import annotations

import argparse
import math
import logging
import sys
import time

from . import bench, verify
from .container import decode_files, encode_file
from .errors import PyritError
from .field import FIELDS, field_spec
from .matrix import CodeSpec, cauchy_parity_matrix
from .ring import sparse_transform, weight
from .schedule import choose_transform, compile_crs_schedule, compile_schedule
from .transforms import TransformKind


def resolve_code(k: int, r: int, field: str, transform: str) -> CodeSpec:
    spec = field_spec(field)
    kind = choose_transform(k, r) if transform == "auto" else TransformKind.from_name(transform)
    return CodeSpec(k, r, spec, kind)


def stats_report(code: CodeSpec) -> dict:
    """Region-op counts of the pyrit schedule against the plain CRS bitmatrix schedule."""
    m = cauchy_parity_matrix(code)
    pyrit = compile_schedule(m, code.transform)
    crs = compile_crs_schedule(m)
    p, c = pyrit.stats, crs.stats
    return {
        "code": code,
        "pyrit": p,
        "crs": c,
        "ratio": p.total_region_ops / c.total_region_ops,
        "core_ratio": p.core_region_ops / c.core_region_ops,
        "ring_weights": [[weight(sparse_transform(e, code.spec)) for e in row] for row in m.to_rows()],
        "schedule": pyrit,
    }


def _add_code_args(p, transform_default="auto"):
    p.add_argument("--k", type=int, required=True, help="data symbols")
    p.add_argument("--r", type=int, required=True, help="parity symbols")
    p.add_argument("--field", choices=sorted(FIELDS), default="gf16")
    p.add_argument("--transform", choices=["embedding", "parity", "auto"], default=transform_default)


def _int_list(text: str) -> list:
    return [int(x) for x in text.split(",") if x]


def cmd_encode(args) -> int:
    code = resolve_code(args.k, args.r, args.field, args.transform)
    size = args.symbol_size or code.spec.w * 1024
    align = math.lcm(code.spec.w, 8)
    if size % align:
        size = -(-size // align) * align
        print(f"note: symbol size rounded up to {size} (multiple of {align})", file=sys.stderr)
    paths = encode_file(args.input, args.out, code, size, args.threads)
    print(f"wrote {len(paths)} shards to {args.out} ({code.spec.name}, {code.transform.label}, "
          f"symbol size {size})")
    return 0


def cmd_decode(args) -> int:
    kind = TransformKind.from_name(args.transform) if args.transform else None
    n = decode_files(args.shards, args.out, kind, args.threads)
    print(f"restored {n} bytes to {args.out}")
    return 0


def cmd_matrix(args) -> int:
    code = resolve_code(args.k, args.r, args.field, args.transform)
    print(cauchy_parity_matrix(code).pretty())
    return 0


def cmd_stats(args) -> int:
    code = resolve_code(args.k, args.r, args.field, args.transform)
    rep = stats_report(code)
    p, c = rep["pyrit"], rep["crs"]
    print(f"code k={code.k} r={code.r} field={code.spec.name} transform={code.transform.label}")
    for name, s in (("pyrit", p), ("crs", c)):
        print(f"{name}: xor_ops={s.xor_ops} copy_ops={s.copy_ops} total_region_ops={s.total_region_ops} "
              f"core_region_ops={s.core_region_ops} matrix_ones={s.matrix_ones}")
    print(f"ratio={rep['ratio']:.4f} core_ratio={rep['core_ratio']:.4f}")
    print("ring_weights:")
    for row in rep["ring_weights"]:
        print("  " + " ".join(str(x) for x in row))
    if args.dump:
        print("schedule:")
        print(rep["schedule"].dump())
    return 0


def cmd_verify(args) -> int:
    ok = True
    for name in (args.field,) if args.field != "all" else sorted(FIELDS):
        spec = field_spec(name)
        print(f"[{spec.name}]")
        for res in verify.run_all(spec, fault=args.fault_inject):
            print(res.line())
            ok &= res.ok
    return 0 if ok else 1


def cmd_bench(args) -> int:
    code = resolve_code(args.k, args.r, args.field, args.transform)
    codecs = bench.CODECS if args.codec == "all" else (args.codec,)
    sizes = _int_list(args.sizes) if args.sizes else bench.DEFAULT_SIZES
    threads = _int_list(args.threads)
    if any(t not in bench.THREAD_COUNTS for t in threads):
        raise SystemExit(f"--threads must be drawn from {bench.THREAD_COUNTS}")
    t0 = time.perf_counter()

    def progress(codec, op, row):
        vals = " ".join(f"t{t}={row.get(t):.3f}" for t in threads)
        print(f"{codec:5s} {op:6s} {row.size:>8d} B  {vals} GB/s", flush=True)

    results = bench.run_bench(code, sizes, threads, args.iterations, codecs, args.ops.split(","),
                              target_seconds=args.target_seconds, progress=progress)
    paths = bench.write_results(results, code, args.out)
    for op in args.ops.split(","):
        if ("pyrit", op) in results and ("table", op) in results:
            print(f"pyrit/table {op} ratio:")
            for row in bench.ratio_rows(results["pyrit", op], results["table", op]):
                print(f"  {row.size:>8d} " + " ".join(f"t{t}={row.get(t):.2f}" for t in threads))
    print(f"wrote {len(paths)} CSV files to {args.out} in {time.perf_counter() - t0:.1f} s")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pyrit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="split a file into k+r shards")
    p.add_argument("input")
    _add_code_args(p)
    p.add_argument("--symbol-size", type=int, default=None, help="bytes per symbol (default 1024*w)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="rebuild a file from any k shards")
    p.add_argument("shards", nargs="+", help="shard files or directories")
    p.add_argument("--out", required=True, help="output file")
    p.add_argument("--transform", choices=["embedding", "parity"], default=None,
                   help="expected transform; mismatch with the shards is an error")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("matrix", help="print the Cauchy parity matrix")
    _add_code_args(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("stats", help="region-op counts, pyrit vs CRS")
    _add_code_args(p)
    p.add_argument("--dump", action="store_true", help="print the pyrit op list")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="run the exhaustive algebra suites")
    p.add_argument("--field", choices=sorted(FIELDS) + ["all"], default="all")
    p.add_argument("--fault-inject", action="store_true", help="corrupt theta1 (negative control)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="throughput sweep, CSV output")
    _add_code_args(p)
    p.add_argument("--sizes", default=None, help="comma list of symbol sizes (default 128..8388608)")
    p.add_argument("--threads", default="1,2,4,8")
    p.add_argument("--iterations", type=int, default=1000, help="max iterations per point")
    p.add_argument("--target-seconds", type=float, default=bench.DEFAULT_TARGET)
    p.add_argument("--codec", choices=list(bench.CODECS) + ["all"], default="all")
    p.add_argument("--ops", default="encode,decode")
    p.add_argument("--out", default="bench_out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PyritError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
