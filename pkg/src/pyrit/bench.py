"""Coding throughput harness: symbol-size sweep x thread count, per codec.

Throughput is (k + r) * symbol_size * iterations / elapsed, in GB/s
(1e9 bytes).  The timer wraps schedule replay including transforms and
excludes setup.  Each codec is timed on its native layout: the xor codecs
on bit-sliced packets, the split-table codec on element-major bytes.
Threads split every symbol into disjoint column ranges and meet at a
barrier after each iteration.
"""
from __future__ import annotations

import csv
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .buffers import SymbolBuffer
from .codec import decode_schedule, encode_schedule, table_apply, to_table_layout
from .field import FieldSpec
from .matrix import CodeSpec, cauchy_parity_matrix, decode_matrix
from .schedule import bind_parallel, column_ranges, compile_crs_schedule

DEFAULT_SIZES = tuple(2 ** i for i in range(7, 24))  # 128 B .. 8 MiB
THREAD_COUNTS = (1, 2, 4, 8)
CODECS = ("pyrit", "crs", "table")
OPS = ("encode", "decode")
CSV_COLUMNS = ("size", "t1", "t2", "t4", "t8")
DEFAULT_BUDGET = 64 << 20
DEFAULT_TARGET = 0.2  # seconds of timed work per point


@dataclass
class BenchRow:
    size: int
    t1: Optional[float] = None
    t2: Optional[float] = None
    t4: Optional[float] = None
    t8: Optional[float] = None

    def set(self, threads: int, value: float) -> None:
        setattr(self, f"t{threads}", value)

    def get(self, threads: int) -> Optional[float]:
        return getattr(self, f"t{threads}")


def actual_symbol_size(size: int, spec: FieldSpec) -> int:
    """Round up so every packet is a whole number of 8-byte words."""
    align = spec.w * 8
    return -(-size // align) * align


def decode_pattern(code: CodeSpec) -> tuple[list, list]:
    """Worst case for the sweep: the first min(k, r) data symbols are lost."""
    e = min(code.k, code.r)
    survivors = list(range(e, code.k)) + list(range(code.k, code.k + e))
    return survivors, list(range(e))


class _Prepared:
    """Buffers for one (codec, op, size) point, shared across thread counts."""

    def __init__(self, codec: str, op: str, code: CodeSpec, size: int, rng):
        if codec not in CODECS or op not in OPS:
            raise ValueError(f"unknown codec/op {codec}/{op}")
        spec = code.spec
        self.codec, self.code = codec, code
        if op == "encode":
            self.matrix = cauchy_parity_matrix(code)
            sched = encode_schedule(code) if codec == "pyrit" else None
        else:
            survivors, _ = decode_pattern(code)
            self.matrix, _ = decode_matrix(code, survivors)
            sched = decode_schedule(code, tuple(survivors))[0] if codec == "pyrit" else None
        inputs = SymbolBuffer.random(self.matrix.cols, size, spec, rng)
        if codec == "table":
            self.inputs = to_table_layout(inputs)
            self.outputs = np.zeros((self.matrix.rows, self.inputs.shape[1]), np.uint8)
        else:
            self.sched = sched or compile_crs_schedule(self.matrix, kind=code.transform)
            self.inputs = inputs.data
            self.outputs = SymbolBuffer.zeros(self.matrix.rows, size, spec).data

    def workers(self, threads: int) -> list:
        if self.codec != "table":
            return [b.run for b in bind_parallel(self.sched, self.inputs, self.outputs, threads)]
        matrix, kind, elems, out = self.matrix, self.code.transform, self.inputs, self.outputs

        def worker(a, b):
            def run():
                out[:, a:b] = table_apply(matrix, elems[:, a:b], kind)
            return run

        return [worker(a, b) for a, b in column_ranges(elems.shape[1], threads)]


def make_workers(codec: str, op: str, code: CodeSpec, size: int, threads: int, rng=None) -> list:
    return _Prepared(codec, op, code, size, np.random.default_rng(rng)).workers(threads)


def time_workers(workers: list, iterations: int) -> float:
    """Seconds for ``iterations`` rounds of every worker, barrier-synchronized."""
    if len(workers) == 1:
        run = workers[0]
        t0 = time.perf_counter()
        for _ in range(iterations):
            run()
        return time.perf_counter() - t0
    barrier = threading.Barrier(len(workers))

    def loop(run):
        for _ in range(iterations):
            run()
            barrier.wait()

    pool = [threading.Thread(target=loop, args=(w,)) for w in workers]
    t0 = time.perf_counter()
    for t in pool:
        t.start()
    for t in pool:
        t.join()
    return time.perf_counter() - t0


def _measure(prep: _Prepared, size: int, threads: int, iterations: int, budget_bytes: int,
             target_seconds: float) -> float:
    workers = prep.workers(threads)
    per_iter = prep.code.total * size
    t0 = time.perf_counter()
    for w in workers:  # warm-up, also sizes the run
        w()
    warm = max(time.perf_counter() - t0, 1e-6)
    iters = min(iterations, max(1, budget_bytes // per_iter), max(1, int(target_seconds / warm)))
    elapsed = time_workers(workers, iters)
    return per_iter * iters / max(elapsed, 1e-12) / 1e9


def measure(codec: str, op: str, code: CodeSpec, size: int, threads: int,
            iterations: int = 1000, budget_bytes: int = DEFAULT_BUDGET,
            target_seconds: float = DEFAULT_TARGET, rng=None) -> float:
    """Throughput in GB/s for one (codec, op, size, threads) point.

    Runs at most ``iterations`` rounds, fewer when the byte budget or the
    time target would be exceeded.
    """
    actual = actual_symbol_size(size, code.spec)
    prep = _Prepared(codec, op, code, actual, np.random.default_rng(rng))
    return _measure(prep, actual, threads, iterations, budget_bytes, target_seconds)


def run_bench(code: CodeSpec, sizes=DEFAULT_SIZES, threads=THREAD_COUNTS, iterations: int = 1000,
              codecs=CODECS, ops=OPS, budget_bytes: int = DEFAULT_BUDGET,
              target_seconds: float = DEFAULT_TARGET, seed: int = 0, progress=None) -> dict:
    """{(codec, op): [BenchRow per size]}"""
    results = {}
    rng = np.random.default_rng(seed)
    for codec in codecs:
        for op in ops:
            rows = []
            for size in sizes:
                row = BenchRow(size)
                actual = actual_symbol_size(size, code.spec)
                prep = _Prepared(codec, op, code, actual, rng)
                for t in threads:
                    row.set(t, _measure(prep, actual, t, iterations, budget_bytes, target_seconds))
                rows.append(row)
                if progress:
                    progress(codec, op, row)
            results[codec, op] = rows
    return results


def ratio_rows(num: list, den: list) -> list:
    out = []
    for a, b in zip(num, den):
        row = BenchRow(a.size)
        for t in THREAD_COUNTS:
            x, y = a.get(t), b.get(t)
            row.set(t, x / y if x is not None and y else None)
        out.append(row)
    return out


def _fmt(v) -> str:
    return "" if v is None else f"{v:.6g}"


def write_csv(path, rows: list) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(CSV_COLUMNS)
        for row in rows:
            wr.writerow([row.size] + [_fmt(row.get(t)) for t in THREAD_COUNTS])


def read_csv(path) -> list:
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        assert tuple(rd.fieldnames) == CSV_COLUMNS, rd.fieldnames
        return [BenchRow(int(r["size"]), *[float(r[c]) if r[c] else None for c in CSV_COLUMNS[1:]])
                for r in rd]


def csv_name(kind: str, codec: str, op: str, code: CodeSpec) -> str:
    opname = {"encode": "encoding", "decode": "decoding"}[op]
    return f"{opname}_{kind + '_' if kind else ''}{codec}_{code.k}_{code.r}_{code.spec.name}_{code.transform.label}.csv"


def write_results(results: dict, code: CodeSpec, out_dir) -> list:
    """One CSV per (codec, op), plus pyrit/table ratio CSVs when both ran."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for (codec, op), rows in results.items():
        path = out_dir / csv_name("", codec, op, code)
        write_csv(path, rows)
        paths.append(path)
    for op in OPS:
        if ("pyrit", op) in results and ("table", op) in results:
            path = out_dir / csv_name("ratio", "pyrit_table", op, code)
            write_csv(path, ratio_rows(results["pyrit", op], results["table", op]))
            paths.append(path)
    return paths
