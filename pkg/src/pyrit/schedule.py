"""Compile field matrices into flat lists of packet copy/xor operations.

A ring entry with shift set S multiplies by xoring cyclic rotations of the
input packets, so output packet t of a product picks up input packets
(t - s) mod n for s in S.  Embedding inputs have only w live packets, so
reads of packets >= w are dropped; parity outputs are truncated to w
packets, so writes to packets >= w are dropped.  Either way each entry
costs |S| * w region ops.

Packet indices >= w address the n - w scratch packets of a symbol.
Pre ops act on inputs, post ops on outputs, core ops read inputs and write
outputs.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .errors import BufferShape
from .field import FieldSpec
from .matrix import FieldMatrix, expand_bitmatrix
from .ring import phi1, sparse_transform, to_shift_set
from .transforms import TransformKind


class OpMode(enum.IntEnum):
    COPY = 0
    XOR = 1


class XorOp(NamedTuple):
    src_sym: int  # -1 with src_pkt -1: zero-fill
    src_pkt: int
    dst_sym: int
    dst_pkt: int
    mode: OpMode

    @property
    def is_zero_fill(self) -> bool:
        return self.src_sym < 0

    def dump(self) -> str:
        tag = "C" if self.mode is OpMode.COPY else "X"
        return f"{tag} {self.src_sym}.{self.src_pkt} -> {self.dst_sym}.{self.dst_pkt}"


@dataclass(frozen=True)
class ScheduleStats:
    xor_ops: int
    copy_ops: int
    total_region_ops: int
    matrix_ones: int
    core_region_ops: int = 0


@dataclass
class XorSchedule:
    n_inputs: int
    n_outputs: int
    spec: FieldSpec
    kind: Optional[TransformKind]  # None for the CRS baseline
    pre: list = field(default_factory=list)
    core: list = field(default_factory=list)
    post: list = field(default_factory=list)
    matrix_ones: int = 0
    _program: Optional[list] = field(default=None, repr=False, compare=False)

    @property
    def ops(self) -> list:
        return self.pre + self.core + self.post

    @property
    def stats(self) -> ScheduleStats:
        return schedule_stats(self)

    def dump(self) -> str:
        return "\n".join(op.dump() for op in self.ops)


def choose_transform(k: int, r: int) -> TransformKind:
    return TransformKind.EMBEDDING if k >= r else TransformKind.PARITY


class _Emitter:
    """Tracks written destinations so the first write is always a copy."""

    def __init__(self):
        self.written = set()

    def op(self, src_sym, src_pkt, dst_sym, dst_pkt) -> XorOp:
        key = (dst_sym, dst_pkt)
        mode = OpMode.XOR if key in self.written else OpMode.COPY
        self.written.add(key)
        return XorOp(src_sym, src_pkt, dst_sym, dst_pkt, mode)


def _zero_fill(em: _Emitter, n_outputs: int, w: int) -> list:
    return [XorOp(-1, -1, i, t, OpMode.COPY)
            for i in range(n_outputs) for t in range(w) if (i, t) not in em.written]


def compile_schedule(matrix: FieldMatrix, kind: TransformKind, spec: FieldSpec = None,
                     representative=sparse_transform) -> XorSchedule:
    """Pyrit schedule computing matrix @ inputs through ``kind``.

    ``representative`` picks the ring element standing in for each field
    entry; any member of the entry's A1 coset gives the same result.
    """
    spec = spec or matrix.spec
    assert spec == matrix.spec
    n, w, s = spec.n, spec.w, spec.s
    sched = XorSchedule(matrix.cols, matrix.rows, spec, kind)
    parity = kind is TransformKind.PARITY

    if parity:
        em = _Emitter()
        for j in range(matrix.cols):
            for c in range(s):
                for i in range(c, w, s):
                    sched.pre.append(em.op(j, i, j, w + c))

    out_rows = range(w) if parity else range(n)
    em = _Emitter()
    shift_cache = {}
    core = sched.core
    for i in range(matrix.rows):
        acc = {t: [] for t in out_rows}
        for j in range(matrix.cols):
            e = matrix[i, j]
            if e == 0:
                continue
            if e not in shift_cache:
                shift_cache[e] = to_shift_set(representative(e, spec), n).shifts
            shifts = shift_cache[e]
            sched.matrix_ones += len(shifts) * w
            for t in out_rows:
                srcs = acc[t]
                for sh in shifts:
                    src = (t - sh) % n
                    if parity or src < w:
                        srcs.append((j, src))
        for t in out_rows:
            srcs = acc[t]
            if not srcs:
                continue
            em.written.add((i, t))
            j, src = srcs[0]
            core.append(XorOp(j, src, i, t, OpMode.COPY))
            core.extend(XorOp(j, src, i, t, OpMode.XOR) for j, src in srcs[1:])

    if not parity:
        for i in range(matrix.rows):
            for c in range(n - w):
                if (i, w + c) not in em.written:
                    continue
                for t in range(c, w, s):
                    sched.post.append(em.op(i, w + c, i, t))
    sched.core.extend(_zero_fill(em, matrix.rows, w))
    return sched


def compile_crs_schedule(matrix: FieldMatrix, spec: FieldSpec = None,
                         kind: TransformKind = TransformKind.EMBEDDING) -> XorSchedule:
    """Baseline schedule from the expanded w x w bitmatrices.

    With kind=PARITY the entry bitmatrices are conjugated so the output is
    bit-identical to the pyrit parity path; the op count is what it is.
    """
    spec = spec or matrix.spec
    w = spec.w
    bm = expand_bitmatrix(matrix, kind)
    sched = XorSchedule(matrix.cols, matrix.rows, spec, None, matrix_ones=int(bm.sum()))
    em = _Emitter()
    for i in range(matrix.rows):
        for t in range(w):
            row = bm[i * w + t]
            for col in np.flatnonzero(row):
                sched.core.append(em.op(int(col) // w, int(col) % w, i, t))
    sched.core.extend(_zero_fill(em, matrix.rows, w))
    return sched


def schedule_stats(s: XorSchedule) -> ScheduleStats:
    ops = s.ops
    xor = sum(op.mode is OpMode.XOR for op in ops)
    copy = len(ops) - xor
    return ScheduleStats(xor, copy, xor + copy, s.matrix_ones, len(s.core))


@lru_cache(maxsize=256)
def cached_schedule(matrix: FieldMatrix, kind: TransformKind) -> XorSchedule:
    return compile_schedule(matrix, kind)


@lru_cache(maxsize=64)
def cached_crs_schedule(matrix: FieldMatrix, kind: TransformKind) -> XorSchedule:
    return compile_crs_schedule(matrix, kind=kind)


def phi1_schedule(matrix: FieldMatrix, kind: TransformKind) -> XorSchedule:
    """Same schedule with the plain idempotent images (no sparsification)."""
    return compile_schedule(matrix, kind, representative=phi1)


# --- replay ----------------------------------------------------------------

def _word_view(a: np.ndarray) -> np.ndarray:
    if a.shape[-1] % 8 == 0 and a.strides[-1] == 1:
        return a.view(np.uint64)
    return a


class BoundSchedule:
    """A schedule resolved against concrete input/output arrays.

    Binding happens once; ``run`` then only walks (dst, src) views.  The
    scratch workspaces belong to this binding, so separate bindings on
    disjoint column ranges can run in different threads.
    """

    def __init__(self, sched: XorSchedule, inputs: np.ndarray, outputs: np.ndarray):
        w, n = sched.spec.w, sched.spec.n
        if inputs.shape[0] != sched.n_inputs or outputs.shape[0] != sched.n_outputs:
            raise BufferShape(
                f"schedule wants {sched.n_inputs} -> {sched.n_outputs} symbols, "
                f"got {inputs.shape[0]} -> {outputs.shape[0]}")
        width = inputs.shape[2]
        in_scr = np.zeros((inputs.shape[0], n - w, width), np.uint8)
        out_scr = np.zeros((outputs.shape[0], n - w, width), np.uint8)
        ins, outs = _word_view(inputs), _word_view(outputs)
        in_s, out_s = _word_view(in_scr), _word_view(out_scr)

        def packets(data, scr):
            return [[data[sym, p] for p in range(w)] + [scr[sym, p] for p in range(n - w)]
                    for sym in range(data.shape[0])]

        in_v, out_v = packets(ins, in_s), packets(outs, out_s)

        def bind(ops, src_v, dst_v):
            return [(2, dst_v[d_sym][d_pkt], None) if s_sym < 0
                    else (mode, dst_v[d_sym][d_pkt], src_v[s_sym][s_pkt])
                    for s_sym, s_pkt, d_sym, d_pkt, mode in ops]

        self.steps = (bind(sched.pre, in_v, in_v)
                      + bind(sched.core, in_v, out_v)
                      + bind(sched.post, out_v, out_v))

    def run(self) -> None:
        xor, copyto = np.bitwise_xor, np.copyto
        for mode, dst, src in self.steps:
            if mode == 1:
                xor(dst, src, out=dst)
            elif mode == 0:
                copyto(dst, src)
            else:
                dst.fill(0)


def column_ranges(width: int, parts: int, align: int = 8) -> list:
    """Split [0, width) into at most ``parts`` aligned, non-empty ranges."""
    parts = max(1, parts)
    step = -(-width // parts)
    step = -(-step // align) * align
    return [(a, min(a + step, width)) for a in range(0, width, step)] or [(0, 0)]


def bind_parallel(sched: XorSchedule, inputs: np.ndarray, outputs: np.ndarray, threads: int) -> list:
    return [BoundSchedule(sched, inputs[:, :, a:b], outputs[:, :, a:b])
            for a, b in column_ranges(inputs.shape[2], threads)]


def run_bound(bound: list) -> None:
    if len(bound) == 1:
        bound[0].run()
        return
    workers = [threading.Thread(target=b.run) for b in bound]
    for t in workers:
        t.start()
    for t in workers:
        t.join()


# Below this many bytes per packet, per-call numpy overhead dominates and
# packets are xored as Python integers instead.
INT_PACKET_MAX = 2048


def _program(sched: XorSchedule) -> list:
    """Ops as (mode, src, dst) over one register file: inputs then outputs, n slots per symbol."""
    if sched._program is None:
        n = sched.spec.n
        base = sched.n_inputs * n

        def lower(ops, s_off, d_off):
            return [(2 if op.src_sym < 0 else int(op.mode),
                     s_off + op.src_sym * n + op.src_pkt, d_off + op.dst_sym * n + op.dst_pkt)
                    for op in ops]

        sched._program = lower(sched.pre, 0, 0) + lower(sched.core, 0, base) + lower(sched.post, base, base)
    return sched._program


def replay_ints(sched: XorSchedule, inputs: np.ndarray, outputs: np.ndarray) -> None:
    """Single-threaded replay with every packet held as one Python integer."""
    w, n = sched.spec.w, sched.spec.n
    if inputs.shape[0] != sched.n_inputs or outputs.shape[0] != sched.n_outputs:
        raise BufferShape(
            f"schedule wants {sched.n_inputs} -> {sched.n_outputs} symbols, "
            f"got {inputs.shape[0]} -> {outputs.shape[0]}")
    width = inputs.shape[2]
    regs = [0] * ((sched.n_inputs + sched.n_outputs) * n)
    frm = int.from_bytes
    for sym in range(sched.n_inputs):
        for p in range(w):
            regs[sym * n + p] = frm(inputs[sym, p].tobytes(), "little")
    for mode, src, dst in _program(sched):
        if mode == 1:
            regs[dst] ^= regs[src]
        elif mode == 0:
            regs[dst] = regs[src]
        else:
            regs[dst] = 0
    base = sched.n_inputs * n
    raw = b"".join(regs[base + sym * n + p].to_bytes(width, "little")
                   for sym in range(sched.n_outputs) for p in range(w))
    outputs[:] = np.frombuffer(raw, np.uint8).reshape(outputs.shape)


def replay(sched: XorSchedule, inputs: np.ndarray, outputs: np.ndarray, threads: int = 1) -> None:
    """Execute ``sched`` reading ``inputs`` (k, w, P) and writing ``outputs`` (r, w, P)."""
    if threads == 1 and inputs.shape[2] <= INT_PACKET_MAX:
        replay_ints(sched, inputs, outputs)
    else:
        run_bound(bind_parallel(sched, inputs, outputs, threads))
