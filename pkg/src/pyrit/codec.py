"""Region encode/decode over symbol buffers.

``encode``/``decode`` replay compiled pyrit schedules.  ``encode_crs`` and
``encode_table`` are the two baselines (bitmatrix xor schedule and split
lookup tables), ``oracle_encode`` the slow column-by-column reference.
All four agree bit for bit; for the parity transform they all compute the
conjugated code tau^-1(C tau(d)), since that is what the parity path yields.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .buffers import SymbolBuffer, column_elements, from_column_elements
from .errors import BufferShape
from .field import FieldSpec, gf_add, gf_mul, mul_table, primitive_element
from .matrix import CodeSpec, FieldMatrix, cauchy_parity_matrix, decode_matrix
from .schedule import XorSchedule, cached_crs_schedule, cached_schedule, replay
from .transforms import TransformKind, tau, tau_inv


def _check_data(data: SymbolBuffer, code: CodeSpec, count: int = None) -> None:
    count = code.k if count is None else count
    if data.spec != code.spec:
        raise BufferShape(f"buffer field {data.spec.name} != code field {code.spec.name}")
    if data.symbol_count != count:
        raise BufferShape(f"expected {count} symbols, got {data.symbol_count}")


def encode_schedule(code: CodeSpec) -> XorSchedule:
    return cached_schedule(cauchy_parity_matrix(code), code.transform)


def encode(data: SymbolBuffer, code: CodeSpec, schedule: XorSchedule = None,
           threads: int = 1) -> SymbolBuffer:
    _check_data(data, code)
    schedule = schedule or encode_schedule(code)
    out = SymbolBuffer.zeros(code.r, data.symbol_size, code.spec)
    replay(schedule, data.data, out.data, threads)
    return out


@lru_cache(maxsize=512)
def decode_schedule(code: CodeSpec, survivors: tuple) -> tuple[XorSchedule, list]:
    d, erased = decode_matrix(code, survivors)
    return cached_schedule(d, code.transform), erased


def recover_data(survivors: SymbolBuffer, indices, code: CodeSpec, threads: int = 1) -> SymbolBuffer:
    """All k data symbols from any k survivors."""
    indices = tuple(indices)
    _check_data(survivors, code)
    sched, erased = decode_schedule(code, indices)
    out = SymbolBuffer.zeros(code.k, survivors.symbol_size, code.spec)
    for pos, idx in enumerate(indices):
        if idx < code.k:
            out.data[idx] = survivors.data[pos]
    if erased:
        rec = SymbolBuffer.zeros(len(erased), survivors.symbol_size, code.spec)
        replay(sched, survivors.data, rec.data, threads)
        out.data[erased] = rec.data
    return out


def decode(survivors: SymbolBuffer, indices, code: CodeSpec, erased=None,
           threads: int = 1) -> SymbolBuffer:
    """Rebuild the ``erased`` symbols (default: every index not surviving).

    Returns them in ascending index order.  Erased parity is recomputed by
    re-encoding the recovered data.
    """
    indices = tuple(indices)
    if erased is None:
        erased = [i for i in range(code.total) if i not in indices]
    erased = sorted(erased)
    if set(erased) & set(indices):
        raise ValueError("a symbol cannot be both surviving and erased")
    data = recover_data(survivors, indices, code, threads)
    out = SymbolBuffer.zeros(len(erased), survivors.symbol_size, code.spec)
    if any(e >= code.k for e in erased):
        parity = encode(data, code, threads=threads)
    for pos, e in enumerate(erased):
        out.data[pos] = data.data[e] if e < code.k else parity.data[e - code.k]
    return out


def encode_crs(data: SymbolBuffer, code: CodeSpec, threads: int = 1) -> SymbolBuffer:
    _check_data(data, code)
    sched = cached_crs_schedule(cauchy_parity_matrix(code), code.transform)
    out = SymbolBuffer.zeros(code.r, data.symbol_size, code.spec)
    replay(sched, data.data, out.data, threads)
    return out


# --- split-table baseline ----------------------------------------------------

@lru_cache(maxsize=None)
def _nibble_tables(spec: FieldSpec):
    """lo[c][x] = c*x, hi[c][x] = (c*x) << 4 for 4-bit x."""
    mt = mul_table(spec)
    lo = np.array([[mt[c][x] for x in range(16)] for c in range(16)], np.uint8)
    return lo, (lo << 4).astype(np.uint8)


@lru_cache(maxsize=None)
def _log_tables(spec: FieldSpec):
    """uint8 log/antilog with a zero sentinel: exp[log[c] + log[x]] == c*x.

    log[0] points into the zero tail of exp; every index stays below 256.
    """
    q1 = spec.size - 1
    g = primitive_element(spec)
    exp = np.zeros(256, np.uint8)
    log = np.zeros(spec.size, np.uint8)
    x = 1
    for i in range(q1):
        exp[i] = exp[i + q1] = x
        log[x] = i
        x = gf_mul(x, g, spec)
    log[0] = 2 * q1
    return log, exp


@lru_cache(maxsize=None)
def _tau_tables(spec: FieldSpec):
    fwd = np.array([tau(x, spec) for x in range(spec.size)], np.uint8)
    back = np.array([tau_inv(x, spec) for x in range(spec.size)], np.uint8)
    return fwd, back


def _pair_table(t: np.ndarray) -> np.ndarray:
    """Apply a 16-entry map to both nibbles of every byte."""
    x = np.arange(256)
    return (t[x & 15] | (t[x >> 4] << 4)).astype(np.uint8)


def to_table_layout(buf: SymbolBuffer) -> np.ndarray:
    """Element-major layout: two GF(16) elements per byte, or one GF(64) element per byte."""
    e = column_elements(buf)
    if buf.spec.w == 4:
        return (e[:, 0::2] | (e[:, 1::2] << 4)).astype(np.uint8)
    return e


def from_table_layout(arr: np.ndarray, spec: FieldSpec) -> SymbolBuffer:
    if spec.w == 4:
        e = np.empty((arr.shape[0], arr.shape[1] * 2), np.uint8)
        e[:, 0::2] = arr & 15
        e[:, 1::2] = arr >> 4
        arr = e
    return from_column_elements(arr, spec)


def region_mul(c: int, region: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Multiply every element of a table-layout region by the constant c."""
    if c == 0:
        return np.zeros_like(region)
    if c == 1:
        return region.copy()
    if spec.w == 4:
        lo, hi = _nibble_tables(spec)
        return np.take(lo[c], region & 15) ^ np.take(hi[c], region >> 4)
    log, exp = _log_tables(spec)
    return np.take(exp, np.take(log, region) + log[c])


def table_apply(matrix: FieldMatrix, elems: np.ndarray, kind: TransformKind) -> np.ndarray:
    """Split-table product matrix @ elems on table-layout rows."""
    spec = matrix.spec
    parity = kind is TransformKind.PARITY
    if parity:
        fwd, back = _tau_tables(spec)
        if spec.w == 4:
            fwd, back = _pair_table(fwd), _pair_table(back)
        elems = np.take(fwd, elems)
    out = np.zeros((matrix.rows, elems.shape[1]), np.uint8)
    for i in range(matrix.rows):
        acc = out[i]
        for j in range(matrix.cols):
            c = matrix[i, j]
            if c == 1:
                acc ^= elems[j]
            elif c:
                acc ^= region_mul(c, elems[j], spec)
    if parity:
        out = np.take(back, out)
    return out


def table_encode_layout(elems: np.ndarray, code: CodeSpec) -> np.ndarray:
    return table_apply(cauchy_parity_matrix(code), elems, code.transform)


def encode_table(data: SymbolBuffer, code: CodeSpec) -> SymbolBuffer:
    _check_data(data, code)
    return from_table_layout(table_encode_layout(to_table_layout(data), code), code.spec)


# --- reference ----------------------------------------------------------------

def oracle_encode(data: SymbolBuffer, code: CodeSpec, matrix: FieldMatrix = None) -> SymbolBuffer:
    """Column-by-column field evaluation with gf_mul / gf_add; slow on purpose."""
    _check_data(data, code)
    spec = code.spec
    mat = matrix or cauchy_parity_matrix(code)
    parity = code.transform is TransformKind.PARITY
    cols = column_elements(data).T.tolist()
    out = []
    for d in cols:
        if parity:
            d = [tau(x, spec) for x in d]
        p = []
        for i in range(mat.rows):
            acc = 0
            for j in range(mat.cols):
                acc = gf_add(acc, gf_mul(mat[i, j], d[j], spec))
            p.append(tau_inv(acc, spec) if parity else acc)
        out.append(p)
    arr = np.array(out, np.uint8).reshape(len(cols), mat.rows).T
    return from_column_elements(np.ascontiguousarray(arr), spec)
