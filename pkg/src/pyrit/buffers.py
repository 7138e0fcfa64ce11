"""Bit-sliced symbol storage.

A symbol of ``symbol_size`` bytes is split into w packets of
``symbol_size // w`` bytes.  Bit t of packet i (byte t // 8, bit t % 8,
LSB first) is the coefficient of x^i of the field element sitting at
column t, so every field operation becomes a whole-packet xor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BufferShape
from .field import FieldSpec

WORD = 8


def check_symbol_size(symbol_size: int, spec: FieldSpec) -> None:
    if symbol_size <= 0 or symbol_size % spec.w or symbol_size % WORD:
        raise BufferShape(
            f"symbol size {symbol_size} must be a positive multiple of w={spec.w} and {WORD}"
        )


@dataclass
class SymbolBuffer:
    data: np.ndarray  # (count, w, packet_size) uint8
    spec: FieldSpec

    def __post_init__(self):
        d = self.data
        if d.ndim != 3 or d.dtype != np.uint8 or d.shape[1] != self.spec.w:
            raise BufferShape(f"expected (count, {self.spec.w}, packet) uint8, got {d.shape} {d.dtype}")

    @classmethod
    def zeros(cls, count: int, symbol_size: int, spec: FieldSpec) -> SymbolBuffer:
        check_symbol_size(symbol_size, spec)
        return cls(np.zeros((count, spec.w, symbol_size // spec.w), np.uint8), spec)

    @classmethod
    def random(cls, count: int, symbol_size: int, spec: FieldSpec, rng=None) -> SymbolBuffer:
        check_symbol_size(symbol_size, spec)
        rng = np.random.default_rng(rng)
        d = rng.integers(0, 256, (count, spec.w, symbol_size // spec.w), dtype=np.uint8)
        return cls(d, spec)

    @classmethod
    def from_bytes(cls, symbols, spec: FieldSpec) -> SymbolBuffer:
        symbols = list(symbols)
        if not symbols:
            raise BufferShape("no symbols")
        size = len(symbols[0])
        if any(len(s) != size for s in symbols):
            raise BufferShape("symbols differ in size")
        check_symbol_size(size, spec)
        arr = np.frombuffer(b"".join(symbols), np.uint8).reshape(len(symbols), spec.w, size // spec.w)
        return cls(arr.copy(), spec)

    @property
    def symbol_count(self) -> int:
        return self.data.shape[0]

    @property
    def packet_size(self) -> int:
        return self.data.shape[2]

    @property
    def symbol_size(self) -> int:
        return self.packet_size * self.spec.w

    def symbol(self, i: int) -> bytes:
        return self.data[i].tobytes()

    def select(self, indices) -> SymbolBuffer:
        return SymbolBuffer(self.data[list(indices)], self.spec)

    def columns(self, start: int, stop: int) -> SymbolBuffer:
        """View restricted to packet byte range [start, stop)."""
        return SymbolBuffer(self.data[:, :, start:stop], self.spec)

    def __eq__(self, other):
        return (
            isinstance(other, SymbolBuffer)
            and self.spec == other.spec
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )


def make_scratch(count: int, spec: FieldSpec, packet_size: int) -> np.ndarray:
    """Per-worker workspace holding the n - w extra packets of each symbol."""
    return np.zeros((count, spec.n - spec.w, packet_size), np.uint8)


def column_elements(buf: SymbolBuffer) -> np.ndarray:
    """(count, 8 * packet_size) array of the field element at every column."""
    w = buf.spec.w
    planes = np.unpackbits(buf.data, axis=2, bitorder="little").astype(np.uint8)
    out = np.zeros((buf.symbol_count, planes.shape[2]), np.uint8)
    for i in range(w):
        out |= planes[:, i, :] << i
    return out


def from_column_elements(elems: np.ndarray, spec: FieldSpec) -> SymbolBuffer:
    count, cols = elems.shape
    planes = np.stack([(elems >> i) & 1 for i in range(spec.w)], axis=1).astype(np.uint8)
    data = np.packbits(planes, axis=2, bitorder="little")
    return SymbolBuffer(np.ascontiguousarray(data.reshape(count, spec.w, cols // 8)), spec)
