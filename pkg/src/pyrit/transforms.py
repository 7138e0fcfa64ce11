"""Field <-> ring transforms used on the data path.

Embedding pads with zeros and reduces modulo the field polynomial on the
way back.  Parity appends one parity bit per residue class mod s, landing
directly in A1, and drops those bits on the way back.  The parity map is a
bijection but not a ring homomorphism, so encoder and decoder must agree.
"""
from __future__ import annotations

import enum

import numpy as np

from .buffers import SymbolBuffer
from .errors import BufferShape, NotInIdeal
from .field import FieldElem, FieldSpec
from .ring import RingElem, in_ideal_A1, phi1, phi1_inv


class TransformKind(enum.IntEnum):
    EMBEDDING = 0
    PARITY = 1

    @classmethod
    def from_name(cls, name: str) -> TransformKind:
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown transform {name!r}") from None

    @property
    def label(self) -> str:
        return self.name.lower()


def phi_E(b: FieldElem, spec: FieldSpec) -> RingElem:
    return b


def phi_E_inv(a: RingElem, spec: FieldSpec) -> FieldElem:
    w, s = spec.w, spec.s
    out = a & ((1 << w) - 1)
    top = a >> w
    for i in range(w):
        out ^= ((top >> (i % s)) & 1) << i
    return out


def _class_parities(b: int, spec: FieldSpec) -> int:
    """Bit j = xor of the coefficients of b at positions = j mod s."""
    s = spec.s
    par = 0
    for i in range(spec.w):
        par ^= ((b >> i) & 1) << (i % s)
    return par


def phi_P(b: FieldElem, spec: FieldSpec) -> RingElem:
    return b | (_class_parities(b, spec) << spec.w)


def phi_P_inv(a: RingElem, spec: FieldSpec, check: bool = __debug__) -> FieldElem:
    if check and not in_ideal_A1(a, spec):
        raise NotInIdeal(f"{a:#x} fails the A1 parity check")
    return a & ((1 << spec.w) - 1)


def tau(b: FieldElem, spec: FieldSpec) -> FieldElem:
    """Field element whose A1 image is phi_P(b).

    Codes run through the parity path are the field code conjugated by this
    map: parity = tau^-1(C * tau(data)) column-wise.
    """
    return phi1_inv(phi_P(b, spec), spec)


def tau_inv(y: FieldElem, spec: FieldSpec) -> FieldElem:
    return phi_P_inv(phi1(y, spec), spec)


# --- packet level ----------------------------------------------------------

def _check(buffer: SymbolBuffer, scratch: np.ndarray, spec: FieldSpec) -> None:
    if buffer.spec != spec:
        raise BufferShape("buffer field does not match spec")
    if scratch.shape != (spec.n - spec.w, buffer.packet_size):
        raise BufferShape(f"scratch shape {scratch.shape} != {(spec.n - spec.w, buffer.packet_size)}")


def extend_packets(buffer: SymbolBuffer, sym: int, kind: TransformKind, spec: FieldSpec,
                   scratch: np.ndarray) -> None:
    """Fill the n - w extra packets of symbol ``sym`` into ``scratch``."""
    _check(buffer, scratch, spec)
    if kind is TransformKind.EMBEDDING:
        scratch[:] = 0
        return
    pk = buffer.data[sym]
    for j in range(spec.s):
        np.bitwise_xor.reduce(pk[j::spec.s], axis=0, out=scratch[j])


def fold_packets(buffer: SymbolBuffer, sym: int, kind: TransformKind, spec: FieldSpec,
                 scratch: np.ndarray) -> None:
    """Map the n packets (data + scratch) of ``sym`` back to w field packets in place."""
    _check(buffer, scratch, spec)
    if kind is TransformKind.PARITY:
        return
    pk = buffer.data[sym]
    for i in range(spec.w):
        np.bitwise_xor(pk[i], scratch[i % spec.s], out=pk[i])
