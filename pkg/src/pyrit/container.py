"""Shard file format and file-level encode/decode.

Each shard is a 29-byte little-endian header followed by the shard's
symbol of every stripe, in stripe order::

    magic "PYRT" | version u8 | field_id u8 | transform_id u8 | k u16 | r u16
    | shard_index u16 | symbol_size u32 | original_length u64 | crc32 u32

The generator matrix is not stored; it is rebuilt from (k, r, field).
"""
from __future__ import annotations

import logging
import struct
import zlib
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .buffers import SymbolBuffer, check_symbol_size
from .codec import encode, recover_data
from .errors import (
    BufferShape,
    ChecksumError,
    CorruptShard,
    HeaderError,
    HeaderMismatch,
    InsufficientShards,
    TransformMismatch,
)
from .field import FIELD_IDS, FieldSpec
from .matrix import CodeSpec
from .transforms import TransformKind

log = logging.getLogger(__name__)

MAGIC = b"PYRT"
VERSION = 1
_BODY = struct.Struct("<4sBBBHHHIQ")
_CRC = struct.Struct("<I")
HEADER_SIZE = _BODY.size + _CRC.size
SHARD_SUFFIX = ".pyrt"


@dataclass(frozen=True)
class ShardHeader:
    field_id: int
    transform_id: int
    k: int
    r: int
    shard_index: int
    symbol_size: int
    original_length: int
    version: int = VERSION

    @property
    def spec(self) -> FieldSpec:
        return FIELD_IDS[self.field_id]

    @property
    def transform(self) -> TransformKind:
        return TransformKind(self.transform_id)

    @property
    def code(self) -> CodeSpec:
        return CodeSpec(self.k, self.r, self.spec, self.transform)

    @property
    def stripes(self) -> int:
        return stripe_count(self.original_length, self.k, self.symbol_size)

    @property
    def payload_size(self) -> int:
        return self.stripes * self.symbol_size

    def validate(self) -> None:
        if self.version != VERSION:
            raise HeaderError(f"unsupported version {self.version}")
        if self.field_id not in FIELD_IDS:
            raise HeaderError(f"unknown field id {self.field_id}")
        if self.transform_id not in (0, 1):
            raise HeaderError(f"unknown transform id {self.transform_id}")
        spec = self.spec
        if self.k < 1 or self.r < 1 or self.k + self.r > spec.size:
            raise HeaderError(f"invalid code ({self.k}, {self.r}) for {spec.name}")
        if self.shard_index >= self.k + self.r:
            raise HeaderError(f"shard index {self.shard_index} out of range")
        try:
            check_symbol_size(self.symbol_size, spec)
        except BufferShape as exc:
            raise HeaderError(str(exc)) from None

    def pack(self) -> bytes:
        body = _BODY.pack(MAGIC, self.version, self.field_id, self.transform_id, self.k, self.r,
                          self.shard_index, self.symbol_size, self.original_length)
        return body + _CRC.pack(zlib.crc32(body))

    @classmethod
    def unpack(cls, raw: bytes) -> ShardHeader:
        if len(raw) < HEADER_SIZE:
            raise HeaderError(f"header truncated ({len(raw)} < {HEADER_SIZE} bytes)")
        body = raw[:_BODY.size]
        magic, version, fid, tid, k, r, idx, sym, length = _BODY.unpack(body)
        if magic != MAGIC:
            raise HeaderError(f"bad magic {magic!r}")
        (crc,) = _CRC.unpack(raw[_BODY.size:HEADER_SIZE])
        if crc != zlib.crc32(body):
            raise ChecksumError("header checksum mismatch")
        hdr = cls(fid, tid, k, r, idx, sym, length, version)
        hdr.validate()
        return hdr

    def same_set(self, other: ShardHeader) -> bool:
        return replace(self, shard_index=0) == replace(other, shard_index=0)


def stripe_count(length: int, k: int, symbol_size: int) -> int:
    return -(-length // (k * symbol_size))


def shard_path(out_dir, index: int) -> Path:
    return Path(out_dir) / f"shard_{index:03d}{SHARD_SUFFIX}"


def _to_columns(stripes: np.ndarray) -> np.ndarray:
    """(S, count, w, P) -> (count, w, S*P): stripes laid side by side as columns."""
    s, count, w, p = stripes.shape
    return np.ascontiguousarray(stripes.transpose(1, 2, 0, 3)).reshape(count, w, s * p)


def _from_columns(arr: np.ndarray, n_stripes: int) -> np.ndarray:
    count, w, sp = arr.shape
    return arr.reshape(count, w, n_stripes, sp // n_stripes).transpose(2, 0, 1, 3)


def encode_bytes(data: bytes, code: CodeSpec, symbol_size: int, threads: int = 1) -> list:
    """Shard payloads (without headers) for every index 0..k+r-1."""
    spec = code.spec
    check_symbol_size(symbol_size, spec)
    n_stripes = stripe_count(len(data), code.k, symbol_size)
    if n_stripes == 0:
        return [b""] * code.total
    padded = np.zeros(n_stripes * code.k * symbol_size, np.uint8)
    padded[:len(data)] = np.frombuffer(data, np.uint8)
    stripes = padded.reshape(n_stripes, code.k, spec.w, symbol_size // spec.w)
    # the code is column-wise, so all stripes go through one wide replay
    parity = encode(SymbolBuffer(_to_columns(stripes), spec), code, threads=threads)
    par_stripes = _from_columns(parity.data, n_stripes)
    payloads = [stripes[:, j].tobytes() for j in range(code.k)]
    payloads += [np.ascontiguousarray(par_stripes[:, i]).tobytes() for i in range(code.r)]
    return payloads


def encode_file(input_path, out_dir, code: CodeSpec, symbol_size: int, threads: int = 1) -> list:
    data = Path(input_path).read_bytes()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for idx, payload in enumerate(encode_bytes(data, code, symbol_size, threads)):
        hdr = ShardHeader(code.spec.field_id, int(code.transform), code.k, code.r, idx,
                          symbol_size, len(data))
        path = shard_path(out_dir, idx)
        path.write_bytes(hdr.pack() + payload)
        paths.append(path)
    return paths


def read_shard(path) -> tuple[ShardHeader, bytes]:
    raw = Path(path).read_bytes()
    hdr = ShardHeader.unpack(raw)
    payload = raw[HEADER_SIZE:]
    if len(payload) != hdr.payload_size:
        raise CorruptShard(f"{path}: payload {len(payload)} bytes, expected {hdr.payload_size}")
    return hdr, payload


def collect_shards(sources) -> list:
    """Expand directories into their shard files."""
    out = []
    for src in sources:
        src = Path(src)
        if src.is_dir():
            out.extend(sorted(src.glob(f"*{SHARD_SUFFIX}")))
        else:
            out.append(src)
    return out


def decode_shards(shards: dict, transform: TransformKind = None, threads: int = 1) -> bytes:
    """Rebuild the original bytes from {index: (header, payload)}."""
    if not shards:
        raise InsufficientShards("no readable shards")
    headers = [h for h, _ in shards.values()]
    ref = headers[0]
    if not all(ref.same_set(h) for h in headers):
        raise HeaderMismatch("shards come from different encodings")
    code = ref.code
    if transform is not None and transform is not code.transform:
        raise TransformMismatch(f"shards use {code.transform.label}, decoder asked for {transform.label}")
    if len(shards) < code.k:
        raise InsufficientShards(f"need {code.k} shards, have {len(shards)}")
    # data shards first, then the lowest parity indices
    chosen = sorted(shards)[:code.k]
    if ref.stripes == 0:
        return b""
    spec, n_stripes = code.spec, ref.stripes
    sym = ref.symbol_size
    stacked = np.stack([np.frombuffer(shards[i][1], np.uint8).reshape(n_stripes, spec.w, sym // spec.w)
                        for i in chosen], axis=1)
    data = recover_data(SymbolBuffer(_to_columns(stacked), spec), chosen, code, threads)
    out = np.ascontiguousarray(_from_columns(data.data, n_stripes)).tobytes()
    return out[:ref.original_length]


def decode_files(sources, output_path, transform: TransformKind = None, threads: int = 1) -> int:
    shards = {}
    for path in collect_shards(sources):
        try:
            hdr, payload = read_shard(path)
        except (HeaderError, CorruptShard, OSError) as exc:
            log.warning("skipping %s: %s", path, exc)
            continue
        shards.setdefault(hdr.shard_index, (hdr, payload))
    data = decode_shards(shards, transform, threads)
    Path(output_path).write_bytes(data)
    return len(data)
