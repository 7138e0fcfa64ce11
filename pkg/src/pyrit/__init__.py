"""Erasure coding with finite-field products computed in x^n + 1 rings."""
from .buffers import SymbolBuffer
from .codec import decode, encode, encode_crs, encode_table, oracle_encode, recover_data
from .field import GF16, GF64, FieldSpec, field_spec, gf_add, gf_inv, gf_mul
from .matrix import CodeSpec, FieldMatrix, cauchy_parity_matrix, decode_matrix, invert, is_mds
from .schedule import choose_transform, compile_crs_schedule, compile_schedule, schedule_stats
from .transforms import TransformKind

__all__ = [
    "GF16", "GF64", "CodeSpec", "FieldMatrix", "FieldSpec", "SymbolBuffer", "TransformKind",
    "cauchy_parity_matrix", "choose_transform", "compile_crs_schedule", "compile_schedule",
    "decode", "decode_matrix", "encode", "encode_crs", "encode_table", "field_spec", "gf_add",
    "gf_inv", "gf_mul", "invert", "is_mds", "oracle_encode", "recover_data", "schedule_stats",
]
