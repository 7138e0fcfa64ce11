import itertools

import numpy as np
import pytest

from pyrit.buffers import SymbolBuffer, make_scratch
from pyrit.errors import BufferShape, NotInIdeal
from pyrit.field import GF16, GF64, gf_inv, gf_mul
from pyrit.ring import in_ideal_A1, phi1, ring_mul, sparse_transform
from pyrit.transforms import (
    TransformKind, extend_packets, fold_packets, phi_E, phi_E_inv, phi_P, phi_P_inv, tau, tau_inv,
)

from conftest import naive_poly_mod, naive_ring_mul

X = lambda *e: sum(1 << i for i in e)  # noqa: E731
KINDS = list(TransformKind)


def test_element_examples():
    assert phi_E(0, GF16) == 0
    assert phi_E(X(2), GF16) == X(2)
    assert phi_E(X(0, 5), GF64) == X(0, 5)
    assert phi_E_inv(X(4), GF16) == X(0, 1, 2, 3)
    assert phi_E_inv(X(6), GF64) == X(0, 3)
    assert phi_P(X(2), GF16) == X(2, 4)
    assert phi_P(1, GF64) == X(0, 6)
    assert phi_P(0, GF16) == 0
    assert phi_P_inv(X(3, 4), GF16) == X(3)
    assert phi_P_inv(X(0, 6), GF64) == 1


def test_phi_E_inv_is_reduction(spec):
    for a in range(1 << spec.n):
        assert phi_E_inv(a, spec) == naive_poly_mod(a, spec.modulus)


def test_phi_P_lands_in_ideal(spec):
    for b in range(spec.size):
        a = phi_P(b, spec)
        assert in_ideal_A1(a, spec)
        assert phi_P_inv(a, spec) == b
        assert tau_inv(tau(b, spec), spec) == b


def test_phi_P_inv_rejects_outside_ideal():
    with pytest.raises(NotInIdeal):
        phi_P_inv(X(2), GF16, check=True)
    assert phi_P_inv(X(2), GF16, check=False) == X(2)


def test_embedding_end_to_end_exhaustive(spec):
    for m, d in itertools.product(range(spec.size), repeat=2):
        got = phi_E_inv(naive_ring_mul(sparse_transform(m, spec), phi_E(d, spec), spec.n), spec)
        assert got == gf_mul(m, d, spec)


def test_parity_path_one_by_one_code(spec):
    """Encode d with [m] via the parity path, decode with [1/m]: d comes back."""
    n = spec.n
    for m in range(1, spec.size):
        fwd, back = sparse_transform(m, spec), sparse_transform(gf_inv(m, spec), spec)
        for d in range(spec.size):
            p = phi_P_inv(ring_mul(fwd, phi_P(d, spec), n), spec)
            assert phi_P_inv(ring_mul(back, phi_P(p, spec), n), spec) == d


def test_parity_path_is_conjugated_product(spec):
    for m, d in itertools.product(range(spec.size), repeat=2):
        p = phi_P_inv(ring_mul(phi1(m, spec), phi_P(d, spec), spec.n), spec)
        assert p == tau_inv(gf_mul(m, tau(d, spec), spec), spec)


def _ring_columns(buf, scratch, sym, spec):
    """n-bit ring element at every column of data packets + scratch packets."""
    packets = np.concatenate([buf.data[sym], scratch])
    planes = np.unpackbits(packets, axis=1, bitorder="little")
    return [int(sum(int(planes[i, t]) << i for i in range(spec.n))) for t in range(planes.shape[1])]


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.label)
def test_extend_column_consistency(spec, kind, rng):
    cases = 0
    fwd = phi_P if kind is TransformKind.PARITY else phi_E
    while cases < 1000:
        buf = SymbolBuffer.random(2, spec.w * 16, spec, rng)
        scratch = make_scratch(1, spec, buf.packet_size)[0]
        scratch[:] = 0xFF  # must be overwritten
        extend_packets(buf, 1, kind, spec, scratch)
        cols = _ring_columns(buf, scratch, 1, spec)
        elems = _ring_columns(buf, np.zeros_like(scratch), 1, spec)
        for t in rng.integers(0, len(cols), 50).tolist():
            assert cols[t] == fwd(elems[t], spec)
            cases += 1


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.label)
def test_fold_column_consistency(spec, kind, rng):
    back = (lambda a, s: phi_P_inv(a, s, check=False)) if kind is TransformKind.PARITY else phi_E_inv
    cases = 0
    while cases < 1000:
        buf = SymbolBuffer.random(1, spec.w * 16, spec, rng)
        scratch = rng.integers(0, 256, (spec.n - spec.w, buf.packet_size), dtype=np.uint8)
        before = _ring_columns(buf, scratch, 0, spec)
        fold_packets(buf, 0, kind, spec, scratch)
        after = _ring_columns(buf, np.zeros_like(scratch), 0, spec)
        for t in rng.integers(0, len(before), 50).tolist():
            assert after[t] == back(before[t], spec)
            cases += 1


def test_packet_examples(rng):
    buf = SymbolBuffer.random(1, 64, GF16, rng)
    sc = make_scratch(1, GF16, buf.packet_size)[0]
    extend_packets(buf, 0, TransformKind.PARITY, GF16, sc)
    p = buf.data[0]
    assert np.array_equal(sc[0], p[0] ^ p[1] ^ p[2] ^ p[3])

    buf = SymbolBuffer.random(1, 48, GF64, rng)
    sc = make_scratch(1, GF64, buf.packet_size)[0]
    extend_packets(buf, 0, TransformKind.PARITY, GF64, sc)
    p = buf.data[0]
    for j in range(3):
        assert np.array_equal(sc[j], p[j] ^ p[j + 3])

    before = buf.data.copy()
    fold_packets(buf, 0, TransformKind.EMBEDDING, GF64, np.zeros_like(sc))
    assert np.array_equal(buf.data, before)
    fold_packets(buf, 0, TransformKind.EMBEDDING, GF64, sc)
    for i in range(6):
        assert np.array_equal(buf.data[0, i], before[0, i] ^ sc[i % 3])


def test_zero_symbol_gives_zero_scratch(spec):
    buf = SymbolBuffer.zeros(1, spec.w * 8, spec)
    sc = np.ones((spec.n - spec.w, buf.packet_size), np.uint8)
    extend_packets(buf, 0, TransformKind.PARITY, spec, sc)
    assert not sc.any()


def test_scratch_shape_checked():
    buf = SymbolBuffer.zeros(1, 32, GF16)
    with pytest.raises(BufferShape):
        extend_packets(buf, 0, TransformKind.PARITY, GF16, np.zeros((2, 8), np.uint8))


def test_transform_names():
    assert TransformKind.from_name("parity") is TransformKind.PARITY
    assert TransformKind.EMBEDDING.label == "embedding"
