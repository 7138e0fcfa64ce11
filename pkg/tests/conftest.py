"""Shared fixtures and small independent oracles.

The oracles below avoid the package's own helpers on purpose: polynomial
products are done coefficient list by coefficient list.
"""
import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pyrit.field import GF16, GF64

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

SPECS = [GF16, GF64]


@pytest.fixture(params=SPECS, ids=lambda s: s.name)
def spec(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def coeffs(a, length):
    return [(a >> i) & 1 for i in range(length)]


def pack(cs):
    return sum(c << i for i, c in enumerate(cs))


def naive_field_mul(a, b, modulus, w):
    """Schoolbook product then long division, over coefficient lists."""
    prod = [0] * (2 * w - 1)
    for i, x in enumerate(coeffs(a, w)):
        for j, y in enumerate(coeffs(b, w)):
            prod[i + j] ^= x & y
    mod = coeffs(modulus, w + 1)
    for d in range(len(prod) - 1, w - 1, -1):
        if prod[d]:
            for i in range(w + 1):
                prod[d - w + i] ^= mod[i]
    return pack(prod[:w])


def naive_ring_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(coeffs(a, n)):
        for j, y in enumerate(coeffs(b, n)):
            out[(i + j) % n] ^= x & y
    return pack(out)


def naive_poly_mod(a, modulus):
    deg = modulus.bit_length() - 1
    while a.bit_length() - 1 >= deg:
        a ^= modulus << (a.bit_length() - 1 - deg)
    return a


def brute_irreducible(f):
    """Trial division by every polynomial of degree 1..deg/2, via naive_poly_mod."""
    deg = f.bit_length() - 1
    for g in range(2, 1 << (deg // 2 + 1)):
        if naive_poly_mod(f, g) == 0:
            return False
    return True


def naive_tau_tables(spec):
    """Parity-path conjugation map built from first principles.

    tau(b) reduces the parity-extended ring element of b modulo the field
    polynomial; its inverse is found by search.
    """
    w, s = spec.w, spec.s
    fwd = []
    for b in range(spec.size):
        par = 0
        for i in range(w):
            par ^= ((b >> i) & 1) << (i % s)
        fwd.append(naive_poly_mod(b | (par << w), spec.modulus))
    back = [fwd.index(y) for y in range(spec.size)]
    return np.array(fwd, np.uint8), np.array(back, np.uint8)


_TABLES = {}


def naive_mul_table(spec):
    if spec not in _TABLES:
        _TABLES[spec] = np.array([[naive_field_mul(a, b, spec.modulus, spec.w) for b in range(spec.size)]
                                  for a in range(spec.size)], np.uint8)
    return _TABLES[spec]


def column_oracle(rows, elems, spec, parity=False):
    """matrix @ elems evaluated independently at every column.

    ``elems`` is (k, columns) of field elements; the parity path is the
    product conjugated by tau.
    """
    mt = naive_mul_table(spec)
    if parity:
        fwd, back = naive_tau_tables(spec)
        elems = fwd[elems]
    out = np.zeros((len(rows), elems.shape[1]), np.uint8)
    for i, row in enumerate(rows):
        for j, m in enumerate(row):
            out[i] ^= mt[m][elems[j]]
    return back[out] if parity else out
