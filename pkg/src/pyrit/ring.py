"""Arithmetic in F2[x]/(x^n + 1) and the ideal isomorphic to the field.

Ring elements are n-bit ints.  For both supported fields the ring splits
as A1 + A2 where A1 ~ GF(2^w); A1 is generated by x^s + 1 and its idempotent
is modulus + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import FieldElem, FieldSpec, clmul, poly_mod

RingElem = int


def weight(a: int) -> int:
    return bin(a).count("1")


def rotate(a: RingElem, shift: int, n: int) -> RingElem:
    """Cyclic left rotation, i.e. multiplication by x^shift."""
    shift %= n
    mask = (1 << n) - 1
    return ((a << shift) | (a >> (n - shift))) & mask


def ring_reduce(a: int, n: int) -> RingElem:
    """Fold a polynomial of any degree modulo x^n + 1."""
    mask = (1 << n) - 1
    r = 0
    while a:
        r ^= a & mask
        a >>= n
    return r


def ring_mul(a: RingElem, b: RingElem, n: int) -> RingElem:
    return ring_reduce(clmul(a, b), n)


@dataclass(frozen=True)
class ShiftSet:
    """Multiplication by a ring element as a set of cyclic rotations."""

    shifts: tuple
    n: int

    def __len__(self):
        return len(self.shifts)

    def apply(self, b: RingElem) -> RingElem:
        r = 0
        for s in self.shifts:
            r ^= rotate(b, s, self.n)
        return r

    def to_ring(self) -> RingElem:
        return sum(1 << s for s in self.shifts)


def to_shift_set(a: RingElem, n: int) -> ShiftSet:
    return ShiftSet(tuple(i for i in range(n) if (a >> i) & 1), n)


@dataclass(frozen=True)
class IdealA1:
    spec: FieldSpec
    theta1: RingElem

    def __post_init__(self):
        n = self.spec.n
        assert ring_mul(self.theta1, self.theta1, n) == self.theta1, "theta1 is not idempotent"
        assert poly_mod(self.theta1, self.spec.modulus) == 1


def idempotent_theta1(spec: FieldSpec) -> RingElem:
    """Idempotent of A1: the field modulus plus one."""
    theta = spec.modulus ^ 1
    assert ring_mul(theta, theta, spec.n) == theta
    assert poly_mod(theta, spec.modulus) == 1
    return theta


@lru_cache(maxsize=None)
def ideal_a1(spec: FieldSpec) -> IdealA1:
    return IdealA1(spec, idempotent_theta1(spec))


def phi1(b: FieldElem, spec: FieldSpec) -> RingElem:
    """Field -> A1 isomorphism, b * theta1."""
    return ring_mul(b, ideal_a1(spec).theta1, spec.n)


def phi1_inv(a: RingElem, spec: FieldSpec) -> FieldElem:
    return poly_mod(a, spec.modulus)


def in_ideal_A1(a: RingElem, spec: FieldSpec) -> bool:
    """Even weight in every residue class of bit positions mod s."""
    s = spec.s
    for j in range(s):
        count = 0
        for i in range(j, spec.n, s):
            count += (a >> i) & 1
        if count & 1:
            return False
    return True


@lru_cache(maxsize=None)
def complement_elements(spec: FieldSpec) -> tuple:
    """All 2^(n-w) ring elements without an A1 component.

    These are the multiples m * modulus with deg m < n - w; none of the
    products wraps around x^n + 1.
    """
    out = tuple(clmul(m, spec.modulus) for m in range(1 << (spec.n - spec.w)))
    assert all(e < (1 << spec.n) and phi1_inv(e, spec) == 0 for e in out)
    return out


def coset(u: FieldElem, spec: FieldSpec) -> list:
    base = phi1(u, spec)
    return [base ^ e for e in complement_elements(spec)]


@lru_cache(maxsize=None)
def _sparse_table(spec: FieldSpec) -> tuple:
    return tuple(min(coset(u, spec), key=lambda a: (weight(a), a)) for u in range(spec.size))


def sparse_transform(u: FieldElem, spec: FieldSpec) -> RingElem:
    """Lowest-weight ring representative of u; ties go to the smaller int."""
    return _sparse_table(spec)[u]
