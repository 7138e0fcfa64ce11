"""GF(2^w) arithmetic for the two supported moduli.

Elements are plain ints, bit i holding the coefficient of x^i.  Two fields
are constructible: GF(16) modulo the all-one polynomial of degree 4 (ring
length 5) and GF(64) modulo the 3-spaced polynomial x^6 + x^3 + 1 (ring
length 9).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import ZeroInverse

FieldElem = int


class FieldKind(enum.Enum):
    AOP = "aop"
    ESP = "esp"


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def degree(a: int) -> int:
    return a.bit_length() - 1


def aop(r: int) -> int:
    return (1 << (r + 1)) - 1


def esp(s: int, r: int) -> int:
    """p(x^s) for the all-one polynomial p of degree r."""
    g = 0
    for i in range(r + 1):
        g |= 1 << (s * i)
    return g


@dataclass(frozen=True)
class FieldSpec:
    w: int
    n: int
    kind: FieldKind
    s: int
    r_esp: int
    modulus: int

    def __post_init__(self):
        if self.kind is FieldKind.AOP:
            assert self.s == 1 and self.r_esp == self.w and self.n == self.w + 1
            assert self.modulus == aop(self.w)
        else:
            assert self.w == self.s * self.r_esp
            assert self.n == self.s * (self.r_esp + 1)
            assert self.modulus == esp(self.s, self.r_esp)
        assert poly_mod((1 << self.n) | 1, self.modulus) == 0

    @property
    def size(self) -> int:
        return 1 << self.w

    @property
    def name(self) -> str:
        return "gf16" if self.w == 4 else "gf64"

    @property
    def field_id(self) -> int:
        return 0 if self.w == 4 else 1

    def __repr__(self):
        return f"FieldSpec({self.name}, w={self.w}, n={self.n}, {self.kind.name})"


GF16 = FieldSpec(w=4, n=5, kind=FieldKind.AOP, s=1, r_esp=4, modulus=aop(4))
GF64 = FieldSpec(w=6, n=9, kind=FieldKind.ESP, s=3, r_esp=2, modulus=esp(3, 2))

FIELDS = {"gf16": GF16, "gf64": GF64}
FIELD_IDS = {0: GF16, 1: GF64}


def field_spec(name: str) -> FieldSpec:
    try:
        return FIELDS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown field {name!r}, expected one of {sorted(FIELDS)}") from None


# --- admissibility ---------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def multiplicative_order(a: int, m: int) -> int:
    if m < 2 or a % m == 0:
        return 0
    x, k = a % m, 1
    while x != 1:
        x = x * a % m
        k += 1
        if k > m:
            return 0
    return k


def is_irreducible(f: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(f)//2."""
    d = degree(f)
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if poly_mod(f, g) == 0:
            return False
    return True


def validate_aop(w: int) -> bool:
    """True iff the all-one polynomial of degree w is irreducible.

    That is w+1 prime with 2 a primitive root mod w+1 (OEIS A001122),
    plus the degenerate w=1 case where x+1 is trivially irreducible.
    """
    if w < 1:
        raise ValueError("w must be >= 1")
    if w == 1:
        return True
    return is_prime(w + 1) and multiplicative_order(2, w + 1) == w


def validate_esp(s: int, r: int) -> bool:
    """Brute-force irreducibility of the s-spaced polynomial of degree s*r."""
    if s < 1 or r < 1:
        raise ValueError("s and r must be >= 1")
    return is_irreducible(esp(s, r))


def esp_criterion(s: int, r: int) -> bool:
    """Arithmetic irreducibility test for p(x^s).

    Requires p irreducible and s = (r+1)^(t-1) for some t >= 2 with
    2^(r (r+1)^(t-2)) != 1 mod (r+1)^t.  s = 1 falls back to the AOP test;
    r = 1 gives x^s + 1, which x + 1 divides for every s > 1.
    """
    if s == 1:
        return validate_aop(r)
    if r < 2 or not validate_aop(r):
        return False
    q, t = r + 1, 1
    while q ** (t - 1) < s:
        t += 1
    if q ** (t - 1) != s or t < 2:
        return False
    return pow(2, r * q ** (t - 2), q ** t) != 1


# --- arithmetic ------------------------------------------------------------

def gf_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a ^ b


def _mul_slow(a: int, b: int, spec: FieldSpec) -> int:
    return poly_mod(clmul(a, b), spec.modulus)


@lru_cache(maxsize=None)
def mul_table(spec: FieldSpec) -> tuple:
    """Full product table, mul_table(spec)[a][b] == gf_mul(a, b, spec)."""
    q = spec.size
    return tuple(tuple(_mul_slow(a, b, spec) for b in range(q)) for a in range(q))


def gf_mul(a: FieldElem, b: FieldElem, spec: FieldSpec) -> FieldElem:
    return mul_table(spec)[a][b]


@lru_cache(maxsize=None)
def _inv_table(spec: FieldSpec) -> tuple:
    q = spec.size
    tab = [0] * q
    for a in range(1, q):
        # exhaustive search, |F| <= 64
        tab[a] = next(b for b in range(1, q) if _mul_slow(a, b, spec) == 1)
    return tuple(tab)


def gf_inv(a: FieldElem, spec: FieldSpec) -> FieldElem:
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    return _inv_table(spec)[a]


def gf_pow(a: FieldElem, e: int, spec: FieldSpec) -> FieldElem:
    r = 1
    for _ in range(e):
        r = gf_mul(r, a, spec)
    return r


@lru_cache(maxsize=None)
def primitive_element(spec: FieldSpec) -> int:
    q1 = spec.size - 1
    for g in range(2, spec.size):
        x, k = g, 1
        while x != 1:
            x = gf_mul(x, g, spec)
            k += 1
        if k == q1:
            return g
    raise AssertionError("no primitive element")


def field_to_bitmatrix(a: FieldElem, spec: FieldSpec) -> list[list[int]]:
    """w x w binary matrix of multiplication by a.

    Column j holds the coefficients of a * x^j, so M @ vec(b) == vec(a*b).
    """
    w = spec.w
    cols = [gf_mul(a, 1 << j, spec) for j in range(w)]
    return [[(cols[j] >> i) & 1 for j in range(w)] for i in range(w)]


def linear_map_bitmatrix(fn, w: int) -> list[list[int]]:
    """Binary matrix of a GF(2)-linear map on w-bit vectors."""
    cols = [fn(1 << j) for j in range(w)]
    return [[(cols[j] >> i) & 1 for j in range(w)] for i in range(w)]


def bits(a: int, w: int) -> list[int]:
    return [(a >> i) & 1 for i in range(w)]


def from_bits(v) -> int:
    return sum((int(b) & 1) << i for i, b in enumerate(v))
