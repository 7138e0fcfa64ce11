"""Exhaustive algebra and coding checks behind ``pyrit verify``."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .buffers import SymbolBuffer
from .codec import encode, recover_data
from .field import FieldSpec, gf_mul
from .matrix import CodeSpec, cauchy_parity_matrix, is_mds
from .ring import complement_elements, idempotent_theta1, in_ideal_A1, phi1_inv, ring_mul
from .transforms import TransformKind


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{self.name} {self.passed}/{self.total} {'pass' if self.ok else 'FAIL'}"


def theta_for(spec: FieldSpec, fault: bool = False) -> int:
    theta = idempotent_theta1(spec)
    return theta ^ 1 if fault else theta


def homomorphism(spec: FieldSpec, theta: int) -> SuiteResult:
    n, q = spec.n, spec.size
    phi = [ring_mul(b, theta, n) for b in range(q)]
    ok = sum(phi[gf_mul(a, b, spec)] == ring_mul(phi[a], phi[b], n)
             for a in range(q) for b in range(q))
    return SuiteResult("homomorphism", ok, q * q)


def idempotency(spec: FieldSpec, theta: int) -> SuiteResult:
    ok = ring_mul(theta, theta, spec.n) == theta and phi1_inv(theta, spec) == 1
    return SuiteResult("idempotency", int(ok), 1)


def a1_characterization(spec: FieldSpec, theta: int) -> SuiteResult:
    """Parity-class membership agrees with a == phi1(phi1_inv(a)) on the whole ring."""
    n = spec.n
    total = 1 << n
    ok = sum(in_ideal_A1(a, spec) == (ring_mul(phi1_inv(a, spec), theta, n) == a)
             for a in range(total))
    return SuiteResult("a1_characterization", ok, total)


def a1_size(spec: FieldSpec) -> SuiteResult:
    count = sum(in_ideal_A1(a, spec) for a in range(1 << spec.n))
    return SuiteResult("a1_size", int(count == spec.size), 1)


def mixed_representative(spec: FieldSpec, theta: int, samples: int = None, seed: int = 0) -> SuiteResult:
    """phi1_inv((phi(a) + e_a)(phi(b) + e_b)) == a*b for coset mates e_a, e_b.

    Exhaustive when ``samples`` is None.
    """
    n, q = spec.n, spec.size
    comp = complement_elements(spec)
    phi = [ring_mul(b, theta, n) for b in range(q)]
    if samples is None:
        cases = itertools.product(range(q), range(q), comp, comp)
        total = q * q * len(comp) ** 2
    else:
        rnd = random.Random(seed)
        cases = ((rnd.randrange(q), rnd.randrange(q), rnd.choice(comp), rnd.choice(comp))
                 for _ in range(samples))
        total = samples
    mt = [[gf_mul(a, b, spec) for b in range(q)] for a in range(q)]
    ok = 0
    for a, b, ea, eb in cases:
        ok += phi1_inv(ring_mul(phi[a] ^ ea, phi[b] ^ eb, n), spec) == mt[a][b]
    return SuiteResult("mixed_representative", ok, total)


def mds_grid(spec: FieldSpec, max_kr: int = 6) -> SuiteResult:
    codes = [(k, r) for k in range(1, max_kr + 1) for r in range(1, max_kr + 1) if k + r <= spec.size]
    ok = sum(is_mds(cauchy_parity_matrix(CodeSpec(k, r, spec, TransformKind.EMBEDDING))) for k, r in codes)
    return SuiteResult("mds_grid", ok, len(codes))


def roundtrips(spec: FieldSpec, configs=((4, 2), (6, 3)), seed: int = 0) -> SuiteResult:
    """Every survivor set of size k, both transforms."""
    rng = np.random.default_rng(seed)
    ok = total = 0
    for k, r in configs:
        for kind in TransformKind:
            code = CodeSpec(k, r, spec, kind)
            data = SymbolBuffer.random(k, spec.w * 8, spec, rng)
            full = np.concatenate([data.data, encode(data, code).data])
            for surv in itertools.combinations(range(k + r), k):
                rec = recover_data(SymbolBuffer(full[list(surv)], spec), surv, code)
                ok += rec == data
                total += 1
    return SuiteResult("roundtrip", ok, total)


def run_all(spec: FieldSpec, fault: bool = False, mixed_samples: int = None) -> list:
    theta = theta_for(spec, fault)
    return [
        idempotency(spec, theta),
        homomorphism(spec, theta),
        a1_characterization(spec, theta),
        a1_size(spec),
        mixed_representative(spec, theta, mixed_samples),
        mds_grid(spec),
        roundtrips(spec),
    ]
