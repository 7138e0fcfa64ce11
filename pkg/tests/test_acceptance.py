"""Acceptance criteria 1-9.

Each criterion prints one line, ``[acceptance N] <name>: PASS|FAIL (<details>)``,
then asserts.  Run under pytest or directly: ``python3 tests/test_acceptance.py``.
"""
import hashlib
import itertools
import os
import random
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from pyrit import bench, verify
from pyrit.buffers import SymbolBuffer
from pyrit.codec import decode, encode, encode_crs, encode_table, oracle_encode, recover_data
from pyrit.container import HEADER_SIZE, ShardHeader, decode_shards, encode_bytes
from pyrit.errors import HeaderError
from pyrit.field import GF16, GF64, field_to_bitmatrix
from pyrit.matrix import CodeSpec, cauchy_parity_matrix, is_mds
from pyrit.ring import phi1, ring_mul, sparse_transform, weight
from pyrit.schedule import compile_crs_schedule, compile_schedule
from pyrit.transforms import TransformKind

E, P = TransformKind.EMBEDDING, TransformKind.PARITY
X = lambda *e: sum(1 << i for i in e)  # noqa: E731

# (k, r, field, transform) for the three evaluated configurations
EVAL_CONFIGS = [(8, 4, GF16, E), (40, 20, GF64, E), (20, 40, GF64, P)]


def report(num, name, ok, detail):
    line = f"[acceptance {num}] {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line, flush=True)
    return line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# --- criteria -------------------------------------------------------------

def criterion_1():
    def run():
        res = []
        for spec in (GF16, GF64):
            th = verify.theta_for(spec)
            res += [verify.homomorphism(spec, th), verify.a1_characterization(spec, th),
                    verify.idempotency(spec, th), verify.a1_size(spec)]
        return res
    res, dt = timed(run)
    ok = all(r.ok for r in res) and dt < 1.0
    detail = ", ".join(f"{r.name} {r.passed}/{r.total}" for r in res) + f"; {dt:.2f} s < 1 s"
    return ok, detail


def criterion_2():
    checks = {
        "(1+x^2)(x+x^4)=x^3+x^4": ring_mul(X(0, 2), X(1, 4), 5) == X(3, 4),
        "phi1(x^2)=1+x+x^3+x^4": phi1(X(2), GF16) == X(0, 1, 3, 4),
        "sparse(x^2)=x^2": sparse_transform(X(2), GF16) == X(2),
        "weights 1<4": weight(sparse_transform(X(2), GF16)) == 1 < 4 == weight(phi1(X(2), GF16)),
    }
    return all(checks.values()), ", ".join(f"{k} {'ok' if v else 'WRONG'}" for k, v in checks.items())


def criterion_3():
    def run():
        return [verify.mixed_representative(GF16, verify.theta_for(GF16)),
                verify.mixed_representative(GF64, verify.theta_for(GF64))]
    (a, b), dt = timed(run)
    ok = a.ok and b.ok and a.total == 1024 and b.total >= 10 ** 5 and dt < 10
    return ok, f"GF16 {a.passed}/{a.total}, GF64 {b.passed}/{b.total}; {dt:.2f} s < 10 s"


def criterion_4():
    def run():
        bad, n = [], 0
        for spec in (GF16, GF64):
            for k, r in itertools.product(range(1, 7), repeat=2):
                if k + r <= spec.size:
                    n += 1
                    if not is_mds(cauchy_parity_matrix(CodeSpec(k, r, spec, E))):
                        bad.append((spec.name, k, r))
        return bad, n
    (bad, n), dt = timed(run)
    return not bad and dt < 60, f"{n - len(bad)}/{n} MDS; {dt:.2f} s < 60 s"


def _full(code, rng):
    data = SymbolBuffer.random(code.k, code.spec.w * 8, code.spec, rng)
    return data, np.concatenate([data.data, encode(data, code).data])


def _check_pattern(code, data, full, erased):
    surv = [i for i in range(code.total) if i not in erased][:code.k]
    sb = SymbolBuffer(full[surv], code.spec)
    if recover_data(sb, surv, code) != data:
        return False
    return np.array_equal(decode(sb, surv, code, erased=list(erased)).data, full[list(erased)])


def criterion_5():
    rng = np.random.default_rng(5)
    rnd = random.Random(5)

    def run():
        ok = total = 0
        for (k, r, spec), kind in itertools.product([(4, 2, GF16), (6, 3, GF16), (6, 3, GF64)], (E, P)):
            code = CodeSpec(k, r, spec, kind)
            data, full = _full(code, rng)
            for e in range(r + 1):
                for erased in itertools.combinations(range(k + r), e):
                    ok += _check_pattern(code, data, full, erased)
                    total += 1
        sampled = []
        for k, r, spec, kind in EVAL_CONFIGS:
            code = CodeSpec(k, r, spec, kind)
            data, full = _full(code, rng)
            good = 0
            for _ in range(1000):
                e = rnd.randint(0, r)
                good += _check_pattern(code, data, full, sorted(rnd.sample(range(code.total), e)))
            sampled.append(good)
        return ok, total, sampled
    (ok, total, sampled), dt = timed(run)
    passed = ok == total and all(s == 1000 for s in sampled) and dt < 120
    return passed, (f"exhaustive {ok}/{total}, sampled "
                    + ", ".join(f"({k},{r},{s.name})/{kd.label} {g}/1000"
                                for (k, r, s, kd), g in zip(EVAL_CONFIGS, sampled))
                    + f"; {dt:.1f} s < 120 s")


def criterion_6():
    rng = np.random.default_rng(6)
    cases = good = 0
    for spec, kind in itertools.product((GF16, GF64), (E, P)):
        for k, r in itertools.product(range(1, 6), repeat=2):
            code = CodeSpec(k, r, spec, kind)
            for _ in range(10):
                data = SymbolBuffer.random(k, spec.w * 8, spec, rng)
                ref = oracle_encode(data, code)
                good += encode(data, code) == ref and encode_crs(data, code) == ref \
                    and encode_table(data, code) == ref
                cases += 1
    return good == cases >= 1000, f"{good}/{cases} buffers bit-identical across pyrit, crs, table, oracle"


def criterion_7():
    parts, ok = [], True
    for k, r, spec, kind in EVAL_CONFIGS:
        m = cauchy_parity_matrix(CodeSpec(k, r, spec, kind))
        p = compile_schedule(m, kind).stats.total_region_ops
        c = compile_crs_schedule(m, kind=kind).stats.total_region_ops
        ok &= p < c
        parts.append(f"({k},{r},{spec.name}) pyrit {p} < crs {c}" if p < c else f"({k},{r}) pyrit {p} >= crs {c}")
    avg_coset = Fraction(sum(weight(sparse_transform(u, GF16)) for u in range(1, 16)), 15)
    avg_bits = Fraction(sum(sum(map(sum, field_to_bitmatrix(u, GF16))) for u in range(1, 16)), 15 * 4)
    ok &= avg_coset == Fraction(25, 15) and avg_coset < avg_bits
    parts.append(f"avg coset weight {avg_coset} (= 25/15) < avg bitmatrix row ones {float(avg_bits):.3f}")
    return ok, "; ".join(parts)


def criterion_8(out_dir=None):
    code = CodeSpec(8, 4, GF16, E)
    tmp = None
    if out_dir is None:
        tmp = tempfile.TemporaryDirectory()
        out_dir = tmp.name
    try:
        results, dt = timed(lambda: bench.run_bench(code))
        paths = bench.write_results(results, code, out_dir)
        want = {bench.csv_name("", c, o, code) for c in bench.CODECS for o in ("encode", "decode")}
        want |= {bench.csv_name("ratio", "pyrit_table", o, code) for o in ("encode", "decode")}
        names = {Path(p).name for p in paths}
        complete = names == want
        for p in paths:
            rows = bench.read_csv(p)
            complete &= [r.size for r in rows] == list(bench.DEFAULT_SIZES)
            complete &= all(r.get(t) is not None and r.get(t) > 0 for r in rows for t in bench.THREAD_COUNTS)
        ratio = bench.ratio_rows(results["pyrit", "encode"], results["table", "encode"])
        r1 = [r.t1 for r in ratio]
        detail = (f"{len(paths)} CSVs x {len(bench.DEFAULT_SIZES)} sizes x 4 thread counts in {dt:.0f} s < 600 s; "
                  f"pyrit/table encode t1 ratio {min(r1):.2f}..{max(r1):.2f} (reported only)")
        return complete and dt < 600, detail
    finally:
        if tmp:
            tmp.cleanup()


def criterion_9():
    rnd = random.Random(9)
    crashes = parsed = 0
    good = ShardHeader(0, 0, 8, 4, 3, 1024, 12345).pack()
    for i in range(10_000):
        if i % 2:
            raw = bytes(rnd.randrange(256) for _ in range(rnd.randrange(0, 2 * HEADER_SIZE)))
        else:
            raw = bytearray(good)
            for _ in range(rnd.randint(1, 4)):
                raw[rnd.randrange(len(raw))] ^= 1 << rnd.randrange(8)
            raw = bytes(raw[:rnd.randint(0, len(raw))]) if rnd.random() < 0.25 else bytes(raw)
        try:
            ShardHeader.unpack(raw)
            parsed += 1
        except HeaderError:
            pass
        except Exception:  # anything else is a crash
            crashes += 1
    restored = total = 0
    for k, r, spec, kind in [(4, 2, GF16, E), (4, 2, GF16, P), (3, 3, GF64, P), (8, 4, GF16, E)]:
        code = CodeSpec(k, r, spec, kind)
        data = os.urandom(20_000)
        digest = hashlib.sha256(data).digest()
        size = 48 if spec is GF64 else 256
        shards = {i: (ShardHeader(spec.field_id, int(kind), k, r, i, size, len(data)), pl)
                  for i, pl in enumerate(encode_bytes(data, code, size))}
        for e in range(r + 1):
            for gone in itertools.combinations(range(k + r), e):
                sub = {i: v for i, v in shards.items() if i not in gone}
                restored += hashlib.sha256(decode_shards(sub)).digest() == digest
                total += 1
    ok = crashes == 0 and restored == total
    return ok, (f"10000 fuzzed headers: {crashes} crashes, {parsed} parsed as valid; "
                f"{restored}/{total} deletion patterns hash-identical")


CRITERIA = [
    (1, "algebra exhaustives", criterion_1),
    (2, "worked example", criterion_2),
    (3, "mixed-representative identity", criterion_3),
    (4, "MDS small grid", criterion_4),
    (5, "roundtrip", criterion_5),
    (6, "oracle equivalence", criterion_6),
    (7, "complexity reduction", criterion_7),
    (8, "throughput sweep", criterion_8),
    (9, "container robustness", criterion_9),
]


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_acceptance(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print()
        line = report(num, name, ok, detail)
    assert ok, line


if __name__ == "__main__":
    only = {int(a) for a in sys.argv[1:]}
    failures = 0
    for num, name, fn in CRITERIA:
        if only and num not in only:
            continue
        ok, detail = fn()
        report(num, name, ok, detail)
        failures += not ok
    sys.exit(1 if failures else 0)
