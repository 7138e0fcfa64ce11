"""Embedding vs parity transform on the same code: region ops and single-thread encode GB/s.

The k >= r -> embedding rule is a heuristic; this re-measures it.

    python3 scripts/transform_crossover.py --field gf64 --size 65536
"""
import argparse
from dataclasses import dataclass

from pyrit import bench
from pyrit.field import field_spec
from pyrit.matrix import CodeSpec, cauchy_parity_matrix
from pyrit.schedule import choose_transform, compile_schedule
from pyrit.transforms import TransformKind


@dataclass(frozen=True)
class CrossoverConfig:
    field: str = "gf64"
    size: int = 65536
    total: int = 30


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--field", default="gf64")
    ap.add_argument("--size", type=int, default=65536)
    ap.add_argument("--total", type=int, default=30, help="k + r")
    a = ap.parse_args()
    cfg = CrossoverConfig(a.field, a.size, a.total)
    spec = field_spec(cfg.field)
    print(f"{'k':>3} {'r':>3} {'ops emb':>8} {'ops par':>8} {'GB/s emb':>9} {'GB/s par':>9} heuristic")
    for k in range(max(1, cfg.total // 6), cfg.total, max(1, cfg.total // 6)):
        r = cfg.total - k
        ops, speed = {}, {}
        for kind in TransformKind:
            code = CodeSpec(k, r, spec, kind)
            ops[kind] = compile_schedule(cauchy_parity_matrix(code), kind).stats.total_region_ops
            speed[kind] = bench.measure("pyrit", "encode", code, cfg.size, 1, iterations=50)
        e, p = TransformKind.EMBEDDING, TransformKind.PARITY
        print(f"{k:>3} {r:>3} {ops[e]:>8} {ops[p]:>8} {speed[e]:>9.3f} {speed[p]:>9.3f} "
              f"{choose_transform(k, r).label}")


if __name__ == "__main__":
    main()
