"""Region-op counts of pyrit vs the CRS bitmatrix baseline, plus coset-weight statistics.

    python3 scripts/xor_counts.py [--configs 8:4:gf16,40:20:gf64,20:40:gf64]
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from pyrit.field import field_spec, field_to_bitmatrix
from pyrit.matrix import CodeSpec, cauchy_parity_matrix
from pyrit.ring import phi1, sparse_transform, weight
from pyrit.schedule import choose_transform, compile_crs_schedule, compile_schedule, phi1_schedule


@dataclass(frozen=True)
class CountConfig:
    k: int
    r: int
    field: str

    @classmethod
    def parse(cls, text):
        k, r, f = text.split(":")
        return cls(int(k), int(r), f)

    @property
    def code(self):
        return CodeSpec(self.k, self.r, field_spec(self.field), choose_transform(self.k, self.r))


def weight_stats(name):
    spec = field_spec(name)
    nz = range(1, spec.size)
    sparse = Fraction(sum(weight(sparse_transform(u, spec)) for u in nz), len(nz))
    plain = Fraction(sum(weight(phi1(u, spec)) for u in nz), len(nz))
    rows = Fraction(sum(sum(map(sum, field_to_bitmatrix(u, spec))) for u in nz), len(nz) * spec.w)
    print(f"{spec.name}: mean sparse weight {sparse} = {float(sparse):.3f}, "
          f"mean phi1 weight {float(plain):.3f}, mean bitmatrix row ones {float(rows):.3f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--configs", default="8:4:gf16,40:20:gf64,20:40:gf64")
    args = ap.parse_args()
    for name in ("gf16", "gf64"):
        weight_stats(name)
    print(f"{'config':>22} {'pyrit':>8} {'phi1':>8} {'crs':>8} {'ratio':>7}")
    for cfg in map(CountConfig.parse, args.configs.split(",")):
        code = cfg.code
        m = cauchy_parity_matrix(code)
        p = compile_schedule(m, code.transform).stats.total_region_ops
        u = phi1_schedule(m, code.transform).stats.total_region_ops
        c = compile_crs_schedule(m, kind=code.transform).stats.total_region_ops
        label = f"({cfg.k},{cfg.r}) {cfg.field}/{code.transform.label}"
        print(f"{label:>22} {p:>8} {u:>8} {c:>8} {p / c:>7.3f}")


if __name__ == "__main__":
    main()
