"""Generator matrices over GF(2^w): generalized Cauchy parity, inversion,
MDS checking and bitmatrix expansion for the CRS baseline."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import Singular, TooManySymbols
from .field import (
    FieldElem,
    FieldSpec,
    field_to_bitmatrix,
    gf_inv,
    gf_mul,
    linear_map_bitmatrix,
    mul_table,
)
from .transforms import TransformKind, tau, tau_inv


@dataclass(frozen=True)
class FieldMatrix:
    rows: int
    cols: int
    entries: tuple
    spec: FieldSpec

    def __post_init__(self):
        assert len(self.entries) == self.rows * self.cols
        assert all(0 <= e < self.spec.size for e in self.entries)

    @classmethod
    def from_rows(cls, rows, spec: FieldSpec) -> FieldMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        assert all(len(r) == ncols for r in rows)
        return cls(len(rows), ncols, tuple(e for r in rows for e in r), spec)

    @classmethod
    def identity(cls, size: int, spec: FieldSpec) -> FieldMatrix:
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], spec)

    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def select_rows(self, idx) -> FieldMatrix:
        idx = list(idx)
        return FieldMatrix(len(idx), self.cols, tuple(e for i in idx for e in self.row(i)), self.spec)

    def select_cols(self, idx) -> FieldMatrix:
        idx = list(idx)
        return FieldMatrix.from_rows([[r[j] for j in idx] for r in self.to_rows()], self.spec)

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        assert self.cols == other.rows and self.spec == other.spec
        mt = mul_table(self.spec)
        out = []
        for i in range(self.rows):
            a = self.row(i)
            row = []
            for j in range(other.cols):
                acc = 0
                for t in range(self.cols):
                    acc ^= mt[a[t]][other.entries[t * other.cols + j]]
                row.append(acc)
            out.append(row)
        return FieldMatrix.from_rows(out, self.spec)

    def mul_vec(self, v) -> list:
        mt = mul_table(self.spec)
        out = []
        for i in range(self.rows):
            acc = 0
            for a, x in zip(self.row(i), v):
                acc ^= mt[a][x]
            out.append(acc)
        return out

    def pretty(self) -> str:
        width = 1 if self.spec.w <= 4 else 2
        return "\n".join(" ".join(f"{e:0{width}x}" for e in r) for r in self.to_rows())


@dataclass(frozen=True)
class CodeSpec:
    k: int
    r: int
    spec: FieldSpec
    transform: TransformKind

    def __post_init__(self):
        if self.k < 1 or self.r < 1:
            raise ValueError("k and r must be >= 1")
        if self.k + self.r > self.spec.size:
            raise TooManySymbols(f"k+r={self.k + self.r} exceeds {self.spec.size} Cauchy points")

    @property
    def total(self) -> int:
        return self.k + self.r


@lru_cache(maxsize=None)
def cauchy_parity_matrix(code: CodeSpec) -> FieldMatrix:
    """r x k generalized Cauchy matrix with ones on row 0 and column 0.

    Points x_i = k + i and y_j = j; entries 1 / (x_i + y_j), then rows scaled
    to make column 0 ones and columns scaled to make row 0 ones.
    """
    spec, k, r = code.spec, code.k, code.r
    c = [[gf_inv((k + i) ^ j, spec) for j in range(k)] for i in range(r)]
    for i in range(r):
        f = gf_inv(c[i][0], spec)
        c[i] = [gf_mul(f, e, spec) for e in c[i]]
    for j in range(k):
        f = gf_inv(c[0][j], spec)
        for i in range(r):
            c[i][j] = gf_mul(f, c[i][j], spec)
    return FieldMatrix.from_rows(c, spec)


def invert(m: FieldMatrix) -> FieldMatrix:
    """Gauss-Jordan inversion with first-nonzero pivoting."""
    if m.rows != m.cols:
        raise ValueError("matrix is not square")
    spec, size = m.spec, m.rows
    mt = mul_table(spec)
    a = m.to_rows()
    inv = [[int(i == j) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next((i for i in range(col, size) if a[i][col]), None)
        if piv is None:
            raise Singular(f"no pivot in column {col}")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = gf_inv(a[col][col], spec)
        ff = mt[f]
        a[col] = [ff[e] for e in a[col]]
        inv[col] = [ff[e] for e in inv[col]]
        for i in range(size):
            g = a[i][col]
            if i == col or not g:
                continue
            mg = mt[g]
            a[i] = [x ^ mg[y] for x, y in zip(a[i], a[col])]
            inv[i] = [x ^ mg[y] for x, y in zip(inv[i], inv[col])]
    return FieldMatrix.from_rows(inv, spec)


def generator_matrix(code: CodeSpec) -> FieldMatrix:
    """Systematic (k+r) x k generator: identity stacked over the parity part."""
    ident = FieldMatrix.identity(code.k, code.spec)
    return FieldMatrix.from_rows(ident.to_rows() + cauchy_parity_matrix(code).to_rows(), code.spec)


def decode_matrix(code: CodeSpec, survivors) -> tuple[FieldMatrix, list]:
    """Recovery rows for the erased data symbols.

    Returns (D, erased) where row i of D, applied to the survivor symbols in
    the given order, reproduces data symbol erased[i].
    """
    survivors = list(survivors)
    if len(survivors) != code.k or len(set(survivors)) != code.k:
        raise ValueError(f"need exactly {code.k} distinct survivors, got {survivors}")
    if any(not 0 <= s < code.total for s in survivors):
        raise ValueError("survivor index out of range")
    erased = [j for j in range(code.k) if j not in survivors]
    if not erased:
        return FieldMatrix(0, code.k, (), code.spec), erased
    # With data survivors d_S and parity survivors p_P = C[P,E] d_E + C[P,S] d_S,
    # d_E = C[P,E]^-1 (p_P + C[P,S] d_S): an e x e inversion instead of k x k.
    spec = code.spec
    mt = mul_table(spec)
    c = cauchy_parity_matrix(code)
    pos = {idx: p for p, idx in enumerate(survivors)}
    par = [idx - code.k for idx in survivors if idx >= code.k]
    data_surv = [idx for idx in survivors if idx < code.k]
    try:
        sub_inv = invert(c.select_rows(par).select_cols(erased))
    except Singular as exc:  # pragma: no cover - impossible for an MDS parity part
        raise AssertionError("decode system singular; parity matrix is not MDS") from exc
    rows = []
    for a in range(len(erased)):
        inv_row = sub_inv.row(a)
        row = [0] * code.k
        for b, pi in enumerate(par):
            row[pos[pi + code.k]] = inv_row[b]
        for ds in data_surv:
            acc = 0
            for b, pi in enumerate(par):
                acc ^= mt[inv_row[b]][c[pi, ds]]
            row[pos[ds]] = acc
        rows.append(row)
    return FieldMatrix.from_rows(rows, spec), erased


def decode_matrix_full(code: CodeSpec, survivors) -> tuple[FieldMatrix, list]:
    """Reference: rows of the inverse of the full k x k survivor system."""
    survivors = list(survivors)
    erased = [j for j in range(code.k) if j not in survivors]
    a_inv = invert(generator_matrix(code).select_rows(survivors))
    return a_inv.select_rows(erased), erased


def determinant(rows, spec: FieldSpec) -> FieldElem:
    mt = mul_table(spec)
    a = [list(r) for r in rows]
    size = len(a)
    det = 1
    for col in range(size):
        piv = next((i for i in range(col, size) if a[i][col]), None)
        if piv is None:
            return 0
        a[col], a[piv] = a[piv], a[col]
        det = mt[det][a[col][col]]
        pinv = gf_inv(a[col][col], spec)
        for i in range(col + 1, size):
            g = mt[a[i][col]][pinv]
            if g:
                mg = mt[g]
                a[i] = [x ^ mg[y] for x, y in zip(a[i], a[col])]
    return det


def is_mds(parity: FieldMatrix) -> bool:
    """Every square submatrix of the parity part is nonsingular.

    Exponential in min(r, k); meant for small codes.
    """
    rows = parity.to_rows()
    if any(e == 0 for e in parity.entries):
        return False
    for size in range(2, min(parity.rows, parity.cols) + 1):
        for ri in combinations(range(parity.rows), size):
            for ci in combinations(range(parity.cols), size):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if determinant(sub, parity.spec) == 0:
                    return False
    return True


def entry_bitmatrix(a: FieldElem, spec: FieldSpec,
                    kind: TransformKind = TransformKind.EMBEDDING) -> list:
    """w x w bitmatrix of one entry as the pyrit codec with ``kind`` applies it.

    Embedding computes plain field products; the parity path computes
    tau^-1(a * tau(d)), so its bitmatrix is the conjugate.
    """
    if kind is TransformKind.EMBEDDING:
        return field_to_bitmatrix(a, spec)
    return linear_map_bitmatrix(lambda d: tau_inv(gf_mul(a, tau(d, spec), spec), spec), spec.w)


def expand_bitmatrix(m: FieldMatrix, kind: TransformKind = TransformKind.EMBEDDING) -> np.ndarray:
    w = m.spec.w
    out = np.zeros((m.rows * w, m.cols * w), np.uint8)
    cache = {}
    for i in range(m.rows):
        for j in range(m.cols):
            e = m[i, j]
            if e not in cache:
                cache[e] = np.array(entry_bitmatrix(e, m.spec, kind), np.uint8)
            out[i * w:(i + 1) * w, j * w:(j + 1) * w] = cache[e]
    return out
