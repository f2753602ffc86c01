"""Sparse exact linear algebra over RatFunc.

Vectors are dicts {index: RatFunc} without zero entries.  A matrix is stored
by columns: column c is the image of basis vector c, so ``M[r][c]`` is read
as ``M.cols[c][r]``.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional

from .ratfunc import ONE_RF, ZERO_RF, RatFunc

Vector = Dict[int, RatFunc]


def vec_add(u: Vector, v: Vector, c: RatFunc = ONE_RF) -> Vector:
    """u + c*v."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        z = x * c if c is not ONE_RF else x
        z = z if y is None else y + z
        if z:
            out[k] = z
        else:
            out.pop(k, None)
    return out


def vec_scale(v: Vector, c: RatFunc) -> Vector:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def vec_is_proportional(u: Vector, v: Vector) -> bool:
    """True when u and v are nonzero and span the same line."""
    if not u or not v or set(u) != set(v):
        return False
    k0 = min(u)
    ratio = u[k0] / v[k0]
    return all(u[k] == ratio * v[k] for k in u)


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Optional[Dict[int, Vector]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = {c: v for c, v in (cols or {}).items() if v}

    @classmethod
    def from_entries(cls, nrows, ncols, entries) -> "SparseMatrix":
        """Build from an iterable of (row, col, value)."""
        cols: Dict[int, Vector] = {}
        for r, c, x in entries:
            if not isinstance(x, RatFunc):
                x = RatFunc.const(x)
            if x:
                cols.setdefault(c, {})[r] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: ONE_RF} for i in range(n)})

    @classmethod
    def diagonal(cls, values: List[RatFunc]) -> "SparseMatrix":
        return cls(len(values), len(values), {i: {i: x} for i, x in enumerate(values) if x})

    @classmethod
    def zero(cls, nrows, ncols) -> "SparseMatrix":
        return cls(nrows, ncols, {})

    def entry(self, r: int, c: int) -> RatFunc:
        return self.cols.get(c, {}).get(r, ZERO_RF)

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for c, x in v.items():
            col = self.cols.get(c)
            if col:
                out = vec_add(out, col, x)
        return out

    def apply_transpose(self, v: Vector) -> Vector:
        """Row-vector action v -> v*M, returned as a vector indexed by columns."""
        out: Vector = {}
        for c, col in self.cols.items():
            acc = ZERO_RF
            for r, x in col.items():
                y = v.get(r)
                if y is not None:
                    acc = acc + x * y
            if acc:
                out[c] = acc
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.nrows, other.ncols,
                            {c: self.apply(col) for c, col in other.cols.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._same_shape(other)
        cols = dict(self.cols)
        for c, col in other.cols.items():
            cols[c] = vec_add(cols.get(c, {}), col)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(RatFunc.const(-1))

    def scale(self, c: RatFunc) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {k: vec_scale(v, c) for k, v in self.cols.items()})

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product; the first factor is the major index."""
        nb_r, nb_c = other.nrows, other.ncols
        cols: Dict[int, Vector] = {}
        for c1, col1 in self.cols.items():
            for c2, col2 in other.cols.items():
                out: Vector = {}
                for r1, x in col1.items():
                    for r2, y in col2.items():
                        out[r1 * nb_r + r2] = x * y
                cols[c1 * nb_c + c2] = out
        return SparseMatrix(self.nrows * nb_r, self.ncols * nb_c, cols)

    def restrict(self, rows: List[int], cols: List[int]) -> "SparseMatrix":
        """Submatrix on the given row and column index lists (renumbered)."""
        rpos = {r: i for i, r in enumerate(rows)}
        out: Dict[int, Vector] = {}
        for j, c in enumerate(cols):
            col = self.cols.get(c)
            if col:
                v = {rpos[r]: x for r, x in col.items() if r in rpos}
                if v:
                    out[j] = v
        return SparseMatrix(len(rows), len(cols), out)

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.nrows == other.nrows and self.ncols == other.ncols and self.cols == other.cols

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def to_dense(self) -> List[List[RatFunc]]:
        return [[self.entry(r, c) for c in range(self.ncols)] for r in range(self.nrows)]

    def first_difference(self, other: "SparseMatrix"):
        """(row, col) of the first differing entry in row-major order, or None."""
        keys = set()
        for c, col in self.cols.items():
            keys.update((r, c) for r in col)
        for c, col in other.cols.items():
            keys.update((r, c) for r in col)
        for r, c in sorted(keys):
            if self.entry(r, c) != other.entry(r, c):
                return (r, c)
        return None


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Every stored vector has entry 1 at its pivot and every other stored
    vector is zero there, so a vector v of the span equals
    ``sum(v[p] * b_p)`` over the pivots p.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: Dict[int, Vector] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        for p, row in self.rows.items():
            x = v.get(p)
            if x is not None:
                v = vec_add(v, row, -x)
        return v

    def add(self, v: Vector) -> Optional[Vector]:
        """Insert v; return the new normalized basis row, or None if v is in the span."""
        v = self.reduce(v)
        if not v:
            return None
        p = min(v)
        inv = v[p].inverse()
        v = {k: x * inv for k, x in v.items()}
        for q, row in self.rows.items():
            x = row.get(p)
            if x is not None:
                self.rows[q] = vec_add(row, v, -x)
        self.rows[p] = v
        return v

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vector) -> Dict[int, RatFunc]:
        """Coordinates of v (assumed in the span) keyed by pivot."""
        return {p: v[p] for p in self.rows if p in v}

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def basis(self) -> List[Vector]:
        return [self.rows[p] for p in self.pivots()]


def nullspace(m: SparseMatrix) -> List[Vector]:
    """Basis of {v : m v = 0} by Gaussian elimination on the rows."""
    # rows of m as vectors indexed by column
    rows: Dict[int, Vector] = {}
    for c, col in m.cols.items():
        for r, x in col.items():
            rows.setdefault(r, {})[c] = x
    ech = EchelonBasis()
    for r in sorted(rows):
        ech.add(rows[r])
    pivots = set(ech.rows)
    out = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v: Vector = {f: ONE_RF}
        for p, row in ech.rows.items():
            x = row.get(f)
            if x is not None:
                v[p] = -x
        out.append(v)
    return out


def matrix_power(m: SparseMatrix, k: int) -> SparseMatrix:
    out = SparseMatrix.identity(m.nrows)
    base = m
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def generalized_eigenspace(m: SparseMatrix, value: RatFunc) -> List[Vector]:
    """Kernel of (m - value)^n for square m of size n."""
    n = m.nrows
    shifted = m - SparseMatrix.identity(n).scale(value)
    return nullspace(matrix_power(shifted, n) if n > 1 else shifted)


def span_dimension(vectors: Iterable[Vector]) -> int:
    ech = EchelonBasis()
    for v in vectors:
        ech.add(v)
    return len(ech)
