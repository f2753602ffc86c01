"""Affine Cartan data: matrices, symmetrizers and the derived constants.

Matrices follow the convention ``C[i][j] = <alpha_i^vee, alpha_j>``, so the
simple root alpha_j has fundamental-weight coordinates given by column j.
Nodes are numbered 0..n with node 0 the affine node; for A_2n^(2) the
numbering is reversed relative to the usual table so that the node carrying
mu = 2 is node n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, List, Tuple

Matrix = Tuple[Tuple[int, ...], ...]

_MIN_RANK = {"A": 1, "B": 3, "C": 2, "D": 4}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class AffineType:
    """Kac label X_N^(r); ``rank`` is the rank n of the finite part."""

    letter: str
    index: int
    twist: int = 1

    def __post_init__(self):
        if self.letter not in "ABCDEFG" or len(self.letter) != 1:
            raise CartanError(f"unknown type letter {self.letter!r}")
        if self.twist not in (1, 2, 3):
            raise CartanError(f"twist order must be 1, 2 or 3, got {self.twist}")
        self.rank  # validates the pair

    @property
    def rank(self) -> int:
        X, N, r = self.letter, self.index, self.twist
        if r == 1:
            if X in _MIN_RANK:
                if N < _MIN_RANK[X]:
                    raise CartanError(f"{self}: rank {N} below the minimum {_MIN_RANK[X]}")
                return N
            if N not in _EXCEPTIONAL[X]:
                raise CartanError(f"{self}: no exceptional type of rank {N}")
            return N
        if r == 2:
            if X == "A":
                if N % 2 == 0 and N >= 2:
                    return N // 2
                if N % 2 == 1 and N >= 5:
                    return (N + 1) // 2
                raise CartanError(f"{self}: A_N^(2) needs N even >= 2 or N odd >= 5")
            if X == "D":
                if N >= 3:
                    return N - 1
                raise CartanError(f"{self}: D_N^(2) needs N >= 3")
            if X == "E" and N == 6:
                return 4
            raise CartanError(f"{self}: not a twisted affine type")
        if X == "D" and N == 4:
            return 2
        raise CartanError(f"{self}: only D4^3 has twist order 3")

    @property
    def kind(self) -> str:
        """Table family, e.g. 'A1', 'A2n2', 'A2n-12', 'D4_3'."""
        if self.twist == 1:
            return self.letter + "1"
        if self.letter == "A":
            return "A2n2" if self.index % 2 == 0 else "A2n-12"
        if self.twist == 3:
            return "D43"
        return "Dn+12" if self.letter == "D" else "E62"

    def __str__(self):
        return f"{self.letter}{self.index}^{self.twist}"


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*\^\s*\(?\s*(\d)\s*\)?\s*$")


def parse_type(text: str) -> AffineType:
    """Parse 'A1^1', 'a2^2', 'D4^(3)'."""
    m = _TYPE_RE.match(text)
    if not m:
        raise CartanError(f"cannot parse affine type {text!r}; expected e.g. A1^1")
    return AffineType(m.group(1).upper(), int(m.group(2)), int(m.group(3)))


@dataclass(frozen=True)
class Weight:
    """Coordinates on the fundamental weights omega_1..omega_n."""

    coeffs: Tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)


@dataclass(frozen=True)
class CartanData:
    affine_type: AffineType
    C: Matrix
    r: Tuple[Fraction, ...]
    mu: Tuple[int, ...]
    d: Tuple[int, ...]
    twist_order: int
    bar_node: Dict[int, int] = field(hash=False, compare=False)
    rvee_hvee: int
    finite_cartan: Matrix

    @property
    def n(self) -> int:
        return len(self.C) - 1

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def is_twisted(self) -> bool:
        return self.twist_order > 1

    @property
    def epsilon_order(self) -> int:
        return self.twist_order

    def is_a2n_special(self, i: int) -> bool:
        """True for the node (A_2n^(2), n)."""
        return self.affine_type.kind == "A2n2" and i == self.n

    def neighbours(self, i: int) -> List[int]:
        return [j for j in self.nodes if j != i and self.C[i][j] != 0]


# ---------------------------------------------------------------- finite tables

def _chain(n: int) -> List[List[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _link(m, i, j, aij=-1, aji=-1):
    m[i][j], m[j][i] = aij, aji


def _finite_cartan(X: str, n: int) -> List[List[int]]:
    """Finite Cartan matrix, 0-based indices for nodes 1..n."""
    if X == "A":
        return _chain(n)
    if X == "B":  # alpha_n short
        m = _chain(n)
        _link(m, n - 2, n - 1, -1, -2)
        return m
    if X == "C":  # alpha_n long
        m = _chain(n)
        _link(m, n - 2, n - 1, -2, -1)
        return m
    if X == "D":  # chain 1..n-1, node n attached to node n-2
        m = [row + [0] for row in _chain(n - 1)] + [[0] * n]
        m[n - 1][n - 1] = 2
        _link(m, n - 1, n - 3)
        return m
    if X == "E":  # chain 1..n-1, node n attached to node 3
        m = [row + [0] for row in _chain(n - 1)] + [[0] * n]
        m[n - 1][n - 1] = 2
        _link(m, n - 1, 2)
        return m
    if X == "F":  # alpha1 - alpha2 => alpha3 - alpha4
        m = _chain(4)
        _link(m, 1, 2, -1, -2)
        return m
    if X == "G":
        return [[2, -1], [-3, 2]]
    raise CartanError(X)


def _symmetrizer(C) -> List[Fraction]:
    """Positive r with r_i C_ij = r_j C_ji, fixed by r_0 = 1 before normalization."""
    n = len(C)
    r: List[Fraction] = [None] * n  # type: ignore
    r[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and C[i][j] != 0:
                val = r[i] * C[i][j] / C[j][i]
                if r[j] is None:
                    r[j] = val
                    stack.append(j)
                elif r[j] != val:
                    raise CartanError("matrix is not symmetrizable")
    if any(x is None for x in r):
        raise CartanError("Cartan matrix is not indecomposable")
    return r


def _positive_roots(C) -> List[Tuple[int, ...]]:
    n = len(C)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                pair = sum(C[i][j] * beta[j] for j in range(n))
                gamma = tuple(beta[j] - (pair if j == i else 0) for j in range(n))
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in roots:
                    roots.add(gamma)
                    new.append(gamma)
        frontier = new
    return sorted(roots, key=lambda b: (sum(b), b))


def _untwisted(X: str, n: int) -> List[List[int]]:
    fin = _finite_cartan(X, n)
    r = _symmetrizer(fin)
    theta = _positive_roots(fin)[-1]

    def form(u, v):  # (u, v) = sum u_i v_j r_i C_ij
        return sum(u[i] * v[j] * r[i] * fin[i][j] for i in range(n) for j in range(n))

    tt = form(theta, theta)
    full = [[0] * (n + 1) for _ in range(n + 1)]
    full[0][0] = 2
    for j in range(n):
        unit = tuple(int(k == j) for k in range(n))
        c0j = -2 * form(theta, unit) / tt
        if c0j.denominator != 1:
            raise CartanError("non-integral affine entry")
        full[0][j + 1] = int(c0j)
        full[j + 1][0] = -sum(theta[k] * fin[j][k] for k in range(n))
        for k in range(n):
            full[j + 1][k + 1] = fin[j][k]
    return full


def _twisted(kind: str, n: int) -> List[List[int]]:
    N = n + 1
    m = [[0] * N for _ in range(N)]
    for i in range(N):
        m[i][i] = 2
    if kind == "A2n2":
        if n == 1:
            _link(m, 0, 1, -4, -1)
        else:
            for i in range(1, n):
                _link(m, i, i + 1)
            _link(m, 0, 1, -2, -1)
            _link(m, n - 1, n, -2, -1)
        # reversed numbering: node k becomes node n - k
        return [[m[n - i][n - j] for j in range(N)] for i in range(N)]
    if kind == "A2n-12":
        _link(m, 0, 2)
        _link(m, 1, 2)
        for i in range(2, n):
            _link(m, i, i + 1)
        _link(m, n - 1, n, -2, -1)
        return m
    if kind == "Dn+12":
        for i in range(1, n - 1):
            _link(m, i, i + 1)
        _link(m, 0, 1, -2, -1)
        _link(m, n, n - 1, -2, -1)
        return m
    if kind == "E62":
        _link(m, 0, 1)
        _link(m, 1, 2)
        _link(m, 2, 3, -2, -1)
        _link(m, 3, 4)
        return m
    if kind == "D43":
        _link(m, 0, 1)
        _link(m, 1, 2, -3, -1)
        return m
    raise CartanError(kind)


_HVEE = {"A": lambda n: n + 1, "B": lambda n: 2 * n - 1, "C": lambda n: n + 1,
         "D": lambda n: 2 * n - 2, "E": {6: 12, 7: 18, 8: 30}.get,
         "F": lambda n: 9, "G": lambda n: 4}
_RVEE = {"A": 1, "B": 2, "C": 2, "D": 1, "E": 1, "F": 2, "G": 3}
# Coxeter number of the simply-laced algebra whose diagram automorphism
# produces the twisted type.
_H_TWISTED = {"A2n2": lambda n: 2 * n + 1, "A2n-12": lambda n: 2 * n,
              "Dn+12": lambda n: 2 * n, "E62": lambda n: 12, "D43": lambda n: 6}


def _bar_node(t: AffineType, n: int) -> Dict[int, int]:
    ident = {i: i for i in range(1, n + 1)}
    if t.twist != 1:
        return ident
    if t.letter == "A":
        return {i: n + 1 - i for i in range(1, n + 1)}
    if t.letter == "D" and n % 2 == 1:
        ident[n - 1], ident[n] = n, n - 1
        return ident
    if t.letter == "E" and n == 6:
        ident.update({1: 5, 5: 1, 2: 4, 4: 2})
    return ident


def _det(m) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def check_affine(C) -> None:
    """Raise CartanError unless C is a generalized Cartan matrix of affine type."""
    N = len(C)
    for i in range(N):
        if C[i][i] != 2:
            raise CartanError(f"diagonal entry {i} is {C[i][i]}")
        for j in range(N):
            if i != j and (C[i][j] > 0 or (C[i][j] == 0) != (C[j][i] == 0)):
                raise CartanError(f"bad off-diagonal entry ({i},{j})")
    for size in range(1, N):
        for idx in combinations(range(N), size):
            if _det([[C[i][j] for j in idx] for i in idx]) <= 0:
                raise CartanError(f"principal minor on {idx} is not positive")
    if _det(C) != 0:
        raise CartanError("determinant is nonzero")


@lru_cache(maxsize=None)
def build_cartan(t: AffineType) -> CartanData:
    n = t.rank
    kind = t.kind
    C = _untwisted(t.letter, n) if t.twist == 1 else _twisted(kind, n)
    check_affine(C)
    r = _symmetrizer(C)
    mu = [1] * (n + 1)
    if kind == "A2n2":
        mu[n] = 2
    # normalize: mu_i r_i positive integers with gcd 1
    den = 1
    for x, m in zip(r, mu):
        v = x * m
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(x * m * den) for x, m in zip(r, mu)]
    g = 0
    for v in ints:
        g = gcd(g, v)
    r = [x * den / g for x in r]
    order = t.twist
    d = [int(x) if (order > 1 and x == order) else 1 for x in r]
    if t.twist == 1:
        rh = _RVEE[t.letter] * _HVEE[t.letter](n)
    else:
        rh = _H_TWISTED[kind](n)
    Ct = tuple(tuple(row) for row in C)
    return CartanData(
        affine_type=t,
        C=Ct,
        r=tuple(r),
        mu=tuple(mu),
        d=tuple(d),
        twist_order=order,
        bar_node=_bar_node(t, n),
        rvee_hvee=rh,
        finite_cartan=tuple(tuple(row[1:]) for row in Ct[1:]),
    )


def cartan_from_label(text: str) -> CartanData:
    return build_cartan(parse_type(text))


def simple_root(cd: CartanData, j: int) -> Weight:
    """alpha_j (j in I) in fundamental-weight coordinates: column j."""
    return Weight(tuple(cd.C[i][j] for i in cd.nodes))


def _solve(m: Matrix, b: Tuple[int, ...]) -> List[Fraction]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] for i in range(n)]


def root_coordinates(cd: CartanData, w: Weight) -> List[Fraction]:
    """Coordinates of w on the simple roots alpha_1..alpha_n (exact)."""
    return _solve(cd.finite_cartan, w.coeffs)


def weight_leq(w1: Weight, w2: Weight, cd: CartanData) -> bool:
    """w1 <= w2: w2 - w1 is a nonnegative integer combination of simple roots."""
    coords = root_coordinates(cd, w2 - w1)
    return all(c.denominator == 1 and c >= 0 for c in coords)
