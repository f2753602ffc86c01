"""Laurent monomials in the variables Y_{i,a} with a on the lattice eps^Z q^Q.

A variable is keyed by ``(i, kappa, lam)``: node i and the literal argument
``eps**kappa * q**lam`` (already containing the d_i-th power).  ``lam`` is an
int when integral and a Fraction otherwise, so keys compare and hash
canonically.  The *base level* of a key is ``lam / d_i``.
"""
from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple, Union

from .cartan import CartanData, Weight

Rational = Union[int, Fraction]


class YLatticeError(ValueError):
    pass


def canon(x) -> Rational:
    """int if x is integral, else a reduced Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class SpectralPoint(NamedTuple):
    kappa: int
    lam: Rational


class YVariable(NamedTuple):
    i: int
    kappa: int
    lam: Rational


class APosition(NamedTuple):
    i: int
    kappa: int
    lam: Rational

    @property
    def point(self) -> SpectralPoint:
        return SpectralPoint(self.kappa, self.lam)


class Monomial:
    """Immutable product of Y-variables with nonzero integer exponents."""

    __slots__ = ("_exp", "_hash", "_items")

    def __init__(self, exponents: Optional[Mapping] = None):
        exp = {}
        if exponents:
            for k, e in exponents.items():
                if e:
                    exp[YVariable(k[0], k[1], canon(k[2]))] = int(e)
        self._exp: Dict[YVariable, int] = exp
        self._hash = None
        self._items = None

    @classmethod
    def _raw(cls, exp: Dict) -> "Monomial":
        m = cls.__new__(cls)
        m._exp = exp
        m._hash = None
        m._items = None
        return m

    @classmethod
    def one(cls) -> "Monomial":
        return ONE

    @classmethod
    def y(cls, i: int, kappa: int, lam, e: int = 1) -> "Monomial":
        return cls({(i, kappa, lam): e})

    def items(self) -> Tuple[Tuple[YVariable, int], ...]:
        """(key, exponent) pairs sorted by key."""
        if self._items is None:
            self._items = tuple(sorted(self._exp.items()))
        return self._items

    def keys(self):
        return self._exp.keys()

    def exponent(self, key) -> int:
        return self._exp.get(key, 0)

    def is_one(self) -> bool:
        return not self._exp

    def __len__(self):
        return len(self._exp)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other._exp:
            return self
        if not self._exp:
            return other
        a, b = (self._exp, other._exp) if len(self._exp) >= len(other._exp) else (other._exp, self._exp)
        out = dict(a)
        for k, e in b.items():
            v = out.get(k, 0) + e
            if v:
                out[k] = v
            else:
                del out[k]
        return Monomial._raw(out)

    def inv(self) -> "Monomial":
        return Monomial._raw({k: -e for k, e in self._exp.items()})

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inv()

    def __pow__(self, k: int) -> "Monomial":
        if k == 0:
            return ONE
        return Monomial._raw({key: e * k for key, e in self._exp.items()})

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._exp == other._exp

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._exp.items()))
        return self._hash

    def sort_key(self):
        return self.items()

    def __lt__(self, other: "Monomial"):
        return self.items() < other.items()

    def __repr__(self):
        return f"Monomial({format_monomial(self)})"

    def __str__(self):
        return format_monomial(self)


ONE = Monomial._raw({})


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return m1 * m2


def mono_inv(m: Monomial) -> Monomial:
    return m.inv()


def mono_prod(ms: Iterable[Monomial]) -> Monomial:
    out = ONE
    for m in ms:
        out = out * m
    return out


# ------------------------------------------------------------ literal format

def _fmt_lam(lam) -> str:
    lam = canon(lam)
    return str(lam) if isinstance(lam, int) else f"{lam.numerator}/{lam.denominator}"


def format_monomial(m: Monomial) -> str:
    """Canonical text ``Y[i,kappa,lambda]^e*...``; ``1`` for the identity."""
    if m.is_one():
        return "1"
    parts = []
    for (i, k, lam), e in m.items():
        s = f"Y[{i},{k},{_fmt_lam(lam)}]"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


_FACTOR_RE = re.compile(
    r"\s*Y\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?\]\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?)?\s*")


def parse_monomial(text: str) -> Monomial:
    """Parse factors ``Y[i,kappa,lambda]^e`` joined by ``*`` or ``;``."""
    text = text.strip()
    if text in ("", "1"):
        return ONE
    exp: Counter = Counter()
    for chunk in re.split(r"[*;]", text):
        if chunk.strip() == "1":
            continue
        m = _FACTOR_RE.fullmatch(chunk)
        if not m:
            raise YLatticeError(f"cannot parse monomial factor {chunk.strip()!r}")
        i, k, num, den, e = m.groups()
        lam = canon(Fraction(int(num), int(den) if den else 1))
        exp[(int(i), int(k), lam)] += int(e) if e is not None else 1
    return Monomial(exp)


def monomial_to_json(m: Monomial) -> list:
    out = []
    for (i, k, lam), e in m.items():
        f = Fraction(lam)
        out.append([i, k, f.numerator, f.denominator, e])
    return out


def monomial_from_json(data) -> Monomial:
    exp: Counter = Counter()
    for entry in data:
        if len(entry) != 5:
            raise YLatticeError(f"monomial entry {entry!r} needs 5 fields")
        i, k, num, den, e = entry
        if den == 0:
            raise YLatticeError(f"zero denominator in {entry!r}")
        exp[(int(i), int(k), canon(Fraction(num, den)))] += int(e)
    return Monomial(exp)


# ------------------------------------------------------------ lattice helpers

def _key(cd: CartanData, i: int, kappa: int, lam) -> YVariable:
    return YVariable(i, kappa % cd.twist_order, canon(lam))


def base_level(cd: CartanData, key) -> Rational:
    return canon(Fraction(key[2]) / cd.d[key[0]])


def integral_level(cd: CartanData, key) -> int:
    lvl = base_level(cd, key)
    if not isinstance(lvl, int):
        raise YLatticeError(f"variable {key} is not on the integer lattice (level {lvl})")
    return lvl


def y_of_point(cd: CartanData, i: int, p) -> YVariable:
    """Y_{i, (eps^kappa q^lam)^{d_i}}."""
    kappa, lam = p
    d = cd.d[i]
    return _key(cd, i, d * kappa, d * Fraction(lam))


def y_mono(cd: CartanData, i: int, p, e: int = 1) -> Monomial:
    return Monomial({y_of_point(cd, i, p): e})


def weight(cd: CartanData, m: Monomial) -> Weight:
    coeffs = [0] * cd.n
    for (i, _, _), e in m.items():
        coeffs[i - 1] += e * cd.mu[i]
    return Weight(tuple(coeffs))


def is_dominant(m: Monomial) -> bool:
    return all(e > 0 for e in m._exp.values())


# ------------------------------------------------------------ A-monomials

def a_monomial(cd: CartanData, pos) -> Monomial:
    i, kappa, lam = pos
    if i not in cd.nodes:
        raise YLatticeError(f"node {i} is not in I = 1..{cd.n}")
    lam = Fraction(lam)
    order = cd.twist_order
    exp: Counter = Counter()

    def put(j, k, l, e):
        exp[_key(cd, j, k, l)] += e

    ri = cd.r[i]
    if not cd.is_twisted:
        put(i, 0, lam - ri, 1)
        put(i, 0, lam + ri, 1)
        for j in cd.neighbours(i):
            c = cd.C[j][i]
            shifts = {-1: (0,), -2: (-1, 1), -3: (-2, 0, 2)}.get(c)
            if shifts is None:
                raise YLatticeError(f"unsupported Cartan entry C[{j}][{i}] = {c}")
            for s in shifts:
                put(j, 0, lam + s, -1)
    elif cd.is_a2n_special(i):
        put(i, kappa, lam - 1, 1)
        put(i, kappa, lam + 1, 1)
        put(i, kappa + 1, lam, -1)  # -a = eps * a with eps = -1
        if cd.n > 1:
            put(i - 1, kappa, lam, -1)
    elif ri == 1:
        put(i, kappa, lam - 1, 1)
        put(i, kappa, lam + 1, 1)
        for j in cd.neighbours(i):
            p = -cd.r[j] * cd.C[j][i]
            if p.denominator != 1:
                raise YLatticeError(f"non-integral power {p} in neighbour factor")
            p = int(p)
            put(j, p * kappa, p * lam, -1)
    else:
        put(i, kappa, lam - ri, 1)
        put(i, kappa, lam + ri, 1)
        for j in cd.neighbours(i):
            if cd.r[j] == order:
                put(j, kappa, lam, -1)
            elif cd.r[j] == 1:
                root = lam / order
                if kappa % order != 0 or root.denominator != 1:
                    raise YLatticeError(
                        f"A_{{{i},a}} with a = (kappa={kappa}, lambda={lam}) needs lattice "
                        f"{order}-th roots of a")
                for k in range(order):
                    put(j, k, root, -1)
            else:
                raise YLatticeError(f"unexpected symmetrizer {cd.r[j]} at node {j}")
    return Monomial(exp)


def _top_offset(cd: CartanData, i: int) -> Fraction:
    """Shift from an A-position to the top self-factor of A_{i,a}."""
    if cd.is_a2n_special(i):
        return Fraction(1)
    return Fraction(cd.r[i])


def _levels(cd: CartanData, m: Monomial) -> Dict[Rational, List[Tuple[YVariable, int]]]:
    out: Dict[Rational, List] = {}
    for key, e in m.items():
        out.setdefault(base_level(cd, key), []).append((key, e))
    return out


def decompose_over_A(cd: CartanData, m: Monomial, mref: Monomial) -> Optional[Counter]:
    """Multiset S of A-positions with m = mref * prod A(p)^{-1}, or None.

    The ratio mref/m must be a product of A-monomials.  Its factors at the
    top base level can only be top self-factors of those A's, which fixes
    the A's there; peel them off and descend.
    """
    P = mref * m.inv()
    found: Counter = Counter()
    if P.is_one():
        return found
    floor = min(base_level(cd, k) for k in P.keys())
    while not P.is_one():
        levels = _levels(cd, P)
        top = max(levels)
        peel = ONE
        for (i, k, lam), e in levels[top]:
            if e < 0:
                return None
            off = _top_offset(cd, i)
            pos = APosition(i, k, canon(Fraction(lam) - off))
            # the bottom self-factor sits 2*off below the top one
            if (Fraction(lam) - 2 * off) / cd.d[i] < floor:
                return None
            try:
                A = a_monomial(cd, pos)
            except YLatticeError:
                return None
            found[pos] += e
            peel = peel * A ** e
        P = P * peel.inv()
    return found


def a_product(cd: CartanData, positions: Mapping) -> Monomial:
    """prod A(p)^{c} over a multiset {position: c}."""
    out = ONE
    for pos, c in positions.items():
        out = out * a_monomial(cd, pos) ** c
    return out


def leq(cd: CartanData, m: Monomial, mref: Monomial) -> bool:
    return decompose_over_A(cd, m, mref) is not None


def lt(cd: CartanData, m: Monomial, mref: Monomial) -> bool:
    return m != mref and leq(cd, m, mref)


def _extreme_negative(cd: CartanData, m: Monomial, pick) -> bool:
    if m.is_one():
        raise YLatticeError("right/left negativity is undefined for the identity monomial")
    levels = _levels(cd, m)
    return all(e < 0 for _, e in levels[pick(levels)])


def is_right_negative(cd: CartanData, m: Monomial) -> bool:
    return _extreme_negative(cd, m, max)


def is_left_negative(cd: CartanData, m: Monomial) -> bool:
    return _extreme_negative(cd, m, min)


def trunc_parts(cd: CartanData, m: Monomial, L: int) -> Tuple[Monomial, Monomial, Monomial]:
    """(m^{<=L}, m^{=L}, m^{>=L}) split by base level."""
    le, eq, ge = {}, {}, {}
    for key, e in m.items():
        lvl = integral_level(cd, key)
        if lvl <= L:
            le[key] = e
        if lvl == L:
            eq[key] = e
        if lvl >= L:
            ge[key] = e
    return Monomial._raw(le), Monomial._raw(eq), Monomial._raw(ge)


def part_geq(cd: CartanData, m: Monomial, L: int) -> Monomial:
    return trunc_parts(cd, m, L)[2]


def part_leq(cd: CartanData, m: Monomial, L: int) -> Monomial:
    return trunc_parts(cd, m, L)[0]


def tau_shift(cd: CartanData, m: Monomial, s) -> Monomial:
    s = Fraction(s)
    return Monomial({(i, k, Fraction(lam) + cd.d[i] * s): e for (i, k, lam), e in m.items()})


def sigma_involution(m: Monomial, cd: Optional[CartanData] = None) -> Monomial:
    """Y_{i,a}^{+-1} -> Y_{i,a^{-1}}^{-+1}."""
    order = cd.twist_order if cd is not None else 1
    out = {}
    for (i, k, lam), e in m.items():
        if k and cd is None:
            raise YLatticeError("sigma on eps-twisted variables needs the Cartan data")
        out[YVariable(i, (-k) % order, canon(-Fraction(lam)))] = -e
    return Monomial._raw(out)


def _circ(cd: CartanData, i: int, kappa: int) -> Tuple[int, int]:
    """Node and eps-exponent of the decorated variable (circ Y)_{i,a}."""
    if not cd.is_twisted:
        return cd.bar_node[i], kappa
    if cd.affine_type.letter == "A" and cd.r[i] <= 1:
        return i, (kappa + 1) % cd.twist_order
    return i, kappa


def dual_highest_monomial(cd: CartanData, m: Monomial) -> Monomial:
    """Highest monomial M with sigma(chi_q(L(m))) = chi_q(L(M))."""
    if not is_dominant(m):
        raise YLatticeError("dual_highest_monomial needs a dominant monomial")
    out: Counter = Counter()
    for (i, k, lam), e in m.items():
        j, k2 = _circ(cd, i, -k)
        out[_key(cd, j, k2, -Fraction(lam) - cd.d[i] * cd.rvee_hvee)] += e
    return Monomial(out)


def bar_monomial(cd: CartanData, m: Monomial, ell: int, check_domain: bool = True) -> Monomial:
    """Y_{i,(eps^k q^l)^{d_i}} -> Y_{i,(eps^{-k} q^{ell-l})^{d_i}}."""
    out = {}
    for key, e in m.items():
        i, k, _ = key
        lvl = integral_level(cd, key)
        if check_domain and not 0 <= lvl <= ell:
            raise YLatticeError(f"level {lvl} of {key} is outside [0, {ell}]")
        out[_key(cd, i, -k, cd.d[i] * (ell - lvl))] = e
    return Monomial._raw(out)


def zeta_monomial(cd: CartanData, m: Monomial, ell: int) -> Monomial:
    """Y_{i,(eps^k q^l)^{d_i}} -> (circ Y)_{i,(eps^{-k} q^{ell-l+r h})^{d_i}}^{-1}."""
    out: Counter = Counter()
    for key, e in m.items():
        i, k, _ = key
        lvl = integral_level(cd, key)
        j, k2 = _circ(cd, i, -k)
        out[_key(cd, j, k2, cd.d[i] * (ell - lvl + cd.rvee_hvee))] -= e
    return Monomial(out)


def in_C_ell(cd: CartanData, m: Monomial, ell: int) -> bool:
    if not is_dominant(m):
        return False
    for key in m.keys():
        lvl = base_level(cd, key)
        if not isinstance(lvl, int) or not 0 <= lvl <= ell:
            return False
    return True


def cyclic_pair_ok(cd: CartanData, m: Monomial, mprime: Monomial) -> bool:
    """No variable of m' sits at a(q^r eps^k)^{d_i}, r > 0, above a variable Y_{i,a} of m."""
    for (i, _, lam), _e in m.items():
        d = cd.d[i]
        for (_j, _, lam2), _e2 in mprime.items():
            r = (Fraction(lam2) - Fraction(lam)) / d
            if r > 0 and r.denominator == 1:
                return False
    return True


def pi_twisted(cd: CartanData, tilde: Mapping) -> Monomial:
    """Image of prod tildeY_{sigma^p(i), a}^e given as {(i, p, (kappa, lam)): e}."""
    if not cd.is_twisted:
        raise YLatticeError("pi_twisted needs a twisted type")
    out: Counter = Counter()
    for (i, p, point), e in tilde.items():
        kappa, lam = point
        out[y_of_point(cd, i, (kappa + p, lam))] += e
    return Monomial(out)
