"""Exact rational functions in one indeterminate q with integer coefficients."""
from __future__ import annotations

import re
from fractions import Fraction

from .polykern import ONE, ZERO, padd, pdivexact, pgcd, pmul, pneg, pscale


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return ZERO, ONE
    if den != ONE:
        g = pgcd(num, den)
        if g != ONE:
            num = pdivexact(num, g)
            den = pdivexact(den, g)
        if den[-1] < 0:
            num = pneg(num)
            den = pneg(den)
    return num, den


class RatFunc:
    """Reduced fraction num/den of integer polynomials in q.

    ``gcd(num, den) = 1`` over Z[q] and the leading coefficient of ``den`` is
    positive, so two instances are equal iff their coefficient tuples are.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=ZERO, den=ONE, *, _reduced=False):
        if not _reduced:
            num, den = _normalize(tuple(num), tuple(den))
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "RatFunc":
        return cls((c,) if c else ZERO, ONE, _reduced=True)

    @classmethod
    def qpow(cls, k, c: int = 1) -> "RatFunc":
        """The Laurent monomial c * q**k."""
        if c == 0:
            return ZERO_RF
        k = int(k)
        if k >= 0:
            return cls((0,) * k + (c,), ONE, _reduced=True)
        if c < 0:
            return cls((-c,), (0,) * (-k) + (1,), _reduced=True).__neg__()
        return cls((c,), (0,) * (-k) + (1,), _reduced=True)

    @classmethod
    def laurent(cls, coeffs: dict) -> "RatFunc":
        """Sum of c * q**k over a mapping {k: c}."""
        coeffs = {int(k): c for k, c in coeffs.items() if c}
        if not coeffs:
            return ZERO_RF
        low = min(coeffs)
        shift = -low if low < 0 else 0
        top = max(coeffs) + shift
        num = [0] * (top + 1)
        for k, c in coeffs.items():
            num[k + shift] = c
        den = (0,) * shift + (1,)
        return cls(tuple(num), den)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _reduced=True)

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RatFunc(padd(self.num, other.num), ONE, _reduced=True)
            return RatFunc(padd(self.num, other.num), self.den)
        num = padd(pmul(self.num, other.den), pmul(other.num, self.den))
        return RatFunc(num, pmul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0 or not self.num:
                return ZERO_RF
            return RatFunc(pscale(self.num, other), self.den) if self.den != ONE else RatFunc(
                pscale(self.num, other), ONE, _reduced=True)
        if not self.num or not other.num:
            return ZERO_RF
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1 == ONE and d2 == ONE:
            return RatFunc(pmul(n1, n2), ONE, _reduced=True)
        g1 = pgcd(n1, d2) if d2 != ONE else ONE
        g2 = pgcd(n2, d1) if d1 != ONE else ONE
        if g1 != ONE:
            n1 = pdivexact(n1, g1)
            d2 = pdivexact(d2, g1)
        if g2 != ONE:
            n2 = pdivexact(n2, g2)
            d1 = pdivexact(d1, g2)
        num = pmul(n1, n2)
        den = pmul(d1, d2)
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return RatFunc(num, den, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE_RF
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_laurent(self) -> bool:
        """True when the denominator is a pure power of q."""
        return all(c == 0 for c in self.den[:-1]) and self.den[-1] == 1

    def laurent_coeffs(self) -> dict:
        """{exponent: coefficient} for a Laurent polynomial; ValueError otherwise."""
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        shift = len(self.den) - 1
        return {k - shift: c for k, c in enumerate(self.num) if c}

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == ONE:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def to_json(self) -> str:
        return f"{_poly_str(self.num)}/{_poly_str(self.den)}"

    @classmethod
    def from_json(cls, text: str) -> "RatFunc":
        num, _, den = text.partition("/")
        return cls(_parse_poly(num), _parse_poly(den) if den else ONE)


def _poly_str(p) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if k == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = mag + ("q" if k == 1 else f"q^{k}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(q(?:\^(\d+))?)?")


def _parse_poly(text: str):
    text = text.strip().strip("()").replace(" ", "")
    if text in ("", "0"):
        return ZERO
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        sign, mag, qpart, exp = m.groups()
        if not mag and not qpart:
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        c = int(mag) if mag else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp else 1) if qpart else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    top = max(coeffs)
    return tuple(Fraction(coeffs.get(k, 0)).numerator for k in range(top + 1))


ZERO_RF = RatFunc(ZERO, ONE, _reduced=True)
ONE_RF = RatFunc(ONE, ONE, _reduced=True)
Q = RatFunc((0, 1), ONE, _reduced=True)
