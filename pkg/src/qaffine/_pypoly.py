"""Dense integer polynomial kernels, pure-Python reference implementation.

A polynomial is a tuple of ints, lowest degree first, with no trailing zeros.
The zero polynomial is the empty tuple.  ``qaffine._cpoly`` exports the same
functions with identical semantics.
"""
from math import gcd

ZERO = ()
ONE = (1,)


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def pneg(a):
    return tuple(-c for c in a)


def pscale(a, c):
    if c == 0:
        return ZERO
    return tuple(c * x for x in a)


def pmul(a, b):
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def pshift(a, k):
    """Multiply by q**k (k >= 0)."""
    if not a:
        return ZERO
    return (0,) * k + tuple(a)


def pcontent(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def pprimitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ZERO
    g = pcontent(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return tuple(a)
    return tuple(c // g for c in a)


def pdivexact(a, b):
    """Quotient a / b; raises ArithmeticError unless b divides a over Z."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO
    db = len(b) - 1
    da = len(a) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    rem = list(a)
    lb = b[-1]
    quot = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = rem[k + db]
        if c == 0:
            continue
        qk, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = qk
        for j in range(db + 1):
            rem[k + j] -= qk * b[j]
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return trim(quot)


def pprem(a, b):
    """Pseudo-remainder of a by b (b nonzero)."""
    db = len(b) - 1
    rem = list(a)
    lb = b[-1]
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lb * x for x in rem]
        for j in range(db + 1):
            rem[shift + j] -= c * b[j]
        rem = list(trim(rem))
    return tuple(rem)


def pgcd(a, b):
    """Greatest common divisor over Z[q], leading coefficient positive."""
    if not a:
        return _with_content(pprimitive(b), pcontent(b)) if b else ZERO
    if not b:
        return _with_content(pprimitive(a), pcontent(a))
    # low-order zeros: factor out the common power of q first
    va = _valuation(a)
    vb = _valuation(b)
    v = min(va, vb)
    a = a[va:]
    b = b[vb:]
    c = gcd(pcontent(a), pcontent(b))
    a = pprimitive(a)
    b = pprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = pprem(a, b)
        a, b = b, pprimitive(r)
        if not b:
            break
    if not b:
        g = a
    else:
        g = ONE  # b is a nonzero constant
    return pshift(_with_content(pprimitive(g), c), v)


def _with_content(a, c):
    return a if c == 1 else tuple(c * x for x in a)


def _valuation(a):
    for i, c in enumerate(a):
        if c:
            return i
    return 0
