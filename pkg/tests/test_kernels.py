"""Integer polynomial kernels: both backends against evaluation and each other."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaffine import _pypoly, polykern

BACKENDS = [_pypoly]
try:
    from qaffine import _cpoly
    BACKENDS.append(_cpoly)
except ImportError:  # extension not built
    _cpoly = None

coef = st.integers(min_value=-50, max_value=50)
poly = st.lists(coef, max_size=7).map(_pypoly.trim)
nonzero = poly.filter(bool)
POINTS = (-3, -2, -1, 0, 1, 2, 5)


def ev(p, x):
    return sum(c * x ** k for k, c in enumerate(p))


def rat_gcd_degree(a, b):
    """Degree of gcd over Q by Euclid on Fraction coefficient lists."""
    def rem(x, y):
        x = [Fraction(c) for c in x]
        while len(x) >= len(y) and any(x):
            f = x[-1] / y[-1]
            s = len(x) - len(y)
            for j, c in enumerate(y):
                x[s + j] -= f * c
            while x and x[-1] == 0:
                x.pop()
        return x
    x, y = list(a), list(b)
    while y:
        x, y = y, rem(x, y)
    return len(x) - 1


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
class TestBackend:
    @given(poly, poly)
    def test_ring_ops_evaluate(self, mod, a, b):
        for x in POINTS:
            assert ev(mod.padd(a, b), x) == ev(a, x) + ev(b, x)
            assert ev(mod.psub(a, b), x) == ev(a, x) - ev(b, x)
            assert ev(mod.pmul(a, b), x) == ev(a, x) * ev(b, x)
            assert ev(mod.pneg(a), x) == -ev(a, x)
            assert ev(mod.pscale(a, 7), x) == 7 * ev(a, x)
            assert ev(mod.pshift(a, 2), x) == x * x * ev(a, x)

    @given(poly, nonzero)
    def test_divexact_inverts_mul(self, mod, a, b):
        assert mod.pdivexact(mod.pmul(a, b), b) == a

    @given(nonzero, nonzero, nonzero)
    def test_gcd_divides_and_has_rational_degree(self, mod, a, b, c):
        a, b = mod.pmul(a, c), mod.pmul(b, c)
        g = mod.pgcd(a, b)
        assert g and g[-1] > 0
        mod.pdivexact(a, g)
        mod.pdivexact(b, g)
        assert len(g) - 1 == rat_gcd_degree(a, b)

    def test_inexact_division_raises(self, mod):
        with pytest.raises(ArithmeticError):
            mod.pdivexact((1, 1), (0, 2))
        with pytest.raises(ZeroDivisionError):
            mod.pdivexact((1,), ())

    def test_primitive_and_content(self, mod):
        assert mod.pcontent((4, -6, 8)) == 2
        assert mod.pprimitive((4, -6, -8)) == (-2, 3, 4)
        assert mod.pgcd((), (0, 3)) == (0, 3)
        assert mod.pgcd((2, 2), (4, 4)) == (2, 2)


@pytest.mark.skipif(_cpoly is None, reason="compiled extension not built")
@given(poly, poly)
def test_backends_agree(a, b):
    for name in ("padd", "psub", "pmul"):
        assert getattr(_cpoly, name)(a, b) == getattr(_pypoly, name)(a, b)
    assert _cpoly.pgcd(a, b) == _pypoly.pgcd(a, b)
    if b:
        assert _cpoly.pprem(a, b) == _pypoly.pprem(a, b)


def test_backend_flag():
    assert polykern.BACKEND in ("cython", "python")


@pytest.mark.skipif(_cpoly is None, reason="compiled extension not built")
@given(st.lists(st.integers(-2 ** 70, 2 ** 70), min_size=1, max_size=5).map(_pypoly.trim).filter(bool),
       st.lists(st.integers(-30, 30), min_size=9, max_size=12).map(_pypoly.trim).filter(bool))
def test_overflow_paths_stay_exact(big, dense):
    assert _cpoly.pmul(big, dense) == _pypoly.pmul(big, dense)
    assert _cpoly.padd(big, dense) == _pypoly.padd(big, dense)
    assert _cpoly.pdivexact(_pypoly.pmul(big, dense), dense) == big
    other = _pypoly.padd(dense, (1, 2, 3))
    assert _cpoly.pgcd(_pypoly.pmul(dense, other), _pypoly.pmul(dense, (7, -1))) == \
        _pypoly.pgcd(_pypoly.pmul(dense, other), _pypoly.pmul(dense, (7, -1)))


def test_pure_python_backend_selected_by_env():
    import os
    import subprocess
    import sys
    code = ("from qaffine.polykern import BACKEND\n"
            "from qaffine.sl2engine import extract_qchar, realize_simple\n"
            "from qaffine.ylattice import parse_monomial\n"
            "print(BACKEND, len(extract_qchar(realize_simple(parse_monomial('Y[1,0,0]*Y[1,0,2]'))).terms))")
    env = {**os.environ, "QAFFINE_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "3"]
