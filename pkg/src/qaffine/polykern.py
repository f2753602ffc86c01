"""Backend selection for the integer polynomial kernels.

The compiled module is used when it has been built; setting the environment
variable ``QAFFINE_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
import os

if os.environ.get("QAFFINE_PURE_PYTHON"):
    from . import _pypoly as _impl
    BACKEND = "python"
else:
    try:
        from . import _cpoly as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pypoly as _impl
        BACKEND = "python"

ZERO = ()
ONE = (1,)

trim = _impl.trim
padd = _impl.padd
psub = _impl.psub
pneg = _impl.pneg
pscale = _impl.pscale
pmul = _impl.pmul
pshift = _impl.pshift
pcontent = _impl.pcontent
pprimitive = _impl.pprimitive
pdivexact = _impl.pdivexact
pprem = _impl.pprem
pgcd = _impl.pgcd

__all__ = [
    "BACKEND", "ZERO", "ONE", "trim", "padd", "psub", "pneg", "pscale", "pmul",
    "pshift", "pcontent", "pprimitive", "pdivexact", "pprem", "pgcd",
]
