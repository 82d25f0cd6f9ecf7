"""Backend selection for the polygon hot loops.

The compiled extension is used when it was built; setting
``ISOCURVE_PURE_PYTHON=1`` forces the pure-Python implementation.
"""

import os
from fractions import Fraction
from math import lcm

from isocurve import _kernel_py

if os.environ.get("ISOCURVE_PURE_PYTHON") == "1":
    _impl = _kernel_py
else:
    try:
        from isocurve import _kernel as _impl
    except ImportError:  # extension not built
        _impl = _kernel_py

BACKEND = _impl.BACKEND
crossing_pairs = _impl.crossing_pairs
generic_violations = _impl.generic_violations


def available_backends():
    backends = {"python": _kernel_py}
    try:
        from isocurve import _kernel
    except ImportError:
        pass
    else:
        backends["cython"] = _kernel
    return backends


def integer_coordinates(points):
    """Translate and scale rational points onto the integer lattice.

    The map is ``p -> L * (p - min)`` with ``L > 0``, which leaves
    orientations, crossings and x-order unchanged.
    """
    xs = [Fraction(p[0]) for p in points]
    ys = [Fraction(p[1]) for p in points]
    x0, y0 = min(xs), min(ys)
    scale = 1
    for v in xs + ys:
        scale = lcm(scale, v.denominator)
    ix = [int((x - x0) * scale) for x in xs]
    iy = [int((y - y0) * scale) for y in ys]
    return ix, iy
