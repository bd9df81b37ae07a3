"""Array coercion shared by the evaluation routines."""
import numpy as np


def real_array(a) -> np.ndarray:
    """``a`` as a float array; extended-precision input keeps its dtype.

    The finite-difference oracle evaluates fields in ``np.longdouble`` to
    push its roundoff floor down. Everything else runs in float64.
    """
    a = np.asarray(a)
    if a.dtype == np.longdouble:
        return a
    return a.astype(float, copy=False)
