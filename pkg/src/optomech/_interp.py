"""Cubic Hermite evaluation on uniform grids.

Derivative channels are stored alongside the values, so interpolation never
re-differences the grid.
"""

from __future__ import annotations

import numpy as np


def hermite_eval(step: float, y: np.ndarray, dy: np.ndarray, x) -> np.ndarray | float:
    """Evaluate the C1 cubic Hermite interpolant of samples (y, dy) at x.

    The samples live on the uniform grid 0, step, 2*step, ...; x must lie
    inside [0, (len(y) - 1) * step] up to roundoff.
    """
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)

    idx = np.clip(np.floor(xs / step).astype(int), 0, y.shape[0] - 2)
    u = xs / step - idx
    u2 = u * u
    u3 = u2 * u

    h00 = 2.0 * u3 - 3.0 * u2 + 1.0
    h10 = u3 - 2.0 * u2 + u
    h01 = -2.0 * u3 + 3.0 * u2
    h11 = u3 - u2

    out = (
        h00 * y[idx]
        + h10 * step * dy[idx]
        + h01 * y[idx + 1]
        + h11 * step * dy[idx + 1]
    )
    return out[0] if scalar else out
