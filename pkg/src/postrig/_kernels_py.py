"""Pure-Python (numpy) kernel backend.

Same contract as the compiled extension ``postrig._kernels``: given the
coefficients c_1..c_n, evaluate

    C(x) = sum_{k=1}^n c_k cos(k x)    and    S(x) = sum_{k=1}^n c_k sin(k x)

simultaneously for an array of angles, by the backward three-term (Clenshaw)
recurrence.  The recurrence is run in its Reinsch-modified forms, branched on
the sign of cos x, so it stays stable near x = 0 and x = pi; x is reduced
modulo 2*pi first to keep the recurrence arguments bounded.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_TWO_PI = 2.0 * np.pi


def pair_sums(coeffs: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (C, S) for coefficient vector ``coeffs`` at angles ``x``."""
    c = np.ascontiguousarray(coeffs, dtype=np.float64)
    xs = np.asarray(x, dtype=np.float64)
    C = np.zeros(xs.shape, dtype=np.float64)
    S = np.zeros(xs.shape, dtype=np.float64)
    n = c.shape[0]
    if n == 0 or xs.size == 0:
        return C, S

    xr = np.mod(xs, _TWO_PI)
    half = 0.5 * xr
    s2 = np.sin(half)
    c2 = np.cos(half)
    cosx = 1.0 - 2.0 * s2 * s2
    sinx = 2.0 * s2 * c2

    near_zero = cosx > 0.0
    for mask, flip in ((near_zero, False), (~near_zero, True)):
        if not mask.any():
            continue
        if flip:
            # kappa = 2 cos x + 2 = 4 cos^2(x/2); e_k = c_k + kappa*u_{k+1} - e_{k+1}
            kappa = 4.0 * c2[mask] * c2[mask]
            u = np.zeros(kappa.shape)
            e = np.zeros(kappa.shape)
            for k in range(n - 1, -1, -1):
                e_new = c[k] + kappa * u - e
                u = e_new - u
                e = e_new
            C[mask] = u * (0.5 * kappa) - e
        else:
            # kappa = 2 cos x - 2 = -4 sin^2(x/2); d_k = c_k + kappa*u_{k+1} + d_{k+1}
            kappa = -4.0 * s2[mask] * s2[mask]
            u = np.zeros(kappa.shape)
            d = np.zeros(kappa.shape)
            for k in range(n - 1, -1, -1):
                d_new = c[k] + kappa * u + d
                u = d_new + u
                d = d_new
            C[mask] = u * (0.5 * kappa) + d
        S[mask] = u * sinx[mask]
    return C, S
