"""Shared numerical helpers for the test-suite (independent of the package)."""
import numpy as np
from scipy.optimize import minimize_scalar


def refined_extrema(f, lo, hi, n=20001, xatol=1e-12):
    """Locate interior local maxima and minima of a smooth, vectorised ``f`` on [lo, hi].

    A dense sample brackets each extremum; a bounded scalar minimiser
    refines it.  Returns two lists of ``(u, f(u))``.
    """
    u = np.linspace(lo, hi, n)
    y = np.asarray(f(u), dtype=float)
    maxima, minima = [], []
    for i in range(1, n - 1):
        a, b = u[i - 1], u[i + 1]
        if y[i] > y[i - 1] and y[i] >= y[i + 1]:
            r = minimize_scalar(lambda v: -f(v), bounds=(a, b), method="bounded",
                                options={"xatol": xatol})
            maxima.append((r.x, f(r.x)))
        elif y[i] < y[i - 1] and y[i] <= y[i + 1]:
            r = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": xatol})
            minima.append((r.x, f(r.x)))
    return maxima, minima
