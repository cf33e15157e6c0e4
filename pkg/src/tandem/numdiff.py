"""Central finite differences for validating analytic derivatives."""

from __future__ import annotations

import numpy as np


def gradient(f, x, h: float | None = None) -> np.ndarray:
    """Central-difference gradient of a scalar function."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-6 * (1.0 + float(np.linalg.norm(x)))
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


def hessian(f, x, h: float | None = None) -> np.ndarray:
    """Central-difference Hessian, symmetrized."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-5 * (1.0 + float(np.linalg.norm(x)))
    d = x.size
    H = np.empty((d, d))
    for i in range(d):
        ei = np.zeros_like(x)
        ei[i] = h
        for j in range(i, d):
            ej = np.zeros_like(x)
            ej[j] = h
            H[i, j] = (f(x + ei + ej) - f(x + ei - ej)
                       - f(x - ei + ej) + f(x - ei - ej)) / (4.0 * h * h)
            H[j, i] = H[i, j]
    return 0.5 * (H + H.T)
