"""Pure-numpy Euler-Maclaurin Hurwitz zeta kernel (fallback backend).

Evaluates zeta(sigma + i t, a) for a fixed real sigma and shift a in (0,1]
on a whole vector of heights t at once:

    zeta(s,a) = sum_{n=0}^{N-1} (n+a)^{-s}
              + (N+a)^{1-s}/(s-1) + (1/2)(N+a)^{-s}
              + sum_{k=1}^{10} B_{2k}/(2k)! * (s)_{2k-1} * (N+a)^{-s-2k+1}

with N = max(24, |t| + 12) leading terms and Bernoulli corrections through
B_20. With that N the first neglected correction is below 1e-16 relative
for |t| <= 500, and the observed worst error against a 50-digit reference
is ~3e-13 relative over sigma in [-0.5, 3], |t| <= 500.

The compiled twin in _em_cy.pyx implements the identical formula with a
per-point term count; this module buckets points by a term count rounded
up to a multiple of 32 so each bucket is one vectorized pass. The two
backends therefore differ only in floating-point summation order (~1e-13).
"""

from __future__ import annotations

import numpy as np

__all__ = ["hurwitz_grid", "hurwitz_point", "BACKEND"]

BACKEND = "numpy"

# B_{2k}/(2k)! for k = 1..10
_B_OVER_FACT = np.array([
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
])


def _nterms(t: np.ndarray) -> np.ndarray:
    """Leading-sum length per height, rounded up to a multiple of 32."""
    n = np.maximum(24, np.abs(t).astype(np.int64) + 12)
    return ((n + 31) // 32) * 32


def hurwitz_grid(sigma: float, ts: np.ndarray, a: float) -> np.ndarray:
    """zeta(sigma + i*ts[j], a) for every j; complex128 of ts's shape."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    out = np.empty(ts.shape[0], dtype=np.complex128)
    counts = _nterms(ts)
    for N in np.unique(counts):
        sel = np.nonzero(counts == N)[0]
        out[sel] = _eval_bucket(sigma, ts[sel], a, int(N))
    return out


def _eval_bucket(sigma: float, ts: np.ndarray, a: float, N: int) -> np.ndarray:
    ns = np.arange(N, dtype=np.float64) + a
    logs = np.log(ns)
    weights = ns ** (-sigma)
    # leading sum: (n+a)^{-s} = w_n * exp(-i t log(n+a))
    phases = np.exp(np.outer(ts, logs) * (-1j))
    main = phases @ weights.astype(np.complex128)

    s = sigma + 1j * ts
    Na = N + a
    lna = np.log(Na)
    na_ms = np.exp(-sigma * lna) * np.exp(-1j * ts * lna)  # (N+a)^{-s}
    tail = Na * na_ms / (s - 1.0) + 0.5 * na_ms

    x = na_ms / Na  # (N+a)^{-s-1}
    rising = s.copy()  # (s)_1
    for k in range(1, 11):
        tail = tail + _B_OVER_FACT[k - 1] * rising * x
        rising = rising * (s + (2 * k - 1)) * (s + 2 * k)
        x = x / (Na * Na)
    return main + tail


def hurwitz_point(s: complex, a: float) -> complex:
    """Single-point convenience wrapper over the grid kernel."""
    s = complex(s)
    val = hurwitz_grid(s.real, np.array([s.imag]), a)
    return complex(val[0])
