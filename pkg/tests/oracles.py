"""Independent reference implementations used only by the tests.

Everything here deliberately avoids the code paths under test: the Bessel
series uses explicit factorial terms, the eigenvalue oracle is power
iteration with deflation, and the linear solver is textbook Gaussian
elimination.  Slow is fine; independent is the point.
"""

from __future__ import annotations

import math

import numpy as np


def j1_series(x: float, terms: int = 30) -> float:
    """Ascending power series J1(x) = sum_m (-1)^m (x/2)^(2m+1) / (m! (m+1)!)."""
    half = x / 2.0
    total = 0.0
    for m in range(terms):
        term = (-1.0) ** m * half ** (2 * m + 1) / (
            math.factorial(m) * math.factorial(m + 1))
        total += term
    return total


def bisect_root(fn, lo: float, hi: float, iterations: int = 200) -> float:
    f_lo = fn(lo)
    if f_lo == 0.0:
        return lo
    if f_lo * fn(hi) > 0:
        raise ValueError("root not bracketed")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def power_iteration_eigenvalues(a: np.ndarray, iterations: int = 20000,
                                tol: float = 1e-14) -> np.ndarray:
    """All eigenvalues of a symmetric PSD matrix, largest first, by
    power iteration with deflation."""
    a = np.array(a, dtype=float)
    p = a.shape[0]
    out = []
    for k in range(p):
        v = np.full(p, 1.0 / np.sqrt(p))
        lam = 0.0
        for _ in range(iterations):
            w = a @ v
            norm = np.linalg.norm(w)
            if norm < 1e-300:
                lam = 0.0
                break
            v_new = w / norm
            lam_new = float(v_new @ (a @ v_new))
            if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
                lam, v = lam_new, v_new
                break
            lam, v = lam_new, v_new
        out.append(lam)
        a = a - lam * np.outer(v, v)
    return np.array(sorted(out))


def gauss_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = a.shape[0]
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[pivot, col]) < 1e-300:
            raise ValueError("singular matrix")
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        for row in range(col + 1, n):
            f = a[row, col] / a[col, col]
            a[row, col:] -= f * a[col, col:]
            b[row] -= f * b[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1:] @ x[row + 1:]) / a[row, row]
    return x


def grid_min(fn, grid: np.ndarray) -> tuple[float, float]:
    """(argmin, min) of fn over a dense grid."""
    vals = np.array([fn(g) for g in grid])
    k = int(np.argmin(vals))
    return float(grid[k]), float(vals[k])


J1_ROOTS_BELOW_8 = (3.8317059702075123, 7.015586669815619)
