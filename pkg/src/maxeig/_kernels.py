"""Hot solver kernels: LU with partial pivoting and tridiagonal elimination.

Every kernel exists in two variants with identical semantics: a pure-numpy
one and a numba ``@njit`` one.  The module-level names (``lu_factor``,
``lu_backsolve``, ``thomas``) point at the njit variant when numba is
importable, unless the environment variable ``MAXEIG_PURE_NUMPY`` is set to
a non-empty value other than ``0``, in which case the numpy variant is used.
Both variants stay importable (``*_numpy`` / ``*_njit``) so they can be
benchmarked against each other; see ``benchmarks/bench_solvers.py``.

Kernels return a failure index instead of raising: callers translate a
nonnegative index into the package's exception types.
"""

import os

import numpy as np

FORCE_NUMPY = os.environ.get("MAXEIG_PURE_NUMPY", "").strip() not in ("", "0")

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    NUMBA_AVAILABLE = False

ACCELERATED = NUMBA_AVAILABLE and not FORCE_NUMPY


def lu_factor_numpy(a, tiny):
    """Factor ``a`` in place as P·L·U with row pivoting.

    Returns ``(lu, piv, fail)`` where ``fail`` is the column at which the
    pivot fell below ``tiny`` (-1 on success).  ``lu`` stores L strictly
    below the diagonal (unit diagonal implied) and U on and above it;
    ``piv`` is the row permutation applied to the right-hand side.
    """
    lu = a.copy()
    n = lu.shape[0]
    piv = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < tiny:
            return lu, piv, k
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            piv[[k, p]] = piv[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        if k + 1 < n:
            lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, piv, -1


def lu_backsolve_numpy(lu, piv, rhs):
    """Solve L·U·x = rhs[piv] for a factorization from ``lu_factor``."""
    x = rhs[piv].astype(lu.dtype)
    n = lu.shape[0]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def thomas_numpy(sub, diag, sup, rhs, tiny):
    """One-pass tridiagonal elimination without pivoting.

    Returns ``(x, fail)``; ``fail`` is the row whose pivot fell below
    ``tiny`` (-1 on success), at which point the caller should fall back
    to the pivoted dense solver.
    """
    n = diag.shape[0]
    c = np.empty(n - 1, dtype=diag.dtype) if n > 1 else np.empty(0, dtype=diag.dtype)
    x = np.empty(n, dtype=diag.dtype)
    d = diag[0]
    if abs(d) < tiny:
        return x, 0
    if n > 1:
        c[0] = sup[0] / d
    x[0] = rhs[0] / d
    for i in range(1, n):
        d = diag[i] - sub[i - 1] * c[i - 1]
        if abs(d) < tiny:
            return x, i
        if i < n - 1:
            c[i] = sup[i] / d
        x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / d
    for i in range(n - 2, -1, -1):
        x[i] -= c[i] * x[i + 1]
    return x, -1


if NUMBA_AVAILABLE:

    @njit(cache=True, nogil=True)
    def lu_factor_njit(a, tiny):
        lu = a.copy()
        n = lu.shape[0]
        piv = np.arange(n)
        for k in range(n):
            p = k
            best = abs(lu[k, k])
            for i in range(k + 1, n):
                m = abs(lu[i, k])
                if m > best:
                    best = m
                    p = i
            if best < tiny:
                return lu, piv, k
            if p != k:
                for j in range(n):
                    t = lu[k, j]
                    lu[k, j] = lu[p, j]
                    lu[p, j] = t
                t = piv[k]
                piv[k] = piv[p]
                piv[p] = t
            pivot = lu[k, k]
            for i in range(k + 1, n):
                f = lu[i, k] / pivot
                lu[i, k] = f
                for j in range(k + 1, n):
                    lu[i, j] -= f * lu[k, j]
        return lu, piv, -1

    @njit(cache=True, nogil=True)
    def lu_backsolve_njit(lu, piv, rhs):
        n = lu.shape[0]
        x = np.empty(n, dtype=lu.dtype)
        for i in range(n):
            x[i] = rhs[piv[i]]
        for i in range(1, n):
            s = x[i]
            for j in range(i):
                s -= lu[i, j] * x[j]
            x[i] = s
        for i in range(n - 1, -1, -1):
            s = x[i]
            for j in range(i + 1, n):
                s -= lu[i, j] * x[j]
            x[i] = s / lu[i, i]
        return x

    @njit(cache=True, nogil=True)
    def thomas_njit(sub, diag, sup, rhs, tiny):
        n = diag.shape[0]
        c = np.empty(n, dtype=diag.dtype)
        x = np.empty(n, dtype=diag.dtype)
        d = diag[0]
        if abs(d) < tiny:
            return x, 0
        if n > 1:
            c[0] = sup[0] / d
        x[0] = rhs[0] / d
        for i in range(1, n):
            d = diag[i] - sub[i - 1] * c[i - 1]
            if abs(d) < tiny:
                return x, i
            if i < n - 1:
                c[i] = sup[i] / d
            x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / d
        for i in range(n - 2, -1, -1):
            x[i] -= c[i] * x[i + 1]
        return x, -1

else:  # pragma: no cover - exercised only when numba is absent
    lu_factor_njit = None
    lu_backsolve_njit = None
    thomas_njit = None


if ACCELERATED:
    lu_factor = lu_factor_njit
    lu_backsolve = lu_backsolve_njit
    thomas = thomas_njit
else:
    lu_factor = lu_factor_numpy
    lu_backsolve = lu_backsolve_numpy
    thomas = thomas_numpy
