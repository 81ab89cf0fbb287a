"""Dense and tridiagonal linear algebra shared by the iteration engines.

All operations are pure functions of their arguments; matrices are plain
numpy arrays (real or complex double precision) and are never mutated.
"""

import numpy as np

from . import _kernels
from .errors import NotNormalized, SingularSystem, ZeroComponent

#: residual acceptance factor for linear solves
RESIDUAL_TOL = 1e-10

#: pivots below this (relative to the matrix magnitude) count as singular
PIVOT_TINY = 1e-13


def as_square_matrix(a, name="matrix"):
    """Validate and return ``a`` as a square float64/complex128 array."""
    m = np.asarray(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"{name} must be square and nonempty, got shape {m.shape}")
    m = m.astype(np.complex128 if np.iscomplexobj(m) else np.float64, copy=False)
    if not np.isfinite(m).all():
        raise ValueError(f"{name} contains non-finite entries")
    return m


def as_vector(x, n=None, name="vector"):
    """Validate and return ``x`` as a 1-d float64/complex128 array."""
    v = np.asarray(x)
    if v.ndim != 1 or v.shape[0] == 0:
        raise ValueError(f"{name} must be a nonempty 1-d array, got shape {v.shape}")
    v = v.astype(np.complex128 if np.iscomplexobj(v) else np.float64, copy=False)
    if n is not None and v.shape[0] != n:
        raise ValueError(f"{name} has length {v.shape[0]}, expected {n}")
    if not np.isfinite(v).all():
        raise ValueError(f"{name} contains non-finite entries")
    return v


def matvec(a, x):
    """Matrix-vector product A·x with dimension checking."""
    a = np.asarray(a)
    x = np.asarray(x)
    if a.ndim != 2 or x.ndim != 1 or a.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {x.shape}")
    return a @ x


def _residual_ok(m_inf_norm, w, rhs, residual):
    # Primary contract plus the standard backward-error bound; the latter
    # is what a pivoted solve can actually promise when the shifted system
    # is ill-conditioned by design (inverse iteration near convergence).
    r = np.abs(residual).max()
    bound = RESIDUAL_TOL * (1.0 + np.abs(rhs).max())
    backward = RESIDUAL_TOL * (m_inf_norm * np.abs(w).max() + np.abs(rhs).max())
    return r <= max(bound, backward)


def lu_solve(m, rhs):
    """Solve M·w = rhs by LU with partial pivoting.

    One step of iterative refinement is applied if the first solution
    misses the residual contract; a solution that still misses it, or a
    pivot that is singular to working precision, raises SingularSystem.
    """
    m = as_square_matrix(m)
    rhs = as_vector(rhs, m.shape[0], "rhs")
    if np.iscomplexobj(m) and not np.iscomplexobj(rhs):
        rhs = rhs.astype(np.complex128)
    scale = np.abs(m).max()
    tiny = PIVOT_TINY * (scale if scale > 0 else 1.0)
    lu, piv, fail = _kernels.lu_factor(m, tiny)
    if fail >= 0:
        raise SingularSystem(
            f"matrix is singular to working precision at pivot {fail}", index=fail
        )
    m_inf = np.abs(m).sum(axis=1).max()
    w = _kernels.lu_backsolve(lu, piv, rhs)
    res = rhs - m @ w
    if not _residual_ok(m_inf, w, rhs, res):
        w2 = w + _kernels.lu_backsolve(lu, piv, res)
        res2 = rhs - m @ w2
        if np.abs(res2).max() < np.abs(res).max():
            w, res = w2, res2
        if not _residual_ok(m_inf, w, rhs, res):
            raise SingularSystem("solution residual exceeds contract after refinement")
    return w


def thomas_solve(sub, diag, sup, rhs):
    """Solve a tridiagonal system in O(N).

    ``sub``/``sup`` are the length N-1 off-diagonals of a length-N system.
    Elimination runs without pivoting; if a pivot falls below 1e-13 in
    magnitude, or the residual contract fails, the system is densified and
    handed to ``lu_solve``, which pivots (and raises SingularSystem when
    the system is truly singular).
    """
    diag = as_vector(diag, name="diag")
    n = diag.shape[0]
    empty = np.zeros(0, dtype=diag.dtype)
    sub = as_vector(sub, n - 1, "sub") if n > 1 else empty
    sup = as_vector(sup, n - 1, "sup") if n > 1 else empty
    rhs = as_vector(rhs, n, "rhs")
    x, fail = _kernels.thomas(sub, diag, sup, rhs, PIVOT_TINY)
    if fail >= 0:
        return lu_solve(tridiag_dense(sub, diag, sup), rhs)
    res = rhs - tridiag_matvec(sub, diag, sup, x)
    m_inf = np.abs(diag).copy()
    if n > 1:
        m_inf[1:] += np.abs(sub)
        m_inf[:-1] += np.abs(sup)
    if not _residual_ok(m_inf.max(), x, rhs, res):
        return lu_solve(tridiag_dense(sub, diag, sup), rhs)
    return x


def tridiag_dense(sub, diag, sup):
    """Densify tridiagonal bands into a full matrix."""
    diag = np.asarray(diag)
    n = diag.shape[0]
    m = np.diag(diag)
    if n > 1:
        m[np.arange(1, n), np.arange(n - 1)] = sub
        m[np.arange(n - 1), np.arange(1, n)] = sup
    return m


def tridiag_matvec(sub, diag, sup, x):
    """Product of a tridiagonal matrix (given by bands) with ``x``."""
    y = diag * x
    if len(x) > 1:
        y[1:] += sub * x[:-1]
        y[:-1] += sup * x[1:]
    return y


def ratio_stats(a, w):
    """Componentwise ratio extremes (min_j (Aw)_j/w_j, max_j (Aw)_j/w_j).

    The values feed the Collatz-Wielandt style bounds; index ties are
    irrelevant for the returned extremes.  Raises ZeroComponent if some
    w_j is exactly zero.
    """
    w = np.asarray(w)
    zero = np.flatnonzero(w == 0)
    if zero.size:
        raise ZeroComponent(
            f"w[{zero[0]}] is zero, componentwise ratios undefined", index=int(zero[0])
        )
    r = matvec(a, w) / w
    return r.min(), r.max()


def weighted_norm(v, mu):
    """L2 norm of ``v`` with positive weights ``mu``: sqrt(sum mu_i v_i^2).

    With unit weights this is the Euclidean norm used by the dense engines.
    """
    v = np.asarray(v)
    mu = np.asarray(mu, dtype=float)
    if v.shape != mu.shape:
        raise ValueError(f"length mismatch: {v.shape} vs {mu.shape}")
    if (mu <= 0).any():
        raise ValueError("weights must be strictly positive")
    return float(np.sqrt((mu * np.abs(v) ** 2).sum()))


def rayleigh_quotient(a, v, mu=None):
    """Rayleigh quotient of ``a`` at a unit vector ``v``.

    Unweighted: v*·A·v with the left factor conjugated in the complex
    case; ``v`` must be unit Euclidean.  Weighted: sum_i mu_i v_i (Av)_i
    with ``v`` unit in the L2(mu) norm.  A vector off unit norm by more
    than 1e-12 raises NotNormalized.
    """
    v = np.asarray(v)
    if mu is None:
        nrm = np.sqrt(np.vdot(v, v).real)
        if abs(nrm - 1.0) > 1e-12:
            raise NotNormalized(f"expected unit Euclidean norm, got {nrm!r}")
        out = np.vdot(v, matvec(a, v))
        if np.iscomplexobj(v) or np.iscomplexobj(np.asarray(a)):
            return complex(out)
        return float(out.real)
    nrm = weighted_norm(v, mu)
    if abs(nrm - 1.0) > 1e-12:
        raise NotNormalized(f"expected unit weighted norm, got {nrm!r}")
    return float((np.asarray(mu) * v * matvec(a, v)).sum())
