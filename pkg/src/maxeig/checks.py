"""Preconditions and certified bounds: primitivity, Collatz-Wielandt
brackets, the complex-positivity admissibility test, and the A/Q shift.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import as_square_matrix, as_vector, matvec

#: entries of a max-normalized power above this count as strictly positive
POSITIVE_EPS = 1e-14


@dataclass(frozen=True)
class PrimitivityReport:
    """Outcome of the finite power-positivity search.

    ``n0`` is the smallest exponent whose power is entrywise positive,
    verified through exponent 2·n0 - 1 (which certifies all larger
    exponents); None when no such exponent was found within the cap.
    """

    primitive: bool
    n0: int | None
    checked_up_to: int


def default_power_cap(n):
    """Search cap 2(n-1)^2 + 1: twice the classical bound on the least
    positive exponent, which covers the verification window as well."""
    return 2 * (n - 1) ** 2 + 1


def _normalized_powers(a, cap):
    """Yield (k, P_k) where P_k is A^k rescaled by its max modulus.

    Rescaling by a positive scalar preserves signs and zero patterns, so
    positivity tests on P_k agree with those on A^k without overflow.
    Stops early if a power vanishes entirely (a vanished power also rules
    out positivity of every later power).
    """
    p = a.copy()
    for k in range(1, cap + 1):
        scale = np.abs(p).max()
        if scale == 0.0:
            return
        p = p / scale
        yield k, p
        p = p @ a


def _positive(p):
    part = p.real if np.iscomplexobj(p) else p
    return bool((part > POSITIVE_EPS).all())


def _power_search(a, cap):
    """Find the least n0 <= cap with a positive (real part of the) power,
    then verify exponents n0 .. 2n0-1, which certifies all exponents."""
    n0 = None
    verified_to = 0
    checked = 0
    for k, p in _normalized_powers(a, cap):
        checked = k
        pos = _positive(p)
        if n0 is None:
            if pos:
                n0 = k
                verified_to = k
        elif k < 2 * n0:
            if pos:
                verified_to = k
            else:
                return PrimitivityReport(False, None, checked)
        if n0 is not None and verified_to == 2 * n0 - 1:
            return PrimitivityReport(True, n0, checked)
    return PrimitivityReport(False, None, checked if checked else cap)


def is_primitive(a, cap=None):
    """Test whether some power of the real matrix ``a`` is entrywise
    positive, certifying all larger powers via the window n0 .. 2n0-1.

    Works for matrices with negative entries too: positivity is tested on
    the powers themselves.  Exceeding the cap reports primitive=False
    rather than raising.
    """
    a = as_square_matrix(a)
    if np.iscomplexobj(a):
        raise ValueError("is_primitive expects a real matrix")
    if cap is None:
        cap = default_power_cap(a.shape[0])
    return _power_search(a, cap)


def is_complex_admissible(a, cap=None):
    """Complex analogue of ``is_primitive``: the real parts of the powers
    must turn entrywise positive and no power up to the cap may vanish.
    The finite cap can produce false negatives; a False report means "not
    certified within the cap", not a disproof.
    """
    a = as_square_matrix(a).astype(np.complex128)
    if cap is None:
        cap = default_power_cap(a.shape[0])
    return _power_search(a, cap)


def cw_bounds(a, x):
    """Two-sided bracket (min_i (Ax)_i/x_i, max_i (Ax)_i/x_i) from a
    strictly positive trial vector; for nonnegative irreducible ``a`` the
    spectral radius lies between the two values."""
    a = as_square_matrix(a)
    x = as_vector(x, a.shape[0], "x")
    if (x <= 0).any():
        raise ValueError("trial vector must be strictly positive")
    r = matvec(a, x) / x
    return float(r.real.min()), float(r.real.max())


def complex_cw_upper(a, x):
    """Ratio bracket of Re(A)·x against x > 0; bounds the positive
    dominant eigenvalue of an admissible complex matrix."""
    a = as_square_matrix(a)
    return cw_bounds(a.real, x)


def shift_a_to_q(a):
    """Shift a real matrix to generator form: Q = A - m·I with m the
    maximum row sum.  Returns (Q, m); Q has nonpositive row sums whenever
    A is entrywise nonnegative."""
    a = as_square_matrix(a)
    if np.iscomplexobj(a):
        raise ValueError("shift_a_to_q expects a real matrix")
    m = float(a.sum(axis=1).max())
    return a - m * np.eye(a.shape[0]), m


def eig_oracle(a):
    """Full spectrum of a small matrix, for use as a test oracle only.

    Backed by LAPACK via numpy (independent of every iteration engine in
    this package) and capped at 12x12 to keep it out of production paths.
    Returns eigenvalues sorted by descending real part, then imaginary.
    """
    a = as_square_matrix(a)
    if a.shape[0] > 12:
        raise ValueError(f"eig_oracle is limited to 12x12, got {a.shape[0]}")
    ev = np.linalg.eigvals(a)
    order = np.lexsort((-ev.imag, -ev.real))
    return ev[order]
