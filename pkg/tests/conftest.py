"""Shared helpers: seeded random model generators and spectral oracles.

Oracles here are intentionally independent of the library's iteration
paths: spectra come from numpy's eigvals, reference solves from numpy's
dense solver, and reference functionals from literal double sums.
"""

import numpy as np
import pytest

from maxeig import TridiagonalQ


@pytest.fixture
def rng():
    return np.random.default_rng(20170429)


def random_primitive(rng, n):
    """Strictly positive matrix: primitive with exponent one."""
    return rng.uniform(0.1, 1.0, (n, n))


def random_generator(rng, n, killed=1):
    """Generator with zero row sums except ``killed`` random killing rows.

    The maximal row sum is exactly zero, which is what the A/Q
    equivalence argument needs.
    """
    q = rng.uniform(0.1, 1.0, (n, n))
    np.fill_diagonal(q, 0.0)
    kill = np.zeros(n)
    rows = rng.choice(n, size=killed, replace=False)
    kill[rows] = rng.uniform(0.1, 0.5, killed)
    np.fill_diagonal(q, -(q.sum(axis=1) + kill))
    return q


def random_tridiagonal(rng, n, interior=True):
    """Random TridiagonalQ on states 0..n with positive rates.

    ``interior`` picks whether killing is spread over the interior or
    kept in the last state only (the degenerate transform case).
    """
    a = rng.uniform(0.3, 2.0, n)
    b = rng.uniform(0.3, 2.0, n)
    if interior:
        c = rng.uniform(0.05, 0.8, n + 1) * rng.integers(0, 2, n + 1)
        if not c[:n].any():
            c[rng.integers(0, n)] = 0.3
        return TridiagonalQ(a=a, b=np.concatenate([b, [0.0]]), c=c)
    kill = rng.uniform(0.3, 1.5)
    return TridiagonalQ(a=a, b=np.concatenate([b, [kill]]))


def spectrum(m):
    """All eigenvalues by LAPACK (test oracle)."""
    return np.linalg.eigvals(np.asarray(m))


def perron_root(a):
    """Spectral radius of a nonnegative-ish matrix: the largest real part."""
    return spectrum(a).real.max()


def lambda_min(q):
    """Smallest eigenvalue of -Q (the spectral gap of the generator)."""
    ev = spectrum(-np.asarray(q))
    return ev.real.min()


def delta_double_sum(mu, phi, v):
    """Literal O(N^2) evaluation of the per-iterate lower-bound functional."""
    n = len(v)
    best = -np.inf
    for i in range(n):
        head = phi[i] * sum(mu[j] * v[j] for j in range(i + 1))
        tail = sum(mu[j] * phi[j] * v[j] for j in range(i + 1, n))
        best = max(best, (head + tail) / v[i])
    return best
