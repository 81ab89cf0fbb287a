"""Specialized pipeline for tridiagonal generators.

A tridiagonal generator with interior killing is first conjugated by a
diagonal similarity (the h-sequence) into an isospectral generator whose
killing sits entirely in the last state.  For that single-killing form,
explicit weight sequences mu (speed measure) and phi (tail sums) yield a
variational lower bound delta_1 on the minimal eigenvalue of -Q, giving a
certified initial shift; a per-iterate analogue delta_k supplies certified
shifts throughout the run (variant 'b'), while variant 'a' shifts by the
weighted Rayleigh quotient.
"""

from dataclasses import dataclass, field

import numpy as np

from .engines import Eigenpair, IterationConfig, IterationStep, IterationTrace
from .errors import (
    NonpositiveR,
    OverflowGuard,
    PositivityViolation,
    SingularSystem,
    ZeroComponent,
)
from .linalg import thomas_solve, tridiag_matvec, weighted_norm

#: rescale the mu sequence once its log exceeds this (just under 1e280)
LOG_HUGE = 644.0


@dataclass
class TridiagonalQ:
    """Coefficient triple of a tridiagonal generator on states 0..N.

    ``a`` (length N) holds the sub-diagonal rates a_1..a_N and ``b`` the
    super-diagonal rates b_0..b_{N-1}; ``b`` may carry one extra slot
    b[N], the killing rate of the single-killing form.  ``c`` (length
    N+1) holds per-state killing rates.  The represented matrix has
    diagonal -(a_i + b_i + c_i) with the off-range a_0/b_N taken as zero:

    - general form: some c_i > 0; killing is ``c`` alone and any b[N] is
      ignored,
    - single-killing form: c = 0 and b[N] > 0 plays the killing role
      (the last diagonal is -(a_N + b_N)).

    Total killing must be positive: a fully conservative matrix has no
    spectral gap for the pipeline to compute.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray | None = None

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        n = self.a.shape[0]
        if n < 1:
            raise ValueError("need at least one sub-diagonal rate")
        if self.b.shape[0] == n:
            self.b = np.concatenate([self.b, [0.0]])
        if self.b.shape[0] != n + 1:
            raise ValueError(f"b must have length {n} or {n + 1}, got {self.b.shape[0]}")
        if self.c is None:
            self.c = np.zeros(n + 1)
        self.c = np.asarray(self.c, dtype=float)
        if self.c.shape[0] != n + 1:
            raise ValueError(f"c must have length {n + 1}, got {self.c.shape[0]}")
        if (self.a <= 0).any() or (self.b[:n] <= 0).any():
            raise ValueError("off-diagonal rates must be strictly positive")
        if (self.c < 0).any() or self.b[n] < 0:
            raise ValueError("killing rates must be nonnegative")
        if self.total_killing() <= 0:
            raise ValueError("killing rates vanish identically")

    @property
    def n(self):
        """Index of the last state (matrix dimension is n + 1)."""
        return self.a.shape[0]

    def interior_killing(self):
        return bool((self.c[: self.n] > 0).any())

    def total_killing(self):
        if self.interior_killing():
            return float(self.c.sum())
        return float(self.c[self.n] + self.b[self.n])

    def neg_q_bands(self):
        """Bands (sub, diag, sup) of -Q."""
        n = self.n
        diag = np.empty(n + 1)
        diag[0] = self.b[0] + self.c[0]
        diag[1:n] = self.a[: n - 1] + self.b[1:n] + self.c[1:n]
        kill_last = self.c[n] if self.interior_killing() else self.c[n] + self.b[n]
        diag[n] = self.a[n - 1] + kill_last
        return -self.a.copy(), diag, -self.b[:n].copy()

    def to_dense(self):
        """Densify to the generator matrix Q."""
        sub, diag, sup = self.neg_q_bands()
        n = self.n + 1
        q = np.diag(-diag)
        q[np.arange(1, n), np.arange(n - 1)] = -sub
        q[np.arange(n - 1), np.arange(1, n)] = -sup
        return q


def tridiagonal_from_dense(q, rtol=1e-12):
    """Extract a TridiagonalQ from a dense generator matrix.

    Entries outside the three bands must be exactly zero (non-tridiagonal
    input is refused, not densified away); row sums must be nonpositive
    and become the killing rates.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape[0] < 2:
        raise ValueError("expected a square matrix of dimension >= 2")
    n = q.shape[0]
    mask = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :]) > 1
    if q[mask].any():
        raise ValueError("matrix has entries outside the tridiagonal band")
    sub = q[np.arange(1, n), np.arange(n - 1)]
    sup = q[np.arange(n - 1), np.arange(1, n)]
    kill = -q.sum(axis=1)
    tol = rtol * (1.0 + np.abs(q).max())
    if (kill < -tol).any():
        raise ValueError("matrix has a positive row sum; not a generator")
    kill = np.where(kill < 0, 0.0, kill)
    return TridiagonalQ(a=sub, b=sup, c=kill)


@dataclass(frozen=True)
class HData:
    """Similarity weights h_0..h_N with the spill term h_next.

    ``degenerate`` marks inputs whose interior killing already vanishes;
    the transform is then the identity apart from relabeling the last
    killing rate.
    """

    r: np.ndarray
    h: np.ndarray
    h_next: float
    degenerate: bool


def compute_h(q):
    """Similarity weights that move all killing into the last state.

    For interior killing: r_0 = 1 + c_0/b_0, then
    r_n = 1 + (a_n + c_n)/b_n - a_n/(b_n r_{n-1}), h the cumulative
    product, and h_next = c_N h_N + a_N (h_N - h_{N-1}).  Without
    interior killing the weights are trivially one and h_next is the
    existing last-state killing rate.
    """
    n = q.n
    if not q.interior_killing():
        return HData(
            r=np.ones(n),
            h=np.ones(n + 1),
            h_next=float(q.c[n] + q.b[n]),
            degenerate=True,
        )
    a, b, c = q.a, q.b, q.c
    r = np.empty(n)
    r[0] = 1.0 + c[0] / b[0]
    for i in range(1, n):
        r[i] = 1.0 + (a[i - 1] + c[i]) / b[i] - a[i - 1] / (b[i] * r[i - 1])
        if r[i] <= 0:
            raise NonpositiveR(f"h-recursion factor r[{i}] = {r[i]:g} <= 0", index=i)
    if r[0] <= 0:
        raise NonpositiveR(f"h-recursion factor r[0] = {r[0]:g} <= 0", index=0)
    h = np.concatenate([[1.0], np.cumprod(r)])
    h_next = float(c[n] * h[n] + a[n - 1] * (h[n] - h[n - 1]))
    if h_next <= 0:
        raise NonpositiveR(f"transformed killing rate h_next = {h_next:g} <= 0")
    return HData(r=r, h=h, h_next=h_next, degenerate=False)


def h_transform(q, hdata):
    """Conjugate Q by Diag(h): an isospectral single-killing generator.

    The transformed rates are a~_n = a_n h_{n-1}/h_n and
    b~_n = b_n h_{n+1}/h_n, with the killing rate h_next/h_N stored in
    the b[N] slot; the diagonal is unchanged by the conjugation.
    """
    n = q.n
    h = hdata.h
    at = q.a * h[:n] / h[1:]
    bt = np.empty(n + 1)
    bt[:n] = q.b[:n] * h[1:] / h[:n]
    bt[n] = hdata.h_next / h[n]
    return TridiagonalQ(a=at, b=bt, c=np.zeros(n + 1))


@dataclass(frozen=True)
class MuPhi:
    """Speed weights mu, tail sums phi, and the lower-bound functional.

    ``delta1`` is the max over n of
    sqrt(phi_n)·sum_{k<=n} mu_k sqrt(phi_k)
    + (1/sqrt(phi_n))·sum_{j>n} mu_j phi_j^{3/2};
    its inverse is a certified lower bound of lambda_min(-Q) and serves
    as the initial shift.  When the raw mu sequence would overflow, mu is
    uniformly rescaled by exp(log_scale); every quantity derived here is
    invariant under that rescaling.
    """

    mu: np.ndarray
    phi: np.ndarray
    delta1: float
    log_scale: float = 0.0


def _suffix_sums(values):
    out = np.zeros(values.shape[0])
    out[:-1] = np.cumsum(values[::-1])[::-1][1:]
    return out


def compute_mu_phi(qt):
    """Weight sequences of a single-killing tridiagonal generator.

    mu_0 = 1, mu_n = mu_{n-1} b_{n-1}/a_n; phi_n = sum_{k>=n} 1/(mu_k b_k)
    with the killing rate closing the last term.  Raises OverflowGuard if
    the weights span more orders of magnitude than double precision can
    hold even after rescaling.
    """
    n = qt.n
    if qt.interior_killing():
        raise ValueError("killing must sit in the last state; apply h_transform first")
    kill = float(qt.c[n] + qt.b[n])
    ratios = qt.b[:n] / qt.a
    log_mu = np.concatenate([[0.0], np.cumsum(np.log(ratios))])
    log_scale = 0.0
    if log_mu.max() > LOG_HUGE:
        log_scale = float(log_mu.max())
        mu = np.exp(log_mu - log_scale)
    else:
        mu = np.concatenate([[1.0], np.cumprod(ratios)])
    b_full = np.concatenate([qt.b[:n], [kill]])
    inv = 1.0 / (mu * b_full)
    if not np.isfinite(inv).all():
        raise OverflowGuard(
            "weight sequence spans more than double precision allows, "
            "even after rescaling"
        )
    phi = np.cumsum(inv[::-1])[::-1]
    if not np.isfinite(phi).all():
        raise OverflowGuard("tail sums overflow double precision")
    sqrt_phi = np.sqrt(phi)
    head = sqrt_phi * np.cumsum(mu * sqrt_phi)
    tail = _suffix_sums(mu * phi * sqrt_phi) / sqrt_phi
    delta1 = float((head + tail).max())
    return MuPhi(mu=mu, phi=phi, delta1=delta1, log_scale=log_scale)


def delta_k(qt, mp, v):
    """Per-iterate lower-bound functional, evaluated in O(N).

    delta_k(v) = max_i (1/v_i)·[phi_i sum_{j<=i} mu_j v_j
    + sum_{j>i} mu_j phi_j v_j] for strictly positive v; its inverse is a
    certified lower bound of lambda_min(-Q).  The value is invariant
    under positive rescaling of v.
    """
    v = np.asarray(v, dtype=float)
    if v.shape[0] != qt.n + 1:
        raise ValueError(f"v has length {v.shape[0]}, expected {qt.n + 1}")
    zero = np.flatnonzero(v == 0)
    if zero.size:
        raise ZeroComponent(f"v[{zero[0]}] is zero", index=int(zero[0]))
    if (v < 0).any():
        raise ValueError("v must be strictly positive")
    prefix = np.cumsum(mp.mu * v)
    suffix = _suffix_sums(mp.mu * mp.phi * v)
    return float(((mp.phi * prefix + suffix) / v).max())


@dataclass
class TridiagResult:
    """Pipeline output: the eigenpair of the transformed generator plus
    the back-transformed quantities for the original matrix A = Q + m·I
    (rho_a = m - z and g = Diag(h)·v)."""

    eigenpair: Eigenpair
    rho_a: float
    g: np.ndarray
    variant: str
    h: HData
    m: float


def tridiag_pipeline(q, variant="a", cfg=None, m=0.0):
    """Run the full tridiagonal pipeline on a generator.

    Transforms ``q`` to single-killing form, starts from w = sqrt(phi)
    normalized in L2(mu) with the certified shift delta_1^{-1}, and
    iterates tridiagonal solves of (-Q~ - z·I)w = v.  Variant 'a' shifts
    by the weighted Rayleigh quotient, variant 'b' by delta_k^{-1}
    (certified below the target throughout).  Stops when consecutive
    shifts differ by less than tol.  Each step records the certified
    lower bound as x and the Rayleigh quotient as y, so the two-sided
    bracket of the minimal eigenvalue can be read off any trace.

    ``m`` is the shift that produced Q from a nonnegative matrix A
    (Q = A - m·I); with the default 0 the reported rho_a is simply the
    maximal eigenvalue of Q itself.
    """
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    cfg = cfg if cfg is not None else IterationConfig()
    if cfg.shift_strategy is not None:
        raise ValueError("the tridiagonal pipeline fixes its shifts via the variant")
    if cfg.stop_rule not in (None, "shift_delta"):
        raise ValueError("the tridiagonal pipeline stops on shift_delta only")
    hdata = compute_h(q)
    qt = h_transform(q, hdata)
    mp = compute_mu_phi(qt)
    sub, diag, sup = qt.neg_q_bands()
    mu = mp.mu
    w0 = np.sqrt(mp.phi)
    v = w0 / weighted_norm(w0, mu)
    z = 1.0 / mp.delta1
    algorithm_id = f"tri17{variant}"
    steps = []
    reason = "max_iter"
    for k in range(1, cfg.max_iter + 1):
        try:
            w = thomas_solve(sub, diag - z, sup, v)
        except SingularSystem:
            reason = "singular_stop"
            break
        if w.sum() < 0:
            w = -w
        residual = float(np.abs(tridiag_matvec(sub, diag - z, sup, w) - v).max())
        v = w / weighted_norm(w, mu)
        rq = float((mu * v * tridiag_matvec(sub, diag, sup, v)).sum())
        if (v > 0).all():
            lower = 1.0 / delta_k(qt, mp, v)
        elif variant == "b":
            raise PositivityViolation(
                f"iterate {k} lost positivity; the certified shift needs v > 0"
            )
        else:
            lower = float("nan")
        z_new = rq if variant == "a" else lower
        steps.append(
            IterationStep(n=k, x=lower, y=rq, z=z_new, v=v, residual=residual)
        )
        if k >= 2 and abs(z_new - steps[-2].z) < cfg.tol:
            z = z_new
            reason = "converged_delta"
            break
        z = z_new
    trace = IterationTrace(steps=steps, stop_reason=reason, solves_performed=len(steps))
    if steps:
        pair = Eigenpair(steps[-1].z, steps[-1].v, algorithm_id, trace)
    else:
        pair = Eigenpair(z, v, algorithm_id, trace)
    g = hdata.h * pair.vector
    return TridiagResult(
        eigenpair=pair,
        rho_a=float(m - pair.value),
        g=g,
        variant=variant,
        h=hdata,
        m=float(m),
    )
