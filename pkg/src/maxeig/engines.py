"""Globally initialized iteration engines for maximal/minimal eigenpairs.

Five engines share one stepping core.  For a matrix A (real, possibly with
negative entries, satisfying the power-positivity condition) the target is
the maximal eigenpair; for a generator-form matrix Q (nonnegative
off-diagonals, nonpositive row sums) the target is the minimal eigenpair
of -Q.  All engines start from the uniform vector, so no model-specific
initial data is needed.

Engine roles per step, with r_min/r_max the componentwise ratio extremes
of the operator applied to the iterate and rq the Rayleigh quotient:

=============  =========  ==========================  ===================
engine         operator   reported z (next shift)     secondary y
=============  =========  ==========================  ===================
rqi_nonneg     A          rq                          r_max
sii_nonneg     A          r_max (certified >= rho)    rq
rqi_q          -Q         rq                          r_max
sii_q          -Q         r_min (certified lower bd)  r_max
sii_complex    A complex  max ratio of real parts     conj-Rayleigh (the
                                                      convergent output)
=============  =========  ==========================  ===================
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PositivityViolation, RowSumViolation, SingularSystem, ZeroComponent
from .linalg import as_square_matrix, as_vector, lu_solve

STOP_RULES = ("ratio_gap", "shift_delta", "complex_y_delta")
SHIFT_STRATEGIES = ("rayleigh", "cw_upper", "cw_lower", "convex")

#: row sums are "equal" when their spread is below this (trivial case)
CONSTANT_ROWSUM_EPS = 1e-12


@dataclass(frozen=True)
class IterationConfig:
    """Tolerances and strategy knobs shared by every engine.

    ``shift_strategy``/``stop_rule`` default to the engine's own choice
    when None.  ``xi`` is the convex-combination weight used when
    ``shift_strategy='convex'`` (accepted by sii_q only).
    """

    tol: float = 1e-6
    max_iter: int = 100
    shift_strategy: str | None = None
    xi: float = 0.69
    stop_rule: str | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0.0 <= self.xi <= 1.0:
            raise ValueError("xi must lie in [0, 1]")
        if self.shift_strategy is not None and self.shift_strategy not in SHIFT_STRATEGIES:
            raise ValueError(f"unknown shift strategy {self.shift_strategy!r}")
        if self.stop_rule is not None and self.stop_rule not in STOP_RULES:
            raise ValueError(f"unknown stop rule {self.stop_rule!r}")


@dataclass
class IterationStep:
    """One iteration record: the bound/quotient triple and the iterate."""

    n: int
    x: float
    y: complex | float
    z: float
    v: np.ndarray
    residual: float


@dataclass
class IterationTrace:
    steps: list[IterationStep] = field(default_factory=list)
    stop_reason: str = "max_iter"
    solves_performed: int = 0


@dataclass
class Eigenpair:
    """Approximate eigenpair with the trace that produced it."""

    value: complex | float
    vector: np.ndarray
    algorithm_id: str
    trace: IterationTrace


def _resolve(cfg, engine_strategy, engine_stop, allow_convex=False):
    cfg = cfg if cfg is not None else IterationConfig()
    strategy = cfg.shift_strategy or engine_strategy
    if strategy != engine_strategy and not (allow_convex and strategy == "convex"):
        raise ValueError(
            f"this engine shifts by {engine_strategy!r}; got {cfg.shift_strategy!r}"
        )
    stop = cfg.stop_rule or engine_stop
    return cfg, strategy, stop


def _uniform(n):
    return np.full(n, 1.0 / np.sqrt(n))


def _initial_vector(n, v0, dtype=float):
    if v0 is None:
        v = _uniform(n).astype(dtype)
    else:
        v = as_vector(v0, n, "v0").astype(dtype)
        v = v / np.sqrt(np.vdot(v, v).real)
    return v


def _trivial_pair(value, n, algorithm_id):
    trace = IterationTrace(steps=[], stop_reason="converged_gap", solves_performed=0)
    return Eigenpair(value=value, vector=_uniform(n), algorithm_id=algorithm_id, trace=trace)


def _run_real(t, system, z0, v0, roles, cfg, stop, algorithm_id):
    """Shared stepping core of the four real engines.

    ``t`` is the ratio operator (A or -Q) and ``system(z)`` builds the
    matrix of the linear solve.  ``roles`` fixes how the ratio extremes
    and the Rayleigh quotient map onto (x, y, z): 'rqi' reports the
    Rayleigh quotient as z, 'sii_a' the upper ratio bound, 'sii_q' the
    lower one; the reported z is always the next shift.  Safe ('sii_*')
    engines demand strictly positive iterates; Rayleigh engines tolerate
    mixed signs and retry once with a perturbed shift if a component of
    the solution is exactly zero.
    """
    steps = []
    v = v0
    z_shift = z0
    reason = "max_iter"
    for n in range(1, cfg.max_iter + 1):
        m = system(z_shift)
        try:
            w = lu_solve(m, v)
        except SingularSystem:
            reason = "singular_stop"
            break
        if w.sum() < 0:
            w = -w
        if roles == "rqi" and (w == 0).any():
            # a zero component makes the ratios blow up; one perturbed
            # re-solve keeps the run reproducible before giving up
            try:
                w = lu_solve(system(z_shift + cfg.tol), v)
            except SingularSystem:
                reason = "singular_stop"
                break
            if w.sum() < 0:
                w = -w
        if roles != "rqi" and (w <= 0).any():
            raise PositivityViolation(
                f"iterate {n} lost strict positivity; input violates the "
                "engine's precondition"
            )
        bad = np.flatnonzero(w == 0)
        if bad.size:
            raise ZeroComponent(f"w[{bad[0]}] is zero at iterate {n}", index=int(bad[0]))
        tw = t @ w
        ratios = tw / w
        r_min = float(ratios.min())
        r_max = float(ratios.max())
        rq = float((w @ tw) / (w @ w))
        residual = float(np.abs(m @ w - v).max())
        v = w / np.sqrt(w @ w)
        if roles == "rqi":
            x, y, z = r_min, r_max, rq
        elif roles == "sii_a":
            x, y, z = r_min, rq, r_max
        else:  # sii_q
            x, y, z = rq, r_max, r_min
        steps.append(IterationStep(n=n, x=x, y=y, z=z, v=v, residual=residual))
        z_shift = z
        if n >= 2:
            if stop == "ratio_gap" and r_max - r_min < cfg.tol:
                reason = "converged_gap"
                break
            if stop == "shift_delta" and abs(z - steps[-2].z) < cfg.tol:
                reason = "converged_delta"
                break
    trace = IterationTrace(steps=steps, stop_reason=reason, solves_performed=len(steps))
    if steps:
        return Eigenpair(steps[-1].z, steps[-1].v, algorithm_id, trace)
    return Eigenpair(z0, v0, algorithm_id, trace)


def _a_form_inputs(a, v0):
    a = as_square_matrix(a)
    if np.iscomplexobj(a):
        raise ValueError("real engine got a complex matrix; use sii_complex")
    n = a.shape[0]
    row_sums = a.sum(axis=1)
    v = _initial_vector(n, v0)
    return a, n, row_sums, v


def rqi_nonneg(a, cfg=None, v0=None):
    """Rayleigh-quotient iteration for the maximal eigenpair of A.

    Starts from the uniform vector with the max row sum as shift; each
    step solves (z·I - A)w = v, renormalizes, and shifts by the Rayleigh
    quotient.  Constant row sums short-circuit to the exact pair (m, 1)
    with zero solves.  The Rayleigh shift may enter the region below
    rho(A) where iterates change sign; that is tolerated here (use
    sii_nonneg for the certified-safe variant).
    """
    cfg, _, stop = _resolve(cfg, "rayleigh", "ratio_gap")
    a, n, row_sums, v = _a_form_inputs(a, v0)
    m_max = float(row_sums.max())
    if np.ptp(row_sums) <= CONSTANT_ROWSUM_EPS * (1.0 + abs(m_max)):
        return _trivial_pair(m_max, n, "rqi")
    eye = np.eye(n)
    return _run_real(a, lambda z: z * eye - a, m_max, v, "rqi", cfg, stop, "rqi")


def sii_nonneg(a, cfg=None, v0=None):
    """Shifted inverse iteration for the maximal eigenpair of A.

    Same stepping as rqi_nonneg but the shift is the certified upper
    ratio bound max_j (Aw)_j/w_j, which never falls below rho(A): the
    reported z-sequence decreases to rho(A) and every iterate stays
    strictly positive on primitive input (PositivityViolation otherwise).
    """
    cfg, _, stop = _resolve(cfg, "cw_upper", "ratio_gap")
    a, n, row_sums, v = _a_form_inputs(a, v0)
    m_max = float(row_sums.max())
    if np.ptp(row_sums) <= CONSTANT_ROWSUM_EPS * (1.0 + abs(m_max)):
        return _trivial_pair(m_max, n, "sii")
    eye = np.eye(n)
    return _run_real(a, lambda z: z * eye - a, m_max, v, "sii_a", cfg, stop, "sii")


def _q_form_inputs(q, v0):
    q = as_square_matrix(q)
    if np.iscomplexobj(q):
        raise ValueError("generator engine got a complex matrix")
    n = q.shape[0]
    row_sums = q.sum(axis=1)
    worst = int(np.argmax(row_sums))
    if row_sums[worst] > CONSTANT_ROWSUM_EPS:
        raise RowSumViolation(
            f"row {worst} sums to {row_sums[worst]:g} > 0; not a generator"
        )
    v = _initial_vector(n, v0)
    return q, n, row_sums, v


def rqi_q(q, cfg=None, v0=None):
    """Rayleigh-quotient iteration for the minimal eigenpair of -Q.

    Starts at shift 0 and solves (-Q - z·I)w = v with the Rayleigh
    quotient of -Q as the next shift.  Positive row sums raise
    RowSumViolation; constant row sums short-circuit to (-s, 1).
    """
    cfg, _, stop = _resolve(cfg, "rayleigh", "ratio_gap")
    q, n, row_sums, v = _q_form_inputs(q, v0)
    if np.ptp(row_sums) <= CONSTANT_ROWSUM_EPS:
        return _trivial_pair(-float(row_sums[0]), n, "rqi-q")
    t = -q
    eye = np.eye(n)
    return _run_real(t, lambda z: t - z * eye, 0.0, v, "rqi", cfg, stop, "rqi-q")


def sii_q(q, cfg=None, v0=None):
    """Shifted inverse iteration for the minimal eigenpair of -Q.

    The shift is the certified lower ratio bound min_j ((-Q)w)_j/w_j,
    nondecreasing toward lambda_min(-Q); the Rayleigh quotient of each
    iterate is recorded as the (nonincreasing) x-sequence.  With
    ``shift_strategy='convex'`` the zero initial shift is replaced by the
    blend ``convex_initial_shift(q, xi)``, which trades the safety
    certificate for speed.
    """
    cfg, strategy, stop = _resolve(cfg, "cw_lower", "ratio_gap", allow_convex=True)
    q, n, row_sums, v = _q_form_inputs(q, v0)
    if np.ptp(row_sums) <= CONSTANT_ROWSUM_EPS:
        return _trivial_pair(-float(row_sums[0]), n, "sii-q")
    z0 = convex_initial_shift(q, cfg.xi) if strategy == "convex" else 0.0
    t = -q
    eye = np.eye(n)
    return _run_real(t, lambda z: t - z * eye, z0, v, "sii_q", cfg, stop, "sii-q")


def convex_initial_shift(q, xi):
    """Blended initial shift for sii_q: xi times the upper ratio bound of
    -Q at the uniform vector plus (1 - xi) times its Rayleigh quotient.

    Equivalent to blending the lower row-sum bound with the Rayleigh
    quotient on the shifted matrix A = Q + m·I (the shift m cancels).
    xi = 1 gives the plain bound, xi = 0 the plain Rayleigh quotient.
    """
    if not 0.0 <= xi <= 1.0:
        raise ValueError("xi must lie in [0, 1]")
    q = as_square_matrix(q)
    if np.iscomplexobj(q):
        raise ValueError("convex_initial_shift expects a real matrix")
    n = q.shape[0]
    neg_sums = -q.sum(axis=1)
    return float(xi * neg_sums.max() + (1.0 - xi) * neg_sums.sum() / n)


def sii_complex(a, cfg=None, v0=None):
    """Shifted inverse iteration for the maximal eigenpair of a complex
    matrix whose powers have eventually-positive real parts.

    The shift is the upper ratio bound of Re(A) against the real part of
    the iterate; the conjugated Rayleigh quotient y = v*·A·v is the
    sequence that converges to the (real, positive) dominant eigenvalue,
    and the returned value is the final y.  Stops when consecutive y
    differ by less than tol.
    """
    cfg, _, stop = _resolve(cfg, "cw_upper", "complex_y_delta")
    if stop == "ratio_gap":
        raise ValueError("the complex engine has no two-sided ratio gap")
    a = as_square_matrix(a).astype(np.complex128)
    n = a.shape[0]
    a_re = a.real.copy()
    v = _initial_vector(n, v0, dtype=complex)
    z_shift = float((a_re @ np.ones(n)).max())
    eye = np.eye(n, dtype=complex)
    steps = []
    reason = "max_iter"
    for it in range(1, cfg.max_iter + 1):
        m = z_shift * eye - a
        try:
            w = lu_solve(m, v)
        except SingularSystem:
            reason = "singular_stop"
            break
        if w.real.sum() < 0:
            w = -w
        wr = w.real
        bad = np.flatnonzero(wr == 0)
        if bad.size:
            raise ZeroComponent(
                f"Re(w)[{bad[0]}] vanished at iterate {it}", index=int(bad[0])
            )
        ratios = (a_re @ wr) / wr
        residual = float(np.abs(m @ w - v).max())
        v = w / np.sqrt(np.vdot(w, w).real)
        y = complex(np.vdot(v, a @ v))
        z = float(ratios.max())
        steps.append(
            IterationStep(n=it, x=float(ratios.min()), y=y, z=z, v=v, residual=residual)
        )
        z_shift = z
        if it >= 2:
            if stop == "complex_y_delta" and abs(y - steps[-2].y) < cfg.tol:
                reason = "converged_delta"
                break
            if stop == "shift_delta" and abs(z - steps[-2].z) < cfg.tol:
                reason = "converged_delta"
                break
    trace = IterationTrace(steps=steps, stop_reason=reason, solves_performed=len(steps))
    if steps:
        return Eigenpair(steps[-1].y, steps[-1].v, "complex", trace)
    return Eigenpair(complex(z_shift), v, "complex", trace)
