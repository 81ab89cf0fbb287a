"""Generator families and embedded fixture matrices used by the tables.

Both model families are returned as dense generators even though they are
sparse: the solvers are dense and the supported sizes stay desk-scale.
"""

from dataclasses import dataclass

import numpy as np

A_RULES = ("reciprocal", "one", "linear", "quadratic")


@dataclass(frozen=True)
class SingleBirthSpec:
    """Single-birth chain on states 0..N-1, truncated at dimension N.

    State i climbs one step at rate i+1 (the climb out of the top state
    leaves the space, so the last row kills at rate N) and drops straight
    to state 0 at rate a_i.  The drop-rate rule names the four studied
    choices: a_k = 1/(k+1), a_k = 1, a_k = k, a_k = k^2.
    """

    n: int
    a_rule: str = "reciprocal"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.a_rule not in A_RULES:
            raise ValueError(f"a_rule must be one of {A_RULES}, got {self.a_rule!r}")

    def a(self, k):
        if self.a_rule == "reciprocal":
            return 1.0 / (k + 1)
        if self.a_rule == "one":
            return 1.0
        if self.a_rule == "linear":
            return float(k)
        return float(k * k)


def single_birth_q(spec):
    """Dense N x N generator of the truncated single-birth chain.

    Row sums are zero except the last, which sums to -N (the killed
    climb).  Upward jumps move exactly one step; downward jumps return to
    state 0 directly, which makes the family non-symmetrizable.
    """
    n = spec.n
    q = np.zeros((n, n))
    q[0, 0] = -1.0
    if n == 1:
        return q
    q[0, 1] = 1.0
    for i in range(1, n - 1):
        q[i, 0] = spec.a(i)
        q[i, i] = -spec.a(i) - (i + 1.0)
        q[i, i + 1] = i + 1.0
    q[n - 1, 0] = spec.a(n - 1)
    q[n - 1, n - 1] = -spec.a(n - 1) - n
    return q


@dataclass(frozen=True)
class BranchingSpec:
    """Killed branching chain on states 1..N.

    Offspring law: p_0 = alpha/2, p_1 = 0, p_k = (2 - alpha)/2^k for
    k >= 2 (a probability measure for 0 < alpha < 2).  State 0 is a
    killing boundary, so only state 1 loses mass; jumps beyond N are
    collapsed into state N.
    """

    n: int
    alpha: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not 0.0 < self.alpha < 2.0:
            raise ValueError("alpha must lie in (0, 2)")

    def p(self, k):
        if k == 0:
            return self.alpha / 2.0
        if k == 1:
            return 0.0
        return (2.0 - self.alpha) / 2.0 ** k

    def tail(self, k):
        """sum_{j >= k} p_j for k >= 2, in closed form (exact at any N)."""
        if k < 2:
            raise ValueError("tail is only needed for k >= 2")
        return (2.0 - self.alpha) / 2.0 ** (k - 1)


def branching_q(spec):
    """Dense N x N generator of the killed branching chain.

    Each of the i individuals at state i branches at rate one: down to
    i-1 with p_0 (into the killing boundary when i = 1), or up to
    i-1+k with p_k.  The last column absorbs the tail mass of jumps
    past N; the top state keeps only its downward jump.  Row 1 sums to
    -p_0, every other row to zero.
    """
    n = spec.n
    p0 = spec.p(0)
    q = np.zeros((n, n))
    for state in range(1, n):
        i = state - 1
        if state >= 2:
            q[i, i - 1] = state * p0
        q[i, i] = -float(state)
        for col_state in range(state + 1, n):
            q[i, col_state - 1] = state * spec.p(col_state - state + 1)
        q[i, n - 1] = state * spec.tail(n - state + 1)
    q[n - 1, n - 2] = n * p0
    q[n - 1, n - 1] = -n * p0
    return q


def fixture(name, b4=None):
    """Embedded benchmark matrices, stored digit for digit.

    ``example1`` is a 5 x 5 generator whose bottom-right killing rate b4
    must be supplied; ``example6`` a 3 x 3 real matrix with negative
    entries; ``example9`` a 3 x 3 complex matrix (coefficients accurate
    to four decimals); ``example18`` a 6 x 6 nonnegative tridiagonal
    matrix.  All are returned as dense arrays.
    """
    if name == "example1":
        if b4 is None:
            raise ValueError("example1 needs the killing parameter b4")
        if b4 <= 0:
            raise ValueError("b4 must be positive")
        return np.array(
            [
                [-3.0, 2.0, 0.0, 1.0, 0.0],
                [4.0, -7.0, 3.0, 0.0, 0.0],
                [0.0, 5.0, -5.0, 0.0, 0.0],
                [10.0, 0.0, 0.0, -16.0, 6.0],
                [0.0, 0.0, 0.0, 11.0, -11.0 - b4],
            ]
        )
    if b4 is not None:
        raise ValueError(f"{name} takes no b4 parameter")
    if name == "example6":
        return np.array([[-1.0, 8.0, -1.0], [8.0, 8.0, 8.0], [-1.0, 8.0, 8.0]])
    if name == "example9":
        return np.array(
            [
                [0.75 - 1.125j, 0.5882 - 0.1471j, 1.0735 + 1.4191j],
                [-0.5 - 1.0j, 2.1765 + 0.7059j, 2.1471 - 0.4118j],
                [2.75 - 0.125j, 0.5882 - 0.1471j, -0.9265 + 0.4191j],
            ]
        )
    if name == "example18":
        return np.array(
            [
                [2.334, 0.9962, 0.0, 0.0, 0.0, 0.0],
                [0.5142, 2.6725, 0.1111, 0.0, 0.0, 0.0],
                [0.0, 0.2115, 2.263, 0.1405, 0.0, 0.0],
                [0.0, 0.0, 0.8442, 2.8457, 0.7595, 0.0],
                [0.0, 0.0, 0.0, 0.2347, 2.2257, 0.0781],
                [0.0, 0.0, 0.0, 0.0, 0.9837, 2.1582],
            ]
        )
    raise ValueError(f"unknown fixture {name!r}")
