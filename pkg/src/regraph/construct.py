"""Node-height construction for regular self-similar graphs.

Everything here reduces to one cyclic linear system.  A schedule of
expansion factors rho_1..rho_k (each > 1) fixes partial products
sigma_r and the period ratio tau = sigma_k.  The unknown node heights
u_0..u_{k-1} (lower nodes) satisfy

    u_r - chi_r * u_{(r+n) mod k} = -U_r,

where chi_r is the growth across n consecutive steps starting at r and
U_r collects the two slope contributions of the segment pair based at
r.  The upper heights v_r satisfy the mirrored system with V_r.  The
system splits into gcd(l, m) independent cyclic blocks; each block is
solved in closed form by unrolling the recurrence once around its
cycle, where the chi products telescope to a power of tau.

Three independent routes to the same numbers are provided (expanded
closed form, blockwise accumulation, dense linear solve) so they can
be played against each other in verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .weights import Weights


class ConstructError(ValueError):
    """Invalid construction input."""


class InvalidFactor(ConstructError):
    """Expansion factors must all exceed 1."""


class ScheduleMismatch(ConstructError):
    """Schedule length must equal lcm(l, m) of the paired weights."""


class NotCoprime(ConstructError):
    """Route only valid when the two group sizes are coprime."""


class SingularSystem(ConstructError):
    """The cyclic system has no unique solution."""


@dataclass(frozen=True)
class PowerForm:
    """An expansion factor given exactly as base ** (num / den).

    Keeping the exponent as a rational lets the schedule recover an
    exact period ratio when the exponents sum to an integer (e.g. six
    copies of 2 ** (1/3) give tau = 4 with no rounding drift).
    """

    base: float
    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise InvalidFactor(f"exponent denominator must be positive, got {self.den}")
        if self.base <= 0:
            raise InvalidFactor(f"power base must be positive, got {self.base}")

    @property
    def value(self) -> float:
        return float(self.base) ** (self.num / self.den)


FactorLike = Union[float, PowerForm]


@dataclass(frozen=True)
class ExpansionSchedule:
    """Multiplicative schedule rho_1..rho_k with its partial products.

    sigma_r for 0 <= r < k is the product of the first r factors
    (sigma_0 = 1) and tau = sigma_k is the full-period ratio.  The
    schedule extends to every integer index by sigma_{sk+h} =
    tau^s * sigma_h, so windows left of the base period need no special
    casing.
    """

    factors: tuple[float, ...]
    sigmas: tuple[float, ...]  # sigma_0 .. sigma_{k-1}
    tau: float

    @classmethod
    def from_factors(cls, factors: Sequence[FactorLike]) -> "ExpansionSchedule":
        """Validate factors (> 1 each) and precompute partial products.

        Entries may be plain numbers or PowerForm values; when every
        power-form exponent accumulates to an integer, tau is snapped to
        the exact product instead of the rounded running one.
        """
        if len(factors) == 0:
            raise InvalidFactor("schedule needs at least one factor")
        values = []
        exponents: dict[float, Fraction] = {}
        plain = 1.0
        for i, f in enumerate(factors):
            if isinstance(f, PowerForm):
                val = f.value
                exponents[f.base] = exponents.get(f.base, Fraction(0)) + Fraction(f.num, f.den)
            else:
                val = float(f)
                plain *= val
            if not val > 1.0:
                raise InvalidFactor(f"factor {i} is {val}, must exceed 1")
            values.append(val)
        sigmas = [1.0]
        for val in values[:-1]:
            sigmas.append(sigmas[-1] * val)
        tau = sigmas[-1] * values[-1]
        if exponents and all(e.denominator == 1 for e in exponents.values()):
            tau = plain
            for base, e in exponents.items():
                tau *= float(base) ** int(e)
        return cls(factors=tuple(values), sigmas=tuple(sigmas), tau=tau)

    def __len__(self) -> int:
        return len(self.factors)

    def sigma_at(self, r: int) -> float:
        """Partial product sigma_r, extended to all integers r."""
        s, h = divmod(r, len(self.factors))
        return self.tau**s * self.sigmas[h]

    def psi(self, r: int, s: int) -> float:
        """Growth over s consecutive factors starting after index r:
        psi = sigma_{r+s} / sigma_r.  Periodic up to powers of tau:
        psi(r, s + k) = tau * psi(r, s)."""
        return self.sigma_at(r + s) / self.sigma_at(r)


def chi(weights: Weights, schedule: ExpansionSchedule, r: int) -> float:
    """Growth across one full slope cycle (n steps) starting at r."""
    return schedule.psi(r, weights.n)


def compute_U(weights: Weights, schedule: ExpansionSchedule, r: int) -> float:
    """Inhomogeneous term of the lower-node recurrence at segment r.

    Pairs the rising contribution over the first l steps with the
    falling one over the remaining m.
    """
    l, n = weights.l, weights.n
    pl = schedule.psi(r, l)
    pn = schedule.psi(r, n)
    return weights.alpha_at(r + 1) * (pl - 1.0) - weights.beta_at(r + 1 + l) * (pn - pl)


def compute_V(weights: Weights, schedule: ExpansionSchedule, r: int) -> float:
    """Inhomogeneous term of the upper-node recurrence at segment r."""
    m, n = weights.m, weights.n
    pm = schedule.psi(r, m)
    pn = schedule.psi(r, n)
    return -weights.beta_at(r + 1) * (pm - 1.0) + weights.alpha_at(r + 1 + m) * (pn - pm)


def _solve_cyclic(
    rhs: np.ndarray, mult: np.ndarray, step: int, denom: float
) -> np.ndarray:
    """Solve x_h - mult_h * x_{(h+step) mod p} = -rhs_h on a single cycle.

    Unrolling the recurrence p times telescopes the multiplier product
    to denom + 1, leaving (denom) * x_h = sum of accumulated rhs terms.
    """
    p = len(rhs)
    out = np.empty(p)
    for h in range(p):
        acc = rhs[h]
        prod = 1.0
        for j in range(1, p):
            prod *= mult[(h + (j - 1) * step) % p]
            acc += prod * rhs[(h + j * step) % p]
        out[h] = acc / denom
    return out


def _check_pairing(weights: Weights, schedule: ExpansionSchedule) -> None:
    if len(schedule) != weights.k:
        raise ScheduleMismatch(
            f"schedule has {len(schedule)} factors, weights require k={weights.k}"
        )


def solve_uv_coprime(
    weights: Weights, schedule: ExpansionSchedule
) -> tuple[np.ndarray, np.ndarray]:
    """Fully expanded closed form for coprime group sizes.

    Valid only when gcd(l, m) = 1, in which case the index walk
    r, r+n, r+2n, ... visits every residue and the chi products fold
    into plain psi offsets.  Each height is a single weighted sum of
    psi differences divided by tau^n - 1.
    """
    if weights.d != 1:
        raise NotCoprime(f"gcd(l, m) = {weights.d}, expected 1")
    _check_pairing(weights, schedule)
    k, n, l, m = weights.k, weights.n, weights.l, weights.m
    denom = schedule.tau**n - 1.0
    u = np.empty(k)
    v = np.empty(k)
    for r in range(k):
        su = 0.0
        sv = 0.0
        for j in range(k):
            jn = j * n
            p0 = schedule.psi(r, jn)
            p1 = schedule.psi(r, jn + l)
            p2 = schedule.psi(r, jn + m)
            p3 = schedule.psi(r, jn + n)
            su += weights.alpha_at(r + 1 + jn) * (p1 - p0)
            su -= weights.beta_at(r + 1 + l + jn) * (p3 - p1)
            sv += weights.alpha_at(r + 1 + m + jn) * (p3 - p2)
            sv -= weights.beta_at(r + 1 + jn) * (p2 - p0)
        u[r] = su / denom
        v[r] = sv / denom
    return u, v


def solve_uv_accumulated(
    weights: Weights, schedule: ExpansionSchedule
) -> tuple[np.ndarray, np.ndarray]:
    """Blockwise accumulation solve, valid for every gcd(l, m).

    Segments with index congruent to f modulo d form an independent
    cyclic block of length k/d whose index step is n/d; around one
    block the chi product telescopes to tau^(n/d).  For d = 1 this is
    the plain one-block accumulation of the recurrence.
    """
    _check_pairing(weights, schedule)
    k, d = weights.k, weights.d
    kp, np_ = weights.k_prime, weights.n_prime
    denom = schedule.tau**np_ - 1.0
    if denom == 0.0:
        raise SingularSystem("period ratio tau^(n/d) equals 1")
    u = np.empty(k)
    v = np.empty(k)
    for f in range(d):
        idx = [f + d * h for h in range(kp)]
        uc = np.array([compute_U(weights, schedule, r) for r in idx])
        vc = np.array([compute_V(weights, schedule, r) for r in idx])
        mult = np.array([chi(weights, schedule, r) for r in idx])
        u[idx] = _solve_cyclic(uc, mult, np_, denom)
        v[idx] = _solve_cyclic(vc, mult, np_, denom)
    return u, v


def solve_uv_oracle(
    weights: Weights, schedule: ExpansionSchedule
) -> tuple[np.ndarray, np.ndarray]:
    """Dense reference solve of the node-height system.

    Assembles the k x k cyclic matrix explicitly and hands it to a
    general linear solver.  Much slower than the closed forms and kept
    deliberately independent of them; used as the second route in
    differential checks.
    """
    _check_pairing(weights, schedule)
    k, n = weights.k, weights.n
    M = np.eye(k)
    rhs_u = np.empty(k)
    rhs_v = np.empty(k)
    for r in range(k):
        M[r, (r + n) % k] -= chi(weights, schedule, r)
        rhs_u[r] = -compute_U(weights, schedule, r)
        rhs_v[r] = -compute_V(weights, schedule, r)
    try:
        u = np.linalg.solve(M, rhs_u)
        v = np.linalg.solve(M, rhs_v)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    return u, v


def solve_uv(
    weights: Weights, schedule: ExpansionSchedule
) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form node heights for any weight system.

    Dispatches to the expanded coprime formula when gcd(l, m) = 1 and
    to the blockwise accumulation otherwise.
    """
    if weights.d == 1:
        return solve_uv_coprime(weights, schedule)
    return solve_uv_accumulated(weights, schedule)


def propagate_v_from_u(
    weights: Weights, schedule: ExpansionSchedule, u: np.ndarray
) -> np.ndarray:
    """Recover upper heights from lower ones along the rising segments.

    The rising segment based at r climbs with slope alpha_{r+1} over l
    steps, which forces v_{(r+l) mod k} = (u_r + alpha_{r+1} *
    (psi(r, l) - 1)) / psi(r, l).  Solving the two systems separately
    and comparing against this propagation is a consistency check on
    the whole construction.
    """
    k, l = weights.k, weights.l
    v = np.empty(k)
    for r in range(k):
        pl = schedule.psi(r, l)
        v[(r + l) % k] = (u[r] + weights.alpha_at(r + 1) * (pl - 1.0)) / pl
    return v


@dataclass(frozen=True, eq=False)
class Subgraph:
    """One independent residue block of a composite graph.

    Segments whose index is congruent to f modulo d form a closed
    subsystem; its slope alphabet is the weights whose 1-based
    subscript is congruent to f + 1, and gamma is their signed sum
    (the block's net drift, zero only in aggregate over all blocks).
    """

    f: int
    segment_indices: tuple[int, ...]
    labels: tuple[tuple[str, int], ...]
    gamma: float


@dataclass(frozen=True, eq=False)
class RegularGraph:
    """A solved instance: weights, schedule and the node heights.

    u[r] and v[r] are the second coordinates of the lower and upper
    node rays based at segment index r; the actual plane points carry
    the sigma_r scale and a tau^t period factor on top (see the graph
    module).  subgraphs lists the d independent residue blocks (a
    single block when l and m are coprime).
    """

    weights: Weights
    schedule: ExpansionSchedule
    u: np.ndarray
    v: np.ndarray
    subgraphs: tuple[Subgraph, ...]

    @property
    def tau(self) -> float:
        return self.schedule.tau


def build_graph(
    weights: Weights, schedule: ExpansionSchedule, method: str = "closed"
) -> RegularGraph:
    """Solve the node system and bundle the result.

    method selects the solve route: "closed" (default), "accumulated"
    or "oracle"; all agree to rounding error, the alternatives exist
    for differential testing.
    """
    if method == "closed":
        u, v = solve_uv(weights, schedule)
    elif method == "accumulated":
        u, v = solve_uv_accumulated(weights, schedule)
    elif method == "oracle":
        u, v = solve_uv_oracle(weights, schedule)
    else:
        raise ValueError(f"unknown solve method {method!r}")
    subgraphs = []
    for f in range(weights.d):
        subgraphs.append(
            Subgraph(
                f=f,
                segment_indices=tuple(range(f, weights.k, weights.d)),
                labels=weights.class_labels(f),
                gamma=weights.class_gamma(f),
            )
        )
    return RegularGraph(
        weights=weights,
        schedule=schedule,
        u=u,
        v=v,
        subgraphs=tuple(subgraphs),
    )


__all__ = [
    "ConstructError",
    "InvalidFactor",
    "ScheduleMismatch",
    "NotCoprime",
    "SingularSystem",
    "PowerForm",
    "ExpansionSchedule",
    "chi",
    "compute_U",
    "compute_V",
    "solve_uv_coprime",
    "solve_uv_accumulated",
    "solve_uv_oracle",
    "solve_uv",
    "propagate_v_from_u",
    "Subgraph",
    "RegularGraph",
    "build_graph",
]
