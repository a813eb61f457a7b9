"""Verification suite: structural validity, regularity, properness.

Each check returns a CheckResult with a status, the tolerance it used,
a numeric margin (worst slack observed; negative means violated) and a
witness locating the worst spot.  Statuses:

    pass            check holds
    fail            check violated — the graph is structurally wrong
    not-sufficient  a one-sided sufficient condition does not hold;
                    says nothing negative about the graph itself
    not-applicable  hypothesis of the check not met by this instance
    error           check could not run (e.g. window too small)

The distinction between fail and not-sufficient matters for exit
codes: the ratio test and the per-factor bound for a single falling
weight only ever certify properness, so their inequality failing must
not flag an otherwise healthy instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .construct import ExpansionSchedule, RegularGraph, compute_U, compute_V
from .graph import PiecewiseLinearSystem, component_functions
from .weights import Weights

PASS = "pass"
FAIL = "fail"
NOT_SUFFICIENT = "not-sufficient"
NOT_APPLICABLE = "not-applicable"
ERROR = "error"

#: statuses that do not flag a broken instance
_BENIGN = frozenset({PASS, NOT_SUFFICIENT, NOT_APPLICABLE})


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    tolerance: float
    margin: float
    witness: Optional[dict] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status in _BENIGN


@dataclass(frozen=True)
class CheckReport:
    """Bundle of check results; ok iff nothing failed or errored."""

    results: tuple[CheckResult, ...]
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def entry(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            line = f"{r.name}: {r.status.upper()} (margin={r.margin:.6g}, tol={r.tolerance:.3g})"
            if r.witness:
                parts = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                                  for k, v in r.witness.items())
                line += f" [{parts}]"
            if r.note:
                line += f" -- {r.note}"
            out.append(line)
        return out


def check_system(sys: PiecewiseLinearSystem, tol: float = 1e-9) -> CheckResult:
    """Structural validity of an extracted component system.

    Verifies, piece by piece: the slope labels form exactly the
    expected alphabet (as a multiset, label-level equality); the
    component sum stays on gamma * q; components are continuous across
    breakpoints; the components are sorted; and the first-period values
    are consistent with all components vanishing at the origin
    (|P_i(q_lo)| bounded by the largest slope times q_lo).
    """
    expected = tuple(sorted(sys.alphabet))
    worst = 0.0
    witness = None
    scale_tol = lambda v: tol * max(1.0, abs(v))

    for pi, piece in enumerate(sys.pieces):
        if tuple(sorted(piece.labels)) != expected:
            return CheckResult(
                "system", FAIL, tol, -1.0,
                {"piece": pi, "q": piece.q_lo},
                note="slope labels are not a permutation of the alphabet",
            )
        if np.any(np.diff(piece.values) < -scale_tol(piece.q_lo)):
            return CheckResult(
                "system", FAIL, tol, float(np.diff(piece.values).min()),
                {"piece": pi, "q": piece.q_lo}, note="components out of order",
            )
        for q in (piece.q_lo, 0.5 * (piece.q_lo + piece.q_hi), piece.q_hi):
            resid = abs(float(np.sum(piece.values_at(q))) - sys.gamma * q)
            if resid > worst:
                worst, witness = resid, {"q": q, "kind": "sum"}
            if resid > scale_tol(sys.gamma * q):
                return CheckResult("system", FAIL, tol, resid, {"q": q},
                                   note="component sum off the expected line")

    for pi in range(len(sys.pieces) - 1):
        left, right = sys.pieces[pi], sys.pieces[pi + 1]
        jump = np.abs(left.values_at(left.q_hi) - right.values)
        j = float(jump.max())
        if j > worst:
            worst, witness = j, {"q": right.q_lo, "kind": "jump", "i": int(jump.argmax()) + 1}
        if j > scale_tol(right.q_lo):
            return CheckResult("system", FAIL, tol, j,
                               {"q": right.q_lo, "i": int(jump.argmax()) + 1},
                               note="component discontinuous across breakpoint")

    w_max = max(abs(v) for v in sys.pieces[0].slopes) if sys.pieces else 0.0
    # every component must vanish at 0, so |P_i(q)| <= max|slope| * q
    first = sys.pieces[0]
    over = float(np.max(np.abs(first.values))) - w_max * sys.q_lo
    if over > scale_tol(w_max * sys.q_lo):
        return CheckResult("system", FAIL, tol, over, {"q": sys.q_lo},
                           note="first-period values inconsistent with vanishing at 0")

    return CheckResult("system", PASS, tol, worst, witness)


def check_regular(
    g: RegularGraph, sys: PiecewiseLinearSystem, tol: float = 1e-9
) -> CheckResult:
    """Scale invariance: consecutive periods match under scaling by tau.

    Needs a window of at least two periods; compares both the crossing
    pattern (breakpoints, relatively) and the component values at
    breakpoints and piece midpoints.
    """
    if sys.t_hi - sys.t_lo < 1:
        return CheckResult("regular", ERROR, tol, 0.0, None,
                           note="InsufficientWindow: need at least two periods")
    tau = g.schedule.tau
    bp = sys.breakpoints
    worst = 0.0
    witness = None
    for t in range(sys.t_lo, sys.t_hi):
        lo, hi = tau**t, tau ** (t + 1)
        cur = bp[(bp >= lo * (1 - 1e-12)) & (bp < hi * (1 - 1e-12))]
        nxt = bp[(bp >= hi * (1 - 1e-12)) & (bp < hi * tau * (1 - 1e-12))]
        if len(cur) != len(nxt):
            return CheckResult("regular", FAIL, tol, float(len(nxt) - len(cur)),
                               {"t": t}, note="breakpoint count differs between periods")
        rel_bp = float(np.max(np.abs(nxt / (tau * cur) - 1.0))) if len(cur) else 0.0
        if rel_bp > worst:
            worst, witness = rel_bp, {"t": t, "kind": "breakpoint"}
        if rel_bp > tol:
            return CheckResult("regular", FAIL, tol, rel_bp, {"t": t},
                               note="breakpoints do not scale by tau")
        probes = np.concatenate([cur, 0.5 * (cur[:-1] + cur[1:])]) if len(cur) > 1 else cur
        for q in probes:
            a = sys.values_at(q) * tau
            b = sys.values_at(q * tau)
            rel = float(np.max(np.abs(b - a) / np.maximum(1.0, np.abs(a))))
            if rel > worst:
                worst, witness = rel, {"q": float(q), "t": t}
            if rel > tol:
                return CheckResult("regular", FAIL, tol, rel, {"q": float(q)},
                                   note="values do not scale by tau")
    return CheckResult("regular", PASS, tol, worst, witness)


def check_proper_direct(sys: PiecewiseLinearSystem, tol: float = 1e-9) -> CheckResult:
    """The definitional properness test on the extracted system.

    At every interior breakpoint q and every index i where the gap
    P_{i+1}(q) - P_i(q) is genuinely open (beyond a relative
    threshold), the slope-sum of the bottom i components just left of
    q must not exceed the one just right.  Margin is the minimal
    right-minus-left slack over all tested (q, i).
    """
    best = np.inf
    witness = None
    for b in range(1, len(sys.pieces)):
        left, right = sys.pieces[b - 1], sys.pieces[b]
        q = sys.breakpoints[b]
        vals = right.values  # = P(q) by continuity
        lsum = np.cumsum(left.slopes)
        rsum = np.cumsum(right.slopes)
        for i in range(1, sys.n):
            gap = vals[i] - vals[i - 1]
            if gap <= tol * max(1.0, abs(vals[i])):
                continue  # components tied at q: condition does not apply
            slack = float(rsum[i - 1] - lsum[i - 1])
            if slack < best:
                best, witness = slack, {"q": float(q), "i": i}
    if witness is None:
        best = 0.0  # no open gaps anywhere: vacuously proper
    status = PASS if best >= -tol else FAIL
    return CheckResult("proper-direct", status, tol, float(best), witness)


def check_proper_nodes(g: RegularGraph) -> CheckResult:
    """Node-ordering properness test: every upper node at or above the
    lower node of the same index (v_r >= u_r)."""
    diff = np.asarray(g.v) - np.asarray(g.u)
    r = int(diff.argmin())
    margin = float(diff[r])
    return CheckResult(
        "proper-nodes", PASS if margin >= 0 else FAIL, 0.0, margin, {"r": r}
    )


def check_proper_sufficient(
    w: Weights, schedule: ExpansionSchedule, tol: float = 0.0
) -> CheckResult:
    """Ratio form of the sufficient properness condition.

    Requires every pair sum alpha_i + beta_j to be positive; then
    properness is guaranteed when (psi_r^n + 1)/(psi_r^l + psi_r^m)
    dominates the extremal pair-sum ratio at every r.  One-sided: when
    the inequality fails the result is 'not-sufficient', not 'fail'.
    """
    if w.pair_sum_min <= 0:
        return CheckResult("proper-sufficient", NOT_APPLICABLE, tol, 0.0, None,
                           note="some pair sum alpha_i + beta_j is zero")
    rhs = w.pair_sum_max / w.pair_sum_min
    best = np.inf
    wit = None
    for r in range(w.k):
        lhs = (schedule.psi(r, w.n) + 1.0) / (schedule.psi(r, w.l) + schedule.psi(r, w.m))
        if lhs - rhs < best:
            best, wit = lhs - rhs, {"r": r, "lhs": lhs, "rhs": rhs}
    status = PASS if best >= -tol else NOT_SUFFICIENT
    return CheckResult("proper-sufficient", status, tol, float(best), wit)


def check_proper_termwise(
    w: Weights, schedule: ExpansionSchedule, tol: float = 0.0
) -> CheckResult:
    """Termwise sufficient condition: V_r - U_r >= 0 for every r.

    This is the inequality the ratio condition actually bounds; it is
    weaker (closer to necessary) than the ratio form and likewise only
    certifies, never refutes.
    """
    best = np.inf
    wit = None
    for r in range(w.k):
        s = compute_V(w, schedule, r) - compute_U(w, schedule, r)
        if s < best:
            best, wit = s, {"r": r}
    status = PASS if best >= -tol else NOT_SUFFICIENT
    return CheckResult("proper-termwise", status, tol, float(best), wit)


def check_proper_m1(
    w: Weights, schedule: ExpansionSchedule, tol: float = 0.0
) -> CheckResult:
    """Per-factor bound for a single falling weight equal to the rising
    count.

    Applies when m = 1 and beta_1 = l; then rho_r >= (alpha_r + l) /
    (alpha_{r+1} + l) for r = 1..l certifies properness.
    """
    if w.m != 1 or abs(w.beta[0] - w.l) > 1e-12:
        return CheckResult("proper-m1", NOT_APPLICABLE, tol, 0.0, None,
                           note="requires m = 1 and beta_1 = l")
    best = np.inf
    wit = None
    for r in range(1, w.l + 1):
        bound = (w.alpha_at(r) + w.l) / (w.alpha_at(r + 1) + w.l)
        s = schedule.factors[r - 1] - bound
        if s < best:
            best, wit = s, {"r": r, "bound": bound}
    status = PASS if best >= -tol else NOT_SUFFICIENT
    return CheckResult("proper-m1", status, tol, float(best), wit)


def check_subgraphs(
    g: RegularGraph, t_lo: int = 0, t_hi: int = 2, tol: float = 1e-9
) -> CheckResult:
    """Residue-class decomposition consistency for non-coprime sizes.

    Each class must extract to a valid component system of n/d
    functions whose slope labels are the class alphabet and whose sum
    runs along gamma_f * q; the gamma_f themselves must cancel.
    """
    w = g.weights
    if w.d == 1:
        return CheckResult("subgraphs", NOT_APPLICABLE, tol, 0.0, None,
                           note="group sizes are coprime; single class")
    gamma_sum = float(sum(sg.gamma for sg in g.subgraphs))
    if abs(gamma_sum) > 1e-12:
        return CheckResult("subgraphs", FAIL, tol, gamma_sum, None,
                           note="class drifts do not cancel")
    worst = 0.0
    witness = None
    for sg in g.subgraphs:
        sub = component_functions(g, t_lo, t_hi, subgraph=sg.f)
        inner = check_system(sub, tol)
        if inner.status != PASS:
            return CheckResult("subgraphs", FAIL, tol, inner.margin,
                               {"f": sg.f, **(inner.witness or {})}, note=inner.note)
        if inner.margin > worst:
            worst, witness = inner.margin, {"f": sg.f, **(inner.witness or {})}
    return CheckResult("subgraphs", PASS, tol, worst, witness)


def run_all_checks(
    g: RegularGraph, tol: float = 1e-9, t_base: int = 0, seed: Optional[int] = None
) -> CheckReport:
    """Run the full verification suite over a three-period window."""
    sys3 = component_functions(g, t_base, t_base + 2)
    results = [
        check_system(sys3, tol),
        check_regular(g, sys3, tol),
        check_proper_direct(sys3, tol),
        check_proper_nodes(g),
        check_proper_sufficient(g.weights, g.schedule),
        check_proper_termwise(g.weights, g.schedule),
        check_proper_m1(g.weights, g.schedule),
    ]
    if g.weights.d > 1:
        results.append(check_subgraphs(g, t_base, t_base + 2, tol))
    return CheckReport(results=tuple(results), seed=seed)


__all__ = [
    "PASS", "FAIL", "NOT_SUFFICIENT", "NOT_APPLICABLE", "ERROR",
    "CheckResult", "CheckReport",
    "check_system", "check_regular", "check_proper_direct",
    "check_proper_nodes", "check_proper_sufficient", "check_proper_termwise",
    "check_proper_m1", "check_subgraphs", "run_all_checks",
]
