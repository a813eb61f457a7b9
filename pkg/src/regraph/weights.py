"""Balanced weight systems and cyclic index arithmetic.

A weight system is two ordered groups of non-negative reals whose sums
agree.  It fixes the slope alphabet used by every graph built on top of
it: the first group contributes the rising slopes, the second group the
falling ones.  Subscripts repeat cyclically, each group with its own
period, so the two groups only realign after lcm(l, m) steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

import numpy as np

DEFAULT_BALANCE_TOL = 1e-12


class WeightError(ValueError):
    """Invalid weight data."""


class NegativeWeight(WeightError):
    pass


class AllZero(WeightError):
    pass


class BalanceViolated(WeightError):
    pass


class LengthMismatch(WeightError):
    pass


class IndexOutOfRange(IndexError):
    """Cyclic weight subscripts are 1-based; r must be >= 1."""


@dataclass(frozen=True)
class Weights:
    """Validated weight data plus the derived integer/extremal constants.

    Ordering is significant: the graph construction depends on it, so no
    sorting or rescaling is ever applied.  Instances are immutable and
    safe to share.
    """

    l: int
    m: int
    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    n: int
    k: int
    d: int
    n_prime: int
    k_prime: int
    pair_sum_max: float  # max over i,j of alpha_i + beta_j
    pair_sum_min: float  # min over i,j of alpha_i + beta_j

    def alpha_at(self, r: int) -> float:
        """Cyclic alpha subscript: alpha_r = alpha_i for r = i (mod l), 1-based."""
        if r < 1:
            raise IndexOutOfRange(f"subscript must be >= 1, got {r}")
        return self.alpha[(r - 1) % self.l]

    def beta_at(self, r: int) -> float:
        """Cyclic beta subscript with period m, 1-based."""
        if r < 1:
            raise IndexOutOfRange(f"subscript must be >= 1, got {r}")
        return self.beta[(r - 1) % self.m]

    @property
    def slope_vector(self) -> np.ndarray:
        """The n-component slope alphabet (alpha_1..alpha_l, -beta_1..-beta_m)."""
        return np.concatenate([np.asarray(self.alpha), -np.asarray(self.beta)])

    @property
    def slope_labels(self) -> tuple[tuple[str, int], ...]:
        """Symbolic slope alphabet: ('A', i) rises with alpha_i, ('B', j) falls with beta_j."""
        return tuple(("A", i) for i in range(1, self.l + 1)) + tuple(
            ("B", j) for j in range(1, self.m + 1)
        )

    def label_value(self, label: tuple[str, int]) -> float:
        kind, i = label
        return self.alpha[i - 1] if kind == "A" else -self.beta[i - 1]

    def class_labels(self, f: int) -> tuple[tuple[str, int], ...]:
        """Slope alphabet of the residue class f: segments with index = f (mod d)
        carry the weights whose 1-based subscript is = f+1 (mod d)."""
        return tuple(
            lab for lab in self.slope_labels if (lab[1] - 1) % self.d == f % self.d
        )

    def class_gamma(self, f: int) -> float:
        """Sum of the class-f slope alphabet; the classwise analogue of the zero sum."""
        return float(sum(self.label_value(lab) for lab in self.class_labels(f)))


def validate_weights(
    l: int,
    m: int,
    alpha: Sequence[float],
    beta: Sequence[float],
    tol: float = DEFAULT_BALANCE_TOL,
) -> Weights:
    """Validate raw weight input and populate all derived constants.

    Rejects negative entries, the all-zero system, mismatched lengths and
    unbalanced sums (|sum(alpha) - sum(beta)| > tol).  Zero entries are
    allowed as long as not everything vanishes.
    """
    if l < 1 or m < 1:
        raise LengthMismatch(f"group sizes must be positive, got l={l}, m={m}")
    alpha = tuple(float(a) for a in alpha)
    beta = tuple(float(b) for b in beta)
    if len(alpha) != l:
        raise LengthMismatch(f"expected {l} alpha entries, got {len(alpha)}")
    if len(beta) != m:
        raise LengthMismatch(f"expected {m} beta entries, got {len(beta)}")
    for name, values in (("alpha", alpha), ("beta", beta)):
        for i, value in enumerate(values):
            if value < 0:
                raise NegativeWeight(f"{name}[{i}] = {value} is negative")
    if max(alpha) == 0 and max(beta) == 0:
        raise AllZero("all weights are zero")
    imbalance = abs(sum(alpha) - sum(beta))
    if imbalance > tol:
        raise BalanceViolated(
            f"weight sums differ: |{sum(alpha)} - {sum(beta)}| = {imbalance} > {tol}"
        )
    d = gcd(l, m)
    k = lcm(l, m)
    n = l + m
    pairs = [a + b for a in alpha for b in beta]
    return Weights(
        l=l,
        m=m,
        alpha=alpha,
        beta=beta,
        n=n,
        k=k,
        d=d,
        n_prime=n // d,
        k_prime=k // d,
        pair_sum_max=max(pairs),
        pair_sum_min=min(pairs),
    )
