"""Shared fixtures: canonical instances and randomized instance builders."""

from math import lcm

import numpy as np
import pytest

import regraph as rg


def make_instance(l, m, alpha, beta, rho) -> rg.RegularGraph:
    w = rg.validate_weights(l, m, alpha, beta)
    sch = rg.ExpansionSchedule.from_factors(rho)
    return rg.build_graph(w, sch)


def random_instance(rng, l=None, m=None, rho_lo=1.05, rho_hi=3.0):
    """Draw positive weights (balance-normalized onto the alpha sum) and a
    uniform random factor schedule of the required length."""
    if l is None:
        l = int(rng.integers(1, 5))
    if m is None:
        m = int(rng.integers(1, 5))
    alpha = rng.uniform(0.05, 3.0, size=l)
    beta = rng.uniform(0.05, 3.0, size=m)
    beta *= alpha.sum() / beta.sum()
    rho = rng.uniform(rho_lo, rho_hi, size=lcm(l, m))
    return make_instance(l, m, alpha, beta, rho)


@pytest.fixture(scope="session")
def fig_instance():
    """l=3, m=2 with all factors the cube root of 2 (full period ratio 4)."""
    return make_instance(
        3, 2, (0.5, 1.0, 1.5), (2.0, 1.0), [rg.PowerForm(2.0, 1, 3)] * 6
    )


@pytest.fixture(scope="session")
def classical_instance():
    """The symmetric two-component instance with factor 3."""
    return make_instance(1, 1, (1.0,), (1.0,), [3.0])


@pytest.fixture(scope="session")
def l2m2_instance():
    return make_instance(2, 2, (1.0, 2.0), (2.0, 1.0), [1.4, 1.7])


@pytest.fixture(scope="session")
def l4m2_instance():
    return make_instance(4, 2, (0.5, 1.5, 1.0, 2.0), (3.0, 2.0), [1.3, 1.2, 1.5, 1.25])


@pytest.fixture(scope="session")
def improper_instance():
    """Hand-tuned so the upper node dips below the lower one at index 5."""
    return make_instance(
        3, 2, (2.7, 2.3, 0.7), (1.46, 4.24),
        [1.0013, 1.0412, 1.0401, 1.0239, 1.0158, 1.0146],
    )


@pytest.fixture(scope="session")
def all_fixture_instances(
    fig_instance, classical_instance, l2m2_instance, l4m2_instance
):
    return {
        "l3m2_cuberoot": fig_instance,
        "l1m1_classical": classical_instance,
        "l2m2_interleaved": l2m2_instance,
        "l4m2_interleaved": l4m2_instance,
    }
