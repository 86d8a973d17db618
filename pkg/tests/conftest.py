import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much, HealthCheck.data_too_large],
)
settings.load_profile("repo")

from fjcert import gritsenko_lift, jacobi_space


def _timed_lift(weight, prec, mmax):
    t0 = time.perf_counter()
    gen_prec = (prec - 1) * mmax + 1
    phi = jacobi_space(weight, True, gen_prec)[0]
    f = gritsenko_lift(phi, mmax, prec)
    return f, time.perf_counter() - t0


@pytest.fixture(scope="session")
def lift12():
    """Weight-10 lift, prec 12, M_max 12, with its build time."""
    return _timed_lift(10, 12, 12)


@pytest.fixture(scope="session")
def lift40():
    """Weight-10 lift, prec 40, M_max 40 (growth and disc checks)."""
    return _timed_lift(10, 40, 40)


@pytest.fixture(scope="session")
def lift10_40():
    """Weight-10 lift, prec 10, M_max 40 (compact-box certificate)."""
    return _timed_lift(10, 10, 40)


@pytest.fixture(scope="session")
def lift8():
    """Weight-10 lift at desk scale, prec 8, M_max 8."""
    return _timed_lift(10, 8, 8)


@pytest.fixture(scope="session")
def lift_wide():
    """Shallow but long lift, prec 6, M_max 200 (stress partial sums)."""
    return _timed_lift(10, 6, 200)


@pytest.fixture(scope="session")
def phi10():
    """Normalized index-one cusp generator of weight 10, prec 20."""
    return jacobi_space(10, True, 20)[0]
