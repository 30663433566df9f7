import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from artifact.registry import get, names
from artifact.transducer import Transducer, inverse, min_core, sync_level

settings.register_profile(
    "ci",
    max_examples=120,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("ci")

REGISTRY = [n for n in names() if "<" not in n]


def registry_sync(invertible=False, bisync=False):
    out = []
    for n in REGISTRY:
        A = get(n)
        if sync_level(A) is None:
            continue
        if (invertible or bisync) and not A.is_invertible():
            continue
        if bisync and sync_level(inverse(A)) is None:
            continue
        out.append(A)
    return out


@st.composite
def machines(draw, n=None, max_states=3, invertible=True, bisync=False, core=True):
    """Small random synchronizing machines, mixed with registry machines."""
    if n is None:
        n = draw(st.integers(2, 3))
    pool = [A for A in registry_sync(invertible, bisync) if A.n == n and A.size <= 5]
    if pool and draw(st.integers(0, 3)) == 0:
        return draw(st.sampled_from(pool))
    S = draw(st.integers(1, max_states))
    delta = draw(st.lists(st.lists(st.integers(0, S - 1), min_size=n, max_size=n), min_size=S, max_size=S))
    if invertible:
        rho = draw(st.lists(st.permutations(range(n)), min_size=S, max_size=S))
    else:
        rho = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=S, max_size=S))
    A = Transducer(n, [f"s{i}" for i in range(S)], np.array(delta), np.array(rho))
    from hypothesis import assume

    assume(sync_level(A) is not None)
    if bisync:
        assume(sync_level(inverse(A)) is not None)
    return min_core(A) if core else A


@pytest.fixture
def reg():
    return get


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
