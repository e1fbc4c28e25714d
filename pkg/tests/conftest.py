import random

import pytest
from hypothesis import settings, strategies as st

from ncriemann.algebra import SPHERE, TORUS
from ncriemann.calculi import build
from ncriemann.connection import solve_connection
from ncriemann.curvature import components

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def elements(alg, n_terms=3):
    return seeds.map(lambda s: alg.random_element(random.Random(s), n_terms=n_terms))


sphere_elements = elements(SPHERE)
torus_elements = elements(TORUS)


@pytest.fixture(scope="session")
def sphere():
    calc, p = build("sphere")
    conn = solve_connection(calc, p)
    return calc, p, conn, components(conn)


@pytest.fixture(scope="session")
def torus():
    calc, p = build("torus")
    conn = solve_connection(calc, p)
    return calc, p, conn, components(conn)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
