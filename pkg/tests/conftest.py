import numpy as np
import pytest

from wreathvar.constructions import build, catalog_exprs


@pytest.fixture(scope="session")
def catalog():
    """Catalog groups of order <= 100, built once."""
    return [build(e) for e in catalog_exprs(100)]


@pytest.fixture(scope="session")
def small_catalog(catalog):
    return [G for G in catalog if G.order <= 24]


def g(text):
    return build(text)


def brute_subgroup_from(G, idx):
    """Closure of a set of element indices by repeated multiplication (no cleverness)."""
    have = {0} | set(int(i) for i in idx)
    frontier = list(have)
    while frontier:
        new = []
        for a in frontier:
            for b in list(have):
                for c in (G.mul(a, b), G.mul(b, a)):
                    if c not in have:
                        have.add(c)
                        new.append(c)
        frontier = new
    return np.array(sorted(have))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
