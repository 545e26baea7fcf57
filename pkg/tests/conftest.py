from __future__ import annotations

import pytest

from ncstone.families import brandt, semigroup_corpus, symmetric_inverse_monoid
from ncstone.groupoid import (btone, disjoint_union, exhaustive_groupoids, group_groupoid, pair_groupoid,
                              random_groupoid)
from ncstone.groups import cyclic_group, symmetric_group

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def exhaustive():
    return exhaustive_groupoids(3, 8)


@pytest.fixture(scope="session")
def random_corpus():
    return [random_groupoid(s) for s in range(100)]


@pytest.fixture(scope="session")
def small_groupoids():
    """Hand-picked groupoids with small Gamma, used where the exhaustive set is too slow."""
    pt = pair_groupoid(1)
    return [
        pt,
        pair_groupoid(2),
        group_groupoid(cyclic_group(2)),
        group_groupoid(cyclic_group(3)),
        group_groupoid(symmetric_group(3)),
        disjoint_union(pt, pair_groupoid(1, unit_names=["y"])),
        disjoint_union(pt, group_groupoid(cyclic_group(2), unit_name="g")),
        btone(1),
    ]


@pytest.fixture(scope="session")
def semigroups():
    return semigroup_corpus(8)


@pytest.fixture(scope="session")
def b2():
    return brandt(2)


@pytest.fixture(scope="session")
def i2():
    return symmetric_inverse_monoid(2)
