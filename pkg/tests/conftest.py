import os

import pytest

from epwforge.arith import ReductionMap
from epwforge.epw import epw_sextic, reduce_lagrangian
from epwforge.grouprep import (
    GENERATOR_A,
    GENERATOR_B,
    LAGRANGIAN_CHARACTERS,
    TABLE1,
    build_projector,
    class_partition,
    enumerate_group,
    extract_lagrangian,
)

# number of worker processes for the chart jobs in heavy tests
JOBS = min(2, os.cpu_count() or 1)


@pytest.fixture(scope="session")
def group():
    return class_partition(enumerate_group([GENERATOR_A, GENERATOR_B]))


@pytest.fixture(scope="session")
def projectors(group):
    return {
        label: build_projector(group, TABLE1[row])
        for label, row in LAGRANGIAN_CHARACTERS.items()
    }


@pytest.fixture(scope="session")
def lagrangians(group, projectors):
    return {
        label: extract_lagrangian(P, label, group)
        for label, P in projectors.items()
    }


@pytest.fixture(scope="session")
def redmap():
    return ReductionMap(127, 25)


@pytest.fixture(scope="session")
def abar(lagrangians, redmap):
    return {
        label: reduce_lagrangian(B, redmap)
        for label, B in lagrangians.items()
    }


@pytest.fixture(scope="session")
def sextics(abar):
    return {label: epw_sextic(M, 1, 127) for label, M in abar.items()}
