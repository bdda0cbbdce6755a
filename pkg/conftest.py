import pytest

from src.core.semigroup import (
    CayleyTable,
    cyclic_group,
    left_zero,
    min_semilattice,
    null_semigroup,
    right_zero,
)
from src.core.setfam import enumerate_filters


@pytest.fixture
def rz3() -> CayleyTable:
    return right_zero(3)


@pytest.fixture
def lz2() -> CayleyTable:
    return left_zero(2)


@pytest.fixture
def z3() -> CayleyTable:
    return cyclic_group(3)


@pytest.fixture
def named_tables() -> list[CayleyTable]:
    return [left_zero(3), right_zero(3), cyclic_group(3), null_semigroup(3), min_semilattice(3),
            cyclic_group(2), left_zero(2)]


@pytest.fixture
def filters3():
    return list(enumerate_filters(3))
