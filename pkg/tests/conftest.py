import pytest
from fractions import Fraction

from cubicdisc import (assemble_f, counting_table, cubic_surface_lattice,
                       discriminant_group, reduce_s_matrix)


@pytest.fixture(scope="session")
def lattice_m():
    return cubic_surface_lattice()


@pytest.fixture(scope="session")
def disc_m(lattice_m):
    return discriminant_group(lattice_m)


@pytest.fixture(scope="session")
def table_m(disc_m):
    return counting_table(disc_m)


@pytest.fixture(scope="session")
def s_matrix_m(table_m):
    return reduce_s_matrix(table_m)


@pytest.fixture(scope="session")
def f12():
    return assemble_f(Fraction(12))
