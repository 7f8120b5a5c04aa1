"""The brute-force oracles on hand-checkable cases, before they are trusted elsewhere."""

import pytest

from lpak.intlinalg import FgAbGroup, IntMatrix
from lpak.oracle import (
    FiniteModuleMap,
    OracleBoundsError,
    brute_cokernel_mod,
    brute_kernel_mod,
    group_from_torsion_counts,
    minors_gcd_invariant_factors,
)


def M(rows, cols=None):
    return IntMatrix.from_rows(rows, cols)


def cyc(*orders):
    return FgAbGroup.from_cyclic(orders)


@pytest.mark.parametrize("rows,m,expected", [
    ([[2]], 4, cyc(2)),
    ([[1]], 7, cyc()),
    ([[0]], 5, cyc(5)),
    ([[3]], 6, cyc(3)),
    ([[2]], 6, cyc(2)),
])
def test_kernel_1x1(rows, m, expected):
    assert brute_kernel_mod(FiniteModuleMap(M(rows), m)) == expected


@pytest.mark.parametrize("rows,m,expected", [
    ([[2]], 4, cyc(2)),
    ([[1], [1]], 6, cyc(6)),
    ([[1, 0], [0, 5]], 6, cyc()),
    ([[0]], 3, cyc(3)),
    ([[4]], 6, cyc(2)),
])
def test_cokernel_small(rows, m, expected):
    assert brute_cokernel_mod(FiniteModuleMap(M(rows), m)) == expected


def test_noncyclic_structure_is_recovered():
    # zero map on (Z/4)^2 and diag(2,2) on (Z/4)^2
    assert brute_kernel_mod(FiniteModuleMap(M([[0, 0], [0, 0]]), 4)) == cyc(4, 4)
    assert brute_kernel_mod(FiniteModuleMap(M([[2, 0], [0, 2]]), 4)) == cyc(2, 2)
    assert brute_cokernel_mod(FiniteModuleMap(M([[2, 0], [0, 0]]), 12)) == cyc(2, 12)


def test_group_from_torsion_counts():
    # Z/2 + Z/4: elements killed by 1, 2, 4 number 1, 4, 8
    counts = {1: 1, 2: 4, 4: 8, 8: 8}
    assert group_from_torsion_counts(lambda k: counts.get(k, 8), 8) == cyc(2, 4)


@pytest.mark.parametrize("rows,expected", [
    ([[2, 4], [6, 8]], [2, 4]),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
    ([[0, 0], [0, 0]], []),
    ([[6]], [6]),
    ([[2, 4], [1, 2]], [1]),
])
def test_minors_oracle(rows, expected):
    assert minors_gcd_invariant_factors(M(rows)) == expected


def test_bounds():
    with pytest.raises(OracleBoundsError):
        FiniteModuleMap(M([[1]]), 31)
    with pytest.raises(ValueError):
        FiniteModuleMap(M([[1]]), 1)
    with pytest.raises(OracleBoundsError):
        FiniteModuleMap(M([[0] * 5]), 2)
    with pytest.raises(OracleBoundsError):
        minors_gcd_invariant_factors(M([[0] * 6]))
