"""Brute-force reference computations.

These never call into the Smith normal form code.  Finite modules are
enumerated element by element and their isomorphism type is read off from
torsion counts; invariant factors over Z come from determinantal divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from .intlinalg import FgAbGroup, IntMatrix

MAX_DIM = 4
MAX_MODULUS = 30
MAX_MINOR_DIM = 5


class OracleBoundsError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteModuleMap:
    """The map (Z/modulus)^cols -> (Z/modulus)^rows given by `matrix`."""
    matrix: IntMatrix
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if (max(self.matrix.rows, self.matrix.cols) > MAX_DIM
                or self.modulus > MAX_MODULUS):
            raise OracleBoundsError(
                f"{self.matrix.shape} mod {self.modulus} exceeds the enumeration bounds"
            )


def _apply(rows, x, m):
    return tuple(sum(a * b for a, b in zip(r, x)) % m for r in rows)


def _prime_factors(n):
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


def _val(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _ilog(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ArithmeticError("count is not a prime power")
    return e


def group_from_torsion_counts(count, order):
    """Identify a finite abelian group of the given order.

    `count(k)` must return the number of elements killed by k.  For each
    prime p, log_p count(p^j) = sum_i min(j, e_i) over the p-primary cyclic
    exponents e_i, and the successive differences recover the partition.
    """
    orders = []
    for p in _prime_factors(order):
        top = _val(order, p)
        logs = [0]
        j = 0
        while logs[-1] < _ilog(count(p ** top), p):
            j += 1
            logs.append(_ilog(count(p ** j), p))
        # number of cyclic factors of exponent >= j
        at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))] + [0]
        for e in range(1, len(at_least)):
            orders += [p ** e] * (at_least[e - 1] - at_least[e])
    return FgAbGroup.from_cyclic(orders)


def brute_kernel_mod(fm: FiniteModuleMap) -> FgAbGroup:
    m = fm.modulus
    rows = fm.matrix.to_rows()
    zero = (0,) * fm.matrix.rows
    kernel = [x for x in product(range(m), repeat=fm.matrix.cols)
              if _apply(rows, x, m) == zero]

    def count(k):
        return sum(1 for x in kernel if all(k * xi % m == 0 for xi in x))

    return group_from_torsion_counts(count, len(kernel))


def brute_cokernel_mod(fm: FiniteModuleMap) -> FgAbGroup:
    m = fm.modulus
    a = fm.matrix
    rows = a.to_rows()
    image = {_apply(rows, x, m) for x in product(range(m), repeat=a.cols)}
    if not image:
        image = {(0,) * a.rows}
    ambient = list(product(range(m), repeat=a.rows))
    order = len(ambient) // len(image)

    def count(k):
        # cosets x + im with k x in im
        hits = sum(1 for x in ambient if tuple(k * xi % m for xi in x) in image)
        return hits // len(image)

    return group_from_torsion_counts(count, order)


def _det(m):
    # Laplace expansion; only used on tiny minors
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            sub = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(sub)
    return total


def minors_gcd_invariant_factors(a: IntMatrix) -> list[int]:
    """Nonzero invariant factors f_k = g_k / g_(k-1), g_k the gcd of all k x k minors."""
    if max(a.rows, a.cols) > MAX_MINOR_DIM:
        raise OracleBoundsError(f"{a.shape} exceeds the minor-enumeration bound")
    rows = a.to_rows()
    factors = []
    prev = 1
    for k in range(1, min(a.rows, a.cols) + 1):
        g = 0
        for ri in combinations(range(a.rows), k):
            for ci in combinations(range(a.cols), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors
