"""Exact integer matrix algebra.

Smith normal form with unimodular transforms, kernels and cokernels over
Z and Z/m, and the canonical form of finitely generated abelian groups.
Everything uses Python ints, so there is no overflow at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        """Build from a list of rows; `cols` is needed only when there are no rows."""
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                out.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(x - y for x, y in zip(self.entries, other.entries)))

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


def determinant(a: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a: IntMatrix) -> int:
    return len(smith_normal_form(a).invariant_factors)


@dataclass(frozen=True)
class SNFResult:
    """u @ a @ v == d with u, v unimodular and d in Smith form."""
    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    invariant_factors: tuple[int, ...]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, src, dst, q):
    """row[dst] += q * row[src]"""
    rs, rd = m[src], m[dst]
    for k in range(len(rd)):
        rd[k] += q * rs[k]


def _add_col(m, src, dst, q):
    """col[dst] += q * col[src]"""
    for row in m:
        row[dst] += q * row[src]


def smith_normal_form(a: IntMatrix) -> SNFResult:
    """Smith normal form by minimal-pivot elimination.

    Rows operations are mirrored into `u`, column operations into `v`.
    A final gcd/lcm pass over the diagonal restores the divisibility chain.
    """
    r, c = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    t = 0
    while t < min(r, c):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(d, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(d, t, pj)
            _swap_cols(v, t, pj)

        dirty = False
        p = d[t][t]
        for i in range(t + 1, r):
            if d[i][t]:
                q = d[i][t] // p
                _add_row(d, t, i, -q)
                _add_row(u, t, i, -q)
                dirty = dirty or d[i][t] != 0
        for j in range(t + 1, c):
            if d[t][j]:
                q = d[t][j] // p
                _add_col(d, t, j, -q)
                _add_col(v, t, j, -q)
                dirty = dirty or d[t][j] != 0
        if dirty:
            # a smaller remainder appeared; pick a new pivot
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    n = min(r, c)
    diag = [d[i][i] for i in range(n)]
    nz = sum(1 for x in diag if x)
    for i in range(nz):
        for j in range(i + 1, nz):
            x, y = d[i][i], d[j][j]
            if y % x == 0:
                continue
            g = gcd(x, y)
            s, w = _bezout(x, y)
            # [[s, w], [-y/g, x/g]] on rows i, j and [[1, -w y/g], [1, s x/g]] on cols
            _mix_rows(u, i, j, s, w, -y // g, x // g)
            _mix_cols(v, i, j, 1, -w * y // g, 1, s * x // g)
            d[i][i], d[j][j] = g, x * y // g

    ud = IntMatrix.from_rows(u, r)
    vd = IntMatrix.from_rows(v, c)
    dd = IntMatrix.from_rows(d, c)
    factors = tuple(dd[i, i] for i in range(nz))
    return SNFResult(ud, dd, vd, factors)


def _bezout(x: int, y: int) -> tuple[int, int]:
    """s, w with s*x + w*y == gcd(x, y) for x, y > 0."""
    old_r, r_ = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r_:
        q = old_r // r_
        old_r, r_ = r_, old_r - q * r_
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _mix_rows(m, i, j, a, b, c, e):
    ri, rj = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(ri, rj)]
    m[j] = [c * x + e * y for x, y in zip(ri, rj)]


def _mix_cols(m, i, j, a, b, c, e):
    # new col i = a*col_i + c*col_j ; new col j = b*col_i + e*col_j
    for row in m:
        x, y = row[i], row[j]
        row[i] = a * x + c * y
        row[j] = b * x + e * y


@dataclass(frozen=True)
class DecompositionData:
    ones: int
    factors: tuple[int, ...]
    m: int
    s: int

    @property
    def k0_rank(self) -> int:
        return self.m + self.s


def decomposition_data(a: IntMatrix, s: int) -> DecompositionData:
    """Split the SNF of a presentation matrix into unit factors, torsion factors and free defect."""
    inv = smith_normal_form(a).invariant_factors
    ones = sum(1 for f in inv if f == 1)
    factors = tuple(f for f in inv if f != 1)
    return DecompositionData(ones, factors, a.cols - len(inv), s)


@dataclass(frozen=True, order=True)
class FgAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k."""
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = self.torsion
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not an invariant factor chain; use from_cyclic")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int], free_rank: int = 0) -> FgAbGroup:
        """Canonicalize an arbitrary direct sum of cyclic groups Z/n (n = 0 means Z)."""
        finite = []
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free_rank += 1
            elif n > 1:
                finite.append(n)
        return cls(free_rank, invariant_factor_chain(finite))

    @property
    def order(self) -> int | float:
        if self.free_rank:
            return float("inf")
        return reduce(lambda x, y: x * y, self.torsion, 1)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: FgAbGroup) -> FgAbGroup:
        return FgAbGroup.from_cyclic(self.torsion + other.torsion,
                                     self.free_rank + other.free_rank)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def invariant_factor_chain(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of finite cyclic groups.

    Repeated gcd/lcm exchange is the same as the prime-power regrouping,
    without needing to factor anything.
    """
    xs = sorted(n for n in orders if n > 1)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            x, y = xs[i], xs[j]
            g = gcd(x, y)
            xs[i], xs[j] = g, x * y // g
    return tuple(x for x in xs if x > 1)


def is_isomorphic(g: FgAbGroup, h: FgAbGroup) -> bool:
    return g == h


def rank_fg(g: FgAbGroup) -> int:
    return g.free_rank


def corank_fg(g: FgAbGroup) -> int:
    # rank and corank agree for torsion + free groups
    return g.free_rank


def cokernel_over_z(a: IntMatrix) -> FgAbGroup:
    inv = smith_normal_form(a).invariant_factors
    return FgAbGroup.from_cyclic(inv, free_rank=a.rows - len(inv))


def kernel_over_z(a: IntMatrix) -> FgAbGroup:
    return FgAbGroup(a.cols - rank(a))


def _check_modulus(modulus: int) -> None:
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")


def cokernel_mod(a: IntMatrix, modulus: int) -> FgAbGroup:
    """Cokernel of a : (Z/modulus)^cols -> (Z/modulus)^rows."""
    _check_modulus(modulus)
    diag = smith_normal_form(a).d.diagonal()
    orders = [gcd(f, modulus) for f in diag]
    orders += [modulus] * (a.rows - len(diag))
    return FgAbGroup.from_cyclic(orders)


def kernel_mod(a: IntMatrix, modulus: int) -> FgAbGroup:
    """Kernel of a : (Z/modulus)^cols -> (Z/modulus)^rows."""
    _check_modulus(modulus)
    diag = smith_normal_form(a).d.diagonal()
    orders = [gcd(f, modulus) for f in diag]
    orders += [modulus] * (a.cols - len(diag))
    return FgAbGroup.from_cyclic(orders)
