"""Algebraic K-groups of Leavitt path algebras of finite-vertex graphs.

Everything is driven by the Smith normal form of the presentation matrix
(B^t - I over C^t): its invariant factors d_i and its free defect m, plus
the number s of singular vertices.  On a coefficient group G the matrix has

    coker = G/d_1 G + ... + G/d_k G + G^(m+s)
    ker   = G^m + G[d_1] + ... + G[d_k]

and K_n(L_k(E)) sits in 0 -> coker on K_n(k) -> K_n(L) -> ker on K_(n-1)(k) -> 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph import (
    Graph,
    det_at_minus_i,
    has_infinitely_many_edges,
    has_sinks,
    partition_vertices,
    presentation_matrix,
)
from .groups import (
    AlgClosed,
    Cyclic,
    FieldSpec,
    FieldUnits,
    FiniteField,
    GroupExpr,
    NumberField,
    QmodZ,
    QmodZInvP,
    UnknownFiniteTorsion,
    direct_sum,
    field_k_group,
    is_definite,
    kernel_of,
    quotient_by,
    to_fg,
)
from .intlinalg import (
    DecompositionData,
    FgAbGroup,
    cokernel_mod,
    cokernel_over_z,
    decomposition_data,
    kernel_mod,
    kernel_over_z,
    smith_normal_form,
)


class Fidelity(str, enum.Enum):
    EXACT = "EXACT"
    RANK_ONLY = "RANK_ONLY"
    SYMBOLIC = "SYMBOLIC"


@dataclass(frozen=True)
class KGroupResult:
    n: int
    group: GroupExpr
    fidelity: Fidelity

    def __str__(self):
        return f"K_{self.n} = {self.group} ({self.fidelity.value})"


class UnsupportedKGroup(ValueError):
    """The requested (field, n) is outside what the closed forms determine."""


class PreconditionError(ValueError):
    pass


def graph_decomposition(g: Graph) -> DecompositionData:
    return decomposition_data(presentation_matrix(g), len(partition_vertices(g).singular))


def coker_on(dd: DecompositionData, coeff: GroupExpr) -> GroupExpr:
    """Cokernel of the presentation matrix acting on coeff^(regular)."""
    parts = [quotient_by(coeff, d) for d in dd.factors]
    return direct_sum(parts) + coeff * (dd.m + dd.s)


def ker_on(dd: DecompositionData, coeff: GroupExpr) -> GroupExpr:
    """Kernel of the presentation matrix acting on coeff^(regular)."""
    parts = [kernel_of(coeff, d) for d in dd.factors]
    return coeff * dd.m + direct_sum(parts)


def _concrete_units(e: GroupExpr) -> GroupExpr:
    # the unit group of F_q is cyclic of order q - 1
    out = []
    for a, k in e:
        if isinstance(a, FieldUnits) and isinstance(a.field, FiniteField):
            if a.field.q > 2:
                out.append((Cyclic(a.field.q - 1), k))
        else:
            out.append((a, k))
    return GroupExpr.of(out)


def k0(g: Graph) -> FgAbGroup:
    return cokernel_over_z(presentation_matrix(g))


def k1(g: Graph, field: FieldSpec) -> GroupExpr:
    """K_1 = coker on k^x  +  ker on Z, the latter being Z^m."""
    dd = graph_decomposition(g)
    units = _concrete_units(field_k_group(field, 1))
    return coker_on(dd, units) + GroupExpr.free(dd.m)


def k_group_finite_field(g: Graph, q: int, n: int) -> FgAbGroup:
    FiniteField(q)  # validates q
    a = presentation_matrix(g)
    if n <= -1:
        return FgAbGroup()
    if n == 0:
        return cokernel_over_z(a)
    if n == 1:
        units = cokernel_mod(a, q - 1) if q > 2 else FgAbGroup()
        return units + kernel_over_z(a)
    j = n // 2 if n % 2 == 0 else (n + 1) // 2
    modulus = q ** j - 1
    if modulus == 1:
        return FgAbGroup()
    return kernel_mod(a, modulus) if n % 2 == 0 else cokernel_mod(a, modulus)


def k_group_alg_closed(g: Graph, characteristic: int, n: int) -> GroupExpr:
    field = AlgClosed(characteristic)
    dd = graph_decomposition(g)
    return coker_on(dd, field_k_group(field, n)) + ker_on(dd, field_k_group(field, n - 1))


def check_det_nonzero(g: Graph) -> int:
    """Return det(A^t - I), raising PreconditionError naming the failed condition."""
    if has_infinitely_many_edges(g):
        raise PreconditionError("graph is not finite (infinite edge multiplicity)")
    if has_sinks(g):
        raise PreconditionError("graph has a sink")
    det = det_at_minus_i(g)
    if det == 0:
        raise PreconditionError("det(A^t - I) = 0")
    return det


def k_group_det_nonzero(g: Graph, characteristic: int, n: int) -> GroupExpr:
    """Closed form for finite sink-free graphs with det(A^t - I) != 0."""
    AlgClosed(characteristic)
    check_det_nonzero(g)
    if n <= -1 or (n >= 1 and n % 2 == 1):
        return GroupExpr()
    if n == 0:
        return GroupExpr.from_fg(k0(g))
    coeff = GroupExpr.atom(QmodZ() if characteristic == 0 else QmodZInvP(characteristic))
    factors = smith_normal_form(presentation_matrix(g)).invariant_factors
    return direct_sum(kernel_of(coeff, f) for f in factors)


def k_group_number_field(g: Graph, r1: int, r2: int, n: int) -> KGroupResult:
    """Rank of K_n for n >= 2 over a number field; torsion is left unknown."""
    field = NumberField(r1, r2)
    if n < 2:
        raise UnsupportedKGroup(f"n={n}: use k0/k1 for n <= 1")
    rk_n, rk_prev = field.k_rank(n), field.k_rank(n - 1)
    if not (is_definite(rk_n) and is_definite(rk_prev)):
        raise UnsupportedKGroup(
            f"n={n}: rank of K_{n - 1} of the field is infinite; only the rank route is available"
        )
    dd = graph_decomposition(g)
    r = rk_n * (dd.m + dd.s) + rk_prev * dd.m
    group = GroupExpr.free(r) + GroupExpr.atom(UnknownFiniteTorsion())
    return KGroupResult(n, group, Fidelity.RANK_ONLY)


def _tag(n: int, e: GroupExpr) -> KGroupResult:
    return KGroupResult(n, e, Fidelity.EXACT if to_fg(e) is not None else Fidelity.SYMBOLIC)


def k_group(g: Graph, field: FieldSpec, n: int) -> KGroupResult:
    if n <= -1:
        return KGroupResult(n, GroupExpr(), Fidelity.EXACT)
    if n == 0:
        return KGroupResult(0, GroupExpr.from_fg(k0(g)), Fidelity.EXACT)
    if isinstance(field, FiniteField):
        return KGroupResult(n, GroupExpr.from_fg(k_group_finite_field(g, field.q, n)),
                            Fidelity.EXACT)
    if n == 1:
        return _tag(1, k1(g, field))
    if isinstance(field, AlgClosed):
        return _tag(n, k_group_alg_closed(g, field.characteristic, n))
    if isinstance(field, NumberField):
        return k_group_number_field(g, field.r1, field.r2, n)
    raise TypeError(f"unsupported field {field!r}")
