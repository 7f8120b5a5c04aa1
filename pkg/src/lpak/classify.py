"""Size functions, singular-vertex recovery and Morita equivalence.

For a simple graph with finitely many vertices and infinitely many edges,
the pair (K_0, number of singular vertices) is a complete Morita invariant.
The decision procedure compares that pair directly.  The size-function
formulas recover the singular count from K-data alone and are run on every
decision as a cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .graph import Graph, has_infinitely_many_edges, is_simple, partition_vertices
from .groups import (
    AlgClosed,
    Extended,
    FieldSpec,
    FiniteField,
    GroupExpr,
    NumberField,
    corank_of,
    field_k_group,
    is_definite,
    rank_of,
)
from .ktheory import k0, k_group


class Exactness(str, enum.Enum):
    EXACT_SIZE = "EXACT_SIZE"
    SIZE_ONLY = "SIZE_ONLY"


@dataclass(frozen=True)
class SizeFunction:
    name: str
    value_on: Callable[[GroupExpr], Extended] = field(compare=False)
    exactness: Exactness

    @property
    def exact(self) -> bool:
        return self.exactness is Exactness.EXACT_SIZE

    def __call__(self, e: GroupExpr) -> Extended:
        return self.value_on(e)


RANK = SizeFunction("RANK", rank_of, Exactness.EXACT_SIZE)
CORANK = SizeFunction("CORANK", corank_of, Exactness.SIZE_ONLY)


class HypothesisError(ValueError):
    """The size-function values on the field do not satisfy the hypotheses."""


class InconsistentInput(ValueError):
    """A recovery formula produced a negative or non-integral vertex count."""


def _field_values(field: FieldSpec, n: int, f: SizeFunction) -> tuple[Extended, Extended]:
    return f(field_k_group(field, n)), f(field_k_group(field, n - 1))


def predicted_f_value(g: Graph, field: FieldSpec, n: int, f: SizeFunction) -> int:
    """F(K_n(L_k(E))) as determined by rank K_0 and the singular count."""
    if n < 1:
        raise HypothesisError("n must be positive")
    fn, fn1 = _field_values(field, n, f)
    if not (is_definite(fn) and is_definite(fn1)):
        raise HypothesisError(f"{f.name} of K_{n} or K_{n - 1} of the field is {fn}, {fn1}")
    r = k0(g).free_rank
    s = len(partition_vertices(g).singular)
    if f.exact:
        return (fn + fn1) * r - s * fn1
    if fn != 0:
        raise HypothesisError(f"{f.name} is not exact and {f.name}(K_{n}(k)) = {fn} != 0")
    return (r - s) * fn1


def _require_divisor(fn1: Extended, f: SizeFunction, n: int) -> None:
    if not is_definite(fn1) or fn1 == 0:
        raise HypothesisError(f"need 0 < {f.name}(K_{n - 1}(k)) < inf, got {fn1}")


def singular_count_exact_size(field: FieldSpec, n: int, f: SizeFunction,
                              rank_k0: int, f_kn_l: int) -> int:
    if not f.exact:
        raise HypothesisError(f"{f.name} is not an exact size function")
    fn, fn1 = _field_values(field, n, f)
    if not is_definite(fn):
        raise HypothesisError(f"need {f.name}(K_{n}(k)) < inf, got {fn}")
    _require_divisor(fn1, f, n)
    num = (fn + fn1) * rank_k0 - f_kn_l
    if num < 0 or num % fn1:
        raise InconsistentInput(f"({fn} + {fn1}) * {rank_k0} - {f_kn_l} is not a "
                                f"non-negative multiple of {fn1}")
    return num // fn1


def singular_count_size(field: FieldSpec, n: int, f: SizeFunction,
                        rank_k0: int, f_kn_l: int) -> int:
    fn, fn1 = _field_values(field, n, f)
    if fn != 0:
        raise HypothesisError(f"need {f.name}(K_{n}(k)) = 0, got {fn}")
    _require_divisor(fn1, f, n)
    if f_kn_l % fn1:
        raise InconsistentInput(f"{f_kn_l} is not divisible by {fn1}")
    s = rank_k0 - f_kn_l // fn1
    if s < 0:
        raise InconsistentInput(f"negative singular count {s}")
    return s


def singular_count_number_field(r1: int, r2: int, k: int, rank_k0: int, rank_kn_l: int,
                                family: str = "6+4k") -> int:
    """Singular vertices from rank K_0 and rank K_n over a number field.

    family "6+4k" uses n = 6 + 4k and divides by r1 + r2; "4+4k" uses
    n = 4 + 4k, divides by r2 and needs r2 > 0.
    """
    NumberField(r1, r2)
    if k < 0:
        raise HypothesisError("k must be non-negative")
    if family == "6+4k":
        div = r1 + r2
    elif family == "4+4k":
        if r2 == 0:
            raise HypothesisError("the 4+4k family needs a complex place (r2 > 0)")
        div = r2
    else:
        raise ValueError(f"unknown family {family!r}")
    if rank_kn_l % div:
        raise InconsistentInput(f"rank {rank_kn_l} is not divisible by {div}")
    s = rank_k0 - rank_kn_l // div
    if s < 0:
        raise InconsistentInput(f"negative singular count {s}")
    return s


def valid_number_field_indices(field: NumberField, upto: int) -> list[int]:
    """Indices n <= upto at which rank recovers the singular count."""
    return [n for n in range(4, upto + 1, 2)
            if n % 4 == 2 or field.r2 > 0]


def number_field_family(n: int) -> tuple[str, int]:
    if n >= 6 and n % 4 == 2:
        return "6+4k", (n - 6) // 4
    if n >= 4 and n % 4 == 0:
        return "4+4k", (n - 4) // 4
    raise HypothesisError(f"n={n} is not a valid number-field index")


class Verdict(str, enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    NOT_EQUIVALENT = "NOT_EQUIVALENT"
    PRECONDITION_FAILED = "PRECONDITION_FAILED"


@dataclass(frozen=True)
class MoritaDecision:
    verdict: Verdict
    certificate: dict


def _precondition(g: Graph) -> str | None:
    if not is_simple(g):
        return "not simple"
    if not has_infinitely_many_edges(g):
        return "finitely many edges"
    return None


def recovery_route(field: FieldSpec) -> tuple[SizeFunction, int]:
    """The size function and index used to re-derive singular counts."""
    if isinstance(field, NumberField):
        return RANK, 6
    if isinstance(field, (FiniteField, AlgClosed)):
        # K_1(k) has corank 0 for these fields and K_0(k) = Z has corank 1
        return CORANK, 1
    raise TypeError(f"unsupported field {field!r}")


def recover_singular_count(g: Graph, field: FieldSpec) -> int:
    f, n = recovery_route(field)
    rank0 = k0(g).free_rank
    value = f(k_group(g, field, n).group)
    if isinstance(field, NumberField):
        family, k = number_field_family(n)
        return singular_count_number_field(field.r1, field.r2, k, rank0, value, family)
    return singular_count_size(field, n, f, rank0, value)


def morita_equivalent(e: Graph, f: Graph, field: FieldSpec) -> MoritaDecision:
    size_fn, n = recovery_route(field)
    cert: dict = {
        "field": field.spec,
        "criterion": "K0 and singular vertex count",
        "recovery": {"size_function": size_fn.name, "n": n,
                     "formula": "exact" if size_fn.exact else "size"},
        "graphs": [],
        "failed_precondition": None,
    }
    for label, g in (("first", e), ("second", f)):
        reason = _precondition(g)
        if reason:
            cert["failed_precondition"] = f"{label} graph: {reason}"
            return MoritaDecision(Verdict.PRECONDITION_FAILED, cert)

    invariants = []
    for g in (e, f):
        group = k0(g)
        s = len(partition_vertices(g).singular)
        recovered = recover_singular_count(g, field)
        if recovered != s:
            raise RuntimeError(f"singular count recovery gave {recovered}, graph has {s}")
        invariants.append((group, s))
        cert["graphs"].append({"k0": str(group), "singular": s, "recovered_singular": recovered})

    same = invariants[0] == invariants[1]
    return MoritaDecision(Verdict.EQUIVALENT if same else Verdict.NOT_EQUIVALENT, cert)
