"""Symbolic abelian groups built from a small vocabulary of atoms.

A :class:`GroupExpr` is a formal direct sum of atoms with multiplicities.
The atoms cover what the K-theory of the supported fields needs: Z, finite
cyclic groups, uniquely divisible groups D_n, Q/Z and its prime-to-p part,
unit groups of fields, and an "unknown finite torsion" placeholder.

Canonical text form, used by the CLI and parsed back by :func:`parse_group`::

    Z^2 + Z/2 + Z/6 + (Q/Z) + D_4 + k^x[nf:1,0] + T?
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

from .intlinalg import FgAbGroup, invariant_factor_chain

INFINITY = math.inf


class _Unknown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNKNOWN"

    def __reduce__(self):
        return (_Unknown, ())


UNKNOWN = _Unknown()

Extended = Union[int, float, _Unknown]  # non-negative int, INFINITY or UNKNOWN


def ext_add(a: Extended, b: Extended) -> Extended:
    """Addition on Z+ u {inf, UNKNOWN}; UNKNOWN absorbs everything except infinity."""
    if a == INFINITY or b == INFINITY:
        return INFINITY
    if a is UNKNOWN or b is UNKNOWN:
        return UNKNOWN
    return a + b


def ext_mul(k: int | float, x: Extended) -> Extended:
    """k copies of something of size x."""
    if k == 0 or x == 0:
        return 0
    if x is UNKNOWN:
        return UNKNOWN
    if k == INFINITY or x == INFINITY:
        return INFINITY
    return k * x


def is_definite(x: Extended) -> bool:
    return x is not UNKNOWN and x != INFINITY


# ---------------------------------------------------------------- fields

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def prime_power_base(q: int) -> int | None:
    """The prime p with q = p^k, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    while q % p == 0:
        q //= p
    return p if q == 1 else None


@dataclass(frozen=True)
class FiniteField:
    q: int

    def __post_init__(self):
        if prime_power_base(self.q) is None:
            raise ValueError(f"{self.q} is not a prime power")

    @property
    def characteristic(self) -> int:
        return prime_power_base(self.q)

    @property
    def spec(self) -> str:
        return f"fq:{self.q}"


@dataclass(frozen=True)
class AlgClosed:
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is neither 0 nor prime")

    @property
    def spec(self) -> str:
        return f"algclosed:{self.characteristic}"


@dataclass(frozen=True)
class NumberField:
    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0 or self.r1 + self.r2 == 0:
            raise ValueError("a number field needs r1, r2 >= 0 and at least one place")

    @property
    def spec(self) -> str:
        return f"nf:{self.r1},{self.r2}"

    def k_rank(self, n: int) -> Extended:
        """Rank of K_n of the field for n >= 0 (Borel's computation)."""
        if n < 0:
            return 0
        if n == 0:
            return 1
        if n == 1:
            return INFINITY
        if n % 2 == 0:
            return 0
        if n % 4 == 1:
            return self.r1 + self.r2
        return self.r2


FieldSpec = Union[FiniteField, AlgClosed, NumberField]


def parse_field(text: str) -> FieldSpec:
    """Parse ``fq:<q>``, ``algclosed:<0|p>`` or ``nf:<r1>,<r2>``."""
    kind, _, arg = text.strip().partition(":")
    try:
        if kind == "fq":
            return FiniteField(int(arg))
        if kind == "algclosed":
            return AlgClosed(int(arg))
        if kind == "nf":
            r1, r2 = (int(x) for x in arg.split(","))
            return NumberField(r1, r2)
    except ValueError as exc:
        raise ValueError(f"bad field spec {text!r}: {exc}") from exc
    raise ValueError(f"bad field spec {text!r}; expected fq:<q>, algclosed:<c> or nf:<r1>,<r2>")


# ---------------------------------------------------------------- atoms

class Atom:
    _order = 0

    def sort_key(self):
        return (self._order, self.text())

    def text(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Z(Atom):
    _order = 0

    def text(self):
        return "Z"


@dataclass(frozen=True)
class Cyclic(Atom):
    d: int
    _order = 1

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("cyclic atoms need order >= 2")

    def sort_key(self):
        return (self._order, self.d)

    def text(self):
        return f"Z/{self.d}"


@dataclass(frozen=True)
class QmodZ(Atom):
    _order = 2

    def text(self):
        return "(Q/Z)"


@dataclass(frozen=True)
class QmodZInvP(Atom):
    """Q/Z with its p-primary part removed."""
    p: int
    _order = 3

    def sort_key(self):
        return (self._order, self.p)

    def text(self):
        return f"(Q/Z[1/{self.p}])"


@dataclass(frozen=True)
class UniquelyDivisible(Atom):
    tag: int
    _order = 4

    def sort_key(self):
        return (self._order, self.tag)

    def text(self):
        return f"D_{self.tag}"


@dataclass(frozen=True)
class FieldUnits(Atom):
    field: FieldSpec
    _order = 5

    def text(self):
        return f"k^x[{self.field.spec}]"


@dataclass(frozen=True)
class Quotient(Atom):
    """base / d*base, kept formal."""
    base: Atom
    d: int
    _order = 6

    def text(self):
        return f"({self.base.text()})/{self.d}"


@dataclass(frozen=True)
class Torsion(Atom):
    """The d-torsion subgroup of base, kept formal."""
    base: Atom
    d: int
    _order = 7

    def text(self):
        return f"({self.base.text()})[{self.d}]"


@dataclass(frozen=True)
class UnknownFiniteTorsion(Atom):
    _order = 8

    def text(self):
        return "T?"


def is_divisible(a: Atom) -> bool:
    if isinstance(a, (QmodZ, QmodZInvP, UniquelyDivisible)):
        return True
    return isinstance(a, FieldUnits) and isinstance(a.field, AlgClosed)


def is_torsion(a: Atom) -> bool:
    if isinstance(a, (Cyclic, QmodZ, QmodZInvP, Quotient, Torsion, UnknownFiniteTorsion)):
        return True
    return isinstance(a, FieldUnits) and isinstance(a.field, FiniteField)


# ---------------------------------------------------------------- expressions

@dataclass(frozen=True)
class GroupExpr:
    summands: tuple[tuple[Atom, int | float], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[Atom, int | float]] = ()) -> GroupExpr:
        counts: dict[Atom, int | float] = {}
        for atom, k in pairs:
            if k == 0:
                continue
            if k < 0:
                raise ValueError("negative multiplicity")
            counts[atom] = counts.get(atom, 0) + k
        # finite cyclic summands regroup into invariant factors
        finite = []
        for atom in [a for a in counts if isinstance(a, Cyclic)]:
            if counts[atom] != INFINITY:
                finite += [atom.d] * counts.pop(atom)
        for d in invariant_factor_chain(finite):
            counts[Cyclic(d)] = counts.get(Cyclic(d), 0) + 1
        # a finite sum of unknown finite groups is one unknown finite group
        if counts.get(UnknownFiniteTorsion(), 0) not in (0, INFINITY):
            counts[UnknownFiniteTorsion()] = 1
        items = sorted(counts.items(), key=lambda kv: kv[0].sort_key())
        return cls(tuple(items))

    @classmethod
    def atom(cls, a: Atom, k: int | float = 1) -> GroupExpr:
        return cls.of([(a, k)])

    @classmethod
    def zero(cls) -> GroupExpr:
        return cls()

    @classmethod
    def free(cls, n: int) -> GroupExpr:
        return cls.of([(Z(), n)])

    @classmethod
    def from_fg(cls, g: FgAbGroup) -> GroupExpr:
        return cls.of([(Z(), g.free_rank)] + [(Cyclic(d), 1) for d in g.torsion])

    def __add__(self, other: GroupExpr) -> GroupExpr:
        return GroupExpr.of(self.summands + other.summands)

    def __mul__(self, k: int | float) -> GroupExpr:
        return GroupExpr.of((a, ext_mul(k, m)) for a, m in self.summands)

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.summands)

    def atoms(self) -> list[Atom]:
        return [a for a, _ in self.summands]

    def is_zero(self) -> bool:
        return not self.summands

    def __str__(self):
        return render_group(self)


def direct_sum(exprs: Iterable[GroupExpr]) -> GroupExpr:
    out = GroupExpr()
    for e in exprs:
        out = out + e
    return out


def _fmt_mult(k):
    return "inf" if k == INFINITY else str(k)


def render_group(e: GroupExpr) -> str:
    parts = []
    for a, k in e.summands:
        t = a.text()
        if k != 1:
            if isinstance(a, Cyclic):
                t = f"({t})"
            t = f"{t}^{_fmt_mult(k)}"
        parts.append(t)
    return " + ".join(parts) if parts else "0"


_POW = re.compile(r"^(.*)\^(\d+|inf)$")


def _parse_atom(t: str) -> Atom:
    if t == "Z":
        return Z()
    if t == "(Q/Z)":
        return QmodZ()
    if t == "T?":
        return UnknownFiniteTorsion()
    if m := re.fullmatch(r"\(?Z/(\d+)\)?", t):
        return Cyclic(int(m.group(1)))
    if m := re.fullmatch(r"\(Q/Z\[1/(\d+)\]\)", t):
        return QmodZInvP(int(m.group(1)))
    if m := re.fullmatch(r"D_(\d+)", t):
        return UniquelyDivisible(int(m.group(1)))
    if m := re.fullmatch(r"k\^x\[(.+)\]", t):
        return FieldUnits(parse_field(m.group(1)))
    if m := re.fullmatch(r"\((.+)\)/(\d+)", t):
        return Quotient(_parse_atom(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"\((.+)\)\[(\d+)\]", t):
        return Torsion(_parse_atom(m.group(1)), int(m.group(2)))
    raise ValueError(f"cannot parse group atom {t!r}")


def parse_group(text: str) -> GroupExpr:
    text = text.strip()
    if text == "0":
        return GroupExpr()
    pairs = []
    for term in text.split(" + "):
        k: int | float = 1
        if m := _POW.match(term):
            term, k = m.group(1), (INFINITY if m.group(2) == "inf" else int(m.group(2)))
        pairs.append((_parse_atom(term), k))
    return GroupExpr.of(pairs)


# ---------------------------------------------------------------- K-theory of fields

def field_k_group(field: FieldSpec, n: int) -> GroupExpr:
    """K_n of a supported field, as a symbolic group."""
    if n <= -1:
        return GroupExpr()
    if n == 0:
        return GroupExpr.free(1)
    if n == 1:
        return GroupExpr.atom(FieldUnits(field))
    if isinstance(field, FiniteField):
        if n % 2 == 0:
            return GroupExpr()
        j = (n + 1) // 2
        return GroupExpr.atom(Cyclic(field.q ** j - 1))
    if isinstance(field, AlgClosed):
        e = GroupExpr.atom(UniquelyDivisible(n))
        if n % 2 == 1:
            p = field.characteristic
            e = e + GroupExpr.atom(QmodZ() if p == 0 else QmodZInvP(p))
        return e
    if isinstance(field, NumberField):
        return GroupExpr.free(field.k_rank(n)) + GroupExpr.atom(UnknownFiniteTorsion())
    raise TypeError(f"unsupported field {field!r}")


# ---------------------------------------------------------------- rewriting

def _strip(d: int, p: int) -> int:
    while d % p == 0:
        d //= p
    return d


def _cyc(d: int) -> GroupExpr:
    return GroupExpr.atom(Cyclic(d)) if d > 1 else GroupExpr()


def _check_d(d: int) -> None:
    if d < 1:
        raise ValueError(f"need a positive integer, got {d}")


def _quotient_atom(a: Atom, d: int) -> GroupExpr:
    if d == 1:
        return GroupExpr()
    if isinstance(a, Z):
        return _cyc(d)
    if isinstance(a, Cyclic):
        return _cyc(gcd(a.d, d))
    if is_divisible(a):
        return GroupExpr()
    if isinstance(a, FieldUnits):
        if isinstance(a.field, FiniteField):
            return _cyc(gcd(a.field.q - 1, d))
        return GroupExpr.atom(Quotient(a, d))
    if isinstance(a, Quotient):
        g = gcd(a.d, d)
        return GroupExpr.atom(Quotient(a.base, g)) if g > 1 else GroupExpr()
    if isinstance(a, UnknownFiniteTorsion):
        return GroupExpr.atom(a)
    return GroupExpr.atom(Quotient(a, d))


def _kernel_atom(a: Atom, d: int) -> GroupExpr:
    if d == 1:
        return GroupExpr()
    if isinstance(a, (Z, UniquelyDivisible)):
        return GroupExpr()
    if isinstance(a, Cyclic):
        return _cyc(gcd(a.d, d))
    if isinstance(a, QmodZ):
        return _cyc(d)
    if isinstance(a, QmodZInvP):
        return _cyc(_strip(d, a.p))
    if isinstance(a, FieldUnits):
        f = a.field
        if isinstance(f, AlgClosed):
            return _cyc(d if f.characteristic == 0 else _strip(d, f.characteristic))
        if isinstance(f, FiniteField):
            return _cyc(gcd(f.q - 1, d))
        return GroupExpr.atom(Torsion(a, d))
    if isinstance(a, Torsion):
        g = gcd(a.d, d)
        return GroupExpr.atom(Torsion(a.base, g)) if g > 1 else GroupExpr()
    if isinstance(a, UnknownFiniteTorsion):
        return GroupExpr.atom(a)
    return GroupExpr.atom(Torsion(a, d))


def quotient_by(e: GroupExpr, d: int) -> GroupExpr:
    """G / dG, computed summand by summand."""
    _check_d(d)
    return direct_sum(_quotient_atom(a, d) * k for a, k in e)


def kernel_of(e: GroupExpr, d: int) -> GroupExpr:
    """The kernel of multiplication by d on G."""
    _check_d(d)
    return direct_sum(_kernel_atom(a, d) * k for a, k in e)


def _atom_rank(a: Atom) -> Extended:
    if isinstance(a, Z):
        return 1
    if is_torsion(a):
        return 0
    if isinstance(a, UniquelyDivisible):
        return UNKNOWN
    if isinstance(a, FieldUnits):
        f = a.field
        if isinstance(f, NumberField):
            return INFINITY
        return INFINITY if f.characteristic == 0 else UNKNOWN
    raise TypeError(a)


def _atom_corank(a: Atom) -> Extended:
    if isinstance(a, Z):
        return 1
    if is_torsion(a) or is_divisible(a):
        return 0
    return UNKNOWN


def _sum_over(e: GroupExpr, per_atom) -> Extended:
    total: Extended = 0
    for a, k in e:
        total = ext_add(total, ext_mul(k, per_atom(a)))
    return total


def rank_of(e: GroupExpr) -> Extended:
    return _sum_over(e, _atom_rank)


def corank_of(e: GroupExpr) -> Extended:
    """Corank where it is pinned down: Z counts 1, torsion and divisible atoms 0."""
    return _sum_over(e, _atom_corank)


def to_fg(e: GroupExpr) -> FgAbGroup | None:
    """The canonical finitely generated group, or None if `e` is not one."""
    free, orders = 0, []
    for a, k in e:
        if k == INFINITY:
            return None
        if isinstance(a, Z):
            free += k
        elif isinstance(a, Cyclic):
            orders += [a.d] * k
        else:
            return None
    return FgAbGroup.from_cyclic(orders, free)
