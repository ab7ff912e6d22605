"""Finite von Neumann ordinals inside the hereditarily finite universe."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

from .errors import InvariantViolation, PreconditionError
from .hfsets import EMPTY, HFSet, hfset, is_transitive, singleton, union
from .order import Poset, incremented_join

__all__ = [
    "VNOrdinal", "vn_zero", "vn_succ", "vn", "is_vn_ordinal", "vn_leq",
    "vn_leq_membership", "vn_min_diff", "vn_incremented_join",
    "vn_segment_poset", "order_incremented_join",
]


def is_vn_ordinal(x: HFSet) -> bool:
    """Transitive, and totally ordered by ∈-or-equal."""
    if not is_transitive(x):
        return False
    members = x.children
    for a in members:
        for b in members:
            if a is b:
                continue
            if a not in b and b not in a:
                return False
            # ∈ must itself be transitive on x for ⊑ to be an order
            if a in b:
                for c in members:
                    if b in c and a not in c:
                        return False
    return True


@total_ordering
@dataclass(frozen=True)
class VNOrdinal:
    value: HFSet

    def __post_init__(self):
        if not is_vn_ordinal(self.value):
            raise ValueError(f"{self.value} is not a von Neumann ordinal")

    def __int__(self) -> int:
        # the ordinal n has exactly n members
        return len(self.value)

    def __lt__(self, other: VNOrdinal) -> bool:
        return self.value in other.value

    def __str__(self) -> str:
        return str(int(self))

    def __repr__(self) -> str:
        return f"VNOrdinal({int(self)})"

    def raw(self) -> str:
        return str(self.value)

    def members(self) -> list[VNOrdinal]:
        return sorted(_wrap(c) for c in self.value)


def _wrap(x: HFSet) -> VNOrdinal:
    v = object.__new__(VNOrdinal)
    object.__setattr__(v, "value", x)
    return v


_numerals: list[VNOrdinal] = [_wrap(EMPTY)]


def vn_zero() -> VNOrdinal:
    return _numerals[0]


def vn_succ(n: VNOrdinal) -> VNOrdinal:
    """∪{n, {n}}."""
    return _wrap(union(hfset(n.value, singleton(n.value))))


def vn(n: int) -> VNOrdinal:
    """The von Neumann numeral for the natural `n` (memoized)."""
    if n < 0:
        raise ValueError("naturals only")
    while len(_numerals) <= n:
        _numerals.append(vn_succ(_numerals[-1]))
    return _numerals[n]


def vn_leq(x: VNOrdinal, y: VNOrdinal) -> bool:
    """x ⊑ y, decided as x ⊆ y."""
    return x.value.issubset(y.value)


def vn_leq_membership(x: VNOrdinal, y: VNOrdinal) -> bool:
    return x.value in y.value or x.value is y.value


def vn_min_diff(x: VNOrdinal, y: VNOrdinal) -> VNOrdinal:
    """The ⊑-least member of y ∖ x, checked against x ∩ y."""
    diff = [m for m in y.value if m not in x.value]
    if not diff:
        raise PreconditionError(f"{x} ⊇ {y}: y ∖ x is empty")
    least = [m for m in diff if all(m is d or m in d for d in diff)]
    if len(least) != 1:
        raise InvariantViolation(f"y ∖ x has no least element for x={x}, y={y}")
    meet = hfset(*(m for m in x.value if m in y.value))
    if least[0] is not meet:
        raise InvariantViolation(f"min(y∖x)={least[0]} differs from x∩y={meet}")
    return _wrap(least[0])


def vn_incremented_join(X: Iterable[VNOrdinal]) -> VNOrdinal:
    """∪{∪X, X} for a finite set X of ordinals."""
    xs = hfset(*(x.value for x in X))
    return _wrap(union(hfset(union(xs), xs)))


def vn_segment_poset(bound: int) -> Poset:
    """The ordinals 0..bound-1 ordered by ⊑ (as subset)."""
    return Poset([vn(i) for i in range(bound)], vn_leq, check=False)


def order_incremented_join(X: Iterable[VNOrdinal], bound: int) -> VNOrdinal | None:
    """min of the upper complement of X among the ordinals below `bound`."""
    return incremented_join(vn_segment_poset(bound), X)
