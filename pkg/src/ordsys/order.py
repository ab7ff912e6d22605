"""Finite posets: complements, incremented joins and the basic order laws.

Subsets of a carrier of size n are handled internally as n-bit masks;
the public functions take and return ordinary collections of elements.
An undefined incremented join or successor is returned as ``None``.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Sequence

from .report import CheckReport, Status

__all__ = [
    "Poset", "lower_complement", "upper_complement", "incremented_join",
    "successor", "join", "check_L_laws", "check_lemma_max", "check_galois",
    "all_posets",
]


def _bits(m: int) -> Iterable[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


class Poset:
    """A finite partial order on opaque hashable elements."""

    def __init__(self, elements: Sequence[Hashable], leq: Callable[[object, object], bool],
                 check: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements in carrier")
        n = self.n = len(self.elements)
        self.full = (1 << n) - 1
        up = [0] * n     # strictly above
        down = [0] * n   # strictly below
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                if i != j and leq(a, b):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self.up, self.down = up, down
        if check:
            self._validate(leq)
        self._succ: list[int | None] | None = None

    def _validate(self, leq):
        for i, a in enumerate(self.elements):
            if not leq(a, a):
                raise ValueError(f"not reflexive at {a!r}")
            if self.up[i] & self.down[i]:
                j = next(_bits(self.up[i] & self.down[i]))
                raise ValueError(f"not antisymmetric: {a!r}, {self.elements[j]!r}")
            for j in _bits(self.up[i]):
                if self.up[j] & ~self.up[i] & ~(1 << i):
                    k = next(_bits(self.up[j] & ~self.up[i] & ~(1 << i)))
                    raise ValueError(
                        f"not transitive: {a!r} <= {self.elements[j]!r} <= {self.elements[k]!r}")

    @classmethod
    def chain(cls, n: int) -> Poset:
        return cls(range(n), lambda a, b: a <= b, check=False)

    @classmethod
    def from_masks(cls, elements, up: Sequence[int]) -> Poset:
        """Build from strict up-sets given as masks (trusted, not validated)."""
        self = cls.__new__(cls)
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.n = len(self.elements)
        self.full = (1 << self.n) - 1
        self.up = list(up)
        self.down = [0] * self.n
        for i, m in enumerate(self.up):
            for j in _bits(m):
                self.down[j] |= 1 << i
        self._succ = None
        return self

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Poset({list(self.elements)!r})"

    def leq(self, a, b) -> bool:
        i, j = self.index[a], self.index[b]
        return i == j or bool(self.up[i] >> j & 1)

    def lt(self, a, b) -> bool:
        return bool(self.up[self.index[a]] >> self.index[b] & 1)

    def is_total(self) -> bool:
        return all((self.up[i] | self.down[i] | 1 << i) == self.full for i in range(self.n))

    def mask(self, S: Iterable) -> int:
        m = 0
        for x in S:
            m |= 1 << self.index[x]
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bits(m))

    # mask-level primitives

    def lower_mask(self, m: int) -> int:
        out = self.full
        for i in _bits(m):
            out &= self.down[i]
        return out

    def upper_mask(self, m: int) -> int:
        out = self.full
        for i in _bits(m):
            out &= self.up[i]
        return out

    def min_index(self, m: int) -> int | None:
        for i in _bits(m):
            if m & ~(self.up[i] | 1 << i) == 0:
                return i
        return None

    def max_index(self, m: int) -> int | None:
        for i in _bits(m):
            if m & ~(self.down[i] | 1 << i) == 0:
                return i
        return None

    def join_index(self, m: int) -> int | None:
        ub = self.full
        for i in _bits(m):
            ub &= self.up[i] | 1 << i
        return self.min_index(ub)

    def incremented_join_index(self, m: int) -> int | None:
        return self.min_index(self.upper_mask(m))

    def successor_index(self, i: int) -> int | None:
        if self._succ is None:
            self._succ = [self.min_index(self.up[k]) for k in range(self.n)]
        return self._succ[i]

    # element-level helpers

    def _el(self, i: int | None):
        return None if i is None else self.elements[i]

    def minimum(self, S: Iterable):
        return self._el(self.min_index(self.mask(S)))

    def maximum(self, S: Iterable):
        return self._el(self.max_index(self.mask(S)))

    def down_set(self, x) -> frozenset:
        """{x}↓, the elements strictly below x."""
        return self.unmask(self.down[self.index[x]])


def lower_complement(P: Poset, S: Iterable) -> frozenset:
    """Elements strictly below every member of S."""
    return P.unmask(P.lower_mask(P.mask(S)))


def upper_complement(P: Poset, S: Iterable) -> frozenset:
    return P.unmask(P.upper_mask(P.mask(S)))


def incremented_join(P: Poset, S: Iterable):
    """min of the upper complement of S, or None when it has no minimum."""
    return P._el(P.incremented_join_index(P.mask(S)))


def join(P: Poset, S: Iterable):
    return P._el(P.join_index(P.mask(S)))


def successor(P: Poset, x):
    return P._el(P.successor_index(P.index[x]))


def check_galois(P: Poset) -> CheckReport:
    """S ⊆ (S↓)↑, S ⊆ (S↑)↓ and S ∩ S↑ = ∅ for every subset S."""
    report = CheckReport("galois")
    bad_lu = bad_ul = bad_disjoint = None
    for m in range(1 << P.n):
        if bad_lu is None and m & ~P.upper_mask(P.lower_mask(m)):
            bad_lu = P.unmask(m)
        if bad_ul is None and m & ~P.lower_mask(P.upper_mask(m)):
            bad_ul = P.unmask(m)
        if bad_disjoint is None and m & P.upper_mask(m):
            bad_disjoint = P.unmask(m)
    report.verdict("S ⊆ (S↓)↑", bad_lu)
    report.verdict("S ⊆ (S↑)↓", bad_ul)
    report.verdict("S ∩ S↑ = ∅", bad_disjoint)
    return report


def check_L_laws(P: Poset, subject: str = "L-laws") -> CheckReport:
    """Check laws L1-L7; L4-L7 are reported not-applicable off total orders.

    Laws involving x⁺ are only asserted where the successor exists.
    """
    report = CheckReport(subject)
    n, el = P.n, P.elements
    succ = [P.successor_index(i) for i in range(n)]

    def lt(i, j):
        return bool(P.up[i] >> j & 1)

    def le(i, j):
        return i == j or lt(i, j)

    w1 = w2 = w3 = None
    for i in range(n):
        s = succ[i]
        if s is None:
            continue
        if w1 is None and not lt(i, s):
            w1 = (el[i], el[s])
        if w2 is None:
            between = P.up[i] & P.down[s]
            if between:
                w2 = (el[i], el[next(_bits(between))], el[s])
        if w3 is None:
            for j in range(n):
                if lt(i, j) != le(s, j):
                    w3 = (el[i], el[j])
                    break
    report.verdict("L1", w1)
    report.verdict("L2", w2)
    report.verdict("L3", w3)

    if not P.is_total():
        for law in ("L4", "L5", "L6", "L7"):
            report.add(law, Status.NOT_APPLICABLE, note="requires a total order")
        return report

    w4 = None
    skipped4 = 0
    for i in range(n):
        j = P.incremented_join_index(P.down[i])
        if j is None:
            skipped4 += 1
        elif j != i and w4 is None:
            w4 = (el[i], el[j])
    report.verdict("L4", w4, note=f"{skipped4} undefined instances skipped" if skipped4 else None)

    w5 = w6 = w7 = None
    for j in range(n):
        sj = succ[j]
        if sj is None:
            continue
        for i in range(n):
            if w5 is None and lt(i, sj) != le(i, j):
                w5 = (el[i], el[j])
            si = succ[i]
            if si is None:
                continue
            if w6 is None and (si == sj) != (i == j):
                w6 = (el[i], el[j])
            if w7 is None and lt(i, j) != lt(si, sj):
                w7 = (el[i], el[j])
    report.verdict("L5", w5)
    report.verdict("L6", w6)
    report.verdict("L7", w7)
    return report


def check_lemma_max(P: Poset, S: Iterable, subject: str = "lemma-max") -> CheckReport:
    """Check the three parts of the max/min lemma for one subset S."""
    report = CheckReport(subject)
    m = P.mask(S)
    el = P._el
    total = P.is_total()
    top = P.max_index(m)
    sup = P.join_index(m)
    isup = P.incremented_join_index(m)

    # (i)
    if top is None:
        ok = (sup is None) == (isup is None) and sup == isup
        report.verdict("(i)", None if ok else (el(sup), el(isup)))
    else:
        report.passed("(i)", note="S has a largest element")
    if sup is not None and sup == isup and top is not None:
        report.failed("(i) converse", el(top))
    else:
        report.passed("(i) converse")

    # (ii)
    if top is not None:
        ts = P.successor_index(top)
        report.verdict("(ii)", None if ts == isup else (el(ts), el(isup)))
    else:
        report.passed("(ii)", note="S has no largest element")
    if total:
        w = None
        if isup is not None:
            for y in range(P.n):
                if P.successor_index(y) == isup and y != top:
                    w = el(y)
                    break
        report.verdict("(ii) converse", w)
    else:
        report.add("(ii) converse", Status.NOT_APPLICABLE, note="requires a total order")

    # (iii)
    low = P.lower_mask(m)
    ij = P.incremented_join_index(low)
    bottom = P.min_index(m)
    if ij is not None:
        report.verdict("(iii)", None if ij == bottom else (el(ij), el(bottom)))
    else:
        report.passed("(iii)", note="incremented join of S↓ undefined")
    if total:
        bad = bottom is not None and ij != bottom
        report.verdict("(iii) converse", (el(bottom), el(ij)) if bad else None)
    else:
        report.add("(iii) converse", Status.NOT_APPLICABLE, note="requires a total order")
    return report


def all_posets(n: int) -> Iterable[Poset]:
    """Every partial order on {0..n-1} (labelled), n <= 5 is practical."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for choice in itertools.product((False, True), repeat=len(pairs)):
        up = [0] * n
        for (i, j), c in zip(pairs, choice):
            if c:
                up[i] |= 1 << j
        ok = True
        for i in range(n):
            if any(up[j] >> i & 1 for j in _bits(up[i])):
                ok = False
                break
            for j in _bits(up[i]):
                if up[j] & ~up[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield Poset.from_masks(range(n), up)
