"""Hereditarily finite sets with canonical, hash-consed representation.

Every :class:`HFSet` is interned: two sets are equal exactly when they are
the same Python object, so equality and hashing are O(1).  Children are
kept sorted by a fixed total order (rank first, then the sorted child
lists compared lexicographically), which gives each set one canonical
spelling in the brace syntax ``{}``, ``{{},{{}}}``.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterable, Iterator, Mapping

from .errors import DomainError, ParseError, ResourceLimitError
from .report import CheckReport

__all__ = [
    "HFSet", "EMPTY", "Universe", "Limits", "limits", "set_limits",
    "hfset", "canonicalize", "parse", "pair", "singleton", "union",
    "binary_union", "image", "image_union", "is_transitive",
    "is_transitive_powerset", "in_universe", "in_restricted_powerset",
    "kuratowski", "unkuratowski", "cartesian_product", "subset_by_union",
    "random_hfset", "universe_lemma_suite",
]


@dataclass
class Limits:
    max_rank: int = 16
    max_nodes: int = 10**6


limits = Limits()


def set_limits(max_rank: int | None = None, max_nodes: int | None = None) -> Limits:
    if max_rank is not None:
        limits.max_rank = max_rank
    if max_nodes is not None:
        limits.max_nodes = max_nodes
    return limits


class HFSet:
    """An interned hereditarily finite set.  Build with :func:`hfset`."""

    __slots__ = ("children", "rank", "key", "_hash", "_members", "__weakref__")

    children: tuple[HFSet, ...]
    rank: int
    key: tuple

    def __new__(cls, *args, **kwargs):
        raise TypeError("use hfset(...) or canonicalize(...) to build sets")

    def __iter__(self) -> Iterator[HFSet]:
        return iter(self.children)

    def __len__(self) -> int:
        return len(self.children)

    def __bool__(self) -> bool:
        return bool(self.children)

    def __contains__(self, item) -> bool:
        return item in self._members

    def __hash__(self) -> int:
        return self._hash

    # canonical order, not inclusion
    def __lt__(self, other: HFSet) -> bool:
        return self.key < other.key

    def __le__(self, other: HFSet) -> bool:
        return self.key <= other.key

    def __gt__(self, other: HFSet) -> bool:
        return self.key > other.key

    def __ge__(self, other: HFSet) -> bool:
        return self.key >= other.key

    def issubset(self, other: HFSet) -> bool:
        return all(c in other._members for c in self.children)

    def members(self) -> frozenset[HFSet]:
        return self._members

    def __str__(self) -> str:
        return "{" + ",".join(str(c) for c in self.children) + "}"

    def __repr__(self) -> str:
        return f"HFSet({self})"

    def __reduce__(self):
        return (parse, (str(self),))


_table: dict[tuple[HFSet, ...], HFSet] = {}
_lock = threading.Lock()


def _intern(children: tuple[HFSet, ...]) -> HFSet:
    # children must already be sorted and duplicate-free
    node = _table.get(children)
    if node is not None:
        return node
    rank = 1 + max(c.rank for c in children) if children else 0
    if rank > limits.max_rank:
        raise ResourceLimitError(f"rank {rank} exceeds max_rank={limits.max_rank}")
    with _lock:
        node = _table.get(children)
        if node is not None:
            return node
        if len(_table) >= limits.max_nodes:
            raise ResourceLimitError(f"intern table full (max_nodes={limits.max_nodes})")
        node = object.__new__(HFSet)
        node.children = children
        node.rank = rank
        node.key = (rank, tuple(c.key for c in children))
        node._hash = hash(("HF", children))
        node._members = frozenset(children)
        _table[children] = node
    return node


def _from_members(members: Iterable[HFSet]) -> HFSet:
    return _intern(tuple(sorted(set(members), key=_sort_key)))


def _sort_key(x: HFSet) -> tuple:
    return x.key


EMPTY = _intern(())


def hfset(*elements: HFSet) -> HFSet:
    """The canonical set whose members are `elements`."""
    for e in elements:
        if not isinstance(e, HFSet):
            raise TypeError(f"expected HFSet, got {type(e).__name__}")
    return _from_members(elements)


def singleton(x: HFSet) -> HFSet:
    return _intern((x,))


def canonicalize(raw: Any) -> HFSet:
    """Canonical HFSet for a nested literal.

    `raw` is an HFSet, a brace string, or any finite nesting of lists,
    tuples, sets and frozensets.  Order and repetition are ignored.
    """
    if isinstance(raw, str):
        return parse(raw)
    return _canon(raw, 0)


def _canon(raw: Any, depth: int) -> HFSet:
    if isinstance(raw, HFSet):
        return raw
    if depth > limits.max_rank:
        raise ResourceLimitError(f"nesting deeper than max_rank={limits.max_rank}")
    if not isinstance(raw, (list, tuple, set, frozenset)):
        raise TypeError(f"cannot read {type(raw).__name__} as a set literal")
    return _from_members(_canon(r, depth + 1) for r in raw)


def parse(text: str) -> HFSet:
    """Read the brace syntax (whitespace-insensitive)."""
    src = "".join(text.split())
    pos = 0
    stack: list[list[HFSet]] = []
    result = None
    expect_item = False
    while pos < len(src):
        ch = src[pos]
        if ch == "{":
            if result is not None:
                raise ParseError(f"trailing input at offset {pos}")
            if stack and not expect_item and stack[-1]:
                raise ParseError(f"missing ',' at offset {pos}")
            if len(stack) > limits.max_rank:
                raise ResourceLimitError(f"nesting deeper than max_rank={limits.max_rank}")
            stack.append([])
            expect_item = False
        elif ch == "}":
            if not stack or expect_item:
                raise ParseError(f"unexpected '}}' at offset {pos}")
            node = _from_members(stack.pop())
            if stack:
                stack[-1].append(node)
            else:
                result = node
        elif ch == ",":
            if not stack or not stack[-1] or expect_item:
                raise ParseError(f"unexpected ',' at offset {pos}")
            expect_item = True
        else:
            raise ParseError(f"unexpected character {ch!r} at offset {pos}")
        pos += 1
    if stack or result is None:
        raise ParseError("unbalanced braces")
    return result


def pair(x: HFSet, y: HFSet) -> HFSet:
    return hfset(x, y)


def union(x: HFSet) -> HFSet:
    """The union of all members of `x`."""
    return _from_members(z for y in x for z in y)


def binary_union(x: HFSet, y: HFSet) -> HFSet:
    return union(pair(x, y))


def _apply(f: Mapping | Callable, a: HFSet) -> HFSet:
    try:
        out = f[a] if isinstance(f, Mapping) else f(a)
    except KeyError:
        raise DomainError(f"function undefined on {a}") from None
    if not isinstance(out, HFSet):
        raise TypeError(f"function returned {type(out).__name__}, expected HFSet")
    return out


def image(f: Mapping | Callable, I: HFSet) -> HFSet:
    """The image ``{f(a) | a in I}``."""
    return _from_members(_apply(f, a) for a in I)


def image_union(f: Mapping | Callable, I: HFSet) -> HFSet:
    """``∪{f(a) | a in I}``; raises DomainError if f misses a member."""
    return union(image(f, I))


def is_transitive(x: HFSet) -> bool:
    """Every member of a member of x is a member of x."""
    return union(x).issubset(x)


def is_transitive_powerset(x: HFSet) -> bool:
    # X ⊆ P(X) form
    return all(y.issubset(x) for y in x)


class Universe(str, Enum):
    """The two built-in universes, represented by membership predicates."""

    FIN = "FIN"
    CNT = "CNT"

    def admits(self, collection) -> bool:
        """Is `collection` bijective to a member of this universe?

        Finite collections are admitted by both universes.  Symbolic
        collections report their size with an ``is_finite()`` method;
        every representable infinite collection is countable.
        """
        finite = collection.is_finite() if hasattr(collection, "is_finite") else True
        return finite or self is Universe.CNT


def in_universe(x: HFSet, u: Universe) -> bool:
    # every HFSet is hereditarily finite, hence in both universes
    return isinstance(x, HFSet)


def in_restricted_powerset(A, X, u: Universe) -> bool:
    """Whether A ⊆ X and A is bijective to a member of `u`."""
    if hasattr(A, "is_finite") and not A.is_finite():
        if not hasattr(A, "issubset"):
            raise TypeError("symbolic collections must provide issubset()")
        return A.issubset(X) and u.admits(A)
    return all(a in X for a in A) and u.admits(A)


def kuratowski(x: HFSet, y: HFSet) -> HFSet:
    """The ordered pair ``{{x,y},{x}}``."""
    return pair(pair(x, y), singleton(x))


def unkuratowski(p: HFSet) -> tuple[HFSet, HFSet]:
    members = p.children
    if len(members) == 1:
        (only,) = members
        if len(only) == 1:
            return only.children[0], only.children[0]
    elif len(members) == 2:
        small, big = sorted(members, key=len)
        if len(small) == 1 and len(big) == 2 and small.children[0] in big:
            x = small.children[0]
            (y,) = [z for z in big if z is not x]
            return x, y
    raise ValueError(f"{p} is not a Kuratowski pair")


def cartesian_product(X: HFSet, Y: HFSet) -> HFSet:
    """X × Y built only from pairing and indexed unions."""

    def row(x):
        return image_union(lambda y: singleton(kuratowski(x, y)), Y)

    return image_union(row, X)


def subset_by_union(A: HFSet, Y: HFSet) -> HFSet:
    """Rebuild A ⊆ Y as ∪fY with f(y) = {y} on A and {a0} elsewhere."""
    if not A:
        return EMPTY
    a0 = A.children[0]
    return image_union(lambda y: singleton(y) if y in A else singleton(a0), Y)


def random_hfset(rng: random.Random, max_rank: int = 4, max_width: int = 4) -> HFSet:
    if max_rank <= 0 or rng.random() < 0.15:
        return EMPTY
    width = rng.randint(0, max_width)
    return _from_members(random_hfset(rng, max_rank - 1, max_width) for _ in range(width))


def _random_subset(rng: random.Random, items) -> frozenset:
    return frozenset(x for x in items if rng.random() < 0.5)


def universe_lemma_suite(cases: int = 500, seed: int = 0,
                         universes: Iterable[Universe] = (Universe.FIN, Universe.CNT)) -> CheckReport:
    """Randomized checks of the restricted-power-set closure lemmas.

    Each lemma is exercised `cases` times per universe.  Alongside the
    admission predicates, the closure constructions (subsets, unions,
    products) are rebuilt from pairing and indexed unions and compared
    against the directly computed sets.
    """
    report = CheckReport("universe-lemmas")
    for u in universes:
        rng = random.Random(f"{seed}:{u.value}")
        witnesses: dict[str, Any] = {}

        def fail(name, w):
            witnesses.setdefault(name, w)

        for _ in range(cases):
            X = frozenset(random_hfset(rng, 4, 5).children) | {EMPTY}
            Y = frozenset(random_hfset(rng, 4, 5).children) | {singleton(EMPTY)}
            B = _random_subset(rng, X)
            A = _random_subset(rng, B)

            # finite subsets are admitted
            if not in_restricted_powerset(A, X, u):
                fail("finite-subsets", sorted(map(str, A)))

            # subsets of admitted sets are admitted
            if in_restricted_powerset(B, X, u) and not in_restricted_powerset(A, X, u):
                fail("subset-closure", [sorted(map(str, A)), sorted(map(str, B))])
            sub = _from_members(A)
            rebuilt = subset_by_union(sub, _from_members(B))
            if rebuilt is not sub:
                fail("subset-construction", [str(sub), str(rebuilt)])

            # binary and indexed unions
            C = _random_subset(rng, X)
            if not in_restricted_powerset(A | C, X, u):
                fail("binary-union", sorted(map(str, A | C)))
            index = _from_members(B)
            table = {i: _from_members(_random_subset(rng, X)) for i in index}
            big = image_union(table, index)
            direct = frozenset(z for v in table.values() for z in v)
            if big.members() != direct or not in_restricted_powerset(big, X, u):
                fail("indexed-union", str(big))

            # images under arbitrary functions
            targets = sorted(Y, key=_sort_key)
            f = {x: rng.choice(targets) for x in X}
            fA = frozenset(f[a] for a in A)
            if not in_restricted_powerset(fA, Y, u) or image(f, _from_members(A)).members() != fA:
                fail("image", sorted(map(str, fA)))

            # products via Kuratowski pairs
            D = _random_subset(rng, Y)
            AxD = frozenset(kuratowski(a, d) for a in A for d in D)
            XxY = frozenset(kuratowski(x, y) for x in X for y in Y)
            built = cartesian_product(_from_members(A), _from_members(D))
            if built.members() != AxD or not in_restricted_powerset(AxD, XxY, u):
                fail("product", [sorted(map(str, A)), sorted(map(str, D))])
            for p in AxD:
                a, d = unkuratowski(p)
                if kuratowski(a, d) is not p:
                    fail("product", str(p))

            # admitted subsets of the universe are members of it
            g = {b: singleton(b) for b in B}
            as_set = image_union(g, _from_members(B))
            if as_set.members() != B or not in_universe(as_set, u):
                fail("universe-subsets", sorted(map(str, B)))

        for name in ("finite-subsets", "subset-closure", "subset-construction",
                     "binary-union", "indexed-union", "image", "product",
                     "universe-subsets"):
            report.verdict(f"{u.value}/{name}", witnesses.get(name))
    report.notes.append(f"{cases} random cases per lemma and universe, seed={seed}")
    return report
