"""Limit-successor systems: closures, the specialization preorder and the
counting-system axioms C1-C5.

Finite systems keep subsets as bitmasks.  ``s[x] = None`` marks a
successor that escapes the carrier; such systems are finite windows of a
larger system and their checks report a bounded pass with boundary
witnesses instead of failing outright.

The symbolic system lives on CNF ordinals below a bound of at most ω²,
where every nonzero limit is the L-value of a finitely generated set.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import jsonschema
import numpy as np

from . import _kernels as K
from .cnf import (
    OMEGA, ZERO, CnfOrdinal, CnfSet, GenSuccSet, cnf, cnf_cmp, cnf_is_limit, cnf_succ,
    down_set, finite_part, gen_sup, limit_part, omega_power, plus_omega, predecessor,
)
from .cnf import _offset as _cnf_offset
from .errors import ContractError, ParseError, PreconditionError
from .order import Poset, _bits
from .report import CheckReport, Status

__all__ = [
    "FiniteLSS", "SymbolicLSS", "ClosureResult", "FINITE_LSS_SCHEMA",
    "closure_iterated", "closure_two_term", "leq_s", "leq_L", "specialization_leq",
    "check_C1_C2", "check_C3_C4_C5", "spo_order", "from_ordinal_system",
    "peano_degeneration_check", "to_dot", "is_counting_system",
]

FINITE_LSS_SCHEMA = {
    "type": "object",
    "required": ["size", "s", "L"],
    "properties": {
        "size": {"type": "integer", "minimum": 0, "maximum": 62},
        "s": {"type": "array", "items": {"type": ["integer", "null"], "minimum": 0}},
        "L": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["set", "value"],
                "properties": {
                    "set": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "value": {"type": "integer", "minimum": 0},
                },
                "additionalProperties": False,
            },
        },
        "name": {"type": "string"},
    },
    "additionalProperties": False,
}


def _mask(A) -> int:
    if isinstance(A, int) and not isinstance(A, bool):
        return A
    m = 0
    for a in A:
        m |= 1 << a
    return m


def _members(m: int) -> list[int]:
    return list(_bits(m))


@dataclass(frozen=True)
class ClosureResult:
    """A closed set together with the number of formula terms used.

    Finite systems fill ``mask``; symbolic ones fill ``symbolic`` and, when
    the closure is an initial segment, its bound."""
    members: frozenset | None
    iterations: int
    mask: int | None = None
    symbolic: CnfSet | None = None
    bound: CnfOrdinal | None = None
    truncated: bool = False

    def __contains__(self, x) -> bool:
        if self.symbolic is not None:
            return x in self.symbolic
        return x in self.members

    def to_json(self):
        if self.symbolic is not None:
            return {"below": str(self.bound)} if self.bound is not None else repr(self.symbolic)
        return sorted(self.members)


class FiniteLSS:
    """(X, L, s) on X = {0..n-1} with an explicit L-table."""

    def __init__(self, s: Sequence[int | None], L: Mapping | Iterable = (), name: str = ""):
        self.n = n = len(s)
        self.s = tuple(None if t is None else int(t) for t in s)
        if any(t is not None and not 0 <= t < n for t in self.s):
            raise ValueError("successor targets must lie in the carrier")
        items = L.items() if isinstance(L, Mapping) else L
        table: dict[int, int] = {}
        for A, v in items:
            m = _mask(A)
            if m >> n:
                raise ValueError(f"set {_members(m)} leaves the carrier")
            if not 0 <= v < n:
                raise ValueError(f"L-value {v} outside the carrier")
            if m in table:
                raise ValueError(f"duplicate L-entry for {_members(m)}")
            table[m] = int(v)
        self.L = dict(sorted(table.items()))
        self.name = name or f"lss[{n}]"
        self._s = np.array([-1 if t is None else t for t in self.s], np.int64)
        self._dom = np.array(list(self.L), np.int64)
        self._val = np.array(list(self.L.values()), np.int64)
        self._cache: dict = {}

    # construction and serialization

    @classmethod
    def clock(cls, n: int = 12, zero: int = 0) -> FiniteLSS:
        """Z_n with s(i) = i+1 mod n and L = zero on both successor-closed sets."""
        full = (1 << n) - 1
        return cls([(i + 1) % n for i in range(n)], {0: zero, full: zero}, name=f"clock{n}")

    @classmethod
    def peano_window(cls, n: int) -> FiniteLSS:
        """{0..n-1} with s(i) = i+1, the top escaping, and L(∅) = 0."""
        s = [i + 1 for i in range(n - 1)] + [None] if n else []
        return cls(s, {0: 0} if n else {}, name=f"peano{n}")

    @classmethod
    def from_json(cls, data) -> FiniteLSS:
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e}") from None
        try:
            jsonschema.validate(data, FINITE_LSS_SCHEMA)
        except jsonschema.ValidationError as e:
            raise ParseError(f"not a FiniteLSS document: {e.message}") from None
        if len(data["s"]) != data["size"]:
            raise ParseError("length of s differs from size")
        try:
            return cls(data["s"], [(e["set"], e["value"]) for e in data["L"]], data.get("name", ""))
        except ValueError as e:
            raise ParseError(str(e)) from None

    def to_json(self) -> dict:
        out = {"size": self.n, "s": list(self.s),
               "L": [{"set": _members(m), "value": v} for m, v in self.L.items()]}
        if self.name:
            out["name"] = self.name
        return out

    def __eq__(self, other):
        return isinstance(other, FiniteLSS) and (self.s, self.L) == (other.s, other.L)

    def __hash__(self):
        return hash((self.s, tuple(self.L.items())))

    def __repr__(self):
        return f"FiniteLSS({self.name}: s={list(self.s)}, L={{{', '.join(f'{_members(m)}: {v}' for m, v in self.L.items())}}})"

    # basic structure

    @property
    def is_window(self) -> bool:
        return None in self.s

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def L_of(self, A) -> int | None:
        return self.L.get(_mask(A))

    def successor_closed(self) -> list[int]:
        """Every successor-closed subset, as masks in increasing order."""
        if "sc" not in self._cache:
            self._cache["sc"] = sorted(_sc_subsets(self.s))
        return self._cache["sc"]

    def is_successor_closed(self, m: int) -> bool:
        return all(self.s[i] is not None and m >> self.s[i] & 1 for i in _bits(m))

    def preimage(self, m: int) -> int:
        return int(K.preimage(self._s, self.n, m))

    def preimage_inf(self, m: int) -> int:
        return int(K.preimage_inf(self._s, self.n, m))

    def l_union(self, m: int) -> int:
        return int(K.l_union(self._dom, self._val, len(self.L), m))

    def is_closed(self, I) -> bool:
        return bool(K.is_closed(self._s, self.n, self._dom, self._val, len(self.L), _mask(I)))

    def orbit(self, x: int) -> list[int]:
        """x, s(x), s²(x), ... up to the first repeat or escape."""
        seen, out = set(), []
        while x is not None and x not in seen:
            seen.add(x)
            out.append(x)
            x = self.s[x]
        return out

    # closures

    def closure_iterated(self, I) -> ClosureResult:
        m, steps = K.closure_iterated(self._s, self.n, self._dom, self._val, len(self.L), _mask(I))
        return ClosureResult(frozenset(_members(int(m))), int(steps), int(m))

    def closure_two_term(self, I, *, check: bool = True) -> ClosureResult:
        if check and not is_counting_system(self):
            raise ContractError("the two-term closure formula needs C1 and C2", witness=self.name)
        m = int(K.closure_two_term(self._s, self.n, self._dom, self._val, len(self.L), _mask(I)))
        return ClosureResult(frozenset(_members(m)), 2, m)

    def closure_mask(self, m: int) -> int:
        key = ("cl", m)
        if key not in self._cache:
            self._cache[key] = int(K.closure_iterated(
                self._s, self.n, self._dom, self._val, len(self.L), m)[0])
        return self._cache[key]

    def down_masks(self) -> list[int]:
        """closure({y}) for each y: the specialization down-sets."""
        if "down" not in self._cache:
            self._cache["down"] = [self.closure_mask(1 << y) for y in range(self.n)]
        return self._cache["down"]

    # relations

    def leq_s(self, x: int, y: int) -> bool:
        return y in self.orbit(x)

    def leq_L(self, x: int, y: int) -> bool:
        return any(v == y and m >> x & 1 for m, v in self.L.items())

    def specialization_leq(self, x: int, y: int) -> bool:
        return bool(self.down_masks()[y] >> x & 1)


def _sc_subsets(s: Sequence[int | None]) -> Iterator[int]:
    """Successor-closed subsets: including x forces its whole orbit, and
    elements whose orbit escapes can never be included.  The empty carrier
    is read relative to the empty universe and admits no subsets."""
    n = len(s)
    if n == 0:
        return
    forced = []
    for x in range(n):
        m, y, ok = 0, x, True
        while y is not None and not m >> y & 1:
            m |= 1 << y
            y = s[y]
        if y is None:
            ok = False
        forced.append(m if ok else None)

    def rec(i: int, m: int, banned: int):
        if i == n:
            yield m
            return
        if m >> i & 1 or banned >> i & 1 or forced[i] is None:
            yield from rec(i + 1, m, banned if m >> i & 1 else banned | 1 << i)
            return
        # exclude i: everything whose orbit reaches i is excluded too
        yield from rec(i + 1, m, banned | 1 << i)
        if forced[i] & banned == 0:
            yield from rec(i + 1, m | forced[i], banned)

    yield from rec(0, 0, 0)


def closure_iterated(S, I) -> ClosureResult:
    return S.closure_iterated(I)


def closure_two_term(S, I, check: bool = True) -> ClosureResult:
    return S.closure_two_term(I, check=check)


def leq_s(S, x, y) -> bool:
    return S.leq_s(x, y)


def leq_L(S, x, y) -> bool:
    return S.leq_L(x, y)


def specialization_leq(S, x, y, cross_check: bool = True) -> bool:
    """x ∈ closure({y}); on counting systems also the two-case form
    x ≤_s y or x ≤_L z ≤_s y for some z, which must agree."""
    got = S.specialization_leq(x, y)
    if cross_check and isinstance(S, FiniteLSS) and is_counting_system(S):
        alt = S.leq_s(x, y) or any(S.leq_L(x, z) and S.leq_s(z, y) for z in range(S.n))
        if alt != got:
            raise ContractError(f"two forms of the specialization order disagree at ({x}, {y})",
                                witness=(x, y))
    return got


# counting systems

def _c1_c2(S: FiniteLSS) -> tuple[object, object]:
    sc = set(S.successor_closed())
    dom = set(S.L)
    w1 = None
    if dom != sc:
        missing = sorted(sc - dom)
        extra = sorted(dom - sc)
        w1 = {"missing": [_members(m) for m in missing[:3]],
              "not successor-closed": [_members(m) for m in extra[:3]]}
    w2 = None
    seen: dict[int, int] = {}
    for m, v in S.L.items():
        c = S.closure_mask(m)
        if c in seen and S.L[seen[c]] != v:
            w2 = {"I": _members(seen[c]), "J": _members(m), "L(I)": S.L[seen[c]], "L(J)": v,
                  "closure": _members(c)}
            break
        seen.setdefault(c, m)
    return w1, w2


def is_counting_system(S) -> bool:
    if isinstance(S, SymbolicLSS):
        return check_C1_C2(S).ok
    key = "counting"
    if key not in S._cache:
        w1, w2 = _c1_c2(S)
        S._cache[key] = w1 is None and w2 is None
    return S._cache[key]


def check_C1_C2(S) -> CheckReport:
    if isinstance(S, SymbolicLSS):
        return S.check_C1_C2()
    report = CheckReport(f"C1-C2 {S.name}")
    w1, w2 = _c1_c2(S)
    bound = f"window of {S.n}" if S.is_window else None
    report.verdict("C1", w1, bound=bound)
    report.verdict("C2", w2, bound=bound)
    return report


def _axioms_finite(S: FiniteLSS) -> dict[str, object]:
    """Witness (or None) for each of C3, C4, C5, plus C5 boundary info."""
    w3 = None
    for m, v in S.L.items():
        pre = [x for x in range(S.n) if S.s[x] == v]
        if pre:
            w3 = {"I": _members(m), "L(I)": v, "s⁻¹{L(I)}": pre}
            break
        if S.s[v] is not None and m >> S.s[v] & 1:
            w3 = {"I": _members(m), "L(I)": v, "s(L(I)) ∈ I": S.s[v]}
            break
    w4 = None
    targets: dict[int, int] = {}
    for x, t in enumerate(S.s):
        if t is None:
            continue
        if t in targets:
            w4 = {"s not injective": [targets[t], x], "value": t}
            break
        targets[t] = x
    if w4 is None:
        by_value: dict[int, int] = {}
        for m, v in S.L.items():
            if v in by_value and S.closure_mask(by_value[v]) != S.closure_mask(m):
                w4 = {"I": _members(by_value[v]), "J": _members(m), "L": v,
                      "closures": [_members(S.closure_mask(by_value[v])), _members(S.closure_mask(m))]}
                break
            by_value.setdefault(v, m)
    lfp = int(K.c5_lfp(S._s, S.n, S._dom, S._val, len(S.L)))
    w5 = None if lfp == S.full else {"least closed set": _members(lfp),
                                     "missing": _members(S.full & ~lfp)}
    escaping = [x for x in range(S.n) if S.s[x] is None]
    return {"C3": w3, "C4": w4, "C5": w5, "escaping": escaping}


def check_C3_C4_C5(S, properties: bool = True) -> CheckReport:
    """C3-C5, and Properties 0-3 of the induced order when C1-C5 hold."""
    if isinstance(S, SymbolicLSS):
        return S.check_C3_C4_C5(properties)
    report = CheckReport(f"C3-C5 {S.name}")
    if not is_counting_system(S):
        report.notes.append("not a counting system (C1 or C2 fails); axioms evaluated anyway")
    ax = _axioms_finite(S)
    bound = f"window of {S.n}" if S.is_window else None
    report.verdict("C3", ax["C3"], bound=bound)
    report.verdict("C4", ax["C4"], bound=bound)
    if ax["C5"] is None and ax["escaping"]:
        report.add("C5", Status.BOUNDED_PASS, witness={"boundary": ax["escaping"]}, bound=bound,
                   note="pass below bound; successors of the boundary leave the window")
    else:
        report.verdict("C5", ax["C5"], bound=bound)
    if properties:
        _properties_finite(S, report, all(ax[a] is None for a in ("C3", "C4", "C5"))
                           and is_counting_system(S))
    return report


def _properties_finite(S: FiniteLSS, report: CheckReport, applicable: bool) -> None:
    le = S.specialization_leq
    n = S.n

    def lt(x, y):
        return x != y and le(x, y)

    w0 = next(({"x": x, "cycle": S.orbit(x)} for x in range(n)
               if S.s[S.orbit(x)[-1]] == x), None)
    w1 = next(((x, y) for x in range(n) for y in range(n)
               if lt(x, y) and S.s[x] is not None and not le(S.s[x], y)), None)
    w2 = next(((x, y) for x in range(n) for y in range(n)
               if S.s[x] is not None and lt(y, S.s[x]) and not le(y, x)), None)
    w3 = None
    for m, v in S.L.items():
        for y in range(n):
            if all(lt(x, y) for x in _bits(m)) and not le(v, y):
                w3 = {"I": _members(m), "y": y, "L(I)": v}
                break
        if w3:
            break
    bound = f"window of {S.n}" if S.is_window else None
    for name, w in (("Property 0", w0), ("Property 1", w1), ("Property 2", w2), ("Property 3", w3)):
        if applicable:
            report.verdict(name, w, bound=bound)
        else:
            report.add(name, Status.NOT_APPLICABLE,
                       note=f"needs C1-C5; {'holds' if w is None else f'fails at {w}'} here")


def axiom_vector(S: FiniteLSS) -> dict[str, bool]:
    w1, w2 = _c1_c2(S)
    ax = _axioms_finite(S)
    return {"C1": w1 is None, "C2": w2 is None, "C3": ax["C3"] is None,
            "C4": ax["C4"] is None, "C5": ax["C5"] is None}


# the specialization order

def spo_order(S) -> tuple[Poset, CheckReport]:
    """The specialization order of a system satisfying C1-C5, with the
    ordinal-system facts it is supposed to enjoy."""
    if isinstance(S, SymbolicLSS):
        return S.spo_order()
    pre = check_C1_C2(S)
    pre.extend(check_C3_C4_C5(S, properties=False))
    if not pre.ok:
        bad = pre.failures()[0]
        raise ContractError(f"{S.name}: {bad.name} fails, no ordinal structure", witness=bad.witness)
    report = CheckReport(f"spo {S.name}")
    n = S.n
    down = S.down_masks()
    up = [0] * n
    for y in range(n):
        for x in _bits(down[y]):
            if x != y:
                up[x] |= 1 << y
    anti = next(((x, y) for y in range(n) for x in _bits(down[y])
                 if x != y and down[x] >> y & 1), None)
    report.verdict("antisymmetric", anti)
    if anti is not None:
        raise ContractError("specialization preorder is not antisymmetric", witness=anti)
    P = Poset.from_masks(range(n), up)
    bound = f"window of {n}" if S.is_window else None
    report.verdict("total", None if P.is_total() else _first_incomparable(P), bound=bound)
    wo = next((_members(m) for m in range(1, 1 << n) if P.min_index(m) is None), None) \
        if n <= 16 else None
    report.verdict("well-ordered", wo, bound=bound,
                   note=None if n <= 16 else "finite total order, hence well-ordered")
    ws = next((x for x in range(n) if S.s[x] != P.successor_index(x)), None)
    report.verdict("s = successor", ws, bound=bound)
    wl = None
    for m, v in S.L.items():
        if not (P.join_index(m) == v == P.incremented_join_index(m)):
            wl = {"I": _members(m), "L(I)": v, "⋁I": P.join_index(m), "⋁⁺I": P.incremented_join_index(m)}
            break
    report.verdict("L = ⋁ = ⋁⁺", wl, bound=bound)
    limits = {x for x in range(n) if not any(S.s[y] == x for y in range(n))}
    image = set(S.L.values())
    report.verdict("limits = im L", None if limits == image else
                   {"limits": sorted(limits), "im L": sorted(image)}, bound=bound)
    _closure_identity(S, P, report, bound)
    return P, report


def _first_incomparable(P: Poset):
    for i in range(P.n):
        rest = P.full & ~(P.up[i] | P.down[i] | 1 << i)
        if rest:
            return (i, next(_bits(rest)))
    return None


def _closure_identity(S: FiniteLSS, P: Poset, report: CheckReport, bound) -> None:
    """closure(I) = {⋁⁺I}↓.  Every subset when n ≤ 16; beyond that all
    subsets of size ≤ 3 and all intervals."""
    n = S.n
    if n <= 16:
        family: Iterable[int] = range(1 << n) if n else ()
        note = f"all {1 << n if n else 0} subsets"
    else:
        fam = {0}
        for r in (1, 2, 3):
            for c in itertools.combinations(range(n), r):
                fam.add(_mask(c))
        for a in range(n):
            for b in range(a, n):
                fam.add(((1 << (b + 1)) - 1) & ~((1 << a) - 1))
        family = sorted(fam)
        note = f"{len(fam)} subsets (sizes ≤ 3 and intervals)"
    wit, boundary = None, []
    for m in family:
        top = P.incremented_join_index(m)
        if top is None:
            if S.is_window and len(boundary) < 3:
                boundary.append(_members(m))
            elif not S.is_window:
                wit = {"I": _members(m), "⋁⁺I": None}
                break
            continue
        if S.closure_mask(m) != P.down[top]:
            wit = {"I": _members(m), "closure": _members(S.closure_mask(m)), "⋁⁺I": top}
            break
    if wit is None and boundary:
        report.add("closure = {⋁⁺I}↓", Status.BOUNDED_PASS, witness={"boundary": boundary},
                   bound=bound, note=note + "; sets reaching the top are boundary cases")
    else:
        report.verdict("closure = {⋁⁺I}↓", wit, bound=bound, note=note)


def from_ordinal_system(c):
    """The counting system (O, ⋁, ⁺) of an ordinal carrier."""
    from .ordinal_system import CnfCarrier, FiniteCarrier
    if isinstance(c, CnfCarrier):
        # the least block end above every visible sample
        if not c.bound < _OMEGA2:
            raise PreconditionError("the symbolic system covers carriers below ω²")
        return SymbolicLSS(plus_omega(limit_part(c.bound)))
    if not isinstance(c, FiniteCarrier):
        raise TypeError(f"unsupported carrier {c!r}")
    P = c.poset
    if not P.is_total():
        raise PreconditionError("ordinal carriers are chains")
    n = P.n
    s = [P.successor_index(i) for i in range(n)]
    S0 = FiniteLSS(s, {}, name=f"from {c.name}")
    L = {m: P.join_index(m) for m in S0.successor_closed()}
    return FiniteLSS(s, L, name=f"from {c.name}")


def peano_degeneration_check(S: FiniteLSS) -> CheckReport:
    """Under FIN a C1-C5 system has dom(L) = {∅}; read it as (X, 0, s) and
    check Dedekind's axioms."""
    report = CheckReport(f"peano {S.name}")
    if S.n == 0:
        report.passed("dom(L) = {∅}", note="empty system: read relative to the empty universe, no L(∅)")
        for name in ("0 ∉ im s", "s injective", "induction"):
            report.passed(name, note="vacuous")
        return report
    pre = check_C1_C2(S)
    pre.extend(check_C3_C4_C5(S, properties=False))
    if not pre.ok:
        failed = [c.name for c in pre.failures()]
        report.failed("precondition C1-C5", {"failing": failed})
        for name in ("dom(L) = {∅}", "0 ∉ im s", "s injective", "induction"):
            report.add(name, Status.NOT_APPLICABLE, note="precondition fails")
        return report
    bound = f"window of {S.n}" if S.is_window else None
    report.passed("precondition C1-C5", bound=bound)
    report.verdict("dom(L) = {∅}", None if list(S.L) == [0] else [_members(m) for m in S.L])
    zero = S.L.get(0)
    report.notes.append(f"0 = L(∅) = {zero}")
    report.verdict("0 ∉ im s", next((x for x in range(S.n) if S.s[x] == zero), None), bound=bound)
    seen: dict[int, int] = {}
    w = None
    for x, t in enumerate(S.s):
        if t is not None:
            if t in seen:
                w = (seen[t], x)
                break
            seen[t] = x
    report.verdict("s injective", w, bound=bound)
    reach = set(S.orbit(zero)) if zero is not None else set()
    missing = sorted(set(range(S.n)) - reach)
    report.verdict("induction", missing or None, bound=bound)
    return report


def to_dot(S, P: Poset | None = None) -> str:
    """Hasse diagram of the specialization preorder (classes of mutually
    below elements are merged)."""
    if isinstance(S, SymbolicLSS):
        raise TypeError("DOT output is for finite systems")
    down = S.down_masks()
    classes: dict[int, list[int]] = {}
    for x in range(S.n):
        key = next(y for y in range(S.n) if down[x] >> y & 1 and down[y] >> x & 1)
        classes.setdefault(key, []).append(x)
    reps = list(classes)
    label = {r: ",".join(map(str, classes[r])) for r in reps}

    def below(a, b):
        return a != b and down[b] >> a & 1

    lines = ["digraph spo {", "  rankdir=BT;"]
    for r in reps:
        lines.append(f'  n{r} [label="{label[r]}"];')
    for a in reps:
        for b in reps:
            if below(a, b) and not any(below(a, c) and below(c, b) for c in reps):
                lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# symbolic system on CNF ordinals

_OMEGA2 = cnf("w^2")


def _points_between(lam: CnfOrdinal, x: CnfOrdinal) -> list[CnfOrdinal]:
    out, y = [], lam
    for _ in range(finite_part(x) + 1):
        out.append(y)
        y = cnf_succ(y)
    return out


def _union(a: CnfSet, b: CnfSet) -> CnfSet:
    return CnfSet(a.points | b.points, a.tails.union(b.tails))


class SymbolicLSS:
    """(O, ⋁, ⁺) on the CNF ordinals below `bound` (at most ω²).

    L(∅) = 0 and L(I) = gen_sup(I) for nonempty generated sets whose sup
    stays below the bound; sets reaching the bound are boundary cases.
    """

    def __init__(self, bound: CnfOrdinal | int | str = _OMEGA2, max_generators: int = 4):
        self.bound = cnf(bound)
        if self.bound > _OMEGA2:
            raise ValueError("the symbolic system supports bounds up to ω²")
        self.max_generators = max_generators
        self.name = f"cnf<{self.bound}"

    def __repr__(self):
        return f"SymbolicLSS({self.bound})"

    def in_carrier(self, x) -> bool:
        return cnf(x) < self.bound

    def s(self, x: CnfOrdinal) -> CnfOrdinal:
        return cnf_succ(x)

    def L(self, I) -> CnfOrdinal | None:
        """None outside the domain (not successor-closed, or sup at the bound)."""
        if isinstance(I, CnfSet):
            if I.points:
                return None
            I = I.tails
        if not I:
            return ZERO
        v = gen_sup(I)
        return v if v < self.bound else None

    # samples

    def block_starts(self) -> list[CnfOrdinal]:
        if self.bound.is_finite():
            return [ZERO] if self.bound else []
        blocks = self.bound.terms[0][1] if self.bound < _OMEGA2 else 6
        if self.bound < _OMEGA2 and finite_part(self.bound):
            blocks += 1
        return [omega_power(1, j) if j else ZERO for j in range(blocks)]

    def samples(self, per_block: int = 4) -> list[CnfOrdinal]:
        out = []
        for lam in self.block_starts():
            x = lam
            for _ in range(per_block):
                if x < self.bound:
                    out.append(x)
                x = cnf_succ(x)
        return out

    def gen_samples(self, offsets: int = 2) -> list[GenSuccSet]:
        """Generated sets with at most `max_generators` generators, drawn
        from the first offsets of each block (all below the bound)."""
        starts = [g for lam in self.block_starts() for g in _points_between(lam, _offset(lam, offsets - 1))
                  if g < self.bound and self._block_inside(g)]
        out = {GenSuccSet()}
        for r in range(1, self.max_generators + 1):
            for combo in itertools.combinations(starts, r):
                out.add(GenSuccSet(combo))
        return sorted(out, key=lambda I: (len(I.generators), I.generators))

    def random_sets(self, rng, count: int, max_points: int = 3) -> list[CnfSet]:
        """Seeded random CnfSets inside the carrier: a few points plus tails
        whose blocks lie below the bound."""
        starts = [g for lam in self.block_starts() if self._block_inside(lam)
                  for g in _points_between(lam, _offset(lam, 3))]
        pts = self.samples(6)
        out = []
        for _ in range(count):
            p = rng.sample(pts, rng.randint(0, min(max_points, len(pts))))
            t = rng.sample(starts, rng.randint(0, min(self.max_generators, len(starts)))) if starts else []
            out.append(CnfSet(p, t))
        return out

    def _block_inside(self, g: CnfOrdinal) -> bool:
        # the whole block of g lies below the bound
        return _add_omega(limit_part(g)) <= self.bound

    # closures

    def pre_inf(self, X: CnfSet) -> CnfSet:
        """s⁻∞X: each point pulls in its block up to itself; a tail pulls
        in its whole block."""
        pts = set()
        for x in X.points:
            pts.update(_points_between(limit_part(x), x))
        tails = [limit_part(g) for g in X.tails.generators]
        return CnfSet(pts, tails)

    def l_union(self, X: CnfSet) -> CnfSet:
        """∪L⁻¹X: a nonzero limit μ in X pulls in [0, μ)."""
        limits = [p for p in X.points if cnf_is_limit(p) and p]
        limits += [g for g in X.tails.generators if cnf_is_limit(g) and g]
        top = max(limits, default=None)
        return down_set(top) if top is not None else CnfSet()

    def closure_iterated(self, I, max_steps: int = 64) -> ClosureResult:
        I = _as_cnfset(I)
        term = self.pre_inf(I)
        acc, steps = term, 1
        while steps < max_steps:
            term = self.pre_inf(self.l_union(term))
            steps += 1
            if term.issubset(acc):
                return self._result(acc, steps)
            acc = _union(acc, term)
        return self._result(acc, steps, truncated=True)

    def closure_two_term(self, I, check: bool = False) -> ClosureResult:
        I = _as_cnfset(I)
        a = self.pre_inf(I)
        return self._result(_union(a, self.l_union(a)), 2)

    def _result(self, X: CnfSet, steps: int, truncated: bool = False) -> ClosureResult:
        # a down-set [0, β) is recognized by comparing with down_set(β)
        beta = X.incremented_join()
        exact = down_set(beta)
        return ClosureResult(None, steps, symbolic=X,
                             bound=beta if exact is not None and exact == X else None,
                             truncated=truncated)

    # relations

    def leq_s(self, x, y) -> bool:
        x, y = cnf(x), cnf(y)
        return limit_part(x) == limit_part(y) and x <= y

    def leq_L(self, x, y) -> bool:
        # x ∈ I with L(I) = y: y must be a nonzero limit above x, and {y}↓ is such an I
        x, y = cnf(x), cnf(y)
        return bool(y) and cnf_is_limit(y) and x < y and y < self.bound

    def specialization_leq(self, x, y) -> bool:
        return cnf(x) in self.closure_iterated(CnfSet([y]))

    # axioms

    def check_C1_C2(self) -> CheckReport:
        report = CheckReport(f"C1-C2 {self.name}")
        gens = self.gen_samples()
        boundary = [repr(I) for I in gens if self.L(I) is None][:3]
        bad_dom = next((repr(I) for I in gens if I and self.L(I) is not None
                        and not all(cnf_succ(x) in I for x in I.members_sample(3))), None)
        non_sc = [CnfSet([x]) for x in self.samples(2)]
        bad_extra = next((repr(X) for X in non_sc if self.L(X) is not None), None)
        w1 = bad_dom or bad_extra
        note = f"quantified over {len(gens)} generated sets with ≤ {self.max_generators} generators"
        if w1 is None and boundary:
            report.add("C1", Status.BOUNDED_PASS, witness={"boundary": boundary}, bound=str(self.bound),
                       note=note + "; sets whose sup reaches the bound are boundary cases")
        else:
            report.verdict("C1", w1, bound=str(self.bound), note=note)
        w2, truncated = None, False
        seen: dict = {}
        for I in gens:
            v = self.L(I)
            if v is None:
                continue
            cl = self.closure_iterated(CnfSet([], I))
            truncated |= cl.truncated
            key = cl.symbolic
            if key in seen and seen[key][1] != v:
                w2 = {"I": repr(seen[key][0]), "J": repr(I)}
                break
            seen.setdefault(key, (I, v))
        report.verdict("C2", w2, bound=str(self.bound),
                       note="verdict used a truncated closure" if truncated else note)
        return report

    def check_C3_C4_C5(self, properties: bool = True) -> CheckReport:
        report = CheckReport(f"C3-C5 {self.name}")
        b = str(self.bound)
        gens = [I for I in self.gen_samples() if self.L(I) is not None]
        w3 = None
        for I in gens:
            v = self.L(I)
            if predecessor(v) is not None or cnf_succ(v) in I:
                w3 = {"I": repr(I), "L(I)": str(v)}
                break
        report.verdict("C3", w3, bound=b)
        xs = self.samples()
        w4 = next(((str(x), str(y)) for x, y in itertools.combinations(xs, 2)
                   if cnf_succ(x) == cnf_succ(y)), None)
        if w4 is None:
            by_v: dict = {}
            for I in gens:
                v = self.L(I)
                cl = self.closure_iterated(CnfSet([], I)).symbolic
                if v in by_v and by_v[v][1] != cl:
                    w4 = {"I": repr(by_v[v][0]), "J": repr(I), "L": str(v)}
                    break
                by_v.setdefault(v, (I, cl))
        report.verdict("C4", w4, bound=b, note="sampled generated sets")
        w5, note5 = self._c5()
        report.verdict("C5", w5, bound=b, note=note5)
        if properties:
            self._properties(report)
        return report

    def _c5(self):
        """Least successor-closed set containing L(I) for each I inside it.

        Stage j is the initial segment [0, ω·j): L(∅) = 0 starts block 0,
        and L of the last block's tail opens the next one.  Below a bound
        ω·k the stages reach the bound; at ω² they run through every block
        and their union [0, ω²) is closed, because any generated set inside
        it has finitely many blocks and so a sup below ω²."""
        j = 0
        cap = 8
        while j < cap:
            mu = ZERO if j == 0 else self.L(GenSuccSet([omega_power(1, j - 1) if j > 1 else ZERO]))
            if mu is None:
                break
            j += 1
            top = omega_power(1, j) if j > 1 else OMEGA
            if not top < self.bound:
                return None, f"stages reach the bound after {j}"
        if self.bound == _OMEGA2:
            return None, f"stages grow one block at a time ({j} checked); their union [0, ω²) is closed"
        return {"least closed set": f"below ω·{j}"}, None

    def _properties(self, report: CheckReport) -> None:
        b = str(self.bound)
        xs = self.samples()
        le = self.specialization_leq

        def lt(x, y):
            return x != y and le(x, y)

        w0 = next((str(x) for x in xs if any(_offset(x, k) == x for k in range(1, 6))), None)
        w1 = next(((str(x), str(y)) for x in xs for y in xs
                   if lt(x, y) and not le(cnf_succ(x), y)), None)
        w2 = next(((str(x), str(y)) for x in xs for y in xs
                   if lt(y, cnf_succ(x)) and not le(y, x)), None)
        w3 = None
        for I in self.gen_samples():
            v = self.L(I)
            if v is None:
                continue
            cl = self.closure_iterated(CnfSet([], I))
            for y in xs:
                # x < y for all x ∈ I  ⟺  I ⊆ closure{y} and y ∉ I
                if cl.symbolic.issubset(self.closure_iterated(CnfSet([y])).symbolic) and y not in I:
                    if not le(v, y):
                        w3 = {"I": repr(I), "y": str(y)}
                        break
            if w3:
                break
        for name, w in (("Property 0", w0), ("Property 1", w1), ("Property 2", w2), ("Property 3", w3)):
            report.verdict(name, w, bound=b, note="samples")

    def spo_order(self, samples: Sequence[CnfOrdinal] | None = None,
                  families: Sequence | None = None) -> tuple[Poset, CheckReport]:
        """The specialization order on samples, checked against the
        ordinal-system facts; the order must agree with cnf_cmp."""
        report = CheckReport(f"spo {self.name}")
        b = str(self.bound)
        xs = sorted(set(samples) if samples is not None else set(self.samples()))
        xs = [x for x in xs if x < self.bound]
        ext = sorted(set(xs) | {cnf_succ(x) for x in xs if cnf_succ(x) < self.bound})
        down = {y: self.closure_iterated(CnfSet([y])).symbolic for y in ext}
        le_m = {(x, y): x in down[y] for x in ext for y in ext}
        bad = next(((str(x), str(y)) for (x, y), v in le_m.items() if v != (cnf_cmp(x, y) <= 0)), None)
        report.verdict("order agrees with cnf_cmp", bad, bound=b)
        P = Poset(ext, lambda a, c: le_m[(a, c)], check=False)
        anti = next(((str(x), str(y)) for (x, y), v in le_m.items() if v and x != y and le_m[(y, x)]), None)
        report.verdict("antisymmetric", anti, bound=b)
        report.verdict("total", None if P.is_total() else "incomparable samples", bound=b)
        ws = None
        for x in xs:
            sx = cnf_succ(x)
            if sx not in P.index:
                continue
            between = [z for z in ext if le_m[(x, z)] and le_m[(z, sx)] and z not in (x, sx)]
            if not le_m[(x, sx)] or between or x == sx:
                ws = str(x)
                break
        report.verdict("s = successor", ws, bound=b)
        fams = list(families) if families is not None else [CnfSet([], I) for I in self.gen_samples()]
        wl, wc = None, None
        for X in fams:
            X = _as_cnfset(X)
            top = X.incremented_join()
            if not top < self.bound:
                continue
            v = self.L(X)
            if v is not None and not (v == X.join() == top):
                wl = {"I": repr(X), "L(I)": str(v), "⋁I": str(X.join()), "⋁⁺I": str(top)}
            cl = self.closure_iterated(X)
            if cl.bound != top:
                wc = {"I": repr(X), "closure": repr(cl.symbolic), "⋁⁺I": str(top)}
            if wl or wc:
                break
        report.verdict("L = ⋁ = ⋁⁺", wl, bound=b)
        wlim = None
        images = {self.L(I) for I in self.gen_samples()} - {None}
        for x in xs:
            is_lim = predecessor(x) is None
            hit = x in images or (is_lim and self.L(_down_gen(x)) == x)
            if is_lim != hit:
                wlim = str(x)
                break
        report.verdict("limits = im L", wlim, bound=b)
        report.verdict("closure = {⋁⁺I}↓", wc, bound=b, note=f"{len(fams)} sets")
        return P, report


def _offset(lam, j):
    return _cnf_offset(lam, j)


def _add_omega(beta: CnfOrdinal) -> CnfOrdinal:
    return plus_omega(beta)


def _down_gen(x: CnfOrdinal) -> GenSuccSet:
    d = down_set(x)
    return d.tails if d is not None and not d.points else GenSuccSet()


def _as_cnfset(I) -> CnfSet:
    if isinstance(I, CnfSet):
        return I
    if isinstance(I, GenSuccSet):
        return CnfSet([], I)
    return CnfSet(I)
