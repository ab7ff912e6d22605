"""Morphisms of counting systems and the universal property of the ordinals.

A morphism f: (X₁, L₁, s₁) → (X₂, L₂, s₂) satisfies f∘s₁ = s₂∘f and
L₂(fI) = f(L₁(I)) on dom(L₁).  The initial morphism out of an ordinal
counting system is built by transfinite recursion and then re-checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema
import numpy as np

from .cnf import CnfOrdinal, CnfSet, cnf, cnf_succ, limit_part, plus_omega
from .errors import ContractError, DomainError, ParseError, PreconditionError
from .lss import FiniteLSS, SymbolicLSS, check_C1_C2, spo_order
from .order import _bits
from .ordinal_system import (
    CnfCarrier, FiniteCarrier, RecursionTable, RecursionTarget, transfinite_recursion,
)
from .report import CheckReport, Status

__all__ = [
    "Morphism", "MORPHISM_SCHEMA", "is_morphism", "identity", "compose",
    "initial_morphism", "uniqueness_check", "as_recursion_target",
]

MORPHISM_SCHEMA = {
    "type": "object",
    "required": ["map"],
    "properties": {"map": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
}

UNIQUENESS_CAP = 8


@dataclass
class Morphism:
    """A table from the source carrier to the target carrier.

    For finite sources ``table`` lists f(0..n-1).  For a symbolic source it
    is the recursion table, evaluated lazily below its bound."""
    source: FiniteLSS | SymbolicLSS
    target: FiniteLSS
    table: tuple | RecursionTable

    def __call__(self, x) -> int:
        if isinstance(self.table, RecursionTable):
            return self.table(x)
        return self.table[x]

    def image(self, I) -> int:
        """fI as a mask in the target."""
        if isinstance(I, CnfSet):
            return _symbolic_image(self, I)
        m = 0
        for x in _bits(I) if isinstance(I, int) else I:
            m |= 1 << self(x)
        return m

    def to_json(self) -> dict:
        if isinstance(self.table, RecursionTable):
            return {"map": [v for _, v in self.table.to_json()],
                    "points": [x for x, _ in self.table.to_json()]}
        return {"map": list(self.table)}

    @classmethod
    def from_json(cls, data, source: FiniteLSS, target: FiniteLSS) -> Morphism:
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e}") from None
        try:
            jsonschema.validate(data, MORPHISM_SCHEMA)
        except jsonschema.ValidationError as e:
            raise ParseError(f"not a Morphism document: {e.message}") from None
        table = tuple(data["map"])
        if len(table) != source.n or any(v >= target.n for v in table):
            raise ParseError("map must send each source position into the target")
        return cls(source, target, table)


def _symbolic_image(f: Morphism, I: CnfSet) -> int:
    # a tail g, g+1, ... maps onto the s₂-orbit of f(g)
    m = 0
    for x in I.points:
        m |= 1 << f(x)
    for g in I.tails.generators:
        for v in f.target.orbit(f(g)):
            m |= 1 << v
    return m


def identity(S: FiniteLSS) -> Morphism:
    return Morphism(S, S, tuple(range(S.n)))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g∘f."""
    if f.target is not g.source and f.target != g.source:
        raise PreconditionError("morphisms do not compose: target and source differ")
    if isinstance(f.table, RecursionTable):
        raise PreconditionError("composition is implemented for finite sources")
    return Morphism(f.source, g.target, tuple(g(v) for v in f.table))


def is_morphism(f: Morphism, S1=None, S2=None) -> CheckReport:
    """Both morphism equations: exhaustive for finite sources, on the
    recursion points and the sampled generated sets for symbolic ones."""
    S1 = S1 if S1 is not None else f.source
    S2 = S2 if S2 is not None else f.target
    report = CheckReport(f"morphism {S1.name} → {S2.name}")
    if isinstance(S1, SymbolicLSS):
        return _is_morphism_symbolic(f, S1, S2, report)
    if not isinstance(f.table, RecursionTable) and len(f.table) != S1.n:
        report.failed("total", {"table length": len(f.table), "carrier": S1.n})
        return report
    ws, boundary = None, []
    for x in range(S1.n):
        if S1.s[x] is None:
            boundary.append(x)
            continue
        if f(S1.s[x]) != S2.s[f(x)]:
            ws = {"x": x, "f(s₁x)": f(S1.s[x]), "s₂(fx)": S2.s[f(x)]}
            break
    bound = f"window of {S1.n}" if S1.is_window else None
    if ws is None and boundary:
        report.add("f∘s₁ = s₂∘f", Status.BOUNDED_PASS, witness={"boundary": boundary}, bound=bound)
    else:
        report.verdict("f∘s₁ = s₂∘f", ws, bound=bound)
    wl = None
    for m, v in S1.L.items():
        fI = f.image(m)
        got = S2.L.get(fI)
        if got != f(v):
            wl = {"I": list(_bits(m)), "fI": list(_bits(fI)), "L₂(fI)": got, "f(L₁I)": f(v)}
            break
    report.verdict("L₂(fI) = f(L₁I)", wl, bound=bound)
    return report


def _is_morphism_symbolic(f: Morphism, S1: SymbolicLSS, S2: FiniteLSS, report: CheckReport):
    tab = f.table
    top = tab.bound
    b = str(top)
    pts = [x for x in tab.points() if cnf_succ(x) <= top]
    ws = next(({"x": str(x)} for x in pts if f(cnf_succ(x)) != S2.s[f(x)]), None)
    report.verdict("f∘s₁ = s₂∘f", ws, bound=b, note=f"{len(pts)} recursion points")
    wl, n = None, 0
    for I in S1.gen_samples():
        v = S1.L(I)
        if v is None or v > top:
            continue
        n += 1
        fI = f.image(CnfSet([], I))
        if S2.L.get(fI) != f(v):
            wl = {"I": repr(I), "fI": list(_bits(fI)), "L₂(fI)": S2.L.get(fI), "f(L₁I)": f(v)}
            break
    report.verdict("L₂(fI) = f(L₁I)", wl, bound=b, note=f"{n} generated sets with L(I) ≤ {b}")
    return report


def as_recursion_target(T: FiniteLSS) -> RecursionTarget:
    """(X, V, T) with T = s and V(A) = L(A), undefined off dom(L)."""
    if T.is_window:
        raise PreconditionError("targets need a total successor map")
    return RecursionTarget(T.n, T.s, lambda A: T.L.get(sum(1 << a for a in A)), name=T.name)


def _target_ok(T: FiniteLSS) -> None:
    pre = check_C1_C2(T)
    if not pre.ok:
        bad = pre.failures()[0]
        raise ContractError(f"target {T.name}: {bad.name} fails", witness=bad.witness)


def initial_morphism(O, T: FiniteLSS, bound=None) -> Morphism:
    """The morphism out of an ordinal counting system, on {y ≤ bound}.

    ``O`` is a FiniteLSS satisfying C1-C5 (a window of the naturals, say) or
    a SymbolicLSS; limits are classified in O's own order."""
    _target_ok(T)
    tgt = as_recursion_target(T)
    if isinstance(O, SymbolicLSS):
        bound = cnf(bound if bound is not None else 0)
        if not bound < O.bound:
            raise PreconditionError(f"{bound} lies outside {O.name}")
        carrier = CnfCarrier(bound, max_coeff=1, extra=_block_points(bound))
        table = transfinite_recursion(carrier, tgt, bound)
        f = Morphism(O, T, table)
    else:
        P, rep = spo_order(O)
        bound = O.n - 1 if bound is None else int(bound)
        if not 0 <= bound < O.n:
            raise PreconditionError(f"{bound} lies outside {O.name}")
        carrier = FiniteCarrier(P, bounded=O.is_window, name=O.name)
        table = transfinite_recursion(carrier, tgt, bound)
        values = tuple(table.values[x] for x in range(bound + 1))
        f = Morphism(_restrict(O, bound + 1), T, values)
    check = is_morphism(f)
    if not check.ok:
        raise ContractError("recursion output is not a morphism", witness=check.failures()[0].witness)
    return f


def _block_points(bound: CnfOrdinal, per_block: int = 4) -> list:
    """The first points of each block up to the bound, and the whole last
    block up to the bound itself."""
    out = []
    lam = cnf(0)
    while lam <= bound:
        x = lam
        for _ in range(per_block):
            if x <= bound:
                out.append(x)
            x = cnf_succ(x)
        if lam == limit_part(bound):
            break
        lam = plus_omega(lam)
    x = limit_part(bound)
    while x <= bound:
        out.append(x)
        x = cnf_succ(x)
    return out


def _restrict(O: FiniteLSS, n: int) -> FiniteLSS:
    """The initial window {0..n-1} of an ordinal system given in its own order."""
    if n == O.n:
        return O
    P, _ = spo_order(O)
    order = sorted(range(O.n), key=lambda i: bin(P.down[i]).count("1"))
    if order != list(range(O.n)):
        raise PreconditionError("restriction needs elements labelled in order")
    s = [O.s[i] if O.s[i] is not None and O.s[i] < n else None for i in range(n)]
    L = {m: v for m, v in O.L.items() if m >> n == 0 and v < n}
    return FiniteLSS(s, L, name=f"{O.name}[:{n}]")


def _solutions_exhaustive(S1: FiniteLSS, S2: FiniteLSS, chunk: int = 1 << 20) -> list[tuple]:
    """Every table X₁ → X₂ satisfying both equations, by scanning all
    |X₂|^|X₁| tables in numpy chunks."""
    n, m = S1.n, S2.n
    total = m ** n
    s2 = np.array(S2.s, np.int64)
    L2 = np.full(1 << m, -1, np.int64)
    for mask, v in S2.L.items():
        L2[mask] = v
    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        f = np.empty((idx.size, n), np.int64)
        rest = idx.copy()
        for x in range(n):
            f[:, x] = rest % m
            rest //= m
        ok = np.ones(idx.size, bool)
        for x in range(n):
            if S1.s[x] is not None:
                ok &= f[:, S1.s[x]] == s2[f[:, x]]
        for mask, v in S1.L.items():
            img = np.zeros(idx.size, np.int64)
            for x in _bits(mask):
                img |= np.int64(1) << f[:, x]
            ok &= L2[img] == f[:, v]
        found.extend(tuple(int(a) for a in row) for row in f[ok])
    return found


def _solutions_backtrack(S1: FiniteLSS, S2: FiniteLSS) -> list[tuple]:
    """Same set of tables by depth-first search, checking each equation as
    soon as every value it mentions is assigned."""
    n = S1.n
    succ_eqs = [[] for _ in range(n)]
    for x, t in enumerate(S1.s):
        if t is not None:
            succ_eqs[max(x, t)].append((x, t))
    l_eqs = [[] for _ in range(n)]
    for mask, v in S1.L.items():
        last = max(list(_bits(mask)) + [v])
        l_eqs[last].append((mask, v))
    out, f = [], [0] * n

    def ok_at(i):
        if any(f[t] != S2.s[f[x]] for x, t in succ_eqs[i]):
            return False
        for mask, v in l_eqs[i]:
            img = 0
            for x in _bits(mask):
                img |= 1 << f[x]
            if S2.L.get(img) != f[v]:
                return False
        return True

    def rec(i):
        if i == n:
            out.append(tuple(f))
            return
        for y in range(S2.n):
            f[i] = y
            if ok_at(i):
                rec(i + 1)

    rec(0)
    return out


def uniqueness_check(O: FiniteLSS, T: FiniteLSS, exhaustive: bool = True,
                     cap: int = UNIQUENESS_CAP) -> CheckReport:
    """Find every morphism O → T and require exactly one, equal to the
    initial morphism.  ``exhaustive`` scans all tables; otherwise a pruned
    search is used."""
    if O.n > cap:
        raise PreconditionError(f"segment length {O.n} exceeds the cap {cap}")
    report = CheckReport(f"uniqueness {O.name} → {T.name}")
    found = _solutions_exhaustive(O, T) if exhaustive else _solutions_backtrack(O, T)
    how = f"all {T.n ** O.n} tables scanned" if exhaustive else "pruned search"
    try:
        f = initial_morphism(O, T) if O.n else None
    except (DomainError, ContractError) as e:
        report.add("initial morphism", Status.NOT_APPLICABLE, note=str(e))
        report.verdict("morphisms found", None if not found else {"count": len(found)}, note=how)
        return report
    expect = f.table if f is not None else ()
    if len(found) == 1 and found[0] == expect:
        report.passed("exactly one morphism", note=how)
    elif len(found) > 1:
        report.failed("exactly one morphism", {"count": len(found), "first two": found[:2]}, note=how)
    else:
        report.failed("exactly one morphism", {"count": len(found), "recursion": expect}, note=how)
    return report
