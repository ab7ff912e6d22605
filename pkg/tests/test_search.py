import itertools
from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from conftest import sc_masks
from ordsys.errors import ParseError, ResourceLimitError
from ordsys.lss import FiniteLSS, axiom_vector
from ordsys.report import Status
from ordsys.search import (
    SearchSpec, canonical_form, enumerate_systems, independence_report, relabel,
    two_peano_windows,
)

AX = ("C1", "C2", "C3", "C4", "C5")


def oracle_vector(s, L):
    """C1-C5 straight from the definitions, for a total s and an L-table
    on the successor-closed sets (so C1 holds)."""
    n = len(s)

    def closed(m):
        return all(not (m >> s[x] & 1) or m >> x & 1 for x in range(n)) and \
            all(not (m >> v & 1) or A & ~m == 0 for A, v in L.items())

    closed_sets = [m for m in range(1 << n) if closed(m)]

    def cl(I):
        out = (1 << n) - 1
        for m in closed_sets:
            if m & I == I:
                out &= m
        return out

    items = list(L.items())
    c2 = all(L[A] == L[B] for A, B in itertools.combinations(L, 2) if cl(A) == cl(B))
    c3 = all(v not in s and not A >> s[v] & 1 for A, v in items)
    c4 = len(set(s)) == n and all(cl(A) == cl(B) for A, B in itertools.combinations(L, 2)
                                  if L[A] == L[B])
    lfp = (1 << n) - 1
    for J in range(1 << n):
        if all(not J >> x & 1 or J >> s[x] & 1 for x in range(n)) and \
                all(A & ~J or J >> v & 1 for A, v in items):
            lfp &= J
    return (True, c2, c3, c4, lfp == (1 << n) - 1)


@lru_cache(None)
def labeled_population(n):
    out = []
    for s in itertools.product(range(n), repeat=n):
        sc = sc_masks(s)
        for vals in itertools.product(range(n), repeat=len(sc)):
            L = dict(zip(sc, vals))
            out.append((s, L, oracle_vector(s, L)))
    return out


def oracle_matches(n, req):
    return [(s, L) for s, L, vec in labeled_population(n)
            if all(r is None or vec[i] == r for i, r in enumerate(req))]


requirements = st.tuples(st.just(True), *[st.sampled_from([None, True, False])] * 4)


@settings(max_examples=25)
@given(requirements)
def test_labeled_catalog_matches_oracle(req):
    spec = SearchSpec(3, dict(zip(AX, req)), dedup=False, min_size=1)
    cat = enumerate_systems(spec)
    got = Counter(e.system.n for e in cat)
    for n in (1, 2, 3):
        assert got[n] == len(oracle_matches(n, req))


@settings(max_examples=25)
@given(requirements)
def test_dedup_catalog_counts_isomorphism_classes(req):
    spec = SearchSpec(3, dict(zip(AX, req)), min_size=1)
    cat = enumerate_systems(spec)
    got = Counter(e.system.n for e in cat)
    for n in (1, 2, 3):
        classes = {canonical_form(FiniteLSS(s, L)) for s, L in oracle_matches(n, req)}
        assert got[n] == len(classes)
    forms = [canonical_form(e.system) for e in cat]
    assert len(forms) == len(set(forms))


def test_frozen_counts():
    req = {"C1": True, "C2": True, "C5": True, "C3": False}
    cat = enumerate_systems(SearchSpec(3, req, dedup=False))
    assert cat.stats["0"]["matches"] == 0
    got = [cat.stats[str(n)]["matches"] for n in (1, 2, 3)]
    assert got == [1, 12, 132]
    assert got == [len(oracle_matches(n, (True, True, False, None, True))) for n in (1, 2, 3)]


def test_map_counts():
    for n, iso in zip(range(1, 6), (1, 3, 7, 19, 47)):
        assert len(enumerate_systems(SearchSpec(n, s_only=True, min_size=n))) == iso
        assert len(enumerate_systems(SearchSpec(n, s_only=True, min_size=n, dedup=False))) == n ** n


def test_no_nonempty_finite_model():
    cat = enumerate_systems(SearchSpec(4, {a: True for a in AX}, min_size=1))
    assert len(cat) == 0 and cat.complete
    empty = enumerate_systems(SearchSpec(0, {a: True for a in AX}))
    assert len(empty) == 1 and empty.entries[0].system.n == 0


@given(st.integers(1, 4), st.data())
def test_canonical_form_is_relabeling_invariant(n, data):
    s = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    L = {m: data.draw(st.integers(0, n - 1)) for m in sc_masks(s)}
    p = data.draw(st.permutations(range(n)))
    S = FiniteLSS(s, L)
    T = relabel(S, p)
    assert canonical_form(S) == canonical_form(T)
    assert axiom_vector(S) == axiom_vector(T)


def test_entries_reverify():
    cat = enumerate_systems(SearchSpec(3, {"C1": True, "C2": True}))
    for e in cat:
        assert axiom_vector(e.system) == e.axioms
        failing = {a for a, ok in e.axioms.items() if not ok}
        assert set(e.witnesses) == failing


def test_jobs_do_not_change_output():
    spec = SearchSpec(4, {"C1": True, "C2": True, "C4": False})
    assert enumerate_systems(spec, jobs=2).to_jsonl() == enumerate_systems(spec).to_jsonl()


def test_sampled_search_is_reproducible():
    spec = SearchSpec(2, {"C1": False}, sample_budget=50, seed=3)
    a, b = enumerate_systems(spec), enumerate_systems(spec)
    assert a.to_jsonl() == b.to_jsonl()
    assert not a.complete
    assert all(not e.axioms["C1"] for e in a)


def test_caps_and_parsing():
    with pytest.raises(ResourceLimitError):
        SearchSpec(6)
    with pytest.raises(ResourceLimitError):
        SearchSpec(8, s_only=True)
    spec = SearchSpec.parse("n=3 C1 !C3 nonempty labeled")
    assert spec.max_size == 3 and spec.min_size == 1 and not spec.dedup
    assert spec.require == {"C1": True, "C2": None, "C3": False, "C4": None, "C5": None}
    assert SearchSpec.parse('{"max_size": 2, "require": {"C4": true}}').require["C4"] is True
    for bad in ("C1 C2", "n=3 C9", "{oops"):
        with pytest.raises(ParseError):
            SearchSpec.parse(bad)


def test_independence_report():
    r = independence_report()
    c3 = r["C3 independent"]
    assert c3.status is Status.PASS
    assert c3.witness["system"]["s"] == [1, 0]
    assert r.status("C4 independent") is Status.NOT_APPLICABLE
    c5 = r["C5 independent"]
    assert c5.status is Status.BOUNDED_PASS
    assert c5.witness["fails"]["least closed set"] == [0, 1, 2, 3]
    assert two_peano_windows(4).n == 8


def test_counting_system_population_matches_oracle():
    # the labeled C1-C2 counts used by the closure acceptance check
    counts = [len(oracle_matches(n, (True, True, None, None, None))) for n in (1, 2, 3)]
    assert counts == [1, 20, 504]
    cat = enumerate_systems(SearchSpec(3, {"C1": True, "C2": True}, dedup=False, min_size=1))
    assert [cat.stats[str(n)]["matches"] for n in (1, 2, 3)] == counts
