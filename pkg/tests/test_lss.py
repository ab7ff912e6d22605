import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import arbitrary_systems, c1_systems, sc_masks
from ordsys.cnf import CnfSet, GenSuccSet, cnf
from ordsys.errors import ContractError, ParseError, PreconditionError
from ordsys.lss import (
    FiniteLSS, SymbolicLSS, axiom_vector, check_C1_C2, check_C3_C4_C5, from_ordinal_system,
    is_counting_system, peano_degeneration_check, specialization_leq, spo_order, to_dot,
)
from ordsys.ordinal_system import CnfCarrier, FiniteChain, NatSegment
from ordsys.report import Status


def closed_by_definition(S, m):
    for x in range(S.n):
        if S.s[x] is not None and m >> S.s[x] & 1 and not m >> x & 1:
            return False
    for A, v in S.L.items():
        if m >> v & 1 and A & ~m:
            return False
    return True


def least_closed_superset(S, I):
    out = S.full
    for m in range(1 << S.n):
        if m & I == I and closed_by_definition(S, m):
            out &= m
    return out


def with_total_L(s):
    """(s, L = 0 on each successor-closed set) as a plain C1 system."""
    return FiniteLSS(s, {m: 0 for m in sc_masks(s)})


@given(arbitrary_systems())
def test_iterated_closure_is_least_closed_superset(S):
    for I in range(1 << S.n):
        assert S.closure_iterated(I).mask == least_closed_superset(S, I)
        assert S.is_closed(I) == closed_by_definition(S, I)


@given(c1_systems())
def test_two_term_closure_on_counting_systems(S):
    if not is_counting_system(S):
        with pytest.raises(ContractError):
            S.closure_two_term(0)
        return
    for I in range(1 << S.n):
        assert S.closure_two_term(I).mask == least_closed_superset(S, I)


@given(arbitrary_systems())
def test_closure_is_alexandrov(S):
    # closure of a union is the union of the closures of the points
    for I in range(1 << S.n):
        pts = 0
        for x in range(S.n):
            if I >> x & 1:
                pts |= S.closure_mask(1 << x)
        assert S.closure_mask(I) == pts


def test_frozen_peano_double():
    S = FiniteLSS([1, 2, 3, 4, 5, 5], {0: 0})
    assert sorted(S.closure_iterated([3]).members) == [0, 1, 2, 3]
    assert S.leq_s(2, 5) and not S.leq_s(5, 2)


def test_leq_L_and_specialization():
    S = FiniteLSS.clock(4)
    assert S.leq_L(3, 0) and not S.leq_L(0, 1)
    assert specialization_leq(S, 1, 0)  # everything sits below 0 through the full set
    sym = SymbolicLSS()
    assert sym.leq_s(cnf(2), cnf(5))
    assert sym.leq_L(cnf(3), cnf("w"))
    assert sym.specialization_leq(cnf("w+1"), cnf("w*2"))
    assert not sym.specialization_leq(cnf("w*2"), cnf("w+1"))


@given(c1_systems())
def test_specialization_two_forms_agree(S):
    for x in range(S.n):
        for y in range(S.n):
            specialization_leq(S, x, y)  # raises on disagreement


def test_clock_axioms():
    S = FiniteLSS.clock(12)
    r = check_C1_C2(S)
    assert r.status("C1") is Status.PASS and r.status("C2") is Status.PASS
    r = check_C3_C4_C5(S)
    assert r["C3"].witness["s⁻¹{L(I)}"] == [11]
    assert r.status("C4") is Status.FAIL
    assert r.status("C5") is Status.PASS
    assert r.status("Property 0") is Status.NOT_APPLICABLE
    assert axiom_vector(S) == {"C1": True, "C2": True, "C3": False, "C4": False, "C5": True}


def test_C1_rejects_set_that_is_not_successor_closed():
    S = FiniteLSS([1, 0], {0: 0, 1: 0, 3: 1})
    r = check_C1_C2(S)
    assert r["C1"].witness["not successor-closed"] == [[0]]


def test_peano_window_is_bounded():
    S = FiniteLSS.peano_window(6)
    assert S.successor_closed() == [0]
    r = check_C1_C2(S)
    r.extend(check_C3_C4_C5(S))
    assert r.ok
    assert r.status("C5") is Status.BOUNDED_PASS
    assert r["C5"].witness == {"boundary": [5]}
    P, rep = spo_order(S)
    assert rep.ok
    assert P.down == FiniteChain(6).poset.down
    assert peano_degeneration_check(S).ok


def test_empty_system():
    S = FiniteLSS([], {})
    assert S.successor_closed() == []
    r = check_C1_C2(S)
    r.extend(check_C3_C4_C5(S))
    assert r.ok
    P, rep = spo_order(S)
    assert P.n == 0 and rep.ok
    assert S.closure_iterated(0).members == frozenset()
    assert peano_degeneration_check(S).ok


def test_spo_refuses_non_counting_systems():
    with pytest.raises(ContractError):
        spo_order(FiniteLSS.clock(3))


def test_peano_check_precondition():
    r = peano_degeneration_check(FiniteLSS.clock(3))
    assert not r.ok
    assert r.status("induction") is Status.NOT_APPLICABLE


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_round_trip_through_nat_segment(n):
    S = from_ordinal_system(NatSegment(n))
    P, rep = spo_order(S)
    assert rep.ok
    assert P.down == NatSegment(n).poset.down


def test_from_ordinal_system_rejects_large_cnf():
    with pytest.raises(PreconditionError):
        from_ordinal_system(CnfCarrier(cnf("w^2+1")))
    assert from_ordinal_system(CnfCarrier(cnf("w+3"))).bound == cnf("w*2")


def test_json_round_trip_and_errors():
    S = FiniteLSS([1, 2, 0], {0: 0, 7: 1}, name="tri")
    T = FiniteLSS.from_json(json.dumps(S.to_json()))
    assert T == S and T.name == "tri"
    for bad in ('{"size": 2}', '{"size": 2, "s": [0], "L": []}', "not json",
                '{"size": 1, "s": [3], "L": []}',
                '{"size": 1, "s": [0], "L": [{"set": [], "value": 0}, {"set": [], "value": 0}]}'):
        with pytest.raises(ParseError):
            FiniteLSS.from_json(bad)


@given(c1_systems())
def test_json_round_trip_property(S):
    assert FiniteLSS.from_json(S.to_json()) == S


def test_dot_output():
    dot = to_dot(FiniteLSS.peano_window(3))
    assert dot.startswith("digraph spo {")
    assert "n0 -> n1;" in dot and "n1 -> n2;" in dot and "n0 -> n2;" not in dot


def test_symbolic_system_checks():
    S = SymbolicLSS()
    r = S.check_C1_C2()
    r.extend(S.check_C3_C4_C5())
    assert r.ok and all(c.status is Status.BOUNDED_PASS for c in r.checks)
    P, rep = S.spo_order()
    assert rep.ok


def test_symbolic_L_and_closure():
    S = SymbolicLSS()
    assert S.L(GenSuccSet(["w+2"])) == cnf("w*2")
    assert S.L(CnfSet()) == cnf(0)
    c = S.closure_iterated(CnfSet(["w+3"]))
    assert c.bound == cnf("w+4")
    assert c.symbolic == S.closure_two_term(CnfSet(["w+3"])).symbolic


def test_symbolic_random_closures_agree():
    S = SymbolicLSS(cnf("w*3"))
    for X in S.random_sets(random.Random(5), 100):
        a, b = S.closure_iterated(X), S.closure_two_term(X)
        assert a.symbolic == b.symbolic


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_C2_failure_has_consistent_witness(vals):
    n = len(vals)
    s = [min(i + 1, n - 1) for i in range(n)]
    sc = sc_masks(s)
    S = FiniteLSS(s, {m: vals[i % n] % n for i, m in enumerate(sc)})
    r = check_C1_C2(S)
    if r.status("C2") is Status.FAIL:
        w = r["C2"].witness
        assert w["L(I)"] != w["L(J)"]


def test_closed_sets_form_alexandrov_topology():
    # exhaustive up to isomorphism on counting systems of size ≤ 4
    from ordsys.search import SearchSpec, enumerate_systems
    cat = enumerate_systems(SearchSpec(4, {"C1": True, "C2": True}, min_size=1))
    assert len(cat) > 0
    for e in cat:
        S = e.system
        closed = [m for m in range(1 << S.n) if S.is_closed(m)]
        cs = set(closed)
        assert 0 in cs and S.full in cs
        for a in closed:
            for b in closed:
                assert a | b in cs and a & b in cs
