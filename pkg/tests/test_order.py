import itertools

from hypothesis import given, strategies as st

from ordsys.order import (
    Poset, all_posets, check_galois, check_L_laws, check_lemma_max, incremented_join,
    join, lower_complement, successor, upper_complement,
)
from ordsys.report import Status

CHAIN3 = Poset.chain(3)
ANTI2 = Poset(["a", "b"], lambda x, y: x == y)


def naive_lower(P, S):
    return {x for x in P.elements if all(P.lt(x, y) for y in S)}


def naive_upper(P, S):
    return {x for x in P.elements if all(P.lt(y, x) for y in S)}


def naive_min(P, T):
    mins = [x for x in T if all(P.leq(x, y) for y in T)]
    return mins[0] if mins else None


def subsets(P):
    for r in range(P.n + 1):
        yield from itertools.combinations(P.elements, r)


def test_complements_on_chain():
    assert lower_complement(CHAIN3, []) == {0, 1, 2}
    assert lower_complement(CHAIN3, [2]) == {0, 1}
    assert lower_complement(CHAIN3, [0, 2]) == set()
    assert upper_complement(CHAIN3, []) == {0, 1, 2}
    assert upper_complement(CHAIN3, [0]) == {1, 2}
    assert upper_complement(ANTI2, ["a"]) == set()


def test_incremented_join_and_successor():
    assert incremented_join(CHAIN3, [0]) == 1
    assert incremented_join(CHAIN3, [2]) is None
    assert incremented_join(CHAIN3, [0, 1]) == 2
    assert successor(CHAIN3, 0) == 1
    assert successor(CHAIN3, 2) is None
    assert join(CHAIN3, [0, 1]) == 1


def test_poset_counts():
    # labeled posets on n points: 1, 1, 3, 19, 219
    assert [sum(1 for _ in all_posets(n)) for n in range(5)] == [1, 1, 3, 19, 219]


def test_complements_against_definition():
    for n in range(4):
        for P in all_posets(n):
            for S in subsets(P):
                assert lower_complement(P, S) == naive_lower(P, S)
                assert upper_complement(P, S) == naive_upper(P, S)
                r = incremented_join(P, S)
                assert r == naive_min(P, naive_upper(P, S))
                if r is not None:
                    assert r not in S


def test_galois_exhaustive():
    for n in range(5):
        for P in all_posets(n):
            assert check_galois(P).ok


def test_L_laws_all_chains():
    for n in range(7):
        r = check_L_laws(Poset.chain(n))
        assert r.ok and all(r.status(f"L{i}") is not Status.FAIL for i in range(1, 8))


def test_L_laws_off_total_orders():
    r = check_L_laws(ANTI2)
    assert r.ok
    for i in (4, 5, 6, 7):
        assert r.status(f"L{i}") is Status.NOT_APPLICABLE
    for n in range(5):
        for P in all_posets(n):
            if not P.is_total():
                assert all(r.status(f"L{i}") is Status.NOT_APPLICABLE
                           for r in [check_L_laws(P)] for i in (4, 5, 6, 7))


def test_lemma_max_examples():
    assert check_lemma_max(CHAIN3, [0, 1]).ok
    assert check_lemma_max(CHAIN3, [1, 2]).ok


@given(st.integers(1, 6), st.data())
def test_lemma_max_random_subsets(n, data):
    P = Poset.chain(n)
    S = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    assert check_lemma_max(P, S).ok
    # min S = ⋁⁺(S↓)
    assert incremented_join(P, lower_complement(P, S)) == min(S)


@given(st.integers(1, 6), st.data())
def test_incremented_join_is_join_of_successors(n, data):
    P = Poset.chain(n)
    S = data.draw(st.sets(st.integers(0, n - 2))) if n > 1 else set()
    succs = [successor(P, x) for x in S]
    expected = join(P, succs) if S else P.elements[0]
    assert incremented_join(P, S) == expected


def test_poset_rejects_non_orders():
    import pytest
    with pytest.raises(ValueError):
        Poset([0, 1], lambda a, b: True)
