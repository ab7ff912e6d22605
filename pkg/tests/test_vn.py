from ordsys.hfsets import EMPTY, hfset, parse, singleton, union, pair
from ordsys.order import incremented_join
from ordsys.vn import (
    is_vn_ordinal, order_incremented_join, vn, vn_incremented_join, vn_leq,
    vn_leq_membership, vn_min_diff, vn_segment_poset, vn_succ, vn_zero,
)


def test_construction():
    assert vn_zero().value is EMPTY
    assert vn_succ(vn_zero()).value is singleton(EMPTY)
    assert vn_succ(vn_succ(vn_zero())).value is parse("{{},{{}}}")
    for n in range(7):
        assert int(vn(n)) == n
        assert vn_succ(vn(n)).value is union(pair(vn(n).value, singleton(vn(n).value)))


def test_recognition():
    assert is_vn_ordinal(EMPTY)
    assert is_vn_ordinal(parse("{{},{{}}}"))
    assert not is_vn_ordinal(parse("{{{}}}"))
    assert not is_vn_ordinal(hfset(EMPTY, parse("{{{}}}")))


def test_order_and_facts():
    assert vn_leq(vn(2), vn(3)) and not vn_leq(vn(3), vn(2))
    for a in range(7):
        assert vn_leq(vn(0), vn(a))
        for b in range(7):
            x, y = vn(a), vn(b)
            assert vn_leq(x, y) == (a <= b) == vn_leq_membership(x, y)
            if a < b:
                assert int(vn_min_diff(x, y)) == a


def test_incremented_join_examples():
    assert int(vn_incremented_join([])) == 0
    assert int(vn_incremented_join([vn(0), vn(1)])) == 2
    assert int(vn_incremented_join([vn(3)])) == 4


def test_formula_against_order():
    P = vn_segment_poset(8)
    for m in range(1 << 7):
        X = [vn(i) for i in range(7) if m >> i & 1]
        formula = vn_incremented_join(X)
        assert formula == order_incremented_join(X, 8)
        assert formula == incremented_join(P, X)
