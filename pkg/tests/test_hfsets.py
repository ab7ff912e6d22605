import random

import pytest
from hypothesis import given, strategies as st

from ordsys.errors import ResourceLimitError
from ordsys.hfsets import (
    EMPTY, Universe, binary_union, canonicalize, cartesian_product, hfset, image,
    image_union, in_restricted_powerset, in_universe, is_transitive, kuratowski, pair,
    parse, random_hfset, set_limits, singleton, subset_by_union, union, unkuratowski,
    universe_lemma_suite,
)

ONE = singleton(EMPTY)
TWO = hfset(EMPTY, ONE)


def hf(seed):
    return random_hfset(random.Random(seed), 4, 4)


def naive_members(x):
    return frozenset(str(c) for c in x)


hfsets = st.integers(0, 10_000).map(hf)


def test_parse_and_canonical():
    assert parse("{}") is EMPTY
    assert parse("{{},{}}") is ONE
    assert parse("{{{}},{}}") is parse("{{},{{}}}")
    assert str(TWO) == "{{},{{}}}"


def test_canonicalize_nested_lists():
    assert canonicalize([[], [[]], []]) is TWO
    assert canonicalize([]) is EMPTY


@given(hfsets)
def test_parse_roundtrip(x):
    assert parse(str(x)) is x


@given(hfsets, hfsets)
def test_interning_matches_structural_equality(x, y):
    assert (x is y) == (naive_members(x) == naive_members(y))


@given(hfsets)
def test_rank_is_one_plus_max_child(x):
    assert x.rank == (1 + max(c.rank for c in x) if x else 0)


def test_pair_and_union():
    assert pair(EMPTY, EMPTY) is ONE
    assert pair(EMPTY, ONE) is TWO
    assert union(EMPTY) is EMPTY
    assert union(hfset(ONE, TWO)) is TWO
    assert binary_union(ONE, hfset(ONE)) is TWO


@given(hfsets, hfsets)
def test_pair_symmetric(a, b):
    assert pair(a, b) is pair(b, a)


@given(hfsets)
def test_union_of_singleton(x):
    assert union(singleton(x)) is x


def test_image_union_examples():
    assert image_union(lambda _: ONE, EMPTY) is EMPTY
    assert image_union(lambda _: ONE, TWO) is ONE
    assert image_union({EMPTY: hfset(ONE)}, ONE) is hfset(ONE)
    assert image(lambda _: EMPTY, TWO) is ONE


def test_transitivity():
    assert is_transitive(EMPTY)
    assert is_transitive(TWO)
    assert not is_transitive(hfset(ONE))


def test_admission():
    X = frozenset(TWO)
    assert in_restricted_powerset(frozenset(), X, Universe.FIN)
    assert in_restricted_powerset({EMPTY}, X, Universe.FIN)
    assert not in_restricted_powerset({hfset(TWO)}, X, Universe.FIN)
    for u in Universe:
        assert in_universe(TWO, u)


@given(hfsets, hfsets)
def test_kuratowski_roundtrip(a, b):
    assert unkuratowski(kuratowski(a, b)) == (a, b)


def test_product_sizes():
    assert cartesian_product(TWO, EMPTY) is EMPTY
    assert len(cartesian_product(TWO, TWO)) == 4
    assert len(cartesian_product(ONE, TWO)) == 2


@given(hfsets, hfsets)
def test_product_matches_pairs(a, b):
    pairs = {kuratowski(x, y) for x in a for y in b}
    assert cartesian_product(a, b).members() == pairs


@given(hfsets, st.data())
def test_subset_rebuilt_by_union(y, data):
    sub = data.draw(st.sets(st.sampled_from(list(y)) if y else st.nothing()))
    A = hfset(*sub)
    assert subset_by_union(A, y) is A


def test_depth_limit():
    old = set_limits().max_rank
    try:
        set_limits(max_rank=3)
        with pytest.raises(ResourceLimitError):
            parse("{{{{{}}}}}")
    finally:
        set_limits(max_rank=old)


def test_lemma_suite_small():
    report = universe_lemma_suite(cases=40, seed=3)
    assert report.ok, report.summary()
    assert len(report.checks) == 16
