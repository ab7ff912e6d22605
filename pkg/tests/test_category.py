import pytest
from hypothesis import given, strategies as st

from conftest import sc_masks
from ordsys.category import (
    Morphism, compose, identity, initial_morphism, is_morphism, uniqueness_check,
)
from ordsys.cnf import cnf, cnf_succ
from ordsys.errors import ContractError, ParseError, PreconditionError
from ordsys.lss import FiniteLSS, SymbolicLSS, is_counting_system
from ordsys.report import Status

CLOCK = FiniteLSS.clock(12)


def mod(k, n):
    """x ↦ x mod k from clock n to clock k."""
    return Morphism(FiniteLSS.clock(n), FiniteLSS.clock(k), tuple(x % k for x in range(n)))


@pytest.mark.parametrize("n", range(1, 8))
def test_initial_morphism_into_clock_is_mod_12(n):
    f = initial_morphism(FiniteLSS.peano_window(n), CLOCK)
    assert f.table == tuple(x % 12 for x in range(n))
    assert is_morphism(f).ok


def test_wraps_past_twelve():
    f = initial_morphism(FiniteLSS.peano_window(15), CLOCK)
    assert f.table[12:] == (0, 1, 2)


def test_symbolic_source():
    f = initial_morphism(SymbolicLSS(), CLOCK, cnf("w+3"))
    assert f(cnf("w")) == 0 and f(cnf("w+3")) == 3
    assert f.to_json()["points"][4] == "w"
    g = initial_morphism(SymbolicLSS(), CLOCK, cnf("w*3+14"))
    assert g(cnf("w*3+14")) == 2 and g(cnf("w*2+11")) == 11
    assert is_morphism(g).ok


def test_identity_and_negative_control():
    S = FiniteLSS.peano_window(4)
    assert is_morphism(identity(S)).ok
    const = Morphism(FiniteLSS.peano_window(3), CLOCK, (0, 0, 0))
    r = is_morphism(const)
    assert r["f∘s₁ = s₂∘f"].witness == {"x": 0, "f(s₁x)": 0, "s₂(fx)": 1}


def test_composition_laws():
    f = initial_morphism(FiniteLSS.peano_window(7), CLOCK)
    g, h = mod(4, 12), mod(2, 4)
    for m in (g, h):
        assert is_morphism(m).ok
    assert compose(g, identity(g.source)).table == g.table
    assert compose(identity(g.target), g).table == g.table
    left, right = compose(h, compose(g, f)), compose(compose(h, g), f)
    assert left.table == right.table
    assert is_morphism(left).ok
    # and by uniqueness it is the initial morphism into clock 2
    assert left.table == initial_morphism(FiniteLSS.peano_window(7), FiniteLSS.clock(2)).table
    with pytest.raises(PreconditionError):
        compose(f, g)


@st.composite
def counting_targets(draw):
    n = draw(st.integers(1, 4))
    s = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return FiniteLSS(s, {m: draw(st.integers(0, n - 1)) for m in sc_masks(s)})


@given(counting_targets(), st.integers(1, 6))
def test_primitive_recursion_coincidence(T, n):
    if not is_counting_system(T):
        with pytest.raises(ContractError):
            initial_morphism(FiniteLSS.peano_window(n), T)
        return
    f = initial_morphism(FiniteLSS.peano_window(n), T)
    v, expect = T.L[0], []
    for _ in range(n):
        expect.append(v)
        v = T.s[v]
    assert list(f.table) == expect


@given(counting_targets(), st.integers(1, 5))
def test_uniqueness_modes_agree(T, n):
    if not is_counting_system(T):
        return
    O = FiniteLSS.peano_window(n)
    a, b = uniqueness_check(O, T), uniqueness_check(O, T, exhaustive=False)
    assert a.ok and b.ok
    assert [c.status for c in a.checks] == [c.status for c in b.checks]


def test_one_point_target():
    point = FiniteLSS([0], {0: 0, 1: 0})
    r = uniqueness_check(FiniteLSS.peano_window(6), point)
    assert r.status("exactly one morphism") is Status.PASS


def test_uniqueness_cap():
    with pytest.raises(PreconditionError):
        uniqueness_check(FiniteLSS.peano_window(9), CLOCK)


def test_symbolic_successor_equation_at_points():
    f = initial_morphism(SymbolicLSS(), FiniteLSS.clock(5), cnf("w*2+2"))
    for x in f.table.points():
        if cnf_succ(x) <= cnf("w*2+2"):
            assert f(cnf_succ(x)) == (f(x) + 1) % 5


def test_morphism_json():
    f = initial_morphism(FiniteLSS.peano_window(4), CLOCK)
    assert Morphism.from_json(f.to_json(), f.source, CLOCK).table == f.table
    with pytest.raises(ParseError):
        Morphism.from_json({"map": [0, 1]}, f.source, CLOCK)
    with pytest.raises(ParseError):
        Morphism.from_json("{", f.source, CLOCK)
