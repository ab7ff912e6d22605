import itertools

from hypothesis import HealthCheck, settings, strategies as st

from ordsys.lss import FiniteLSS

settings.register_profile(
    "default", deadline=None, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def sc_masks(s):
    """Successor-closed subsets by direct scan, independent of the library."""
    n = len(s)
    return [m for m in range(1 << n)
            if all(s[i] is not None and m >> s[i] & 1 for i in range(n) if m >> i & 1)]


@st.composite
def c1_systems(draw, max_n=4):
    """A total successor map with a random L-table on exactly its
    successor-closed subsets (C1 holds; C2 may or may not)."""
    n = draw(st.integers(1, max_n))
    s = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    vals = {m: draw(st.integers(0, n - 1)) for m in sc_masks(s)}
    return FiniteLSS(s, vals)


@st.composite
def arbitrary_systems(draw, max_n=4):
    """Any successor map (possibly escaping) and any partial L-table."""
    n = draw(st.integers(1, max_n))
    s = draw(st.lists(st.one_of(st.none(), st.integers(0, n - 1)), min_size=n, max_size=n))
    dom = draw(st.sets(st.integers(0, (1 << n) - 1), max_size=6))
    return FiniteLSS(s, {m: draw(st.integers(0, n - 1)) for m in sorted(dom)})


def all_maps(n):
    return itertools.product(range(n), repeat=n)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
