"""Ordinals below ε₀ in Cantor normal form, and finitely generated
successor-closed sets of them.

Text syntax: ``0``, ``3``, ``w``, ``w*2+3``, ``w^2*4+w+1``, ``w^w``,
``w^(w+1)``.  ``ω`` may be written for ``w``.  The parser accepts sums
that are not in normal form and normalizes them (``3+w`` reads as ``w``).
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Iterator

from .errors import ParseError, PreconditionError
from .order import Poset

__all__ = [
    "CnfOrdinal", "ZERO", "ONE", "OMEGA", "nat", "omega_power", "cnf",
    "parse_cnf", "cnf_cmp", "cnf_succ", "cnf_is_limit", "limit_part",
    "finite_part", "predecessor", "plus_omega", "GenSuccSet", "gen_sup",
    "gen_member", "CnfSet", "down_set", "random_below", "grid_below",
    "sample_suborder",
]


class CnfOrdinal:
    """An ordinal ``ω^e1·c1 + ... + ω^ek·ck`` with e1 > ... > ek."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple[CnfOrdinal, int]] = ()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, CnfOrdinal) or not isinstance(c, int) or c < 1:
                raise ValueError(f"bad term {(e, c)!r}")
            if i and cnf_cmp(terms[i - 1][0], e) <= 0:
                raise ValueError("exponents must be strictly decreasing")
        self.terms = terms
        self._hash = hash(terms)

    def __eq__(self, other):
        if not isinstance(other, CnfOrdinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other: CnfOrdinal) -> bool:
        return cnf_cmp(self, other) < 0

    def __le__(self, other: CnfOrdinal) -> bool:
        return cnf_cmp(self, other) <= 0

    def __gt__(self, other: CnfOrdinal) -> bool:
        return cnf_cmp(self, other) > 0

    def __ge__(self, other: CnfOrdinal) -> bool:
        return cnf_cmp(self, other) >= 0

    def __bool__(self):
        return bool(self.terms)

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(_term_str(e, c) for e, c in self.terms)

    def __repr__(self) -> str:
        return f"cnf({str(self)!r})"

    def __reduce__(self):
        return (parse_cnf, (str(self),))


def _term_str(e: CnfOrdinal, c: int) -> str:
    if not e:
        return str(c)
    if e == ONE:
        base = "w"
    elif e.is_finite() or e == OMEGA:
        base = f"w^{e}"
    else:
        base = f"w^({e})"
    return base if c == 1 else f"{base}*{c}"


ZERO = CnfOrdinal()
ONE = CnfOrdinal([(ZERO, 1)])
OMEGA = CnfOrdinal([(ONE, 1)])


def nat(n: int) -> CnfOrdinal:
    if n < 0:
        raise ValueError("naturals only")
    return CnfOrdinal([(ZERO, n)]) if n else ZERO


def omega_power(e: CnfOrdinal | int, c: int = 1) -> CnfOrdinal:
    if isinstance(e, int):
        e = nat(e)
    return CnfOrdinal([(e, c)])


def cnf_cmp(a: CnfOrdinal, b: CnfOrdinal) -> int:
    """-1, 0 or 1: term-wise lexicographic on (exponent, coefficient)."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cnf_cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def cnf_succ(a: CnfOrdinal) -> CnfOrdinal:
    if a.terms and not a.terms[-1][0]:
        return CnfOrdinal(a.terms[:-1] + ((ZERO, a.terms[-1][1] + 1),))
    return CnfOrdinal(a.terms + ((ZERO, 1),))


def cnf_is_limit(a: CnfOrdinal) -> bool:
    """0, or no finite term."""
    return not a.terms or bool(a.terms[-1][0])


def limit_part(a: CnfOrdinal) -> CnfOrdinal:
    return a if cnf_is_limit(a) else CnfOrdinal(a.terms[:-1])


def finite_part(a: CnfOrdinal) -> int:
    return 0 if cnf_is_limit(a) else a.terms[-1][1]


def predecessor(a: CnfOrdinal) -> CnfOrdinal | None:
    if cnf_is_limit(a):
        return None
    *rest, (_, k) = a.terms
    return CnfOrdinal(rest + ([(ZERO, k - 1)] if k > 1 else []))


def plus_omega(lam: CnfOrdinal) -> CnfOrdinal:
    """λ + ω for a limit λ: the supremum of λ, λ+1, λ+2, ..."""
    return _add_term(list(limit_part(lam).terms), ONE, 1)


def _add_term(terms: list, e: CnfOrdinal, c: int) -> CnfOrdinal:
    # ordinal sum (terms) + ω^e·c; smaller trailing exponents are absorbed
    while terms and cnf_cmp(terms[-1][0], e) < 0:
        terms.pop()
    if terms and terms[-1][0] == e:
        terms[-1] = (e, terms[-1][1] + c)
    else:
        terms.append((e, c))
    return CnfOrdinal(terms)


_TOKEN = re.compile(r"\s*(?:(\d+)|([wω])|(.))")


def parse_cnf(text: str) -> CnfOrdinal:
    tokens = []
    for m in _TOKEN.finditer(text):
        n, w, other = m.groups()
        if n is not None:
            tokens.append(int(n))
        elif w is not None:
            tokens.append("w")
        elif other is not None and not other.isspace():
            if other not in "+*^()":
                raise ParseError(f"unexpected {other!r} in {text!r}")
            tokens.append(other)
    if not tokens:
        raise ParseError("empty ordinal literal")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return value


class _Parser:
    def __init__(self, tokens, text):
        self.tokens, self.text, self.pos = tokens, text, 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'more input'} in {self.text!r}")
        self.pos += 1
        return tok

    def expr(self) -> CnfOrdinal:
        acc = ZERO
        while True:
            e, c = self.term()
            if c:
                acc = _add_term(list(acc.terms), e, c)
            if self.peek() != "+":
                return acc
            self.take("+")

    def term(self):
        tok = self.peek()
        if isinstance(tok, int):
            self.take()
            if self.peek() == "*":
                raise ParseError(f"coefficients go after the power of w in {self.text!r}")
            return ZERO, tok
        if tok == "(":
            raise ParseError(f"parenthesized sums are only allowed as exponents in {self.text!r}")
        self.take("w")
        e = ONE
        if self.peek() == "^":
            self.take("^")
            e = self.exponent()
        c = 1
        if self.peek() == "*":
            self.take("*")
            c = self.take()
            if not isinstance(c, int) or c < 1:
                raise ParseError(f"coefficient must be a positive natural in {self.text!r}")
        if not e and c:
            return ZERO, c
        return e, c

    def exponent(self) -> CnfOrdinal:
        tok = self.peek()
        if isinstance(tok, int):
            self.take()
            return nat(tok)
        if tok == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        self.take("w")
        if self.peek() == "^":
            self.take("^")
            return omega_power(self.exponent())
        return OMEGA


def cnf(value: CnfOrdinal | int | str) -> CnfOrdinal:
    """Coerce an ordinal, a natural, or a literal string."""
    if isinstance(value, CnfOrdinal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(value, int):
        return nat(value)
    if isinstance(value, str):
        return parse_cnf(value)
    raise TypeError(f"cannot read {type(value).__name__} as an ordinal")


class GenSuccSet:
    """The successor closure ``{g + n | g in generators, n natural}``.

    Generators in the same ω-block are redundant (the larger one is
    reachable from the smaller); only the least per block is kept.
    """

    __slots__ = ("generators",)

    def __init__(self, generators: Iterable[CnfOrdinal | int | str] = ()):
        least: dict[CnfOrdinal, CnfOrdinal] = {}
        for g in map(cnf, generators):
            lam = limit_part(g)
            if lam not in least or g < least[lam]:
                least[lam] = g
        self.generators = tuple(sorted(least.values()))

    def __eq__(self, other):
        if not isinstance(other, GenSuccSet):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self):
        return hash(("gen", self.generators))

    def __repr__(self):
        return "gen{" + ", ".join(map(str, self.generators)) + "}"

    def __bool__(self):
        return bool(self.generators)

    def __contains__(self, x) -> bool:
        return gen_member(cnf(x), self)

    def is_finite(self) -> bool:
        return not self.generators

    def blocks(self) -> tuple[CnfOrdinal, ...]:
        return tuple(limit_part(g) for g in self.generators)

    def issubset(self, other) -> bool:
        if isinstance(other, GenSuccSet):
            return all(g in other for g in self.generators)
        if hasattr(other, "contains_tail"):
            return all(other.contains_tail(g) for g in self.generators)
        raise TypeError("cannot decide inclusion of an infinite set in a finite one")

    def members_sample(self, per_generator: int = 3) -> Iterator[CnfOrdinal]:
        for g in self.generators:
            x = g
            for _ in range(per_generator):
                yield x
                x = cnf_succ(x)

    def union(self, other: GenSuccSet) -> GenSuccSet:
        return GenSuccSet(self.generators + other.generators)


def gen_member(x: CnfOrdinal, I: GenSuccSet) -> bool:
    """x = g + n for some generator g and natural n."""
    lam = limit_part(x)
    return any(limit_part(g) == lam and finite_part(x) >= finite_part(g) for g in I.generators)


def gen_sup(I: GenSuccSet) -> CnfOrdinal:
    """The least ordinal above every member of I (a limit ordinal)."""
    if not I.generators:
        raise PreconditionError("gen_sup needs at least one generator")
    return max(plus_omega(limit_part(g)) for g in I.generators)


class CnfSet:
    """A finite set of points together with a GenSuccSet of tails."""

    __slots__ = ("points", "tails")

    def __init__(self, points: Iterable = (), tails: GenSuccSet | Iterable = ()):
        tails = tails if isinstance(tails, GenSuccSet) else GenSuccSet(tails)
        pts = {p for p in map(cnf, points) if not gen_member(p, tails)}
        # absorb runs of points that lead straight into a tail
        starts = []
        for t in tails.generators:
            while (q := predecessor(t)) is not None and q in pts:
                pts.discard(q)
                t = q
            starts.append(t)
        self.tails = GenSuccSet(starts)
        self.points = frozenset(pts)

    def __eq__(self, other):
        if not isinstance(other, CnfSet):
            return NotImplemented
        return self.points == other.points and self.tails == other.tails

    def __hash__(self):
        return hash((self.points, self.tails))

    def __repr__(self):
        pts = ", ".join(map(str, sorted(self.points)))
        return f"CnfSet({{{pts}}} ∪ {self.tails!r})"

    def __contains__(self, x) -> bool:
        x = cnf(x)
        return x in self.points or gen_member(x, self.tails)

    def is_finite(self) -> bool:
        return self.tails.is_finite()

    def is_empty(self) -> bool:
        return not self.points and not self.tails

    def contains_tail(self, g: CnfOrdinal) -> bool:
        """Whether g, g+1, g+2, ... all lie in the set."""
        lam, k = limit_part(g), finite_part(g)
        for t in self.tails.generators:
            if limit_part(t) == lam:
                start = finite_part(t)
                return all(_offset(lam, j) in self.points for j in range(k, start))
        return False

    def issubset(self, other) -> bool:
        if any(p not in other for p in self.points):
            return False
        return self.tails.issubset(other)

    def maximum(self) -> CnfOrdinal | None:
        if self.tails or not self.points:
            return None
        return max(self.points)

    def is_successor_closed(self) -> bool:
        return all(cnf_succ(p) in self for p in self.points)

    def incremented_join(self) -> CnfOrdinal:
        """The least ordinal strictly above every member."""
        cands = [ZERO]
        if self.tails:
            cands.append(gen_sup(self.tails))
        if self.points:
            cands.append(cnf_succ(max(self.points)))
        return max(cands)

    def join(self) -> CnfOrdinal:
        """The least upper bound (0 for the empty set)."""
        top = max(self.points) if self.points else None
        if self.tails:
            sup = gen_sup(self.tails)
            return top if top is not None and top >= sup else sup
        return top if top is not None else ZERO

    def sample(self, per_tail: int = 3) -> list[CnfOrdinal]:
        return sorted(set(self.points) | set(self.tails.members_sample(per_tail)))


def _offset(lam: CnfOrdinal, j: int) -> CnfOrdinal:
    """lam + j."""
    return _add_term(list(lam.terms), ZERO, j) if j else lam


def down_set(x: CnfOrdinal) -> CnfSet | None:
    """{y | y < x} as a CnfSet, or None when it is not finitely generated
    (x has a term with exponent above 1)."""
    x = cnf(x)
    if any(cnf_cmp(e, ONE) > 0 for e, _ in x.terms):
        return None
    blocks = 0
    k = 0
    for e, c in x.terms:
        if e == ONE:
            blocks = c
        else:
            k = c
    tails = [omega_power(1, i) if i else ZERO for i in range(blocks)]
    base = omega_power(1, blocks) if blocks else ZERO
    return CnfSet([_offset(base, j) for j in range(k)], tails)


def random_below(rng: random.Random, bound: CnfOrdinal, max_coeff: int = 9,
                 max_terms: int = 3) -> CnfOrdinal:
    """A random ordinal strictly below `bound` (bound > 0)."""
    bound = cnf(bound)
    if not bound:
        raise PreconditionError("nothing below 0")
    if bound.is_finite():
        return nat(rng.randrange(int(bound)))
    lead = bound.terms[0][0]
    exp_bound = cnf_succ(lead)
    while True:
        exps = sorted({random_below(rng, exp_bound, max_coeff, max_terms)
                       for _ in range(rng.randint(0, max_terms))}, reverse=True)
        x = CnfOrdinal([(e, rng.randint(1, max_coeff)) for e in exps])
        if x < bound:
            return x


def grid_below(bound: CnfOrdinal, max_coeff: int = 3) -> list[CnfOrdinal]:
    """Deterministic grid: every ordinal below `bound` whose coefficients
    are at most `max_coeff` and whose exponents lie on the grid below the
    leading exponent of `bound` (inclusive)."""
    bound = cnf(bound)
    if not bound:
        return []
    if bound.is_finite():
        return [nat(i) for i in range(int(bound))]
    lead = bound.terms[0][0]
    exps = sorted(set(grid_below(cnf_succ(lead), max_coeff)), reverse=True)
    out: list[CnfOrdinal] = []

    def build(i, terms):
        if i == len(exps):
            x = CnfOrdinal(terms)
            if x < bound:
                out.append(x)
            return
        build(i + 1, terms)
        for c in range(1, max_coeff + 1):
            build(i + 1, terms + [(exps[i], c)])

    build(0, [])
    return sorted(set(out))


def sample_suborder(samples: Iterable[CnfOrdinal]) -> Poset:
    """The finite sub-order on the samples together with their successors."""
    pts = set()
    for x in samples:
        pts.add(x)
        pts.add(cnf_succ(x))
    return Poset.from_masks(*_chain_masks(sorted(pts)))


def _chain_masks(elems: list) -> tuple[list, list[int]]:
    n = len(elems)
    full = (1 << n) - 1
    return elems, [full & ~((1 << (i + 1)) - 1) for i in range(n)]
