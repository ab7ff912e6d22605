"""Command-line entry point.

Exit codes: 0 when every check passes (bounded passes included), 1 when
any check fails, 2 for usage or input-format errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import lss
from .category import initial_morphism, is_morphism, uniqueness_check
from .cnf import cnf
from .errors import ContractError, DomainError, OrdsysError, ParseError, PreconditionError
from .hfsets import Universe, universe_lemma_suite
from .ordinal_system import (
    CnfCarrier, FiniteChain, NatSegment, VNSegment, check_O1prime,
    check_O2ab_equivalence, check_well_order, classify_limit, transfinite_recursion,
    verify_recursion,
)
from .category import as_recursion_target
from .report import CheckReport
from .search import SearchSpec, enumerate_systems

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_system(path: str) -> lss.FiniteLSS:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return lss.FiniteLSS.from_json(text)


def _parse_subset(text: str, n: int) -> int:
    try:
        items = json.loads(text)
    except json.JSONDecodeError:
        raise ParseError(f"subset must be a JSON list, got {text!r}") from None
    if not isinstance(items, list) or not all(isinstance(i, int) and 0 <= i < n for i in items):
        raise ParseError(f"subset must list carrier indices below {n}")
    return sum(1 << i for i in set(items))


def parse_carrier(text: str, universe: Universe | None = None):
    """``nat:6``, ``chain:5``, ``vn:7``, ``cnf:w*2+3`` or ``empty``.

    The universe defaults to CNT for CNF carriers and FIN otherwise."""
    if text == "empty":
        return FiniteChain(0, universe or Universe.FIN)
    m = re.fullmatch(r"(nat|chain|vn|cnf):(.+)", text)
    if not m:
        raise ParseError(f"unknown carrier {text!r}; use nat:N, chain:N, vn:N, cnf:<ordinal> or empty")
    kind, arg = m.groups()
    if kind == "cnf":
        return CnfCarrier(cnf(arg), universe or Universe.CNT)
    universe = universe or Universe.FIN
    if not arg.isdigit():
        raise ParseError(f"{kind} carrier needs a natural size")
    size = int(arg)
    return {"nat": NatSegment, "chain": FiniteChain, "vn": VNSegment}[kind](size, universe)


def _emit(report: CheckReport, args) -> int:
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


# subcommands

def cmd_universe(args) -> int:
    return _emit(universe_lemma_suite(cases=args.cases, seed=args.seed), args)


def cmd_check_ordinal(args) -> int:
    c = parse_carrier(args.carrier, Universe(args.universe) if args.universe else None)
    report = CheckReport(f"ordinal {c.name}")
    for r in (check_well_order(c, seed=args.seed), check_O1prime(c), check_O2ab_equivalence(c)):
        report.extend(r)
    xs = list(c.elements())[: args.limit]
    limits = [str(x) for x in xs if classify_limit(c, x).kind == "limit"]
    report.passed("limit classification", bound=str(c.bound) if isinstance(c, CnfCarrier) else None,
                  note=f"criteria agree on {len(xs)} elements; limits: {', '.join(limits) or 'none'}")
    return _emit(report, args)


def cmd_closure(args) -> int:
    S = _load_system(args.system)
    I = _parse_subset(args.subset, S.n)
    a = S.closure_iterated(I)
    out = {"closure": sorted(a.members), "terms": a.iterations}
    if lss.is_counting_system(S):
        b = S.closure_two_term(I)
        if b.mask != a.mask:
            raise ContractError("the two closure formulas disagree", witness=args.subset)
        out["two_term"] = sorted(b.members)
    print(json.dumps(out["closure"]) if not args.json else json.dumps(out))
    return EXIT_OK


def cmd_spo(args) -> int:
    S = _load_system(args.system)
    P, report = lss.spo_order(S)
    code = _emit(report, args)
    dot = lss.to_dot(S)
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    elif not args.json:
        print(dot, end="")
    return code


def cmd_check_counting(args) -> int:
    S = _load_system(args.system)
    report = CheckReport(f"counting system {S.name}")
    report.extend(lss.check_C1_C2(S))
    report.extend(lss.check_C3_C4_C5(S))
    return _emit(report, args)


def cmd_recursion(args) -> int:
    c = parse_carrier(args.carrier, Universe(args.universe) if args.universe else None)
    T = _load_system(args.target)
    bound = cnf(args.bound) if isinstance(c, CnfCarrier) else int(args.bound)
    table = transfinite_recursion(c, as_recursion_target(T), bound)
    report = verify_recursion(table)
    if not args.json:
        for x, v in table.to_json():
            print(f"f({x}) = {v}")
    return _emit(report, args)


def _source_for(bound_text: str):
    b = cnf(bound_text)
    if b.is_finite():
        return lss.FiniteLSS.peano_window(int(b) + 1), int(b)
    return lss.SymbolicLSS(), b


def cmd_initial_morphism(args) -> int:
    T = _load_system(args.target)
    O, bound = _source_for(args.bound)
    f = initial_morphism(O, T, bound)
    report = is_morphism(f)
    if args.json:
        print(json.dumps({"morphism": f.to_json(), "report": report.to_dict()}, ensure_ascii=False))
        return EXIT_OK if report.ok else EXIT_FAIL
    js = f.to_json()
    points = js.get("points", [str(i) for i in range(len(js["map"]))])
    for x, v in zip(points, js["map"]):
        print(f"f({x}) = {v}")
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_uniqueness(args) -> int:
    T = _load_system(args.target)
    if args.length < 1:
        raise UsageError("segment length must be at least 1")
    O = lss.FiniteLSS.peano_window(args.length)
    return _emit(uniqueness_check(O, T, exhaustive=not args.pruned), args)


def cmd_search(args) -> int:
    text = args.spec
    if Path(text).is_file():
        text = Path(text).read_text(encoding="utf-8")
    try:
        spec = SearchSpec.parse(text, seed=args.seed)
    except (TypeError, ValueError) as e:
        raise ParseError(str(e)) from None
    cat = enumerate_systems(spec, jobs=args.jobs)
    out = cat.to_jsonl()
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
        print(f"{len(cat)} systems written to {args.out}")
    else:
        print(out, end="")
    return EXIT_OK


def cmd_peano(args) -> int:
    return _emit(lss.peano_degeneration_check(_load_system(args.system)), args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordsys", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print reports as JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=int, default=500)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--universe", choices=[u.value for u in Universe], default=None,
                        help="FIN or CNT (default: CNT for cnf carriers, FIN otherwise)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("check-universe-lemmas", cmd_universe, "randomized restricted power-set lemmas")
    sp = add("check-ordinal", cmd_check_ordinal, "ordinal-system checks on a carrier")
    sp.add_argument("carrier")
    sp.add_argument("--limit", type=int, default=64, help="elements to classify")
    sp = add("closure", cmd_closure, "closure of a subset")
    sp.add_argument("system")
    sp.add_argument("subset")
    sp = add("spo", cmd_spo, "specialization order and its DOT diagram")
    sp.add_argument("system")
    sp.add_argument("--dot", help="write the DOT diagram here")
    sp = add("check-counting", cmd_check_counting, "C1-C5 and Properties 0-3")
    sp.add_argument("system")
    sp = add("recursion", cmd_recursion, "transfinite recursion into a finite target")
    sp.add_argument("carrier")
    sp.add_argument("target")
    sp.add_argument("bound")
    sp = add("initial-morphism", cmd_initial_morphism, "the morphism out of the ordinals")
    sp.add_argument("target")
    sp.add_argument("bound")
    sp = add("uniqueness", cmd_uniqueness, "count morphisms out of a segment of the naturals")
    sp.add_argument("target")
    sp.add_argument("length", type=int)
    sp.add_argument("--pruned", action="store_true", help="pruned search instead of a full scan")
    sp = add("search", cmd_search, "enumerate small systems")
    sp.add_argument("spec", help="tokens like 'n=5 C1 C2 !C3 nonempty', JSON, or a file")
    sp.add_argument("--out")
    sp = add("peano-check", cmd_peano, "degeneration to Dedekind's axioms under FIN")
    sp.add_argument("system")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ContractError, DomainError, PreconditionError) as e:
        witness = getattr(e, "witness", None)
        print(f"fail: {e}" + (f" (witness: {witness})" if witness is not None else ""), file=sys.stderr)
        return EXIT_FAIL
    except OrdsysError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
