"""Command-line surface for building, inspecting and verifying non-cyclic graphs.

Subcommands construct groups from spec strings, report invariants, export
graphs, produce Hamiltonian certificates, decide codes, and replay the
library's structural claims over the whole built-in catalog.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .catalog import (
    NilpotentClass,
    NilpotentKind,
    _prime_factors,
    build,
    canonical_spec,
    catalog_specs,
    classify_nilpotent,
    parse_spec,
)
from .codes import (
    DEFAULT_CODE_BUDGET,
    DEFAULT_EXHAUSTIVE_CAP,
    find_perfect_code,
    find_total_perfect_code,
    is_perfect_code,
    perfect_code_oracle,
    total_perfect_code_oracle,
)
from .cyclizer import cyclizer, cyclizer_brute, cyclizer_closed_form
from .errors import CapacityError, NoncyclicError, SpecParseError
from .graph import (
    DotOptions,
    NonCyclicGraph,
    SearchStatus,
    build_graph,
    dominating_vertices,
    export_dot,
    graph_json_payload,
    induced_on_omega,
    is_complete_multipartite,
)
from .groups import FiniteGroup, euler_phi
from .hamiltonian import (
    DEFAULT_BACKTRACK_BUDGET,
    ham_backtrack,
    ham_cycle_nilpotent,
    verify_certificate,
)

SCHEMA_ID = "noncyclic-verify-report/1"
BUDGET_ENV = "NONCYCLIC_BUDGET"
SUITES = ("counts", "cyclizer", "multipartite", "hamiltonian", "codes")
ORACLE_ORDER_BOUND = 60
ORACLE_VERTEX_CAP = 24

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

PASS = "pass"
FAIL = "fail"
BUDGET = "budget"


# -- report plumbing ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """One verified property on one group."""

    prop: str
    status: str
    detail: str = ""


@dataclass
class GroupRecord:
    """All checks that ran against a single catalog spec."""

    spec: str
    checks: List[CheckResult] = field(default_factory=list)


@dataclass
class RunReport:
    """Outcome of a verification sweep, stable across identical invocations."""

    suite: str
    max_order: int
    seed: int
    groups: List[GroupRecord]

    def counts(self) -> Tuple[int, int, int]:
        passed = failed = exhausted = 0
        for record in self.groups:
            for check in record.checks:
                if check.status == PASS:
                    passed += 1
                elif check.status == FAIL:
                    failed += 1
                else:
                    exhausted += 1
        return passed, failed, exhausted

    def exit_code(self) -> int:
        passed, failed, exhausted = self.counts()
        if failed:
            return EXIT_FAIL
        if exhausted:
            return EXIT_BUDGET
        return EXIT_OK

    def to_json(self) -> str:
        passed, failed, exhausted = self.counts()
        payload = {
            "schema": SCHEMA_ID,
            "suite": self.suite,
            "max_order": self.max_order,
            "seed": self.seed,
            "groups": [
                {
                    "spec": record.spec,
                    "checks": [
                        {"property": c.prop, "status": c.status, "detail": c.detail}
                        for c in record.checks
                    ],
                }
                for record in self.groups
            ],
            "summary": {
                "groups": len(self.groups),
                "checks": passed + failed + exhausted,
                "passed": passed,
                "failed": failed,
                "budget_exhausted": exhausted,
            },
        }
        return json.dumps(payload, indent=2) + "\n"


def _check(prop: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(prop, PASS if ok else FAIL, "" if ok else detail)


class _GroupContext:
    """Per-group state shared by the suites, with the graph built on demand."""

    def __init__(self, group: FiniteGroup, budget: Optional[int], cap: int) -> None:
        self.group = group
        self.cls = classify_nilpotent(group)
        self.budget = budget
        self.cap = cap
        self._graph: Optional[NonCyclicGraph] = None

    @property
    def graph(self) -> NonCyclicGraph:
        if self._graph is None:
            self._graph = build_graph(self.group)
        return self._graph


# -- verification suites -----------------------------------------------------------


def _p_adic(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _counts_checks(ctx: _GroupContext) -> List[CheckResult]:
    """Cyclic-subgroup counting laws: congruences plus the exact 2-group formulas."""
    g, cls = ctx.group, ctx.cls
    checks = []
    primes = _prime_factors(g.order)
    for p in primes:
        got = g.class_count(p)
        checks.append(
            _check(
                "prime-class-count-congruence",
                got % p == 1,
                f"m_{p} = {got}, not 1 mod {p}",
            )
        )
    if len(primes) == 1:
        p = primes[0]
        expect_one = g.is_cyclic() or cls.kind is NilpotentKind.SYLOW2_QUATERNION
        got = g.class_count(p)
        checks.append(
            _check(
                "unique-prime-class-count",
                (got == 1) == expect_one,
                f"m_{p} = {got}, uniqueness expected: {expect_one}",
            )
        )
        if not g.is_cyclic() and not cls.has_maximal_class_two_part:
            checks.append(
                _check(
                    "pgroup-class-count-congruence",
                    got % (p * p) == 1 + p,
                    f"m_{p} = {got}, not {1 + p} mod {p * p}",
                )
            )
            t = _p_adic(g.exponent(), p)
            bad = [i for i in range(2, t + 1) if g.class_count(p**i) % p != 0]
            checks.append(
                _check(
                    "pgroup-higher-class-counts",
                    not bad,
                    f"m_{{{p}^i}} not divisible by {p} for i in {bad}",
                )
            )
    if cls.has_maximal_class_two_part and len(cls.two_part) == g.order:
        t = cls.t or 0
        if cls.kind is NilpotentKind.SYLOW2_DIHEDRAL:
            want2, want4, tail = 1 + 2**t, None, range(2, t + 1)
        elif cls.kind is NilpotentKind.SYLOW2_QUATERNION:
            want2, want4, tail = 1, 1 + 2 ** (t - 1), range(3, t + 1)
        else:
            want2, want4, tail = 1 + 2 ** (t - 1), 1 + 2 ** (t - 2), range(3, t + 1)
        got2 = g.class_count(2)
        checks.append(
            _check("involution-class-count", got2 == want2, f"m_2 = {got2}, want {want2}")
        )
        if want4 is not None:
            got4 = g.class_count(4)
            checks.append(
                _check("order-four-class-count", got4 == want4, f"m_4 = {got4}, want {want4}")
            )
        bad = [i for i in tail if g.class_count(2**i) != 1]
        checks.append(
            _check("single-class-tail", not bad, f"m_{{2^i}} != 1 for i in {bad}")
        )
    return checks


def _cyclizer_checks(ctx: _GroupContext) -> List[CheckResult]:
    """Closed-form cyclizer against brute force on non-cyclic nilpotent groups."""
    g, cls = ctx.group, ctx.cls
    if not cls.is_nilpotent or cls.kind is NilpotentKind.CYCLIC:
        return []
    closed = cyclizer_closed_form(g, cls)
    brute = cyclizer_brute(g)
    checks = [
        _check(
            "cyclizer-closed-form-agrees",
            closed.cyc_set == brute.cyc_set,
            f"closed form has {len(closed)} elements, brute force {len(brute)}",
        ),
        _check(
            "cyclizer-size-multiplier",
            len(closed) in (cls.n, 2 * cls.n),
            f"|Cyc| = {len(closed)} with cyclic part n = {cls.n}",
        ),
    ]
    return checks


def _multipartite_checks(ctx: _GroupContext) -> List[CheckResult]:
    """Order-class structure: induced multipartite shape and class-count floors."""
    g, cls = ctx.group, ctx.cls
    orders = sorted(set(int(d) for d in g.elem_order if d > 1))
    checks = []
    for m in orders:
        s = g.class_count(m)
        if s < 2:
            continue
        view = induced_on_omega(ctx.graph, m)
        shape_ok = view.n_parts == s and all(
            size == euler_phi(m) for size in view.part_sizes
        )
        checks.append(
            _check(
                "omega-complete-multipartite",
                shape_ok and is_complete_multipartite(ctx.graph, view),
                f"order {m}: expected {s} parts of size {euler_phi(m)}",
            )
        )
    if cls.is_nilpotent and cls.odd_part and cls.n & (cls.n - 1) == 0:
        for d in orders:
            if d & (d - 1) == 0:
                continue
            got = g.class_count(d)
            checks.append(
                _check(
                    "odd-component-class-floor",
                    got >= 3,
                    f"m_{d} = {got}, expected at least 3",
                )
            )
    if cls.kind is NilpotentKind.SYLOW2_GENERIC and cls.n == 1:
        vertex_orders = sorted(set(int(g.elem_order[v]) for v in ctx.graph.vertices))
        for d in vertex_orders:
            got = g.class_count(d)
            checks.append(
                _check(
                    "vertex-order-class-floor",
                    got >= 2,
                    f"m_{d} = {got}, expected at least 2",
                )
            )
    return checks


def _hamiltonian_checks(ctx: _GroupContext) -> List[CheckResult]:
    """Constructive cycle certificates, with an independent search confirming."""
    g, cls = ctx.group, ctx.cls
    if not cls.is_nilpotent or cls.kind is NilpotentKind.CYCLIC:
        return []
    checks = []
    try:
        cert = ham_cycle_nilpotent(g, cls)
        checks.append(
            _check(
                "constructive-cycle-verified",
                verify_certificate(ctx.graph, cert),
                "certificate failed the checker",
            )
        )
    except NoncyclicError as exc:
        checks.append(CheckResult("constructive-cycle-verified", FAIL, str(exc)))
    if g.order <= ORACLE_ORDER_BOUND:
        outcome = ham_backtrack(ctx.graph, budget=ctx.budget or DEFAULT_BACKTRACK_BUDGET)
        if outcome.status is SearchStatus.BUDGET_EXHAUSTED:
            checks.append(
                CheckResult(
                    "backtrack-confirms",
                    BUDGET,
                    f"search stopped after {outcome.expansions} expansions",
                )
            )
        else:
            ok = outcome.status is SearchStatus.FOUND and verify_certificate(
                ctx.graph, outcome.certificate
            )
            checks.append(
                _check("backtrack-confirms", ok, f"search status {outcome.status.value}")
            )
    return checks


def _codes_checks(ctx: _GroupContext) -> List[CheckResult]:
    """Perfect-code equivalences and the no-total-code rule for nilpotent groups."""
    g, cls = ctx.group, ctx.cls
    if g.is_cyclic():
        return []
    graph = ctx.graph
    closed = find_perfect_code(graph)
    dom = dominating_vertices(graph)
    checks = [
        _check(
            "perfect-code-matches-dominating",
            (closed.status is SearchStatus.FOUND) == bool(dom),
            f"closed form {closed.status.value} vs {len(dom)} dominating vertices",
        )
    ]
    if graph.n_vertices > ORACLE_VERTEX_CAP:
        return checks
    oracle = perfect_code_oracle(graph, cap=ctx.cap, budget=ctx.budget or DEFAULT_CODE_BUDGET)
    if oracle.status is SearchStatus.BUDGET_EXHAUSTED:
        checks.append(CheckResult("perfect-code-oracle-agrees", BUDGET, "oracle budget"))
    else:
        checks.append(
            _check(
                "perfect-code-oracle-agrees",
                oracle.status == closed.status,
                f"oracle {oracle.status.value}, closed form {closed.status.value}",
            )
        )
        if oracle.status is SearchStatus.FOUND:
            singleton = len(oracle.vertices) == 1
            involutions = all(int(g.elem_order[v]) == 2 for v in oracle.vertices)
            checks.append(
                _check(
                    "perfect-code-involution-singleton",
                    singleton and involutions and is_perfect_code(graph, oracle.vertices),
                    f"oracle code {list(oracle.vertices)}",
                )
            )
    if cls.is_nilpotent:
        total = total_perfect_code_oracle(graph, budget=ctx.budget or DEFAULT_CODE_BUDGET)
        if total.status is SearchStatus.BUDGET_EXHAUSTED:
            checks.append(CheckResult("total-code-absent-for-nilpotent", BUDGET, "oracle budget"))
        else:
            checks.append(
                _check(
                    "total-code-absent-for-nilpotent",
                    total.status is SearchStatus.PROVEN_ABSENT,
                    f"oracle says {total.status.value}",
                )
            )
    return checks


_SUITE_DISPATCH: Dict[str, Callable[[_GroupContext], List[CheckResult]]] = {
    "counts": _counts_checks,
    "cyclizer": _cyclizer_checks,
    "multipartite": _multipartite_checks,
    "hamiltonian": _hamiltonian_checks,
    "codes": _codes_checks,
}


def run_verify(
    suite: str,
    max_order: int,
    seed: int,
    budget: Optional[int] = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> RunReport:
    """Replay the selected suite over every catalog spec up to max_order."""
    if max_order < 4:
        raise CapacityError(f"max_order must be at least 4, got {max_order}")
    names = SUITES if suite == "all" else (suite,)
    rng = np.random.default_rng(seed)
    records = []
    for spec in catalog_specs(max_order):
        group = build(spec, max_order=max_order, validate=True, rng=rng)
        ctx = _GroupContext(group, budget=budget, cap=cap)
        record = GroupRecord(canonical_spec(spec))
        for name in names:
            record.checks.extend(_SUITE_DISPATCH[name](ctx))
        records.append(record)
    records.sort(key=lambda record: record.spec)
    return RunReport(suite, max_order, seed, records)


# -- shared output helpers ---------------------------------------------------------


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _labels(group: FiniteGroup, elements: Sequence[int]) -> List[str]:
    return [group.labels[int(v)] for v in elements]


def _build_from_arg(text: str, max_order: int) -> FiniteGroup:
    return build(parse_spec(text), max_order=max_order)


# -- subcommand handlers -----------------------------------------------------------


def _cmd_catalog(args: argparse.Namespace) -> int:
    specs = catalog_specs(args.max_order, include_dihedral_extras=not args.no_extras)
    if args.json is not None:
        rows = [{"spec": canonical_spec(s), "order": s.order} for s in specs]
        _emit(json.dumps(rows, indent=2) + "\n", args.json)
        return EXIT_OK
    for spec in specs:
        print(f"{spec.order:6d}  {canonical_spec(spec)}")
    print(f"{len(specs)} specs up to order {args.max_order}")
    return EXIT_OK


def _cmd_info(args: argparse.Namespace) -> int:
    group = _build_from_arg(args.spec, args.max_order)
    cls = classify_nilpotent(group)
    cyc = cyclizer(group, cls)
    orders = sorted(set(int(d) for d in group.elem_order))
    class_counts = [[d, group.class_count(d)] for d in orders]
    n_max = len(group.maximal_cyclic_subgroups())
    n_vertices = group.order - len(cyc)
    payload = {
        "spec": group.name,
        "order": group.order,
        "exponent": group.exponent(),
        "primes": _prime_factors(group.order),
        "nilpotent_kind": cls.kind.value,
        "cyclic_part": cls.n,
        "class_counts": class_counts,
        "cyclizer_size": len(cyc),
        "cyclizer_method": cyc.method.value,
        "maximal_cyclic_subgroups": n_max,
        "graph_vertices": n_vertices,
    }
    if args.json is not None:
        _emit(json.dumps(payload, indent=2) + "\n", args.json)
        return EXIT_OK
    print(f"{group.name}: order {group.order}, exponent {group.exponent()}")
    print(f"  primes: {', '.join(str(p) for p in _prime_factors(group.order))}")
    print(f"  nilpotent kind: {cls.kind.value} (cyclic part {cls.n})")
    print("  class counts: " + "  ".join(f"m_{d}={m}" for d, m in class_counts))
    print(f"  cyclizer size: {len(cyc)} ({cyc.method.value})")
    print(f"  maximal cyclic subgroups: {n_max}")
    if group.is_cyclic():
        print(f"  graph: empty ({group.name} is cyclic)")
    else:
        print(f"  graph vertices: {n_vertices}")
    return EXIT_OK


def _cmd_graph(args: argparse.Namespace) -> int:
    group = _build_from_arg(args.spec, args.max_order)
    graph = build_graph(group)
    if graph.warning:
        print(graph.warning, file=sys.stderr)
    wrote = False
    if args.dot is not None:
        highlight: Tuple[Tuple[int, int], ...] = ()
        if args.cycle and not graph.is_empty:
            cert = _certificate_for(group, graph, budget=args.budget)
            cycle = cert.cycle
            highlight = tuple(
                (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
            )
        options = DotOptions(color_by_order=args.color_by_order, highlight=highlight)
        _emit(export_dot(graph, options), args.dot)
        wrote = True
    if args.json is not None:
        payload = graph_json_payload(graph, group.name)
        _emit(json.dumps(payload, indent=2) + "\n", args.json)
        wrote = True
    if not wrote:
        print(f"{group.name}: {graph.n_vertices} vertices, {graph.n_edges} edges")
        degs = graph.degrees
        if graph.n_vertices:
            print(f"  degree range: {int(degs.min())}..{int(degs.max())}")
            dom = dominating_vertices(graph)
            print(f"  dominating vertices: {_labels(group, dom) if dom else 'none'}")
    return EXIT_OK


def _cmd_cyclizer(args: argparse.Namespace) -> int:
    group = _build_from_arg(args.spec, args.max_order)
    cls = classify_nilpotent(group)
    if args.method == "brute-force":
        result = cyclizer_brute(group)
    elif args.method == "closed-form":
        result = cyclizer_closed_form(group, cls)
    else:
        result = cyclizer(group, cls)
    agrees: Optional[bool] = None
    if args.check:
        agrees = result.cyc_set == cyclizer_brute(group).cyc_set
    if args.json is not None:
        payload = {
            "spec": group.name,
            "method": result.method.value,
            "size": len(result),
            "elements": _labels(group, result.cyc_set),
        }
        if agrees is not None:
            payload["agrees_with_brute_force"] = agrees
        _emit(json.dumps(payload, indent=2) + "\n", args.json)
    else:
        print(
            f"Cyc({group.name}) has {len(result)} elements ({result.method.value}): "
            + ", ".join(_labels(group, result.cyc_set))
        )
        if agrees is not None:
            print(f"  agrees with brute force: {agrees}")
    if agrees is False:
        return EXIT_FAIL
    return EXIT_OK


def _certificate_for(group: FiniteGroup, graph: NonCyclicGraph, budget: Optional[int]):
    """Constructive certificate when the theory applies, else bounded search."""
    cls = classify_nilpotent(group)
    if cls.is_nilpotent and cls.kind is not NilpotentKind.CYCLIC:
        return ham_cycle_nilpotent(group, cls)
    outcome = ham_backtrack(graph, budget=budget or DEFAULT_BACKTRACK_BUDGET)
    if outcome.status is SearchStatus.BUDGET_EXHAUSTED:
        raise CapacityError(
            f"cycle search for {group.name} stopped after {outcome.expansions} expansions"
        )
    if outcome.status is SearchStatus.PROVEN_ABSENT:
        raise NoncyclicError(f"{group.name} has no Hamiltonian cycle")
    return outcome.certificate


def _cmd_hamiltonian(args: argparse.Namespace) -> int:
    group = _build_from_arg(args.spec, args.max_order)
    graph = build_graph(group)
    if graph.is_empty:
        print(f"{group.name} is cyclic; the graph is empty", file=sys.stderr)
        return EXIT_USAGE
    if args.builder == "backtracking":
        outcome = ham_backtrack(graph, budget=args.budget or DEFAULT_BACKTRACK_BUDGET)
        if outcome.status is SearchStatus.BUDGET_EXHAUSTED:
            print(
                f"no verdict for {group.name}: budget exhausted after "
                f"{outcome.expansions} expansions",
                file=sys.stderr,
            )
            return EXIT_BUDGET
        if outcome.status is SearchStatus.PROVEN_ABSENT:
            print(f"{group.name}: no Hamiltonian cycle exists")
            return EXIT_OK
        cert = outcome.certificate
    else:
        cert = ham_cycle_nilpotent(group)
    verified = verify_certificate(graph, cert)
    if args.json is not None:
        payload = {
            "spec": group.name,
            "n_vertices": graph.n_vertices,
            "method": cert.builder.value,
            "cycle": _labels(group, cert.cycle),
            "verified": verified,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.json)
    else:
        print(
            f"{group.name}: Hamiltonian cycle on {graph.n_vertices} vertices "
            f"({cert.builder.value}), verified: {verified}"
        )
        print("  " + " -> ".join(_labels(group, cert.cycle)))
    return EXIT_OK if verified else EXIT_FAIL


def _code_payload(group: FiniteGroup, cert) -> dict:
    return {
        "status": cert.status.value,
        "vertices": _labels(group, cert.vertices),
    }


def _cmd_codes(args: argparse.Namespace) -> int:
    group = _build_from_arg(args.spec, args.max_order)
    cls = classify_nilpotent(group)
    graph = build_graph(group)
    if graph.is_empty:
        print(f"{group.name} is cyclic; the graph is empty", file=sys.stderr)
        return EXIT_USAGE
    budget = args.budget or DEFAULT_CODE_BUDGET
    payload: Dict[str, object] = {"spec": group.name}
    lines: List[str] = []
    exit_code = EXIT_OK
    if args.kind in ("perfect", "both"):
        closed = find_perfect_code(graph)
        entry = _code_payload(group, closed)
        entry["method"] = "closed-form"
        lines.append(
            f"perfect code ({closed.status.value}): "
            + (", ".join(_labels(group, closed.vertices)) or "none")
        )
        if args.oracle:
            oracle = perfect_code_oracle(graph, cap=args.cap, budget=budget)
            entry["oracle"] = _code_payload(group, oracle)
            if oracle.status is SearchStatus.BUDGET_EXHAUSTED:
                lines.append("  oracle: budget exhausted")
                exit_code = max(exit_code, EXIT_BUDGET)
            else:
                agrees = oracle.status == closed.status
                entry["agrees"] = agrees
                lines.append(f"  oracle agrees: {agrees} ({oracle.status.value})")
                if not agrees:
                    exit_code = max(exit_code, EXIT_FAIL)
        payload["perfect"] = entry
    if args.kind in ("total", "both"):
        total = find_total_perfect_code(graph, cls, budget=budget)
        entry = _code_payload(group, total)
        entry["method"] = "nilpotent-rule" if cls.is_nilpotent else "oracle"
        lines.append(
            f"total perfect code ({total.status.value}): "
            + (", ".join(_labels(group, total.vertices)) or "none")
        )
        if total.status is SearchStatus.BUDGET_EXHAUSTED:
            exit_code = max(exit_code, EXIT_BUDGET)
        if args.oracle and cls.is_nilpotent:
            oracle = total_perfect_code_oracle(graph, budget=budget)
            entry["oracle"] = _code_payload(group, oracle)
            if oracle.status is SearchStatus.BUDGET_EXHAUSTED:
                lines.append("  oracle: budget exhausted")
                exit_code = max(exit_code, EXIT_BUDGET)
            else:
                agrees = oracle.status == total.status
                entry["agrees"] = agrees
                lines.append(f"  oracle agrees: {agrees} ({oracle.status.value})")
                if not agrees:
                    exit_code = max(exit_code, EXIT_FAIL)
        payload["total"] = entry
    if args.json is not None:
        _emit(json.dumps(payload, indent=2) + "\n", args.json)
    else:
        print(f"{group.name}:")
        for line in lines:
            print("  " + line)
    return exit_code


def _cmd_verify(args: argparse.Namespace) -> int:
    started = time.monotonic()
    report = run_verify(
        args.suite,
        max_order=args.max_order,
        seed=args.seed,
        budget=args.budget,
        cap=args.cap,
    )
    if args.json is not None:
        _emit(report.to_json(), args.json)
        return report.exit_code()
    passed, failed, exhausted = report.counts()
    print(f"verify {report.suite}: max order {report.max_order}, seed {report.seed}")
    for record in report.groups:
        for check in record.checks:
            if check.status == FAIL:
                print(f"  FAIL {record.spec} :: {check.prop} :: {check.detail}")
            elif check.status == BUDGET:
                print(f"  BUDGET {record.spec} :: {check.prop} :: {check.detail}")
    elapsed = time.monotonic() - started
    print(
        f"  {len(report.groups)} groups, {passed + failed + exhausted} checks: "
        f"{passed} passed, {failed} failed, {exhausted} budget-exhausted"
        f" ({elapsed:.1f}s)"
    )
    return report.exit_code()


# -- argument parsing --------------------------------------------------------------


def _load_config(path: Optional[str]) -> Dict[str, object]:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict):
        raise SpecParseError(f"config file {path} must hold a JSON object")
    allowed = {"max_order", "seed", "budget", "cap"}
    unknown = set(config) - allowed
    if unknown:
        raise SpecParseError(
            f"config file {path} has unknown keys: {', '.join(sorted(unknown))}"
        )
    return config


def _apply_defaults(args: argparse.Namespace) -> None:
    """Fill unset options from the config file, then the environment."""
    config = _load_config(args.config)
    for key in ("max_order", "seed", "budget", "cap"):
        if getattr(args, key, None) is None and key in config:
            setattr(args, key, int(config[key]))  # type: ignore[arg-type]
    if getattr(args, "budget", None) is None and os.environ.get(BUDGET_ENV):
        args.budget = int(os.environ[BUDGET_ENV])
    order_fallback = 60 if args.command == "verify" else 4096
    for key, fallback in (
        ("max_order", order_fallback),
        ("seed", 0),
        ("cap", DEFAULT_EXHAUSTIVE_CAP),
    ):
        if getattr(args, key, None) is None:
            setattr(args, key, fallback)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file; flags win")
    common.add_argument(
        "--max-order", dest="max_order", type=int, metavar="N",
        help="largest group order to build (default 4096)",
    )
    common.add_argument(
        "--budget", type=int, metavar="N",
        help=f"search budget in expansions (env {BUDGET_ENV})",
    )

    parser = argparse.ArgumentParser(
        prog="noncyclic",
        description="Build finite groups, explore their non-cyclic graphs, and "
        "verify the library's structural claims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list the built-in group specs")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.add_argument("--no-extras", action="store_true", help="skip odd dihedral groups")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("info", parents=[common], help="orders, class counts and the cyclizer")
    p.add_argument("spec")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("graph", parents=[common], help="summarize or export the graph")
    p.add_argument("spec")
    p.add_argument("--dot", nargs="?", const="-", metavar="PATH", help="write DOT")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help="write JSON")
    p.add_argument("--color-by-order", action="store_true")
    p.add_argument("--cycle", action="store_true", help="highlight a Hamiltonian cycle")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("cyclizer", parents=[common], help="compute the cyclizer")
    p.add_argument("spec")
    p.add_argument(
        "--method", choices=("auto", "closed-form", "brute-force"), default="auto"
    )
    p.add_argument("--check", action="store_true", help="compare against brute force")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.set_defaults(func=_cmd_cyclizer)

    p = sub.add_parser("hamiltonian", parents=[common], help="produce a cycle certificate")
    p.add_argument("spec")
    p.add_argument(
        "--builder", choices=("constructive", "backtracking"), default="constructive"
    )
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.set_defaults(func=_cmd_hamiltonian)

    p = sub.add_parser("codes", parents=[common], help="decide perfect and total codes")
    p.add_argument("spec")
    p.add_argument("--kind", choices=("perfect", "total", "both"), default="both")
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive oracle")
    p.add_argument("--cap", type=int, metavar="N", help="exhaustive-candidate cap")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.set_defaults(func=_cmd_codes)

    p = sub.add_parser("verify", parents=[common], help="replay the claim suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, metavar="N", help="seed for table spot checks")
    p.add_argument("--cap", type=int, metavar="N", help="exhaustive-candidate cap")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_defaults(args)
        return args.func(args)
    except (SpecParseError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoncyclicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main(None))
