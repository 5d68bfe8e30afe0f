"""Acceptance gate: ten checks, each printing a single verdict line.

Every check sweeps the group catalog and compares closed-form results
against independent oracles or exact combinatorial expectations. Bounds
and time budgets are asserted, not aspirational.
"""

from __future__ import annotations

import time

from noncyclic import (
    SearchStatus,
    build,
    build_graph,
    classify_nilpotent,
    cyclizer_brute,
    cyclizer_closed_form,
    dominating_vertices,
    ham_backtrack,
    ham_cycle_nilpotent,
    induced_on_omega,
    is_complete_multipartite,
    iter_catalog_groups,
    parse_spec,
    perfect_code_oracle,
    total_perfect_code_oracle,
    verify_certificate,
)
from noncyclic.catalog import NilpotentKind, _prime_factors
from noncyclic.groups import euler_phi
from noncyclic import cli


def _verdict(num: int, name: str, ok: bool) -> None:
    print(f"acceptance {num:02d} {name}: {'pass' if ok else 'fail'}")
    assert ok, f"criterion {num} ({name}) failed"


def test_01_maximal_class_count_formulas():
    ok = False
    try:
        start = time.perf_counter()
        for t in range(2, 7):
            d = build(parse_spec(f"D{2 ** (t + 1)}"))
            assert d.class_count(2) == 1 + 2**t
            assert all(d.class_count(2**i) == 1 for i in range(2, t + 1))

            q = build(parse_spec(f"Q{2 ** (t + 1)}"))
            assert q.class_count(2) == 1
            assert q.class_count(4) == 1 + 2 ** (t - 1)
            assert all(q.class_count(2**i) == 1 for i in range(3, t + 1))

            if t >= 3:
                sd = build(parse_spec(f"SD{2 ** (t + 1)}"))
                assert sd.class_count(2) == 1 + 2 ** (t - 1)
                assert sd.class_count(4) == 1 + 2 ** (t - 2)
                assert all(sd.class_count(2**i) == 1 for i in range(3, t + 1))
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"took {elapsed:.1f}s"
        ok = True
    finally:
        _verdict(1, "maximal class count formulas", ok)


def test_02_cyclizer_closed_form_matches_brute_force():
    ok = False
    try:
        start = time.perf_counter()
        checked = 0
        for spec, group in iter_catalog_groups(200):
            cls = classify_nilpotent(group)
            if not cls.is_nilpotent or group.is_cyclic():
                continue
            closed = cyclizer_closed_form(group, cls)
            brute = cyclizer_brute(group)
            assert set(closed.cyc_set) == set(brute.cyc_set), group.name
            checked += 1
        elapsed = time.perf_counter() - start
        assert checked >= 30, f"only {checked} groups"
        assert elapsed < 60.0, f"took {elapsed:.1f}s"
        ok = True
    finally:
        _verdict(2, "cyclizer closed form matches brute force", ok)


def test_03_order_classes_induce_complete_multipartite_graphs():
    ok = False
    try:
        for spec, group in iter_catalog_groups(60):
            graph = build_graph(group)
            for m in group.element_orders():
                if m == 1 or group.class_count(m) < 2:
                    continue
                view = induced_on_omega(graph, m)
                assert view.n_parts == group.class_count(m), group.name
                assert set(view.part_sizes) == {euler_phi(m)}, group.name
                assert is_complete_multipartite(graph, view), group.name
        ok = True
    finally:
        _verdict(3, "order classes induce complete multipartite graphs", ok)


def test_04_constructive_cycles_verify_and_oracle_confirms():
    ok = False
    try:
        start = time.perf_counter()
        built = confirmed = 0
        for spec, group in iter_catalog_groups(200):
            cls = classify_nilpotent(group)
            if not cls.is_nilpotent or group.is_cyclic():
                continue
            graph = build_graph(group)
            cert = ham_cycle_nilpotent(group, cls)
            assert verify_certificate(graph, cert), group.name
            built += 1
            if group.order <= 60:
                outcome = ham_backtrack(graph)
                assert outcome.status is SearchStatus.FOUND, group.name
                confirmed += 1
        elapsed = time.perf_counter() - start
        assert built >= 30 and confirmed >= 30
        assert elapsed < 120.0, f"took {elapsed:.1f}s"
        ok = True
    finally:
        _verdict(4, "constructive cycles verify and the oracle confirms", ok)


def test_05_eight_element_example_reproduced():
    ok = False
    try:
        group = build(parse_spec("Z4 x Z2"))
        graph = build_graph(group)
        assert graph.n_vertices == 7

        def labels(m):
            return {group.labels[v] for v in group.omega(m)}

        assert labels(4) == {"(1,0)", "(3,0)", "(1,1)", "(3,1)"}
        assert labels(2) == {"(2,0)", "(0,1)", "(2,1)"}
        cert = ham_cycle_nilpotent(group)
        assert verify_certificate(graph, cert)
        ok = True
    finally:
        _verdict(5, "order eight worked example reproduced", ok)


def test_06_perfect_code_equivalence():
    ok = False
    try:
        checked = 0
        for spec, group in iter_catalog_groups(60):
            if group.is_cyclic():
                continue
            graph = build_graph(group)
            if graph.n_vertices > 24:
                continue
            involution_max = any(
                len(sub) == 2 for sub in group.maximal_cyclic_subgroups()
            )
            dominating = bool(dominating_vertices(graph))
            oracle = perfect_code_oracle(graph)
            assert oracle.status is not SearchStatus.BUDGET_EXHAUSTED, group.name
            found = oracle.status is SearchStatus.FOUND
            assert involution_max == dominating == found, group.name
            checked += 1
        assert checked >= 30, f"only {checked} groups"
        ok = True
    finally:
        _verdict(6, "perfect code equivalence holds three ways", ok)


def test_07_perfect_codes_are_involution_singletons():
    ok = False
    try:
        found = 0
        for spec, group in iter_catalog_groups(60):
            if group.is_cyclic():
                continue
            graph = build_graph(group)
            if graph.n_vertices > 24:
                continue
            oracle = perfect_code_oracle(graph)
            if oracle.status is SearchStatus.FOUND:
                assert len(oracle.vertices) == 1, group.name
                assert int(group.elem_order[oracle.vertices[0]]) == 2, group.name
                found += 1
        assert found >= 10, f"only {found} codes found"
        ok = True
    finally:
        _verdict(7, "perfect codes are involution singletons", ok)


def test_08_no_total_perfect_codes_in_nilpotent_groups():
    ok = False
    try:
        start = time.perf_counter()
        checked = 0
        for spec, group in iter_catalog_groups(60):
            cls = classify_nilpotent(group)
            if not cls.is_nilpotent or group.is_cyclic():
                continue
            graph = build_graph(group)
            if graph.n_vertices > 24:
                continue
            outcome = total_perfect_code_oracle(graph)
            assert outcome.status is SearchStatus.PROVEN_ABSENT, group.name
            checked += 1
        elapsed = time.perf_counter() - start
        assert checked >= 20, f"only {checked} groups"
        assert elapsed < 60.0, f"took {elapsed:.1f}s"
        ok = True
    finally:
        _verdict(8, "no total perfect codes in nilpotent groups", ok)


def test_09_count_congruences_and_class_floors():
    ok = False
    try:
        for spec, group in iter_catalog_groups(60):
            for p in _prime_factors(group.order):
                assert group.class_count(p) % p == 1, group.name

            primes = _prime_factors(group.order)
            cls = classify_nilpotent(group)
            if len(primes) == 1:
                p = primes[0]
                quaternion = (
                    cls.kind is NilpotentKind.SYLOW2_QUATERNION
                    and len(cls.two_part) == group.order
                )
                expect_one = group.is_cyclic() or quaternion
                assert (group.class_count(p) == 1) == expect_one, group.name

            if not cls.is_nilpotent or group.is_cyclic():
                continue
            in_cyc = set(cyclizer_closed_form(group, cls).cyc_set)
            odd_with_two_power = bool(cls.odd_part) and (cls.n & (cls.n - 1)) == 0
            plain_two_part = cls.kind is NilpotentKind.SYLOW2_GENERIC and cls.n == 1
            if not (odd_with_two_power or plain_two_part):
                continue
            floor = 3 if odd_with_two_power else 2
            for x in range(group.order):
                if x in in_cyc:
                    continue
                m = int(group.elem_order[x])
                assert group.class_count(m) >= floor, (group.name, m)
        ok = True
    finally:
        _verdict(9, "count congruences and class floors", ok)


def test_10_verification_is_deterministic(tmp_path, capsys):
    ok = False
    try:
        paths = [tmp_path / "first.json", tmp_path / "second.json"]
        for path in paths:
            code = cli.main(
                [
                    "verify", "all",
                    "--seed", "7",
                    "--max-order", "60",
                    "--json", str(path),
                ]
            )
            capsys.readouterr()
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        ok = True
    finally:
        _verdict(10, "verification runs are byte identical", ok)
