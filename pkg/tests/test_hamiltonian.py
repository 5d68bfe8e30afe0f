"""Hamiltonian certificates: the checker, the builders, and the search oracle."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noncyclic import (
    Builder,
    SearchStatus,
    build,
    build_graph,
    classify_nilpotent,
    ham_backtrack,
    ham_cycle_nilpotent,
    ham_cycle_pgroup,
    induced_on_omega,
    multipartite_ham_path,
    parse_spec,
    pi_ordering,
    verify_certificate,
)
from noncyclic.errors import ContractViolationError, InfeasiblePathError


def G(text: str):
    return build(parse_spec(text))


def graph_of(text: str):
    group = G(text)
    return group, build_graph(group)


# -- certificate checking ----------------------------------------------------------


def test_checker_accepts_the_seven_vertex_cycle():
    group, graph = graph_of("Z4 x Z2")
    cert = ham_cycle_pgroup(group)
    assert verify_certificate(graph, cert)
    cycle = list(cert.cycle)
    assert verify_certificate(graph, cycle[3:] + cycle[:3])
    assert verify_certificate(graph, cycle[::-1])


def test_checker_rejects_repeats_and_omissions():
    group, graph = graph_of("Z4 x Z2")
    cycle = list(ham_cycle_pgroup(group).cycle)
    assert not verify_certificate(graph, cycle[:-1] + [cycle[0]])
    assert not verify_certificate(graph, cycle[:-1])


def test_checker_rejects_non_edges():
    group, graph = graph_of("Z4 x Z2")
    u = group.labels.index("(1,0)")
    v = group.labels.index("(3,0)")
    cycle = list(ham_cycle_pgroup(group).cycle)
    i, j = cycle.index(u), cycle.index(v)
    cycle[(i + 1) % len(cycle)], cycle[j] = cycle[j], cycle[(i + 1) % len(cycle)]
    assert not verify_certificate(graph, cycle)


def test_checker_rejects_tiny_cycles(synthetic_graph):
    square = synthetic_graph("square")
    assert not verify_certificate(square, [0, 1])


# -- multipartite paths ------------------------------------------------------------


def test_multipartite_path_all_endpoint_pairs():
    """Three parts of size two admit a path between any cross-part pair."""
    _, graph = graph_of("Q8")
    view = induced_on_omega(graph, 4)
    assert view.n_parts == 3
    vertices = [v for part in view.parts for v in part]
    for start in vertices:
        for end in vertices:
            if view.part_index_of(start) == view.part_index_of(end):
                continue
            path = multipartite_ham_path(view, start, end)
            assert path[0] == start and path[-1] == end
            assert sorted(path) == sorted(vertices)
            for a, b in zip(path, path[1:]):
                assert view.part_index_of(a) != view.part_index_of(b)
                assert graph.has_edge(a, b)


def test_multipartite_path_free_end():
    _, graph = graph_of("Z4 x Z2")
    view = induced_on_omega(graph, 4)
    path = multipartite_ham_path(view, view.parts[1][0])
    assert len(path) == 4
    assert path[0] == view.parts[1][0]


def test_multipartite_path_rejects_same_part_endpoints():
    _, graph = graph_of("Q8")
    view = induced_on_omega(graph, 4)
    part = view.parts[0]
    with pytest.raises(InfeasiblePathError):
        multipartite_ham_path(view, part[0], part[1])


def test_multipartite_path_rejects_single_part():
    from noncyclic import MultipartiteView

    view = MultipartiteView(3, [(0, 1)])
    with pytest.raises(InfeasiblePathError):
        multipartite_ham_path(view, 0)


# -- coprime products --------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(
    dims=st.sampled_from([(2, 3, 5), (4, 3, 5), (2, 9, 5), (8, 3, 5), (4, 9, 5)]),
    data=st.data(),
)
def test_componentwise_powers_stay_in_the_generated_subgroup(dims, data):
    """In a coprime direct product, componentwise powers of y lie inside <y>."""
    a, b, c = dims
    group = G(f"Z{a} x Z{b} x Z{c}")
    member = group.membership_matrix()
    y = data.draw(st.tuples(
        st.integers(0, a - 1), st.integers(0, b - 1), st.integers(0, c - 1)
    ))
    ks = data.draw(st.tuples(st.integers(0, 40), st.integers(0, 40), st.integers(0, 40)))
    x = ((y[0] * ks[0]) % a, (y[1] * ks[1]) % b, (y[2] * ks[2]) % c)
    y_idx = group.labels.index(f"({y[0]},{y[1]},{y[2]})")
    x_idx = group.labels.index(f"({x[0]},{x[1]},{x[2]})")
    assert bool(member[x_idx, y_idx])


# -- block orderings ---------------------------------------------------------------


def test_block_ordering_for_exponent_eighteen():
    group = G("Z2 x Z2 x Z9 x Z3")
    ordering = pi_ordering(group)
    shapes = [(blk.prime, blk.exponent, blk.orders) for blk in ordering.blocks]
    assert shapes == [(3, 2, (18, 9)), (3, 1, (3, 6)), (2, 1, (2,))]
    assert ordering.order_sequence() == (18, 9, 3, 6, 2)


def test_block_ordering_rejects_single_prime():
    with pytest.raises(ContractViolationError):
        pi_ordering(G("Z4 x Z2"))


def test_block_ordering_rejects_squarefree_two_prime_exponent():
    with pytest.raises(ContractViolationError):
        pi_ordering(G("Z2 x Z2 x Z3 x Z3"))


# -- the search oracle -------------------------------------------------------------


def test_backtrack_finds_triangle(synthetic_graph):
    outcome = ham_backtrack(synthetic_graph("triangle"))
    assert outcome.status is SearchStatus.FOUND
    assert outcome.certificate.builder is Builder.BACKTRACKING
    assert verify_certificate(synthetic_graph("triangle"), outcome.certificate)


def test_backtrack_proves_absence_on_paths(synthetic_graph):
    outcome = ham_backtrack(synthetic_graph("path4"))
    assert outcome.status is SearchStatus.PROVEN_ABSENT
    assert outcome.certificate is None


def test_backtrack_short_circuits_on_low_degree(synthetic_graph):
    outcome = ham_backtrack(synthetic_graph("star3"))
    assert outcome.status is SearchStatus.PROVEN_ABSENT
    assert outcome.expansions == 0


def test_backtrack_honors_the_budget():
    _, graph = graph_of("Z2 x Z2 x Z7")
    outcome = ham_backtrack(graph, budget=3)
    assert outcome.status is SearchStatus.BUDGET_EXHAUSTED
    assert outcome.expansions <= 3


def test_backtrack_rejects_nonpositive_budget(synthetic_graph):
    with pytest.raises(ContractViolationError):
        ham_backtrack(synthetic_graph("square"), budget=0)


# -- constructive builders ---------------------------------------------------------

ROUTE_SPECS = [
    "Z2 x Z2",            # one prime, one layer
    "Z3 x Z3",            # odd prime, four classes
    "Z4 x Z2",            # one prime, two layers
    "Z4 x Z4",            # one prime, equal layers
    "Z2 x Z8",            # one prime, lopsided layers
    "Q8",                 # maximal class, collapses to a Klein quotient
    "D16",                # dihedral chain
    "SD32",               # semidihedral chain
    "Z3 x Q8",            # quaternion with a coprime cyclic factor
    "Z5 x D8",            # dihedral with a coprime cyclic factor
    "Z3 x Z3 x D8",       # maximal class walking an odd block first
    "Z2 x Z2 x Z3 x Z3",  # squarefree two-prime exponent
    "Z2 x Z2 x Z9",       # block walk over exponent 18
    "Z4 x Z2 x Z3 x Z3",  # block walk with a deeper two-part
    "Z15 x Z2 x Z2",      # cyclic part folded away by the quotient
    "Z5 x Z3 x Z3 x Z4 x Z2",  # three primes after the quotient
]


@pytest.mark.parametrize("text", ROUTE_SPECS)
def test_constructive_routes_verify(text):
    group = G(text)
    graph = build_graph(group)
    cert = ham_cycle_nilpotent(group)
    assert cert.builder is Builder.CONSTRUCTIVE
    assert len(cert) == graph.n_vertices
    assert verify_certificate(graph, cert)


def test_constructive_rejects_cyclic_groups():
    with pytest.raises(ContractViolationError):
        ham_cycle_nilpotent(G("Z12"))


def test_constructive_rejects_non_nilpotent_groups():
    with pytest.raises(ContractViolationError):
        ham_cycle_nilpotent(G("Dih3"))


def test_pgroup_builder_matches_the_figure():
    group, graph = graph_of("Z4 x Z2")
    cert = ham_cycle_pgroup(group)
    assert len(cert) == 7
    assert verify_certificate(graph, cert)


def test_pgroup_builder_triangle():
    group, graph = graph_of("Z2 x Z2")
    assert len(ham_cycle_pgroup(group)) == 3


def test_pgroup_builder_single_layer_odd():
    group, graph = graph_of("Z3 x Z3")
    cert = ham_cycle_pgroup(group)
    assert len(cert) == 8
    assert verify_certificate(graph, cert)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("Dih3", "not nilpotent"),
        ("Z8", "cyclic"),
        ("Q8", "maximal class"),
        ("Z2 x Z2 x Z3 x Z3", "non-cyclic Sylow"),
    ],
)
def test_pgroup_builder_rejections(text, fragment):
    with pytest.raises(ContractViolationError, match=fragment):
        ham_cycle_pgroup(G(text))


def test_quotient_lift_covers_every_coset():
    group = G("Z3 x Q8")
    cert = ham_cycle_nilpotent(group)
    assert len(cert) == 18
    assert sorted(cert.cycle) == sorted(build_graph(group).vertices)


def test_oracle_agrees_with_the_builders_on_small_groups():
    for text in ["Z4 x Z2", "Q8", "Z3 x Z3", "Z2 x Z2 x Z3 x Z3", "D16"]:
        group, graph = graph_of(text)
        outcome = ham_backtrack(graph)
        assert outcome.status is SearchStatus.FOUND, text
        assert verify_certificate(graph, outcome.certificate)
