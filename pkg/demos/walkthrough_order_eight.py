"""A guided tour of one small group and everything this library does with it.

The group Z4 x Z2 is the smallest abelian group whose non-cyclic graph is
interesting: seven vertices, a Hamiltonian cycle, and a perfect code. This
script builds each piece and prints the intermediate objects so the output
reads like a worked example.
"""

from __future__ import annotations

from noncyclic import (
    build,
    build_graph,
    cyclizer,
    dominating_vertices,
    find_perfect_code,
    ham_cycle_nilpotent,
    induced_on_omega,
    parse_spec,
    verify_certificate,
)


def main() -> None:
    spec = parse_spec("Z4 x Z2")
    group = build(spec)
    print(f"group {group.name}: order {group.order}, exponent {group.exponent()}")

    for m in group.element_orders():
        members = [group.labels[v] for v in group.omega(m)]
        print(f"  order {m}: {len(members)} elements, "
              f"{group.class_count(m)} cyclic subgroup(s): {' '.join(members)}")

    cyc = cyclizer(group)
    print(f"cyclizer: {[group.labels[x] for x in cyc.cyc_set]} "
          f"({cyc.method.value})")

    graph = build_graph(group)
    print(f"graph: {graph.n_vertices} vertices, {graph.n_edges} edges")
    for v in graph.vertices:
        others = [graph.vertex_labels[graph.position_of(u)] for u in graph.neighbors(v)]
        label = graph.vertex_labels[graph.position_of(v)]
        print(f"  {label} ~ {' '.join(others)}")

    view = induced_on_omega(graph, 4)
    parts = [[group.labels[v] for v in part] for part in view.parts]
    print(f"order-4 vertices split into {view.n_parts} parts: {parts}")

    cert = ham_cycle_nilpotent(group)
    cycle = [group.labels[v] for v in cert.cycle]
    print(f"hamiltonian cycle ({cert.builder.value}): {' -> '.join(cycle)}")
    print(f"checker agrees: {verify_certificate(graph, cert)}")

    code = find_perfect_code(graph)
    witness = [group.labels[v] for v in code.vertices]
    doms = [group.labels[v] for v in dominating_vertices(graph)]
    print(f"perfect code: {witness} (status {code.status.value})")
    print(f"dominating vertices: {doms}")


if __name__ == "__main__":
    main()
