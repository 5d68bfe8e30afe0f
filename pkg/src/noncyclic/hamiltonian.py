"""Hamiltonian cycles in non-cyclic graphs.

Certificates come from two independent sources. The constructive builder
walks a nilpotent group through its element-order layers and validates its
own output. The backtracking searcher knows nothing about groups and serves
as the oracle for every constructive claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .catalog import NilpotentClass, NilpotentKind, _prime_factors, classify_nilpotent
from .cyclizer import cyclizer
from .errors import ContractViolationError, InfeasiblePathError, StitchingError
from .graph import (
    MultipartiteView,
    NonCyclicGraph,
    SearchStatus,
    build_graph,
    induced_on_omega,
)
from .groups import FiniteGroup

DEFAULT_BACKTRACK_BUDGET = 10_000_000


class Builder(Enum):
    """How a certificate was produced."""

    CONSTRUCTIVE = "constructive"
    BACKTRACKING = "backtracking"


@dataclass(frozen=True)
class HamiltonianCertificate:
    """A closed spanning tour, stored as element indices in visiting order."""

    cycle: Tuple[int, ...]
    builder: Builder

    def __len__(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class BacktrackOutcome:
    """Result of a bounded cycle search."""

    status: SearchStatus
    certificate: Optional[HamiltonianCertificate]
    expansions: int


@dataclass(frozen=True)
class PiBlock:
    """One run of element orders sharing their leading prime power."""

    prime: int
    exponent: int
    orders: Tuple[int, ...]


@dataclass(frozen=True)
class PiOrdering:
    """Element orders of a group arranged for the descending block walk."""

    blocks: Tuple[PiBlock, ...]

    def order_sequence(self) -> Tuple[int, ...]:
        """All orders, concatenated in walk order."""
        return tuple(m for block in self.blocks for m in block.orders)


def verify_certificate(
    graph: NonCyclicGraph,
    cert: Union[HamiltonianCertificate, Sequence[int]],
) -> bool:
    """Check a cycle against the graph, independently of how it was built.

    True iff the cycle has at least three vertices, visits every vertex of
    the graph exactly once, and consecutive vertices (wrapping around) are
    adjacent.
    """
    cycle = cert.cycle if isinstance(cert, HamiltonianCertificate) else tuple(cert)
    n = graph.n_vertices
    if len(cycle) != n or n < 3:
        return False
    if set(cycle) != set(graph.vertices):
        return False
    pos = [graph.position_of(x) for x in cycle]
    adj = graph.adjacency
    return all(bool(adj[pos[i], pos[(i + 1) % n]]) for i in range(n))


def multipartite_ham_path(
    view: MultipartiteView,
    start: int,
    end: Optional[int] = None,
) -> List[int]:
    """Hamiltonian path of a complete multipartite view, round by round.

    With k parts of common size s, the path sweeps the parts in one fixed
    rotation s times, so consecutive vertices always land in different
    parts. The start is pinned first. A requested end is pinned last and
    must live in a different part than the start.
    """
    k = view.n_parts
    sizes = view.part_sizes
    if k < 2:
        raise InfeasiblePathError(f"needs at least 2 parts, got {k}")
    if len(set(sizes)) != 1:
        raise InfeasiblePathError(
            f"parts must share one size, got sizes {sorted(sizes)}"
        )
    s = sizes[0]
    i_start = view.part_index_of(start)
    if end is not None:
        i_end = view.part_index_of(end)
        if i_end == i_start:
            raise InfeasiblePathError(
                f"start and end share one part of size {s}; the other"
                f" {k - 1} part(s) cannot absorb the imbalance"
            )
        rotation = [i_start] + [i for i in range(k) if i not in (i_start, i_end)]
        rotation.append(i_end)
    else:
        rotation = [i_start] + [i for i in range(k) if i != i_start]

    arranged: List[List[int]] = [list(part) for part in view.parts]
    arranged[i_start].remove(start)
    arranged[i_start].insert(0, start)
    if end is not None:
        arranged[i_end].remove(end)
        arranged[i_end].append(end)
    return [arranged[i][r] for r in range(s) for i in rotation]


def ham_backtrack(
    graph: NonCyclicGraph,
    budget: int = DEFAULT_BACKTRACK_BUDGET,
) -> BacktrackOutcome:
    """Search for a Hamiltonian cycle by depth-first backtracking.

    Vertices are explored lowest degree first, which forces the hardest
    choices early. Exhausting the search space proves absence; hitting the
    expansion budget is reported as its own status rather than an error.
    """
    if budget < 1:
        raise ContractViolationError("the search budget must be at least 1")
    n = graph.n_vertices
    if n < 3 or bool((graph.degrees < 2).any()):
        return BacktrackOutcome(SearchStatus.PROVEN_ABSENT, None, 0)
    deg = graph.degrees
    perm = sorted(range(n), key=lambda i: (int(deg[i]), i))
    rank = {p: r for r, p in enumerate(perm)}
    masks = []
    for p in perm:
        mask = 0
        for q in np.nonzero(graph.adjacency[p])[0]:
            mask |= 1 << rank[int(q)]
        masks.append(mask)
    full = (1 << n) - 1

    def ordered(cands: int, used: int) -> List[int]:
        """Candidates as a stack, fewest onward moves popped first."""
        frame = []
        m = cands
        while m:
            low = m & -m
            m ^= low
            frame.append(low.bit_length() - 1)
        frame.sort(key=lambda v: ((masks[v] & ~used).bit_count(), v), reverse=True)
        return frame

    def blocked(used: int, head: int) -> bool:
        """True when some unvisited vertex cannot be reached any more."""
        rem = full & ~used
        avail = rem | (1 << head)
        m = rem
        while m:
            low = m & -m
            m ^= low
            if masks[low.bit_length() - 1] & avail == 0:
                return True
        return False

    path = [0]
    used = 1
    stack = [ordered(masks[0] & ~used, used)]
    expansions = 0
    while stack:
        frame = stack[-1]
        if not frame:
            stack.pop()
            dropped = path.pop()
            used &= ~(1 << dropped)
            continue
        if expansions >= budget:
            return BacktrackOutcome(SearchStatus.BUDGET_EXHAUSTED, None, expansions)
        expansions += 1
        v = frame.pop()
        if len(path) == n - 1:
            if masks[v] & 1:
                tour = tuple(graph.vertices[perm[r]] for r in path + [v])
                cert = HamiltonianCertificate(tour, Builder.BACKTRACKING)
                return BacktrackOutcome(SearchStatus.FOUND, cert, expansions)
            continue
        bit = 1 << v
        path.append(v)
        used |= bit
        if blocked(used, v):
            path.pop()
            used &= ~bit
            continue
        stack.append(ordered(masks[v] & ~used, used))
    return BacktrackOutcome(SearchStatus.PROVEN_ABSENT, None, expansions)


# -- the constructive machinery ---------------------------------------------------------


def _exponent_factorization(n: int) -> List[Tuple[int, int]]:
    """(prime, multiplicity) pairs of n, largest prime first."""
    pairs = []
    for p in _prime_factors(n):
        a, m = 0, n
        while m % p == 0:
            a += 1
            m //= p
        pairs.append((p, a))
    pairs.sort(reverse=True)
    return pairs


def pi_ordering(gprime: FiniteGroup) -> PiOrdering:
    """Arrange the element orders of a group for the descending block walk.

    Primes descend. Each prime except the smallest contributes one block
    per power, the power descending across blocks, each block listing that
    power times every combination of smaller primes, ascending. The
    smallest prime closes with singleton blocks. The very first block leads
    with p1^a1 * pk, where the walk opens.
    """
    exp = gprime.exponent()
    fac = _exponent_factorization(exp)
    if len(fac) < 2:
        raise ContractViolationError(
            f"the block ordering needs at least two primes, but exp({gprime.name})"
            f" = {exp}; single-prime groups take the power-layer walk"
        )
    if len(fac) == 2 and fac[0][1] == 1 and fac[1][1] == 1:
        raise ContractViolationError(
            f"exp({gprime.name}) = {exp} is a product of two primes, which the"
            " two-prime construction handles instead"
        )
    pk = fac[-1][0]
    blocks: List[PiBlock] = []
    for i, (p, alpha) in enumerate(fac[:-1]):
        tails = [1]
        for q, beta in fac[i + 1 :]:
            tails = [t * q**c for t in tails for c in range(beta + 1)]
        for j in range(alpha, 0, -1):
            orders = tuple(sorted(p**j * t for t in tails))
            blocks.append(PiBlock(prime=p, exponent=j, orders=orders))
    for j in range(fac[-1][1], 0, -1):
        blocks.append(PiBlock(prime=pk, exponent=j, orders=(pk**j,)))

    lead = fac[0][0] ** fac[0][1] * pk
    first = blocks[0]
    rest = tuple(m for m in first.orders if m != lead)
    blocks[0] = PiBlock(first.prime, first.exponent, (lead,) + rest)
    return PiOrdering(tuple(blocks))


def _least_adjacent(
    graph: NonCyclicGraph, anchor: int, candidates: Sequence[int], note: str
) -> int:
    """Least candidate adjacent to the anchor vertex."""
    for x in candidates:
        if graph.has_edge(anchor, x):
            return int(x)
    raise StitchingError(f"no vertex of {note} is adjacent to element {anchor}")


def _least_closing(
    g: FiniteGroup,
    graph: NonCyclicGraph,
    view: MultipartiteView,
    entry: int,
    anchor: int,
    note: str,
) -> int:
    """Least vertex outside the entry's part that is adjacent to the anchor."""
    skip = view.part_index_of(entry)
    cands = sorted(
        x
        for i, part in enumerate(view.parts)
        if i != skip
        for x in part
        if graph.has_edge(anchor, x)
    )
    if not cands:
        raise StitchingError(
            f"no closing vertex in {note} outside part {skip} is adjacent"
            f" to element {anchor}"
        )
    return cands[0]


def _walk_layers(
    g: FiniteGroup,
    graph: NonCyclicGraph,
    orders: Sequence[int],
    start: int,
    close_to: Optional[int] = None,
    note: str = "layer",
) -> List[int]:
    """Chain Hamiltonian paths through the given element-order layers.

    Each layer is the complete multipartite view of one order. Every layer
    after the first is entered at its least vertex adjacent to the previous
    terminal. When close_to is given, the final layer is forced to end at
    the least vertex adjacent to it outside that layer's entry part.
    """
    path: List[int] = []
    prev: Optional[int] = None
    for idx, m in enumerate(orders):
        view = induced_on_omega(graph, m)
        if idx == 0:
            entry = start
        else:
            entry = _least_adjacent(
                graph, prev, g.omega(m), f"omega({m}) at {note} {idx}"
            )
        if close_to is not None and idx == len(orders) - 1:
            end = _least_closing(
                g, graph, view, entry, close_to, f"omega({m}) at the closing {note}"
            )
            segment = multipartite_ham_path(view, entry, end)
        else:
            segment = multipartite_ham_path(view, entry)
        path.extend(segment)
        prev = segment[-1]
    return path


def _two_prime_cycle(
    g: FiniteGroup, graph: NonCyclicGraph, p1: int, p2: int
) -> List[int]:
    """Cycle for exponent p1*p2: both prime layers plus a split mixed layer.

    The mixed layer is visited twice. Two of its parts link the prime
    layers; the remaining parts close the tour back to the first vertex.
    """
    m12 = p1 * p2
    h1 = multipartite_ham_path(induced_on_omega(graph, p1), g.omega(p1)[0])
    x1, x2 = h1[0], h1[-1]

    full = induced_on_omega(graph, m12)
    y1 = _least_adjacent(graph, x2, g.omega(m12), f"omega({m12}) at the first link")
    i1 = full.part_index_of(y1)
    y2 = min(x for i, part in enumerate(full.parts) if i != i1 for x in part)
    i2 = full.part_index_of(y2)
    pair_view = MultipartiteView(
        m=m12, parts=tuple(sorted((full.parts[i1], full.parts[i2])))
    )
    h2 = multipartite_ham_path(pair_view, y1, y2)

    z1 = _least_adjacent(graph, y2, g.omega(p2), f"omega({p2}) at the second layer")
    h3 = multipartite_ham_path(induced_on_omega(graph, p2), z1)
    z2 = h3[-1]

    remaining = tuple(part for i, part in enumerate(full.parts) if i not in (i1, i2))
    rest_view = MultipartiteView(m=m12, parts=remaining)
    # Prefer re-entering at the subgroup generated by x1 and z1 together; when
    # that class was already consumed by the split above, fall back to a scan.
    iw = full.part_index_of(int(g.mul[x1, z1]))
    if iw not in (i1, i2):
        y3 = full.parts[iw][0]
        if not graph.has_edge(z2, y3):
            raise StitchingError(
                f"omega({m12}) re-entry at element {y3} is not adjacent to the"
                f" second layer terminal {z2}"
            )
    else:
        y3 = _least_adjacent(
            graph,
            z2,
            sorted(x for part in remaining for x in part),
            f"omega({m12}) at the re-entry",
        )
    ys = _least_closing(
        g, graph, rest_view, y3, x1, f"omega({m12}) at the closing link"
    )
    h4 = multipartite_ham_path(rest_view, y3, ys)
    return h1 + h2 + h3 + h4


def _two_part_presentation(
    g: FiniteGroup, cls: NilpotentClass
) -> Tuple[List[int], List[int]]:
    """Rotation and reflection lists of a maximal-class 2-part.

    Picks the least element of generator order as the rotation a and the
    least involution outside the rotation subgroup as b, then returns
    (rot, ref) with rot[i] = a^i and ref[i] = a^i * b. Any such pair
    realizes the defining relations, so least-index picks are safe.
    """
    m = 2**cls.t
    orders = g.elem_order
    a = next(x for x in cls.two_part if int(orders[x]) == m)
    rot = [int(g.identity)]
    while len(rot) < m:
        rot.append(int(g.mul[rot[-1], a]))
    in_rot = set(rot)
    b = next(
        x for x in cls.two_part if int(orders[x]) == 2 and x not in in_rot
    )
    ref = [int(g.mul[r, b]) for r in rot]
    return rot, ref


def _chain_dihedral(rot: List[int], ref: List[int], swap_leading: bool) -> List[int]:
    """Zig-zag ab, a, a^2 b, a^2, ... , b over a dihedral 2-part.

    Every second vertex is a reflection, and reflections dominate the
    graph, so adjacency never fails. Swapping the two leading reflections
    keeps that property when the walk arrives at a^2 b instead of ab.
    """
    m = len(rot)
    chain: List[int] = []
    for i in range(1, m):
        chain.extend((ref[i], rot[i]))
    chain.append(ref[0])
    if swap_leading:
        chain[0], chain[2] = chain[2], chain[0]
    return chain


def _chain_semidihedral(rot: List[int], ref: List[int]) -> List[int]:
    """Odd-exponent sweep then even-exponent sweep over a semidihedral 2-part.

    Odd rotations generate the full rotation subgroup, so they tolerate the
    order-4 odd reflections beside them; the even reflections are true
    involutions and dominate, carrying the rest of the chain to b.
    """
    m = len(rot)
    chain: List[int] = []
    for i in range(1, m, 2):
        chain.extend((ref[i], rot[i]))
    for i in range(2, m - 1, 2):
        chain.extend((ref[i], rot[i]))
    chain.append(ref[0])
    return chain


def _maximal_class_cycle(
    g: FiniteGroup, graph: NonCyclicGraph, cls: NilpotentClass
) -> List[int]:
    """Cycle for a group whose 2-part is dihedral or semidihedral.

    Vertices with a nontrivial odd component are covered by a descending
    block walk; the pure 2-part vertices ride an explicit reflection chain
    that closes back to the walk's first vertex.
    """
    rot, ref = _two_part_presentation(g, cls)
    semidihedral = cls.kind is NilpotentKind.SYLOW2_SEMIDIHEDRAL

    if not cls.odd_part:
        return (
            _chain_semidihedral(rot, ref)
            if semidihedral
            else _chain_dihedral(rot, ref, swap_leading=False)
        )

    exp = g.exponent()
    odd_blocks = [b for b in pi_ordering(g).blocks if b.prime != 2]
    if len(odd_blocks) == 1 and odd_blocks[0].exponent == 1:
        # One block only: open at order 2p next to an involution the chain
        # can reach, and let the ascending remainder end at the exponent.
        p = odd_blocks[0].prime
        orders = [2 * p] + sorted(m for m in odd_blocks[0].orders if m != 2 * p)
        start = _least_adjacent(
            graph, ref[0], g.omega(2 * p), f"omega({2 * p}) at the walk opening"
        )
    else:
        first = odd_blocks[0]
        orders = [exp] + sorted(m for m in first.orders if m != exp)
        for block in odd_blocks[1:]:
            orders.extend(block.orders)
        start = g.omega(exp)[0]

    walk = _walk_layers(g, graph, orders, start, close_to=None, note="block")
    tail = walk[-1]
    if graph.has_edge(tail, ref[1]):
        chain = (
            _chain_semidihedral(rot, ref)
            if semidihedral
            else _chain_dihedral(rot, ref, swap_leading=False)
        )
    elif not semidihedral and graph.has_edge(tail, ref[2]):
        chain = _chain_dihedral(rot, ref, swap_leading=True)
    else:
        raise StitchingError(
            f"the block walk ends at element {tail}, adjacent to no leading"
            " reflection of the 2-part chain"
        )
    if not graph.has_edge(ref[0], walk[0]):
        raise StitchingError(
            "the reflection chain does not close back to the walk opening"
        )
    return walk + chain


def _lift_through_cosets(
    qcycle: Sequence[int], cosets: Sequence[Tuple[int, ...]]
) -> List[int]:
    """Expand a quotient cycle into the full group, one coset layer per lap.

    Adjacency survives the expansion: were two elements of adjacent cosets
    to generate a cyclic subgroup, its image downstairs would be cyclic
    too. So each lap may take any representative, and laps chain freely.
    """
    laps = len(cosets[qcycle[0]])
    return [cosets[v][r] for r in range(laps) for v in qcycle]


def _construct_trivial_cyc(
    g: FiniteGroup, graph: NonCyclicGraph, cls: NilpotentClass
) -> List[int]:
    """Dispatch the constructive routes for a trivial-cyclizer group."""
    if cls.kind is NilpotentKind.SYLOW2_QUATERNION:
        raise StitchingError(
            f"{g.name}: a quaternion 2-part cannot survive the cyclizer quotient"
        )
    if cls.n != 1:
        raise StitchingError(
            f"{g.name}: a cyclic direct factor survived into the"
            " trivial-cyclizer stage"
        )
    if cls.has_maximal_class_two_part:
        return _maximal_class_cycle(g, graph, cls)
    fac = _exponent_factorization(g.exponent())
    if len(fac) == 1:
        p, alpha = fac[0]
        orders = [p**j for j in range(alpha, 0, -1)]
        start = g.omega(p**alpha)[0]
        return _walk_layers(g, graph, orders, start, close_to=start, note="power layer")
    if len(fac) == 2 and fac[0][1] == 1 and fac[1][1] == 1:
        return _two_prime_cycle(g, graph, fac[0][0], fac[1][0])
    flat = pi_ordering(g).order_sequence()
    start = g.omega(flat[0])[0]
    return _walk_layers(g, graph, flat, start, close_to=start, note="block")


def ham_cycle_nilpotent(
    g: FiniteGroup, cls: Optional[NilpotentClass] = None
) -> HamiltonianCertificate:
    """Constructive certificate for a non-cyclic nilpotent group.

    A nontrivial cyclizer is collapsed first; the cycle found in the
    quotient then lifts coset by coset. Every certificate is re-checked by
    verify_certificate before it is returned.
    """
    if cls is None:
        cls = classify_nilpotent(g)
    if not cls.is_nilpotent:
        raise ContractViolationError(f"{g.name} is not nilpotent")
    if cls.kind is NilpotentKind.CYCLIC:
        raise ContractViolationError(
            f"{g.name} is cyclic, so its non-cyclic graph has no vertices"
        )
    cyc = cyclizer(g, cls)
    graph = build_graph(g, cyc)
    if len(cyc) == 1:
        cycle = _construct_trivial_cyc(g, graph, cls)
    else:
        quotient, _, cosets = g.quotient_by(cyc.cyc_set)
        qcls = classify_nilpotent(quotient)
        if qcls.kind is NilpotentKind.CYCLIC:
            raise StitchingError(
                f"{g.name}: the cyclizer quotient collapsed to a cyclic group"
            )
        qcyc = cyclizer(quotient, qcls)
        if len(qcyc) != 1:
            raise StitchingError(
                f"{g.name}: the cyclizer of {quotient.name} should be trivial"
            )
        qgraph = build_graph(quotient, qcyc)
        qcycle = _construct_trivial_cyc(quotient, qgraph, qcls)
        cycle = _lift_through_cosets(qcycle, cosets)
    cert = HamiltonianCertificate(tuple(int(x) for x in cycle), Builder.CONSTRUCTIVE)
    if not verify_certificate(graph, cert):
        raise StitchingError(f"the constructed cycle for {g.name} failed verification")
    return cert


def ham_cycle_pgroup(g: FiniteGroup) -> HamiltonianCertificate:
    """Certificate for a group with exactly one non-cyclic Sylow subgroup.

    Accepts the shape cyclic-times-p-group; the cyclizer quotient strips
    the cyclic factor, so the walk happens inside the p-part itself.
    Maximal-class 2-parts are out of scope here and belong to the chain
    construction inside ham_cycle_nilpotent.
    """
    cls = classify_nilpotent(g)
    if not cls.is_nilpotent:
        raise ContractViolationError(f"{g.name} is not nilpotent")
    if cls.kind is NilpotentKind.CYCLIC:
        raise ContractViolationError(f"{g.name} is cyclic and has an empty graph")
    odd_primes = _prime_factors(len(cls.odd_part)) if cls.odd_part else []
    noncyclic_sylows = (1 if cls.two_part else 0) + len(odd_primes)
    if noncyclic_sylows != 1:
        raise ContractViolationError(
            f"{g.name} has {noncyclic_sylows} non-cyclic Sylow subgroups,"
            " but this walk expects exactly one"
        )
    if cls.has_maximal_class_two_part:
        raise ContractViolationError(
            f"the 2-part of {g.name} has maximal class;"
            " ham_cycle_nilpotent routes it through the chain construction"
        )
    return ham_cycle_nilpotent(g, cls)
