"""Perfect and total perfect codes in non-cyclic graphs.

A perfect code tiles the graph with closed neighborhoods; a total perfect
code tiles it with open ones. For group graphs the perfect case collapses
to a closed form, while complete exact-cover oracles supply the
independent verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .catalog import NilpotentClass, NilpotentKind, classify_nilpotent
from .errors import ContractViolationError
from .graph import NonCyclicGraph, SearchStatus

DEFAULT_EXHAUSTIVE_CAP = 24
DEFAULT_CODE_BUDGET = 1_000_000


class CodeKind(Enum):
    """Which covering property a certificate talks about."""

    PERFECT = "perfect"
    TOTAL_PERFECT = "total-perfect"


@dataclass(frozen=True)
class CodeCertificate:
    """Verdict on a code search: its kind, witness set and status."""

    kind: CodeKind
    vertices: Tuple[int, ...]
    status: SearchStatus


class _BudgetExceeded(Exception):
    """Internal signal that an oracle ran out of expansions."""


def is_perfect_code(graph: NonCyclicGraph, vertices: Sequence[int]) -> bool:
    """Check the perfect-code property directly against the graph.

    The set must be independent and every vertex outside it must be
    adjacent to exactly one member.
    """
    code = sorted(set(int(v) for v in vertices))
    if not code:
        return False
    pos = [graph.position_of(v) for v in code]
    adj = graph.adjacency
    if bool(adj[np.ix_(pos, pos)].any()):
        return False
    hits = adj[:, pos].sum(axis=1)
    outside = np.ones(graph.n_vertices, dtype=bool)
    outside[pos] = False
    return bool((hits[outside] == 1).all())


def is_total_perfect_code(graph: NonCyclicGraph, vertices: Sequence[int]) -> bool:
    """Check the total-perfect-code property: everything, the code included,
    is adjacent to exactly one member."""
    code = sorted(set(int(v) for v in vertices))
    if not code:
        return False
    pos = [graph.position_of(v) for v in code]
    hits = graph.adjacency[:, pos].sum(axis=1)
    return bool((hits == 1).all())


def _exact_cover(
    masks: List[int], centers: Sequence[int], n: int, budget: int
) -> Tuple[SearchStatus, Optional[List[int]], int]:
    """Tile n vertices with the masks of some chosen centers.

    Branches on the lowest uncovered vertex and tries its coverers in
    ascending order, so the search is complete and deterministic. Returns
    (status, chosen center positions, expansions).
    """
    full = (1 << n) - 1
    coverers: List[List[int]] = [[] for _ in range(n)]
    for c in centers:
        m = masks[c]
        while m:
            low = m & -m
            m ^= low
            coverers[low.bit_length() - 1].append(c)

    expansions = 0

    def cover(uncovered: int) -> Optional[List[int]]:
        nonlocal expansions
        if uncovered == 0:
            return []
        u = (uncovered & -uncovered).bit_length() - 1
        for c in coverers[u]:
            m = masks[c]
            if m & ~uncovered:
                continue
            if expansions >= budget:
                raise _BudgetExceeded
            expansions += 1
            rest = cover(uncovered & ~m)
            if rest is not None:
                rest.append(c)
                return rest
        return None

    try:
        chosen = cover(full)
    except _BudgetExceeded:
        return SearchStatus.BUDGET_EXHAUSTED, None, expansions
    if chosen is None:
        return SearchStatus.PROVEN_ABSENT, None, expansions
    return SearchStatus.FOUND, sorted(chosen), expansions


def _neighborhood_masks(graph: NonCyclicGraph, closed: bool) -> List[int]:
    masks = []
    for row in graph.adjacency:
        m = 0
        for q in np.nonzero(row)[0]:
            m |= 1 << int(q)
        masks.append(m)
    if closed:
        masks = [m | (1 << i) for i, m in enumerate(masks)]
    return masks


def perfect_code_oracle(
    graph: NonCyclicGraph,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    budget: int = DEFAULT_CODE_BUDGET,
) -> CodeCertificate:
    """Complete search for a perfect code, independent of any closed form.

    A perfect code is exactly a tiling of the vertex set by closed
    neighborhoods. Up to cap vertices every vertex may serve as a center;
    beyond it, group graphs restrict centers to involutions, which is
    still complete because perfect-code members always have order 2.
    """
    n = graph.n_vertices
    if n == 0:
        return CodeCertificate(CodeKind.PERFECT, (), SearchStatus.PROVEN_ABSENT)
    if n <= cap or graph.group is None:
        centers: Sequence[int] = range(n)
    else:
        orders = graph.group.elem_order
        centers = [i for i, v in enumerate(graph.vertices) if int(orders[v]) == 2]
    masks = _neighborhood_masks(graph, closed=True)
    status, chosen, _ = _exact_cover(masks, centers, n, budget)
    if status is not SearchStatus.FOUND:
        return CodeCertificate(CodeKind.PERFECT, (), status)
    witness = tuple(graph.vertices[i] for i in chosen)
    return CodeCertificate(CodeKind.PERFECT, witness, SearchStatus.FOUND)


def total_perfect_code_oracle(
    graph: NonCyclicGraph,
    budget: int = DEFAULT_CODE_BUDGET,
) -> CodeCertificate:
    """Complete search for a total perfect code.

    This is the exact cover by open neighborhoods; the requirement that
    the code induces a perfect matching on itself is what the cover
    enforces on the code's own vertices.
    """
    n = graph.n_vertices
    if n == 0:
        return CodeCertificate(CodeKind.TOTAL_PERFECT, (), SearchStatus.PROVEN_ABSENT)
    masks = _neighborhood_masks(graph, closed=False)
    status, chosen, _ = _exact_cover(masks, range(n), n, budget)
    if status is not SearchStatus.FOUND:
        return CodeCertificate(CodeKind.TOTAL_PERFECT, (), status)
    witness = tuple(graph.vertices[i] for i in chosen)
    return CodeCertificate(CodeKind.TOTAL_PERFECT, witness, SearchStatus.FOUND)


def find_perfect_code(graph: NonCyclicGraph) -> CodeCertificate:
    """Decide perfect-code existence by the closed form, never by search.

    A perfect code exists exactly when some maximal cyclic subgroup has
    order 2, and then its involution alone is the code. The least such
    involution is returned for determinism.
    """
    if graph.group is None:
        raise ContractViolationError(
            "the perfect-code closed form needs a graph built from a group"
        )
    if graph.is_empty:
        raise ContractViolationError(
            f"{graph.group.name} is cyclic; perfect codes are decided on"
            " non-cyclic groups only"
        )
    g = graph.group
    witnesses = [
        next(x for x in sub.elements if x != g.identity)
        for sub in g.maximal_cyclic_subgroups()
        if len(sub) == 2
    ]
    if not witnesses:
        return CodeCertificate(CodeKind.PERFECT, (), SearchStatus.PROVEN_ABSENT)
    code = (min(witnesses),)
    if not is_perfect_code(graph, code):
        raise ContractViolationError(
            f"element {code[0]} of {g.name} should tile the graph but does not;"
            " the maximal-cyclic scan is inconsistent"
        )
    return CodeCertificate(CodeKind.PERFECT, code, SearchStatus.FOUND)


def find_total_perfect_code(
    graph: NonCyclicGraph,
    cls: Optional[NilpotentClass] = None,
    budget: int = DEFAULT_CODE_BUDGET,
) -> CodeCertificate:
    """Decide total-perfect-code existence.

    Non-cyclic nilpotent groups never admit one, so they are answered
    immediately; anything else goes to the exact-cover oracle.
    """
    if cls is None and graph.group is not None:
        cls = classify_nilpotent(graph.group)
    if cls is not None and cls.is_nilpotent:
        return CodeCertificate(CodeKind.TOTAL_PERFECT, (), SearchStatus.PROVEN_ABSENT)
    return total_perfect_code_oracle(graph, budget=budget)
