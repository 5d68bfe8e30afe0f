"""Non-cyclic graphs of finite groups.

The non-cyclic graph of a group has one vertex for every element outside
the cyclizer, and an edge between two vertices whenever the subgroup they
generate together is not cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cyclizer import CyclizerResult, cyclizer
from .errors import ContractViolationError, StructuralError
from .groups import FiniteGroup


class SearchStatus(Enum):
    """Outcome of a bounded existence search."""

    FOUND = "found"
    PROVEN_ABSENT = "proven-absent"
    BUDGET_EXHAUSTED = "budget-exhausted"


class NonCyclicGraph:
    """Undirected graph on the elements of a group outside its cyclizer.

    Vertices are element indices in ascending order. The adjacency matrix
    is indexed by vertex position rather than element index. A graph can
    also wrap a plain adjacency matrix, in which case it carries no group.
    """

    def __init__(
        self,
        vertices: Sequence[int],
        adjacency: np.ndarray,
        group: Optional[FiniteGroup] = None,
        labels: Optional[Sequence[str]] = None,
        warning: Optional[str] = None,
    ):
        verts = tuple(int(v) for v in vertices)
        if any(b <= a for a, b in zip(verts, verts[1:])):
            raise ContractViolationError("vertices must be strictly increasing")
        adj = np.array(adjacency, dtype=bool)
        n = len(verts)
        if adj.shape != (n, n):
            raise ContractViolationError(
                f"adjacency shape {adj.shape} does not match {n} vertices"
            )
        if n and ((adj != adj.T).any() or bool(np.diag(adj).any())):
            raise ContractViolationError(
                "adjacency must be symmetric with an empty diagonal"
            )
        adj.setflags(write=False)
        self.vertices = verts
        self.adjacency = adj
        self.group = group
        self.warning = warning
        if labels is not None:
            self.vertex_labels = tuple(str(s) for s in labels)
        elif group is not None:
            self.vertex_labels = tuple(group.labels[v] for v in verts)
        else:
            self.vertex_labels = tuple(str(v) for v in verts)
        if len(self.vertex_labels) != n:
            raise ContractViolationError("one label per vertex is required")
        self._pos: Dict[int, int] = {v: i for i, v in enumerate(verts)}

    @classmethod
    def from_adjacency(
        cls,
        adjacency: np.ndarray,
        labels: Optional[Sequence[str]] = None,
        warning: Optional[str] = None,
    ) -> "NonCyclicGraph":
        """Wrap a bare adjacency matrix, numbering vertices 0..n-1."""
        n = int(np.asarray(adjacency).shape[0])
        return cls(range(n), adjacency, group=None, labels=labels, warning=warning)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def degrees(self) -> np.ndarray:
        """Vertex degrees, indexed by position."""
        return self.adjacency.sum(axis=1)

    def position_of(self, x: int) -> int:
        """Position of element x in the vertex list."""
        try:
            return self._pos[x]
        except KeyError:
            raise ContractViolationError(f"element {x} is not a vertex") from None

    def has_edge(self, x: int, y: int) -> bool:
        """Whether elements x and y are adjacent."""
        return bool(self.adjacency[self.position_of(x), self.position_of(y)])

    def neighbors(self, x: int) -> Tuple[int, ...]:
        """Elements adjacent to x, ascending."""
        row = self.adjacency[self.position_of(x)]
        return tuple(self.vertices[i] for i in np.nonzero(row)[0])

    def __repr__(self) -> str:
        tag = self.group.name if self.group is not None else "untyped"
        return (
            f"NonCyclicGraph({tag}, n_vertices={self.n_vertices},"
            f" n_edges={self.n_edges})"
        )


def build_graph(group: FiniteGroup, cyc: Optional[CyclizerResult] = None) -> NonCyclicGraph:
    """Construct the non-cyclic graph of a group.

    A cyclic group produces the empty graph with an explanatory warning
    rather than an error, so catalog sweeps can skip it gracefully. Pass a
    precomputed cyclizer result to avoid recomputing it.
    """
    if cyc is None:
        cyc = cyclizer(group)
    inside = np.zeros(group.order, dtype=bool)
    inside[list(cyc.cyc_set)] = True
    vertices = np.nonzero(~inside)[0]
    if vertices.size == 0:
        return NonCyclicGraph(
            (),
            np.zeros((0, 0), dtype=bool),
            group=group,
            warning=f"{group.name} is cyclic, so its non-cyclic graph is empty",
        )
    adj = ~group.pair_cyclic_matrix()[np.ix_(vertices, vertices)]
    built = NonCyclicGraph(vertices.tolist(), adj, group=group)
    if not bool(adj.any(axis=1).all()):
        raise StructuralError(
            f"isolated vertex outside the cyclizer of {group.name};"
            " the pair-cyclicity table is inconsistent"
        )
    return built


@dataclass(frozen=True)
class MultipartiteView:
    """Order-m vertices grouped by the cyclic subgroup they generate.

    Parts are ordered by least element and each part lists its members
    ascending.
    """

    m: int
    parts: Tuple[Tuple[int, ...], ...]

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def part_sizes(self) -> Tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    @property
    def vertex_count(self) -> int:
        return sum(len(p) for p in self.parts)

    def part_index_of(self, x: int) -> int:
        """Index of the part containing element x."""
        for i, part in enumerate(self.parts):
            if x in part:
                return i
        raise ContractViolationError(f"element {x} is in no part of this view")


def induced_on_omega(graph: NonCyclicGraph, m: int) -> MultipartiteView:
    """View the order-m vertices of a group graph as generated-subgroup classes.

    Raises ContractViolationError when the graph carries no group or when
    fewer than two cyclic subgroups of order m exist, since the complete
    multipartite description is only promised from two classes upward.
    """
    if graph.group is None:
        raise ContractViolationError("an omega view needs a graph built from a group")
    g = graph.group
    omega = g.omega(m)
    if len(omega) < 2:
        raise ContractViolationError(
            f"{g.name} has {len(omega)} element(s) of order {m};"
            f" a multipartite view of order {m} needs at least two classes"
        )
    cols = g.membership_matrix()[:, list(omega)]
    _, inverse = np.unique(cols, axis=1, return_inverse=True)
    n_classes = int(inverse.max()) + 1
    if n_classes < 2:
        raise ContractViolationError(
            f"{g.name} has a single cyclic subgroup of order {m};"
            f" a multipartite view of order {m} needs at least two classes"
        )
    grouped: List[List[int]] = [[] for _ in range(n_classes)]
    for x, cls_id in zip(omega, inverse.ravel().tolist()):
        grouped[cls_id].append(x)
    parts = sorted(tuple(p) for p in grouped)
    return MultipartiteView(m=m, parts=tuple(parts))


def is_complete_multipartite(graph: NonCyclicGraph, view: MultipartiteView) -> bool:
    """Check that the view induces a complete multipartite subgraph."""
    pos = [graph.position_of(x) for part in view.parts for x in part]
    pid = np.concatenate(
        [np.full(len(part), i) for i, part in enumerate(view.parts)]
    )
    sub = graph.adjacency[np.ix_(pos, pos)]
    return bool((sub == (pid[:, None] != pid[None, :])).all())


def dominating_vertices(graph: NonCyclicGraph) -> Tuple[int, ...]:
    """Vertices adjacent to everything else, as ascending element indices."""
    if graph.is_empty:
        return ()
    full = graph.n_vertices - 1
    hits = np.nonzero(graph.degrees == full)[0]
    return tuple(graph.vertices[i] for i in hits)


def edge_list(graph: NonCyclicGraph) -> List[Tuple[int, int]]:
    """Edges as position pairs (i, j) with i < j, lexicographically sorted."""
    ii, jj = np.nonzero(np.triu(graph.adjacency, k=1))
    return list(zip(ii.tolist(), jj.tolist()))


def graph_json_payload(graph: NonCyclicGraph, spec: str) -> dict:
    """JSON-ready description of a group graph: sizes, labels and edges."""
    if graph.group is None:
        raise ContractViolationError("a JSON payload needs a graph built from a group")
    return {
        "spec": spec,
        "order": graph.group.order,
        "cyc_size": graph.group.order - graph.n_vertices,
        "vertices": list(graph.vertex_labels),
        "edges": [[i, j] for i, j in edge_list(graph)],
    }


@dataclass(frozen=True)
class DotOptions:
    """Rendering choices for DOT export."""

    graph_name: str = "noncyclic"
    color_by_order: bool = False
    highlight: Tuple[Tuple[int, int], ...] = ()


_PALETTE = (
    "#8dd3c7",
    "#ffffb3",
    "#bebada",
    "#fb8072",
    "#80b1d3",
    "#fdb462",
    "#b3de69",
    "#fccde5",
    "#d9d9d9",
    "#bc80bd",
)

_HIGHLIGHT_STYLE = 'color="#c0392b" penwidth=2.0'


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def export_dot(graph: NonCyclicGraph, options: Optional[DotOptions] = None) -> str:
    """Render a graph as deterministic DOT text.

    Nodes appear in vertex order and edges ascend lexicographically by
    position pair, so equal graphs always export byte-identical text.
    """
    opts = options or DotOptions()
    if opts.color_by_order and graph.group is None:
        raise ContractViolationError("coloring by element order needs a group")
    marked = set()
    for x, y in opts.highlight:
        if not graph.has_edge(x, y):
            raise ContractViolationError(
                f"highlighted pair ({x}, {y}) is not an edge"
            )
        marked.add(frozenset((x, y)))

    color_of = {}
    if opts.color_by_order:
        orders = sorted({int(graph.group.elem_order[v]) for v in graph.vertices})
        for i, d in enumerate(orders):
            color_of[d] = _PALETTE[i % len(_PALETTE)]

    lines = [f"graph {opts.graph_name} {{"]
    for v, label in zip(graph.vertices, graph.vertex_labels):
        attrs = [f"label={_quote(label)}"]
        if opts.color_by_order:
            d = int(graph.group.elem_order[v])
            attrs.append(f'style=filled fillcolor="{color_of[d]}"')
        lines.append(f"  v{v} [{' '.join(attrs)}];")
    for i, j in edge_list(graph):
        x, y = graph.vertices[i], graph.vertices[j]
        if frozenset((x, y)) in marked:
            lines.append(f"  v{x} -- v{y} [{_HIGHLIGHT_STYLE}];")
        else:
            lines.append(f"  v{x} -- v{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
