"""Non-cyclic graphs of finite groups: construction, certificates and codes."""

from .catalog import (
    Cyclic,
    Dihedral2,
    DihedralFull,
    DirectProduct,
    NilpotentClass,
    NilpotentKind,
    Quaternion2,
    SemiDihedral2,
    build,
    canonical_spec,
    catalog_specs,
    classify_nilpotent,
    iter_catalog_groups,
    parse_spec,
    sylow_decomposition,
)
from .codes import (
    CodeCertificate,
    CodeKind,
    find_perfect_code,
    find_total_perfect_code,
    is_perfect_code,
    is_total_perfect_code,
    perfect_code_oracle,
    total_perfect_code_oracle,
)
from .cyclizer import (
    CyclizerMethod,
    CyclizerResult,
    cyclizer,
    cyclizer_brute,
    cyclizer_closed_form,
    cyclizer_of_element,
)
from .errors import (
    CapacityError,
    ContractViolationError,
    InfeasiblePathError,
    NoncyclicError,
    SpecParseError,
    StitchingError,
    StructuralError,
)
from .graph import (
    DotOptions,
    MultipartiteView,
    NonCyclicGraph,
    SearchStatus,
    build_graph,
    dominating_vertices,
    export_dot,
    graph_json_payload,
    induced_on_omega,
    is_complete_multipartite,
)
from .groups import CyclicSubgroup, FiniteGroup, euler_phi
from .hamiltonian import (
    BacktrackOutcome,
    Builder,
    HamiltonianCertificate,
    PiBlock,
    PiOrdering,
    ham_backtrack,
    ham_cycle_nilpotent,
    ham_cycle_pgroup,
    multipartite_ham_path,
    pi_ordering,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BacktrackOutcome",
    "Builder",
    "CapacityError",
    "CodeCertificate",
    "CodeKind",
    "ContractViolationError",
    "Cyclic",
    "CyclicSubgroup",
    "CyclizerMethod",
    "CyclizerResult",
    "Dihedral2",
    "DihedralFull",
    "DirectProduct",
    "DotOptions",
    "FiniteGroup",
    "HamiltonianCertificate",
    "InfeasiblePathError",
    "MultipartiteView",
    "NilpotentClass",
    "NilpotentKind",
    "NonCyclicGraph",
    "NoncyclicError",
    "PiBlock",
    "PiOrdering",
    "Quaternion2",
    "SearchStatus",
    "SemiDihedral2",
    "SpecParseError",
    "StitchingError",
    "StructuralError",
    "build",
    "build_graph",
    "canonical_spec",
    "catalog_specs",
    "classify_nilpotent",
    "cyclizer",
    "cyclizer_brute",
    "cyclizer_closed_form",
    "cyclizer_of_element",
    "dominating_vertices",
    "euler_phi",
    "export_dot",
    "find_perfect_code",
    "find_total_perfect_code",
    "graph_json_payload",
    "ham_backtrack",
    "ham_cycle_nilpotent",
    "ham_cycle_pgroup",
    "induced_on_omega",
    "is_complete_multipartite",
    "is_perfect_code",
    "is_total_perfect_code",
    "iter_catalog_groups",
    "multipartite_ham_path",
    "parse_spec",
    "perfect_code_oracle",
    "pi_ordering",
    "sylow_decomposition",
    "total_perfect_code_oracle",
    "verify_certificate",
]
