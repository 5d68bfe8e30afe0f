"""Cyclizers: brute-force pair scans and the nilpotent closed form.

The cyclizer of an element x is the set of y with <x, y> cyclic; the
cyclizer of the group is the intersection over all elements. For non-cyclic
nilpotent groups the cyclizer has a closed form: the elements whose order
divides the folded cyclic coordinate n, doubled through the unique involution
of the quaternion part when the Sylow 2-subgroup is generalized quaternion.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .catalog import NilpotentClass, NilpotentKind, classify_nilpotent
from .errors import ContractViolationError
from .groups import FiniteGroup

__all__ = [
    "CyclizerMethod",
    "CyclizerResult",
    "cyclizer_of_element",
    "cyclizer_brute",
    "cyclizer_closed_form",
    "cyclizer",
]


class CyclizerMethod(Enum):
    BRUTE_FORCE = "brute-force"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class CyclizerResult:
    """A cyclizer as a sorted tuple of element indices, tagged by how it was computed."""

    cyc_set: Tuple[int, ...]
    method: CyclizerMethod

    def __len__(self) -> int:
        return len(self.cyc_set)

    def __contains__(self, x: int) -> bool:
        return x in self.cyc_set


def cyclizer_of_element(g: FiniteGroup, x: int) -> Tuple[int, ...]:
    """All y such that <x, y> is cyclic, ascending."""
    row = g.pair_cyclic_matrix()[x]
    return tuple(int(i) for i in np.nonzero(row)[0])


def cyclizer_brute(g: FiniteGroup) -> CyclizerResult:
    """The cyclizer by exhaustive pair scan: elements pair-cyclic with everyone."""
    full = g.pair_cyclic_matrix().all(axis=1)
    elems = tuple(int(i) for i in np.nonzero(full)[0])
    return CyclizerResult(elems, CyclizerMethod.BRUTE_FORCE)


def cyclizer_closed_form(
    g: FiniteGroup, cls: Optional[NilpotentClass] = None
) -> CyclizerResult:
    """The cyclizer of a non-cyclic nilpotent group, without any pair scans.

    With n the order of the folded cyclic coordinate, the cyclizer is
    {x : o(x) divides n}, together with the coset of that set through the
    unique involution of the quaternion part when the Sylow 2-subgroup is
    generalized quaternion. Raises for cyclic or non-nilpotent input.
    """
    if cls is None:
        cls = classify_nilpotent(g)
    if cls.kind in (NilpotentKind.NOT_NILPOTENT, NilpotentKind.CYCLIC):
        raise ContractViolationError(
            f"{g.name}: the cyclizer closed form needs a non-cyclic nilpotent group, "
            f"got {cls.kind.value}"
        )
    base = np.nonzero(cls.n % g.elem_order == 0)[0]
    if cls.kind is NilpotentKind.SYLOW2_QUATERNION:
        two = np.asarray(cls.two_part)
        involutions = two[g.elem_order[two] == 2]
        if involutions.size != 1:
            raise ContractViolationError(
                f"{g.name}: quaternion part must have a unique involution, "
                f"found {involutions.size}"
            )
        q = int(involutions[0])
        elems = np.unique(np.concatenate([base, g.mul[base, q]]))
    else:
        elems = base
    return CyclizerResult(tuple(int(i) for i in elems), CyclizerMethod.CLOSED_FORM)


def cyclizer(g: FiniteGroup, cls: Optional[NilpotentClass] = None) -> CyclizerResult:
    """The cyclizer by the cheapest sound route for the group's shape."""
    if cls is None:
        cls = classify_nilpotent(g)
    if cls.kind is NilpotentKind.CYCLIC:
        return CyclizerResult(tuple(range(g.order)), CyclizerMethod.CLOSED_FORM)
    if cls.kind is NilpotentKind.NOT_NILPOTENT:
        return cyclizer_brute(g)
    return cyclizer_closed_form(g, cls)
