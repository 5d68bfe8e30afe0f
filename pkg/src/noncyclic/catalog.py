"""Group-spec grammar, table builders and structural classification.

A spec is a product of atoms. ``Z<n>`` is cyclic of order n; ``D<m>``,
``Q<m>`` and ``SD<m>`` are the dihedral, generalized quaternion and
semidihedral 2-groups of order m (a power of two); ``Dih<n>`` is the full
dihedral group of order 2n. Atoms are joined with ``x`` and whitespace is
ignored, e.g. ``"Z3 x Q8"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import CapacityError, ContractViolationError, SpecParseError
from .groups import FiniteGroup

__all__ = [
    "Cyclic",
    "Dihedral2",
    "Quaternion2",
    "SemiDihedral2",
    "DihedralFull",
    "DirectProduct",
    "GroupSpec",
    "NilpotentKind",
    "NilpotentClass",
    "parse_spec",
    "canonical_spec",
    "build",
    "classify_nilpotent",
    "sylow_decomposition",
    "catalog_specs",
]

DEFAULT_ORDER_CAP = 4096


@dataclass(frozen=True)
class Cyclic:
    n: int

    @property
    def order(self) -> int:
        return self.n

    @property
    def token(self) -> str:
        return f"Z{self.n}"


@dataclass(frozen=True)
class Dihedral2:
    """Dihedral 2-group of order 2^(t+1), t >= 1 (t = 1 is the Klein four-group)."""

    t: int

    @property
    def order(self) -> int:
        return 2 ** (self.t + 1)

    @property
    def token(self) -> str:
        return f"D{self.order}"


@dataclass(frozen=True)
class Quaternion2:
    """Generalized quaternion group of order 2^(t+1), t >= 2."""

    t: int

    @property
    def order(self) -> int:
        return 2 ** (self.t + 1)

    @property
    def token(self) -> str:
        return f"Q{self.order}"


@dataclass(frozen=True)
class SemiDihedral2:
    """Semidihedral group of order 2^(t+1), t >= 3."""

    t: int

    @property
    def order(self) -> int:
        return 2 ** (self.t + 1)

    @property
    def token(self) -> str:
        return f"SD{self.order}"


@dataclass(frozen=True)
class DihedralFull:
    """Full dihedral group of order 2n, any n >= 3 (n need not be a 2-power)."""

    n: int

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def token(self) -> str:
        return f"Dih{self.n}"


Atom = Union[Cyclic, Dihedral2, Quaternion2, SemiDihedral2, DihedralFull]


@dataclass(frozen=True)
class DirectProduct:
    factors: Tuple[Atom, ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 2:
            raise SpecParseError("a direct product needs at least two factors")

    @property
    def order(self) -> int:
        result = 1
        for f in self.factors:
            result *= f.order
        return result


GroupSpec = Union[Atom, DirectProduct]

_ATOM_RE = re.compile(r"^(SD|Dih|D|Q|Z)(\d+)$")


def _parse_atom(token: str) -> Atom:
    m = _ATOM_RE.match(token)
    if not m:
        raise SpecParseError(f"unrecognized atom {token!r}")
    head, num = m.group(1), int(m.group(2))
    if head == "Z":
        if num < 1:
            raise SpecParseError(f"cyclic atom {token!r} needs n >= 1")
        return Cyclic(num)
    if head == "Dih":
        if num < 3:
            raise SpecParseError(f"dihedral atom {token!r} needs n >= 3")
        return DihedralFull(num)
    # The numeral of D/Q/SD atoms is the group order, a power of two.
    if num < 4 or num & (num - 1):
        raise SpecParseError(f"atom {token!r} must have a power-of-two order >= 4")
    t = num.bit_length() - 2
    if head == "D":
        if t < 1:
            raise SpecParseError(f"atom {token!r} is below the dihedral bound D4")
        return Dihedral2(t)
    if head == "Q":
        if t < 2:
            raise SpecParseError(f"atom {token!r} is below the quaternion bound Q8")
        return Quaternion2(t)
    if t < 3:
        raise SpecParseError(f"atom {token!r} is below the semidihedral bound SD16")
    return SemiDihedral2(t)


def parse_spec(text: str) -> GroupSpec:
    """Parse a spec string such as ``"Z4 x Z2"`` into a spec tree."""
    squeezed = re.sub(r"\s+", "", text)
    if not squeezed:
        raise SpecParseError("empty group spec")
    tokens = squeezed.split("x")
    if any(not tok for tok in tokens):
        raise SpecParseError(f"malformed product in {text!r}")
    atoms = tuple(_parse_atom(tok) for tok in tokens)
    if len(atoms) == 1:
        return atoms[0]
    return DirectProduct(atoms)


def canonical_spec(spec: GroupSpec) -> str:
    """Canonical text for a spec; factor order is preserved."""
    if isinstance(spec, DirectProduct):
        return " x ".join(f.token for f in spec.factors)
    return spec.token


# -- table builders ---------------------------------------------------------------


def _cyclic_table(n: int) -> Tuple[np.ndarray, List[str]]:
    idx = np.arange(n, dtype=np.int64)
    table = (idx[:, None] + idx[None, :]) % n
    return table, [str(i) for i in range(n)]


def _word_labels(m: int) -> List[str]:
    rot = ["1"] + ["a" if i == 1 else f"a^{i}" for i in range(1, m)]
    ref = ["b"] + ["ab" if i == 1 else f"a^{i}b" for i in range(1, m)]
    return rot + ref


def _presentation_table(m: int, r: int, s: int) -> Tuple[np.ndarray, List[str]]:
    """Order-2m table for <a, b | a^m = 1, b a b^-1 = a^r, b^2 = a^s>.

    Indices 0..m-1 are a^i, indices m..2m-1 are a^i b.
    """
    i = np.arange(m, dtype=np.int64)[:, None]
    j = np.arange(m, dtype=np.int64)[None, :]
    rot_rot = (i + j) % m
    rot_ref = (i + j) % m + m
    ref_rot = (i + r * j) % m + m
    ref_ref = (i + r * j + s) % m
    table = np.block([[rot_rot, rot_ref], [ref_rot, ref_ref]])
    return table, _word_labels(m)


def _atom_table(atom: Atom) -> Tuple[np.ndarray, List[str]]:
    if isinstance(atom, Cyclic):
        return _cyclic_table(atom.n)
    if isinstance(atom, Dihedral2):
        return _presentation_table(2**atom.t, -1, 0)
    if isinstance(atom, DihedralFull):
        return _presentation_table(atom.n, -1, 0)
    if isinstance(atom, Quaternion2):
        m = 2**atom.t
        return _presentation_table(m, -1, m // 2)
    if isinstance(atom, SemiDihedral2):
        m = 2**atom.t
        return _presentation_table(m, 2 ** (atom.t - 1) - 1, 0)
    raise SpecParseError(f"unknown atom {atom!r}")


def _product_table(
    parts: Sequence[Tuple[np.ndarray, List[str]]],
) -> Tuple[np.ndarray, List[str]]:
    table, labels = parts[0]
    label_tuples = [(lab,) for lab in labels]
    for nxt_table, nxt_labels in parts[1:]:
        na, nb = table.shape[0], nxt_table.shape[0]
        table = (table[:, None, :, None] * nb + nxt_table[None, :, None, :]).reshape(
            na * nb, na * nb
        )
        label_tuples = [base + (lab,) for base in label_tuples for lab in nxt_labels]
    if len(parts) > 1:
        labels = ["(" + ",".join(parts_) + ")" for parts_ in label_tuples]
    return table, labels


def build(
    spec: GroupSpec,
    max_order: int = DEFAULT_ORDER_CAP,
    validate: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> FiniteGroup:
    """Construct the group a spec describes, labelled and named canonically."""
    order = spec.order
    if order > max_order:
        raise CapacityError(
            f"spec {canonical_spec(spec)} has order {order}, above the cap {max_order}"
        )
    atoms = spec.factors if isinstance(spec, DirectProduct) else (spec,)
    table, labels = _product_table([_atom_table(a) for a in atoms])
    return FiniteGroup(table, labels, name=canonical_spec(spec), validate=validate, rng=rng)


# -- classification -----------------------------------------------------------------


class NilpotentKind(Enum):
    """Shape tags driving the cyclizer closed form and the cycle builders.

    The five product tags describe the non-cyclic part of the Sylow
    2-subgroup after every cyclic Sylow factor is folded into one cyclic
    coordinate of coprime order.
    """

    NOT_NILPOTENT = "not_nilpotent"
    CYCLIC = "cyclic"
    SYLOW2_CYCLIC = "sylow2_cyclic"
    SYLOW2_GENERIC = "sylow2_generic"
    SYLOW2_QUATERNION = "sylow2_quaternion"
    SYLOW2_DIHEDRAL = "sylow2_dihedral"
    SYLOW2_SEMIDIHEDRAL = "sylow2_semidihedral"


@dataclass(frozen=True)
class NilpotentClass:
    """Classification result: tag plus the (n, two-part, odd-part) split.

    ``n`` is the order of the folded cyclic coordinate. ``two_part`` holds the
    Sylow 2-subgroup's elements when it is non-cyclic (else empty) and
    ``odd_part`` the subgroup generated by the non-cyclic odd Sylow subgroups
    (empty when trivial). ``t`` is set for the maximal-class tags, with the
    two-part of order 2^(t+1).
    """

    kind: NilpotentKind
    n: int
    two_part: Tuple[int, ...] = ()
    odd_part: Tuple[int, ...] = ()
    t: Optional[int] = None

    @property
    def is_nilpotent(self) -> bool:
        return self.kind is not NilpotentKind.NOT_NILPOTENT

    @property
    def has_maximal_class_two_part(self) -> bool:
        return self.kind in (
            NilpotentKind.SYLOW2_QUATERNION,
            NilpotentKind.SYLOW2_DIHEDRAL,
            NilpotentKind.SYLOW2_SEMIDIHEDRAL,
        )


def _prime_factors(n: int) -> List[int]:
    primes = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        primes.append(m)
    return primes


def _is_nilpotent(g: FiniteGroup) -> bool:
    """Nilpotency via the element criterion: coprime-order elements commute."""
    orders = g.elem_order
    coprime = np.gcd.outer(orders, orders) == 1
    noncommuting = g.mul != g.mul.T
    return not bool((coprime & noncommuting).any())


def _sylow_masks(g: FiniteGroup) -> List[Tuple[int, np.ndarray]]:
    masks = []
    for p in _prime_factors(g.order):
        ppart = 1
        m = g.order
        while m % p == 0:
            ppart *= p
            m //= p
        masks.append((p, ppart % g.elem_order == 0))
    return masks


def sylow_decomposition(g: FiniteGroup) -> List[Tuple[int, Tuple[int, ...]]]:
    """The Sylow subgroups of a nilpotent group, as (prime, element tuple) pairs.

    In a nilpotent group the set of p-power-order elements is exactly the
    (unique, normal) Sylow p-subgroup, so each part can be read off the order
    vector. Raises if the group is not nilpotent.
    """
    if not _is_nilpotent(g):
        raise ContractViolationError(
            f"{g.name}: sylow_decomposition requires a nilpotent group"
        )
    parts = []
    for p, mask in _sylow_masks(g):
        parts.append((p, tuple(int(i) for i in np.nonzero(mask)[0])))
    return parts


def classify_nilpotent(g: FiniteGroup) -> NilpotentClass:
    """Tag a group with the product shape its cyclizer closed form needs."""
    if not _is_nilpotent(g):
        return NilpotentClass(NilpotentKind.NOT_NILPOTENT, 0)
    if g.is_cyclic():
        return NilpotentClass(NilpotentKind.CYCLIC, g.order)

    orders = g.elem_order
    n = 1
    two_part: Tuple[int, ...] = ()
    odd_modulus = 1
    for p, mask in _sylow_masks(g):
        size = int(mask.sum())
        part_cyclic = int(orders[mask].max()) == size
        if part_cyclic:
            n *= size
        elif p == 2:
            two_part = tuple(int(i) for i in np.nonzero(mask)[0])
        else:
            odd_modulus *= size
    odd_part: Tuple[int, ...] = ()
    if odd_modulus > 1:
        odd_part = tuple(int(i) for i in np.nonzero(odd_modulus % orders == 0)[0])

    if not two_part:
        return NilpotentClass(NilpotentKind.SYLOW2_CYCLIC, n, (), odd_part)

    size2 = len(two_part)
    tau = int(orders[list(two_part)].max()).bit_length() - 1
    fingerprint = size2 >= 8 and any(g.class_count(2**i) == 1 for i in range(1, tau + 1))
    if not fingerprint:
        return NilpotentClass(NilpotentKind.SYLOW2_GENERIC, n, two_part, odd_part)
    t = size2.bit_length() - 2
    if g.class_count(2) == 1:
        kind = NilpotentKind.SYLOW2_QUATERNION
    elif g.class_count(4) == 1:
        kind = NilpotentKind.SYLOW2_DIHEDRAL
    else:
        kind = NilpotentKind.SYLOW2_SEMIDIHEDRAL
    return NilpotentClass(kind, n, two_part, odd_part, t)


# -- the verification catalog ----------------------------------------------------------


def _catalog_atoms(max_order: int, include_dihedral_extras: bool) -> List[Atom]:
    atoms: List[Atom] = [Cyclic(n) for n in range(2, max_order + 1)]
    t = 1
    while 2 ** (t + 1) <= max_order:
        atoms.append(Dihedral2(t))
        t += 1
    t = 2
    while 2 ** (t + 1) <= max_order:
        atoms.append(Quaternion2(t))
        t += 1
    t = 3
    while 2 ** (t + 1) <= max_order:
        atoms.append(SemiDihedral2(t))
        t += 1
    if include_dihedral_extras:
        atoms.extend(DihedralFull(n) for n in range(3, max_order // 2 + 1))
    return atoms


def catalog_specs(
    max_order: int, include_dihedral_extras: bool = True
) -> List[GroupSpec]:
    """Every spec expressible as a product of atoms with order <= max_order.

    Specs are generated once per atom multiset (factors in a fixed canonical
    atom order), so the list is free of canonical-text duplicates; isomorphic
    specs with different text (e.g. ``Z6`` and ``Z2 x Z3``) are distinct
    entries on purpose. Sorted by (order, canonical text).
    """
    atoms = _catalog_atoms(max_order, include_dihedral_extras)
    found: List[GroupSpec] = []

    def extend(start: int, chosen: List[Atom], budget: int) -> None:
        for i in range(start, len(atoms)):
            atom = atoms[i]
            if atom.order > budget:
                continue
            chosen.append(atom)
            found.append(chosen[0] if len(chosen) == 1 else DirectProduct(tuple(chosen)))
            extend(i, chosen, budget // atom.order)
            chosen.pop()

    extend(0, [], max_order)
    found.sort(key=lambda s: (s.order, canonical_spec(s)))
    return found


def iter_catalog_groups(
    max_order: int, include_dihedral_extras: bool = True
) -> Iterator[Tuple[GroupSpec, FiniteGroup]]:
    """Build every catalog spec in order; a convenience for sweep-style checks."""
    for spec in catalog_specs(max_order, include_dihedral_extras):
        yield spec, build(spec)
