"""Finite groups as dense multiplication tables, with 0-based element indices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import StructuralError

__all__ = [
    "CyclicSubgroup",
    "FiniteGroup",
    "euler_phi",
]

# Exhaustive associativity checking is cubic; above this order a validating
# build samples random triples instead.
_EXHAUSTIVE_ASSOC_LIMIT = 256
_SAMPLED_ASSOC_TRIPLES = 100_000


def euler_phi(n: int) -> int:
    """Euler's totient, by trial division. Exact integer arithmetic only."""
    if n < 1:
        raise ValueError(f"euler_phi expects n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class CyclicSubgroup:
    """A cyclic subgroup as a canonical sorted element tuple plus one generator."""

    elements: Tuple[int, ...]
    generator: int

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


class FiniteGroup:
    """A finite group backed by an immutable dense multiplication table.

    Elements are the indices 0..order-1. The table, inverse map and element
    orders are computed eagerly; heavier derived data (cyclic-subgroup
    membership, the pairwise "generates a cyclic subgroup" matrix) is cached
    lazily. All caches are idempotent pure functions of the table, so
    concurrent reads may race on who computes them first without changing any
    result.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]] | np.ndarray,
        labels: Optional[Sequence[str]] = None,
        name: str = "G",
        validate: bool = False,
        rng: Optional[np.random.Generator] = None,
    ) -> None:
        table = np.asarray(mul, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise StructuralError(f"multiplication table must be square, got shape {table.shape}")
        n = int(table.shape[0])
        if n == 0:
            raise StructuralError("a group has at least one element")
        if table.min() < 0 or table.max() >= n:
            raise StructuralError("table entries must be element indices in range")
        table = table.copy()
        table.setflags(write=False)

        self.order = n
        self.mul = table
        self.name = name
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise StructuralError(f"need {n} labels, got {len(labels)}")
        self.labels: Tuple[str, ...] = tuple(labels)

        self.identity = self._find_identity()
        self.inv = self._find_inverses()
        self.elem_order, membership = self._orders_and_membership()
        self._membership = membership  # M[x, z] == True iff x lies in <z>
        self._pair_cyclic: Optional[np.ndarray] = None
        self._closure_cache: Dict[frozenset, Tuple[int, ...]] = {}

        if validate:
            self._validate(rng)

    # -- construction helpers -------------------------------------------------

    def _find_identity(self) -> int:
        idx = np.arange(self.order, dtype=np.int32)
        hits = np.nonzero((self.mul == idx[None, :]).all(axis=1))[0]
        if len(hits) != 1:
            raise StructuralError(f"table has {len(hits)} identity rows, expected exactly 1")
        e = int(hits[0])
        if not (self.mul[:, e] == idx).all():
            raise StructuralError("identity works on the left but not on the right")
        return e

    def _find_inverses(self) -> np.ndarray:
        is_e = self.mul == self.identity
        if not (is_e.sum(axis=1) == 1).all():
            raise StructuralError("some element lacks a unique right inverse")
        inv = np.argmax(is_e, axis=1).astype(np.int32)
        if not (self.mul[inv, np.arange(self.order)] == self.identity).all():
            raise StructuralError("right inverses fail on the left")
        inv.setflags(write=False)
        return inv

    def _orders_and_membership(self) -> Tuple[np.ndarray, np.ndarray]:
        """Element orders and the membership matrix M[x, z] = (x in <z>), together.

        Walks the power sequence of every element in lockstep; the walk length
        is exp(G), so the total cost is O(order * exponent) numpy steps.
        """
        n = self.order
        idx = np.arange(n, dtype=np.int32)
        orders = np.zeros(n, dtype=np.int64)
        membership = np.zeros((n, n), dtype=bool)
        membership[self.identity, :] = True
        power = idx.copy()  # power[z] = z^k
        k = 1
        while True:
            membership[power, idx] = True
            newly_done = (power == self.identity) & (orders == 0)
            orders[newly_done] = k
            if orders.all():
                break
            power = self.mul[power, idx]
            k += 1
            if k > n:
                raise StructuralError("power sequences do not return to the identity")
        orders.setflags(write=False)
        membership.setflags(write=False)
        return orders, membership

    def _validate(self, rng: Optional[np.random.Generator]) -> None:
        n = self.order
        mul = self.mul
        if n <= _EXHAUSTIVE_ASSOC_LIMIT:
            for a in range(n):
                left = mul[mul[a], :]  # (b, c) -> (a*b)*c
                right = mul[a][mul]  # (b, c) -> a*(b*c)
                if not (left == right).all():
                    raise StructuralError(f"associativity fails in row {a}")
        else:
            if rng is None:
                rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, _SAMPLED_ASSOC_TRIPLES))
            if not (mul[mul[a, b], c] == mul[a, mul[b, c]]).all():
                raise StructuralError("associativity fails on a sampled triple")
        if (self.order % self.elem_order != 0).any():
            raise StructuralError("an element order does not divide the group order")

    # -- basic queries ---------------------------------------------------------

    def _check_index(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise StructuralError(f"element index {x} out of range for order {self.order}")
        return int(x)

    def multiply(self, x: int, y: int) -> int:
        return int(self.mul[self._check_index(x), self._check_index(y)])

    def inverse(self, x: int) -> int:
        return int(self.inv[self._check_index(x)])

    def label(self, x: int) -> str:
        return self.labels[self._check_index(x)]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    # -- cyclic-subgroup machinery ----------------------------------------------

    def membership_matrix(self) -> np.ndarray:
        """Boolean matrix M with M[x, z] true iff x is a power of z."""
        return self._membership

    def pair_cyclic_matrix(self) -> np.ndarray:
        """Boolean matrix P with P[x, y] true iff <x, y> is cyclic.

        {x, y} generates a cyclic subgroup exactly when both lie in a common
        cyclic subgroup <z>: one direction is that subgroups of cyclic groups
        are cyclic, the other takes z to be a generator of <x, y> itself.
        """
        if self._pair_cyclic is None:
            m = self._membership.astype(np.float32)
            common = m @ m.T
            pair = common > 0.5
            pair.setflags(write=False)
            self._pair_cyclic = pair
        return self._pair_cyclic

    def cyclic_closure(self, x: int) -> CyclicSubgroup:
        """The cyclic subgroup <x>, with a least-index maximal-order generator."""
        x = self._check_index(x)
        elems = np.nonzero(self._membership[:, x])[0]
        size = len(elems)
        generator = x
        for cand in elems:
            if self.elem_order[cand] == size:
                generator = int(cand)
                break
        return CyclicSubgroup(tuple(int(e) for e in elems), generator)

    def two_generated_subgroup(self, x: int, y: int) -> Tuple[int, ...]:
        """Elements of <x, y>, computed as a closure under right multiplication.

        Every member of <x, y> is a word in x and y (inverses come for free in
        a finite group), so seeding with {x, y} and right-multiplying by x and
        y until stable enumerates the subgroup.
        """
        x = self._check_index(x)
        y = self._check_index(y)
        key = frozenset((x, y))
        cached = self._closure_cache.get(key)
        if cached is not None:
            return cached
        seen = {x, y}
        frontier = [x, y]
        mul = self.mul
        while frontier:
            nxt = []
            for g in frontier:
                for h in (x, y):
                    p = int(mul[g, h])
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        result = tuple(sorted(seen))
        self._closure_cache[key] = result
        return result

    def is_pair_cyclic(self, x: int, y: int) -> bool:
        """True iff <x, y> is cyclic (some member's order equals its size)."""
        return bool(self.pair_cyclic_matrix()[self._check_index(x), self._check_index(y)])

    # -- order statistics --------------------------------------------------------

    def exponent(self) -> int:
        return int(reduce(math.lcm, (int(o) for o in np.unique(self.elem_order)), 1))

    def element_orders(self) -> Tuple[int, ...]:
        return tuple(sorted(set(int(o) for o in self.elem_order)))

    def omega(self, m: int) -> Tuple[int, ...]:
        """Indices of the elements of order exactly m, ascending."""
        if m < 1:
            raise ValueError(f"element orders are positive, got {m}")
        return tuple(int(i) for i in np.nonzero(self.elem_order == m)[0])

    def class_count(self, d: int) -> int:
        """Number of cyclic subgroups of order d, by canonicalizing <x> over Omega_d."""
        members = self.omega(d)
        if not members:
            return 0
        distinct = {tuple(np.nonzero(self._membership[:, x])[0].tolist()) for x in members}
        return len(distinct)

    def is_cyclic(self) -> bool:
        return self.exponent() == self.order

    def center(self) -> Tuple[int, ...]:
        mask = (self.mul == self.mul.T).all(axis=1)
        return tuple(int(i) for i in np.nonzero(mask)[0])

    def maximal_cyclic_subgroups(self) -> Tuple[CyclicSubgroup, ...]:
        """All maximal cyclic subgroups, sorted by (size, element tuple).

        <x> is maximal iff every z with x in <z> satisfies |<z>| = |<x>|, i.e.
        no strictly larger cyclic subgroup contains x.
        """
        maximal_sets = {}
        for x in range(self.order):
            containing = self._membership[x]  # z's with x in <z>
            if int(self.elem_order[containing].max()) > int(self.elem_order[x]):
                continue
            sub = self.cyclic_closure(x)
            maximal_sets[sub.elements] = sub
        return tuple(sorted(maximal_sets.values(), key=lambda s: (len(s.elements), s.elements)))

    # -- quotients -----------------------------------------------------------------

    def quotient_by(self, normal: Iterable[int]) -> Tuple["FiniteGroup", np.ndarray, List[Tuple[int, ...]]]:
        """The quotient by a normal subgroup, as a concrete coset table.

        Returns (quotient, coset_index, cosets) where coset_index maps each
        element of this group to its coset's index in the quotient and cosets
        lists each coset's members ascending. Cosets are ordered by least
        member, so whenever the identity is element 0 the identity coset is
        element 0 of the quotient.
        """
        nset = sorted({self._check_index(s) for s in normal})
        if not nset or nset[0] != self.identity:
            raise StructuralError("a normal subgroup must contain the identity")
        narr = np.array(nset, dtype=np.int32)
        closed = set(nset)
        for s in nset:
            if int(self.inv[s]) not in closed:
                raise StructuralError("subset is not closed under inverses")
            for t in nset:
                if int(self.mul[s, t]) not in closed:
                    raise StructuralError("subset is not closed under multiplication")
        for g in range(self.order):
            conj = self.mul[self.mul[g, narr], self.inv[g]]
            if not all(int(c) in closed for c in conj):
                raise StructuralError("subgroup is not normal")

        coset_index = np.full(self.order, -1, dtype=np.int32)
        cosets: List[Tuple[int, ...]] = []
        for x in range(self.order):
            if coset_index[x] >= 0:
                continue
            members = np.sort(self.mul[x, narr])
            coset_index[members] = len(cosets)
            cosets.append(tuple(int(m) for m in members))
        reps = np.array([c[0] for c in cosets], dtype=np.int32)
        qmul = coset_index[self.mul[np.ix_(reps, reps)]]
        qlabels = [f"[{self.labels[int(r)]}]" for r in reps]
        quotient = FiniteGroup(qmul, qlabels, name=f"{self.name}/N{len(nset)}")
        return quotient, coset_index, cosets
