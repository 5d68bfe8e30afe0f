"""Multiplication tables, element orders, cyclic subgroups and quotients."""

from __future__ import annotations

import numpy as np
import pytest

from noncyclic import (
    CyclicSubgroup,
    FiniteGroup,
    StructuralError,
    build,
    euler_phi,
    parse_spec,
)


def G(text: str) -> FiniteGroup:
    return build(parse_spec(text))


def test_euler_phi_small_values():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_euler_phi_rejects_nonpositive():
    with pytest.raises(ValueError):
        euler_phi(0)


def test_identity_and_inverses():
    g = G("Z12")
    assert g.identity == 0
    assert all(int(g.mul[x, g.inv[x]]) == g.identity for x in range(g.order))


def test_element_orders_quaternion():
    g = G("Q8")
    assert sorted(int(d) for d in g.elem_order) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_exponent_and_omega():
    g = G("Z4 x Z2")
    assert g.exponent() == 4
    assert {g.labels[x] for x in g.omega(4)} == {"(1,0)", "(3,0)", "(1,1)", "(3,1)"}
    assert list(g.omega(4)) == sorted(g.omega(4))
    assert g.class_count(4) == 2
    assert g.class_count(2) == 3


def test_cyclic_closure_is_canonical():
    g = G("Q8")
    a = g.labels.index("a")
    sub = g.cyclic_closure(a)
    assert isinstance(sub, CyclicSubgroup)
    assert len(sub) == 4
    assert a in sub
    assert list(sub.elements) == sorted(sub.elements)


def test_membership_matrix_matches_closures():
    g = G("Z4 x Z2")
    member = g.membership_matrix()
    for x in range(g.order):
        for z in range(g.order):
            assert bool(member[x, z]) == (x in g.cyclic_closure(z))


def test_pair_cyclic_matches_generated_subgroup():
    """A pair is cyclic exactly when its generated subgroup has a full-order element."""
    g = G("D8")
    for x in range(g.order):
        for y in range(g.order):
            sub = g.two_generated_subgroup(x, y)
            cyclic = max(int(g.elem_order[z]) for z in sub) == len(sub)
            assert g.is_pair_cyclic(x, y) == cyclic


def test_pair_cyclic_matrix_is_symmetric():
    g = G("Z3 x Q8")
    m = g.pair_cyclic_matrix()
    assert bool((m == m.T).all())
    assert bool(m[:, g.identity].all())


def test_center_of_dihedral():
    g = G("D8")
    assert {g.labels[z] for z in g.center()} == {"1", "a^2"}


def test_maximal_cyclic_subgroups_quaternion():
    subs = G("Q8").maximal_cyclic_subgroups()
    assert len(subs) == 3
    assert all(len(s) == 4 for s in subs)


def test_maximal_cyclic_subgroups_mixed_sizes():
    g = G("Z4 x Z2")
    sizes = sorted(len(s) for s in g.maximal_cyclic_subgroups())
    assert sizes == [2, 2, 4, 4]


def test_quotient_collapses_quaternion_center():
    g = G("Q8")
    a2 = g.labels.index("a^2")
    quotient, coset_index, cosets = g.quotient_by((g.identity, a2))
    assert quotient.order == 4
    assert all(int(quotient.elem_order[x]) <= 2 for x in range(quotient.order))
    assert cosets[0][0] == g.identity
    for x in range(g.order):
        assert x in cosets[coset_index[x]]


def test_rejects_double_identity_row():
    with pytest.raises(StructuralError):
        FiniteGroup([[0, 1], [0, 1]])


def test_rejects_out_of_range_entries():
    with pytest.raises(StructuralError):
        FiniteGroup([[0, 1], [1, 5]])


def _swapped_latin_square() -> np.ndarray:
    """The Z8 addition table with one intercalate flipped: a loop, not a group."""
    table = (np.arange(8)[:, None] + np.arange(8)[None, :]) % 8
    for row in (1, 5):
        table[row, 2], table[row, 6] = table[row, 6], table[row, 2]
    return table


def test_validation_rejects_nonassociative_loop():
    table = _swapped_latin_square()
    FiniteGroup(table)  # construction alone does not validate
    with pytest.raises(StructuralError):
        FiniteGroup(table, validate=True)


def test_validation_samples_large_tables():
    n = 300
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    g = FiniteGroup(table, validate=True, rng=np.random.default_rng(3))
    assert g.order == n
    assert g.exponent() == n
