#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for Q-orders, fuzzy lower sets, suprema and the Alexandroff cotopology.
"""

import os
import sys
from itertools import product

import pytest

# Add the project root directory to the path
project_root = os.path.dirname(__file__)
sys.path.append(project_root)

from src.algebra.fuzzy_sets import FuzzySet, PointMap, PointSet, constant, enumerate_all
from src.algebra.qorder import (
    alexandroff, d_L, d_R, discrete_order, gamma_omega_report, is_irreducible_lower_set, is_lower_set,
    is_order_preserving, is_upper_set, lower_sets, opposite, suprema, validate_qorder,
)
from src.algebra.quantale import build_standard_quantale
from src.topology.sobriety import irreducible_mask
from src.utils.errors import InputError, LawViolation, NotReflexive, NotTransitive
from src.utils.settings import Caps

XY = PointSet(('x', 'y'))


def two_point_orders(q):
    """Every valid Q-order on two points."""
    orders = []
    for p, r in product(q.elements, repeat=2):
        try:
            orders.append(validate_qorder(q, XY, [[q.top, p], [r, q.top]]))
        except LawViolation:
            continue
    return orders


def test_discrete_and_chain_orders_validate():
    q = build_standard_quantale('lukasiewicz', 5)
    order = d_R(q)
    assert order(4, 2) == q.top
    assert order(2, 4) == q.index_of('1/2')
    assert d_L(q) == opposite(order)
    assert discrete_order(q, XY).R == ((4, 0), (0, 4))


def test_non_reflexive_relation_is_rejected():
    q = build_standard_quantale('godel', 2)
    with pytest.raises(NotReflexive) as excinfo:
        validate_qorder(q, XY, [[1, 0], [0, 0]])
    assert excinfo.value.witness == (1,)
    assert excinfo.value.law == 'reflexivity'


def test_non_transitive_relation_names_the_triple():
    q = build_standard_quantale('godel', 2)
    points = PointSet(('a', 'b', 'c'))
    table = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    with pytest.raises(NotTransitive) as excinfo:
        validate_qorder(q, points, table)
    assert excinfo.value.witness == (0, 1, 2)


def test_bad_relation_shape_is_input_error():
    q = build_standard_quantale('godel', 2)
    with pytest.raises(InputError):
        validate_qorder(q, XY, [[1, 0]])


def test_opposite_is_an_involution():
    q = build_standard_quantale('nilpotent_min', 4)
    order = d_R(q)
    assert opposite(opposite(order)) == order


def test_constants_are_lower_and_upper_sets():
    q = build_standard_quantale('lukasiewicz', 4)
    order = d_R(q)
    for p in q.elements:
        assert is_lower_set(order, constant(order.space, p))[0]
        assert is_upper_set(order, constant(order.space, p))[0]


def test_every_fuzzy_set_is_lower_in_a_discrete_order():
    q = build_standard_quantale('boolean4')
    order = discrete_order(q, XY)
    assert len(lower_sets(order, Caps())) == 16


def test_identity_is_a_lower_set_of_the_chain():
    q = build_standard_quantale('godel', 5)
    order = d_R(q)
    identity = FuzzySet(order.space, tuple(q.elements))
    assert is_lower_set(order, identity) == (True, None)
    holds, witness = is_upper_set(order, identity)
    assert not holds and witness is not None


def test_lower_sets_are_order_preserving_into_d_L():
    q = build_standard_quantale('lukasiewicz', 3)
    target = d_L(q)
    for order in two_point_orders(q):
        for phi in enumerate_all(q, XY, Caps()):
            as_map = PointMap(XY, target.space, phi.values)
            assert is_lower_set(order, phi)[0] == is_order_preserving(as_map, opposite(order), target)[0]


def test_representable_lower_sets_are_irreducible():
    q = build_standard_quantale('lukasiewicz', 3)
    order = d_R(q)
    for a in order.space.points:
        phi = FuzzySet(order.space, tuple(order(x, a) for x in order.space.points))
        assert is_irreducible_lower_set(order, phi, Caps())
        assert a in suprema(order, phi)


def test_irreducible_lower_set_on_boolean4():
    q = build_standard_quantale('boolean4')
    order = discrete_order(q, XY)
    phi = FuzzySet(XY, (q.index_of('a'), q.index_of('b')))
    assert is_irreducible_lower_set(order, phi, Caps())
    assert suprema(order, phi) == ()


def test_lower_set_below_top_is_not_irreducible():
    q = build_standard_quantale('godel', 3)
    order = d_R(q)
    assert not is_irreducible_lower_set(order, constant(order.space, 1), Caps())


def test_irreducibility_requires_a_lower_set():
    q = build_standard_quantale('godel', 3)
    order = d_R(q)
    with pytest.raises(InputError):
        is_irreducible_lower_set(order, FuzzySet(order.space, (2, 0, 0)), Caps())


def test_discrete_order_without_supremum():
    q = build_standard_quantale('godel', 2)
    order = discrete_order(q, XY)
    assert suprema(order, constant(XY, q.top)) == ()


def test_alexandroff_of_discrete_order_is_everything():
    q = build_standard_quantale('lukasiewicz', 3)
    tau = alexandroff(discrete_order(q, XY), Caps())
    assert len(tau) == 9
    assert tau.mode == 'strong'


def test_alexandroff_lukasiewicz_chain_is_increasing_lipschitz():
    q = build_standard_quantale('lukasiewicz', 5)
    tau = alexandroff(d_R(q), Caps())
    expected = {
        values for values in product(q.elements, repeat=q.size)
        if all(0 <= values[y] - values[x] <= y - x for x in q.elements for y in q.elements if x < y)
    }
    assert {a.values for a in tau.closed} == expected


def test_alexandroff_godel_chain_is_truncated_lifts():
    q = build_standard_quantale('godel', 4)
    tau = alexandroff(d_R(q), Caps())
    lifts = [
        values for values in product(q.elements, repeat=q.size)
        if all(values[x] <= values[x + 1] for x in range(q.size - 1)) and all(values[x] >= x for x in q.elements)
    ]
    expected = {tuple(min(v, a) for v in lift) for lift in lifts for a in q.elements}
    assert {a.values for a in tau.closed} == expected


def test_specialization_of_alexandroff_recovers_the_order():
    q = build_standard_quantale('lukasiewicz', 4)
    report = gamma_omega_report(d_R(q), Caps())
    assert report['refines']
    assert report['equal']


@pytest.mark.parametrize('kind, n', [('godel', 3), ('lukasiewicz', 3), ('boolean4', 2)])
def test_irreducible_lower_sets_match_irreducible_closed_sets(kind, n):
    q = build_standard_quantale(kind, n)
    for order in two_point_orders(q):
        tau = alexandroff(order, Caps())
        mask = irreducible_mask(tau)
        for i, phi in enumerate(tau.closed):
            assert is_irreducible_lower_set(order, phi, Caps()) == bool(mask[i])


if __name__ == "__main__":
    pytest.main([__file__])
