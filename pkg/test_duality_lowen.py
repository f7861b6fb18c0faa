#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for crisp topologies, the Lowen cotopology, negation between
Q-topologies and cotopologies, and frame points.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# Add the project root directory to the path
project_root = os.path.dirname(__file__)
sys.path.append(project_root)

from src.algebra.fuzzy_sets import FuzzySet, PointSet, characteristic, characteristic_of
from src.algebra.quantale import build_standard_quantale
from src.topology import duality
from src.topology.cotopology import closure, discrete, generate
from src.topology.duality import (
    CrispTopology, QTopology, all_crisp_topologies, brute_fr_maps, crisp_closure, crisp_embedding_report,
    crisp_irreducible_closed_subsets, discrete_crisp, fr_axiom_failure, fr_map_of_irreducible, fr_points,
    good_extension_check, indiscrete_crisp, is_crisp_sober, is_sober_topological, is_upper_semicontinuous,
    level_set_lemma_report, lowen, negate_topology, negation_identities, point_evaluation,
    recover_irreducible,
)
from src.topology.sobriety import irreducible_closed_sets, is_sober
from src.utils.errors import (
    CapExceeded, InputError, LawViolation, NoDoubleNegation, NonLinearQuantale, NotEnoughCoprimes,
    NotStratified,
)
from src.utils.settings import Caps

XY = PointSet(('x', 'y'))
SIERPINSKI = CrispTopology(PointSet(('s0', 's1')), [set(), {0}, {0, 1}])


def test_crisp_topology_validation():
    with pytest.raises(LawViolation) as excinfo:
        CrispTopology(XY, [{0, 1}])
    assert excinfo.value.law == 'crisp-empty'
    with pytest.raises(LawViolation) as excinfo:
        CrispTopology(PointSet(('a', 'b', 'c')), [set(), {0}, {1}, {0, 1, 2}])
    assert excinfo.value.law == 'crisp-union'
    with pytest.raises(InputError):
        CrispTopology(XY, [set(), {0, 1, 5}])


def test_number_of_finite_topologies():
    assert len(all_crisp_topologies(XY, Caps())) == 4
    assert len(all_crisp_topologies(PointSet(('a', 'b', 'c')), Caps())) == 29


def test_crisp_closures_and_irreducibles():
    assert crisp_closure(SIERPINSKI, {1}) == frozenset({0, 1})
    assert crisp_closure(SIERPINSKI, {0}) == frozenset({0})
    assert crisp_irreducible_closed_subsets(SIERPINSKI) == [frozenset({0}), frozenset({0, 1})]


def test_crisp_sobriety():
    assert is_crisp_sober(discrete_crisp(XY))
    assert is_crisp_sober(SIERPINSKI)
    assert not is_crisp_sober(indiscrete_crisp(XY))


def test_lowen_of_extreme_topologies():
    q = build_standard_quantale('godel', 3)
    assert len(lowen(q, indiscrete_crisp(XY), Caps())) == 3
    assert len(lowen(q, discrete_crisp(XY), Caps())) == 9


def test_lowen_of_sierpinski_space():
    q = build_standard_quantale('godel', 3)
    tau = lowen(q, SIERPINSKI, Caps())
    assert len(tau) == 6
    assert all(a[0] >= a[1] for a in tau.closed)
    assert tau.is_stratified


def test_upper_semicontinuity_on_sierpinski_space():
    q = build_standard_quantale('godel', 3)
    space = SIERPINSKI.space
    assert is_upper_semicontinuous(q, SIERPINSKI, FuzzySet(space, (2, 1)))
    assert not is_upper_semicontinuous(q, SIERPINSKI, FuzzySet(space, (1, 2)))
    assert is_upper_semicontinuous(q, SIERPINSKI, FuzzySet(space, (1, 2)), levels=[0])


@pytest.mark.parametrize('kind, n', [('godel', 3), ('lukasiewicz', 4), ('boolean4', 2)])
def test_level_set_lemma(kind, n):
    q = build_standard_quantale(kind, n)
    for topology in (SIERPINSKI, discrete_crisp(XY), indiscrete_crisp(XY)):
        report = level_set_lemma_report(q, topology, Caps())
        assert all(report.values())
        assert 'coprime_levels_suffice' in report


def test_lowen_over_boolean4_is_not_sober():
    q = build_standard_quantale('boolean4')
    tau = lowen(q, discrete_crisp(XY), Caps())
    assert len(tau) == 16
    assert not is_sober(tau).is_sober


@pytest.mark.parametrize('n', [2, 3, 4, 5])
@pytest.mark.parametrize('kind', ['godel', 'lukasiewicz'])
def test_good_extension_on_small_topologies(kind, n):
    q = build_standard_quantale(kind, n)
    for space in (PointSet(('a',)), XY, PointSet(('a', 'b', 'c'))):
        for topology in all_crisp_topologies(space, Caps()):
            assert good_extension_check(q, topology, Caps())['holds']


@pytest.mark.parametrize('kind, n', [('godel', 3), ('godel', 4), ('lukasiewicz', 4), ('nilpotent_min', 4)])
def test_lowen_contains_the_crisp_topology(kind, n):
    q = build_standard_quantale(kind, n)
    for space in (PointSet(('a',)), XY, PointSet(('a', 'b', 'c'))):
        for topology in all_crisp_topologies(space, Caps()):
            tau = lowen(q, topology, Caps())
            for k in topology.closed:
                assert characteristic_of(q, space, k) in tau
            for x in space.points:
                expected = characteristic_of(q, space, crisp_closure(topology, {x}))
                assert closure(tau, characteristic(q, space, x)) == expected
            assert crisp_embedding_report(q, topology, tau) == {
                'crisp_closed_sets_closed': True, 'point_closures_crisp': True}


def test_good_extension_refuses_boolean4():
    with pytest.raises(NonLinearQuantale):
        good_extension_check(build_standard_quantale('boolean4'), discrete_crisp(XY), Caps())


def test_lowen_needs_enough_coprimes(monkeypatch):
    monkeypatch.setattr(duality, 'has_enough_coprimes', lambda q: False)
    with pytest.raises(NotEnoughCoprimes):
        lowen(build_standard_quantale('godel', 3), SIERPINSKI, Caps())


def test_negation_round_trip_keeps_stratification():
    q = build_standard_quantale('lukasiewicz', 5)
    tau = generate(q, XY, [(3, 1)], 'stratified', Caps())
    opened = negate_topology(tau)
    assert isinstance(opened, QTopology)
    assert opened.mode == 'stratified'
    back = negate_topology(opened)
    assert np.array_equal(back.matrix, tau.matrix)
    assert back.is_stratified


def test_negation_of_non_stratified_space_is_weak():
    q = build_standard_quantale('lukasiewicz', 3)
    opened = negate_topology(generate(q, XY, [(1, 0)], 'plain', Caps()))
    assert opened.mode == 'weak'
    assert not opened.is_stratified


def test_negation_refused_without_double_negation():
    q = build_standard_quantale('godel', 3)
    with pytest.raises(NoDoubleNegation) as excinfo:
        negate_topology(discrete(q, XY, Caps()))
    assert excinfo.value.witness == '1/2'


def test_q_topology_axioms():
    q = build_standard_quantale('lukasiewicz', 3)
    with pytest.raises(LawViolation) as excinfo:
        QTopology(q, XY, [(0, 0), (2, 2)])
    assert excinfo.value.law == 'O1'
    family = [(0, 0), (1, 1), (1, 2), (2, 2)]
    assert len(QTopology(q, XY, family)) == 4
    with pytest.raises(LawViolation) as excinfo:
        QTopology(q, XY, family, mode='stratified')
    assert excinfo.value.law == 'O4'


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=3), min_size=3, max_size=3),
    st.lists(st.integers(min_value=0, max_value=3), min_size=3, max_size=3),
)
def test_negation_identities_hold(a_values, b_values):
    q = build_standard_quantale('lukasiewicz', 4)
    space = PointSet(('p0', 'p1', 'p2'))
    report = negation_identities(q, FuzzySet(space, a_values), FuzzySet(space, b_values))
    assert report == {'contrapositive': True, 'overlap': True}


def test_point_evaluations_are_frame_points():
    q = build_standard_quantale('lukasiewicz', 3)
    topology = negate_topology(discrete(q, XY, Caps()))
    for x in XY.points:
        assert fr_axiom_failure(point_evaluation(topology, x)) is None


def test_frame_point_of_boolean4_irreducible():
    q = build_standard_quantale('boolean4')
    topology = negate_topology(discrete(q, XY, Caps()))
    f = FuzzySet(XY, (q.index_of('a'), q.index_of('b')))
    g = fr_map_of_irreducible(topology, f)
    assert fr_axiom_failure(g) is None
    assert g(FuzzySet(XY, (q.top, q.bottom))) == q.index_of('a')
    assert g(FuzzySet(XY, (q.bottom, q.top))) == q.index_of('b')
    assert recover_irreducible(g) == f


def test_frame_points_match_irreducibles():
    q = build_standard_quantale('boolean4')
    tau = discrete(q, XY, Caps())
    points = fr_points(negate_topology(tau))
    assert [f.values for f, _ in points] == [f.values for f in irreducible_closed_sets(tau)]


@pytest.mark.parametrize('kind, n', [('boolean4', 2), ('lukasiewicz', 3), ('lukasiewicz', 4)])
def test_backtracking_finds_exactly_the_frame_points(kind, n):
    q = build_standard_quantale(kind, n)
    topology = negate_topology(discrete(q, XY, Caps()))
    brute = {g.values for g in brute_fr_maps(topology, Caps())}
    assert brute == {g.values for _, g in fr_points(topology)}


THREE = PointSet(('p0', 'p1', 'p2'))


@pytest.mark.parametrize('kind, n', [
    ('lukasiewicz', 3), ('lukasiewicz', 4), ('lukasiewicz', 5), ('nilpotent_min', 4), ('boolean4', 2),
])
@pytest.mark.parametrize('space', [PointSet(('p0',)), XY, THREE], ids=lambda s: f"{s.size}-points")
def test_backtracking_agrees_on_generated_spaces(kind, n, space):
    q = build_standard_quantale(kind, n)
    members = [
        tuple(q.top if x == 0 else q.bottom for x in space.points),
        tuple((x + 1) % q.size for x in space.points),
    ]
    for member in members:
        topology = negate_topology(generate(q, space, [member], 'stratified', Caps()))
        points = fr_points(topology)
        brute = {g.values for g in brute_fr_maps(topology, Caps(search=2_000_000))}
        assert brute == {g.values for _, g in points}
        for f, g in points:
            assert recover_irreducible(g) == f


def test_backtracking_respects_the_search_cap():
    q = build_standard_quantale('boolean4')
    topology = negate_topology(discrete(q, XY, Caps()))
    with pytest.raises(CapExceeded) as excinfo:
        brute_fr_maps(topology, Caps(search=3))
    assert excinfo.value.flag == '--search-cap'


def test_topological_sobriety_matches_cotopological_sobriety():
    for q in (build_standard_quantale('boolean4'), build_standard_quantale('lukasiewicz', 3)):
        tau = discrete(q, XY, Caps())
        result = is_sober_topological(negate_topology(tau))
        assert result['sober'] == is_sober(tau).is_sober
    assert not is_sober_topological(negate_topology(discrete(build_standard_quantale('boolean4'), XY, Caps())))['sober']


def test_topological_sobriety_needs_stratification():
    q = build_standard_quantale('lukasiewicz', 3)
    weak = QTopology(q, XY, [(0, 0), (1, 1), (1, 2), (2, 2)])
    with pytest.raises(NotStratified):
        is_sober_topological(weak)


if __name__ == "__main__":
    pytest.main([__file__])
