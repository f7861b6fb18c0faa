#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for irreducible closed sets, the sober verdict, sobrification,
extensions along eta, directed completeness and the Hausdorff implication.
"""

import os
import sys
from itertools import product

import pytest

# Add the project root directory to the path
project_root = os.path.dirname(__file__)
sys.path.append(project_root)

from src.algebra.fuzzy_sets import FuzzySet, PointMap, PointSet, characteristic, labels_of
from src.algebra.quantale import build_standard_quantale
from src.scenarios.corpus import quantale_menu
from src.topology.cotopology import closure, discrete, generate, indiscrete, is_continuous, sub_matrix
from src.topology.sobriety import (
    NOT_SOBER, NOT_STRATIFIED, SOBER, check_directed_complete, eta_homeomorphism_check,
    extend_to_sobrification, hausdorff_implies_sober_check, irreducible_closed_sets, irreducible_is_coprime,
    is_irreducible_closed, is_sober, lemma_report, point_closures, sobrify,
)
from src.utils.errors import (
    NonLinearQuantale, NotClosed, NotContinuous, NotStratified, SourceNotStratified, TargetNotSober,
)
from src.utils.settings import Caps

XY = PointSet(('x', 'y'))
ONE = PointSet(('*',))


def boolean4_discrete():
    return discrete(build_standard_quantale('boolean4'), XY, Caps())


def godel_discrete():
    return discrete(build_standard_quantale('godel', 3), XY, Caps())


def godel_chain_space():
    q = build_standard_quantale('godel', 3)
    chain = PointSet(q.labels)
    return generate(q, chain, [FuzzySet(chain, (0, 1, 2))], 'stratified', Caps())


def not_stratified_space():
    return generate(build_standard_quantale('lukasiewicz', 3), XY, [(1, 0)], 'plain', Caps())


def test_boolean4_discrete_irreducibles():
    tau = boolean4_discrete()
    q = tau.q
    irreducibles = irreducible_closed_sets(tau)
    assert [labels_of(q, f) for f in irreducibles] == [['0', '1'], ['a', 'b'], ['b', 'a'], ['1', '0']]
    assert [tau.index_of(f) for f in irreducibles] == [3, 6, 9, 12]


def test_boolean4_discrete_is_not_sober():
    report = is_sober(boolean4_discrete())
    assert report.verdict == NOT_SOBER
    assert report.point_counts() == [1, 0, 0, 1]
    assert [f.values for f in report.witnesses] == [(1, 2), (2, 1)]
    document = report.to_document()
    assert document['witnesses'] == [['a', 'b'], ['b', 'a']]
    assert document['eta'] == {'x': 3, 'y': 0}


def test_godel_discrete_is_sober():
    report = is_sober(godel_discrete())
    assert report.is_sober
    assert [labels_of(report.space.q, f) for f in report.irreducibles] == [['0', '1'], ['1', '0']]


def test_godel_chain_irreducibles_are_point_closures():
    tau = godel_chain_space()
    assert [f.values for f in irreducible_closed_sets(tau)] == [(0, 1, 2), (0, 2, 2), (2, 2, 2)]
    assert [tuple(row) for row in point_closures(tau)] == [(2, 2, 2), (0, 2, 2), (0, 1, 2)]
    assert is_sober(tau).verdict == SOBER


def test_one_point_indiscrete_space_is_sober():
    tau = indiscrete(build_standard_quantale('lukasiewicz', 3), ONE)
    report = is_sober(tau)
    assert report.is_sober
    assert [f.values for f in report.irreducibles] == [(2,)]


def test_constant_below_top_is_not_irreducible():
    tau = godel_discrete()
    assert not is_irreducible_closed(tau, (1, 1))
    assert is_irreducible_closed(tau, (2, 0))


def test_irreducibility_of_a_non_closed_set_is_refused():
    tau = indiscrete(build_standard_quantale('godel', 3), XY)
    with pytest.raises(NotClosed):
        is_irreducible_closed(tau, (0, 2))


def test_point_closures_are_irreducible_in_stratified_spaces():
    for tau in (godel_chain_space(), boolean4_discrete(), godel_discrete()):
        irreducible = {f.values for f in irreducible_closed_sets(tau)}
        assert all(tuple(int(v) for v in row) in irreducible for row in point_closures(tau))


def test_point_closure_inclusion_reads_the_value():
    tau = godel_chain_space()
    q = tau.q
    for x in tau.space.points:
        point = closure(tau, characteristic(q, tau.space, x))
        degrees = sub_matrix(q, [point.values], tau.matrix)[0]
        assert [int(d) for d in degrees] == [a[x] for a in tau.closed]


def test_not_stratified_verdict_and_refusal():
    tau = not_stratified_space()
    assert is_sober(tau).verdict == NOT_STRATIFIED
    with pytest.raises(NotStratified):
        sobrify(tau)


def test_sobrification_of_boolean4_discrete():
    sobrification = sobrify(boolean4_discrete())
    assert sobrification.space.space.names == ('F3', 'F6', 'F9', 'F12')
    assert sobrification.eta.assignment == (3, 0)
    assert is_sober(sobrification.space).is_sober
    assert all(lemma_report(sobrification).values())
    assert eta_homeomorphism_check(sobrification) == {
        'continuous': True, 'bijective': False, 'homeomorphism': False}


def test_sobrification_values_are_inclusion_degrees():
    tau = boolean4_discrete()
    sobrification = sobrify(tau)
    a = tau.closed[tau.index_of((1, 2))]
    expected = tuple(tau.sub_table[tau.index_of(f), tau.index_of(a)] for f in sobrification.irreducibles)
    assert sobrification.s(a).values == expected


@pytest.mark.parametrize('builder', [
    godel_discrete,
    godel_chain_space,
    lambda: indiscrete(build_standard_quantale('lukasiewicz', 3), ONE),
])
def test_sobrification_of_sober_space_is_homeomorphic(builder):
    sobrification = sobrify(builder())
    assert eta_homeomorphism_check(sobrification) == {
        'continuous': True, 'bijective': True, 'homeomorphism': True}
    assert all(lemma_report(sobrification).values())


def test_sobrification_is_sober_across_spaces():
    q = build_standard_quantale('lukasiewicz', 4)
    for subbasis in ([(3, 1)], [(1, 2), (3, 0)], []):
        tau = generate(q, XY, subbasis, 'stratified', Caps())
        assert is_sober(sobrify(tau).space).is_sober


def test_irreducibles_of_chain_spaces_are_coprime():
    tau = godel_chain_space()
    assert all(irreducible_is_coprime(tau, f) for f in irreducible_closed_sets(tau))


def test_coprime_check_needs_coprime_top():
    tau = boolean4_discrete()
    assert irreducible_is_coprime(tau, irreducible_closed_sets(tau)[1]) is None


def test_eta_extends_to_the_identity_of_the_sobrification():
    tau = boolean4_discrete()
    sobrification = sobrify(tau)
    extension = extend_to_sobrification(sobrification.eta, tau, sobrification.space, Caps())
    assert extension.map.assignment == (0, 1, 2, 3)
    assert extension.uniqueness_checked
    assert extension.competitors == 0


def test_point_of_a_sober_space_extends_uniquely():
    q = build_standard_quantale('godel', 3)
    f = PointMap(ONE, XY, (1,))
    extension = extend_to_sobrification(f, indiscrete(q, ONE), godel_discrete(), Caps())
    assert extension.map.assignment == (1,)
    assert extension.to_document()['assignment'] == {'F2': 'y'}


def test_uniqueness_falls_back_above_the_cap():
    tau = boolean4_discrete()
    sobrification = sobrify(tau)
    extension = extend_to_sobrification(sobrification.eta, tau, sobrification.space, Caps(uniqueness=10))
    assert not extension.uniqueness_checked
    assert extension.map.assignment == (0, 1, 2, 3)


def test_extension_refuses_non_sober_target():
    q = build_standard_quantale('boolean4')
    with pytest.raises(TargetNotSober):
        extend_to_sobrification(PointMap(ONE, XY, (0,)), indiscrete(q, ONE), boolean4_discrete(), Caps())


def test_extension_refuses_discontinuous_map():
    q = build_standard_quantale('godel', 3)
    with pytest.raises(NotContinuous):
        extend_to_sobrification(PointMap.identity(XY), indiscrete(q, XY), godel_discrete(), Caps())


def test_extension_refuses_non_stratified_source():
    q = build_standard_quantale('lukasiewicz', 3)
    f = PointMap(XY, ONE, (0, 0))
    with pytest.raises(SourceNotStratified):
        extend_to_sobrification(f, not_stratified_space(), indiscrete(q, ONE), Caps())


def test_sober_spaces_are_directed_complete():
    for tau in (godel_discrete(), godel_chain_space(), sobrify(boolean4_discrete()).space):
        assert check_directed_complete(tau, Caps()).complete


def test_non_sober_space_reports_missing_suprema():
    tau = boolean4_discrete()
    report = check_directed_complete(tau, Caps())
    assert not report.complete
    assert report.to_document(tau.q)['violations'] == [['a', 'b'], ['b', 'a']]


def test_hausdorff_implies_sober_on_chains():
    result = hausdorff_implies_sober_check(godel_discrete(), Caps())
    assert result['hausdorff'] and result['holds']
    assert result['sober']['verdict'] == SOBER
    result = hausdorff_implies_sober_check(indiscrete(build_standard_quantale('godel', 3), XY), Caps())
    assert not result['hausdorff'] and result['holds']


def test_hausdorff_implication_refuses_boolean4():
    with pytest.raises(NonLinearQuantale):
        hausdorff_implies_sober_check(boolean4_discrete(), Caps())


def test_hausdorff_implication_needs_stratification():
    with pytest.raises(NotStratified):
        hausdorff_implies_sober_check(not_stratified_space(), Caps())


def small_stratified_spaces(q):
    """Every stratified space on at most two points generated from one subbasis member."""
    found = {}
    for space in (ONE, XY):
        candidates = [indiscrete(q, space), discrete(q, space, Caps())]
        candidates += [generate(q, space, [values], 'stratified', Caps())
                       for values in product(q.elements, repeat=space.size)]
        for tau in candidates:
            key = (space.names, frozenset(tuple(row) for row in tau.matrix.tolist()))
            found.setdefault(key, tau)
    return [tau for tau in found.values() if tau.is_stratified]


@pytest.mark.parametrize('q', quantale_menu(4), ids=lambda q: q.name)
def test_every_continuous_map_into_a_sober_space_extends_uniquely(q):
    spaces = small_stratified_spaces(q)
    targets = [tau for tau in spaces if is_sober(tau).is_sober]
    assert targets
    checked = 0
    for tau_x in spaces:
        sobrification = sobrify(tau_x)
        for tau_y in targets:
            for assignment in product(tau_y.space.points, repeat=tau_x.space.size):
                f = PointMap(tau_x.space, tau_y.space, assignment)
                if not is_continuous(f, tau_x, tau_y)[0]:
                    continue
                extension = extend_to_sobrification(f, tau_x, tau_y, Caps())
                assert extension.uniqueness_checked
                assert extension.competitors == 0
                assert is_continuous(extension.map, sobrification.space, tau_y)[0]
                assert sobrification.eta.compose(extension.map).assignment == f.assignment
                checked += 1
    assert checked > 0


if __name__ == "__main__":
    pytest.main([__file__])
