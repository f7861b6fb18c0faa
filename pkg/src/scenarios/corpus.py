#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Seeded corpus of small generated cotopological spaces and the property
sweeps run over it.
"""

import random
import logging
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from src.algebra.fuzzy_sets import PointSet, characteristic, enumerate_values
from src.algebra.quantale import build_standard_quantale, check_double_negation, is_linear
from src.topology.cotopology import (
    MODES, MODE_FLAGS, check_closure_axioms, closure, closure_rows, generate, specialization,
    stratification_report, sub_matrix,
)
from src.topology.duality import is_sober_topological, negate_topology
from src.topology.sobriety import (
    check_directed_complete, eta_homeomorphism_check, hausdorff_implies_sober_check, is_sober,
    lemma_report, sobrify,
)
from src.utils.errors import CapExceeded

logger = logging.getLogger(__name__)

# largest |Q|^(|X|^2) for which the Hausdorff sweep builds the product space
HAUSDORFF_SWEEP_LIMIT = 4096


@dataclass
class CorpusMember:
    """
    Attributes:
        index (int): Position in the corpus
        quantale (Quantale): Value quantale
        subbasis (list): Value tuples the space was generated from
        space (Cotopology): Generated space
    """
    index: int
    quantale: object
    subbasis: list
    space: object

    @property
    def mode(self):
        return self.space.mode

    def describe(self):
        return {
            'index': self.index,
            'quantale': self.quantale.name,
            'points': self.space.space.size,
            'subbasis': [list(row) for row in self.subbasis],
            'mode': self.mode,
            'closed_sets': len(self.space),
        }


def quantale_menu(max_quantale):
    """Standard quantales with at most max_quantale elements, in fixed order."""
    menu = []
    for n in range(2, max_quantale + 1):
        for kind in ('godel', 'lukasiewicz', 'nilpotent_min'):
            menu.append(build_standard_quantale(kind, n))
    if max_quantale >= 4:
        menu.append(build_standard_quantale('boolean4'))
    return menu


def build_corpus(seed, size, max_quantale, max_points, caps):
    """
    Deterministic corpus: the same arguments always give the same members.

    Args:
        seed (int): Random seed
        size (int): Number of members
        max_quantale (int): Largest quantale size
        max_points (int): Largest point set

    Returns:
        list: CorpusMember values

    Raises:
        CapExceeded: A generated family exceeds the family cap
    """
    rng = random.Random(seed)
    menu = quantale_menu(max_quantale)
    members = []
    for index in range(size):
        q = menu[rng.randrange(len(menu))]
        points = rng.randint(1, max_points)
        space = PointSet(tuple(f"x{i}" for i in range(points)))
        subbasis = [tuple(rng.randrange(q.size) for _ in range(points)) for _ in range(rng.randint(0, 2))]
        mode = MODES[rng.randrange(len(MODES))]
        members.append(CorpusMember(index, q, subbasis, generate(q, space, subbasis, mode, caps)))
    logger.info(f"Built corpus of {len(members)} spaces (seed {seed})")
    return members


# Property sweeps: each returns True, False, or None when it does not apply

def _closure_axioms(member, caps):
    return check_closure_axioms(member.space, caps) is None


def _stratified_sub_closure(member, caps):
    tau = member.space
    if not tau.is_stratified:
        return None
    rows = enumerate_values(tau.q, tau.space, caps)
    return bool((sub_matrix(tau.q, rows, tau.matrix) == sub_matrix(tau.q, closure_rows(tau, rows), tau.matrix)).all())


def _specialization_closures(member, caps):
    tau = member.space
    if not tau.is_stratified:
        return None
    order = specialization(tau)
    for y in tau.space.points:
        column = closure(tau, characteristic(tau.q, tau.space, y))
        if any(order(x, y) != column[x] for x in tau.space.points):
            return False
    return True


def _point_closure_sub(member, caps):
    tau = member.space
    if not tau.is_stratified:
        return None
    for x in tau.space.points:
        point = closure(tau, characteristic(tau.q, tau.space, x))
        if any(sub_matrix(tau.q, [point.values], [a.values])[0, 0] != a[x] for a in tau.closed):
            return False
    return True


def _sobrification_sober(member, caps):
    if not member.space.is_stratified:
        return None
    return is_sober(sobrify(member.space).space).is_sober


def _lemma(member, caps):
    if not member.space.is_stratified:
        return None
    return all(lemma_report(sobrify(member.space)).values())


def _eta(member, caps):
    tau = member.space
    if not tau.is_stratified:
        return None
    check = eta_homeomorphism_check(sobrify(tau))
    if not check['continuous']:
        return False
    if is_sober(tau).is_sober:
        return check['bijective'] and check['homeomorphism']
    return True


def _directed_complete(member, caps):
    if not is_sober(member.space).is_sober:
        return None
    return check_directed_complete(member.space, caps).complete


def _hausdorff_implies_sober(member, caps):
    tau = member.space
    if not is_linear(tau.q) or not tau.is_stratified:
        return None
    if tau.q.size ** (tau.space.size ** 2) > HAUSDORFF_SWEEP_LIMIT:
        return None
    return hausdorff_implies_sober_check(tau, caps)['holds']


def _stratification(member, caps):
    return stratification_report(member.space, caps)['agree']


def _modes(member, caps):
    requested = MODE_FLAGS[member.mode]
    satisfied = member.space.satisfied_modes
    return (not requested[0] or satisfied['C4']) and (not requested[1] or satisfied['C5'])


def _duality(member, caps):
    tau = member.space
    if not tau.is_stratified or not check_double_negation(tau.q)[0]:
        return None
    opened = negate_topology(tau)
    back = negate_topology(opened)
    if not np.array_equal(back.matrix, tau.matrix):
        return False
    return is_sober_topological(opened)['sober'] == is_sober(tau).is_sober


SWEEPS = {
    'closure-axioms': _closure_axioms,
    'stratified-sub-closure': _stratified_sub_closure,
    'specialization-closures': _specialization_closures,
    'point-closure-sub': _point_closure_sub,
    'sobrification-sober': _sobrification_sober,
    'sobrification-lemma': _lemma,
    'eta': _eta,
    'directed-complete': _directed_complete,
    'hausdorff-implies-sober': _hausdorff_implies_sober,
    'stratification-equivalence': _stratification,
    'modes': _modes,
    'duality': _duality,
}


def run_sweeps(corpus, caps, sweeps=None, progress=True):
    """
    Run property sweeps over every corpus member.

    Args:
        corpus (list): CorpusMember values
        caps (Caps): Bounds for enumerations inside the sweeps
        sweeps (list): Sweep names, all by default
        progress (bool): Show a progress bar on stderr

    Returns:
        dict: sweep -> {passed, failed, skipped, failures}
    """
    names = list(sweeps) if sweeps else list(SWEEPS)
    results = {name: {'passed': 0, 'failed': 0, 'skipped': 0, 'failures': []} for name in names}
    for member in tqdm(corpus, desc="corpus", unit="space", disable=not progress):
        for name in names:
            try:
                outcome = SWEEPS[name](member, caps)
            except CapExceeded as e:
                logger.warning(f"Member {member.index} skipped in {name}: {e}")
                outcome = None
            tally = results[name]
            if outcome is None:
                tally['skipped'] += 1
            elif outcome:
                tally['passed'] += 1
            else:
                tally['failed'] += 1
                tally['failures'].append(member.index)
                logger.error(f"Sweep {name} failed on corpus member {member.index}: {member.describe()}")
    return results


def directed_complete_non_sober(corpus, caps):
    """
    Indices of members that are not sober but whose specialization order is
    still directed complete. Reported only.
    """
    found = []
    for member in corpus:
        if is_sober(member.space).is_sober:
            continue
        try:
            if check_directed_complete(member.space, caps).complete:
                found.append(member.index)
        except CapExceeded:
            continue
    return found
