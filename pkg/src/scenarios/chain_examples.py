#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Finite-chain analogues of the cotopologies generated by the identity on the
unit interval.

On the n-chain X = Q with subbasis {id}: tau_C is the stratified generation,
tau_S the strong generation and tau_A the Alexandroff cotopology of the
order d_R. Everything reported here is exploratory.
"""

import logging

from src.algebra.fuzzy_sets import FuzzySet, PointSet, labels_of, res_scale
from src.algebra.qorder import alexandroff, d_R
from src.algebra.quantale import build_standard_quantale
from src.topology.cotopology import closure, generate
from src.topology.sobriety import irreducible_closed_sets, is_sober

logger = logging.getLogger(__name__)


def _is_increasing(a):
    return all(a[i] <= a[i + 1] for i in range(len(a) - 1))


def chain_analogue(kind, n, caps):
    """
    Build tau_C, tau_S and tau_A on the n-chain and record how they relate.

    Args:
        kind (str): godel or lukasiewicz (any chain kind is accepted)
        n (int): Chain size
        caps (Caps): Generation and enumeration bounds

    Returns:
        dict: Exploratory report
    """
    q = build_standard_quantale(kind, n)
    space = PointSet(q.labels)
    identity = FuzzySet(space, tuple(range(n)))

    spaces = {
        'tau_C': generate(q, space, [identity], 'stratified', caps),
        'tau_S': generate(q, space, [identity], 'strong', caps),
        'tau_A': alexandroff(d_R(q), caps),
    }
    families = {name: {a.values for a in tau.closed} for name, tau in spaces.items()}
    shifts = {x: res_scale(q, x, identity) for x in space.points}

    # on the chain, x <= y as elements iff x <= y as indices
    alexandroff_sets = spaces['tau_A'].closed
    report = {
        'exploratory': True,
        'quantale': q.name,
        'sizes': {name: len(tau) for name, tau in spaces.items()},
        'inclusions': {
            'tau_C_in_tau_S': families['tau_C'] <= families['tau_S'],
            'tau_S_in_tau_A': families['tau_S'] <= families['tau_A'],
        },
        'alexandroff_increasing': all(_is_increasing(a.values) for a in alexandroff_sets),
        'top_at_top_iff_above_identity': all(
            (a[n - 1] == q.top) == all(a[x] >= x for x in space.points) for a in alexandroff_sets),
        'point_closures_are_shifts': {
            name: all(closure(tau, FuzzySet(space, tuple(q.top if z == x else q.bottom for z in space.points)))
                      == shifts[x] for x in space.points)
            for name, tau in spaces.items()
        },
        'tau_C_irreducibles_are_shifts': all(
            any(f.values == s.values for s in shifts.values()) for f in irreducible_closed_sets(spaces['tau_C'])),
        'verdicts': {name: is_sober(tau).verdict for name, tau in spaces.items()},
        'shifts': [labels_of(q, shifts[x]) for x in space.points],
    }
    if kind == 'lukasiewicz':
        report['tau_S_equals_tau_A'] = families['tau_S'] == families['tau_A']
    if kind == 'godel':
        report['tau_C_equals_tau_S'] = families['tau_C'] == families['tau_S']
    logger.info(f"Chain analogue {q.name}: sizes {report['sizes']}, verdicts {report['verdicts']}")
    return report
