#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Irreducible closed sets, sobrification, the sober verdict, the extension of
continuous maps along the sobrification and directed completeness of the
specialization order.
"""

import logging
from dataclasses import dataclass, field
from itertools import product as cartesian

import numpy as np

from src.algebra.fuzzy_sets import FuzzySet, PointMap, PointSet, image, labels_of
from src.algebra.qorder import alexandroff, suprema
from src.algebra.quantale import coprimes, is_linear
from src.topology.cotopology import (
    Cotopology, closure, closure_rows, image_of_family, is_continuous, is_hausdorff, specialization,
    sub_matrix,
)
from src.utils.errors import (
    LawViolation, NonLinearQuantale, NotContinuous, NotStratified,
    SourceNotStratified, TargetNotSober,
)

logger = logging.getLogger(__name__)

SOBER = 'sober'
NOT_STRATIFIED = 'not_stratified'
NOT_SOBER = 'not_sober'


def irreducible_mask(tau):
    """
    Which closed sets are irreducible.

    F qualifies when its values join to top and, for every pair of closed
    sets A and B, sub(F, A v B) equals sub(F, A) v sub(F, B).
    """
    q = tau.q
    k = len(tau.matrix)
    mask = np.zeros(k, dtype=bool)
    if k == 0:
        return mask
    reaches_top = q.join_reduce(tau.matrix) == q.top
    S = tau.sub_table
    J = tau.join_index
    for f in np.flatnonzero(reaches_top):
        s = S[f]
        mask[f] = (s[J] == q.join_table[s[:, None], s[None, :]]).all()
    return mask


def irreducible_closed_sets(tau):
    """Irreducible closed sets in canonical order."""
    return [tau.closed[i] for i in np.flatnonzero(irreducible_mask(tau))]


def is_irreducible_closed(tau, f):
    """
    Raises:
        NotClosed: f is not a closed set of tau
    """
    index = tau.index_of(f)
    return bool(irreducible_mask(tau)[index])


def point_closures(tau):
    """(|X|, |X|) rows: row x is the closure of 1_x."""
    q = tau.q
    n = tau.space.size
    singletons = np.full((n, n), q.bottom, dtype=int)
    np.fill_diagonal(singletons, q.top)
    return closure_rows(tau, singletons)


@dataclass
class SoberReport:
    """
    Outcome of the sobriety check.

    Attributes:
        space (Cotopology): Checked space
        irreducibles (list): Irreducible closed sets in canonical order
        eta (tuple): For each point, index of closure(1_x) among the irreducibles (None if absent)
        verdict (str): sober, not_stratified or not_sober
        witnesses (list): Irreducibles that are the closure of zero or several points
    """
    space: Cotopology
    irreducibles: list
    eta: tuple
    verdict: str
    witnesses: list = field(default_factory=list)

    @property
    def is_sober(self):
        return self.verdict == SOBER

    def point_counts(self):
        return [sum(1 for e in self.eta if e == i) for i in range(len(self.irreducibles))]

    def to_document(self):
        q = self.space.q
        names = self.space.space.names
        return {
            'verdict': self.verdict,
            'stratified': self.space.is_stratified,
            'irreducibles': [labels_of(q, f) for f in self.irreducibles],
            'eta': {names[x]: e for x, e in enumerate(self.eta)},
            'point_counts': self.point_counts(),
            'witnesses': [labels_of(q, f) for f in self.witnesses],
        }


def is_sober(tau):
    """
    Sober: stratified, and every irreducible closed set is the closure of
    exactly one 1_x.

    Returns:
        SoberReport: Irreducibles, eta, verdict and witnesses
    """
    irreducibles = irreducible_closed_sets(tau)
    position = {f.values: i for i, f in enumerate(irreducibles)}
    eta = tuple(position.get(tuple(int(v) for v in row)) for row in point_closures(tau))
    counts = [sum(1 for e in eta if e == i) for i in range(len(irreducibles))]
    witnesses = [f for f, c in zip(irreducibles, counts) if c != 1]
    if not tau.is_stratified:
        verdict = NOT_STRATIFIED
    elif witnesses:
        verdict = NOT_SOBER
    else:
        verdict = SOBER
    logger.info(f"Sobriety verdict: {verdict} ({len(irreducibles)} irreducibles, {tau.space.size} points)")
    return SoberReport(tau, irreducibles, eta, verdict, witnesses)


@dataclass
class Sobrification:
    """
    s(X) with its unit.

    Attributes:
        source (Cotopology): X
        irreducibles (list): Points of s(X), as closed sets of X
        space (Cotopology): s(X)
        eta (PointMap): x -> closure(1_x)
        s_rows (ndarray): s_rows[i] = s(closed[i]) as values over the points of s(X)
    """
    source: Cotopology
    irreducibles: list
    space: Cotopology
    eta: PointMap
    s_rows: np.ndarray

    def s(self, a):
        """s(A)(F) = sub(F, A) for closed A."""
        return FuzzySet(self.space.space, self.s_rows[self.source.index_of(a)])


def sobrify(tau):
    """
    The sobrification s(X) of a stratified space.

    Points are the irreducible closed sets F (named F<i> after their index
    in the closed family); closed sets are s(A) for closed A.

    Raises:
        NotStratified: tau is not closed under p->(-)
        LawViolation: s(-) is not injective on closed sets
    """
    if not tau.is_stratified:
        raise NotStratified("sobrification needs a stratified space", tau.satisfied_modes['mode'])
    mask = irreducible_mask(tau)
    indices = np.flatnonzero(mask)
    irreducibles = [tau.closed[i] for i in indices]
    points = PointSet(tuple(f"F{i}" for i in indices))
    s_rows = tau.sub_table[indices].T.copy()
    if len({tuple(row) for row in s_rows}) != len(s_rows):
        raise LawViolation('sobrification-injective', None, detail='distinct closed sets share s(A)')
    s_rows.flags.writeable = False
    space = Cotopology(tau.q, points, s_rows, mode='stratified')

    position = {int(i): p for p, i in enumerate(indices)}
    key_to_index = {a.values: i for i, a in enumerate(tau.closed)}
    eta = []
    for row in point_closures(tau):
        eta.append(position[key_to_index[tuple(int(v) for v in row)]])
    eta_map = PointMap(tau.space, points, tuple(eta))
    logger.info(f"Sobrification has {points.size} points and {len(space)} closed sets")
    return Sobrification(tau, irreducibles, space, eta_map, s_rows)


def lemma_report(sobrification):
    """
    The s(-) identities over every closed set (and pair of closed sets).

    Returns:
        dict: identity name -> holds
    """
    tau = sobrification.source
    q = tau.q
    S = sobrification.s_rows
    M = tau.matrix
    index = {a.values: i for i, a in enumerate(tau.closed)}

    def s_of(values):
        return S[index[tuple(int(v) for v in values)]]

    constants = all((s_of((p,) * tau.space.size) == p).all() for p in q.elements)
    joins = meets = True
    for i in range(len(M)):
        for j in range(i, len(M)):
            if (s_of(q.join_table[M[i], M[j]]) != q.join_table[S[i], S[j]]).any():
                joins = False
            if (s_of(q.meet_table[M[i], M[j]]) != q.meet_table[S[i], S[j]]).any():
                meets = False
    top_meet = (s_of((q.top,) * tau.space.size) == q.top).all()
    residuation = all(
        (s_of(q.res_table[p][M[i]]) == q.res_table[p][S[i]]).all()
        for p in q.elements for i in range(len(M)))
    inclusion = bool((tau.sub_table == sub_matrix(q, S, S)).all())
    injective = len({tuple(row) for row in S}) == len(S)
    return {
        'constants': bool(constants),
        'joins': bool(joins),
        'meets': bool(meets and top_meet),
        'residuation': bool(residuation),
        'inclusion': inclusion,
        'injective': injective,
    }


def eta_homeomorphism_check(sobrification):
    """
    Continuity of eta, its bijectivity and, when bijective, eta->(A) = s(A)
    for every closed A.

    Returns:
        dict: continuous, bijective, homeomorphism
    """
    tau = sobrification.source
    eta = sobrification.eta
    continuous, _ = is_continuous(eta, tau, sobrification.space)
    bijective = eta.is_bijective()
    homeomorphism = False
    if continuous and bijective:
        images = {a.values for a in image_of_family(eta, tau)}
        targets = {a.values for a in sobrification.space.closed}
        homeomorphism = images == targets and all(
            image(tau.q, eta, a).values == sobrification.s(a).values for a in tau.closed)
    return {'continuous': bool(continuous), 'bijective': bool(bijective), 'homeomorphism': bool(homeomorphism)}


def irreducible_is_coprime(tau, f):
    """
    When top is coprime in Q: F <= A v B implies F <= A or F <= B, for
    closed A and B.

    Returns:
        bool: The verdict, or None when top is not coprime
    """
    q = tau.q
    if q.top not in coprimes(q):
        return None
    values = np.asarray(tau.closed[tau.index_of(f)].values, dtype=int)
    below = q.leq_table[values[None, :], tau.matrix].all(axis=1)
    M = tau.matrix
    for i in range(len(M)):
        under_join = q.leq_table[values[None, :], q.join_table[M[i], M]].all(axis=1)
        if (under_join & ~below[i] & ~below).any():
            return False
    return True


@dataclass
class Extension:
    """
    Attributes:
        map (PointMap): f* from s(X) to Y
        uniqueness_checked (bool): All maps s(X) -> Y were enumerated
        competitors (int): Other continuous g with g o eta = f (0 when unique)
    """
    map: PointMap
    uniqueness_checked: bool
    competitors: int

    def to_document(self):
        return {
            'assignment': {self.map.source.names[i]: self.map.target.names[y]
                           for i, y in enumerate(self.map.assignment)},
            'uniqueness_checked': self.uniqueness_checked,
            'competitors': self.competitors,
        }


def extend_to_sobrification(f, tau_x, tau_y, caps):
    """
    The continuous f*: s(X) -> Y with f* o eta = f.

    f*(F) is the point y whose closure(1_y) equals closure(f->(F)).
    Uniqueness is confirmed by enumerating every map s(X) -> Y when there are
    at most caps.uniqueness of them.

    Raises:
        NotContinuous: f is not continuous
        SourceNotStratified: X is not stratified
        TargetNotSober: Y is not sober
    """
    continuous, witness = is_continuous(f, tau_x, tau_y)
    if not continuous:
        raise NotContinuous("map is not continuous", labels_of(tau_y.q, witness))
    if not tau_x.is_stratified:
        raise SourceNotStratified("source space is not stratified", tau_x.satisfied_modes['mode'])
    report = is_sober(tau_y)
    if not report.is_sober:
        raise TargetNotSober(f"target space is {report.verdict}", [labels_of(tau_y.q, w) for w in report.witnesses])

    sobrification = sobrify(tau_x)
    closures_y = {tuple(int(v) for v in row): y for y, row in enumerate(point_closures(tau_y))}
    assignment = []
    for irreducible in sobrification.irreducibles:
        pushed = closure(tau_y, image(tau_x.q, f, irreducible))
        assignment.append(closures_y[pushed.values])
    extension = PointMap(sobrification.space.space, tau_y.space, tuple(assignment))

    if not is_continuous(extension, sobrification.space, tau_y)[0]:
        raise LawViolation('extension-continuity', tuple(assignment))
    if sobrification.eta.compose(extension).assignment != f.assignment:
        raise LawViolation('extension-commutes', tuple(assignment))

    total = tau_y.space.size ** sobrification.space.space.size
    if total > caps.uniqueness:
        logger.warning(f"Uniqueness of the extension not enumerated ({total} maps above "
                       f"uniqueness cap {caps.uniqueness}); relying on the closure condition")
        return Extension(extension, False, 0)

    competitors = 0
    for candidate in cartesian(tau_y.space.points, repeat=sobrification.space.space.size):
        if candidate == extension.assignment:
            continue
        g = PointMap(sobrification.space.space, tau_y.space, candidate)
        if sobrification.eta.compose(g).assignment != f.assignment:
            continue
        if is_continuous(g, sobrification.space, tau_y)[0]:
            competitors += 1
    if competitors:
        raise LawViolation('extension-unique', competitors, detail='another continuous map extends f')
    return Extension(extension, True, 0)


@dataclass
class DirectedReport:
    """
    Attributes:
        complete (bool): Every irreducible lower set has a supremum
        irreducible_lower_sets (list): Irreducible lower sets of the specialization order
        violations (list): Those without a supremum
    """
    complete: bool
    irreducible_lower_sets: list
    violations: list

    def to_document(self, q):
        return {
            'complete': self.complete,
            'irreducible_lower_sets': [labels_of(q, phi) for phi in self.irreducible_lower_sets],
            'violations': [labels_of(q, phi) for phi in self.violations],
        }


def check_directed_complete(tau, caps):
    """
    Does every irreducible fuzzy lower set of the specialization order have
    a supremum? Holds on every sober space; on other spaces the outcome is
    only reported.

    Raises:
        CapExceeded: Lower-set enumeration above the enumeration cap
    """
    order = specialization(tau)
    gamma = alexandroff(order, caps)
    irreducibles = irreducible_closed_sets(gamma)
    violations = [phi for phi in irreducibles if not suprema(order, phi)]
    if violations:
        logger.info(f"{len(violations)} irreducible lower sets without a supremum")
    return DirectedReport(not violations, irreducibles, violations)


def hausdorff_implies_sober_check(tau, caps):
    """
    On a linearly ordered quantale a stratified Hausdorff space is sober.

    Returns:
        dict: hausdorff, sober verdict, and whether the implication holds

    Raises:
        NonLinearQuantale: Q is not linearly ordered
        NotStratified: tau is not stratified
    """
    q = tau.q
    if not is_linear(q):
        raise NonLinearQuantale(
            f"{q.name} is not linearly ordered; the discrete two-point space over boolean4 "
            f"is Hausdorff but not sober", q.name)
    if not tau.is_stratified:
        raise NotStratified("the implication concerns stratified spaces", tau.satisfied_modes['mode'])
    hausdorff = is_hausdorff(tau, caps)
    report = is_sober(tau)
    return {
        'hausdorff': hausdorff,
        'sober': report.to_document(),
        'holds': (not hausdorff) or report.is_sober,
    }
