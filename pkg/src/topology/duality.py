#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Crisp topologies and the Lowen functor, Q-topologies, negation duality and
frame points (maps satisfying Fr1..Fr4).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from src.algebra.fuzzy_sets import (
    FuzzySet, characteristic, characteristic_of, enumerate_values, labels_of, negate, sub,
)
from src.algebra.quantale import check_double_negation, coprimes, has_enough_coprimes, is_linear
from src.topology.cotopology import Cotopology, RowKeys, closure
from src.topology.sobriety import irreducible_closed_sets, is_sober
from src.utils.errors import (
    CapExceeded, InputError, LawViolation, NoDoubleNegation, NonLinearQuantale,
    NotEnoughCoprimes, NotStratified,
)

logger = logging.getLogger(__name__)


# Crisp topologies

class CrispTopology:
    """
    Finite topology given by its closed subsets (frozensets of point indices).

    Raises on construction when the family misses the empty set or X, or is
    not closed under binary unions and intersections.
    """

    def __init__(self, space, closed_subsets):
        self.space = space
        full = frozenset(space.points)
        family = {frozenset(int(x) for x in subset) for subset in closed_subsets}
        if any(not subset <= full for subset in family):
            raise InputError("closed subsets must contain points of the space", 'closed_subsets')
        self.closed = tuple(sorted(family, key=self._bits))
        self._members = set(self.closed)
        self._validate()

    @staticmethod
    def _bits(subset):
        return sum(1 << x for x in subset)

    def _validate(self):
        full = frozenset(self.space.points)
        if frozenset() not in self._members:
            raise LawViolation('crisp-empty', None, detail='the empty set must be closed')
        if full not in self._members:
            raise LawViolation('crisp-full', None, detail='the whole space must be closed')
        for a, b in combinations(self.closed, 2):
            if a | b not in self._members:
                raise LawViolation('crisp-union', (sorted(a), sorted(b)))
            if a & b not in self._members:
                raise LawViolation('crisp-intersection', (sorted(a), sorted(b)))

    def __contains__(self, subset):
        return frozenset(subset) in self._members

    def to_document(self):
        return {
            'points': list(self.space.names),
            'closed_subsets': [[self.space.names[x] for x in sorted(k)] for k in self.closed],
        }


def discrete_crisp(space):
    return CrispTopology(space, [set(c) for r in range(space.size + 1) for c in combinations(space.points, r)])


def indiscrete_crisp(space):
    return CrispTopology(space, [set(), set(space.points)])


def all_crisp_topologies(space, caps):
    """
    Every topology on a finite set, found by filtering families of subsets.

    Raises:
        CapExceeded: More candidate families than the enumeration cap
    """
    full = frozenset(space.points)
    inner = [frozenset(c) for r in range(1, space.size) for c in combinations(space.points, r)]
    total = 2 ** len(inner)
    if total > caps.enumeration:
        raise CapExceeded('enumeration', caps.enumeration, total)
    found = []
    for mask in range(total):
        family = {frozenset(), full} | {s for i, s in enumerate(inner) if mask >> i & 1}
        if all(a | b in family and a & b in family for a, b in combinations(family, 2)):
            found.append(CrispTopology(space, family))
    logger.debug(f"{len(found)} topologies on {space.size} points")
    return found


def crisp_closure(topology, subset):
    """Smallest closed superset."""
    subset = frozenset(subset)
    result = frozenset(topology.space.points)
    for k in topology.closed:
        if subset <= k:
            result &= k
    return result


def crisp_irreducible_closed_subsets(topology):
    """Nonempty closed K with K inside A or B whenever K is inside A u B."""
    found = []
    for k in topology.closed:
        if not k:
            continue
        if all(k <= a or k <= b for a in topology.closed for b in topology.closed if k <= a | b):
            found.append(k)
    return found


def is_crisp_sober(topology):
    """Each irreducible closed subset is the closure of exactly one point."""
    closures = [crisp_closure(topology, {x}) for x in topology.space.points]
    return all(closures.count(k) == 1 for k in crisp_irreducible_closed_subsets(topology))


# Upper semicontinuity and the Lowen functor

def _level_mask(q, rows, p):
    """(m, n) boolean: rows >= p."""
    return q.leq_table[p][np.asarray(rows, dtype=int)]


def _usc_mask(q, topology, rows, levels):
    rows = np.asarray(rows, dtype=int)
    n = topology.space.size
    closed_bits = np.array(sorted(CrispTopology._bits(k) for k in topology.closed), dtype=np.int64)
    weights = np.array([1 << x for x in range(n)], dtype=np.int64)
    mask = np.ones(len(rows), dtype=bool)
    for p in levels:
        bits = _level_mask(q, rows, p).astype(np.int64) @ weights if n else np.zeros(len(rows), dtype=np.int64)
        mask &= np.isin(bits, closed_bits)
    return mask


def is_upper_semicontinuous(q, topology, lam, levels=None):
    """
    Is every level set {x : lam(x) >= p} closed?

    Args:
        levels (iterable): Elements p to test, all elements by default
    """
    levels = q.elements if levels is None else levels
    return bool(_usc_mask(q, topology, [lam.values], levels)[0])


def level_set_lemma_report(q, topology, caps):
    """
    Upper semicontinuity over all of Q^X: coprime levels suffice (given
    enough coprimes), and binary joins, binary meets and p->(-) preserve it.

    Returns:
        dict: item name -> holds
    """
    rows = enumerate_values(q, topology.space, caps)
    usc = _usc_mask(q, topology, rows, q.elements)
    kept = rows[usc]
    report = {}
    if has_enough_coprimes(q):
        report['coprime_levels_suffice'] = bool((usc == _usc_mask(q, topology, rows, coprimes(q))).all())
    joins = meets = True
    for i in range(len(kept)):
        if not _usc_mask(q, topology, q.join_table[kept[i], kept], q.elements).all():
            joins = False
        if not _usc_mask(q, topology, q.meet_table[kept[i], kept], q.elements).all():
            meets = False
    report['joins'] = joins
    report['meets'] = meets
    report['residuation'] = all(
        _usc_mask(q, topology, q.res_table[p][kept], q.elements).all() for p in q.elements)
    return report


def lowen(q, topology, caps):
    """
    omega_Q(X): every lam whose coprime level sets are closed in X.

    Raises:
        NotEnoughCoprimes: Some element is not a join of coprimes
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    if not has_enough_coprimes(q):
        raise NotEnoughCoprimes(f"{q.name} does not have enough coprimes", q.name)
    rows = enumerate_values(q, topology.space, caps)
    kept = rows[_usc_mask(q, topology, rows, coprimes(q))]
    logger.info(f"Lowen cotopology has {len(kept)} closed sets")
    return Cotopology(q, topology.space, kept, mode='stratified')


def crisp_embedding_report(q, topology, tau):
    """
    How omega_Q(X) sits over the crisp topology: 1_K is closed for every
    crisp closed K, and the closure of 1_x is 1 exactly on the crisp closure
    of {x}.

    Args:
        tau (Cotopology): lowen(q, topology, caps)

    Returns:
        dict: item name -> holds
    """
    space = topology.space
    return {
        'crisp_closed_sets_closed': all(characteristic_of(q, space, k) in tau for k in topology.closed),
        'point_closures_crisp': all(
            closure(tau, characteristic(q, space, x)) == characteristic_of(q, space, crisp_closure(topology, {x}))
            for x in space.points),
    }


def good_extension_check(q, topology, caps):
    """
    On linear Q: X is sober exactly when omega_Q(X) is.

    Raises:
        NonLinearQuantale: Q is not linearly ordered
    """
    if not is_linear(q):
        raise NonLinearQuantale(
            f"{q.name} is not linearly ordered; over boolean4 the discrete two-point space is "
            f"sober while its Lowen cotopology is not", q.name)
    crisp = is_crisp_sober(topology)
    report = is_sober(lowen(q, topology, caps))
    return {'crisp_sober': crisp, 'sober': report.to_document(), 'holds': crisp == report.is_sober}


# Q-topologies and negation

class QTopology:
    """
    Finite Q-topology: open fuzzy sets with mode weak or stratified.

    O1 constants, O2 binary meets, O3 binary joins, O4 p&U when stratified.
    """

    MODES = ('weak', 'stratified')

    def __init__(self, q, space, family, mode='weak'):
        if mode not in self.MODES:
            raise InputError(f"unknown Q-topology mode {mode!r}", 'mode')
        self.q = q
        self.space = space
        self.mode = mode
        rows = [a.values if isinstance(a, FuzzySet) else tuple(a) for a in family]
        array = np.array(rows, dtype=int).reshape(len(rows), space.size)
        self._keys = RowKeys(q, space.size)
        self.keys, first = np.unique(self._keys.encode(array), return_index=True)
        array = array[first]
        array.flags.writeable = False
        self.matrix = array
        self.open = tuple(FuzzySet(space, row) for row in array)
        self._index = {u.values: i for i, u in enumerate(self.open)}
        self._validate()

    def __len__(self):
        return len(self.open)

    def __contains__(self, u):
        return (u.values if isinstance(u, FuzzySet) else tuple(u)) in self._index

    def index_of(self, u):
        return self._index[u.values if isinstance(u, FuzzySet) else tuple(u)]

    def _outside(self, rows):
        rows = np.asarray(rows, dtype=int)
        outside = ~np.isin(self._keys.encode(rows), self.keys)
        return tuple(int(v) for v in rows[np.flatnonzero(outside)[0]]) if outside.any() else None

    def _validate(self):
        q = self.q
        M = self.matrix
        constants = np.repeat(np.arange(q.size)[:, None], self.space.size, axis=1)
        if self._outside(constants) is not None:
            raise LawViolation('O1', self._outside(constants))
        for i in range(len(M)):
            met = self._outside(q.meet_table[M[i], M[i:]])
            if met is not None:
                raise LawViolation('O2', met)
            joined = self._outside(q.join_table[M[i], M[i:]])
            if joined is not None:
                raise LawViolation('O3', joined)
        if self.mode == 'stratified':
            for p in q.elements:
                scaled = self._outside(q.tensor_table[p][M])
                if scaled is not None:
                    raise LawViolation('O4', (p, scaled))

    @cached_property
    def is_stratified(self):
        return all(self._outside(self.q.tensor_table[p][self.matrix]) is None for p in self.q.elements)

    def to_document(self):
        return {
            'points': list(self.space.names),
            'mode': self.mode,
            'open': [labels_of(self.q, u) for u in self.open],
        }


def _require_double_negation(q):
    holds, witness = check_double_negation(q)
    if not holds:
        raise NoDoubleNegation(
            f"{q.name} fails double negation at {q.label(witness)}", q.label(witness))


def negate_topology(family):
    """
    Pointwise negation of every member: Q-topologies become cotopologies and
    back, stratified to stratified.

    Raises:
        NoDoubleNegation: Q fails double negation
    """
    q = family.q
    _require_double_negation(q)
    rows = q.res_table[family.matrix, q.bottom]
    if isinstance(family, Cotopology):
        mode = 'stratified' if family.is_stratified else 'weak'
        return QTopology(q, family.space, rows, mode=mode)
    mode = 'stratified' if family.is_stratified else 'plain'
    return Cotopology(q, family.space, rows, mode=mode)


def negation_identities(q, a, b):
    """
    sub(A, B) = sub(not B, not A), and the join of A & B equals
    not sub(A, not B) and not sub(B, not A).

    Returns:
        dict: identity -> holds
    """
    contrapositive = sub(q, a, b) == sub(q, negate(q, b), negate(q, a))
    overlap = q.join_all(q.tensor(x, y) for x, y in zip(a.values, b.values))
    return {
        'contrapositive': contrapositive,
        'overlap': overlap == q.negation(sub(q, a, negate(q, b))) == q.negation(sub(q, b, negate(q, a))),
    }


# Frame points

@dataclass(frozen=True)
class FrMap:
    """
    Assignment of an element to every open set, aligned with topology.open.

    Attributes:
        topology (QTopology): Domain
        values (tuple): values[i] is the image of topology.open[i]
    """
    topology: QTopology
    values: tuple

    def __call__(self, u):
        return self.values[self.topology.index_of(u)]

    def to_document(self):
        q = self.topology.q
        return [q.label(v) for v in self.values]


def fr_axiom_failure(g):
    """
    First failing axiom among Fr1..Fr4, or None.

    Fr3 is checked on every family of at most three open sets, the full
    family and the empty family.
    """
    tau = g.topology
    q = tau.q
    M = tau.matrix
    n = tau.space.size
    v = np.asarray(g.values, dtype=int)
    for p in q.elements:
        if g.values[tau.index_of((p,) * n)] != p:
            return ('Fr1', p)
    index = {u.values: i for i, u in enumerate(tau.open)}

    def at(row):
        return v[index[tuple(int(x) for x in row)]]

    for i in range(len(M)):
        for j in range(i, len(M)):
            if at(q.meet_table[M[i], M[j]]) != q.meet(v[i], v[j]):
                return ('Fr2', (i, j))
    families = [c for r in range(1, 4) for c in combinations(range(len(M)), r)]
    families.append(tuple(range(len(M))))
    for family in families:
        joined = q.join_reduce(M[list(family)].T) if n else np.zeros(0, dtype=int)
        if at(joined) != q.join_all(v[list(family)]):
            return ('Fr3', family)
    if g.values[tau.index_of((q.bottom,) * n)] != q.bottom:
        return ('Fr3', ())
    for p in q.elements:
        for i in range(len(M)):
            if at(q.tensor_table[p][M[i]]) != q.tensor(p, v[i]):
                return ('Fr4', (p, i))
    return None


def point_evaluation(tau, x):
    """f_x(U) = U(x)."""
    return FrMap(tau, tuple(int(v) for v in tau.matrix[:, x]))


def fr_map_of_irreducible(tau, f):
    """f_F(U) = join over x of F(x) & U(x)."""
    q = tau.q
    if tau.space.size == 0:
        return FrMap(tau, (q.bottom,) * len(tau.matrix))
    products = q.tensor_table[np.asarray(f.values, dtype=int)[None, :], tau.matrix]
    return FrMap(tau, tuple(int(v) for v in q.join_reduce(products)))


def recover_irreducible(g):
    """F = meet of the closed sets not U with g(U) = bottom."""
    tau = g.topology
    q = tau.q
    values = [q.top] * tau.space.size
    for u, image in zip(tau.open, g.values):
        if image == q.bottom:
            values = [q.meet(a, q.negation(b)) for a, b in zip(values, u.values)]
    return FuzzySet(tau.space, values)


def fr_points(tau):
    """
    Every frame point of a stratified Q-topology, one per irreducible closed
    set of its negation.

    Returns:
        list: (irreducible F, FrMap f_F) pairs in canonical order of F

    Raises:
        NoDoubleNegation: Q fails double negation
        LawViolation: Some f_F fails Fr1..Fr4 or does not recover F
    """
    cotopology = negate_topology(tau)
    points = []
    for f in irreducible_closed_sets(cotopology):
        g = fr_map_of_irreducible(tau, f)
        failure = fr_axiom_failure(g)
        if failure is not None:
            raise LawViolation(failure[0], failure[1], detail=f'frame point of {list(f.values)}')
        if recover_irreducible(g).values != f.values:
            raise LawViolation('fr-recovery', f.values)
        points.append((f, g))
    logger.info(f"{len(points)} frame points")
    return points


def brute_fr_maps(tau, caps):
    """
    Every Fr1..Fr4 assignment by backtracking over open sets in canonical
    order; each constraint is checked once all its open sets are assigned.

    Raises:
        CapExceeded: More than caps.search search nodes
    """
    q = tau.q
    M = tau.matrix
    n = tau.space.size
    index = {u.values: i for i, u in enumerate(tau.open)}

    def at(row):
        return index[tuple(int(x) for x in row)]

    fixed = {at((p,) * n): p for p in q.elements}
    # constraints keyed by the largest open index they mention
    pending = {i: [] for i in range(len(M))}
    for i in range(len(M)):
        for j in range(i, len(M)):
            m, s = at(q.meet_table[M[i], M[j]]), at(q.join_table[M[i], M[j]])
            pending[max(i, j, m)].append(('meet', i, j, m))
            pending[max(i, j, s)].append(('join', i, j, s))
        for p in q.elements:
            r = at(q.tensor_table[p][M[i]])
            pending[max(i, r)].append(('tensor', p, i, r))

    found = []
    assignment = [None] * len(M)
    nodes = 0

    def consistent(i):
        for kind, a, b, c in pending[i]:
            if kind == 'meet' and q.meet(assignment[a], assignment[b]) != assignment[c]:
                return False
            if kind == 'join' and q.join(assignment[a], assignment[b]) != assignment[c]:
                return False
            if kind == 'tensor' and q.tensor(a, assignment[b]) != assignment[c]:
                return False
        return True

    def search(i):
        nonlocal nodes
        if i == len(M):
            found.append(FrMap(tau, tuple(assignment)))
            return
        for value in ([fixed[i]] if i in fixed else q.elements):
            nodes += 1
            if nodes > caps.search:
                raise CapExceeded('search', caps.search)
            assignment[i] = value
            if consistent(i):
                search(i + 1)
        assignment[i] = None

    search(0)
    logger.debug(f"Brute force found {len(found)} frame points in {nodes} nodes")
    return found


def is_sober_topological(tau):
    """
    Sober Q-topology: every frame point is the evaluation at exactly one point.

    Returns:
        dict: sober, and per frame point the matching points

    Raises:
        NotStratified: tau is not stratified
        NoDoubleNegation: Q fails double negation
    """
    if not tau.is_stratified:
        raise NotStratified("sobriety is defined for stratified Q-topologies", tau.mode)
    evaluations = [point_evaluation(tau, x).values for x in tau.space.points]
    matches = []
    for f, g in fr_points(tau):
        points = [tau.space.names[x] for x, values in enumerate(evaluations) if values == g.values]
        matches.append({'irreducible': labels_of(tau.q, f), 'points': points})
    sober = all(len(m['points']) == 1 for m in matches)
    logger.info(f"Topological sobriety: {sober}")
    return {'sober': sober, 'frame_points': matches}
