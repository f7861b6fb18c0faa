#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Q-ordered sets: validation, fuzzy lower and upper sets, irreducible lower
sets, suprema and the Alexandroff cotopology.
"""

import logging

import numpy as np

from src.algebra.fuzzy_sets import FuzzySet, PointSet, enumerate_values, sub, join
from src.utils.errors import InputError, NotReflexive, NotTransitive, SpaceMismatch

logger = logging.getLogger(__name__)


class QOrder:
    """
    Reflexive, transitive Q-relation on a point set.

    `R[x][y]` is the degree to which x is below y.
    """

    def __init__(self, q, space, table):
        self.q = q
        self.space = space
        array = np.array(table, dtype=int).reshape(space.size, space.size)
        array.flags.writeable = False
        self.table = array
        self.R = tuple(tuple(int(v) for v in row) for row in array)

    def __call__(self, x, y):
        return self.R[x][y]

    def __eq__(self, other):
        return isinstance(other, QOrder) and self.space == other.space and self.R == other.R

    def __hash__(self):
        return hash((self.space, self.R))

    def to_document(self):
        return {
            'points': list(self.space.names),
            'R': [[self.q.label(v) for v in row] for row in self.R],
        }


def validate_qorder(q, space, table):
    """
    Validate and wrap a Q-relation.

    Args:
        q (Quantale): Value quantale
        space (PointSet): Points
        table (list): Square table of element indices

    Returns:
        QOrder: The validated order

    Raises:
        InputError: Table shape or entries are wrong
        NotReflexive: Some R(x,x) is not top
        NotTransitive: R(y,z) & R(x,y) is not below R(x,z)
    """
    n = space.size
    rows = [list(row) for row in table]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise InputError(f"relation must be {n}x{n}", 'R')
    if any(not 0 <= v < q.size for row in rows for v in row):
        raise InputError(f"relation entries must be elements of {q.name}", 'R')
    for x in range(n):
        if rows[x][x] != q.top:
            raise NotReflexive(x)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not q.leq(q.tensor(rows[y][z], rows[x][y]), rows[x][z]):
                    raise NotTransitive(x, y, z)
    return QOrder(q, space, rows)


def opposite(order):
    """R^op(x,y) = R(y,x)."""
    return QOrder(order.q, order.space, order.table.T)


def discrete_order(q, space):
    n = space.size
    return QOrder(q, space, [[q.top if x == y else q.bottom for y in range(n)] for x in range(n)])


def d_L(q):
    """The carrier as a Q-ordered set with R(p, r) = p -> r."""
    return validate_qorder(q, PointSet(q.labels), q.res_table)


def d_R(q):
    """The carrier as a Q-ordered set with R(p, r) = r -> p."""
    return validate_qorder(q, PointSet(q.labels), q.res_table.T)


def _check_space(order, phi):
    if phi.space != order.space:
        raise SpaceMismatch("fuzzy set does not live on the ordered set")


def is_lower_set(order, phi):
    """
    phi(y) & R(x,y) <= phi(x) for all x, y.

    Returns:
        tuple: (holds, first failing (x, y) or None)
    """
    _check_space(order, phi)
    q = order.q
    for x in order.space.points:
        for y in order.space.points:
            if not q.leq(q.tensor(phi[y], order(x, y)), phi[x]):
                return False, (x, y)
    return True, None


def is_upper_set(order, psi):
    """
    R(x,y) & psi(x) <= psi(y) for all x, y.

    Returns:
        tuple: (holds, first failing (x, y) or None)
    """
    _check_space(order, psi)
    q = order.q
    for x in order.space.points:
        for y in order.space.points:
            if not q.leq(q.tensor(order(x, y), psi[x]), psi[y]):
                return False, (x, y)
    return True, None


def lower_set_mask(order, rows):
    """Boolean mask over value rows (k, n): which rows are lower sets."""
    q = order.q
    rows = np.asarray(rows, dtype=int)
    if rows.shape[1] == 0:
        return np.ones(rows.shape[0], dtype=bool)
    scaled = q.tensor_table[rows[:, None, :], order.table[None, :, :]]
    return q.leq_table[scaled, rows[:, :, None]].all(axis=(1, 2))


def lower_sets(order, caps):
    """
    All fuzzy lower sets in canonical order, filtered from Q^X.

    Raises:
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    rows = enumerate_values(order.q, order.space, caps)
    kept = rows[lower_set_mask(order, rows)]
    logger.debug(f"{len(kept)} of {len(rows)} fuzzy sets are lower sets")
    return [FuzzySet(order.space, row) for row in kept]


def is_irreducible_lower_set(order, phi, caps):
    """
    Is the lower set phi irreducible?

    Requires the top element as the join of phi, and sub(phi, -) to split
    every binary join of lower sets. Quantifies over the full enumeration
    of lower sets.

    Raises:
        InputError: phi is not a lower set
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    q = order.q
    holds, witness = is_lower_set(order, phi)
    if not holds:
        raise InputError(f"not a lower set, fails at {witness}", 'phi')
    if q.join_all(phi.values) != q.top:
        return False
    candidates = lower_sets(order, caps)
    degrees = [sub(q, phi, c) for c in candidates]
    for i, first in enumerate(candidates):
        for j in range(i, len(candidates)):
            joined = join(q, first, candidates[j])
            if sub(q, phi, joined) != q.join(degrees[i], degrees[j]):
                logger.debug(f"Lower set {phi.values} splits over {first.values} and {candidates[j].values}")
                return False
    return True


def suprema(order, phi):
    """
    Points a with R(a, x) equal to the meet over z of phi(z) -> R(z, x), for every x.

    Returns:
        tuple: Point indices (empty when phi has no supremum)
    """
    _check_space(order, phi)
    q = order.q
    points = order.space.points
    bound = [q.meet_all(q.residuate(phi[z], order(z, x)) for z in points) for x in points]
    return tuple(a for a in points if all(order(a, x) == bound[x] for x in points))


def is_order_preserving(f, order_x, order_y):
    """
    R_X(x, y) <= R_Y(f(x), f(y)) for all x, y.

    Returns:
        tuple: (holds, first failing (x, y) or None)
    """
    if f.source != order_x.space or f.target != order_y.space:
        raise SpaceMismatch("map does not run between the ordered sets")
    q = order_x.q
    for x in order_x.space.points:
        for y in order_x.space.points:
            if not q.leq(order_x(x, y), order_y(f(x), f(y))):
                return False, (x, y)
    return True, None


def alexandroff(order, caps):
    """
    The Alexandroff cotopology: every fuzzy lower set is closed.

    Returns:
        Cotopology: Strong cotopology of all lower sets

    Raises:
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    from src.topology.cotopology import Cotopology

    family = lower_sets(order, caps)
    logger.info(f"Alexandroff cotopology has {len(family)} closed sets")
    return Cotopology(order.q, order.space, family, mode='strong')


def gamma_omega_report(order, caps):
    """
    Compare R with the specialization order of its Alexandroff cotopology.

    Returns:
        dict: refines (R <= Omega(Gamma(R)) pointwise) and equal
    """
    from src.topology.cotopology import specialization

    q = order.q
    recovered = specialization(alexandroff(order, caps))
    points = order.space.points
    refines = all(q.leq(order(x, y), recovered(x, y)) for x in points for y in points)
    return {
        'refines': refines,
        'equal': recovered.R == order.R,
        'specialization': recovered.to_document(),
    }
