#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Q-cotopological spaces: the validated closed family, generation from a
subbasis, closures, continuity, the specialization order, products and the
Hausdorff test.
"""

import logging
from functools import cached_property

import numpy as np

from src.algebra.fuzzy_sets import (
    FuzzySet, enumerate_values, image, labels_of, product_space, diagonal,
)
from src.algebra.qorder import QOrder
from src.utils.errors import CapExceeded, InputError, LawViolation, NotClosed, SpaceMismatch

logger = logging.getLogger(__name__)

# mode -> (closed under p->(-), closed under p&(-))
MODE_FLAGS = {
    'plain': (False, False),
    'stratified': (True, False),
    'costratified': (False, True),
    'strong': (True, True),
}
MODES = tuple(MODE_FLAGS)


def mode_from_flags(c4, c5):
    for mode, flags in MODE_FLAGS.items():
        if flags == (bool(c4), bool(c5)):
            return mode


def mode_meet(first, second):
    """Greatest mode below both."""
    a, b = MODE_FLAGS[first], MODE_FLAGS[second]
    return mode_from_flags(a[0] and b[0], a[1] and b[1])


def check_mode(mode):
    if not isinstance(mode, str) or mode not in MODE_FLAGS:
        raise InputError(f"unknown mode {mode!r} (choose from {', '.join(MODES)})", 'mode')
    return mode


class RowKeys:
    """
    Integer keys for value rows, monotone in lexicographic order.

    Falls back to Python ints (object arrays) when |Q|^|X| leaves int64.
    """

    def __init__(self, q, n):
        wide = q.size ** n >= 2 ** 62
        dtype = object if wide else np.int64
        self.weights = np.array([q.size ** (n - 1 - i) for i in range(n)], dtype=dtype)
        self.dtype = dtype

    def encode(self, rows):
        rows = np.asarray(rows, dtype=int)
        if rows.shape[1] == 0:
            return np.zeros(rows.shape[0], dtype=self.dtype)
        if self.dtype is object:
            rows = rows.astype(object)
        return rows @ self.weights


class Cotopology:
    """
    Finite Q-cotopology: a deduplicated, lexicographically ordered family of
    closed fuzzy sets with a mode tag. The constructor validates the axioms
    the mode requires.
    """

    def __init__(self, q, space, family, mode='plain', validate=True):
        """
        Build a cotopology from its closed sets.

        Args:
            q (Quantale): Value quantale
            space (PointSet): Points
            family (iterable): FuzzySets or value sequences
            mode (str): plain, stratified, costratified or strong
            validate (bool): Check the axioms of the mode

        Raises:
            LawViolation: First failed axiom, named C1..C5
        """
        self.q = q
        self.space = space
        self.mode = check_mode(mode)
        rows = []
        for member in family:
            values = member.values if isinstance(member, FuzzySet) else tuple(member)
            if isinstance(member, FuzzySet) and member.space != space:
                raise SpaceMismatch("closed set does not live on the space")
            rows.append(values)
        array = np.array(rows, dtype=int).reshape(len(rows), space.size)
        if len(array) and ((array < 0) | (array >= q.size)).any():
            raise InputError(f"closed set values must be elements of {q.name}", 'closed')
        self._keys = RowKeys(q, space.size)
        _, first = np.unique(self._keys.encode(array), return_index=True)
        array = array[first]
        array.flags.writeable = False
        self.matrix = array
        self.keys = self._keys.encode(array)
        self.closed = tuple(FuzzySet(space, row) for row in array)
        self._index = {a.values: i for i, a in enumerate(self.closed)}
        if validate:
            self._validate()

    def __len__(self):
        return len(self.closed)

    def __contains__(self, a):
        values = a.values if isinstance(a, FuzzySet) else tuple(a)
        return values in self._index

    def index_of(self, a):
        """
        Raises:
            NotClosed: a is not in the family
        """
        values = a.values if isinstance(a, FuzzySet) else tuple(a)
        if values not in self._index:
            raise NotClosed(f"{list(values)} is not a closed set", values)
        return self._index[values]

    def members_mask(self, rows):
        """Which value rows belong to the family."""
        if len(self.keys) == 0:
            return np.zeros(len(rows), dtype=bool)
        return np.isin(self._keys.encode(rows), self.keys)

    def _first_outside(self, rows):
        rows = np.asarray(rows, dtype=int)
        outside = ~self.members_mask(rows)
        if outside.any():
            return tuple(int(v) for v in rows[np.flatnonzero(outside)[0]])
        return None

    def _validate(self):
        q = self.q
        M = self.matrix
        n = self.space.size
        constants = np.repeat(np.arange(q.size)[:, None], n, axis=1)
        missing = self._first_outside(constants)
        if missing is not None:
            raise LawViolation('C1', missing, detail='constant fuzzy set is not closed')
        for i in range(len(M)):
            joined = self._first_outside(q.join_table[M[i], M[i:]])
            if joined is not None:
                raise LawViolation('C2', (self.closed[i].values, joined), detail='join is not closed')
            met = self._first_outside(q.meet_table[M[i], M[i:]])
            if met is not None:
                raise LawViolation('C3', (self.closed[i].values, met), detail='meet is not closed')
        c4, c5 = MODE_FLAGS[self.mode]
        if c4:
            witness = self._scaling_failure(q.res_table)
            if witness is not None:
                raise LawViolation('C4', witness, detail='p->A is not closed')
        if c5:
            witness = self._scaling_failure(q.tensor_table)
            if witness is not None:
                raise LawViolation('C5', witness, detail='p&A is not closed')
        logger.debug(f"Cotopology of {len(M)} closed sets validated as {self.mode}")

    def _scaling_failure(self, table):
        for p in self.q.elements:
            outside = self._first_outside(table[p][self.matrix]) if len(self.matrix) else None
            if outside is not None:
                return (p, outside)
        return None

    @cached_property
    def satisfied_modes(self):
        """Which scaling axioms actually hold, regardless of the recorded mode."""
        c4 = self._scaling_failure(self.q.res_table) is None
        c5 = self._scaling_failure(self.q.tensor_table) is None
        return {'C4': c4, 'C5': c5, 'mode': mode_from_flags(c4, c5)}

    @property
    def is_stratified(self):
        return self.satisfied_modes['C4']

    @cached_property
    def sub_table(self):
        """sub_table[i, j] = sub(closed[i], closed[j])."""
        table = sub_matrix(self.q, self.matrix, self.matrix)
        table.flags.writeable = False
        return table

    @cached_property
    def join_index(self):
        """join_index[i, j] = position of closed[i] v closed[j] in the family."""
        k = len(self.matrix)
        table = np.empty((k, k), dtype=int)
        for i in range(k):
            joined = self.q.join_table[self.matrix[i], self.matrix]
            table[i] = np.searchsorted(self.keys, self._keys.encode(joined))
        table.flags.writeable = False
        return table

    def to_document(self):
        return {
            'points': list(self.space.names),
            'mode': self.mode,
            'satisfied_mode': self.satisfied_modes['mode'],
            'size': len(self.closed),
            'closed': [labels_of(self.q, a) for a in self.closed],
        }

    def __repr__(self):
        return f"Cotopology({len(self.closed)} closed sets on {self.space.size} points, {self.mode})"


def satisfied_modes(tau):
    return tau.satisfied_modes


def generate(q, space, subbasis, mode, caps):
    """
    Least cotopology containing the subbasis and every constant.

    Worklist fixpoint: each new closed set is joined and met with every known
    one and scaled by every element as the mode requires.

    Args:
        q (Quantale): Value quantale
        space (PointSet): Points
        subbasis (list): FuzzySets or value sequences
        mode (str): plain, stratified, costratified or strong
        caps (Caps): family cap bounds the result

    Returns:
        Cotopology: Validated generated cotopology

    Raises:
        CapExceeded: More than caps.family closed sets
    """
    check_mode(mode)
    c4, c5 = MODE_FLAGS[mode]
    n = space.size
    keys = RowKeys(q, n)
    limit = caps.family

    seeds = [tuple(p for _ in range(n)) for p in q.elements]
    for member in subbasis:
        if isinstance(member, FuzzySet) and member.space != space:
            raise SpaceMismatch("subbasis member does not live on the space")
        seeds.append(member.values if isinstance(member, FuzzySet) else tuple(member))

    buffer = np.empty((limit + 1, n), dtype=int)
    key_buffer = np.empty(limit + 1, dtype=keys.dtype)
    count = 0

    def absorb(rows):
        nonlocal count
        rows = np.asarray(rows, dtype=int).reshape(-1, n)
        row_keys = keys.encode(rows)
        fresh_keys, first = np.unique(row_keys, return_index=True)
        if count:
            unseen = ~np.isin(fresh_keys, key_buffer[:count])
            fresh_keys, first = fresh_keys[unseen], first[unseen]
        if count + len(first) > limit:
            raise CapExceeded('family', limit, f"more than {limit} closed sets")
        buffer[count:count + len(first)] = rows[first]
        key_buffer[count:count + len(first)] = fresh_keys
        count += len(first)

    absorb(seeds)
    head = 0
    while head < count:
        a = buffer[head]
        known = buffer[:count]
        candidates = [q.join_table[a, known], q.meet_table[a, known]]
        if c4:
            candidates.append(q.res_table[:, a])
        if c5:
            candidates.append(q.tensor_table[:, a])
        absorb(np.vstack(candidates))
        head += 1

    logger.info(f"Generated {mode} cotopology with {count} closed sets on {n} points")
    return Cotopology(q, space, buffer[:count].copy(), mode=mode)


def discrete(q, space, caps):
    """Every fuzzy set closed."""
    return Cotopology(q, space, enumerate_values(q, space, caps), mode='strong', validate=False)


def indiscrete(q, space):
    """Only the constants closed."""
    return Cotopology(q, space, [(p,) * space.size for p in q.elements], mode='strong', validate=False)


def _check_space(tau, a):
    if a.space != tau.space:
        raise SpaceMismatch("fuzzy set does not live on the space")


def closure_rows(tau, rows):
    """
    Closures of many value rows at once: meet of the closed sets above each.

    Args:
        tau (Cotopology): Space
        rows (ndarray): (m, n) value rows

    Returns:
        ndarray: (m, n) closures
    """
    q = tau.q
    M = tau.matrix
    rows = np.asarray(rows, dtype=int).reshape(-1, tau.space.size)
    if rows.shape[1] == 0:
        return rows.copy()
    result = np.empty_like(rows)
    batch = max(1, 2_000_000 // max(1, M.size))
    for start in range(0, len(rows), batch):
        chunk = rows[start:start + batch]
        above = q.leq_table[chunk[:, None, :], M[None, :, :]].all(axis=2)
        selected = np.where(above[:, :, None], M[None, :, :], q.top)
        result[start:start + batch] = q.meet_reduce(selected.transpose(0, 2, 1))
    return result


def closure(tau, a):
    """
    Least closed set above A.

    Raises:
        SpaceMismatch: A does not live on the space
    """
    _check_space(tau, a)
    return FuzzySet(tau.space, closure_rows(tau, [a.values])[0])


def closure_by_formula(tau, a):
    """
    Meet over closed B of sub(A, B) -> B. Agrees with closure on stratified
    spaces.
    """
    _check_space(tau, a)
    q = tau.q
    M = tau.matrix
    if tau.space.size == 0:
        return FuzzySet(tau.space, ())
    degrees = q.meet_reduce(q.res_table[np.asarray(a.values)[None, :], M])
    shifted = q.res_table[degrees[:, None], M]
    return FuzzySet(tau.space, q.meet_reduce(shifted.T))


def sub_matrix(q, rows, columns):
    """S[i, j] = sub(rows[i], columns[j]), vectorised."""
    rows = np.asarray(rows, dtype=int)
    columns = np.asarray(columns, dtype=int)
    if rows.shape[1] == 0 or len(rows) == 0 or len(columns) == 0:
        return np.full((len(rows), len(columns)), q.top, dtype=int)
    result = np.empty((len(rows), len(columns)), dtype=int)
    batch = max(1, 2_000_000 // columns.size)
    for start in range(0, len(rows), batch):
        chunk = rows[start:start + batch]
        result[start:start + batch] = q.meet_reduce(q.res_table[chunk[:, None, :], columns[None, :, :]])
    return result


def is_continuous(f, tau_x, tau_y):
    """
    Is every preimage of a closed set closed?

    Returns:
        tuple: (holds, first closed set of the target whose preimage is not closed)
    """
    if f.source != tau_x.space or f.target != tau_y.space:
        raise SpaceMismatch("map does not run between the spaces")
    if tau_x.q is not tau_y.q and tau_x.q.name != tau_y.q.name:
        raise SpaceMismatch("spaces use different quantales")
    if len(tau_y.matrix) == 0:
        return True, None
    pulled = tau_y.matrix[:, list(f.assignment)].reshape(len(tau_y.matrix), f.source.size)
    inside = tau_x.members_mask(pulled)
    if inside.all():
        return True, None
    return False, tau_y.closed[int(np.flatnonzero(~inside)[0])]


def specialization(tau):
    """
    Omega(x, y): meet over closed A of A(y) -> A(x).

    Returns:
        QOrder: The specialization order
    """
    q = tau.q
    M = tau.matrix
    n = tau.space.size
    if n == 0:
        return QOrder(q, tau.space, np.zeros((0, 0), dtype=int))
    implications = q.res_table[M[:, None, :], M[:, :, None]]
    table = q.meet_reduce(implications.transpose(1, 2, 0))
    return QOrder(q, tau.space, table)


def image_of_family(f, tau):
    """{f->(A) : A closed}, deduplicated in canonical order."""
    images = {image(tau.q, f, a).values for a in tau.closed}
    return [FuzzySet(f.target, values) for values in sorted(images)]


def product(tau_x, tau_y, caps):
    """
    Product cotopology on X x Y: generated by preimages of closed sets along
    both projections, in the meet of the two modes.

    Raises:
        SpaceMismatch: Different quantales
        CapExceeded: Generated family above the family cap
    """
    if tau_x.q is not tau_y.q and tau_x.q.name != tau_y.q.name:
        raise SpaceMismatch("product needs a shared quantale")
    q = tau_x.q
    space, first, second = product_space(tau_x.space, tau_y.space)
    subbasis = [tuple(a.values[first(z)] for z in space.points) for a in tau_x.closed]
    subbasis += [tuple(b.values[second(z)] for z in space.points) for b in tau_y.closed]
    mode = mode_meet(tau_x.mode, tau_y.mode)
    return generate(q, space, subbasis, mode, caps)


def is_hausdorff(tau, caps):
    """Is the diagonal closed in X x X?"""
    square = product(tau, tau, caps)
    verdict = diagonal(tau.q, tau.space).values in square
    logger.info(f"Hausdorff: {verdict} (product has {len(square)} closed sets)")
    return verdict


def check_closure_axioms(tau, caps, rows=None):
    """
    cl1..cl4 over every fuzzy set (or the given rows).

    cl1: closure of a constant is itself. cl2: A <= closure(A).
    cl3: closure of A v B is the join of the closures.
    cl4: closure is idempotent.

    Returns:
        tuple: (axiom name, witness) of the first failure, or None
    """
    q = tau.q
    n = tau.space.size
    if rows is None:
        rows = enumerate_values(q, tau.space, caps)
    rows = np.asarray(rows, dtype=int).reshape(-1, n)
    constants = np.repeat(np.arange(q.size)[:, None], n, axis=1)
    moved = (closure_rows(tau, constants) != constants).any(axis=1)
    if moved.any():
        return ('cl1', int(np.flatnonzero(moved)[0]))
    closed = closure_rows(tau, rows)
    below = q.leq_table[rows, closed].all(axis=1)
    if not below.all():
        return ('cl2', tuple(int(v) for v in rows[np.flatnonzero(~below)[0]]))
    unstable = (closure_rows(tau, closed) != closed).any(axis=1)
    if unstable.any():
        return ('cl4', tuple(int(v) for v in rows[np.flatnonzero(unstable)[0]]))
    for i in range(len(rows)):
        joined = q.join_table[rows[i], rows[i:]]
        lhs = closure_rows(tau, joined)
        rhs = q.join_table[closed[i], closed[i:]]
        if (lhs != rhs).any():
            j = i + int(np.flatnonzero((lhs != rhs).any(axis=1))[0])
            return ('cl3', (tuple(int(v) for v in rows[i]), tuple(int(v) for v in rows[j])))
    return None


def stratification_report(tau, caps):
    """
    Three views of stratification, which must agree: closure under p->(-),
    p & closure(A) <= closure(p & A) for all p and A, and
    sub(A, B) <= sub(closure(A), closure(B)) for all A and B.

    Raises:
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    q = tau.q
    rows = enumerate_values(q, tau.space, caps)
    closed = closure_rows(tau, rows)

    scaled_ok = True
    for p in q.elements:
        lhs = q.tensor_table[p][closed]
        rhs = closure_rows(tau, q.tensor_table[p][rows])
        if not q.leq_table[lhs, rhs].all():
            scaled_ok = False
            break

    monotone_ok = True
    for i in range(len(rows)):
        before = sub_matrix(q, rows[i:i + 1], rows)[0]
        after = sub_matrix(q, closed[i:i + 1], closed)[0]
        if not q.leq_table[before, after].all():
            monotone_ok = False
            break

    stratified = tau.is_stratified
    return {
        'stratified': stratified,
        'scaled_closure': scaled_ok,
        'closure_sub_monotone': monotone_ok,
        'agree': stratified == scaled_ok == monotone_ok,
    }
