#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Finite commutative integral quantales.

A quantale is given by an order table and a tensor table over element
indices 0..n-1; join, meet, bottom, top and residuation are derived and every
law is validated at construction. Elements are plain ints, never floats.
"""

import logging
import random
from fractions import Fraction
from functools import reduce
from itertools import combinations, product

import numpy as np

from src.utils.errors import InputError, LawViolation, UnsupportedKind

logger = logging.getLogger(__name__)

STANDARD_KINDS = ('godel', 'lukasiewicz', 'nilpotent_min', 'boolean4')

# exhaustive subset sweeps up to this carrier size, sampled above
EXHAUSTIVE_SUBSET_LIMIT = 6
SAMPLED_SUBSETS = 64


def _frozen(array):
    array.flags.writeable = False
    return array


def _as_tuples(array):
    return tuple(tuple(int(v) for v in row) for row in array)


def _first(mask):
    """First index tuple where mask is True, as plain ints."""
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0])


class Quantale:
    """
    Immutable, validated finite commutative integral quantale.

    Derived tables are exposed as read-only numpy arrays (`leq_table`,
    `join_table`, `meet_table`, `tensor_table`, `res_table`) for vectorised
    sweeps; the scalar methods read tuple copies.
    """

    def __init__(self, labels, leq, tensor, name=None):
        """
        Build and validate a quantale.

        Args:
            labels (list): Display string per element
            leq (list): Square 0/1 table, leq[i][j] iff i <= j
            tensor (list): Square element table, tensor[i][j] = i & j
            name (str): Display name used in reports

        Raises:
            InputError: Tables are not square or not size-consistent
            LawViolation: First failed axiom with its witness
        """
        self.labels = tuple(str(label) for label in labels)
        self.size = len(self.labels)
        self.name = name or f"quantale-{self.size}"
        n = self.size

        if n == 0:
            raise InputError("carrier must be non-empty", 'labels')
        if len(set(self.labels)) != n:
            raise InputError("labels must be distinct", 'labels')

        try:
            leq_array = np.array(leq, dtype=int)
            tensor_array = np.array(tensor, dtype=int)
        except (TypeError, ValueError) as e:
            raise InputError(f"tables must be integer matrices ({e})", 'leq/tensor')
        if leq_array.shape != (n, n):
            raise InputError(f"expected {n}x{n} table, got shape {leq_array.shape}", 'leq')
        if tensor_array.shape != (n, n):
            raise InputError(f"expected {n}x{n} table, got shape {tensor_array.shape}", 'tensor')
        if not np.isin(leq_array, (0, 1)).all():
            raise InputError("entries must be 0 or 1", 'leq')
        if ((tensor_array < 0) | (tensor_array >= n)).any():
            raise InputError(f"entries must be element indices below {n}", 'tensor')

        self.leq_table = _frozen(leq_array.astype(bool))
        self.tensor_table = _frozen(tensor_array)

        self._check_partial_order()
        self.join_table, self.meet_table = self._derive_lattice()
        self.bottom = int(reduce(lambda a, b: self.meet_table[a, b], range(n)))
        self.top = int(reduce(lambda a, b: self.join_table[a, b], range(n)))
        self._check_monoid()
        self.res_table = self._derive_residuation()
        self._check_adjunction()

        self._leq = _as_tuples(self.leq_table)
        self._join = _as_tuples(self.join_table)
        self._meet = _as_tuples(self.meet_table)
        self._tensor = _as_tuples(self.tensor_table)
        self._res = _as_tuples(self.res_table)
        self._label_index = {label: i for i, label in enumerate(self.labels)}

        logger.debug(f"Quantale {self.name} validated ({n} elements)")

    # Validation

    def _check_partial_order(self):
        L = self.leq_table
        n = self.size
        eye = np.eye(n, dtype=bool)
        if not L[eye].all():
            raise LawViolation('poset-reflexivity', (int(np.flatnonzero(~L[eye])[0]),))
        if (L & L.T & ~eye).any():
            raise LawViolation('poset-antisymmetry', _first(L & L.T & ~eye))
        broken = L[:, :, None] & L[None, :, :] & ~L[:, None, :]
        if broken.any():
            raise LawViolation('poset-transitivity', _first(broken))

    def _derive_lattice(self):
        """Join/meet tables: the up-set of i∨j must be an up-set row of L."""
        L = self.leq_table
        n = self.size
        up_id = {tuple(L[i, :]): i for i in range(n)}
        down_id = {tuple(L[:, i]): i for i in range(n)}
        join = np.zeros((n, n), dtype=int)
        meet = np.zeros((n, n), dtype=int)
        for i in range(n):
            for j in range(n):
                above = tuple(L[i, :] & L[j, :])
                if above not in up_id:
                    raise LawViolation('lattice-join', (i, j))
                below = tuple(L[:, i] & L[:, j])
                if below not in down_id:
                    raise LawViolation('lattice-meet', (i, j))
                join[i, j] = up_id[above]
                meet[i, j] = down_id[below]
        return _frozen(join), _frozen(meet)

    def _check_monoid(self):
        T = self.tensor_table
        J = self.join_table
        n = self.size
        ar = np.arange(n)
        if (T != T.T).any():
            raise LawViolation('commutativity', _first(T != T.T))
        left = T[T[:, :, None], ar[None, None, :]]
        right = T[ar[:, None, None], T[None, :, :]]
        if (left != right).any():
            raise LawViolation('associativity', _first(left != right))
        if (T[self.top, :] != ar).any():
            raise LawViolation('unit', (self.top, int(np.flatnonzero(T[self.top, :] != ar)[0])))
        if (T[:, self.bottom] != self.bottom).any():
            i = int(np.flatnonzero(T[:, self.bottom] != self.bottom)[0])
            raise LawViolation('distributivity', (i, self.bottom), detail='tensor does not preserve the empty join')
        lhs = T[ar[:, None, None], J[None, :, :]]
        rhs = J[T[:, :, None], T[:, None, :]]
        if (lhs != rhs).any():
            raise LawViolation('distributivity', _first(lhs != rhs))

    def _derive_residuation(self):
        T = self.tensor_table
        L = self.leq_table
        n = self.size
        res = np.zeros((n, n), dtype=int)
        for p in range(n):
            for r in range(n):
                admissible = [q for q in range(n) if L[T[p, q], r]]
                res[p, r] = reduce(lambda a, b: self.join_table[a, b], admissible, self.bottom)
        return _frozen(res)

    def _check_adjunction(self):
        T = self.tensor_table
        L = self.leq_table
        R = self.res_table
        ar = np.arange(self.size)
        lhs = L[T[:, :, None], ar[None, None, :]]
        rhs = L[ar[None, :, None], R[:, None, :]]
        if (lhs != rhs).any():
            raise LawViolation('adjunction', _first(lhs != rhs))

    # Scalar operations

    @property
    def elements(self):
        return range(self.size)

    def leq(self, p, q):
        return self._leq[p][q]

    def join(self, p, q):
        return self._join[p][q]

    def meet(self, p, q):
        return self._meet[p][q]

    def tensor(self, p, q):
        return self._tensor[p][q]

    def residuate(self, p, r):
        return self._res[p][r]

    def negation(self, p):
        return self._res[p][self.bottom]

    def join_all(self, elements):
        """Join of any finite family; the empty join is bottom."""
        return reduce(self.join, elements, self.bottom)

    def meet_all(self, elements):
        """Meet of any finite family; the empty meet is top."""
        return reduce(self.meet, elements, self.top)

    # Vectorised reductions over the last axis

    def join_reduce(self, values):
        values = np.asarray(values, dtype=int)
        acc = np.full(values.shape[:-1], self.bottom, dtype=int)
        for k in range(values.shape[-1]):
            acc = self.join_table[acc, values[..., k]]
        return acc

    def meet_reduce(self, values):
        values = np.asarray(values, dtype=int)
        acc = np.full(values.shape[:-1], self.top, dtype=int)
        for k in range(values.shape[-1]):
            acc = self.meet_table[acc, values[..., k]]
        return acc

    # Labels

    def label(self, p):
        return self.labels[p]

    def index_of(self, label, location=None):
        """
        Resolve a display label to its element index.

        Raises:
            InputError: Unknown label
        """
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise InputError(f"unknown element label {label!r} (known: {list(self.labels)})", location)

    def __repr__(self):
        return f"Quantale({self.name})"


def build_quantale(labels, leq, tensor, name=None):
    """
    Build a validated quantale from explicit tables.

    Args:
        labels (list): Display strings
        leq (list): 0/1 order table
        tensor (list): Element table of the monoid operation
        name (str): Optional display name

    Returns:
        Quantale: Validated quantale with derived tables
    """
    return Quantale(labels, leq, tensor, name=name)


def build_standard_quantale(kind, n=2):
    """
    Build one of the standard quantales.

    Chains are {0, 1/(n-1), ..., 1} with element k standing for k/(n-1);
    all t-norms are evaluated on indices so no rounding ever happens.

    Args:
        kind (str): 'godel', 'lukasiewicz', 'nilpotent_min' or 'boolean4'
        n (int): Chain size (ignored for boolean4)

    Returns:
        Quantale: Validated quantale

    Raises:
        UnsupportedKind: Product t-norm or unknown kind
        InputError: Chain size below 2
    """
    if kind == 'product':
        raise UnsupportedKind(
            "the product t-norm has no finite equally spaced carrier closed under multiplication", kind)
    if kind not in STANDARD_KINDS:
        raise UnsupportedKind(f"unknown standard quantale {kind!r} (choose from {', '.join(STANDARD_KINDS)})", kind)

    if kind == 'boolean4':
        # index = bitmask: 0 -> 00, a -> 01, b -> 10, 1 -> 11
        labels = ['0', 'a', 'b', '1']
        leq = [[int(i & j == i) for j in range(4)] for i in range(4)]
        tensor = [[i & j for j in range(4)] for i in range(4)]
        return Quantale(labels, leq, tensor, name='boolean4')

    if n < 2:
        raise InputError(f"chain size must be at least 2, got {n}", 'n')
    top = n - 1
    labels = [str(Fraction(k, top)) for k in range(n)]
    leq = [[int(i <= j) for j in range(n)] for i in range(n)]
    if kind == 'godel':
        tensor = [[min(i, j) for j in range(n)] for i in range(n)]
    elif kind == 'lukasiewicz':
        tensor = [[max(i + j - top, 0) for j in range(n)] for i in range(n)]
    else:
        tensor = [[0 if i + j <= top else min(i, j) for j in range(n)] for i in range(n)]
    return Quantale(labels, leq, tensor, name=f"{kind}-{n}")


def residuate(q, p, r):
    """
    p -> r, the largest element whose tensor with p stays below r.
    """
    return q.residuate(p, r)


def _subsets(q, rng):
    """All subsets of the carrier for small carriers, seeded samples otherwise."""
    if q.size <= EXHAUSTIVE_SUBSET_LIMIT:
        for k in range(q.size + 1):
            yield from combinations(q.elements, k)
    else:
        for _ in range(SAMPLED_SUBSETS * q.size):
            yield tuple(e for e in q.elements if rng.random() < 0.5)


def residuation_law_failure(q, seed=0):
    """
    Check the residuation identities exhaustively (subsets sampled above six
    elements).

    Args:
        q (Quantale): Quantale to check
        seed (int): Seed for sampled subsets

    Returns:
        tuple: (identity name, witness) of the first failure, or None
    """
    E = q.elements
    for p in E:
        if q.residuate(q.top, p) != p:
            return ('unit-residuation', (p,))
    for p, r in product(E, E):
        if q.leq(p, r) != (q.residuate(p, r) == q.top):
            return ('order-residuation', (p, r))
    for p, s, r in product(E, E, E):
        if q.residuate(p, q.residuate(s, r)) != q.residuate(q.tensor(p, s), r):
            return ('currying', (p, s, r))
        if not q.leq(q.tensor(p, q.residuate(p, s)), s):
            return ('modus-ponens', (p, s))
    rng = random.Random(seed)
    for subset in _subsets(q, rng):
        for r in E:
            joined = q.residuate(q.join_all(subset), r)
            if joined != q.meet_all(q.residuate(s, r) for s in subset):
                return ('join-residuation', (subset, r))
            met = q.residuate(r, q.meet_all(subset))
            if met != q.meet_all(q.residuate(r, s) for s in subset):
                return ('residuation-meet', (r, subset))
    return None


def _check_negation_identities(q, seed=0):
    neg = q.negation
    E = q.elements
    for p, s in product(E, E):
        implied = q.residuate(p, s)
        if implied != neg(q.tensor(p, neg(s))) or implied != q.residuate(neg(s), neg(p)):
            raise LawViolation('negation-residuation', (p, s))
        conj = q.tensor(p, s)
        if conj != neg(q.residuate(s, neg(p))) or conj != neg(q.residuate(p, neg(s))):
            raise LawViolation('negation-tensor', (p, s))
    rng = random.Random(seed)
    for subset in _subsets(q, rng):
        if neg(q.meet_all(subset)) != q.join_all(neg(s) for s in subset):
            raise LawViolation('negation-de-morgan', subset)


def check_double_negation(q):
    """
    Does ¬¬p = p hold for every p?

    When it does, the derived negation identities are asserted as well.

    Args:
        q (Quantale): Quantale to check

    Returns:
        tuple: (holds, witness) where witness is the first p with ¬¬p != p
    """
    for p in q.elements:
        if q.negation(q.negation(p)) != p:
            logger.debug(f"{q.name}: double negation fails at {q.label(p)}")
            return False, p
    _check_negation_identities(q)
    return True, None


def coprimes(q):
    """
    Nonzero elements a with a <= b∨c implying a <= b or a <= c.

    Returns:
        tuple: Coprime element indices in index order
    """
    L = q.leq_table
    J = q.join_table
    found = []
    for a in q.elements:
        if a == q.bottom:
            continue
        covered = L[a, J]
        split = covered & ~L[a, :][:, None] & ~L[a, :][None, :]
        if not split.any():
            found.append(a)
    return tuple(found)


def has_enough_coprimes(q):
    """True iff every element is the join of the coprimes below it."""
    primes = coprimes(q)
    return all(q.join_all(c for c in primes if q.leq(c, e)) == e for e in q.elements)


def is_linear(q):
    """True iff the order is total."""
    L = q.leq_table
    return bool((L | L.T).all())


def to_document(q):
    """
    Audit document with the input and every derived table.

    Returns:
        dict: Serializable description of the quantale
    """
    return {
        'name': q.name,
        'labels': list(q.labels),
        'leq': [[int(v) for v in row] for row in q.leq_table],
        'tensor': [list(row) for row in q._tensor],
        'join': [list(row) for row in q._join],
        'meet': [list(row) for row in q._meet],
        'residuation': [list(row) for row in q._res],
        'bottom': q.bottom,
        'top': q.top,
    }
