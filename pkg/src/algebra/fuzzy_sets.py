#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Fuzzy sets over finite point sets: the inclusion degree sub, pointwise
algebra, image/preimage along maps and the capped enumerator of Q^X.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from src.utils.errors import CapExceeded, InputError, SpaceMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointSet:
    """Finite set of named points; point i is names[i]."""

    names: tuple

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(str(n) for n in self.names))
        if len(set(self.names)) != len(self.names):
            raise InputError(f"point names must be distinct: {list(self.names)}", 'points')

    @property
    def size(self):
        return len(self.names)

    @property
    def points(self):
        return range(len(self.names))

    def index_of(self, name, location=None):
        try:
            return self.names.index(str(name))
        except ValueError:
            raise InputError(f"unknown point {name!r} (known: {list(self.names)})", location)

    def __len__(self):
        return len(self.names)


@dataclass(frozen=True)
class FuzzySet:
    """
    A map X -> Q stored as a tuple of element indices, one per point.

    Equality is exact index-wise equality; families sort by `values`.
    """

    space: PointSet
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(int(v) for v in self.values))
        if len(self.values) != self.space.size:
            raise InputError(
                f"fuzzy set has {len(self.values)} values for {self.space.size} points", 'values')

    def __getitem__(self, x):
        return self.values[x]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class PointMap:
    """Total map between point sets; assignment[i] is the image of point i."""

    source: PointSet
    target: PointSet
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, 'assignment', tuple(int(v) for v in self.assignment))
        if len(self.assignment) != self.source.size:
            raise InputError(
                f"map assigns {len(self.assignment)} images for {self.source.size} points", 'assignment')
        bad = [y for y in self.assignment if not 0 <= y < self.target.size]
        if bad:
            raise InputError(f"images {bad} outside the target of size {self.target.size}", 'assignment')

    def __call__(self, x):
        return self.assignment[x]

    @classmethod
    def identity(cls, space):
        return cls(space, space, tuple(space.points))

    def compose(self, then):
        """The map x -> then(self(x))."""
        if then.source != self.target:
            raise SpaceMismatch("maps do not compose: target and source differ")
        return PointMap(self.source, then.target, tuple(then(y) for y in self.assignment))

    def is_bijective(self):
        return self.source.size == self.target.size and len(set(self.assignment)) == self.source.size


def from_labels(q, space, labels, location=None):
    """
    Build a fuzzy set from element labels, one per point.

    Raises:
        InputError: Wrong length or unknown label
    """
    if not isinstance(labels, (list, tuple)):
        raise InputError(f"expected a list of labels, got {labels!r}", location)
    labels = list(labels)
    if len(labels) != space.size:
        raise InputError(f"expected {space.size} labels, got {len(labels)}", location)
    return FuzzySet(space, tuple(q.index_of(label, location) for label in labels))


def labels_of(q, a):
    return [q.label(v) for v in a.values]


def _same_space(*sets):
    first = sets[0].space
    for other in sets[1:]:
        if other.space != first:
            raise SpaceMismatch(
                f"fuzzy sets live on different spaces: {list(first.names)} vs {list(other.space.names)}")
    return first


def constant(space, p):
    """The constant fuzzy set p_X."""
    return FuzzySet(space, (p,) * space.size)


def characteristic(q, space, x):
    """1_x: top at x, bottom elsewhere."""
    return FuzzySet(space, tuple(q.top if z == x else q.bottom for z in space.points))


def characteristic_of(q, space, subset):
    """1_K for a set K of point indices."""
    members = set(subset)
    return FuzzySet(space, tuple(q.top if z in members else q.bottom for z in space.points))


def sub(q, a, b):
    """
    Fuzzy inclusion degree: the meet over x of A(x) -> B(x).

    Over the empty point set this is top.

    Raises:
        SpaceMismatch: A and B live on different spaces
    """
    _same_space(a, b)
    return reduce(q.meet, (q.residuate(x, y) for x, y in zip(a.values, b.values)), q.top)


def is_below(q, a, b):
    """Pointwise A <= B."""
    _same_space(a, b)
    return all(q.leq(x, y) for x, y in zip(a.values, b.values))


def join(q, *sets):
    space = _same_space(*sets)
    return FuzzySet(space, tuple(q.join_all(col) for col in zip(*(s.values for s in sets))))


def meet(q, *sets):
    space = _same_space(*sets)
    return FuzzySet(space, tuple(q.meet_all(col) for col in zip(*(s.values for s in sets))))


def tensor_scale(q, p, a):
    """p&A."""
    return FuzzySet(a.space, tuple(q.tensor(p, v) for v in a.values))


def res_scale(q, p, a):
    """p->A."""
    return FuzzySet(a.space, tuple(q.residuate(p, v) for v in a.values))


def negate(q, a):
    """Pointwise negation A(x) -> 0."""
    return FuzzySet(a.space, tuple(q.negation(v) for v in a.values))


POINTWISE_KINDS = ('join', 'meet', 'tensor_scale', 'res_scale')


def pointwise(q, kind, operands, p=None):
    """
    Pointwise combination of fuzzy sets.

    Args:
        q (Quantale): Value quantale
        kind (str): 'join', 'meet', 'tensor_scale' or 'res_scale'
        operands (list): Fuzzy sets (exactly one for the scalings)
        p (int): Scalar element for the scalings

    Returns:
        FuzzySet: The combination

    Raises:
        SpaceMismatch: Operands live on different spaces
    """
    operands = list(operands)
    if not operands:
        raise InputError("pointwise needs at least one operand", 'operands')
    if kind == 'join':
        return join(q, *operands)
    if kind == 'meet':
        return meet(q, *operands)
    if kind in ('tensor_scale', 'res_scale'):
        if p is None or len(operands) != 1:
            raise InputError(f"{kind} takes one scalar and one fuzzy set", 'operands')
        scale = tensor_scale if kind == 'tensor_scale' else res_scale
        return scale(q, p, operands[0])
    raise InputError(f"unknown pointwise kind {kind!r} (choose from {', '.join(POINTWISE_KINDS)})", 'kind')


def image(q, f, a):
    """
    f->(A)(y): join of A(x) over the fiber of y; empty fibers map to bottom.
    """
    if a.space != f.source:
        raise SpaceMismatch("fuzzy set does not live on the source of the map")
    values = [q.bottom] * f.target.size
    for x, v in enumerate(a.values):
        y = f(x)
        values[y] = q.join(values[y], v)
    return FuzzySet(f.target, tuple(values))


def preimage(f, b):
    """f<-(B) = B composed with f."""
    if b.space != f.target:
        raise SpaceMismatch("fuzzy set does not live on the target of the map")
    return FuzzySet(f.source, tuple(b.values[f(x)] for x in f.source.points))


def count_all(q, space):
    return q.size ** space.size


def check_enumeration_cap(q, space, caps):
    """
    Raises:
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    total = count_all(q, space)
    if total > caps.enumeration:
        raise CapExceeded('enumeration', caps.enumeration, total)
    return total


def enumerate_values(q, space, caps):
    """
    Every value vector of Q^X as a (|Q|^|X|, |X|) integer array in
    lexicographic order.

    Raises:
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    total = check_enumeration_cap(q, space, caps)
    rows = np.array(list(product(range(q.size), repeat=space.size)), dtype=int)
    logger.debug(f"Enumerated {total} fuzzy sets over {space.size} points")
    return rows.reshape(total, space.size)


def enumerate_all(q, space, caps):
    """
    All of Q^X in canonical (lexicographic) order.

    Raises:
        CapExceeded: |Q|^|X| is above the enumeration cap
    """
    check_enumeration_cap(q, space, caps)
    return [FuzzySet(space, values) for values in product(range(q.size), repeat=space.size)]


def product_space(x_space, y_space):
    """
    X x Y with its projections; point (x, y) has index x * |Y| + y.

    Returns:
        tuple: (PointSet, first projection, second projection)
    """
    names = tuple(f"({x},{y})" for x in x_space.names for y in y_space.names)
    space = PointSet(names)
    pairs = [(i, j) for i in x_space.points for j in y_space.points]
    first = PointMap(space, x_space, tuple(i for i, _ in pairs))
    second = PointMap(space, y_space, tuple(j for _, j in pairs))
    return space, first, second


def diagonal(q, space):
    """Δ on X x X: top on pairs (x, x), bottom elsewhere."""
    n = space.size
    square, _, _ = product_space(space, space)
    return FuzzySet(square, tuple(q.top if i == j else q.bottom for i in range(n) for j in range(n)))
