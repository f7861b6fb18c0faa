#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Loaders for the JSON input documents: quantales, spaces with fuzzy sets,
subbasis descriptions of cotopologies, Q-orders, crisp topologies and point
maps. Every malformed field is reported as an InputError naming its location.
"""

import json
import logging

from src.algebra.fuzzy_sets import PointMap, PointSet, from_labels
from src.algebra.qorder import validate_qorder
from src.algebra.quantale import build_quantale, build_standard_quantale
from src.topology.cotopology import discrete, generate, indiscrete
from src.topology.duality import CrispTopology
from src.utils.errors import InputError

logger = logging.getLogger(__name__)


def read_document(path):
    """
    Read a JSON document.

    Raises:
        InputError: Missing file or invalid JSON
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read file ({e.strerror})", path)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", path)
    if not isinstance(document, dict):
        raise InputError("top level must be an object", path)
    logger.debug(f"Loaded {path}")
    return document


def _field(document, key, location, kind=None):
    if key not in document:
        raise InputError(f"missing field '{key}'", location)
    value = document[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"field '{key}' has the wrong type", f"{location}.{key}")
    return value


def _as_list(value, location):
    if not isinstance(value, list):
        raise InputError("expected a list", location)
    return value


def quantale_from_document(document, location='quantale'):
    """
    {"labels", "leq", "tensor"} or {"standard", "n"}.

    Returns:
        Quantale: Validated quantale
    """
    if 'standard' in document:
        n = document.get('n', 2)
        if not isinstance(n, int):
            raise InputError("'n' must be an integer", f"{location}.n")
        return build_standard_quantale(document['standard'], n)
    labels = _field(document, 'labels', location, list)
    leq = _field(document, 'leq', location, list)
    tensor = _field(document, 'tensor', location, list)
    return build_quantale(labels, leq, tensor, name=document.get('name'))


def space_from_document(document, location='space'):
    return PointSet(tuple(_field(document, 'points', location, list)))


def fuzzy_sets_from_document(q, space, document, location='space'):
    """
    {"fuzzy_sets": {name: [label, ...]}} resolved against q's labels.

    Returns:
        dict: name -> FuzzySet
    """
    named = document.get('fuzzy_sets', {})
    if not isinstance(named, dict):
        raise InputError("'fuzzy_sets' must be an object", f"{location}.fuzzy_sets")
    return {name: from_labels(q, space, labels, f"{location}.fuzzy_sets.{name}")
            for name, labels in sorted(named.items())}


def cotopology_from_document(q, document, caps, location='space'):
    """
    {"points", "subbasis": [[label]], "mode"}; "discrete": true or
    "indiscrete": true name the extreme spaces directly.

    Returns:
        tuple: (PointSet, Cotopology)
    """
    space = space_from_document(document, location)
    if document.get('discrete'):
        return space, discrete(q, space, caps)
    if document.get('indiscrete'):
        return space, indiscrete(q, space)
    mode = document.get('mode', 'plain')
    if not isinstance(mode, str):
        raise InputError("'mode' must be a string", f"{location}.mode")
    subbasis = document.get('subbasis', [])
    if not isinstance(subbasis, list):
        raise InputError("'subbasis' must be a list", f"{location}.subbasis")
    members = [from_labels(q, space, labels, f"{location}.subbasis[{i}]") for i, labels in enumerate(subbasis)]
    return space, generate(q, space, members, mode, caps)


def qorder_from_document(q, document, location='order'):
    space = space_from_document(document, location)
    rows = _field(document, 'R', location, list)
    if len(rows) != space.size:
        raise InputError(f"'R' needs {space.size} rows", f"{location}.R")
    table = [[q.index_of(label, f"{location}.R[{i}]") for label in _as_list(row, f"{location}.R[{i}]")]
             for i, row in enumerate(rows)]
    return validate_qorder(q, space, table)


def crisp_from_document(document, location='crisp'):
    space = space_from_document(document, location)
    subsets = _field(document, 'closed_subsets', location, list)
    closed = []
    for i, subset in enumerate(subsets):
        where = f"{location}.closed_subsets[{i}]"
        closed.append({space.index_of(name, where) for name in _as_list(subset, where)})
    return CrispTopology(space, closed)


def map_from_document(source, target, document, location='map'):
    """{"assignment": [target point name per source point]}."""
    names = _field(document, 'assignment', location, list)
    return PointMap(source, target, tuple(target.index_of(name, f"{location}.assignment") for name in names))
