#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Error types for qsober and the helper that maps them to CLI exit statuses.
Every error carries its witness as structured data so reports can echo it.
"""

import logging

logger = logging.getLogger(__name__)


class QSoberError(Exception):
    """
    Base class for every error raised by the engine.
    """

    def __init__(self, message, witness=None):
        """
        Initialize the error.

        Args:
            message (str): Human readable description
            witness: Structured witness (tuple of indices, labels, ...) or None
        """
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_document(self):
        """
        Serializable form used by the report writer.

        Returns:
            dict: Error kind, message and witness
        """
        witness = self.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        return {
            'error': self.__class__.__name__,
            'message': self.message,
            'witness': witness,
        }


class LawViolation(QSoberError):
    """An algebraic or topological axiom failed; `law` names it."""

    def __init__(self, law, witness=None, detail=''):
        message = f"law '{law}' violated at {witness}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message, witness)
        self.law = law

    def to_document(self):
        document = super().to_document()
        document['law'] = self.law
        return document


class UnsupportedKind(QSoberError):
    pass


class SpaceMismatch(QSoberError):
    pass


class CapExceeded(QSoberError):
    """An enumeration or generation would exceed a configured bound."""

    # CLI flag that raises each cap
    FLAGS = {
        'enumeration': '--enum-cap',
        'family': '--family-cap',
        'uniqueness': '--uniqueness-cap',
        'search': '--search-cap',
    }

    def __init__(self, cap_name, limit, requested=None):
        flag = self.FLAGS.get(cap_name, '--' + cap_name)
        if requested is None:
            message = f"{cap_name} cap of {limit} exceeded (raise it with {flag})"
        else:
            message = f"{cap_name} cap of {limit} exceeded: {requested} needed (raise it with {flag})"
        super().__init__(message, requested)
        self.cap_name = cap_name
        self.limit = limit
        self.flag = flag


class NotReflexive(LawViolation):
    def __init__(self, point):
        super().__init__('reflexivity', (point,))


class NotTransitive(LawViolation):
    def __init__(self, x, y, z):
        super().__init__('transitivity', (x, y, z))


class NotClosed(QSoberError):
    pass


class NotStratified(QSoberError):
    pass


class NotContinuous(QSoberError):
    pass


class TargetNotSober(QSoberError):
    pass


class SourceNotStratified(QSoberError):
    pass


class NonLinearQuantale(QSoberError):
    pass


class NotEnoughCoprimes(QSoberError):
    pass


class NoDoubleNegation(QSoberError):
    pass


class InputError(QSoberError):
    """Malformed input document; `location` points at the offending field."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message, location)
        self.location = location


class ErrorHandler:
    """
    Maps engine errors onto CLI exit statuses.
    """

    OK = 0
    VERDICT_MISMATCH = 1
    INPUT_ERROR = 2

    @staticmethod
    def exit_code_for(exc):
        """
        Exit status for an exception that escaped an analysis.

        Args:
            exc (Exception): The raised exception

        Returns:
            int: 2 for input/validation errors and caps, re-raises anything else
        """
        if isinstance(exc, (QSoberError, OSError)):
            logger.error(f"{exc.__class__.__name__}: {exc}")
            return ErrorHandler.INPUT_ERROR
        raise exc
