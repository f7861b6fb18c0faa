#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Configuration loading: config.ini with fallbacks, .env overrides for caps.
"""

import os
import logging
import configparser
from dataclasses import dataclass, replace

from dotenv import load_dotenv

from src.utils.errors import InputError

logger = logging.getLogger(__name__)

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
CONFIG_DIR = os.path.join(PROJECT_ROOT, 'config')

ENV_PREFIX = 'QSOBER_CAP_'


@dataclass(frozen=True)
class Caps:
    """
    Enumeration and generation bounds. Passed explicitly to every operation
    that may blow up.

    Attributes:
        enumeration (int): Max candidates when enumerating Q^X
        family (int): Max closed sets in a generated cotopology
        uniqueness (int): Max maps s(X) -> Y enumerated for uniqueness checks
        search (int): Max nodes visited by the Fr-map backtracking search
    """
    enumeration: int = 100_000
    family: int = 20_000
    uniqueness: int = 10_000
    search: int = 200_000

    @classmethod
    def from_config(cls, config):
        """
        Read caps from a ConfigParser, then apply QSOBER_CAP_* overrides.

        Args:
            config (ConfigParser): Loaded configuration

        Returns:
            Caps: Resolved caps
        """
        defaults = cls()
        try:
            caps = cls(
                enumeration=config.getint('caps', 'enumeration_cap', fallback=defaults.enumeration),
                family=config.getint('caps', 'family_cap', fallback=defaults.family),
                uniqueness=config.getint('caps', 'uniqueness_cap', fallback=defaults.uniqueness),
                search=config.getint('caps', 'search_cap', fallback=defaults.search),
            )
        except ValueError as e:
            raise InputError(f"caps must be integers ({e})", 'config [caps]')
        return caps.with_env_overrides()

    def with_env_overrides(self, environ=None):
        """
        Apply QSOBER_CAP_ENUMERATION / _FAMILY / _UNIQUENESS / _SEARCH.

        Args:
            environ (dict): Environment mapping, os.environ by default

        Returns:
            Caps: Caps with overrides applied
        """
        environ = os.environ if environ is None else environ
        overrides = {}
        for name in ('enumeration', 'family', 'uniqueness', 'search'):
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None or raw == '':
                continue
            try:
                overrides[name] = int(raw)
            except ValueError:
                logger.warning(f"Ignoring non-integer {ENV_PREFIX}{name.upper()}={raw!r}")
        if overrides:
            logger.info(f"Cap overrides from environment: {overrides}")
        return replace(self, **overrides)

    def with_overrides(self, **overrides):
        """Apply explicit overrides (CLI flags); None values are skipped."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_config(path=None):
    """
    Loads configuration from config file.

    Falls back to config.ini.example when config.ini is absent; every value
    read from the result should use a fallback so an empty parser works.

    Args:
        path (str): Explicit config path (optional)

    Returns:
        ConfigParser: Loaded configuration
    """
    load_dotenv()
    config = configparser.ConfigParser()
    candidates = [path] if path else [
        os.path.join(CONFIG_DIR, 'config.ini'),
        os.path.join(CONFIG_DIR, 'config.ini.example'),
    ]
    for candidate in candidates:
        if candidate and os.path.exists(candidate):
            try:
                config.read(candidate)
            except configparser.Error as e:
                raise InputError(f"malformed configuration ({e.__class__.__name__})", candidate)
            logger.debug(f"Configuration loaded from {candidate}")
            break
    else:
        logger.debug("No configuration file found, using built-in defaults")
    return config
