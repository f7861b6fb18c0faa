#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Runs the named scenarios of the registry and compares each outcome with its
recorded expectations.
"""

import os
import json
import logging
from dataclasses import dataclass, field

from src.algebra.quantale import (
    check_double_negation, coprimes, has_enough_coprimes, is_linear, to_document,
)
from src.data.loaders import (
    cotopology_from_document, crisp_from_document, map_from_document, quantale_from_document,
)
from src.scenarios.chain_examples import chain_analogue
from src.topology.cotopology import is_hausdorff
from src.topology.duality import crisp_embedding_report, good_extension_check, is_crisp_sober, lowen
from src.topology.sobriety import (
    check_directed_complete, eta_homeomorphism_check, extend_to_sobrification, hausdorff_implies_sober_check,
    is_sober, sobrify,
)
from src.utils.errors import InputError, NonLinearQuantale

logger = logging.getLogger(__name__)

REGISTRY_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data', 'scenario_registry.json')
PROVENANCE_TAGS = ('PAPER', 'TRIVIAL', 'DERIVED')


def load_registry(path=None):
    """
    Load and check the scenario registry.

    Returns:
        list: Scenario dicts in registry order

    Raises:
        InputError: Unreadable registry, duplicate names or bad provenance tags
    """
    path = path or REGISTRY_PATH
    try:
        with open(path, 'r', encoding='utf-8') as f:
            scenarios = json.load(f)['scenarios']
    except (OSError, KeyError, json.JSONDecodeError) as e:
        raise InputError(f"cannot load scenario registry ({e})", path)
    names = [s.get('name') for s in scenarios]
    if len(set(names)) != len(names):
        raise InputError("duplicate scenario names", path)
    for scenario in scenarios:
        if scenario.get('provenance') not in PROVENANCE_TAGS:
            raise InputError(f"bad provenance tag {scenario.get('provenance')!r}", f"{path}:{scenario.get('name')}")
    return scenarios


def lookup(document, dotted):
    """Follow a dotted key path into nested dicts; missing keys give None."""
    value = document
    for part in dotted.split('.'):
        if not isinstance(value, dict) or part not in value:
            return None
        value = value[part]
    return value


@dataclass
class ScenarioResult:
    """
    Attributes:
        name (str): Scenario name
        document (dict): Full report document
        mismatches (list): Expected keys whose observed value differs
    """
    name: str
    document: dict
    mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches


class ScenarioRunner:
    """
    Runs registry scenarios against the engine.
    """

    def __init__(self, caps, registry_path=None):
        """
        Initialize the scenario runner.

        Args:
            caps (Caps): Bounds passed to every analysis
            registry_path (str): Registry file (bundled registry by default)
        """
        self.caps = caps
        self.scenarios = load_registry(registry_path)
        self._by_name = {s['name']: s for s in self.scenarios}

    def list_scenarios(self):
        """Registry overview rows: name, provenance, exploratory, description."""
        return [{
            'name': s['name'],
            'provenance': s['provenance'],
            'exploratory': bool(s.get('exploratory', False)),
            'description': s.get('description', ''),
        } for s in self.scenarios]

    def run(self, name):
        """
        Run one scenario.

        Returns:
            ScenarioResult: Observed document and mismatches

        Raises:
            InputError: Unknown scenario
        """
        if name not in self._by_name:
            raise InputError(f"unknown scenario {name!r} (see scenario --list)", 'scenario')
        scenario = self._by_name[name]
        logger.info(f"Running scenario {name}")

        observed = {}
        q = quantale_from_document(scenario['quantale']) if 'quantale' in scenario else None
        for analysis in scenario['analyses']:
            handler = getattr(self, '_' + analysis.replace('-', '_'), None)
            if handler is None:
                raise InputError(f"unknown analysis {analysis!r}", f"{name}.analyses")
            observed.update(handler(q, scenario))

        expected = scenario.get('expected', {})
        mismatches = [
            {'key': key, 'expected': value, 'observed': lookup(observed, key)}
            for key, value in sorted(expected.items()) if lookup(observed, key) != value
        ]
        document = {
            'scenario': name,
            'description': scenario.get('description', ''),
            'provenance': scenario['provenance'],
            'exploratory': bool(scenario.get('exploratory', False)),
            'observed': observed,
            'expected': expected,
            'mismatches': mismatches,
            'passed': not mismatches,
        }
        if q is not None:
            document['quantale'] = to_document(q)
        if mismatches:
            logger.warning(f"Scenario {name}: {len(mismatches)} expectation(s) not met")
        return ScenarioResult(name, document, mismatches)

    def run_all(self):
        return [self.run(s['name']) for s in self.scenarios]

    # Analyses: each returns a flat dict merged into the observed document

    def _space(self, q, scenario):
        return cotopology_from_document(q, scenario['space'], self.caps, location=f"{scenario['name']}.space")[1]

    def _validate_quantale(self, q, scenario):
        return {
            'double_negation': check_double_negation(q)[0],
            'linear': is_linear(q),
            'enough_coprimes': has_enough_coprimes(q),
            'coprimes': [q.label(c) for c in coprimes(q)],
        }

    def _check_sober(self, q, scenario):
        return is_sober(self._space(q, scenario)).to_document()

    def _check_hausdorff(self, q, scenario):
        return {'hausdorff': is_hausdorff(self._space(q, scenario), self.caps)}

    def _hausdorff_implies_sober(self, q, scenario):
        try:
            result = hausdorff_implies_sober_check(self._space(q, scenario), self.caps)
        except NonLinearQuantale:
            return {'hausdorff_implication_refused': 'NonLinearQuantale'}
        return {'hausdorff': result['hausdorff'], 'hausdorff_implication': result['holds']}

    def _lowen(self, q, scenario):
        crisp = crisp_from_document(scenario['crisp'], location=f"{scenario['name']}.crisp")
        cotopology = lowen(q, crisp, self.caps)
        return {
            'crisp_sober': is_crisp_sober(crisp),
            'lowen_size': len(cotopology),
            'lowen_verdict': is_sober(cotopology).verdict,
            'crisp_embedding': crisp_embedding_report(q, crisp, cotopology),
        }

    def _good_extension(self, q, scenario):
        crisp = crisp_from_document(scenario['crisp'], location=f"{scenario['name']}.crisp")
        try:
            result = good_extension_check(q, crisp, self.caps)
        except NonLinearQuantale:
            return {'good_extension_refused': 'NonLinearQuantale'}
        return {
            'crisp_sober': result['crisp_sober'],
            'lowen_verdict': result['sober']['verdict'],
            'good_extension': result['holds'],
        }

    def _sobrify(self, q, scenario):
        sobrification = sobrify(self._space(q, scenario))
        eta = eta_homeomorphism_check(sobrification)
        return {
            'sobrification_points': list(sobrification.space.space.names),
            'sobrification_verdict': is_sober(sobrification.space).verdict,
            'sobrification_directed_complete': check_directed_complete(sobrification.space, self.caps).complete,
            'eta_continuous': eta['continuous'],
            'eta_bijective': eta['bijective'],
        }

    def _chain_analogue(self, q, scenario):
        chain = scenario['chain']
        return {'chain': chain_analogue(chain['kind'], chain['n'], self.caps)}

    def _extend(self, q, scenario):
        name = scenario['name']
        source, tau_x = cotopology_from_document(q, scenario['space'], self.caps, location=f"{name}.space")
        target, tau_y = cotopology_from_document(q, scenario['target'], self.caps, location=f"{name}.target")
        f = map_from_document(source, target, scenario['map'], location=f"{name}.map")
        return {'extension': extend_to_sobrification(f, tau_x, tau_y, self.caps).to_document()}
