#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
qsober - finite-model engine for quantale-valued cotopological spaces.

Validates quantales, generates cotopologies, computes closures, specialization
orders, irreducible closed sets and sobrifications, and replays the registered
scenarios. Every analysis prints a text report and can write a JSON document.
"""

import os
import sys
import logging
import argparse
from datetime import datetime

from colorama import Fore, Style, init as colorama_init

from src.algebra.fuzzy_sets import labels_of
from src.algebra.qorder import alexandroff
from src.algebra.quantale import (
    check_double_negation, coprimes, has_enough_coprimes, is_linear, to_document,
)
from src.data.loaders import (
    cotopology_from_document, crisp_from_document, fuzzy_sets_from_document, qorder_from_document,
    quantale_from_document, read_document,
)
from src.scenarios.corpus import SWEEPS, build_corpus, directed_complete_non_sober, run_sweeps
from src.scenarios.scenario_runner import ScenarioRunner
from src.topology.cotopology import closure, is_hausdorff, specialization
from src.topology.duality import (
    brute_fr_maps, crisp_embedding_report, fr_points, is_sober_topological, lowen, negate_topology,
)
from src.topology.sobriety import eta_homeomorphism_check, is_sober, lemma_report, sobrify
from src.utils.errors import ErrorHandler, InputError
from src.utils.report_writer import ReportWriter
from src.utils.settings import Caps, load_config

logger = logging.getLogger(__name__)


def setup_logging(config, quiet=False):
    """Configure root logging from the [logging] section."""
    level_name = config.get('logging', 'level', fallback='INFO').upper()
    level = logging.WARNING if quiet else getattr(logging, level_name, logging.INFO)
    handlers = [logging.StreamHandler(sys.stderr)]
    try:
        to_file = config.getboolean('logging', 'log_to_file', fallback=False)
    except ValueError:
        raise InputError("log_to_file must be a boolean", 'config [logging]')
    if to_file:
        log_dir = config.get('logging', 'log_dir', fallback='logs')
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(
            os.path.join(log_dir, f'qsober_{datetime.now().strftime("%Y%m%d")}.log')))
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser():
    parser = argparse.ArgumentParser(prog='qsober', description=__doc__.strip().splitlines()[0])
    parser.add_argument('--config', help='configuration file (default config/config.ini)')
    parser.add_argument('--report', help='write the JSON report to this path')
    parser.add_argument('--text-report', help='write the text report to this path')
    parser.add_argument('--enum-cap', type=int, help='max fuzzy sets enumerated from Q^X')
    parser.add_argument('--family-cap', type=int, help='max closed sets in a generated cotopology')
    parser.add_argument('--uniqueness-cap', type=int, help='max maps enumerated for uniqueness checks')
    parser.add_argument('--search-cap', type=int, help='max nodes of the frame-point search')
    parser.add_argument('--quiet', action='store_true', help='only warnings on stderr, no text report on stdout')
    commands = parser.add_subparsers(dest='command', required=True)

    validate = commands.add_parser('validate-quantale', help='validate a quantale and print its derived tables')
    validate.add_argument('quantale')

    for name, text in (
        ('generate', 'generate a cotopology from a subbasis'),
        ('specialization', 'specialization order of a space'),
        ('sobrify', 'sobrification of a stratified space'),
        ('check-sober', 'sobriety verdict with witnesses'),
        ('check-hausdorff', 'is the diagonal closed in the product'),
        ('dualize', 'negate a cotopology into a Q-topology'),
        ('fr-points', 'frame points of the negated space'),
    ):
        sub = commands.add_parser(name, help=text)
        sub.add_argument('--quantale', required=True)
        sub.add_argument('--space', required=True)
        if name == 'fr-points':
            sub.add_argument('--brute', action='store_true', help='cross-check with the backtracking search')

    closure_cmd = commands.add_parser('closure', help='closure of a named fuzzy set of the space file')
    closure_cmd.add_argument('--quantale', required=True)
    closure_cmd.add_argument('--space', required=True)
    closure_cmd.add_argument('--set', required=True, dest='fuzzy_set')

    alex = commands.add_parser('alexandroff', help='all fuzzy lower sets of a Q-order')
    alex.add_argument('--quantale', required=True)
    alex.add_argument('--order', required=True)

    low = commands.add_parser('lowen', help='Lowen cotopology of a crisp topology')
    low.add_argument('--quantale', required=True)
    low.add_argument('--crisp', required=True)

    scenario = commands.add_parser('scenario', help='run registered scenarios')
    scenario.add_argument('name', nargs='?')
    scenario.add_argument('--list', action='store_true', help='list the registry')
    scenario.add_argument('--all', action='store_true', help='run every scenario')

    corpus = commands.add_parser('corpus', help='property sweeps over a seeded corpus')
    corpus.add_argument('--seed', type=int)
    corpus.add_argument('--size', type=int)
    corpus.add_argument('--max-quantale', type=int)
    corpus.add_argument('--max-points', type=int)
    corpus.add_argument('--sweep', action='append', choices=sorted(SWEEPS), help='restrict to these sweeps')
    return parser


def _quantale(args):
    return quantale_from_document(read_document(args.quantale), location=args.quantale)


def _space(args, q, caps):
    document = read_document(args.space)
    _, tau = cotopology_from_document(q, document, caps, location=args.space)
    return document, tau


def cmd_validate_quantale(args, caps, config):
    q = _quantale(args)
    holds, witness = check_double_negation(q)
    document = to_document(q)
    document.update({
        'double_negation': holds,
        'double_negation_witness': None if holds else q.label(witness),
        'linear': is_linear(q),
        'coprimes': [q.label(c) for c in coprimes(q)],
        'enough_coprimes': has_enough_coprimes(q),
    })
    return f"Quantale {q.name}", document, ErrorHandler.OK


def cmd_generate(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    return "Generated cotopology", tau.to_document(), ErrorHandler.OK


def cmd_closure(args, caps, config):
    q = _quantale(args)
    document, tau = _space(args, q, caps)
    named = fuzzy_sets_from_document(q, tau.space, document, location=args.space)
    if args.fuzzy_set not in named:
        raise InputError(f"no fuzzy set named {args.fuzzy_set!r}", f"{args.space}.fuzzy_sets")
    a = named[args.fuzzy_set]
    return f"Closure of {args.fuzzy_set}", {
        'points': list(tau.space.names),
        'fuzzy_set': labels_of(q, a),
        'closure': labels_of(q, closure(tau, a)),
    }, ErrorHandler.OK


def cmd_specialization(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    return "Specialization order", specialization(tau).to_document(), ErrorHandler.OK


def cmd_alexandroff(args, caps, config):
    q = _quantale(args)
    order = qorder_from_document(q, read_document(args.order), location=args.order)
    return "Alexandroff cotopology", alexandroff(order, caps).to_document(), ErrorHandler.OK


def cmd_sobrify(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    sobrification = sobrify(tau)
    document = sobrification.space.to_document()
    document.update({
        'irreducibles': [labels_of(q, f) for f in sobrification.irreducibles],
        'eta': {tau.space.names[x]: sobrification.space.space.names[e]
                for x, e in enumerate(sobrification.eta.assignment)},
        'lemma': lemma_report(sobrification),
        'eta_check': eta_homeomorphism_check(sobrification),
        'verdict': is_sober(sobrification.space).verdict,
    })
    return "Sobrification", document, ErrorHandler.OK


def cmd_check_sober(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    return "Sobriety", is_sober(tau).to_document(), ErrorHandler.OK


def cmd_check_hausdorff(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    return "Hausdorff", {'hausdorff': is_hausdorff(tau, caps)}, ErrorHandler.OK


def cmd_lowen(args, caps, config):
    q = _quantale(args)
    crisp = crisp_from_document(read_document(args.crisp), location=args.crisp)
    tau = lowen(q, crisp, caps)
    document = tau.to_document()
    document['crisp_embedding'] = crisp_embedding_report(q, crisp, tau)
    document['verdict'] = is_sober(tau).verdict
    return "Lowen cotopology", document, ErrorHandler.OK


def cmd_dualize(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    return "Negated Q-topology", negate_topology(tau).to_document(), ErrorHandler.OK


def cmd_fr_points(args, caps, config):
    q = _quantale(args)
    _, tau = _space(args, q, caps)
    topology = negate_topology(tau)
    points = fr_points(topology)
    document = {
        'open': [labels_of(q, u) for u in topology.open],
        'frame_points': [{'irreducible': labels_of(q, f), 'values': g.to_document()} for f, g in points],
    }
    if topology.is_stratified:
        document['sober'] = is_sober_topological(topology)['sober']
    if args.brute:
        brute = {g.values for g in brute_fr_maps(topology, caps)}
        document['brute_force_agrees'] = brute == {g.values for _, g in points}
    return "Frame points", document, ErrorHandler.OK


def cmd_scenario(args, caps, config):
    runner = ScenarioRunner(caps)
    if args.list:
        return "Scenarios", {'scenarios': runner.list_scenarios()}, ErrorHandler.OK
    if args.all:
        results = runner.run_all()
    elif args.name:
        results = [runner.run(args.name)]
    else:
        raise InputError("give a scenario name, --list or --all", 'scenario')
    for result in results:
        color = Fore.GREEN if result.passed else Fore.RED
        print(f"{color}{result.name}: {'ok' if result.passed else 'MISMATCH'}{Style.RESET_ALL}", file=sys.stderr)
    status = ErrorHandler.OK if all(r.passed for r in results) else ErrorHandler.VERDICT_MISMATCH
    if len(results) == 1:
        return f"Scenario {results[0].name}", results[0].document, status
    return "Scenarios", {'results': [r.document for r in results]}, status


def cmd_corpus(args, caps, config):
    try:
        seed = args.seed if args.seed is not None else config.getint('corpus', 'seed', fallback=0)
        size = args.size if args.size is not None else config.getint('corpus', 'size', fallback=60)
        max_q = args.max_quantale or config.getint('corpus', 'max_quantale', fallback=4)
        max_x = args.max_points or config.getint('corpus', 'max_points', fallback=3)
    except ValueError:
        raise InputError("corpus settings must be integers", 'config [corpus]')
    corpus = build_corpus(seed, size, max_q, max_x, caps)
    results = run_sweeps(corpus, caps, sweeps=args.sweep, progress=not args.quiet)
    document = {
        'seed': seed,
        'size': size,
        'max_quantale': max_q,
        'max_points': max_x,
        'sweeps': [{'sweep': name, **tally} for name, tally in results.items()],
        'directed_complete_non_sober': directed_complete_non_sober(corpus, caps),
    }
    failed = any(tally['failed'] for tally in results.values())
    return "Corpus sweeps", document, ErrorHandler.VERDICT_MISMATCH if failed else ErrorHandler.OK


COMMANDS = {
    'validate-quantale': cmd_validate_quantale,
    'generate': cmd_generate,
    'closure': cmd_closure,
    'specialization': cmd_specialization,
    'alexandroff': cmd_alexandroff,
    'sobrify': cmd_sobrify,
    'check-sober': cmd_check_sober,
    'check-hausdorff': cmd_check_hausdorff,
    'lowen': cmd_lowen,
    'dualize': cmd_dualize,
    'fr-points': cmd_fr_points,
    'scenario': cmd_scenario,
    'corpus': cmd_corpus,
}


def print_verdict(document, status):
    """One coloured summary line on stderr."""
    verdict = document.get('verdict') or document.get('passed')
    if verdict is None:
        return
    ok = status == ErrorHandler.OK and verdict not in ('not_sober', 'not_stratified', False)
    color = Fore.GREEN if ok else Fore.YELLOW
    print(f"{color}verdict: {verdict}{Style.RESET_ALL}", file=sys.stderr)


def run(argv=None):
    """
    Parse arguments, run one analysis, write its reports.

    Returns:
        int: 0 success, 1 scenario or sweep mismatch, 2 input or validation error
    """
    args = build_parser().parse_args(argv)
    colorama_init()
    try:
        config = load_config(args.config)
        setup_logging(config, quiet=args.quiet)
        caps = Caps.from_config(config).with_overrides(
            enumeration=args.enum_cap, family=args.family_cap,
            uniqueness=args.uniqueness_cap, search=args.search_cap)
        logger.debug(f"Caps: {caps}")
        title, document, status = COMMANDS[args.command](args, caps, config)
        writer = ReportWriter()
        text = ReportWriter.render(title, document)
        if args.report:
            writer.write_json(document, args.report)
        if args.text_report:
            writer.write_text(text, args.text_report)
    except Exception as e:
        return ErrorHandler.exit_code_for(e)

    if not args.quiet:
        sys.stdout.write(text)
        print_verdict(document, status)
    return status


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
