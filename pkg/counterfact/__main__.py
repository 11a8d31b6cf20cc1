#!/usr/bin/python
# -*- coding: utf-8 -*-
"""Entry point for evaluating counterfactuals on causal model files."""
import argparse
import logging
import os
import sys
import warnings

from counterfact.assignment import SemanticError
from counterfact.counterfactual import (
    DEPENDENCE_MODES,
    INVERSE_DISTANCE,
    PROBABILISTIC,
    STRUCTURAL,
    UNIFORM,
    WEIGHTINGS,
    ConvexityViolationWarning,
    ZeroDistanceWarning,
    briggs_truth,
    cf_probability,
    check_convexity,
    consequent_bounds,
    dependencies,
    distance
)
from counterfact.formula import (
    FormulaSyntaxError,
    NotConjunctiveError,
    parse_formula,
    parse_query
)
from counterfact.imaging import (
    ALL_TRUTHMAKERS,
    ALL_WORLDS,
    BAYES,
    SINGLETONS,
    TRANSFERS,
    SelectionFileError,
    SelectionFunction,
    imaging_cf_probability,
    worlds_of
)
from counterfact.inference import (
    Evidence,
    conditional_prob,
    prob,
    update_evidence
)
from counterfact.intervention import Intervention, apply
from counterfact.model import check_kind, require_valid, validate_model
from counterfact.model_file import ModelFile, ModelFileError
from counterfact.report import (
    DEFAULT_DIGITS,
    Report,
    add_bounds,
    counterfactual_report
)
from counterfact.truthmaker import falsemakers, truthmakers

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
GENERATED = {
    'generated:singletons': SINGLETONS,
    'generated:all': ALL_TRUTHMAKERS,
    'generated:worlds': ALL_WORLDS,
}

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SEMANTIC = 2

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser raising UsageError instead of exiting."""

    def error(self, message):
        """Raise a UsageError with the message."""
        raise UsageError('{0}: {1}'.format(self.prog, message))


def resolve_path(path):
    """Fall back on the bundled data files for paths that do not exist."""
    if not os.path.exists(path):
        bundled = os.path.join(DATA_DIR, path)
        if os.path.exists(bundled):
            return bundled
    return path


def load_model(path):
    """Parse a model file, looking among the bundled data files too."""
    return ModelFile.from_file(resolve_path(path))


def conjunction_arg(text):
    """Read a conjunction of atoms given on the command line."""
    return Evidence.from_formula(parse_formula(text))


def pick_evidence(args, model_file):
    """Prefer --evidence over the evidence declared in the model file."""
    if args.evidence is not None:
        return conjunction_arg(args.evidence)
    return model_file.evidence


def cmd_validate(args, model_file):
    """Validate a model file."""
    found = validate_model(model_file.model)
    report = Report('validate: {0}'.format(model_file.name), args.digits)
    report.add_line(str(found))
    report.add_field('ok', found.ok)
    report.add_field('violations', len(found.violations))
    return report, EXIT_OK if found.ok else EXIT_SEMANTIC


def cmd_prob(args, model_file):
    """Compute the probability of a formula."""
    model = model_file.model
    check_kind(model, 'probabilistic')
    if not args.prior:
        model = update_evidence(model, model_file.evidence)
    formula = parse_formula(args.formula)
    report = Report('prob: {0}'.format(formula), args.digits)
    report.add_field('formula', formula)
    if args.evidence:
        given = conjunction_arg(args.evidence)
        report.add_line('given: {0}'.format(given))
        report.add_field('given', given)
        value = conditional_prob(model, formula, given)
    else:
        value = prob(model, formula)
    report.add_value('value', value)
    return report, EXIT_OK


def cmd_truth(args, model_file):
    """Evaluate a counterfactual on a deterministic model."""
    query = parse_query(args.query)
    value = briggs_truth(model_file.model, query)
    report = Report('truth: {0}'.format(query), args.digits)
    report.add_line('true' if value else 'false')
    report.add_field('query', query)
    report.add_field('value', value)
    return report, EXIT_OK


def cmd_counterfactual(args, model_file):
    """Compute the probability of a counterfactual."""
    query = parse_query(args.query)
    evidence = pick_evidence(args, model_file)
    result = cf_probability(model_file.model, query, evidence,
                            args.weighting, args.dependence)
    check_convexity(result.value, result.bounds, str(query))
    return counterfactual_report(result, evidence, args.digits), EXIT_OK


def cmd_truthmakers(args, model_file):
    """List the exact truthmakers, or falsemakers, of a formula."""
    formula = parse_formula(args.formula)
    enumerate_members = falsemakers if args.falsemakers else truthmakers
    members = enumerate_members(formula, model_file.model)
    kind = 'falsemakers' if args.falsemakers else 'truthmakers'
    report = Report('{0}: {1}'.format(kind, formula), args.digits)
    report.add_field('formula', formula)
    report.add_field('count', len(members))
    for i, member in enumerate(members.ordered(), 1):
        report.add_line('  {0}'.format(member))
        report.add_field('member.{0}'.format(i), member)
    if not members:
        report.add_line('  none')
    return report, EXIT_OK


def cmd_deps(args, model_file):
    """List the counterfactual dependencies of a (sub)model."""
    model = model_file.model
    mode = args.dependence
    if model.kind == 'deterministic':
        mode = STRUCTURAL
    intervention = Intervention(conjunction_arg(args.do) if args.do else {})
    model = apply(model, intervention)
    relation = dependencies(model, mode)
    title = 'deps: {0}'.format(intervention) if intervention else 'deps'
    report = Report(title, args.digits)
    report.add_line('dependence: {0}'.format(mode))
    for cause, effect in relation:
        report.add_line('  {0} -> {1}'.format(cause, effect))
    report.add_field('count', len(relation))
    report.add_field('pairs', relation)
    return report, EXIT_OK


def cmd_distance(args, model_file):
    """Compute the distance from a model to one of its submodels."""
    model = model_file.model
    check_kind(model, 'probabilistic')
    intervention = Intervention(conjunction_arg(args.do))
    value = distance(model, apply(model, intervention), args.dependence)
    report = Report('distance: {0}'.format(intervention), args.digits)
    report.add_value('distance', value)
    return report, EXIT_OK


def load_selection(spec, model):
    """Resolve --selection into a SelectionFunction or a generation mode."""
    if spec in GENERATED:
        return GENERATED[spec]
    return SelectionFunction.from_file(resolve_path(spec),
                                       worlds_of(model.graph))


def cmd_imaging(args, model_file):
    """Compute the probability of a counterfactual by imaging."""
    model = model_file.model
    query = parse_query(args.query)
    evidence = pick_evidence(args, model_file)
    value = imaging_cf_probability(
        model, query, evidence, load_selection(args.selection, model),
        args.transfer, args.progress)
    bounds = consequent_bounds(model, query, evidence)
    report = Report('imaging: {0}'.format(query), args.digits)
    report.add_field('query', query)
    report.add_line('evidence: {0}'.format(evidence or 'none'))
    report.add_line('selection: {0}, transfer: {1}'.format(
        args.selection, args.transfer))
    report.add_field('selection', args.selection)
    report.add_field('transfer', args.transfer)
    add_bounds(report, bounds)
    report.add_value('value', value)
    report.add_field('convex', check_convexity(
        value, bounds, 'imaging {0}'.format(args.selection)))
    return report, EXIT_OK


def cmd_compare(args, model_file):
    """Compare weighted truthmaker probabilities with imaging."""
    model = model_file.model
    query = parse_query(args.query)
    evidence = pick_evidence(args, model_file)
    report = Report('compare: {0}'.format(query), args.digits)
    report.add_field('query', query)
    report.add_line('evidence: {0}'.format(evidence or 'none'))
    bounds = None
    for strategy in (INVERSE_DISTANCE, UNIFORM):
        result = cf_probability(model, query, evidence, strategy,
                                args.dependence)
        bounds = result.bounds
        key = 'cms.{0}'.format(strategy)
        report.add_value(key, result.value)
        report.add_field(key + '.convex', check_convexity(
            result.value, bounds, key))
    for spec in ('generated:singletons', 'generated:all'):
        value = imaging_cf_probability(model, query, evidence,
                                       GENERATED[spec], BAYES, args.progress)
        key = 'imaging.{0}.{1}'.format(BAYES, spec)
        report.add_value(key, value)
        report.add_field(key + '.convex', check_convexity(value, bounds, key))
    add_bounds(report, bounds)
    return report, EXIT_OK


def handle_args(argv=None):
    """
    Parse and handle command line arguments.

    @param argv: arguments to parse. Defaults to sys.argv[1:].
    @return: argparse.Namespace
    """
    common = ArgumentParser(add_help=False)
    common.add_argument('model', metavar='MODEL',
                        help='path to a .cm model file, or the name of a '
                             'bundled one (e.g. execution.cm).')
    common.add_argument('--digits', type=int, default=DEFAULT_DIGITS,
                        metavar='N',
                        help=('number of decimals in the report. Defaults '
                              'to {}.'.format(DEFAULT_DIGITS)))
    common.add_argument('--progress', action='store_true',
                        help='show progress bars over enumerated worlds.')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='log distances, weights and transfers.')

    def dependence(sub):
        sub.add_argument('--dependence', choices=DEPENDENCE_MODES,
                         default=PROBABILISTIC,
                         help=('how counterfactual dependence is assessed. '
                               'Defaults to {}.'.format(PROBABILISTIC)))

    def evidence(sub):
        sub.add_argument('--evidence', metavar='CONJ',
                         help=('observed values, e.g. "D=1". Defaults to the '
                               'evidence declared in the model file.'))

    parser = ArgumentParser(
        prog='counterfact',
        description='Evaluate counterfactuals on discrete causal models.')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    sub = subparsers.add_parser('validate', parents=[common],
                                help='check a model file.')
    sub.set_defaults(func=cmd_validate)

    sub = subparsers.add_parser('prob', parents=[common],
                                help='probability of a formula.')
    sub.add_argument('-f', '--formula', required=True)
    sub.add_argument('--evidence', metavar='CONJ',
                     help='condition on these values.')
    sub.add_argument('--prior', action='store_true',
                     help='ignore the evidence declared in the model file.')
    sub.set_defaults(func=cmd_prob)

    sub = subparsers.add_parser('truth', parents=[common],
                                help='truth of a counterfactual in a '
                                     'deterministic model.')
    sub.add_argument('-q', '--query', required=True)
    sub.set_defaults(func=cmd_truth)

    sub = subparsers.add_parser('counterfactual', parents=[common],
                                help='probability of a counterfactual.')
    sub.add_argument('-q', '--query', required=True)
    evidence(sub)
    sub.add_argument('--weighting', choices=WEIGHTINGS,
                     default=INVERSE_DISTANCE,
                     help=('how truthmaking submodels are weighed. Defaults '
                           'to {}.'.format(INVERSE_DISTANCE)))
    dependence(sub)
    sub.set_defaults(func=cmd_counterfactual)

    sub = subparsers.add_parser('truthmakers', parents=[common],
                                help='exact truthmakers of a formula.')
    sub.add_argument('-f', '--formula', required=True)
    sub.add_argument('--falsemakers', action='store_true',
                     help='list the falsemakers instead.')
    sub.set_defaults(func=cmd_truthmakers)

    sub = subparsers.add_parser('deps', parents=[common],
                                help='counterfactual dependencies.')
    sub.add_argument('--do', metavar='CONJ',
                     help='intervene before listing the dependencies.')
    dependence(sub)
    sub.set_defaults(func=cmd_deps)

    sub = subparsers.add_parser('distance', parents=[common],
                                help='distance to a submodel.')
    sub.add_argument('--do', metavar='CONJ', required=True)
    dependence(sub)
    sub.set_defaults(func=cmd_distance)

    sub = subparsers.add_parser('imaging', parents=[common],
                                help='probability of a counterfactual by '
                                     'imaging.')
    sub.add_argument('-q', '--query', required=True)
    evidence(sub)
    sub.add_argument('--selection', required=True, metavar='SELECTION',
                     help=('a selection fixture file, or one of: '
                           '{}.'.format(', '.join(GENERATED))))
    sub.add_argument('--transfer', choices=TRANSFERS, default=BAYES,
                     help='Defaults to {}.'.format(BAYES))
    sub.set_defaults(func=cmd_imaging)

    sub = subparsers.add_parser('compare', parents=[common],
                                help='weighted truthmakers against imaging.')
    sub.add_argument('-q', '--query', required=True)
    evidence(sub)
    dependence(sub)
    sub.set_defaults(func=cmd_compare)

    return parser.parse_args(argv)


def main(argv=None):
    """
    Run main process.

    @param argv: arguments to parse. Defaults to sys.argv[1:].
    @return: exit code
    """
    try:
        args = handle_args(argv)
    except UsageError as error:
        print('error: {0}'.format(error), file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(name)s: %(message)s')

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        try:
            model_file = load_model(args.model)
            if args.func is not cmd_validate:
                require_valid(model_file.model)
            report, code = args.func(args, model_file)
        except (ModelFileError, SelectionFileError, FormulaSyntaxError,
                NotConjunctiveError, OSError) as error:
            print('error: {0}'.format(error), file=sys.stderr)
            return EXIT_USAGE
        except SemanticError as error:
            print('error: {0}'.format(error), file=sys.stderr)
            return EXIT_SEMANTIC

    for warning in caught:
        if issubclass(warning.category, (ConvexityViolationWarning,
                                         ZeroDistanceWarning)):
            report.add_warning(warning.message)
        else:
            logger.warning(warning.message)
    print(report.render(), end='')
    return code


class UsageError(Exception):
    """Error raised on invalid command line arguments."""


if __name__ == "__main__":
    sys.exit(main())
