#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Imaging on possible worlds, the baseline for counterfactual probability.

Possible worlds are the total assignments of a model, numbered w1, w2, ...
with every range read from its last value to its first. A selection
function maps each world to its closest worlds satisfying an antecedent;
imaging moves the mass of every world falsifying the antecedent onto the
worlds selected for it:

    lewis   all of it onto the single selected world
    bayes   split in proportion to the prior of the selected worlds
    equal   split evenly over the selected worlds

Selection functions are either read from a fixture file or generated from
the causal structure: a selected world agrees with the original one on all
variables which are neither intervened on by a truthmaker of the
antecedent nor descendants of these, takes the truthmaker's values and
lets the descendants range freely.

Fixture format, one line per world falsifying the antecedent:

    # comment
    antecedent X=0 | Y=0
    w1 -> w3, w4, w7, w8

Worlds without a line select themselves.
"""
import logging
import os
import re
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction

from tqdm import tqdm

from counterfact.assignment import (
    Assignment,
    InconsistentAssignmentError,
    SemanticError
)
from counterfact.formula import (
    CounterfactualQuery,
    FormulaSyntaxError,
    parse_formula
)
from counterfact.inference import (
    ZeroProbabilityEvidenceError,
    pearl_counterfactual,
    update_evidence
)
from counterfact.intervention import Intervention
from counterfact.model import check_kind
from counterfact.truthmaker import (
    UnsatisfiableAntecedentError,
    antecedent_truthmakers
)

logger = logging.getLogger(__name__)

LEWIS = 'lewis'
BAYES = 'bayes'
EQUAL = 'equal'
TRANSFERS = (LEWIS, BAYES, EQUAL)

SINGLETONS = 'singletons'
ALL_TRUTHMAKERS = 'all-truthmakers'
ALL_WORLDS = 'all-worlds'
SELECTION_MODES = (SINGLETONS, ALL_TRUTHMAKERS, ALL_WORLDS)

WORLD_PATTERN = re.compile(r'^w(\d+)$')


@dataclass(frozen=True)
class World(object):
    """A total assignment of a model's variables with its position."""

    index: int
    assignment: Assignment

    @property
    def label(self):
        """Return the label of the world, e.g. 'w1'."""
        return 'w{0}'.format(self.index)

    def satisfies(self, formula):
        """Check whether a formula is true at the world."""
        return formula.evaluate(self.assignment)

    def __str__(self):
        """Represent the World as 'w1 (C=1, X=1)'."""
        return '{0} ({1})'.format(self.label, self.assignment)


def worlds_of(graph):
    """Number the total assignments of a graph w1, w2, ..."""
    return tuple(World(i, assignment) for i, assignment in enumerate(
        graph.assignments(descending=True), 1))


class WorldDistribution(object):
    """A probability distribution over the possible worlds of a model."""

    def __init__(self, worlds, weights):
        """
        Initialise a WorldDistribution.

        @param worlds: sequence of World
        @param weights: mapping of World to probability
        @raises ValueError: if the weights do not sum to exactly 1
        """
        self.worlds = tuple(worlds)
        self.weights = OrderedDict(
            (world, Fraction(weights.get(world, 0))) for world in self.worlds)
        if sum(self.weights.values()) != 1:
            raise ValueError('World weights must sum to 1, got {0}'.format(
                sum(self.weights.values())))

    def __iter__(self):
        """Iterate over (world, weight) pairs."""
        return iter(self.weights.items())

    def __len__(self):
        """Set length to the number of worlds."""
        return len(self.worlds)

    def __getitem__(self, world):
        """Return the weight of a World, or of a world label."""
        if isinstance(world, str):
            world = self.world(world)
        return self.weights[world]

    def world(self, label):
        """Look up a world by its label."""
        match = WORLD_PATTERN.match(label)
        if not match or not 1 <= int(match.group(1)) <= len(self.worlds):
            raise KeyError(label)
        return self.worlds[int(match.group(1)) - 1]

    def probability(self, formula):
        """Sum the weights of the worlds satisfying a formula."""
        return sum((weight for world, weight in self.weights.items()
                    if world.satisfies(formula)), Fraction(0))


def enumerate_worlds(model, progress=False):
    """
    List the possible worlds of a model with their prior weights.

    @param model: ProbabilisticModel
    @param progress: show a progress bar over the worlds
    @return: WorldDistribution
    """
    check_kind(model, 'probabilistic')
    model.graph.topological_order()  # raises on a cyclic graph
    worlds = worlds_of(model.graph)
    weights = OrderedDict(
        (world, model.factor(world.assignment))
        for world in tqdm(worlds, desc='worlds', unit='world',
                          disable=not progress))
    return WorldDistribution(worlds, weights)


class SelectionFunction(object):
    """The closest antecedent worlds of every possible world."""

    CMT_SYMBOL = '#'
    DELIMITER = '->'
    ANTECEDENT = 'antecedent'

    def __init__(self, antecedent, mapping, name=''):
        """
        Initialise a SelectionFunction.

        @param antecedent: Formula, or None for a fixture not declaring one
        @param mapping: mapping of World to an iterable of Worlds. Worlds
            without an entry select themselves.
        @param name: name of the file the function was read from
        """
        self.antecedent = antecedent
        self.mapping = OrderedDict(
            (world, frozenset(selected)) for world, selected in mapping.items())
        self.name = name

    def selected(self, world):
        """Return the worlds selected for a world, ordered by index."""
        return sorted(self.mapping.get(world, {world}),
                      key=lambda w: w.index)

    def is_functional(self):
        """Check whether every world selects exactly one world."""
        return all(len(selected) == 1 for selected in self.mapping.values())

    def check(self, worlds, antecedent=None):
        """
        Check the function against the worlds of a model.

        Every selected world must satisfy the antecedent, and each world
        satisfying it must select itself alone.

        @param antecedent: Formula used when the function declares none
        @raises SelectionError: on the first violation
        """
        antecedent = self.antecedent or antecedent
        worlds = set(worlds)
        for world, selected in self.mapping.items():
            if world not in worlds or not selected <= worlds:
                raise SelectionError(world, 'selects worlds of another model')
            if not selected:
                raise SelectionError(world, 'selects no world')
            if world.satisfies(antecedent) and selected != {world}:
                raise SelectionError(
                    world, 'satisfies the antecedent but does not select '
                           'itself alone')
            for other in selected:
                if not other.satisfies(antecedent):
                    raise SelectionError(
                        world, 'selects {0} which falsifies the '
                               'antecedent'.format(other.label))
        for world in worlds - set(self.mapping):
            if not world.satisfies(antecedent):
                raise SelectionError(world, 'has no selected world')

    @staticmethod
    def from_file(file_path, worlds):
        """
        Read a SelectionFunction from a fixture file.

        @param worlds: sequence of World the labels refer to
        """
        with open(file_path, encoding='utf-8') as f:
            return SelectionFunction.from_stream(
                f.read(), worlds, file_name=os.path.basename(f.name))

    @staticmethod
    def from_stream(stream, worlds, file_name=None):
        """
        Read a SelectionFunction from the text of a fixture.

        @param worlds: sequence of World the labels refer to
        @raises SelectionFileError: on a malformed line or an unknown label
        """
        by_label = {world.label: world for world in worlds}
        antecedent = None
        mapping = OrderedDict()
        for line_no, line in enumerate(stream.split('\n'), 1):
            line = line.strip()
            if not line or line.startswith(SelectionFunction.CMT_SYMBOL):
                continue
            if line.startswith(SelectionFunction.ANTECEDENT + ' '):
                try:
                    antecedent = parse_formula(
                        line[len(SelectionFunction.ANTECEDENT):])
                except FormulaSyntaxError as error:
                    raise SelectionFileError(line_no, str(error))
                continue
            source, sep, targets = line.partition(SelectionFunction.DELIMITER)
            if not sep:
                raise SelectionFileError(
                    line_no, 'expected "w<i> -> w<j>, w<k>, ..."')
            labels = [lab for lab in re.split(r'[,\s]+', targets) if lab]
            for label in [source.strip()] + labels:
                if label not in by_label:
                    raise SelectionFileError(
                        line_no, 'unknown world "{0}"'.format(label))
            world = by_label[source.strip()]
            if world in mapping:
                raise SelectionFileError(
                    line_no, 'second line for {0}'.format(world.label))
            mapping[world] = [by_label[label] for label in labels]
        return SelectionFunction(antecedent, mapping, file_name or '')

    def dumps(self):
        """Render the function in the fixture format."""
        lines = []
        if self.antecedent is not None:
            lines.append('{0} {1}'.format(self.ANTECEDENT, self.antecedent))
        for world, selected in self.mapping.items():
            if selected == {world}:
                continue
            lines.append('{0} {1} {2}'.format(
                world.label, self.DELIMITER,
                ', '.join(w.label for w in self.selected(world))))
        return '\n'.join(lines) + '\n'


def _equal_history(graph, world, intervention, candidates):
    """Select the candidates sharing the causal history of world."""
    intervened = intervention.variables
    fixed = set(graph.names) - intervened - graph.descendants_of(intervened)
    return {
        other for other in candidates
        if other.assignment.extends(intervention)
        and all(other.assignment[var] == world.assignment[var]
                for var in fixed)}


def generate_selection(model, antecedent, mode=SINGLETONS, worlds=None):
    """
    Generate a selection function from the model's causal structure.

    singletons: use the truthmakers of the antecedent assigning the fewest
        variables.
    all-truthmakers: use every truthmaker.
    all-worlds: select every antecedent world for every other world.

    @param model: ProbabilisticModel or DeterministicModel
    @param antecedent: Formula
    @param worlds: the numbered worlds of the model, if already built
    @raises UnsatisfiableAntecedentError: if the antecedent has no truthmaker
    @return: SelectionFunction
    """
    if mode not in SELECTION_MODES:
        raise ValueError('Unknown selection mode "{0}", expected one of: '
                         '{1}'.format(mode, ', '.join(SELECTION_MODES)))
    graph = model.graph
    members = antecedent_truthmakers(antecedent, model)
    chosen = members.minimal() if mode == SINGLETONS else members.ordered()
    worlds = worlds or worlds_of(graph)
    candidates = [world for world in worlds if world.satisfies(antecedent)]

    mapping = OrderedDict()
    for world in worlds:
        if world.satisfies(antecedent):
            mapping[world] = {world}
        elif mode == ALL_WORLDS:
            mapping[world] = set(candidates)
        else:
            mapping[world] = set()
            for intervention in chosen:
                mapping[world] |= _equal_history(
                    graph, world, intervention, candidates)
    return SelectionFunction(antecedent, mapping)


def image(dist, selection, transfer=BAYES):
    """
    Image a distribution with a selection function.

    Under bayes transfer a world whose selected worlds all have prior zero
    splits its mass evenly among them.

    @param dist: WorldDistribution
    @param selection: SelectionFunction
    @raises NonUniqueSelectionError: for lewis transfer with a world
        selecting several worlds
    @return: WorldDistribution
    """
    if transfer not in TRANSFERS:
        raise ValueError('Unknown transfer "{0}", expected one of: '
                         '{1}'.format(transfer, ', '.join(TRANSFERS)))
    result = OrderedDict((world, Fraction(0)) for world in dist.worlds)
    for world, mass in dist:
        targets = selection.selected(world)
        if transfer == LEWIS and len(targets) != 1:
            raise NonUniqueSelectionError(world, targets)
        if targets == [world]:
            result[world] += mass
            continue
        if not mass:
            continue
        prior = sum((dist[target] for target in targets), Fraction(0))
        for target in targets:
            if transfer == BAYES and prior:
                share = dist[target] / prior
            else:
                share = Fraction(1, len(targets))
            result[target] += mass * share
        logger.debug('%s: moved %s onto %s', world.label, mass,
                     ', '.join(target.label for target in targets))
    return WorldDistribution(dist.worlds, result)


def conditionalize(dist, formula):
    """
    Condition a distribution on a formula.

    @raises ZeroProbabilityEvidenceError: if the formula has probability 0
    """
    mass = dist.probability(formula)
    if not mass:
        raise ZeroProbabilityEvidenceError(formula)
    return WorldDistribution(dist.worlds, OrderedDict(
        (world, weight / mass if world.satisfies(formula) else Fraction(0))
        for world, weight in dist))


def imaging_cf_probability(model, query, evidence=None, selection=SINGLETONS,
                           transfer=BAYES, progress=False):
    """
    Compute the probability of a counterfactual by imaging.

    The worlds are weighted by the model updated on the evidence, imaged on
    the antecedent, and the weights of the worlds satisfying the consequent
    are summed.

    @param model: ProbabilisticModel
    @param query: CounterfactualQuery
    @param evidence: Evidence or mapping
    @param selection: SelectionFunction, or a mode of generate_selection
    @return: Fraction
    """
    check_kind(model, 'probabilistic')
    query.check(model.graph)
    if not isinstance(selection, SelectionFunction):
        selection = generate_selection(model, query.antecedent, selection)
    elif (selection.antecedent is not None
          and selection.antecedent != query.antecedent):
        raise SelectionError(None, 'was made for "{0}", not "{1}"'.format(
            selection.antecedent, query.antecedent))
    dist = enumerate_worlds(update_evidence(model, evidence), progress)
    selection.check(dist.worlds, query.antecedent)
    return image(dist, selection, transfer).probability(query.consequent)


@dataclass(frozen=True)
class EquivalenceReport(object):
    """Bayesianized imaging against intervention for one query."""

    imaging: Fraction
    intervention: Fraction

    @property
    def equal(self):
        """Whether both values agree exactly."""
        return self.imaging == self.intervention


def pearl_equivalence_check(model, antecedent, consequent, evidence=None):
    """
    Compare imaging with intervention for a conjunctive antecedent.

    The imaging side uses bayes transfer and the generated selection.

    @param antecedent: Formula, a conjunction of atoms
    @raises NotConjunctiveError: if the antecedent is not a conjunction
    @return: EquivalenceReport
    """
    try:
        Intervention.from_formula(antecedent)
    except InconsistentAssignmentError:
        raise UnsatisfiableAntecedentError(antecedent)
    query = CounterfactualQuery(antecedent, consequent)
    return EquivalenceReport(
        imaging_cf_probability(model, query, evidence, SINGLETONS, BAYES),
        pearl_counterfactual(model, antecedent, consequent, evidence))


class SelectionError(SemanticError):
    """Error raised when a selection function breaks its invariants."""

    def __init__(self, world, reason):
        """
        Initialise a SelectionError.

        @param world: the offending World, or None for the whole function
        """
        self.world = world
        msg = 'Selection for {0} {1}'.format(
            world.label if world else 'the query', reason)
        super().__init__(msg)


class NonUniqueSelectionError(SelectionError):
    """Error raised when lewis imaging meets several selected worlds."""

    def __init__(self, world, selected):
        """Initialise a NonUniqueSelectionError."""
        super().__init__(world, 'is not unique ({0}), use bayes or equal '
                                'transfer'.format(
                                    ', '.join(w.label for w in selected)))


class SelectionFileError(Exception):
    """Error raised when a selection fixture cannot be parsed."""

    def __init__(self, line_no, reason):
        """Initialise a SelectionFileError."""
        self.line_no = line_no
        msg = 'Line {0}: {1}'.format(line_no, reason)
        super().__init__(msg)
