#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Exact inference on probabilistic causal models by full enumeration.

All probabilities are Fractions. Counterfactuals with a conjunctive
antecedent follow the three steps: update the exogenous variables on the
evidence, intervene, then compute the consequent's probability.
"""
import logging
from collections import OrderedDict
from fractions import Fraction

from tqdm import tqdm

from counterfact.assignment import (
    Assignment,
    InconsistentAssignmentError,
    SemanticError
)
from counterfact.intervention import Intervention, apply_probabilistic
from counterfact.model import Cpt, ExogenousBlock, check_kind
from counterfact.truthmaker import UnsatisfiableAntecedentError

logger = logging.getLogger(__name__)


class Evidence(Assignment):
    """A partial assignment of observed values."""

    @classmethod
    def from_formula(cls, formula):
        """
        Read a conjunction of atoms as evidence.

        @raises NotConjunctiveError: if the formula is not a conjunction
        """
        return cls(Intervention.from_formula(formula))


class JointDistribution(object):
    """A distribution over every total assignment of a model."""

    def __init__(self, variables, entries):
        """
        Initialise a JointDistribution.

        @param variables: ordered variable names
        @param entries: mapping of total Assignment to probability
        """
        self.variables = tuple(variables)
        self.entries = OrderedDict(entries)

    def __iter__(self):
        """Iterate over (assignment, probability) pairs."""
        return iter(self.entries.items())

    def __len__(self):
        """Set length to the number of total assignments."""
        return len(self.entries)

    def __getitem__(self, assignment):
        """Return the probability of a total assignment."""
        return self.entries[Assignment(assignment)]

    def total(self):
        """Return the sum of all entries."""
        return sum(self.entries.values(), Fraction(0))

    def probability(self, formula):
        """Sum the entries whose assignment satisfies the formula."""
        return sum((prob for world, prob in self.entries.items()
                    if formula.evaluate(world)), Fraction(0))

    def probability_of(self, assignment):
        """Sum the entries extending a partial assignment."""
        return sum((prob for world, prob in self.entries.items()
                    if world.extends(assignment)), Fraction(0))

    def marginal(self, variable):
        """Return the marginal of one variable as value -> probability."""
        result = OrderedDict()
        for world, prob in self.entries.items():
            result[world[variable]] = result.get(
                world[variable], Fraction(0)) + prob
        return result

    def marginal_table(self, variables):
        """Return the joint marginal of several variables keyed by tuples."""
        result = OrderedDict()
        for world, prob in self.entries.items():
            key = tuple(world[var] for var in variables)
            result[key] = result.get(key, Fraction(0)) + prob
        return result

    def condition(self, assignment):
        """
        Condition on a partial assignment.

        @raises ZeroProbabilityEvidenceError: if it has probability zero
        """
        mass = self.probability_of(assignment)
        if not mass:
            raise ZeroProbabilityEvidenceError(assignment)
        return JointDistribution(self.variables, (
            (world, prob / mass if world.extends(assignment) else Fraction(0))
            for world, prob in self.entries.items()))


def joint(model, progress=False):
    """
    Compute the joint distribution of a model.

    Each entry is the product of the table rows selected by the assignment.

    @param model: ProbabilisticModel
    @param progress: show a progress bar over the enumerated assignments
    @return: JointDistribution
    """
    check_kind(model, 'probabilistic')
    model.graph.topological_order()  # raises on a cyclic graph
    entries = OrderedDict()
    for world in tqdm(model.graph.assignments(), total=model.graph.size(),
                      desc='joint', unit='world', disable=not progress):
        entries[world] = model.factor(world)
    return JointDistribution(model.variables, entries)


def prob(model, formula):
    """
    Return the probability of a formula.

    @raises UnknownVariableError: if the formula is not bound to the model
    """
    formula.check(model.graph)
    return joint(model).probability(formula)


def conditional_prob(model, formula, given):
    """
    Return the probability of a formula conditional on a partial assignment.

    @raises ZeroProbabilityEvidenceError: if the condition has probability 0
    """
    formula.check(model.graph)
    model.graph.check_assignment(given)
    return joint(model).condition(given).probability(formula)


def marginal(model, variable):
    """Return the marginal distribution of a variable."""
    model.graph.check_variable(variable)
    return joint(model).marginal(variable)


def update_evidence(model, evidence):
    """
    Update the exogenous variables on the evidence.

    The joint of the exogenous variables is replaced by its conditional on
    the evidence; the tables of the endogenous variables are unchanged. With
    several exogenous variables the posterior is kept as one block so that
    correlations induced by the evidence survive.

    @param model: ProbabilisticModel
    @param evidence: Evidence or mapping
    @raises ZeroProbabilityEvidenceError: if the evidence has probability 0
    @return: ProbabilisticModel
    """
    evidence = Evidence(evidence or {})
    if not evidence:
        return model
    model.graph.check_assignment(evidence)
    posterior = joint(model).condition(evidence)
    exogenous = model.graph.exogenous
    table = posterior.marginal_table(exogenous)
    cpts = dict(model.cpts)
    for name in exogenous:
        cpts[name] = Cpt.marginal(name, posterior.marginal(name))
    block = None
    if len(exogenous) > 1:
        block = ExogenousBlock(exogenous, table)
    logger.debug('Updated %s on %s: %s', ', '.join(exogenous), evidence,
                 dict(table))
    return model.replace(cpts=cpts, exogenous_block=block)


def do_prob(model, intervention, formula):
    """
    Return the probability of a formula after an intervention.

    @param intervention: Intervention or mapping
    """
    formula.check(model.graph)
    return prob(apply_probabilistic(model, intervention), formula)


def pearl_counterfactual(model, antecedent, consequent, evidence=None):
    """
    Return p(antecedent => consequent | evidence) for a conjunctive antecedent.

    @param antecedent: Formula, a conjunction of atoms
    @param consequent: Formula
    @param evidence: Evidence or mapping
    @raises NotConjunctiveError: if the antecedent is not a conjunction
    @raises UnsatisfiableAntecedentError: for e.g. X=0 & X=1
    @raises ZeroProbabilityEvidenceError: if the evidence has probability 0
    """
    try:
        intervention = Intervention.from_formula(antecedent)
    except InconsistentAssignmentError:
        raise UnsatisfiableAntecedentError(antecedent)
    antecedent.check(model.graph)
    return do_prob(update_evidence(model, evidence), intervention, consequent)


class ZeroProbabilityEvidenceError(SemanticError):
    """Error raised when conditioning on an impossible observation."""

    def __init__(self, evidence):
        """Initialise a ZeroProbabilityEvidenceError."""
        self.evidence = evidence
        msg = ('The evidence "{0}" has probability zero, conditionalization '
               'is undefined'.format(evidence))
        super().__init__(msg)
