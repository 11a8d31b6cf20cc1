#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Probabilities and truth values of counterfactuals with Boolean antecedents.

The antecedent of a counterfactual is made true by a set of submodels, its
truthmakers. The probability of the counterfactual is a weighted average of
the consequent's probability in these submodels, with the weight of a
submodel inversely proportional to its distance from the original model.
The distance is the share of the n(n-1) possible counterfactual
dependencies on which the two models disagree.

A deterministic counterfactual is true iff its consequent holds in every
submodel truthmaking its antecedent.
"""
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction

from counterfact.assignment import SemanticError
from counterfact.formula import eval_static
from counterfact.inference import do_prob, joint, update_evidence
from counterfact.intervention import (
    Intervention,
    apply_deterministic,
    apply_probabilistic
)
from counterfact.model import check_kind
from counterfact.truthmaker import (
    UnsatisfiableAntecedentError,
    antecedent_truthmakers
)

logger = logging.getLogger(__name__)

PROBABILISTIC = 'probabilistic'
STRUCTURAL = 'structural'
DEPENDENCE_MODES = (PROBABILISTIC, STRUCTURAL)

INVERSE_DISTANCE = 'inverse-distance'
UNIFORM = 'uniform'
NEAREST_ONLY = 'nearest-only'
WEIGHTINGS = (INVERSE_DISTANCE, UNIFORM, NEAREST_ONLY)


class DependencyRelation(object):
    """The ordered pairs (cause, effect) of counterfactual dependence."""

    def __init__(self, pairs, variables):
        """
        Initialise a DependencyRelation.

        @param pairs: iterable of (cause, effect) variable names
        @param variables: all variable names of the model
        """
        self.pairs = frozenset(pairs)
        self.variables = tuple(variables)

    @property
    def universe_size(self):
        """Return the number of possible dependencies, n(n-1)."""
        n = len(self.variables)
        return n * (n - 1)

    def __len__(self):
        """Set length to the number of dependencies."""
        return len(self.pairs)

    def __contains__(self, pair):
        """Check if effect depends on cause."""
        return tuple(pair) in self.pairs

    def __iter__(self):
        """Iterate over the pairs in declaration order."""
        position = {name: i for i, name in enumerate(self.variables)}
        return iter(sorted(
            self.pairs, key=lambda p: (position[p[0]], position[p[1]])))

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.pairs == other.pairs
                    and set(self.variables) == set(other.variables))
        return NotImplemented

    def disagreement(self, other):
        """Return the pairs found in exactly one of the two relations."""
        return self.pairs ^ other.pairs

    def __str__(self):
        """Represent the relation as 'C->X, C->Y'."""
        return ', '.join('{0}->{1}'.format(*pair) for pair in self)


def _check_mode(mode):
    if mode not in DEPENDENCE_MODES:
        raise ValueError('Unknown dependence mode "{0}", expected one of: '
                         '{1}'.format(mode, ', '.join(DEPENDENCE_MODES)))


def dependencies(model, mode=PROBABILISTIC):
    """
    Find every pair of variables where the second depends on the first.

    In probabilistic mode V2 depends on V1 iff some intervention do(V1=v)
    changes the marginal distribution of V2. In structural mode V2 depends
    on V1 iff V2 is a descendant of V1 in the model's graph.

    @param model: ProbabilisticModel, possibly a submodel
    @return: DependencyRelation
    """
    _check_mode(mode)
    graph = model.graph
    if mode == STRUCTURAL:
        return DependencyRelation(
            ((cause, effect) for cause in graph.names
             for effect in graph.descendants(cause)),
            graph.names)

    baseline = joint(model)
    marginals = {name: dict(baseline.marginal(name)) for name in graph.names}
    pairs = set()
    for cause in graph.names:
        for value in graph.range(cause):
            after = joint(apply_probabilistic(model, {cause: value}))
            for effect in graph.names:
                if effect == cause or (cause, effect) in pairs:
                    continue
                if dict(after.marginal(effect)) != marginals[effect]:
                    pairs.add((cause, effect))
    return DependencyRelation(pairs, graph.names)


def depends(model, cause, effect, mode=PROBABILISTIC):
    """Check whether effect counterfactually depends on cause."""
    model.graph.check_variable(cause)
    model.graph.check_variable(effect)
    return (cause, effect) in dependencies(model, mode)


def distance(model, submodel, mode=PROBABILISTIC, reference=None):
    """
    Return the counterfactual distance between two models.

    The distance is the number of dependencies present in exactly one of the
    models, divided by n(n-1).

    @param reference: the DependencyRelation of model, if already computed
    @raises VariableMismatchError: if the variable sets differ
    @return: Fraction in [0, 1]
    """
    if set(model.variables) != set(submodel.variables):
        raise VariableMismatchError(model.variables, submodel.variables)
    reference = reference or dependencies(model, mode)
    if not reference.universe_size:
        return Fraction(0)
    other = dependencies(submodel, mode)
    return Fraction(len(reference.disagreement(other)),
                    reference.universe_size)


@dataclass(frozen=True)
class WeightedSubmodel(object):
    """A truthmaking intervention with its distance and weight."""

    intervention: Intervention
    distance: Fraction
    weight: Fraction


class WeightedSubmodels(list):
    """The weighted truthmakers of an antecedent."""

    def __init__(self, items=(), zero_distance_rule=False):
        """
        Initialise WeightedSubmodels.

        @param items: iterable of WeightedSubmodel
        @param zero_distance_rule: whether zero-distance members took all
            of the weight
        """
        super().__init__(items)
        self.zero_distance_rule = zero_distance_rule

    def total(self):
        """Return the sum of the weights."""
        return sum((item.weight for item in self), Fraction(0))


def weights(model, members, strategy=INVERSE_DISTANCE, mode=PROBABILISTIC):
    """
    Weigh the truthmaking submodels of an antecedent.

    inverse-distance: weight proportional to 1/d; if some members lie at
        distance zero they share the whole weight equally.
    uniform: the straight average.
    nearest-only: the members at minimal distance share the whole weight.

    @param model: ProbabilisticModel, before any evidence update
    @param members: TruthmakerSet
    @raises UnsatisfiableAntecedentError: if members is empty
    @return: WeightedSubmodels
    """
    if strategy not in WEIGHTINGS:
        raise ValueError('Unknown weighting "{0}", expected one of: '
                         '{1}'.format(strategy, ', '.join(WEIGHTINGS)))
    if not members:
        raise UnsatisfiableAntecedentError(getattr(members, 'formula', None))
    reference = dependencies(model, mode)
    ordered = sorted(members, key=Intervention.sort_key)
    distances = [
        distance(model, apply_probabilistic(model, member), mode, reference)
        for member in ordered]

    zero_rule = False
    if strategy == UNIFORM:
        raw = [Fraction(1)] * len(ordered)
    elif strategy == NEAREST_ONLY:
        least = min(distances)
        raw = [Fraction(int(d == least)) for d in distances]
    elif any(d == 0 for d in distances):
        zero_rule = True
        raw = [Fraction(int(d == 0)) for d in distances]
        warnings.warn(ZeroDistanceWarning(
            [member for member, d in zip(ordered, distances) if d == 0]))
    else:
        raw = [1 / d for d in distances]

    norm = sum(raw)
    result = WeightedSubmodels(
        (WeightedSubmodel(member, d, r / norm)
         for member, d, r in zip(ordered, distances, raw)),
        zero_distance_rule=zero_rule)
    for item in result:
        logger.debug('%s: distance %s, weight %s', item.intervention,
                     item.distance, item.weight)
    return result


@dataclass(frozen=True)
class SubmodelEvaluation(object):
    """One row of the breakdown of a counterfactual probability."""

    intervention: Intervention
    distance: Fraction
    weight: Fraction
    probability: Fraction


@dataclass(frozen=True)
class CounterfactualResult(object):
    """The probability of a counterfactual and how it was obtained."""

    query: object
    value: Fraction
    breakdown: tuple
    bounds: tuple
    strategy: str = INVERSE_DISTANCE
    mode: str = PROBABILISTIC
    zero_distance_rule: bool = False

    @property
    def convex(self):
        """Whether the value lies within the truthmaker bounds."""
        return self.bounds[0] <= self.value <= self.bounds[1]


def cf_probability(model, query, evidence=None, strategy=INVERSE_DISTANCE,
                   mode=PROBABILISTIC):
    """
    Compute the probability of a counterfactual.

    The weights are computed on the model before the evidence update; the
    consequent's probability in each submodel after it.

    @param model: ProbabilisticModel
    @param query: CounterfactualQuery
    @param evidence: Evidence or mapping
    @raises UnsatisfiableAntecedentError: if the antecedent has no truthmaker
    @raises ZeroProbabilityEvidenceError: if the evidence has probability 0
    @return: CounterfactualResult
    """
    check_kind(model, 'probabilistic')
    query.check(model.graph)
    members = antecedent_truthmakers(query.antecedent, model)
    updated = update_evidence(model, evidence)
    weighted = weights(model, members, strategy, mode)

    breakdown = tuple(
        SubmodelEvaluation(
            item.intervention, item.distance, item.weight,
            do_prob(updated, item.intervention, query.consequent))
        for item in weighted)
    value = sum((row.weight * row.probability for row in breakdown),
                Fraction(0))
    probabilities = [row.probability for row in breakdown]
    return CounterfactualResult(
        query, value, breakdown, (min(probabilities), max(probabilities)),
        strategy, mode, weighted.zero_distance_rule)


def consequent_bounds(model, query, evidence=None):
    """
    Return the least and greatest probability of the consequent over the
    submodels truthmaking the antecedent.

    @return: (lowest, highest) tuple of Fractions
    """
    check_kind(model, 'probabilistic')
    query.check(model.graph)
    members = antecedent_truthmakers(query.antecedent, model)
    updated = update_evidence(model, evidence)
    probabilities = [do_prob(updated, member, query.consequent)
                     for member in members]
    return min(probabilities), max(probabilities)


def check_convexity(value, bounds, label=None):
    """
    Check that a counterfactual probability respects its truthmaker bounds.

    @param bounds: (lowest, highest) probability of the consequent in the
        truthmaking submodels
    @param label: description used in the warning
    @return: bool
    """
    if bounds[0] <= value <= bounds[1]:
        return True
    warnings.warn(ConvexityViolationWarning(value, bounds, label))
    return False


def briggs_truth(model, query):
    """
    Evaluate a counterfactual at a deterministic model.

    @param model: DeterministicModel
    @param query: CounterfactualQuery
    @raises UnsatisfiableAntecedentError: if the antecedent has no truthmaker
    @return: bool
    """
    check_kind(model, 'deterministic')
    query.check(model.graph)
    members = antecedent_truthmakers(query.antecedent, model)
    return all(
        eval_static(apply_deterministic(model, member), query.consequent)
        for member in members)


class VariableMismatchError(SemanticError):
    """Error raised when comparing models over different variables."""

    def __init__(self, first, second):
        """Initialise a VariableMismatchError."""
        msg = 'The models do not share their variables ({0} vs {1})'.format(
            ', '.join(first), ', '.join(second))
        super().__init__(msg)


class ZeroDistanceWarning(UserWarning):
    """Warning issued when zero-distance truthmakers take all the weight."""

    def __init__(self, members):
        """Initialise a ZeroDistanceWarning."""
        self.members = members
        msg = ('{0} lie(s) at distance zero from the model and take all of '
               'the weight'.format(', '.join(str(m) for m in members)))
        super().__init__(msg)


class ConvexityViolationWarning(UserWarning):
    """Warning issued when a probability escapes its truthmaker bounds."""

    def __init__(self, value, bounds, label=None):
        """Initialise a ConvexityViolationWarning."""
        self.value = value
        self.bounds = bounds
        msg = '{0}{1} lies outside the bounds [{2}, {3}]'.format(
            '{0}: '.format(label) if label else '', float(value),
            float(bounds[0]), float(bounds[1]))
        super().__init__(msg)
