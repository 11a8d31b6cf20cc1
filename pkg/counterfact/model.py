#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Probabilistic and deterministic causal models.

A probabilistic model pairs a causal graph with one conditional probability
table (Cpt) per variable; exogenous variables carry a single-row table,
their marginal. After an evidence update on a model with several exogenous
variables their joint posterior is kept as an ExogenousBlock which then
replaces their individual tables in the factorization.

A deterministic model pairs a causal graph with one structural equation per
endogenous variable and the actual value of every variable.

Models are never mutated; operations return new models.
"""
from collections import OrderedDict
from fractions import Fraction

from counterfact.assignment import Assignment
from counterfact.graph import ModelError, is_valid_name


class Cpt(object):
    """A conditional probability table of a single variable."""

    def __init__(self, child, parents, rows):
        """
        Initialise a Cpt.

        @param child: name of the variable the table describes
        @param parents: ordered sequence of parent names
        @param rows: mapping of a tuple of parent values (ordered as parents)
            to a mapping of child value to probability.
        """
        self.child = child
        self.parents = tuple(parents)
        self.rows = OrderedDict(
            (tuple(key), OrderedDict(
                (val, Fraction(prob)) for val, prob in dist.items()))
            for key, dist in rows.items())

    @classmethod
    def point_mass(cls, child, value, value_range):
        """Create a parentless table putting all mass on a single value."""
        return cls(child, (), {(): {val: int(val == value)
                                    for val in value_range}})

    @classmethod
    def marginal(cls, child, distribution):
        """Create a parentless table from a mapping value -> probability."""
        return cls(child, (), {(): distribution})

    def probability(self, value, parent_values=()):
        """
        Look up p(child=value | parents=parent_values).

        @param parent_values: tuple ordered as self.parents
        """
        return self.rows[tuple(parent_values)].get(value, Fraction(0))

    def distribution(self, parent_values=()):
        """Return the child distribution of one row."""
        return self.rows[tuple(parent_values)]

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.child == other.child
                    and self.parents == other.parents
                    and self.rows == other.rows)
        return NotImplemented

    def violations(self, graph):
        """
        Check the table against the graph.

        @return: list of violation messages, empty if the table is valid.
        """
        found = []
        if self.parents != graph.parents[self.child]:
            found.append(
                'cpt {0}: parents ({1}) do not match the graph ({2})'.format(
                    self.child, ' '.join(self.parents),
                    ' '.join(graph.parents[self.child])))
            return found
        expected = set(graph.parent_assignments(self.child))
        for missing in sorted(expected - set(self.rows)):
            found.append('cpt {0}: missing row for {1}'.format(
                self.child, _row_label(self.parents, missing)))
        for extra in sorted(set(self.rows) - expected):
            found.append('cpt {0}: unexpected row {1}'.format(
                self.child, _row_label(self.parents, extra)))
        value_range = graph.variables[self.child]
        for key, dist in self.rows.items():
            label = _row_label(self.parents, key)
            for val, prob in dist.items():
                if val not in value_range:
                    found.append(
                        'cpt {0} row {1}: value {2} outside range'.format(
                            self.child, label, val))
                if not 0 <= prob <= 1:
                    found.append(
                        'cpt {0} row {1}: probability {2} not in [0,1]'.format(
                            self.child, label, prob))
            if sum(dist.values()) != 1:
                found.append(
                    'cpt {0} row {1}: row does not sum to 1 '
                    '(sums to {2})'.format(
                        self.child, label, sum(dist.values())))
        return found


class StructuralEquation(object):
    """A deterministic mechanism given as a table of parent values."""

    def __init__(self, child, parents, rows):
        """
        Initialise a StructuralEquation.

        @param child: name of the variable the equation defines
        @param parents: ordered sequence of parent names
        @param rows: mapping of a tuple of parent values (ordered as parents)
            to the child value.
        """
        self.child = child
        self.parents = tuple(parents)
        self.rows = OrderedDict(
            (tuple(key), val) for key, val in rows.items())

    @classmethod
    def from_function(cls, child, graph, func):
        """
        Tabulate a python function of the parent values.

        @param func: callable taking the parent values positionally.
        """
        return cls(child, graph.parents[child], {
            key: func(*key) for key in graph.parent_assignments(child)})

    def output(self, parent_values):
        """Return the child value for a tuple of parent values."""
        return self.rows[tuple(parent_values)]

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.child == other.child
                    and self.parents == other.parents
                    and self.rows == other.rows)
        return NotImplemented

    def violations(self, graph):
        """
        Check the equation against the graph.

        @return: list of violation messages, empty if the equation is valid.
        """
        found = []
        if self.parents != graph.parents[self.child]:
            found.append(
                'eq {0}: parents ({1}) do not match the graph ({2})'.format(
                    self.child, ' '.join(self.parents),
                    ' '.join(graph.parents[self.child])))
            return found
        for missing in graph.parent_assignments(self.child):
            if missing not in self.rows:
                found.append('eq {0}: missing row for {1}'.format(
                    self.child, _row_label(self.parents, missing)))
        for key, val in self.rows.items():
            if val not in graph.variables[self.child]:
                found.append('eq {0} row {1}: value {2} outside range'.format(
                    self.child, _row_label(self.parents, key), val))
        return found


class ExogenousBlock(object):
    """A joint distribution over several exogenous variables."""

    def __init__(self, variables, table):
        """
        Initialise an ExogenousBlock.

        @param variables: ordered sequence of exogenous variable names
        @param table: mapping of value tuples (ordered as variables) to
            probability
        """
        self.variables = tuple(variables)
        self.table = OrderedDict(
            (tuple(key), Fraction(prob)) for key, prob in table.items())

    def probability(self, assignment):
        """Look up the probability of the block's part of an assignment."""
        key = tuple(assignment[var] for var in self.variables)
        return self.table.get(key, Fraction(0))

    def marginalize(self, keep):
        """Sum out every variable not in keep."""
        kept = tuple(var for var in self.variables if var in keep)
        table = OrderedDict()
        for key, prob in self.table.items():
            sub = tuple(val for var, val in zip(self.variables, key)
                        if var in kept)
            table[sub] = table.get(sub, Fraction(0)) + prob
        return ExogenousBlock(kept, table)

    def table_by_value(self):
        """Return the table of a single-variable block as value -> prob."""
        if len(self.variables) != 1:
            raise ValueError('Only a single-variable block has a marginal')
        return OrderedDict((key[0], prob) for key, prob in self.table.items())

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.variables == other.variables
                    and self.table == other.table)
        return NotImplemented


class ProbabilisticModel(object):
    """A causal graph with a conditional probability table per variable."""

    kind = 'probabilistic'

    def __init__(self, graph, cpts, exogenous_block=None):
        """
        Initialise a ProbabilisticModel.

        @param graph: CausalGraph
        @param cpts: mapping of variable name to its Cpt, or list of Cpts
        @param exogenous_block: optional ExogenousBlock overriding the tables
            of the exogenous variables it covers.
        """
        self.graph = graph
        if not isinstance(cpts, dict):
            cpts = {cpt.child: cpt for cpt in cpts}
        self.cpts = OrderedDict(
            (name, cpts[name]) for name in graph.variables if name in cpts)
        self.exogenous_block = exogenous_block

    @property
    def variables(self):
        """Return the variable names in declaration order."""
        return self.graph.names

    def factor(self, assignment):
        """
        Return the probability of a total assignment, factor by factor.

        @param assignment: total Assignment over the model variables
        """
        block = self.exogenous_block
        prob = Fraction(1)
        if block is not None:
            prob = block.probability(assignment)
        for name, cpt in self.cpts.items():
            if block is not None and name in block.variables:
                continue
            if not prob:
                break
            prob *= cpt.probability(
                assignment[name],
                tuple(assignment[p] for p in cpt.parents))
        return prob

    def replace(self, graph=None, cpts=None, exogenous_block=False):
        """Return a copy with some parts replaced."""
        return ProbabilisticModel(
            graph or self.graph,
            cpts if cpts is not None else self.cpts,
            self.exogenous_block if exogenous_block is False
            else exogenous_block)

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.graph == other.graph
                    and self.cpts == other.cpts
                    and self.exogenous_block == other.exogenous_block)
        return NotImplemented


class DeterministicModel(object):
    """A causal graph with structural equations and actual values."""

    kind = 'deterministic'

    def __init__(self, graph, equations, actual):
        """
        Initialise a DeterministicModel.

        @param graph: CausalGraph
        @param equations: mapping of endogenous variable name to its
            StructuralEquation, or list of StructuralEquations
        @param actual: Assignment of the actual value of every variable
        """
        self.graph = graph
        if not isinstance(equations, dict):
            equations = {eq.child: eq for eq in equations}
        self.equations = OrderedDict(
            (name, equations[name]) for name in graph.variables
            if name in equations)
        self.actual = Assignment(actual)

    @classmethod
    def from_exogenous(cls, graph, equations, exogenous_values):
        """
        Create a model whose actual values solve the equations.

        @param exogenous_values: mapping of every exogenous variable to its
            actual value; these are free inputs of the model.
        """
        model = cls(graph, equations, {})
        return cls(graph, equations, model.solve(exogenous_values))

    @property
    def variables(self):
        """Return the variable names in declaration order."""
        return self.graph.names

    def solve(self, exogenous_values):
        """
        Evaluate the equations in topological order.

        @param exogenous_values: mapping holding at least every exogenous
            variable
        @return: total Assignment
        """
        values = {}
        for name in self.graph.topological_order():
            if self.graph.is_exogenous(name):
                if name not in exogenous_values:
                    raise MissingActualValueError(name)
                values[name] = exogenous_values[name]
            else:
                eq = self.equations[name]
                values[name] = eq.output(tuple(values[p] for p in eq.parents))
        return Assignment((name, values[name]) for name in self.graph.names)

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.graph == other.graph
                    and self.equations == other.equations
                    and self.actual == other.actual)
        return NotImplemented


class ValidationReport(object):
    """The outcome of validating a model: a list of violations."""

    def __init__(self, violations=None):
        """Initialise a ValidationReport."""
        self.violations = list(violations or [])

    @property
    def ok(self):
        """Whether no violation was found."""
        return not self.violations

    def __bool__(self):
        """Evaluate as True if the model is valid."""
        return self.ok

    def __str__(self):
        """Represent the report as text."""
        if self.ok:
            return 'ok'
        return '\n'.join(self.violations)


def validate_model(model):
    """
    Check a model against all structural invariants.

    Violations are returned as data, naming the offending variable or row.

    @param model: ProbabilisticModel or DeterministicModel
    @return: ValidationReport
    """
    graph = model.graph
    found = []
    for name, values in graph.variables.items():
        if not is_valid_name(name):
            found.append('var {0}: invalid variable name'.format(name))
        if len(values) < 2:
            found.append('var {0}: range needs at least two values'.format(
                name))
        if len(set(values)) != len(values):
            found.append('var {0}: duplicate values in range'.format(name))
    for child, pas in graph.parents.items():
        for parent in pas:
            if parent not in graph:
                found.append('parents {0}: undeclared parent {1}'.format(
                    child, parent))
    if found:
        # the tables cannot be checked without well-formed ranges
        return ValidationReport(found)
    if not graph.is_acyclic():
        found.append('graph: cycle {0}'.format(
            ' -> '.join(graph.find_cycle() + graph.find_cycle()[:1])))

    if isinstance(model, ProbabilisticModel):
        for name in graph.variables:
            if name not in model.cpts:
                found.append('cpt {0}: missing'.format(name))
            else:
                found.extend(model.cpts[name].violations(graph))
        block = model.exogenous_block
        if block is not None:
            if any(not graph.is_exogenous(var) for var in block.variables):
                found.append('exogenous block: covers endogenous variables')
            if sum(block.table.values()) != 1:
                found.append('exogenous block: does not sum to 1')
    else:
        for name in graph.endogenous:
            if name not in model.equations:
                found.append('eq {0}: missing'.format(name))
            else:
                found.extend(model.equations[name].violations(graph))
        for name in graph.exogenous:
            if name in model.equations:
                found.append('eq {0}: exogenous variable has an '
                             'equation'.format(name))
        for name in graph.variables:
            if name not in model.actual:
                found.append('actual {0}: missing'.format(name))
            elif model.actual[name] not in graph.variables[name]:
                found.append('actual {0}: value {1} outside range'.format(
                    name, model.actual[name]))
        if not found:
            solved = model.solve(model.actual)
            for name in graph.endogenous:
                if solved[name] != model.actual[name]:
                    found.append(
                        'actual {0}: {1} does not match its equation '
                        '({2})'.format(name, model.actual[name],
                                       solved[name]))
    return ValidationReport(found)


def require_valid(model):
    """
    Raise an InvalidModelError unless the model passes validation.

    @param model: ProbabilisticModel or DeterministicModel
    @raises InvalidModelError: carrying the ValidationReport
    """
    found = validate_model(model)
    if not found.ok:
        raise InvalidModelError(found)


def check_kind(model, kind):
    """Raise a ModelKindError unless the model is of the requested kind."""
    if model.kind != kind:
        raise ModelKindError(model.kind, kind)


def _row_label(parents, key):
    """Format a row key as 'P1=v,P2=v' or '(unconditional)'."""
    if not parents:
        return '(unconditional)'
    return ','.join('{0}={1}'.format(p, v) for p, v in zip(parents, key))


class ModelKindError(ModelError):
    """Error raised when an operation needs the other kind of model."""

    def __init__(self, found, expected):
        """Initialise a ModelKindError."""
        msg = 'This operation requires a {0} model, got a {1} one'.format(
            expected, found)
        super().__init__(msg)


class MissingActualValueError(ModelError):
    """Error raised when an exogenous variable has no actual value."""

    def __init__(self, variable):
        """Initialise a MissingActualValueError."""
        self.variable = variable
        msg = 'No actual value was given for the exogenous variable "{0}"'.format(
            variable)
        super().__init__(msg)


class InvalidModelError(ModelError):
    """Error raised when a model fails validation."""

    def __init__(self, report):
        """Initialise an InvalidModelError with its ValidationReport."""
        self.report = report
        msg = 'Invalid model: {0}'.format('; '.join(report.violations))
        super().__init__(msg)
