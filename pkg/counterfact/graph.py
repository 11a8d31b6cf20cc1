#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
The causal graph: variables, their value ranges and their parents.

The graph is backed by a networkx DiGraph with an edge from every parent to
its child. A graph may be constructed with a cycle so that it can be
reported by validation, but any operation needing a topological order
raises a CyclicGraphError on it.
"""
import re
from collections import OrderedDict
from itertools import product

import networkx as nx

from counterfact.assignment import Assignment, SemanticError

VARIABLE_PATTERN = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')


class CausalGraph(object):
    """A directed graph over finite discrete variables."""

    def __init__(self, variables, parents=None):
        """
        Initialise a CausalGraph.

        @param variables: ordered mapping, or list of pairs, of variable name
            to its value range (a sequence of distinct integers). The order
            is the declaration order used for worlds and reports.
        @param parents: mapping of variable name to an ordered sequence of
            parent names. Variables without an entry are exogenous.
        """
        self.variables = OrderedDict(
            (name, tuple(values)) for name, values in OrderedDict(
                variables).items())
        parents = parents or {}
        self.parents = OrderedDict(
            (name, tuple(parents.get(name, ()))) for name in self.variables)
        for name in parents:
            if name not in self.variables:
                raise UnknownVariableError(name)

        self._nx = nx.DiGraph()
        self._nx.add_nodes_from(self.variables)
        for child, pas in self.parents.items():
            self._nx.add_edges_from((parent, child) for parent in pas)

    def __eq__(self, other):
        """Implement equality comparison."""
        if isinstance(other, self.__class__):
            return (self.variables == other.variables
                    and self.parents == other.parents)
        return NotImplemented

    def __contains__(self, variable):
        """Check if a variable is declared."""
        return variable in self.variables

    def __len__(self):
        """Set length to the number of variables."""
        return len(self.variables)

    @property
    def names(self):
        """Return the variable names in declaration order."""
        return tuple(self.variables)

    @property
    def edges(self):
        """Return the set of (parent, child) edges."""
        return set(self._nx.edges)

    def range(self, variable):
        """Return the value range of a declared variable."""
        self.check_variable(variable)
        return self.variables[variable]

    def check_variable(self, variable):
        """Raise an UnknownVariableError if the variable is not declared."""
        if variable not in self.variables:
            raise UnknownVariableError(variable)

    def check_value(self, variable, value):
        """Raise if the variable is unknown or the value outside its range."""
        if value not in self.range(variable):
            raise OutOfRangeError(variable, value, self.variables[variable])

    def check_assignment(self, assignment):
        """Check every binding of an assignment against the graph."""
        for variable, value in assignment.items():
            self.check_value(variable, value)

    def is_exogenous(self, variable):
        """Check whether the variable has no parents."""
        self.check_variable(variable)
        return not self.parents[variable]

    @property
    def exogenous(self):
        """Return the parentless variables in declaration order."""
        return tuple(v for v in self.variables if not self.parents[v])

    @property
    def endogenous(self):
        """Return the variables having parents in declaration order."""
        return tuple(v for v in self.variables if self.parents[v])

    def is_acyclic(self):
        """Check that the graph contains no directed cycle."""
        return nx.is_directed_acyclic_graph(self._nx)

    def find_cycle(self):
        """Return the variables of one directed cycle, or an empty list."""
        try:
            return [edge[0] for edge in nx.find_cycle(self._nx)]
        except nx.NetworkXNoCycle:
            return []

    def topological_order(self):
        """
        Return the variables ordered parents first.

        Ties are broken by declaration order so the result is deterministic.

        @raises CyclicGraphError: if the graph is not a DAG.
        """
        position = {name: i for i, name in enumerate(self.variables)}
        try:
            return list(nx.lexicographical_topological_sort(
                self._nx, key=position.get))
        except nx.NetworkXUnfeasible:
            raise CyclicGraphError(self.find_cycle())

    def descendants(self, variable):
        """Return the variables reachable from variable by directed edges."""
        self.check_variable(variable)
        return set(nx.descendants(self._nx, variable))

    def descendants_of(self, variables):
        """Return the union of the descendants of several variables."""
        found = set()
        for variable in variables:
            found |= self.descendants(variable)
        return found

    def parent_assignments(self, variable):
        """
        Enumerate every combination of values of the parents of a variable.

        @return: list of tuples ordered as self.parents[variable]
        """
        pas = self.parents[variable]
        return list(product(*(self.variables[p] for p in pas)))

    def assignments(self, descending=False):
        """
        Enumerate every total assignment of the graph's variables.

        @param descending: iterate each range from its last value to its
            first, the order used to number possible worlds.
        @yield: Assignment
        """
        ranges = [tuple(reversed(vals)) if descending else vals
                  for vals in self.variables.values()]
        for values in product(*ranges):
            yield Assignment(zip(self.variables, values))

    def size(self):
        """Return the number of total assignments."""
        count = 1
        for values in self.variables.values():
            count *= len(values)
        return count

    def without_parents(self, variables):
        """Return a copy where the given variables lose all incoming edges."""
        for variable in variables:
            self.check_variable(variable)
        parents = {name: (() if name in variables else pas)
                   for name, pas in self.parents.items()}
        return CausalGraph(self.variables, parents)


def is_valid_name(name):
    """Check that a variable name is a letter followed by word characters."""
    return bool(VARIABLE_PATTERN.match(name))


class ModelError(SemanticError):
    """Base for errors raised when a model is used incorrectly."""


class UnknownVariableError(ModelError):
    """Error raised when a variable is not declared in the model."""

    def __init__(self, variable):
        """Initialise an UnknownVariableError."""
        self.variable = variable
        msg = 'The variable "{0}" is not declared in the model'.format(
            variable)
        super().__init__(msg)


class OutOfRangeError(ModelError):
    """Error raised when a value lies outside a variable's range."""

    def __init__(self, variable, value, value_range):
        """Initialise an OutOfRangeError."""
        self.variable = variable
        self.value = value
        msg = (
            'The value {0} is outside the range of "{1}" '
            '({{{2}}})'.format(
                value, variable, ','.join(str(v) for v in value_range)))
        super().__init__(msg)


class CyclicGraphError(ModelError):
    """Error raised when a topological order is needed on a cyclic graph."""

    def __init__(self, cycle):
        """Initialise a CyclicGraphError."""
        self.cycle = cycle
        msg = 'The causal graph contains a cycle: {0}'.format(
            ' -> '.join(cycle + cycle[:1]))
        super().__init__(msg)
