#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
A (partial) assignment of values to variables.

The same representation is used for the actual values of a deterministic
model, for evidence, for possible worlds and for interventions.
"""
from collections.abc import Mapping


class Assignment(Mapping):
    """An immutable mapping of variable names to integer values."""

    def __init__(self, bindings=None):
        """
        Initialise an Assignment.

        @param bindings: mapping or iterable of (variable, value) pairs. The
            insertion order is kept for display purposes only.
        """
        self._bindings = dict(bindings or {})
        self._hash = None

    def __getitem__(self, variable):
        """Return the value bound to a variable."""
        return self._bindings[variable]

    def __iter__(self):
        """Iterate over the bound variables."""
        return iter(self._bindings)

    def __len__(self):
        """Set length to the number of bound variables."""
        return len(self._bindings)

    def __hash__(self):
        """Hash on the (unordered) set of bindings."""
        if self._hash is None:
            self._hash = hash(frozenset(self._bindings.items()))
        return self._hash

    def __eq__(self, other):
        """Implement equality comparison, ignoring binding order."""
        if isinstance(other, Assignment):
            return self._bindings == other._bindings
        return NotImplemented

    def __repr__(self):
        """Represent the Assignment for debugging."""
        return '{0}({1!r})'.format(type(self).__name__, self._bindings)

    def __str__(self):
        """Represent the Assignment as a string, e.g. 'X=0, Y=1'."""
        return ', '.join('{0}={1}'.format(var, val)
                         for var, val in self.items())

    @property
    def variables(self):
        """Return the bound variables as a frozenset."""
        return frozenset(self._bindings)

    def sort_key(self):
        """Return a deterministic key ordering smaller assignments first."""
        return (len(self), sorted(self._bindings.items()))

    def consistent_with(self, other):
        """Check that no variable is bound to two different values."""
        return all(other[var] == val
                   for var, val in self.items() if var in other)

    def fuse(self, other):
        """
        Merge two assignments.

        @raises InconsistentAssignmentError: if a variable would receive two
            different values.
        @return: an assignment of the same type as self
        """
        for var, val in other.items():
            if var in self._bindings and self._bindings[var] != val:
                raise InconsistentAssignmentError(
                    var, self._bindings[var], val)
        merged = dict(self._bindings)
        merged.update(other)
        return type(self)(merged)

    def extends(self, other):
        """Check whether every binding of other is also in self."""
        return all(var in self._bindings and self._bindings[var] == val
                   for var, val in other.items())

    def restrict(self, variables):
        """Return the sub-assignment on the given variables."""
        return type(self)((var, val) for var, val in self.items()
                          if var in variables)

    def override(self, other):
        """Return a copy where the bindings of other replace those of self."""
        merged = dict(self._bindings)
        merged.update(other)
        return type(self)(merged)


class SemanticError(Exception):
    """Base for errors about the meaning, not the syntax, of an input."""


class InconsistentAssignmentError(SemanticError):
    """Error raised when two assignments disagree on a variable."""

    def __init__(self, variable, first, second):
        """Initialise an InconsistentAssignmentError."""
        self.variable = variable
        msg = (
            'Cannot fuse inconsistent assignments: "{0}" would be set to '
            'both {1} and {2}'.format(variable, first, second))
        super().__init__(msg)
