#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Formulas of the object language and counterfactual queries.

Atoms have the form V=v; complex formulas are built with ! (negation),
& (conjunction) and | (disjunction), in order of decreasing precedence, with
parentheses for grouping. Chains of & and | associate to the left so every
node of the tree is unary or binary. A counterfactual query joins two
formulas with a single top-level =>; counterfactuals do not nest.
"""
from dataclasses import dataclass

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from counterfact.assignment import Assignment

CF_ARROW = '=>'

GRAMMAR = r"""
formula_start: formula
query: formula "=>" formula

?formula: formula "|" conjunction -> or_
        | conjunction
?conjunction: conjunction "&" negation -> and_
            | negation
?negation: "!" negation -> not_
         | atom
         | "(" formula ")"
atom: NAME "=" SIGNED_INT

NAME: /[A-Za-z][A-Za-z0-9_]*/

%import common.SIGNED_INT
%import common.WS
%ignore WS
"""

# binding strength used by the printer
_OR, _AND, _NOT, _ATOM = range(1, 5)


class Formula(object):
    """Base class of the formula tree."""

    precedence = None

    def evaluate(self, assignment):
        """Evaluate the formula classically against a total assignment."""
        raise NotImplementedError

    def variables(self):
        """Return the set of variables mentioned in the formula."""
        raise NotImplementedError

    def atoms(self):
        """Yield every Atom of the formula, left to right."""
        raise NotImplementedError

    def check(self, graph):
        """
        Bind the formula to a model's graph.

        @raises UnknownVariableError: for an undeclared variable
        @raises OutOfRangeError: for a value outside a variable's range
        """
        for atom in self.atoms():
            graph.check_value(atom.variable, atom.value)

    def _wrap(self, minimum):
        """Print self, parenthesised if it binds looser than minimum."""
        text = str(self)
        if self.precedence < minimum:
            return '({0})'.format(text)
        return text


@dataclass(frozen=True)
class Atom(Formula):
    """The atomic formula variable=value."""

    variable: str
    value: int

    precedence = _ATOM

    def evaluate(self, assignment):
        """Check the variable's value in the assignment."""
        return assignment[self.variable] == self.value

    def variables(self):
        """Return the single variable."""
        return frozenset([self.variable])

    def atoms(self):
        """Yield self."""
        yield self

    def __str__(self):
        """Print as V=v."""
        return '{0}={1}'.format(self.variable, self.value)


@dataclass(frozen=True)
class Not(Formula):
    """Negation."""

    operand: Formula

    precedence = _NOT

    def evaluate(self, assignment):
        """Negate the operand."""
        return not self.operand.evaluate(assignment)

    def variables(self):
        """Return the operand's variables."""
        return self.operand.variables()

    def atoms(self):
        """Yield the operand's atoms."""
        yield from self.operand.atoms()

    def __str__(self):
        """Print as !A."""
        return '!{0}'.format(self.operand._wrap(_NOT))


@dataclass(frozen=True)
class And(Formula):
    """Binary conjunction."""

    left: Formula
    right: Formula

    precedence = _AND

    def evaluate(self, assignment):
        """Evaluate both sides."""
        return (self.left.evaluate(assignment)
                and self.right.evaluate(assignment))

    def variables(self):
        """Return the variables of both sides."""
        return self.left.variables() | self.right.variables()

    def atoms(self):
        """Yield the atoms of both sides."""
        yield from self.left.atoms()
        yield from self.right.atoms()

    def __str__(self):
        """Print as A & B."""
        return '{0} & {1}'.format(
            self.left._wrap(_AND), self.right._wrap(_AND + 1))


@dataclass(frozen=True)
class Or(Formula):
    """Binary disjunction."""

    left: Formula
    right: Formula

    precedence = _OR

    def evaluate(self, assignment):
        """Evaluate either side."""
        return (self.left.evaluate(assignment)
                or self.right.evaluate(assignment))

    def variables(self):
        """Return the variables of both sides."""
        return self.left.variables() | self.right.variables()

    def atoms(self):
        """Yield the atoms of both sides."""
        yield from self.left.atoms()
        yield from self.right.atoms()

    def __str__(self):
        """Print as A | B."""
        return '{0} | {1}'.format(
            self.left._wrap(_OR), self.right._wrap(_OR + 1))


@dataclass(frozen=True)
class CounterfactualQuery(object):
    """A counterfactual antecedent => consequent."""

    antecedent: Formula
    consequent: Formula

    def check(self, graph):
        """Bind both sides to a model's graph."""
        self.antecedent.check(graph)
        self.consequent.check(graph)

    def __str__(self):
        """Print as A => B."""
        return '{0} {1} {2}'.format(self.antecedent, CF_ARROW, self.consequent)


class _TreeBuilder(Transformer):
    """Turn the lark parse tree into Formula objects."""

    def atom(self, items):
        name, value = items
        return Atom(str(name), int(value))

    def not_(self, items):
        return Not(items[0])

    def and_(self, items):
        return And(items[0], items[1])

    def or_(self, items):
        return Or(items[0], items[1])

    def formula_start(self, items):
        return items[0]

    def query(self, items):
        return CounterfactualQuery(items[0], items[1])


_parser = Lark(GRAMMAR, start=['formula_start', 'query'], parser='lalr')


def _parse(text, start):
    """Run the parser and convert lark errors."""
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as e:
        raise FormulaSyntaxError(text, getattr(e, 'column', None))
    try:
        return _TreeBuilder().transform(tree)
    except VisitError as e:
        raise FormulaSyntaxError(text, None, str(e.orig_exc))


def parse_formula(text):
    """
    Parse a formula of the object language.

    Unknown variables are only detected once the formula is bound to a model.

    @raises FormulaSyntaxError: with the column of the offending input.
    @return: Formula
    """
    if CF_ARROW in text:
        raise FormulaSyntaxError(
            text, text.index(CF_ARROW) + 1,
            'a counterfactual is not allowed here')
    return _parse(text, 'formula_start')


def parse_query(text):
    """
    Parse a counterfactual query 'antecedent => consequent'.

    @raises NestedCounterfactualError: if => appears more than once.
    @raises FormulaSyntaxError: for any other malformed input.
    @return: CounterfactualQuery
    """
    if text.count(CF_ARROW) > 1:
        raise NestedCounterfactualError(text)
    if CF_ARROW not in text:
        raise FormulaSyntaxError(text, None, 'expected "antecedent => '
                                             'consequent"')
    return _parse(text, 'query')


def format_formula(formula):
    """Print a formula in its canonical form."""
    return str(formula)


def conjunction(*formulas):
    """Join formulas with left-associated conjunctions."""
    result = formulas[0]
    for formula in formulas[1:]:
        result = And(result, formula)
    return result


def conjunction_to_assignment(formula):
    """
    Read a conjunction of atoms as a partial assignment.

    @raises NotConjunctiveError: if the formula contains ! or |
    @raises InconsistentAssignmentError: for e.g. X=0 & X=1
    """
    if isinstance(formula, Atom):
        return Assignment({formula.variable: formula.value})
    if isinstance(formula, And):
        return conjunction_to_assignment(formula.left).fuse(
            conjunction_to_assignment(formula.right))
    raise NotConjunctiveError(formula)


def assignment_to_conjunction(assignment):
    """Turn a non-empty assignment into a conjunction of atoms."""
    return conjunction(*(Atom(var, val) for var, val in assignment.items()))


def eval_static(model, formula):
    """
    Evaluate a formula at the actual values of a deterministic model.

    @raises UnknownVariableError: for an undeclared variable
    @raises OutOfRangeError: for a value outside a variable's range
    """
    formula.check(model.graph)
    return formula.evaluate(model.actual)


class FormulaSyntaxError(Exception):
    """Error raised when a formula or query cannot be parsed."""

    def __init__(self, text, column=None, reason=None):
        """Initialise a FormulaSyntaxError."""
        self.text = text
        self.column = column
        msg = 'Could not parse "{0}"'.format(text)
        if column is not None:
            msg += ' at column {0}'.format(column)
        if reason:
            msg += ': {0}'.format(reason)
        super().__init__(msg)


class NestedCounterfactualError(FormulaSyntaxError):
    """Error raised when a counterfactual appears inside a counterfactual."""

    def __init__(self, text):
        """Initialise a NestedCounterfactualError."""
        super().__init__(text, text.index(CF_ARROW) + 1,
                         'nested counterfactuals are not supported')


class NotConjunctiveError(ValueError):
    """Error raised when a conjunction of atoms was required."""

    def __init__(self, formula):
        """Initialise a NotConjunctiveError."""
        self.formula = formula
        msg = '"{0}" is not a conjunction of atoms'.format(formula)
        super().__init__(msg)
