#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Exact truthmakers and falsemakers of formulas.

States are the proper submodels of a model, identified with the admissible,
non-empty interventions generating them. The relations are defined by
recursion on the formula:

    atom V=v     made true by do(V=v), made false by do(V=v') for v' != v
    !A           made true by the falsemakers of A and vice versa
    A & B        made true by fusions t + u of truthmakers of A and B;
                 made false by falsemakers of A, of B or of A | B
    A | B        made true by truthmakers of A, of B or of A & B;
                 made false by fusions of falsemakers of A and B

Fusions of inconsistent interventions are dropped. Sets are not minimised.
"""
from counterfact.assignment import InconsistentAssignmentError, SemanticError
from counterfact.formula import And, Atom, Not, Or
from counterfact.intervention import Intervention


class TruthmakerSet(frozenset):
    """A set of interventions exactly verifying (or falsifying) a formula."""

    def __new__(cls, members=(), formula=None):
        """Create the set; members are Interventions."""
        return super().__new__(cls, members)

    def __init__(self, members=(), formula=None):
        """
        Initialise a TruthmakerSet.

        @param members: iterable of Interventions
        @param formula: the formula the members truthmake or falsemake
        """
        self.formula = formula

    def ordered(self):
        """Return the members with the smallest interventions first."""
        return sorted(self, key=Intervention.sort_key)

    def minimal(self):
        """Return the members assigning the fewest variables."""
        if not self:
            return []
        least = min(len(member) for member in self)
        return [member for member in self.ordered() if len(member) == least]

    def __str__(self):
        """Represent the set as '{do(X=0), do(Y=0)}'."""
        return '{{{0}}}'.format(', '.join(str(m) for m in self.ordered()))


def _fusions(firsts, seconds):
    """Fuse every pair, silently dropping inconsistent fusions."""
    fused = set()
    for first in firsts:
        for second in seconds:
            try:
                fused.add(first.fuse(second))
            except InconsistentAssignmentError:
                continue
    return fused


def _verifiers(formula, graph):
    if isinstance(formula, Atom):
        return {Intervention({formula.variable: formula.value})}
    if isinstance(formula, Not):
        return _falsifiers(formula.operand, graph)
    if isinstance(formula, And):
        return _fusions(_verifiers(formula.left, graph),
                        _verifiers(formula.right, graph))
    if isinstance(formula, Or):
        return (_verifiers(formula.left, graph)
                | _verifiers(formula.right, graph)
                | _verifiers(And(formula.left, formula.right), graph))
    raise TypeError('Not a formula: {0!r}'.format(formula))


def _falsifiers(formula, graph):
    if isinstance(formula, Atom):
        return {Intervention({formula.variable: other})
                for other in graph.range(formula.variable)
                if other != formula.value}
    if isinstance(formula, Not):
        return _verifiers(formula.operand, graph)
    if isinstance(formula, And):
        return (_falsifiers(formula.left, graph)
                | _falsifiers(formula.right, graph)
                | _falsifiers(Or(formula.left, formula.right), graph))
    if isinstance(formula, Or):
        return _fusions(_falsifiers(formula.left, graph),
                        _falsifiers(formula.right, graph))
    raise TypeError('Not a formula: {0!r}'.format(formula))


def truthmakers(formula, model):
    """
    Enumerate the exact truthmakers of a formula.

    @param formula: Formula
    @param model: ProbabilisticModel or DeterministicModel
    @raises UnknownVariableError: if an atom is not bound to the model
    @return: TruthmakerSet, possibly empty
    """
    formula.check(model.graph)
    return TruthmakerSet(_verifiers(formula, model.graph), formula)


def falsemakers(formula, model):
    """
    Enumerate the exact falsemakers of a formula.

    @param formula: Formula
    @param model: ProbabilisticModel or DeterministicModel
    @raises UnknownVariableError: if an atom is not bound to the model
    @return: TruthmakerSet, possibly empty
    """
    formula.check(model.graph)
    return TruthmakerSet(_falsifiers(formula, model.graph), formula)


def antecedent_truthmakers(formula, model):
    """
    Enumerate the truthmakers of a counterfactual antecedent.

    @raises UnsatisfiableAntecedentError: if there is none
    """
    members = truthmakers(formula, model)
    if not members:
        raise UnsatisfiableAntecedentError(formula)
    return members


class UnsatisfiableAntecedentError(SemanticError):
    """Error raised when an antecedent has no truthmaker."""

    def __init__(self, formula):
        """Initialise an UnsatisfiableAntecedentError."""
        self.formula = formula
        msg = (
            'The antecedent "{0}" has no truthmaker, the counterfactual is '
            'undefined'.format(formula))
        super().__init__(msg)
