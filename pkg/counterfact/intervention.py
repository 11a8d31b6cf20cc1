#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Interventions do(V1=v1, ..., Vn=vn) and the submodels they generate.

An intervention is admissible when it assigns at most one value to each
variable; fusing two interventions is only defined when the result is
admissible. Applying an intervention cuts the intervened variables off from
their parents and fixes them to the forced values.
"""
from counterfact.assignment import Assignment
from counterfact.formula import conjunction_to_assignment
from counterfact.model import Cpt, DeterministicModel, ProbabilisticModel


class Intervention(Assignment):
    """An admissible partial assignment used as an intervention."""

    def __str__(self):
        """Represent the Intervention as e.g. 'do(X=0, Y=0)'."""
        return 'do({0})'.format(super().__str__())

    @classmethod
    def from_formula(cls, formula):
        """
        Read a conjunction of atoms as an intervention.

        @raises NotConjunctiveError: if the formula is not a conjunction
        @raises InconsistentAssignmentError: for e.g. X=0 & X=1
        """
        return cls(conjunction_to_assignment(formula))

    def check(self, graph):
        """Check the intervention's variables and values against a graph."""
        graph.check_assignment(self)


def fuse(first, second):
    """
    Fuse two interventions into one.

    @raises InconsistentAssignmentError: if a variable would be assigned two
        distinct values.
    @return: Intervention
    """
    return Intervention(first).fuse(second)


def apply_deterministic(model, intervention):
    """
    Generate the submodel of a deterministic model.

    The equations of the intervened variables are removed, the intervened
    variables are fixed to the forced values and every other actual value is
    recomputed from the unchanged exogenous values.

    @param model: DeterministicModel
    @param intervention: Intervention or mapping
    @return: DeterministicModel
    """
    intervention = Intervention(intervention)
    if not intervention:
        return model
    intervention.check(model.graph)
    graph = model.graph.without_parents(intervention.variables)
    equations = {name: eq for name, eq in model.equations.items()
                 if name not in intervention}
    inputs = model.actual.restrict(model.graph.exogenous).override(
        intervention)
    return DeterministicModel.from_exogenous(graph, equations, inputs)


def apply_probabilistic(model, intervention):
    """
    Generate the post-intervention probabilistic model.

    The intervened variables become parentless with a point-mass table at
    the forced value; every other table is left unchanged. An intervened
    exogenous variable covered by an exogenous block is summed out of the
    block.

    @param model: ProbabilisticModel
    @param intervention: Intervention or mapping
    @return: ProbabilisticModel
    """
    intervention = Intervention(intervention)
    if not intervention:
        return model
    intervention.check(model.graph)
    graph = model.graph.without_parents(intervention.variables)
    cpts = dict(model.cpts)
    for name, value in intervention.items():
        cpts[name] = Cpt.point_mass(name, value, graph.range(name))

    block = model.exogenous_block
    if block is not None and intervention.variables & set(block.variables):
        keep = [var for var in block.variables if var not in intervention]
        block = block.marginalize(keep)
        if len(keep) == 1:
            # a lone survivor is described exactly by its marginal
            cpts[keep[0]] = Cpt.marginal(keep[0], block.table_by_value())
        if len(keep) < 2:
            block = None
    return ProbabilisticModel(graph, cpts, block)


def apply(model, intervention):
    """Apply an intervention to a model of either kind."""
    if isinstance(model, ProbabilisticModel):
        return apply_probabilistic(model, intervention)
    return apply_deterministic(model, intervention)
