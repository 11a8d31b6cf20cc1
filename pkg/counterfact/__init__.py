#!/usr/bin/python
# -*- coding: utf-8 -*-
"""The initialization file for the counterfact library."""
from counterfact.assignment import Assignment
from counterfact.counterfactual import (
    CounterfactualResult,
    DependencyRelation,
    cf_probability
)
from counterfact.formula import CounterfactualQuery, parse_formula, parse_query
from counterfact.graph import CausalGraph
from counterfact.imaging import SelectionFunction, World, WorldDistribution
from counterfact.inference import Evidence, JointDistribution
from counterfact.intervention import Intervention
from counterfact.model import (
    Cpt,
    DeterministicModel,
    ProbabilisticModel,
    StructuralEquation
)
from counterfact.model_file import ModelFile
from counterfact.report import Report
from counterfact.truthmaker import TruthmakerSet

__all__ = ('Assignment', 'CausalGraph', 'CounterfactualQuery',
           'CounterfactualResult', 'Cpt', 'DependencyRelation',
           'DeterministicModel', 'Evidence', 'Intervention',
           'JointDistribution', 'ModelFile', 'ProbabilisticModel', 'Report',
           'SelectionFunction', 'StructuralEquation', 'TruthmakerSet',
           'World', 'WorldDistribution', 'cf_probability', 'parse_formula',
           'parse_query')
