# -*- coding: utf-8 -*-
"""Unit tests for truthmaker."""
import unittest

from counterfact.formula import Not, parse_formula
from counterfact.graph import UnknownVariableError
from counterfact.intervention import Intervention
from counterfact.model_file import ModelFile
from counterfact.truthmaker import (
    UnsatisfiableAntecedentError,
    antecedent_truthmakers,
    falsemakers,
    truthmakers
)
from model_factory import execution_model, random_formula, seeded


def do(**bindings):
    return Intervention(bindings)


class TestTruthmakers(unittest.TestCase):
    """Test the truthmakers() function."""

    def setUp(self):
        self.model = execution_model()

    def test_atom(self):
        self.assertEqual(truthmakers(parse_formula('X=0'), self.model),
                         {do(X=0)})

    def test_disjunction(self):
        members = truthmakers(parse_formula('X=0 | Y=0'), self.model)
        self.assertEqual(members, {do(X=0), do(Y=0), do(X=0, Y=0)})
        self.assertEqual(members.ordered(),
                         [do(X=0), do(Y=0), do(X=0, Y=0)])
        self.assertEqual(members.minimal(), [do(X=0), do(Y=0)])
        self.assertEqual(str(members), '{do(X=0), do(Y=0), do(X=0, Y=0)}')

    def test_conjunction(self):
        self.assertEqual(
            truthmakers(parse_formula('X=0 & Y=0'), self.model),
            {do(X=0, Y=0)})

    def test_same_variable_disjunction(self):
        members = truthmakers(parse_formula('A=0 | A=1'), _with_a())
        self.assertEqual(members, {do(A=0), do(A=1)})

    def test_contradiction(self):
        self.assertEqual(
            truthmakers(parse_formula('X=0 & X=1'), self.model), set())

    def test_negated_atom(self):
        self.assertEqual(truthmakers(parse_formula('!X=0'), self.model),
                         {do(X=1)})

    def test_negated_conjunction(self):
        members = truthmakers(parse_formula('!(X=0 & Y=0)'), self.model)
        self.assertEqual(members, {do(X=1), do(Y=1), do(X=1, Y=1)})

    def test_unknown_variable(self):
        with self.assertRaises(UnknownVariableError):
            truthmakers(parse_formula('Z=0'), self.model)

    def test_keeps_formula(self):
        formula = parse_formula('X=0 | Y=0')
        self.assertIs(truthmakers(formula, self.model).formula, formula)


class TestFalsemakers(unittest.TestCase):
    """Test the falsemakers() function."""

    def setUp(self):
        self.model = execution_model()

    def test_atom(self):
        self.assertEqual(falsemakers(parse_formula('X=0'), self.model),
                         {do(X=1)})

    def test_disjunction(self):
        self.assertEqual(
            falsemakers(parse_formula('X=0 | Y=0'), self.model),
            {do(X=1, Y=1)})

    def test_duality(self):
        rng = seeded(2)
        names = ['C', 'X', 'Y', 'D']
        for i in range(500):
            formula = random_formula(rng, names)
            with self.subTest(formula=str(formula)):
                self.assertEqual(truthmakers(Not(formula), self.model),
                                 falsemakers(formula, self.model))
                self.assertEqual(falsemakers(Not(formula), self.model),
                                 truthmakers(formula, self.model))

    def test_truthmakers_force_truth(self):
        rng = seeded(3)
        names = ['C', 'X', 'Y', 'D']
        worlds = list(self.model.graph.assignments())
        for i in range(200):
            formula = random_formula(rng, names)
            with self.subTest(formula=str(formula)):
                for member in truthmakers(formula, self.model):
                    for world in worlds:
                        if world.extends(member):
                            self.assertTrue(formula.evaluate(world))
                for member in falsemakers(formula, self.model):
                    for world in worlds:
                        if world.extends(member):
                            self.assertFalse(formula.evaluate(world))


class TestAntecedentTruthmakers(unittest.TestCase):
    """Test the antecedent_truthmakers() function."""

    def test_unsatisfiable(self):
        with self.assertRaises(UnsatisfiableAntecedentError):
            antecedent_truthmakers(parse_formula('X=0 & X=1'),
                                   execution_model())


def _with_a():
    return ModelFile.from_stream(
        'var A : {0,1}\n'
        'cpt A : 1:0.5 0:0.5\n').model
