# -*- coding: utf-8 -*-
"""Unit tests for inference."""
import unittest
from fractions import Fraction

from counterfact.formula import parse_formula
from counterfact.graph import CausalGraph
from counterfact.inference import (
    Evidence,
    ZeroProbabilityEvidenceError,
    conditional_prob,
    do_prob,
    joint,
    marginal,
    pearl_counterfactual,
    prob,
    update_evidence
)
from counterfact.model import Cpt, ModelKindError, ProbabilisticModel
from counterfact.truthmaker import UnsatisfiableAntecedentError
from model_factory import (
    DEAD,
    execution_det_model,
    execution_model,
    random_model,
    seeded
)

HALF = Fraction(1, 2)


class TestJoint(unittest.TestCase):
    """Test the joint() function."""

    def test_sums_to_one(self):
        dist = joint(execution_model())
        self.assertEqual(len(dist), 16)
        self.assertEqual(dist.total(), 1)

    def test_entry(self):
        dist = joint(execution_model())
        # 1/2 * 9/10 * 9/10 * 9/10
        self.assertEqual(dist[{'C': 1, 'X': 1, 'Y': 1, 'D': 1}],
                         Fraction(729, 2000))

    def test_random_models_sum_to_one(self):
        rng = seeded(10)
        for i in range(50):
            self.assertEqual(joint(random_model(rng)).total(), 1)

    def test_deterministic_model(self):
        with self.assertRaises(ModelKindError):
            joint(execution_det_model())


class TestProb(unittest.TestCase):
    """Test the prob() function."""

    def test_prior(self):
        model = execution_model()
        self.assertEqual(prob(model, parse_formula('D=1')), HALF)
        self.assertEqual(prob(model, parse_formula('X=1 & Y=1')),
                         Fraction(41, 100))

    def test_marginal(self):
        self.assertEqual(dict(marginal(execution_model(), 'X')),
                         {1: HALF, 0: HALF})


class TestConditionalProb(unittest.TestCase):
    """Test the conditional_prob() function."""

    def test_after_update(self):
        updated = update_evidence(execution_model(), DEAD)
        self.assertEqual(
            conditional_prob(updated, parse_formula('D=0'), {'X': 0}),
            Fraction(459, 610))

    def test_zero_probability(self):
        model = _two_causes()
        with self.assertRaises(ZeroProbabilityEvidenceError):
            conditional_prob(model, parse_formula('A=1'),
                             {'A': 0, 'B': 0, 'E': 1})


class TestUpdateEvidence(unittest.TestCase):
    """Test the update_evidence() function."""

    def test_captain(self):
        updated = update_evidence(execution_model(), DEAD)
        self.assertEqual(updated.cpts['C'].probability(1), Fraction(41, 50))
        self.assertEqual(updated.cpts['X'], execution_model().cpts['X'])
        self.assertIsNone(updated.exogenous_block)

    def test_empty_evidence(self):
        model = execution_model()
        self.assertIs(update_evidence(model, Evidence()), model)

    def test_block_keeps_correlation(self):
        updated = update_evidence(_two_causes(), {'E': 1})
        third = Fraction(1, 3)
        self.assertEqual(updated.exogenous_block.variables, ('A', 'B'))
        self.assertEqual(updated.exogenous_block.table[(0, 0)], 0)
        self.assertEqual(updated.exogenous_block.table[(1, 1)], third)
        self.assertEqual(updated.cpts['A'].probability(1), 2 * third)
        self.assertEqual(prob(updated, parse_formula('A=0 & B=0')), 0)

    def test_zero_probability(self):
        with self.assertRaises(ZeroProbabilityEvidenceError):
            update_evidence(_two_causes(), {'A': 0, 'B': 0, 'E': 1})


class TestDoProb(unittest.TestCase):
    """Test the do_prob() function."""

    def test_prior(self):
        self.assertEqual(
            do_prob(execution_model(), {'X': 0}, parse_formula('D=0')),
            Fraction(7, 10))


class TestPearlCounterfactual(unittest.TestCase):
    """Test the pearl_counterfactual() function."""

    def setUp(self):
        self.model = execution_model()

    def test_one_executioner(self):
        self.assertEqual(
            pearl_counterfactual(self.model, parse_formula('X=0'),
                                 parse_formula('D=0'), DEAD),
            Fraction(747, 1250))

    def test_both_executioners(self):
        self.assertEqual(
            pearl_counterfactual(self.model, parse_formula('X=0 & Y=0'),
                                 parse_formula('D=0'), DEAD),
            Fraction(9, 10))

    def test_unsatisfiable(self):
        with self.assertRaises(UnsatisfiableAntecedentError):
            pearl_counterfactual(self.model, parse_formula('X=0 & X=1'),
                                 parse_formula('D=0'), DEAD)


def _two_causes():
    graph = CausalGraph([('A', (0, 1)), ('B', (0, 1)), ('E', (0, 1))],
                        {'E': ['A', 'B']})
    half = {0: HALF, 1: HALF}
    return ProbabilisticModel(graph, [
        Cpt('A', (), {(): half}),
        Cpt('B', (), {(): half}),
        Cpt('E', ('A', 'B'), {
            (0, 0): {0: 1, 1: 0}, (0, 1): {0: 0, 1: 1},
            (1, 0): {0: 0, 1: 1}, (1, 1): {0: 0, 1: 1}})])
