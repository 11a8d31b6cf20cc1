# -*- coding: utf-8 -*-
"""Unit tests for counterfactual."""
import unittest
import warnings
from fractions import Fraction

from counterfact.counterfactual import (
    NEAREST_ONLY,
    STRUCTURAL,
    UNIFORM,
    WEIGHTINGS,
    ConvexityViolationWarning,
    VariableMismatchError,
    ZeroDistanceWarning,
    briggs_truth,
    cf_probability,
    check_convexity,
    consequent_bounds,
    dependencies,
    depends,
    distance,
    weights
)
from counterfact.formula import CounterfactualQuery, parse_formula, parse_query
from counterfact.graph import CausalGraph
from counterfact.inference import do_prob
from counterfact.intervention import Intervention, apply_probabilistic
from counterfact.model import Cpt, ModelKindError, ProbabilisticModel
from counterfact.truthmaker import (
    TruthmakerSet,
    UnsatisfiableAntecedentError,
    truthmakers
)
from model_factory import (
    DEAD,
    execution_det_model,
    execution_model,
    random_evidence,
    random_formula,
    random_model,
    seeded
)

EXECUTION_QUERY = '(X=0 | Y=0) => D=0'
ONE_SHOT = Fraction(747, 1250)
BOTH_HOLD = Fraction(9, 10)


def do(**bindings):
    return Intervention(bindings)


class TestDependencies(unittest.TestCase):
    """Test the dependencies() function."""

    def setUp(self):
        self.model = execution_model()

    def test_original(self):
        relation = dependencies(self.model)
        self.assertEqual(len(relation), 5)
        self.assertEqual(relation.universe_size, 12)
        self.assertEqual(str(relation), 'C->X, C->Y, C->D, X->D, Y->D')

    def test_one_executioner_cut(self):
        relation = dependencies(apply_probabilistic(self.model, {'X': 0}))
        self.assertEqual(len(relation), 4)
        self.assertNotIn(('C', 'X'), relation)
        self.assertIn(('X', 'D'), relation)

    def test_both_executioners_cut(self):
        relation = dependencies(
            apply_probabilistic(self.model, {'X': 0, 'Y': 0}))
        self.assertEqual(str(relation), 'X->D, Y->D')

    def test_structural_agrees(self):
        self.assertEqual(dependencies(self.model, STRUCTURAL),
                         dependencies(self.model))

    def test_structural_agrees_on_submodels(self):
        for member in ({'X': 0}, {'Y': 0}, {'X': 0, 'Y': 0}):
            sub = apply_probabilistic(self.model, member)
            with self.subTest(member=member):
                self.assertEqual(dependencies(sub, STRUCTURAL),
                                 dependencies(sub))

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            dependencies(self.model, 'causal')


class TestDepends(unittest.TestCase):
    """Test the depends() function."""

    def test_depends(self):
        model = execution_model()
        self.assertTrue(depends(model, 'C', 'D'))
        self.assertFalse(depends(model, 'X', 'Y'))
        self.assertFalse(depends(model, 'D', 'C'))


class TestDistance(unittest.TestCase):
    """Test the distance() function."""

    def setUp(self):
        self.model = execution_model()

    def test_distances(self):
        for member, expected in (({'X': 0}, Fraction(1, 12)),
                                 ({'Y': 0}, Fraction(1, 12)),
                                 ({'X': 0, 'Y': 0}, Fraction(1, 4)),
                                 ({'C': 0}, 0)):
            with self.subTest(member=member):
                sub = apply_probabilistic(self.model, member)
                self.assertEqual(distance(self.model, sub), expected)

    def test_self(self):
        self.assertEqual(distance(self.model, self.model), 0)

    def test_variable_mismatch(self):
        with self.assertRaises(VariableMismatchError):
            distance(self.model, _with_bystander())


class TestWeights(unittest.TestCase):
    """Test the weights() function."""

    def setUp(self):
        self.model = execution_model()
        self.members = truthmakers(
            parse_query(EXECUTION_QUERY).antecedent, self.model)

    def test_inverse_distance(self):
        weighted = weights(self.model, self.members)
        self.assertEqual([item.intervention for item in weighted],
                         [do(X=0), do(Y=0), do(X=0, Y=0)])
        self.assertEqual([item.weight for item in weighted],
                         [Fraction(3, 7), Fraction(3, 7), Fraction(1, 7)])
        self.assertFalse(weighted.zero_distance_rule)

    def test_uniform(self):
        weighted = weights(self.model, self.members, UNIFORM)
        self.assertEqual({item.weight for item in weighted},
                         {Fraction(1, 3)})

    def test_nearest_only(self):
        weighted = weights(self.model, self.members, NEAREST_ONLY)
        self.assertEqual([item.weight for item in weighted],
                         [Fraction(1, 2), Fraction(1, 2), 0])

    def test_empty(self):
        with self.assertRaises(UnsatisfiableAntecedentError):
            weights(self.model, TruthmakerSet())

    def test_unknown_strategy(self):
        with self.assertRaises(ValueError):
            weights(self.model, self.members, 'closest')


class TestCfProbability(unittest.TestCase):
    """Test the cf_probability() function."""

    def setUp(self):
        self.model = execution_model()
        self.query = parse_query(EXECUTION_QUERY)

    def test_inverse_distance(self):
        result = cf_probability(self.model, self.query, DEAD)
        self.assertEqual(result.value, Fraction(5607, 8750))
        self.assertEqual([row.probability for row in result.breakdown],
                         [ONE_SHOT, ONE_SHOT, BOTH_HOLD])
        self.assertEqual(result.bounds, (ONE_SHOT, BOTH_HOLD))
        self.assertTrue(result.convex)

    def test_uniform(self):
        result = cf_probability(self.model, self.query, DEAD, UNIFORM)
        self.assertEqual(result.value, Fraction(2619, 3750))

    def test_nearest_only(self):
        result = cf_probability(self.model, self.query, DEAD, NEAREST_ONLY)
        self.assertEqual(result.value, ONE_SHOT)

    def test_structural(self):
        result = cf_probability(self.model, self.query, DEAD,
                                mode=STRUCTURAL)
        self.assertEqual(result.value, Fraction(5607, 8750))
        self.assertEqual(result.mode, STRUCTURAL)

    def test_conjunctive_antecedent_is_intervention(self):
        result = cf_probability(
            self.model, parse_query('X=0 & Y=0 => D=0'), DEAD)
        self.assertEqual(result.value, BOTH_HOLD)

    def test_zero_distance_rule(self):
        with self.assertWarns(ZeroDistanceWarning):
            result = cf_probability(
                self.model, parse_query('C=0 | X=0 => D=0'), DEAD)
        self.assertTrue(result.zero_distance_rule)
        self.assertEqual([row.distance for row in result.breakdown],
                         [0, Fraction(1, 12), Fraction(1, 12)])
        self.assertEqual([row.weight for row in result.breakdown], [1, 0, 0])
        self.assertEqual(result.value, Fraction(41, 50))

    def test_bystander_does_not_matter(self):
        result = cf_probability(_with_bystander(), self.query, DEAD)
        self.assertEqual([row.distance for row in result.breakdown],
                         [Fraction(1, 20), Fraction(1, 20), Fraction(3, 20)])
        self.assertEqual(result.value, Fraction(5607, 8750))

    def test_unsatisfiable(self):
        with self.assertRaises(UnsatisfiableAntecedentError):
            cf_probability(self.model, parse_query('X=0 & X=1 => D=0'))

    def test_deterministic_model(self):
        with self.assertRaises(ModelKindError):
            cf_probability(execution_det_model(), self.query)

    def test_random_models_are_convex(self):
        rng = seeded(20)
        checked = 0
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', ZeroDistanceWarning)
            while checked < 100:
                model = random_model(rng, 3)
                names = list(model.variables)
                query = CounterfactualQuery(random_formula(rng, names, 2),
                                            random_formula(rng, names, 2))
                if not truthmakers(query.antecedent, model):
                    continue
                checked += 1
                evidence = random_evidence(rng, names)
                for strategy in WEIGHTINGS:
                    result = cf_probability(model, query, evidence, strategy)
                    with self.subTest(query=str(query), strategy=strategy,
                                      evidence=str(evidence)):
                        self.assertEqual(
                            sum(row.weight for row in result.breakdown), 1)
                        self.assertTrue(result.convex)

    def test_matching_values(self):
        model = _matching_model()
        query = parse_query('((A=1&B=1)|(A=0&B=0)) => C=1')
        self.assertEqual(query.antecedent,
                         parse_formula('(A=1 & B=1) | (A=0 & B=0)'))
        result = cf_probability(model, query)
        self.assertEqual(
            {row.intervention: row.weight for row in result.breakdown},
            {do(A=1, B=1): Fraction(1, 2), do(A=0, B=0): Fraction(1, 2)})
        self.assertEqual({row.distance for row in result.breakdown},
                         {Fraction(1, 6)})
        consequent = parse_formula('C=1')
        average = (do_prob(model, do(A=1, B=1), consequent)
                   + do_prob(model, do(A=0, B=0), consequent)) / 2
        self.assertEqual(result.value, average)
        self.assertEqual(result.value, Fraction(1, 2))


class TestConsequentBounds(unittest.TestCase):
    """Test the consequent_bounds() function."""

    def test_execution(self):
        self.assertEqual(
            consequent_bounds(execution_model(), parse_query(EXECUTION_QUERY),
                              DEAD),
            (ONE_SHOT, BOTH_HOLD))


class TestCheckConvexity(unittest.TestCase):
    """Test the check_convexity() function."""

    def test_inside(self):
        self.assertTrue(check_convexity(Fraction(1, 2), (0, 1)))

    def test_outside(self):
        with self.assertWarns(ConvexityViolationWarning) as cm:
            self.assertFalse(check_convexity(
                Fraction(1, 2), (ONE_SHOT, BOTH_HOLD), 'imaging'))
        self.assertEqual(cm.warning.value, Fraction(1, 2))
        self.assertIn('imaging: 0.5 lies outside', str(cm.warning))


class TestBriggsTruth(unittest.TestCase):
    """Test the briggs_truth() function."""

    def setUp(self):
        self.model = execution_det_model()

    def test_both_hold_fire(self):
        self.assertTrue(
            briggs_truth(self.model, parse_query('(X=0 & Y=0) => D=0')))

    def test_either_holds_fire(self):
        self.assertFalse(briggs_truth(self.model,
                                      parse_query(EXECUTION_QUERY)))
        self.assertTrue(briggs_truth(self.model,
                                     parse_query('X=0 | Y=0 => C=1')))

    def test_captain(self):
        self.assertTrue(briggs_truth(self.model,
                                     parse_query('C=0 => D=0')))

    def test_unsatisfiable(self):
        with self.assertRaises(UnsatisfiableAntecedentError):
            briggs_truth(self.model, parse_query('X=0 & X=1 => D=0'))

    def test_probabilistic_model(self):
        with self.assertRaises(ModelKindError):
            briggs_truth(execution_model(), parse_query(EXECUTION_QUERY))


def _with_bystander():
    base = execution_model()
    graph = CausalGraph(
        [(name, base.graph.range(name)) for name in base.variables]
        + [('Z', (0, 1))],
        {name: base.graph.parents[name] for name in base.variables})
    cpts = list(base.cpts.values()) + [
        Cpt('Z', (), {(): {1: Fraction(3, 10), 0: Fraction(7, 10)}})]
    return ProbabilisticModel(graph, cpts)


def _matching_model():
    graph = CausalGraph([('A', (0, 1)), ('B', (0, 1)), ('C', (0, 1))],
                        {'B': ['A'], 'C': ['A', 'B']})
    half = Fraction(1, 2)
    return ProbabilisticModel(graph, [
        Cpt('A', (), {(): {1: half, 0: half}}),
        Cpt('B', ('A',), {(1,): {1: Fraction(4, 5), 0: Fraction(1, 5)},
                          (0,): {1: Fraction(1, 5), 0: Fraction(4, 5)}}),
        Cpt('C', ('A', 'B'), {
            (1, 1): {1: Fraction(9, 10), 0: Fraction(1, 10)},
            (1, 0): {1: half, 0: half},
            (0, 1): {1: half, 0: half},
            (0, 0): {1: Fraction(1, 10), 0: Fraction(9, 10)}}),
    ])
