# -*- coding: utf-8 -*-
"""Unit tests for report."""
import unittest
from fractions import Fraction

from counterfact.counterfactual import cf_probability
from counterfact.formula import parse_query
from counterfact.report import (
    FENCE,
    Report,
    counterfactual_report,
    render_decimal,
    render_exact
)
from model_factory import DEAD, execution_model


class TestRenderDecimal(unittest.TestCase):
    """Test the render_decimal() function."""

    def test_render_decimal_ties_to_even(self):
        self.assertEqual(render_decimal(Fraction(1, 8), 2), '0.12')
        self.assertEqual(render_decimal(Fraction(3, 8), 2), '0.38')

    def test_render_decimal_pads(self):
        self.assertEqual(render_decimal(Fraction(5607, 8750)), '0.640800')
        self.assertEqual(render_decimal(1, 3), '1.000')
        self.assertEqual(render_decimal(0, 3), '0.000')

    def test_render_decimal_string(self):
        self.assertEqual(render_decimal('0.588816', 4), '0.5888')


class TestRenderExact(unittest.TestCase):
    """Test the render_exact() function."""

    def test_render_exact(self):
        self.assertEqual(render_exact(True), 'true')
        self.assertEqual(render_exact(Fraction(6, 14)), '3/7')
        self.assertEqual(render_exact(2), '2')
        self.assertEqual(render_exact('X=0'), 'X=0')


class TestReport(unittest.TestCase):
    """Test the Report class."""

    def test_render(self):
        report = Report('prob: D=0', 3)
        report.add_value('value', Fraction(1, 3))
        report.add_field('formula', 'D=0')
        report.add_warning('something odd')
        self.assertEqual(report.render(), '\n'.join([
            'prob: D=0',
            'value: 0.333 (1/3)',
            'warning: something odd',
            FENCE,
            'value = 1/3',
            'formula = D=0',
            'warning.1 = something odd',
            FENCE]) + '\n')

    def test_number_integer(self):
        self.assertEqual(Report('t').number(1), '1.000000')


class TestCounterfactualReport(unittest.TestCase):
    """Test the counterfactual_report() function."""

    def test_counterfactual_report(self):
        result = cf_probability(execution_model(),
                                parse_query('(X=0 | Y=0) => D=0'), DEAD)
        text = str(counterfactual_report(result, DEAD))
        self.assertIn('evidence: D=1', text)
        self.assertIn('submodel.1.distance = 1/12', text)
        self.assertIn('submodel.3.weight = 1/7', text)
        self.assertIn('bounds.lower = 747/1250', text)
        self.assertIn('bounds.upper = 9/10', text)
        self.assertNotIn('zero_distance_rule', text)
