#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Plain text reports of the command line tool.

A report is a human-readable part followed by a fenced block of
`key = value` lines in which every number is an exact fraction.
"""
from collections import OrderedDict
from decimal import Decimal
from fractions import Fraction

DEFAULT_DIGITS = 6
FENCE = '```'


def render_decimal(value, digits=DEFAULT_DIGITS):
    """
    Render a number with a fixed number of decimals.

    Ties are rounded to the even neighbour.

    @param value: Fraction, int or str accepted by Fraction
    @param digits: number of decimals
    """
    scaled = round(Fraction(value) * 10 ** digits)
    return '{0:f}'.format(Decimal(scaled).scaleb(-digits))


def render_exact(value):
    """Render a machine-readable value; numbers become fractions."""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    return str(value)


class Report(object):
    """A human-readable report with its machine-readable block."""

    def __init__(self, title, digits=DEFAULT_DIGITS):
        """
        Initialise a Report.

        @param title: first line of the report
        @param digits: number of decimals of rendered numbers
        """
        self.title = title
        self.digits = digits
        self.lines = []
        self.warnings = []
        self.values = OrderedDict()

    def add_line(self, text=''):
        """Add a line to the human-readable part only."""
        self.lines.append(text)

    def add_value(self, key, value, label=None):
        """
        Add a number to both parts of the report.

        @param key: key in the machine-readable block
        @param label: label in the human-readable part, defaults to key
        """
        self.values[key] = value
        self.lines.append('{0}: {1}'.format(
            label or key, self.number(value)))

    def add_field(self, key, value):
        """Add an entry to the machine-readable block only."""
        self.values[key] = value

    def add_warning(self, message):
        """Add a warning, shown in both parts."""
        self.warnings.append(str(message))
        self.values['warning.{0}'.format(len(self.warnings))] = str(message)

    def number(self, value):
        """Render a number as 'decimal (fraction)'."""
        value = Fraction(value)
        if value.denominator == 1:
            return render_decimal(value, self.digits)
        return '{0} ({1})'.format(render_decimal(value, self.digits), value)

    def render(self):
        """Return the full report as text."""
        out = [self.title]
        out.extend(self.lines)
        out.extend('warning: {0}'.format(w) for w in self.warnings)
        out.append(FENCE)
        out.extend('{0} = {1}'.format(key, render_exact(value))
                   for key, value in self.values.items())
        out.append(FENCE)
        return '\n'.join(out) + '\n'

    def __str__(self):
        """Represent the Report as its rendered text."""
        return self.render()


def counterfactual_report(result, evidence=None, digits=DEFAULT_DIGITS):
    """
    Report the probability of a counterfactual and its breakdown.

    @param result: CounterfactualResult
    @param evidence: the Evidence the result was computed on
    """
    report = Report('counterfactual: {0}'.format(result.query), digits)
    report.add_field('query', result.query)
    report.add_line('evidence: {0}'.format(evidence or 'none'))
    report.add_field('evidence', evidence or '')
    report.add_line('weighting: {0}, dependence: {1}'.format(
        result.strategy, result.mode))
    report.add_field('weighting', result.strategy)
    report.add_field('dependence', result.mode)
    for i, row in enumerate(result.breakdown, 1):
        report.add_line('  {0}: distance {1}, weight {2}, p {3}'.format(
            row.intervention, report.number(row.distance),
            report.number(row.weight), report.number(row.probability)))
        prefix = 'submodel.{0}.'.format(i)
        report.add_field(prefix + 'intervention', row.intervention)
        report.add_field(prefix + 'distance', row.distance)
        report.add_field(prefix + 'weight', row.weight)
        report.add_field(prefix + 'probability', row.probability)
    add_bounds(report, result.bounds)
    report.add_value('value', result.value)
    if result.zero_distance_rule:
        report.add_field('zero_distance_rule', True)
    return report


def add_bounds(report, bounds):
    """Add the convexity bounds to a report."""
    report.add_line('bounds: [{0}, {1}]'.format(
        report.number(bounds[0]), report.number(bounds[1])))
    report.add_field('bounds.lower', bounds[0])
    report.add_field('bounds.upper', bounds[1])
