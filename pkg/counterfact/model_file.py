#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Handler for the .cm model file format, a line oriented text document.

    # the execution example
    var C : {0,1}
    parents X : C
    cpt C : 1:0.5 0:0.5
    cpt X | C=1 : 1:0.9 0:0.1
    eq D | X=1,Y=0 : 1
    actual C=1
    evidence D=1

Probabilities may be written as decimals or fractions. Any `cpt` line makes
the model probabilistic, any `eq` or `actual` line deterministic; the two
cannot be mixed. Endogenous actual values may be left out and are then
computed from the equations.
"""
import os
from collections import OrderedDict
from fractions import Fraction

from counterfact.assignment import Assignment
from counterfact.graph import CausalGraph, ModelError, is_valid_name
from counterfact.inference import Evidence
from counterfact.model import (
    Cpt,
    DeterministicModel,
    ProbabilisticModel,
    StructuralEquation
)


class ModelFile(object):
    """Handler for the model file format."""

    CMT_SYMBOL = '#'
    KEYWORDS = ('var', 'parents', 'cpt', 'eq', 'actual', 'evidence')

    def __init__(self):
        """Construct an empty model file object."""
        self.name = ''
        self.comments = []
        self.variables = OrderedDict()
        self.parents = OrderedDict()
        self.rows = OrderedDict()
        self.actual = OrderedDict()
        self.evidence = Evidence()
        self.kind = None
        self._evidence = []
        self._model = None

    @staticmethod
    def from_file(file_path):
        """Create a ModelFile from a .cm file."""
        model_file = ModelFile()
        with open(file_path, encoding='utf-8') as f:
            model_file.name = os.path.basename(f.name)
            for line_no, line in enumerate(f, 1):
                model_file.parse_line(line, line_no)
        model_file.build()
        return model_file

    @staticmethod
    def from_stream(stream, file_name=None):
        """Create a ModelFile from the text of a .cm file."""
        model_file = ModelFile()
        if file_name:
            model_file.name = file_name
        for line_no, line in enumerate(stream.split('\n'), 1):
            model_file.parse_line(line, line_no)
        model_file.build()
        return model_file

    @property
    def model(self):
        """Return the parsed ProbabilisticModel or DeterministicModel."""
        if self._model is None:
            self.build()
        return self._model

    def parse_line(self, line, line_no=0):
        """Parse a line of a model file separating data from comments."""
        line = line.strip()
        if not line:
            return
        if line.startswith(ModelFile.CMT_SYMBOL):
            if line[len(ModelFile.CMT_SYMBOL):].strip():
                self.comments.append(line[len(ModelFile.CMT_SYMBOL):].lstrip())
            return
        keyword, _, rest = line.partition(' ')
        if keyword not in ModelFile.KEYWORDS:
            raise ModelFileError(line_no, 'unknown directive "{0}"'.format(
                keyword))
        getattr(self, '_parse_{0}'.format(keyword))(rest.strip(), line_no)

    def _set_kind(self, kind, line_no):
        if self.kind not in (None, kind):
            raise ModelFileError(
                line_no, 'cpt lines cannot be mixed with eq or actual lines')
        self.kind = kind

    def _parse_var(self, rest, line_no):
        name, values = _split_colon(rest, line_no)
        _check_name(name, line_no)
        if name in self.variables:
            raise ModelFileError(line_no, 'variable {0} declared twice'.format(
                name))
        values = values.strip()
        if not (values.startswith('{') and values.endswith('}')):
            raise ModelFileError(line_no, 'expected a range like {0,1}')
        self.variables[name] = tuple(
            _integer(val, line_no) for val in values[1:-1].split(',')
            if val.strip())

    def _parse_parents(self, rest, line_no):
        name, parents = _split_colon(rest, line_no)
        if name not in self.variables:
            raise ModelFileError(line_no, 'undeclared variable {0}'.format(
                name))
        self.parents[name] = tuple(parents.split())

    def _parse_cpt(self, rest, line_no):
        self._set_kind('probabilistic', line_no)
        head, body = _split_colon(rest, line_no)
        name, key = self._row_head(head, line_no)
        dist = OrderedDict()
        for pair in body.split():
            val, sep, prob = pair.partition(':')
            if not sep:
                raise ModelFileError(
                    line_no, 'expected value:probability, got "{0}"'.format(
                        pair))
            try:
                dist[_integer(val, line_no)] = Fraction(prob)
            except ValueError:
                raise ModelFileError(
                    line_no, 'invalid probability "{0}"'.format(prob))
        self.rows.setdefault(name, []).append((key, dist, line_no))

    def _parse_eq(self, rest, line_no):
        self._set_kind('deterministic', line_no)
        head, body = _split_colon(rest, line_no)
        name, key = self._row_head(head, line_no)
        self.rows.setdefault(name, []).append(
            (key, _integer(body, line_no), line_no))

    def _parse_actual(self, rest, line_no):
        self._set_kind('deterministic', line_no)
        for name, value in _bindings(rest, ' ', line_no):
            self.actual[name] = value

    def _parse_evidence(self, rest, line_no):
        self._evidence.extend(
            (name, value, line_no)
            for name, value in _bindings(rest, ' ', line_no))

    def _row_head(self, head, line_no):
        """Split 'NAME | P1=v,P2=v' into the name and its parent bindings."""
        name, _, key = head.partition('|')
        name = name.strip()
        if name not in self.variables:
            raise ModelFileError(line_no, 'undeclared variable {0}'.format(
                name))
        return name, OrderedDict(_bindings(key, ',', line_no))

    def build(self):
        """
        Build the model from the parsed lines.

        @raises ModelFileError: if a row does not match the declared parents
        """
        try:
            graph = CausalGraph(self.variables, self.parents)
        except ModelError as error:
            raise ModelFileError(0, str(error))
        factory = StructuralEquation
        if self.kind != 'deterministic':
            factory = Cpt
        tables = []
        for name, rows in self.rows.items():
            parents = graph.parents[name]
            table = OrderedDict()
            for key, entry, line_no in rows:
                if set(key) != set(parents):
                    raise ModelFileError(
                        line_no, 'row of {0} must bind exactly its parents '
                                 '({1})'.format(name, ' '.join(parents)))
                table[tuple(key[p] for p in parents)] = entry
            tables.append(factory(name, parents, table))

        for name, value, line_no in self._evidence:
            if name not in self.variables:
                raise ModelFileError(
                    line_no, 'undeclared variable {0}'.format(name))
        self.evidence = Evidence(
            (name, value) for name, value, _ in self._evidence)

        if self.kind == 'deterministic':
            self._model = DeterministicModel(
                graph, tables, self._solved_actual(graph, tables))
        else:
            self._model = ProbabilisticModel(graph, tables)
        return self._model

    def _solved_actual(self, graph, equations):
        """Fill in the omitted endogenous actual values."""
        actual = Assignment(self.actual)
        if all(name in actual for name in graph.names):
            return actual
        try:
            return DeterministicModel(graph, equations, {}).solve(actual)
        except (KeyError, ModelError):
            # left incomplete for validate_model to report
            return actual

    def dumps(self):
        """Render the model in the model file format."""
        model = self.model
        graph = model.graph
        lines = ['# {0}'.format(comment) for comment in self.comments]
        for name, values in graph.variables.items():
            lines.append('var {0} : {{{1}}}'.format(
                name, ','.join(str(val) for val in values)))
        for name, parents in graph.parents.items():
            if parents:
                lines.append('parents {0} : {1}'.format(
                    name, ' '.join(parents)))
        if model.kind == 'probabilistic':
            for name, cpt in model.cpts.items():
                for key, dist in cpt.rows.items():
                    lines.append('cpt {0} : {1}'.format(
                        _row_key(name, cpt.parents, key), ' '.join(
                            '{0}:{1}'.format(val, prob)
                            for val, prob in dist.items())))
        else:
            for name, eq in model.equations.items():
                for key, val in eq.rows.items():
                    lines.append('eq {0} : {1}'.format(
                        _row_key(name, eq.parents, key), val))
            lines.append('actual {0}'.format(' '.join(
                '{0}={1}'.format(name, model.actual[name])
                for name in graph.names if name in model.actual)))
        if self.evidence:
            lines.append('evidence {0}'.format(' '.join(
                '{0}={1}'.format(name, value)
                for name, value in self.evidence.items())))
        return '\n'.join(lines) + '\n'


def _split_colon(text, line_no):
    head, sep, tail = text.partition(':')
    if not sep:
        raise ModelFileError(line_no, 'missing ":"')
    return head.strip(), tail.strip()


def _check_name(name, line_no):
    if not is_valid_name(name):
        raise ModelFileError(line_no, 'invalid variable name "{0}"'.format(
            name))


def _integer(text, line_no):
    try:
        return int(text.strip())
    except ValueError:
        raise ModelFileError(line_no, 'expected an integer value, got '
                                      '"{0}"'.format(text.strip()))


def _bindings(text, separator, line_no):
    """Parse 'A=1 B=0' (or 'A=1,B=0') into (name, value) pairs."""
    for binding in text.split(separator):
        if not binding.strip():
            continue
        name, sep, value = binding.partition('=')
        if not sep:
            raise ModelFileError(line_no, 'expected NAME=value, got '
                                          '"{0}"'.format(binding.strip()))
        _check_name(name.strip(), line_no)
        yield name.strip(), _integer(value, line_no)


def _row_key(name, parents, key):
    """Format the head of a row as 'NAME' or 'NAME | P1=v,P2=v'."""
    if not parents:
        return name
    return '{0} | {1}'.format(name, ','.join(
        '{0}={1}'.format(p, v) for p, v in zip(parents, key)))


class ModelFileError(Exception):
    """Error raised when a model file cannot be parsed."""

    def __init__(self, line_no, reason):
        """Initialise a ModelFileError."""
        self.line_no = line_no
        if line_no:
            msg = 'Line {0}: {1}'.format(line_no, reason)
        else:
            msg = reason
        super().__init__(msg)
