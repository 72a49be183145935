#
# Copyright (c) 2024  StorPool.
# All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
""" Text formats: algebras, modules, complexes, object descriptors and
reports.

An algebra file looks like this:

    # words are read right to left: c*a applies a first
    FIELD q
    VERTICES 1 2 3
    ARROWS
    a: 1 -> 2
    c: 2 -> 3
    RELATIONS
    c*a
    BOUND 50

A relation is a sum of terms "coef*word" with an optional coefficient;
the idempotent at a vertex v is written e[v]. """

import collections
import os
import re

import six

from . import hwalgebra
from . import hwcatch
from . import hwderived
from . import hwhomology
from . import hwjson
from . import hwlinalg
from . import hwmodule


HEADER = '# words are read right to left: c*a applies a first'

SECTIONS = ('FIELD', 'VERTICES', 'ARROWS', 'RELATIONS', 'BOUND')

GRADED_KEYS = frozenset(['dims', 'table'])

RE_NAME = r'[A-Za-z0-9_]+'
RE_ARROW = re.compile(
    r'^(?P<name>[A-Za-z_][A-Za-z0-9_]*) \s* : \s* (?P<src>' + RE_NAME +
    r') \s* -> \s* (?P<dst>' + RE_NAME + r')$', re.X)
RE_TERM = re.compile(r'''
    \s* (?P<sign> [+-] )? \s*
    (?: (?P<coef> \d+ (?: / \d+ )? ) \s* \* \s* )?
    (?P<word>
        e \[ (?P<vertex> [A-Za-z0-9_]+ ) \]
        |
        [A-Za-z_][A-Za-z0-9_]* (?: \s* \* \s* [A-Za-z_][A-Za-z0-9_]* )*
    ) \s*''', re.X)
RE_DESCRIPTOR = re.compile(r'''^
    (?P<kind> simple: | proj: | inj: | [spiSPI] )
    (?P<vertex> [A-Za-z0-9_]+ )
    (?: \[ (?P<shift> -? \d+ ) \] )?
    $''', re.X)

KINDS = {
    'simple:': ('S', hwalgebra.simple_module),
    'proj:': ('P', hwalgebra.projective_module),
    'inj:': ('I', hwalgebra.injective_module),
    's': ('S', hwalgebra.simple_module),
    'p': ('P', hwalgebra.projective_module),
    'i': ('I', hwalgebra.injective_module),
}

Line = collections.namedtuple('Line', [
    'number',
    'text',
])


def _lines(text):
    """ The meaningful lines with their numbers, comments stripped. """
    res = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if line:
            res.append(Line(number, line))
    return res


def _fail(line, column, fmt, **kwargs):
    hwcatch.error(hwcatch.ParseError, fmt, line=line, column=column,
                  **kwargs)


def parse_terms(text, line=0, column=1, idempotents=True):
    """ Parse "coef*word + coef*word" into (coefficient, word) pairs;
    an idempotent is returned as the ('e', vertex) pair. """
    terms = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = RE_TERM.match(text, pos)
        if match is None or match.end() == pos:
            _fail(line, column + pos, 'Unexpected "{rest}"', rest=text[pos:])
        if terms and match.group('sign') is None:
            _fail(line, column + pos, 'Expected "+" or "-" before "{rest}"',
                  rest=text[pos:].strip())
        coef = hwlinalg.QQ.coerce(match.group('coef') or 1)
        if match.group('sign') == '-':
            coef = -coef
        if match.group('vertex') is not None:
            if not idempotents:
                _fail(line, column + pos, 'An idempotent is not allowed '
                      'here')
            word = ('e', match.group('vertex'))
        else:
            word = tuple(part.strip()
                         for part in match.group('word').split('*'))
        terms.append((coef, word))
        pos = match.end()
    if not terms:
        _fail(line, column, 'Expected at least one term')
    return terms


def _format_coef(coef):
    value = hwjson.fraction_str(coef)
    return str(value)


def format_terms(terms):
    """ The inverse of parse_terms. """
    parts = []
    for coef, word in terms:
        if isinstance(word, tuple) and len(word) == 2 and word[0] == 'e':
            body = 'e[{v}]'.format(v=word[1])
        else:
            body = '*'.join(word)
        sign = '-' if coef < 0 else '+'
        mag = -coef if coef < 0 else coef
        text = body if mag == 1 else '{c}*{b}'.format(c=_format_coef(mag),
                                                      b=body)
        parts.append((sign, text))
    if not parts:
        return '0'
    first_sign, first = parts[0]
    res = ('-' + first) if first_sign == '-' else first
    for sign, text in parts[1:]:
        res += ' {sign} {text}'.format(sign=sign, text=text)
    return res


def format_element(alg, elem):
    """ An algebra element in the relation syntax. """
    terms = []
    for idx, coef in sorted(six.iteritems(elem)):
        path = alg.basis[idx]
        word = path.arrows if path.arrows else \
            ('e', alg.vertex_name(path.source))
        if alg.field.p is not None and coef > alg.field.p // 2:
            coef -= alg.field.p
        terms.append((coef, word))
    return format_terms(terms)


def parse_algebra(text, field=None, length_bound=None, default_field='q',
                  default_bound=hwalgebra.DEFAULT_LENGTH_BOUND):
    """ Build a path algebra from its text form; explicit field and
    length bound arguments override the file. """
    spec, bound = None, None
    vertices, arrows, rels = None, [], []
    section = None
    for line in _lines(text):
        head, _, rest = line.text.partition(' ')
        rest = rest.strip()
        if head.upper() in SECTIONS:
            section = head.upper()
            if section == 'FIELD':
                spec = rest
            elif section == 'BOUND':
                try:
                    bound = int(rest)
                except ValueError:
                    _fail(line.number, len(head) + 2,
                          'Invalid length bound "{rest}"', rest=rest)
            elif section == 'VERTICES':
                vertices = rest.split()
            elif rest:
                _fail(line.number, len(head) + 2,
                      'Unexpected text after {head}', head=head)
            continue
        if section == 'ARROWS':
            match = RE_ARROW.match(line.text)
            if match is None:
                _fail(line.number, 1, 'Expected "name: source -> target", '
                      'got "{text}"', text=line.text)
            arrows.append((match.group('name'), match.group('src'),
                           match.group('dst')))
        elif section == 'RELATIONS':
            terms = parse_terms(line.text, line=line.number,
                                idempotents=False)
            rels.append((line.number, hwalgebra.relation(*terms)))
        else:
            _fail(line.number, 1, 'Expected one of {sections}, got "{text}"',
                  sections=', '.join(SECTIONS), text=line.text)
    if not vertices:
        _fail(0, 0, 'No VERTICES section')

    fspec = field if field is not None else (spec or default_field)
    fld = fspec if isinstance(fspec, hwlinalg.Field) else \
        hwlinalg.Field.from_spec(fspec)
    quiver = hwalgebra.Quiver(vertices, arrows)
    if length_bound is None:
        length_bound = bound if bound is not None else default_bound
    return hwalgebra.build_path_algebra(
        quiver, [rel for _, rel in rels], fld, length_bound)


def emit_algebra(alg):
    """ The text form of an algebra; parse_algebra reads it back. """
    lines = [
        HEADER,
        'FIELD {spec}'.format(spec=alg.field.spec),
        'VERTICES {verts}'.format(verts=' '.join(alg.quiver.vertices)),
        'ARROWS',
    ]
    lines.extend('{name}: {src} -> {dst}'.format(
        name=arrow.name, src=arrow.source, dst=arrow.target)
        for arrow in alg.quiver.arrows)
    if alg.relations:
        lines.append('RELATIONS')
        lines.extend(format_terms(rel.terms) for rel in alg.relations)
    lines.append('BOUND {bound}'.format(bound=alg.length_bound))
    return '\n'.join(lines) + '\n'


def _vertex_counts(alg, line, items, column):
    res = collections.OrderedDict()
    for item in items:
        name, sep, count = item.partition('=')
        if not sep:
            _fail(line, column, 'Expected "vertex=count", got "{item}"',
                  item=item)
        try:
            alg.vertex_index(name)
            res[name] = res.get(name, 0) + int(count)
        except ValueError:
            _fail(line, column, 'Invalid count in "{item}"', item=item)
        except hwcatch.UnknownVertex:
            _fail(line, column, 'Unknown vertex "{name}"', name=name)
    return res


def parse_module(text, alg):
    """ MODULE, DIMS v=n ..., then one "ARROW name" block of matrix rows
    per arrow acting nontrivially. """
    lines = _lines(text)
    if not lines or lines[0].text.upper() != 'MODULE':
        _fail(lines[0].number if lines else 0, 1, 'Expected MODULE')
    dims = None
    rows = collections.OrderedDict()
    starts = {}
    current = None
    for line in lines[1:]:
        head, _, rest = line.text.partition(' ')
        if head.upper() == 'DIMS':
            counts = _vertex_counts(alg, line.number, rest.split(), 6)
            dims = [counts.get(name, 0) for name in alg.quiver.vertices]
            current = None
        elif head.upper() == 'ARROW':
            name = rest.strip()
            try:
                alg.quiver.arrow(name)
            except hwcatch.HWError:
                _fail(line.number, 7, 'Unknown arrow "{name}"', name=name)
            current = name
            rows[name] = []
            starts[name] = line.number
        elif current is not None:
            try:
                rows[current].append([hwlinalg.QQ.coerce(val)
                                      for val in line.text.split()])
            except ValueError:
                _fail(line.number, 1, 'Invalid matrix row "{text}"',
                      text=line.text)
        else:
            _fail(line.number, 1, 'Unexpected "{text}"', text=line.text)
    if dims is None:
        _fail(lines[0].number, 1, 'No DIMS line')

    action = {}
    for name, data in six.iteritems(rows):
        arrow = alg.quiver.arrow(name)
        nrows = dims[alg.vertex_index(arrow.target)]
        ncols = dims[alg.vertex_index(arrow.source)]
        if len(data) != nrows or any(len(row) != ncols for row in data):
            _fail(starts[name], 1,
                  'Arrow {name} needs a {rows}x{cols} matrix',
                  name=name, rows=nrows, cols=ncols)
        action[name] = hwlinalg.Matrix.from_rows(alg.field, data, cols=ncols)
    return hwmodule.Module(alg, dims, action)


def emit_module(mod):
    """ The text form of a module. """
    alg = mod.algebra
    lines = ['MODULE', 'DIMS {dims}'.format(dims=' '.join(
        '{v}={n}'.format(v=name, n=dim)
        for name, dim in zip(alg.quiver.vertices, mod.dims)))]
    for arrow in alg.quiver.arrows:
        mat = mod.action[arrow.name]
        if mat.is_zero():
            continue
        lines.append('ARROW {name}'.format(name=arrow.name))
        lines.extend(' '.join(_format_coef(val) for val in row)
                     for row in mat.to_lists())
    return '\n'.join(lines) + '\n'


def parse_complex(text, alg):
    """ COMPLEX, "TERM degree v=mult ..." lines and "DIFF degree" blocks
    of "target source: element" lines (summands numbered from 1); the
    component from a summand at v to one at w is a combination of paths
    from w to v. """
    lines = _lines(text)
    if not lines or lines[0].text.upper() != 'COMPLEX':
        _fail(lines[0].number if lines else 0, 1, 'Expected COMPLEX')
    terms, entries = {}, {}
    current = None
    for line in lines[1:]:
        head, _, rest = line.text.partition(' ')
        if head.upper() in ('TERM', 'DIFF'):
            parts = rest.split()
            try:
                deg = int(parts[0])
            except (IndexError, ValueError):
                _fail(line.number, len(head) + 2, 'Expected a degree')
            if head.upper() == 'TERM':
                counts = _vertex_counts(alg, line.number, parts[1:],
                                        len(head) + 2)
                tops = []
                for name, count in six.iteritems(counts):
                    tops.extend([alg.vertex_index(name)] * count)
                terms[deg] = hwhomology.FreeModule(alg, tops)
                current = None
            else:
                current = deg
                entries[deg] = []
            continue
        if current is None:
            _fail(line.number, 1, 'Unexpected "{text}"', text=line.text)
        pos, _, elem = line.text.partition(':')
        try:
            row, col = [int(val) - 1 for val in pos.split()]
        except ValueError:
            _fail(line.number, 1, 'Expected "target source:", got "{pos}"',
                  pos=pos)
        entries[current].append(
            (line.number, row, col,
             parse_terms(elem, line=line.number, column=len(pos) + 2)))

    diffs = {}
    for deg, items in six.iteritems(entries):
        source = terms.get(deg, hwhomology.FreeModule(alg, ()))
        target = terms.get(deg + 1, hwhomology.FreeModule(alg, ()))
        grid = [[{} for _ in source.tops] for _ in target.tops]
        for number, row, col, elem in items:
            if not (0 <= row < target.rank and 0 <= col < source.rank):
                _fail(number, 1, 'No component ({row}, {col}) in the '
                      'differential from degree {deg}', row=row + 1,
                      col=col + 1, deg=deg)
            grid[row][col] = alg.element(elem)
        diffs[deg] = hwhomology.FreeMap(source, target, grid)
    res = hwderived.ProjComplex(alg, terms, diffs)
    if not res.is_complex():
        _fail(lines[0].number, 1, 'The differentials do not square to zero')
    return res


def emit_complex(obj):
    """ The text form of a complex of projectives. """
    alg = obj.algebra
    lines = ['COMPLEX']
    for deg in obj.degrees:
        counts = collections.OrderedDict()
        for top in obj.term(deg).tops:
            name = alg.vertex_name(top)
            counts[name] = counts.get(name, 0) + 1
        lines.append('TERM {deg} {tops}'.format(deg=deg, tops=' '.join(
            '{v}={n}'.format(v=name, n=num)
            for name, num in six.iteritems(counts))))
    for deg in sorted(obj.diffs):
        lines.append('DIFF {deg}'.format(deg=deg))
        for row, comps in enumerate(obj.diffs[deg].entries):
            for col, elem in enumerate(comps):
                if elem:
                    lines.append('{row} {col}: {elem}'.format(
                        row=row + 1, col=col + 1,
                        elem=format_element(alg, elem)))
    return '\n'.join(lines) + '\n'


def parse_object(text, alg, name='X'):
    """ A module or a complex literal, told apart by the first line. """
    lines = _lines(text)
    kind = lines[0].text.upper() if lines else ''
    if kind == 'MODULE':
        return parse_module(text, alg)
    if kind == 'COMPLEX':
        return parse_complex(text, alg)
    return _fail(lines[0].number if lines else 0, 1,
                 'Expected MODULE or COMPLEX in {name}', name=name)


def parse_descriptor(alg, text, depth=hwderived.DEFAULT_RESOLUTION_DEPTH):
    """ Resolve an object descriptor: s3, proj:2, i1[1] or a literal file.
    Returns the object and its display name. """
    text = text.strip()
    if os.path.isfile(text):
        with open(text) as infile:
            name = os.path.splitext(os.path.basename(text))[0]
            return parse_object(infile.read(), alg, name), name
    match = RE_DESCRIPTOR.match(text)
    if match is None:
        _fail(0, 1, 'Invalid object descriptor "{text}"', text=text)
    letter, build = KINDS[match.group('kind').lower()]
    vertex = match.group('vertex')
    try:
        obj = build(alg, vertex)
    except hwcatch.UnknownVertex:
        _fail(0, len(match.group('kind')) + 1, 'Unknown vertex "{vertex}" in '
              '"{text}"', vertex=vertex, text=text)
    name = '{letter}{vertex}'.format(letter=letter, vertex=vertex)
    if match.group('shift') is not None:
        shift = int(match.group('shift'))
        obj = hwderived.shift(hwderived.complex_of_module(obj, depth), shift)
        name = '{name}[{shift}]'.format(name=name, shift=shift)
    return obj, name


def parse_sequence(alg, spec, depth=hwderived.DEFAULT_RESOLUTION_DEPTH):
    """ A sequence given as a file with one descriptor per line or as a
    comma-separated list. """
    if os.path.isfile(spec):
        with open(spec) as infile:
            items = [line.text for line in _lines(infile.read())]
    else:
        items = [item.strip() for item in spec.split(',') if item.strip()]
    if not items:
        _fail(0, 0, 'An empty sequence')
    objects, names = [], []
    for item in items:
        obj, name = parse_descriptor(alg, item, depth)
        objects.append(obj)
        names.append(name)
    return objects, names


def format_graded(dims):
    """ A graded Hom space as a sum of shifted copies of the field; the
    zero space is "0". """
    dims = dict((int(deg), dim) for deg, dim in six.iteritems(dims) if dim)
    if not dims:
        return '0'
    parts = []
    for deg in sorted(dims):
        base = 'k' if dims[deg] == 1 else 'k^{dim}'.format(dim=dims[deg])
        parts.append(base if deg == 0 else '{base}[{shift}]'.format(
            base=base, shift=-deg))
    return ' + '.join(parts)


def _plain(value):
    if isinstance(value, hwjson.JsonObjectImpl):
        return _plain(value.to_json())
    if isinstance(value, dict):
        return dict((key, _plain(val)) for key, val in six.iteritems(value))
    if isinstance(value, (list, tuple)):
        return [_plain(val) for val in value]
    return hwjson.fraction_str(value)


def _render(value, indent, graded, out):
    pad = '  ' * indent
    if isinstance(value, dict):
        if graded:
            out[-1] += format_graded(value)
            return
        if not value:
            out[-1] += '{}'
            return
        for key in sorted(value, key=lambda key: (str(type(key)), key)):
            out.append('{pad}{key}: '.format(pad=pad, key=key))
            _render(value[key], indent + 1, graded or key in GRADED_KEYS,
                    out)
        return
    if isinstance(value, list):
        if not value:
            out[-1] += '[]'
            return
        if graded and all(isinstance(val, dict) for val in value):
            out[-1] += ' | '.join(format_graded(val) for val in value)
            return
        if all(not isinstance(val, (dict, list)) for val in value):
            out[-1] += ', '.join(str(val) for val in value)
            return
        for val in value:
            out.append('{pad}- '.format(pad=pad))
            _render(val, indent + 1, graded, out)
        return
    out[-1] += 'none' if value is None else str(value)


def emit_report(report, as_json=False):
    """ The JSON document (sorted keys) or the indented text form. """
    if as_json:
        return hwjson.dumps(report, indent=2)
    data = _plain(report)
    out = ['command: {cmd}'.format(cmd=data['command']),
           'status: {status}'.format(status=data['status'])]
    if data['witnesses']:
        out.append('witnesses:')
        out.extend('  - {wit}'.format(wit=wit) for wit in data['witnesses'])
    out.append('result: ')
    _render(data['result'], 1, False, out)
    return '\n'.join(line.rstrip() for line in out) + '\n'
