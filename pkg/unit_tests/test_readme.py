#
# Copyright (c) 2019 - 2021, 2024  StorPool.
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
""" Keep the README file in step with the code it describes. """

import io
import re

import hwcert
from hwcert import hwcli, hwconfig, hwcorpus, hwformat


RE_TITLE = re.compile(r'^(?P<title>\S.*)\n(?P<rule>[=-])(?P=rule)+$', re.M)

RE_LITERAL = re.compile(r'::\n\n(?P<body>(?:(?:    .*)?\n)+)')


def readme_sections(fname='README.rst'):
    """ Map each section title to the text that follows it. """
    with io.open(fname, mode='r', encoding='UTF-8') as infile:
        text = infile.read()
    titles = list(RE_TITLE.finditer(text))
    assert titles
    return dict(
        (cur.group('title'),
         text[cur.end():nxt.start() if nxt is not None else len(text)])
        for cur, nxt in zip(titles, titles[1:] + [None]))


def literal_block(section):
    """ The first indented literal block of a section, dedented. """
    match = RE_LITERAL.search(section)
    assert match
    return '\n'.join(line[4:] for line in
                     match.group('body').split('\n')).strip() + '\n'


def test_version():
    """ The newest entry in the version history is the package version. """
    sections = readme_sections()
    history = sections['Version history']
    assert history.strip() == ''
    assert hwcert.VERSION in sections
    versions = [title for title in sections
                if re.match(r'^\d+\.\d+\.\d+$', title)]
    newest = max(versions, key=lambda ver: [int(x) for x in ver.split('.')])
    assert newest == hwcert.VERSION


def test_algebra_example():
    """ The sample algebra file is valid and describes A3 modulo c*a. """
    sections = readme_sections()
    alg = hwformat.parse_algebra(literal_block(sections['Algebra files']))
    assert alg.field.spec == 'q'
    assert list(alg.quiver.vertices) == ['1', '2', '3']
    assert alg.dimension == 5
    assert 'RELATIONS\nc*a\n' in hwformat.emit_algebra(alg)

    builtins = re.findall(r'``(\w+)``', sections['Algebra files'].split(
        'built-in algebras')[1])
    assert sorted(builtins) == sorted(hwcorpus.BUILTINS)


def test_command_examples():
    """ Every sample command line is accepted by the argument parser. """
    sections = readme_sections()
    usage = sections['Command-line usage']
    lines = literal_block(usage).splitlines()
    assert lines
    for line in lines:
        words = line.split()
        assert words[0] == 'hwcert'
        args = hwcli.parse_args(words[1:])
        assert args.command in hwcli.COMMANDS

    codes = re.findall(r'(\d+) for', usage)
    assert codes == ['0', '1', '2', str(hwcli.EXIT_USAGE)]


def test_settings():
    """ The documented settings are exactly the configurable ones. """
    text = readme_sections()['Configuration']
    assert sorted(set(re.findall(r'``(HW_\w+)``', text))) == \
        sorted(hwconfig.DEFAULTS)
