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
""" Tests for the built-in algebras and the regression suite. """

import random
import unittest

import ddt
import pytest

from hwcert import hwcatch, hwcorpus, hwtypes


@ddt.ddt
class TestCorpus(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Every regression check passes. """

    @ddt.data(*hwcorpus.CHECKS)
    def test_check(self, check):
        """ Run a single check. """
        res = check.func()
        assert res.witnesses == []
        assert res.status == hwtypes.PASS


def test_run_corpus():
    """ The quick run skips the oracle. """
    entries = hwcorpus.run_corpus(quick=True)
    assert [entry.name for entry in entries] == \
        [check.name for check in hwcorpus.CHECKS]
    assert set(entry.status for entry in entries) == set([hwtypes.PASS])


def test_run_errors():
    """ Engine errors become failed or undecided entries. """

    def undecided():
        """ Give up. """
        hwcatch.error(hwcatch.Undecided, 'no luck after {n} tries', n=3)

    def broken():
        """ Fail. """
        hwcatch.error(hwcatch.NotStandarizable, 'rad(E2, E1) != 0')

    entry = hwcorpus._run(hwcorpus.Check('giving-up', undecided))
    assert entry.status == hwtypes.UNDECIDED
    assert entry.detail == 'no luck after 3 tries'
    entry = hwcorpus._run(hwcorpus.Check('broken', broken))
    assert entry.status == hwtypes.FAIL
    assert entry.detail == 'rad(E2, E1) != 0'
    entry = hwcorpus._run(hwcorpus.Check(
        'witnessed', lambda: hwtypes.verdict(['a', 'b'], detail='pairs')))
    assert entry.status == hwtypes.FAIL
    assert entry.detail == 'pairs: a; b'


def test_oracle():
    """ The graded Hom spaces agree with the Ext groups. """
    algebras = [hwcorpus.load_algebra(name) for name in ('a3', 'kalck')]
    res = hwcorpus.oracle_check(pairs=12, seed=5, algebras=algebras)
    assert res.status == hwtypes.PASS
    assert res.detail == '12 pairs up to degree 6'

    first = hwcorpus.random_module(algebras[1], random.Random(9))
    second = hwcorpus.random_module(algebras[1], random.Random(9))
    assert first.dims == second.dims


def test_load_algebra(tmpdir):
    """ Built-in algebras are shared, files are parsed afresh. """
    kalck = hwcorpus.load_algebra('kalck')
    assert hwcorpus.load_algebra('kalck') is kalck
    over_two = hwcorpus.load_algebra('kalck', field='fp:2')
    assert over_two is not kalck
    assert over_two.field.spec == 'fp:2'
    assert over_two.dimension == 9
    assert hwcorpus.load_algebra('pt').num_vertices == 1

    algfile = tmpdir.join('a2.alg')
    algfile.write(hwcorpus.builtin_text('a2'))
    alg = hwcorpus.load_algebra(str(algfile))
    assert alg.dimension == 3
    assert alg is not hwcorpus.load_algebra(str(algfile))

    with pytest.raises(hwcatch.ParseError) as err:
        hwcorpus.builtin_text('e8')
    assert 'Unknown built-in algebra "e8"' in str(err.value)
    with pytest.raises(hwcatch.ParseError) as err:
        hwcorpus.load_algebra(str(tmpdir.join('missing.alg')))
    assert 'Could not read the algebra file' in str(err.value)
