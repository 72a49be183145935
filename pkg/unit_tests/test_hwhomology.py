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
""" Tests for the projective resolutions and the Ext groups computed by
the hwcert.hwhomology module. """

import collections
import unittest

import ddt
import mock
import pytest

from hwcert import (hwalgebra, hwcatch, hwcorpus, hwformat, hwhomology,
                    hwmodule)


ResolutionData = collections.namedtuple('ResolutionData', [
    'algebra',
    'vertex',
    'terms',
])

RESOLUTIONS = (
    ResolutionData('kalck', '1', ['P1', 'P2^2', 'P3', 'P1', 'P2']),
    ResolutionData('kalck', '2', ['P2', 'P3', 'P1', 'P2']),
    ResolutionData('kalck', '3', ['P3', 'P1', 'P2']),
    ResolutionData('a3', '1', ['P1', 'P2']),
    ResolutionData('a3', '3', ['P3']),
    ResolutionData('pt', '1', ['P1']),
)

ExtData = collections.namedtuple('ExtData', [
    'algebra',
    'source',
    'target',
    'dims',
])

EXTS = (
    ExtData('kalck', '1', '2', [0, 2, 0, 0, 1, 0]),
    ExtData('kalck', '1', '3', [0, 0, 1, 0, 0, 0]),
    ExtData('kalck', '2', '2', [1, 0, 0, 1, 0, 0]),
    ExtData('kalck', '3', '2', [0, 0, 1, 0, 0, 0]),
    ExtData('kalck', '3', '1', [0, 1, 0, 0, 0, 0]),
    ExtData('a3', '1', '2', [0, 1, 0, 0, 0, 0]),
    ExtData('z2', '1', '1', [1, 0, 1, 0, 1, 0]),
    ExtData('z2', '1', '2', [0, 1, 0, 1, 0, 1]),
)

GlDimData = collections.namedtuple('GlDimData', [
    'algebra',
    'bound',
    'kind',
    'value',
    'witness',
])

GLDIMS = (
    GlDimData('kalck', 64, hwhomology.FINITE, 4,
              'all simple resolutions terminate'),
    GlDimData('a3', 64, hwhomology.FINITE, 1,
              'all simple resolutions terminate'),
    GlDimData('pt', 64, hwhomology.FINITE, 0,
              'all simple resolutions terminate'),
    GlDimData('z2', 64, hwhomology.INFINITE, 2,
              'syzygy 2 of S1 is isomorphic to syzygy 0'),
    GlDimData('kalck', 1, hwhomology.EXCEEDS, 1,
              'S1 has no terminating resolution of length at most 1'),
)


def simple(name, vert):
    """ A simple module over a built-in algebra. """
    return hwalgebra.simple_module(hwcorpus.load_algebra(name), vert)


@ddt.ddt
class TestHomology(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Resolutions, Ext groups and the global dimension probe. """

    @ddt.data(*RESOLUTIONS)
    def test_resolution(self, data):
        """ The minimal resolutions of the simple modules. """
        mod = simple(data.algebra, data.vertex)
        res = hwhomology.minimal_resolution(mod, len(data.terms) + 2)
        assert res.complete
        assert res.term_labels() == data.terms
        assert res.length == len(data.terms) - 1
        assert res.is_minimal()

        if len(data.terms) > 1:
            short = hwhomology.minimal_resolution(mod, len(data.terms) - 2)
            assert short.truncated
            assert short.length is None
            assert short.term_labels() == data.terms[:-1]

    @ddt.data(*EXTS)
    def test_ext(self, data):
        """ Ext dimensions between simple modules. """
        src = simple(data.algebra, data.source)
        dst = simple(data.algebra, data.target)
        assert hwhomology.ext_dims(src, dst, len(data.dims) - 1) == data.dims
        group = hwhomology.ext(src, dst, 1)
        assert group.dimension == data.dims[1]
        assert len(group.cocycles) == data.dims[1]
        for cocycle in group.cocycles:
            fmap = hwhomology.cocycle_to_map(group, cocycle)
            assert fmap.is_homomorphism()
            assert not fmap.is_zero()

    @ddt.data(*GLDIMS)
    def test_gldim(self, data):
        """ Finite, certified infinite and undetermined global dimensions. """
        alg = hwcorpus.load_algebra(data.algebra)
        res = hwhomology.global_dimension_probe(alg, data.bound)
        assert res == hwhomology.GlobalDimension(data.kind, data.value,
                                                 data.witness)


def test_euler_form():
    """ The Euler form matches the alternating sums of Ext dimensions. """
    alg = hwcorpus.load_algebra('kalck')
    dims = dict((vert, [1 if idx == pos else 0 for idx in range(3)])
                for pos, vert in enumerate(alg.quiver.vertices))
    for first in alg.quiver.vertices:
        for second in alg.quiver.vertices:
            exts = hwhomology.ext_dims(simple('kalck', first),
                                       simple('kalck', second), 5)
            alt = sum((-1) ** deg * dim for deg, dim in enumerate(exts))
            assert hwhomology.euler_form(alg, dims[first],
                                         dims[second]) == alt

    with pytest.raises(hwcatch.InfiniteGlobalDimension):
        hwhomology.euler_form(hwcorpus.load_algebra('z2'), [1, 0], [1, 0])
    with pytest.raises(hwcatch.InfiniteGlobalDimension):
        hwhomology.require_finite_global_dimension(
            hwcorpus.load_algebra('z2'))
    assert hwhomology.require_finite_global_dimension(alg) == 4


def test_projective():
    """ Projective modules have no higher Ext groups. """
    alg = hwcorpus.load_algebra('kalck')
    proj = hwalgebra.projective_module(alg, '2')
    res = hwhomology.minimal_resolution(proj, 3)
    assert res.term_labels() == ['P2']
    assert res.length == 0
    for vert in alg.quiver.vertices:
        assert hwhomology.ext_dims(proj, simple('kalck', vert), 2)[1:] == \
            [0, 0]

    cover = hwhomology.projective_cover(simple('kalck', '1'))
    assert cover.free.label() == 'P1'
    assert cover.epi.rank() == 1


def test_lift():
    """ Lift the identity of a simple module to its resolution. """
    mod = simple('kalck', '3')
    res = hwhomology.minimal_resolution(mod, 3)
    lifts = hwhomology.lift_map(hwmodule.ModuleMap.identity(mod), res, res,
                                2)
    assert len(lifts) == 3
    assert all(not lift.is_zero() for lift in lifts)


def test_errors():
    """ Negative degrees and lengths are rejected. """
    mod = simple('kalck', '1')
    with pytest.raises(hwcatch.TruncationTooShallow):
        hwhomology.minimal_resolution(mod, -1)
    with pytest.raises(hwcatch.TruncationTooShallow):
        hwhomology.ext(mod, mod, -1)
    with pytest.raises(hwcatch.AlgebraMismatch):
        hwhomology.ext(mod, simple('a3', '1'), 1)
    with pytest.raises(hwcatch.TruncationTooShallow):
        hwhomology.global_dimension_probe(hwcorpus.load_algebra('a3'), 0)


def test_ext_short_bound():
    """ A resolution length below degree + 1 is extended, not refused. """
    mod = simple('kalck', '2')
    group = hwhomology.ext(mod, mod, 3, max_len=1)
    assert group.dimension == 1
    assert len(group.resolution.terms) == 4
    assert hwhomology.ext(mod, mod, 3, max_len=5).dimension == 1


def test_not_minimal():
    """ A differential outside the radical is reported, once per
    differential, with the resolution as the partial result. """
    alg = hwformat.parse_algebra(hwcorpus.builtin_text('a3'))
    mod = hwalgebra.simple_module(alg, '1')

    with mock.patch('hwcert.hwhomology.FreeMap.is_radical',
                    new=lambda self: False):
        with pytest.raises(hwcatch.NotMinimal) as err:
            hwhomology.minimal_resolution(mod, 3)
    assert err.value.partial.term_labels() == ['P1', 'P2']
    assert 'from term 1' in str(err.value)

    alg = hwformat.parse_algebra(hwcorpus.builtin_text('a3'))
    res = hwhomology.minimal_resolution(hwalgebra.simple_module(alg, '1'), 3)
    assert res.complete
    assert res.is_minimal()
