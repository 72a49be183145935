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
""" Tests for the module operations in hwcert.hwmodule. """

import unittest

import ddt
import pytest

from hwcert import (hwalgebra, hwcatch, hwcorpus, hwformat, hwlinalg,
                    hwmodule)


def kalck():
    """ The three-vertex algebra with a double arrow used throughout. """
    return hwcorpus.load_algebra('kalck')


def proj(vert):
    """ An indecomposable projective over the Kalck algebra. """
    return hwalgebra.projective_module(kalck(), vert)


def simple(vert):
    """ A simple module over the Kalck algebra. """
    return hwalgebra.simple_module(kalck(), vert)


TEST_HOM = [
    ('P1', 'P1', 1),
    ('P2', 'P1', 2),
    ('P3', 'P1', 1),
    ('P1', 'P3', 1),
    ('P3', 'P2', 1),
    ('S1', 'P1', 0),
    ('P1', 'S1', 1),
    ('S3', 'P1', 1),
    ('S2', 'P1', 1),
    ('S1', 'S2', 0),
]


@ddt.ddt
class TestHom(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Hom spaces between projectives and simples. """

    @ddt.data(*TEST_HOM)
    @ddt.unpack
    def test_hom_dim(self, src, dst, exp):
        """ Count the module maps and check that they commute. """
        build = {'P': proj, 'S': simple}
        first = build[src[0]](src[1])
        second = build[dst[0]](dst[1])
        basis = hwmodule.hom_space(first, second)
        assert len(basis) == exp
        assert all(fmap.is_homomorphism() for fmap in basis)
        assert hwmodule.hom_dim(first, second) == exp


def test_structure():
    """ Radical, top, socle and the radical layers. """
    pone = proj('1')
    assert pone.dims == (1, 2, 1)
    rad, incl = hwmodule.radical(pone)
    assert rad.dims == (0, 2, 1)
    assert incl.is_homomorphism()
    quot, _ = hwmodule.top(pone)
    assert quot.dims == (1, 0, 0)
    soc, _ = hwmodule.socle(pone)
    assert soc.dims == (0, 1, 1)
    assert hwmodule.radical_layers(pone) == [(1, 0, 0), (0, 2, 0), (0, 0, 1)]

    _, topmap = hwmodule.top(pone)
    ker, _ = hwmodule.kernel(topmap)
    assert ker.dims == rad.dims
    coker, _ = hwmodule.cokernel(topmap)
    assert coker.is_zero()

    img, _, factor = hwmodule.image(hwmodule.ModuleMap.identity(pone))
    assert img.dims == pone.dims
    assert factor.is_iso()


def test_generated():
    """ The submodules generated by single vectors at vertex 2. """
    pone = proj('1')
    sub, incl = hwmodule.submodule_generated(pone, {1: [(1, 0)]})
    assert sub.dims == (0, 1, 1)
    assert incl.rank() == 2
    sub, _ = hwmodule.submodule_generated(pone, {1: [(0, 1)]})
    assert sub.dims == (0, 1, 0)
    sub, _ = hwmodule.submodule_generated(pone, {0: [(1,)]})
    assert sub.dims == pone.dims


def test_direct_sums():
    """ Direct sums, decompositions and isomorphism checks. """
    alg = kalck()
    total = hwmodule.direct_sum([simple('1'), proj('2'), simple('1')])
    assert total.module.dims == (2, 1, 1)
    assert len(total.injections) == 3
    for inj, prj in zip(total.injections, total.projections):
        assert prj.compose(inj).is_iso()
    assert not hwmodule.is_indecomposable(total.module)

    parts = hwmodule.decompose(total.module)
    assert sorted((part.dims, mult) for part, mult in parts) == [
        ((0, 1, 1), 1),
        ((1, 0, 0), 2),
    ]

    empty = hwmodule.direct_sum([], alg)
    assert empty.module.is_zero()
    assert not hwmodule.is_indecomposable(empty.module)
    assert hwmodule.decompose(empty.module) == []
    with pytest.raises(hwcatch.DimensionMismatch):
        hwmodule.direct_sum([])

    res = hwmodule.is_isomorphic(proj('1'), proj('1'))
    assert res.isomorphic
    res = hwmodule.is_isomorphic(simple('1'), simple('2'))
    assert not res.isomorphic
    assert res.reason == 'dimension vectors differ'

    # the pencils of the double arrow
    first = hwmodule.Module(alg, [1, 1, 0], {'a': [[1]], 'b': [[1]]})
    second = hwmodule.Module(alg, [1, 1, 0], {'a': [[1]], 'b': [[2]]})
    third = hwmodule.Module(alg, [1, 1, 0], {'a': [[2]], 'b': [[2]]})
    res = hwmodule.is_isomorphic(first, second)
    assert not res.isomorphic
    assert res.reason == 'no nonzero maps'
    res = hwmodule.is_isomorphic(third, first)
    assert res.isomorphic
    assert res.certificate.is_iso()
    assert res.certificate.is_homomorphism()


def test_endomorphisms():
    """ Endomorphism algebras and radical maps. """
    end = hwmodule.endomorphism_algebra(proj('1'))
    assert end.dimension == 1
    assert end.is_local()
    assert hwmodule.is_indecomposable(proj('3'))
    assert hwmodule.rad_hom(proj('1'), proj('1')) == 0
    assert hwmodule.rad_hom(proj('2'), proj('1')) == 2

    total = hwmodule.direct_sum([simple('1'), simple('1')]).module
    end = hwmodule.endomorphism_algebra(total)
    assert end.dimension == 4
    assert end.semisimple_dimension() == 4
    assert end.is_associative()
    with pytest.raises(hwcatch.DecomposableInput):
        hwmodule.rad_hom(total, proj('1'))


def test_duality():
    """ The dual of a projective is an injective over the opposite. """
    alg = kalck()
    opp = alg.opposite()
    for vert in alg.quiver.vertices:
        dual = hwmodule.dual_module(proj(vert))
        assert dual.algebra is opp
        inj = hwalgebra.injective_module(opp, vert)
        assert hwmodule.is_isomorphic(dual, inj).isomorphic


def test_mismatch():
    """ Objects over different algebras cannot be combined. """
    other = hwcorpus.load_algebra('a3')
    with pytest.raises(hwcatch.AlgebraMismatch):
        hwmodule.hom_space(proj('1'), hwalgebra.simple_module(other, '1'))

    field = hwlinalg.Field.prime(2)
    alg = hwcorpus.load_algebra('kalck', field=field.spec)
    assert alg.field == field
    assert hwalgebra.projective_module(alg, '1').dims == (1, 2, 1)


KRONECKER = '''
VERTICES 1 2
ARROWS
a: 1 -> 2
b: 1 -> 2
'''

DUAL_NUMBERS = '''
VERTICES 1
ARROWS
x: 1 -> 1
RELATIONS
x*x
'''


def test_prime_field_radical():
    """ Radicals over prime fields, where the trace form degenerates. """
    alg = hwformat.parse_algebra(KRONECKER, field='fp:2')
    sone = hwalgebra.simple_module(alg, '1')
    total = hwmodule.direct_sum([sone, sone]).module
    end = hwmodule.endomorphism_algebra(total)
    assert end.dimension == 4
    assert end.radical_basis() == []
    assert end.semisimple_dimension() == 4
    assert not hwmodule.is_indecomposable(total)
    parts = hwmodule.decompose(total)
    assert [(part.dims, mult) for part, mult in parts] == [((1, 0), 2)]

    alg = hwformat.parse_algebra(KRONECKER, field='fp:3')
    sone = hwalgebra.simple_module(alg, '1')
    total = hwmodule.direct_sum([sone, sone, sone]).module
    assert hwmodule.endomorphism_algebra(total).radical_basis() == []
    parts = hwmodule.decompose(total)
    assert [(part.dims, mult) for part, mult in parts] == [((1, 0), 3)]

    alg = hwformat.parse_algebra(DUAL_NUMBERS, field='fp:2')
    pone = hwalgebra.projective_module(alg, '1')
    assert pone.dims == (2,)
    end = hwmodule.endomorphism_algebra(pone)
    assert end.dimension == 2
    assert len(end.radical_basis()) == 1
    assert end.is_local()
    assert hwmodule.is_indecomposable(pone)
    assert hwmodule.rad_hom(pone, pone) == 1


def test_not_split():
    """ A residue field larger than the base field is not mistaken for a
    decomposition. """
    alg = hwformat.parse_algebra(KRONECKER)
    # b squares to twice the identity, so End is the field Q(sqrt 2)
    mod = hwmodule.Module(alg, [2, 2], {
        'a': [[1, 0], [0, 1]],
        'b': [[0, 2], [1, 0]],
    })
    end = hwmodule.endomorphism_algebra(mod)
    assert end.dimension == 2
    assert end.radical_basis() == []
    assert not end.is_local()

    with pytest.raises(hwcatch.NotSplit) as err:
        hwmodule.is_indecomposable(mod)
    assert 'semisimple dimension 2' in str(err.value)
    with pytest.raises(hwcatch.NotSplit):
        hwmodule.decompose(mod)
    with pytest.raises(hwcatch.NotSplit):
        hwmodule.rad_hom(mod, mod)


def test_pencil_isomorphism():
    """ The exhaustive search through the span of a Hom basis. """
    alg = hwcorpus.load_algebra('a3')
    total = hwmodule.direct_sum([hwalgebra.simple_module(alg, '1'),
                                 hwalgebra.simple_module(alg, '2')]).module
    basis = hwmodule.hom_space(total, total)
    assert len(basis) == 2
    assert not any(fmap.is_iso() for fmap in basis)

    found, exhaustive = hwmodule.pencil_isomorphism(basis)
    assert exhaustive
    assert found.is_iso()
    assert found.is_homomorphism()

    assert hwmodule.pencil_isomorphism(basis[:1]) == (None, True)
    assert hwmodule.pencil_isomorphism(basis, limit=1) == (None, False)
    assert hwmodule.pencil_isomorphism([]) == (None, True)
