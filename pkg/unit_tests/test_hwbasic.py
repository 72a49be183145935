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
""" Tests for the basic algebra presentations in hwcert.hwbasic. """

import pytest

from hwcert import hwalgebra, hwbasic, hwcatch, hwcorpus, hwformat
from hwcert import hwmodule


def projectives(alg):
    """ The indecomposable projectives in vertex order. """
    return [hwalgebra.projective_module(alg, vert)
            for vert in alg.quiver.vertices]


def test_present_projectives():
    """ The endomorphisms of the regular module give back the algebra. """
    alg = hwcorpus.load_algebra('a3')
    pres = hwbasic.present_basic_algebra(projectives(alg))
    assert pres.algebra.dimension == 6
    assert len(pres.algebra.quiver.arrows) == 2
    assert sorted(pres.arrow_maps) == ['b1', 'b2']
    assert all(fmap.is_homomorphism()
               for fmap in pres.arrow_maps.values())
    res = hwbasic.algebra_isomorphism(pres.algebra, alg)
    assert res.isomorphic
    assert sorted(res.certificate['vertices']) == ['1', '2', '3']

    kalck = hwcorpus.load_algebra('kalck')
    pres = hwbasic.present_basic_algebra(projectives(kalck))
    assert pres.algebra.dimension == 9
    assert len(pres.algebra.quiver.arrows) == 4


def test_hom_modules():
    """ Hom(P, X) as a module over the presented algebra. """
    alg = hwcorpus.load_algebra('a3')
    parts = projectives(alg)
    pres = hwbasic.present_basic_algebra(parts)

    assert hwbasic.hom_module(pres, parts[0]).dims == (1, 1, 1)
    assert hwbasic.hom_module(pres, parts[2]).dims == (0, 0, 1)
    simple = hwalgebra.simple_module(alg, '2')
    assert hwbasic.hom_module(pres, simple).dims == (0, 1, 0)

    fmap = hwmodule.hom_space(parts[1], parts[0])[0]
    induced = hwbasic.hom_module_map(pres, fmap)
    assert induced.is_homomorphism()
    assert induced.rank() == 2

    assert hwbasic.regular_module(alg).dims == (1, 2, 3)
    assert hwbasic.algebra_summary(alg) == \
        'dim 6; vertices 1,2,3; arrows [a:1->2, b:2->3]; 0 relations'


def test_bad_parts():
    """ The parts must be pairwise non-isomorphic indecomposables. """
    alg = hwcorpus.load_algebra('a3')
    parts = projectives(alg)
    with pytest.raises(hwcatch.DimensionMismatch):
        hwbasic.present_basic_algebra([])
    with pytest.raises(hwcatch.DecomposableInput) as err:
        hwbasic.present_basic_algebra([parts[0], parts[1], parts[0]])
    assert 'isomorphic' in str(err.value)
    with pytest.raises(hwcatch.DecomposableInput):
        hwbasic.present_basic_algebra([
            hwmodule.direct_sum(parts[:2]).module])


def test_algebra_isomorphism():
    """ Isomorphic and non-isomorphic pairs of basic algebras. """
    alg = hwcorpus.load_algebra('a3')
    res = hwbasic.algebra_isomorphism(alg, alg.opposite())
    assert res.isomorphic
    assert res.certificate['vertices'] == {'1': '3', '2': '2', '3': '1'}

    res = hwbasic.algebra_isomorphism(alg, hwcorpus.load_algebra('kalck'))
    assert not res.isomorphic
    assert res.reason == 'dimensions differ'

    res = hwbasic.algebra_isomorphism(
        alg, hwcorpus.load_algebra('a3', field='fp:2'))
    assert not res.isomorphic
    assert res.reason == 'different base fields'

    sink = hwformat.parse_algebra(
        'VERTICES 1 2 3\nARROWS\na: 1 -> 2\nb: 3 -> 2\n')
    source = hwformat.parse_algebra(
        'VERTICES 1 2 3\nARROWS\na: 2 -> 1\nb: 2 -> 3\n')
    assert sink.dimension == source.dimension == 5
    res = hwbasic.algebra_isomorphism(sink, source)
    assert not res.isomorphic
    assert res.reason.startswith('no vertex bijection')
    assert hwbasic.algebra_isomorphism(sink, sink.opposite().opposite()) \
        .isomorphic
