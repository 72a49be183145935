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
""" Tests for the path algebras in hwcert.hwalgebra. """

import collections
import unittest

import ddt
import pytest

from hwcert import hwalgebra, hwcatch, hwlinalg, hwmodule


AlgebraData = collections.namedtuple('AlgebraData', [
    'name',
    'vertices',
    'arrows',
    'relations',
    'field',
    'dimension',
    'cartan',
])

ALGEBRAS = (
    AlgebraData(
        name='kalck',
        vertices=['1', '2', '3'],
        arrows=[('a', '1', '2'), ('b', '1', '2'), ('c', '2', '3'),
                ('d', '3', '1')],
        relations=[((1, 'a*d'),), ((1, 'c*b'),), ((1, 'd*c'),)],
        field='q',
        dimension=9,
        cartan=[[1, 0, 1], [2, 1, 1], [1, 1, 1]],
    ),
    AlgebraData(
        name='a3',
        vertices=['1', '2', '3'],
        arrows=[('a', '1', '2'), ('b', '2', '3')],
        relations=[],
        field='q',
        dimension=6,
        cartan=[[1, 0, 0], [1, 1, 0], [1, 1, 1]],
    ),
    AlgebraData(
        name='z2',
        vertices=['1', '2'],
        arrows=[('a', '1', '2'), ('b', '2', '1')],
        relations=[((1, 'a*b'),), ((1, 'b*a'),)],
        field='q',
        dimension=4,
        cartan=[[1, 1], [1, 1]],
    ),
    AlgebraData(
        name='truncated-loop',
        vertices=['1'],
        arrows=[('x', '1', '1')],
        relations=[((1, 'x*x*x'),)],
        field='fp:3',
        dimension=3,
        cartan=[[3]],
    ),
    AlgebraData(
        name='commutative-square',
        vertices=['1', '2', '3', '4'],
        arrows=[('a', '1', '2'), ('b', '2', '4'), ('c', '1', '3'),
                ('d', '3', '4')],
        relations=[((1, 'b*a'), (-1, 'd*c'))],
        field='fp:2',
        dimension=9,
        cartan=[[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]],
    ),
)


def build(data, length_bound=hwalgebra.DEFAULT_LENGTH_BOUND):
    """ Build the path algebra described by a test table entry. """
    return hwalgebra.build_path_algebra(
        hwalgebra.Quiver(data.vertices, data.arrows),
        [hwalgebra.relation(*terms) for terms in data.relations],
        hwlinalg.Field.from_spec(data.field),
        length_bound)


@ddt.ddt
class TestPathAlgebra(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Test the relation completion and the path basis. """

    @ddt.data(*ALGEBRAS)
    def test_basis(self, data):
        """ Check the dimension, the Cartan matrix and associativity. """
        alg = build(data)
        assert alg.dimension == data.dimension
        assert alg.cartan_matrix() == data.cartan
        assert alg.is_associative()
        assert sum(len(alg.paths(src, dst))
                   for src in range(alg.num_vertices)
                   for dst in range(alg.num_vertices)) == data.dimension

    @ddt.data(*ALGEBRAS)
    def test_modules(self, data):
        """ The projectives and injectives have the Cartan dimensions. """
        alg = build(data)
        cartan = data.cartan
        for idx, vert in enumerate(data.vertices):
            proj = hwalgebra.projective_module(alg, vert)
            assert list(proj.dims) == [row[idx] for row in cartan]
            assert proj is hwalgebra.projective_module(alg, vert)
            inj = hwalgebra.injective_module(alg, vert)
            assert list(inj.dims) == cartan[idx]
            assert hwalgebra.simple_module(alg, vert).dimension == 1

    @ddt.data(*ALGEBRAS)
    def test_opposite(self, data):
        """ The opposite algebra has the transposed Cartan matrix. """
        alg = build(data)
        opp = hwalgebra.opposite_algebra(alg)
        assert opp.dimension == alg.dimension
        assert opp.cartan_matrix() == [list(col) for col in zip(*data.cartan)]
        assert opp.opposite() is alg


def test_kalck_products():
    """ Multiply some elements of the Kalck algebra. """
    alg = build(ALGEBRAS[0])
    assert sorted(alg.path_str(idx) for idx in range(alg.dimension)) == [
        'a', 'b', 'b*d', 'c', 'c*a', 'd', 'e1', 'e2', 'e3',
    ]

    elem_c = alg.element([(1, ('c',))])
    elem_a = alg.element([(1, ('a',))])
    assert alg.multiply(elem_c, elem_a) == alg.element([(1, ('c', 'a'))])
    assert alg.multiply(elem_c, alg.element([(1, ('b',))])) == {}
    assert alg.multiply(elem_a, elem_c) == {}
    assert alg.element([(2, ('a',)), (-2, ('a',))]) == {}

    unit = alg.element([(1, ('e', '2'))])
    assert alg.multiply(elem_c, unit) == elem_c
    assert alg.normal_form(('a', 'd')) == {}
    assert len(alg.multiplication_table()) > alg.dimension


def test_module_relations():
    """ Representations must satisfy the relations. """
    alg = build(ALGEBRAS[0])
    hwmodule.Module(alg, [1, 1, 1], {'a': [[1]], 'c': [[1]]})
    with pytest.raises(hwcatch.IllFormedRelation):
        hwmodule.Module(alg, [1, 1, 1], {'c': [[1]], 'd': [[1]]})
    with pytest.raises(hwcatch.DimensionMismatch):
        hwmodule.Module(alg, [1, 1, 1], {'a': [[1, 1]]})
    with pytest.raises(hwcatch.DimensionMismatch):
        hwmodule.Module(alg, [1, 1], {})


TEST_ERRORS = [
    (
        'short-relation',
        ['1', '2'],
        [('a', '1', '2')],
        [((1, 'a'),)],
        hwcatch.IllFormedRelation,
    ),
    (
        'not-composable',
        ['1', '2', '3'],
        [('a', '1', '2'), ('c', '2', '3')],
        [((1, 'a*c'),)],
        hwcatch.IllFormedRelation,
    ),
    (
        'not-parallel',
        ['1', '2', '3'],
        [('a', '1', '2'), ('b', '1', '2'), ('c', '2', '3'),
         ('d', '3', '1')],
        [((1, 'a*d'), (1, 'c*a'))],
        hwcatch.IllFormedRelation,
    ),
    (
        'unknown-vertex',
        ['1', '2'],
        [('a', '1', '5')],
        [],
        hwcatch.UnknownVertex,
    ),
    (
        'duplicate-arrow',
        ['1', '2'],
        [('a', '1', '2'), ('a', '2', '1')],
        [],
        hwcatch.IllFormedRelation,
    ),
    (
        'free-loop',
        ['1'],
        [('x', '1', '1')],
        [],
        hwcatch.NotFiniteDimensional,
    ),
    (
        'oriented-cycle',
        ['1', '2'],
        [('a', '1', '2'), ('b', '2', '1')],
        [((1, 'a*b*a*b*a*b*a*b*a*b*a*b'),)],
        hwcatch.NotFiniteDimensional,
    ),
]


@ddt.ddt
class TestErrors(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Ill-formed quivers and relations are rejected. """

    @ddt.data(*TEST_ERRORS)
    @ddt.unpack
    def test_errors(self, _name, vertices, arrows, relations, exp_error):
        """ Build the algebra with a small length bound. """
        with pytest.raises(exp_error):
            hwalgebra.build_path_algebra(
                hwalgebra.Quiver(vertices, arrows),
                [hwalgebra.relation(*terms) for terms in relations],
                hwlinalg.QQ, 10)
