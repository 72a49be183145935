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
""" Tests for the exceptional sequences and mutations in hwcert.hwexcseq. """

import collections
import unittest

import ddt
import pytest

from hwcert import hwalgebra, hwcatch, hwcorpus, hwderived, hwexcseq
from hwcert import hwmodule, hwtypes


def module(alg, name):
    """ A simple, projective or injective module by its short name. """
    build = {
        'S': hwalgebra.simple_module,
        'P': hwalgebra.projective_module,
        'I': hwalgebra.injective_module,
    }[name[0]]
    return build(alg, name[1:])


def modules(alg_name, names):
    """ Several modules over a built-in algebra. """
    alg = hwcorpus.load_algebra(alg_name)
    return [module(alg, name) for name in names]


LabelData = collections.namedtuple('LabelData', [
    'deg',
    'label',
])

TEST_LABELS = (
    LabelData(deg=0, label='Hom(A, B)'),
    LabelData(deg=1, label='Ext^1(A, B)'),
    LabelData(deg=3, label='Ext^3(A, B)'),
    LabelData(deg=-1, label='Hom(A, B[-1])'),
)

ExcData = collections.namedtuple('ExcData', [
    'algebra',
    'name',
    'status',
    'witness',
])

TEST_EXCEPTIONAL = (
    ExcData(algebra='kalck', name='P1', status=hwtypes.PASS, witness=None),
    ExcData(algebra='kalck', name='S3', status=hwtypes.PASS, witness=None),
    ExcData(algebra='a3', name='I2', status=hwtypes.PASS, witness=None),
    ExcData(algebra='kalck', name='S2', status=hwtypes.FAIL,
            witness='Ext^3(S2, S2) has dimension 1'),
    ExcData(algebra='z2', name='S1', status=hwtypes.FAIL,
            witness='Ext^2(S1, S1) has dimension 1'),
)


@ddt.ddt
class TestExceptional(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Single exceptional objects. """

    @ddt.data(*TEST_LABELS)
    def test_hom_label(self, data):
        """ Name the graded pieces of a Hom space. """
        assert hwexcseq.hom_label('A', 'B', data.deg) == data.label

    @ddt.data(*TEST_EXCEPTIONAL)
    def test_is_exceptional(self, data):
        """ Only the field in degree 0 may appear. """
        obj = modules(data.algebra, [data.name])[0]
        res = hwexcseq.is_exceptional(obj, data.name)
        assert res.status == data.status
        if data.witness is None:
            assert res.witnesses == []
        else:
            assert data.witness in res.witnesses


def test_sequence():
    """ (S3, P2, P1) over the Kalck algebra is exceptional. """
    seq = hwcorpus.kalck_sequence()
    assert len(seq) == 3
    assert seq.names == ['S3', 'P2', 'P1']
    res = hwexcseq.is_exceptional_sequence(seq)
    assert res.status == hwtypes.PASS

    table = seq.table()
    assert table[0][1] == {0: 1, 2: 1}
    assert table[1][0] == {}
    assert table[1][2] == {0: 2}
    assert table[2][1] == {}
    assert table[2][0] == {}
    assert [table[idx][idx] for idx in range(3)] == [{0: 1}] * 3

    serial = hwexcseq.ExceptionalSequence(seq.objects, workers=1)
    assert serial.names == ['E1', 'E2', 'E3']
    assert serial.table() == table

    full = hwexcseq.fullness_necessary_conditions(seq)
    assert full.verdict.status == hwtypes.PASS
    assert full.class_matrix == [[0, 0, 1], [0, 1, 1], [1, 2, 1]]
    assert full.determinant == -1


def test_not_a_sequence():
    """ The backward obstruction is listed before the own ones. """
    res = hwexcseq.is_exceptional_sequence(hwcorpus.kalck_tau())
    assert res.status == hwtypes.FAIL
    assert res.witnesses[0] == 'Ext^2(S3, S2) != 0'
    assert 'Ext^3(S2, S2) has dimension 1' in res.witnesses

    with pytest.raises(hwcatch.NotExceptionalSequence):
        hwexcseq.left_dual_sequence(hwcorpus.kalck_tau())
    with pytest.raises(hwcatch.NotExceptionalSequence):
        hwexcseq.ExceptionalSequence([])

    p2, s3 = modules('kalck', ['P2', 'S3'])
    with pytest.raises(hwcatch.NotExceptionalPair) as err:
        hwexcseq.require_exceptional_pair(p2, s3, names=('P2', 'S3'))
    assert 'Hom(S3, P2) != 0' in str(err.value)
    with pytest.raises(hwcatch.NotExceptionalPair):
        hwexcseq.left_mutation(p2, s3)


def test_fullness():
    """ Too few objects or a degenerate class matrix. """
    res = hwexcseq.fullness_necessary_conditions(modules('a3', ['P3', 'P2']))
    assert res.verdict.status == hwtypes.FAIL
    assert res.verdict.witnesses == ['2 objects for 3 simple modules']
    assert res.determinant is None

    res = hwexcseq.fullness_necessary_conditions(
        modules('kalck', ['P1', 'P1', 'P1']))
    assert res.verdict.witnesses == ['the class matrix has determinant 0']


def test_mutations():
    """ L_S3 P2 and R_P1 P2 over the Kalck algebra. """
    s3, p2, p1 = modules('kalck', ['S3', 'P2', 'P1'])
    res, info = hwexcseq.mutation_info(hwexcseq.LEFT, s3, p2, ['S3', 'P2'])
    assert res.is_complex()
    assert info.identified == {0: 'S2', 1: 'S3'}
    assert info.cohomology == {0: [0, 1, 0], 1: [0, 0, 1]}
    assert info.terms == res.label()
    assert hwexcseq.class_vector(res) == [0, 1, -1]
    assert hwexcseq.module_of(res) is None

    res, info = hwexcseq.mutation_info(hwexcseq.RIGHT, p1, p2, ['P1', 'P2'])
    assert info.kind == hwexcseq.RIGHT
    assert 1 in info.cohomology

    with pytest.raises(hwcatch.TruncationTooShallow):
        hwexcseq.left_mutation(
            hwderived.complex_of_module(module(s3.algebra, 'S1'), 2), s3,
            check=False)


def test_trivial_mutation():
    """ Nothing to mutate over when the Hom spaces vanish. """
    s1, s3 = modules('a3', ['S1', 'S3'])
    res = hwexcseq.left_mutation(s1, s3)
    assert res.label() == 'P3@0'
    assert hwexcseq.module_of(res).dims == (0, 0, 1)


def test_class_vector():
    """ Shifting by one negates the class. """
    s1 = hwexcseq.as_complex(modules('a3', ['S1'])[0])
    assert hwexcseq.class_vector(s1) == [1, 0, 0]
    assert hwexcseq.class_vector(hwderived.shift(s1, 1)) == [-1, 0, 0]
    assert hwexcseq.module_of(hwderived.shift(s1, 1)) is None
    assert hwexcseq.module_of(s1).dims == (1, 0, 0)


def test_directed_duals():
    """ Projectives, simples and injectives are left duals in turn. """
    first, second = hwcorpus.a3_pairs()
    alg = hwcorpus.load_algebra('a3')
    assert first.kind == hwexcseq.LEFT
    assert first.dual_names == ['F1', 'F2', 'F3']

    objs, names = first.dual_in_order()
    assert names == ['F3', 'F2', 'F1']
    for obj, name in zip(objs, ['S1', 'S2', 'S3']):
        assert hwmodule.is_isomorphic(hwexcseq.module_of(obj),
                                      module(alg, name)).isomorphic
    objs, _ = second.dual_in_order()
    for obj, name in zip(objs, ['I3', 'I2', 'I1']):
        assert hwmodule.is_isomorphic(hwexcseq.module_of(obj),
                                      module(alg, name)).isomorphic

    for pair in (first, second):
        res = hwexcseq.verify_hom_duality(pair)
        assert res.verdict.status == hwtypes.PASS
        assert res.table == [[{0: 1} if i == j else {} for j in range(3)]
                             for i in range(3)]
    assert first.dual_hom(0, 0).dims == {0: 1}
    assert hwexcseq.is_exceptional_sequence(
        first.dual_sequence()).status == hwtypes.PASS


def test_right_dual():
    """ The right dual of the simples gives the projectives back. """
    alg = hwcorpus.load_algebra('a3')
    seq = hwexcseq.ExceptionalSequence(modules('a3', ['S1', 'S2', 'S3']),
                                       ['S1', 'S2', 'S3'])
    pair = hwexcseq.right_dual_sequence(seq)
    assert pair.kind == hwexcseq.RIGHT
    objs, names = pair.dual_in_order()
    assert names == ['G3', 'G2', 'G1']
    for obj, name in zip(objs, ['P3', 'P2', 'P1']):
        assert hwmodule.is_isomorphic(hwexcseq.module_of(obj),
                                      module(alg, name)).isomorphic
    assert hwexcseq.verify_hom_duality(pair).verdict.status == \
        hwtypes.PASS

    left = hwexcseq.as_left_pair(pair)
    assert left.kind == hwexcseq.LEFT
    assert left.names == ['G3', 'G2', 'G1']
    assert left.dual_names == ['S3', 'S2', 'S1']
    assert hwexcseq.as_left_pair(left) is left

    with pytest.raises(hwcatch.DimensionMismatch):
        hwexcseq.glued_aisle_membership(module(alg, 'S1'), pair)
    with pytest.raises(hwcatch.DimensionMismatch):
        hwexcseq.DualPair(seq, objs[:2])


def test_aisle():
    """ The glued heart of the projectives is the module category. """
    first, _ = hwcorpus.a3_pairs()
    simple = hwexcseq.as_complex(modules('a3', ['S1'])[0])
    info = hwexcseq.glued_aisle_membership(simple, first, 'S1')
    assert info.in_leq0 and info.in_geq0 and info.in_heart
    assert info.conclusive
    assert info.witnesses == []

    info = hwexcseq.glued_aisle_membership(hwderived.shift(simple, 1),
                                           first)
    assert info.in_leq0
    assert info.in_geq0 is False
    assert info.in_heart is False
    assert info.witnesses == ['Hom(P1, X[-1]) != 0']

    pair = hwcorpus.kalck_pair()
    for name in ('1', '2', '3'):
        info = hwexcseq.glued_aisle_membership(
            module(pair.algebra, 'S' + name), pair, 'S' + name)
        assert info.in_heart
        assert info.conclusive


def test_restriction():
    """ The Kalck dual sequence does not consist of modules. """
    first, _ = hwcorpus.a3_pairs()
    res = hwexcseq.restriction_hypotheses(first)
    assert res.weak.status == hwtypes.PASS
    assert res.strong.status == hwtypes.PASS

    pair = hwcorpus.kalck_pair()
    res = hwexcseq.restriction_hypotheses(pair)
    assert res.strong.status == hwtypes.FAIL
    assert any(wit.startswith('F') for wit in res.strong.witnesses)


def test_pairings():
    """ Euler pairings of projectives against simples. """
    alg = hwcorpus.load_algebra('a3')
    projs = [module(alg, 'P' + name) for name in ('1', '2', '3')]
    simples = [module(alg, 'S' + name) for name in ('1', '2', '3')]
    assert hwexcseq.gram_matrix(projs, simples) == [
        [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    s3, p2 = modules('kalck', ['S3', 'P2'])
    assert hwexcseq.euler_pairing(s3, p2) == 2


def test_recognize():
    """ Simple modules are named first. """
    s3, p2, i2 = modules('kalck', ['S3', 'P2', 'I2'])
    assert hwexcseq.recognize_module(s3) == 'S3'
    assert hwexcseq.recognize_module(p2) == 'P2'
    assert hwexcseq.recognize_module(i2) == 'I2'
    total = hwmodule.direct_sum(modules('kalck', ['S1', 'S2'])).module
    assert hwexcseq.recognize_module(total) == 'dims [1, 1, 0]'


def test_serre():
    """ The double left dual of the simples are their Serre images. """
    seq = hwexcseq.ExceptionalSequence(modules('a3', ['S1', 'S2', 'S3']))
    assert hwexcseq.serre_check(seq).status == hwtypes.PASS
