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
""" Tests for the highest weight structures in hwcert.hwweight. """

import collections
import unittest

import ddt
import mock
import pytest

from hwcert import hwalgebra, hwbasic, hwcatch, hwcorpus, hwexcseq
from hwcert import hwmodule, hwtypes, hwweight


def simples(name, verts):
    """ The simple modules at several vertices of a built-in algebra. """
    alg = hwcorpus.load_algebra(name)
    return [hwalgebra.simple_module(alg, vert) for vert in verts]


ExtensionData = collections.namedtuple('ExtensionData', [
    'algebra',
    'quotient',
    'sub',
    'ext_dim',
    'dims',
])

TEST_EXTENSIONS = (
    ExtensionData(algebra='a3', quotient='1', sub='2', ext_dim=1,
                  dims=(1, 1, 0)),
    ExtensionData(algebra='a3', quotient='2', sub='3', ext_dim=1,
                  dims=(0, 1, 1)),
    ExtensionData(algebra='a3', quotient='3', sub='1', ext_dim=0,
                  dims=(0, 0, 1)),
    ExtensionData(algebra='kalck', quotient='1', sub='2', ext_dim=2,
                  dims=(1, 2, 0)),
)

StandardData = collections.namedtuple('StandardData', [
    'verts',
    'status',
    'witnesses',
])

TEST_STANDARIZABLE = (
    StandardData(verts=['1', '2', '3'], status=hwtypes.PASS, witnesses=[]),
    StandardData(verts=['1', '3'], status=hwtypes.PASS, witnesses=[]),
    StandardData(verts=['3', '2', '1'], status=hwtypes.FAIL, witnesses=[
        'Ext^1(S2, S3) has dimension 1',
        'Ext^1(S1, S2) has dimension 1',
    ]),
)


@ddt.ddt
class TestExtensions(unittest.TestCase):
    # pylint: disable=no-self-use
    """ Universal extensions and standarizable sequences. """

    @ddt.data(*TEST_EXTENSIONS)
    def test_universal(self, data):
        """ 0 -> T^k -> R -> Q -> 0 with k = dim Ext^1(Q, T). """
        qmod, tmod = simples(data.algebra, [data.quotient, data.sub])
        res = hwweight.universal_extension(qmod, tmod)
        assert res.ext_dim == data.ext_dim
        assert res.module.dims == data.dims
        assert res.module.dimension == \
            qmod.dimension + data.ext_dim * tmod.dimension
        assert res.projection.rank() == qmod.dimension

    @ddt.data(*TEST_STANDARIZABLE)
    def test_standarizable(self, data):
        """ No radical maps and no Ext^1 going backwards. """
        mods = simples('a3', data.verts)
        res = hwweight.is_standarizable(
            mods, ['S' + vert for vert in data.verts])
        assert res.status == data.status
        assert res.witnesses == data.witnesses


def test_coextension():
    """ 0 -> X -> Y -> Delta^k -> 0 with k = dim Ext^1(Delta, X). """
    s1, s2 = simples('a3', ['1', '2'])
    ymod, mult = hwweight.coextension(s2, s1)
    assert mult == 1
    assert ymod.dims == (1, 1, 0)
    ymod, mult = hwweight.coextension(s1, s2)
    assert mult == 0
    assert ymod is s1


def test_tower():
    """ The simples of A3 build up the projectives. """
    mods = simples('a3', ['1', '2', '3'])
    tower = hwweight.iterated_universal_extension(mods)
    assert [part.dims for part in tower.parts] == [
        (1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert tower.steps == [(1, 1, 1, 1, 2), (1, 2, 1, 1, 3),
                           (2, 1, 1, 1, 2)]
    for _, dim_q, dim_e, mult, dim_p in tower.steps:
        assert dim_p == dim_q + dim_e * mult

    res = hwweight.tilting_checks(tower.parts, tower=tower)
    assert res.status == hwtypes.PASS
    assert res.detail == 'the parts contain every indecomposable projective'

    with pytest.raises(hwcatch.NotStandarizable) as err:
        hwweight.iterated_universal_extension(list(reversed(mods)))
    assert err.value.partial.status == hwtypes.FAIL
    with pytest.raises(hwcatch.NotStandarizable):
        hwweight.iterated_universal_extension([])


def test_tilting_checks():
    """ Two simples with an extension between them are not tilting. """
    res = hwweight.tilting_checks(simples('a3', ['1', '2']))
    assert res.status == hwtypes.FAIL
    assert res.witnesses == ['Ext^1(P1, P2) != 0']


def test_criterion():
    """ The Kalck pair fails on the dual side, A3 passes. """
    res = hwweight.hw_criterion(hwcorpus.kalck_pair())
    assert res.status == hwtypes.FAIL
    assert 'Hom(F2, F1[-1]) != 0' in res.witnesses
    assert not any(wit.startswith('Hom(S3') or wit.startswith('Hom(P')
                   for wit in res.witnesses)

    with pytest.raises(hwcatch.CriterionNotCertified) as err:
        hwweight.heart_presentation(hwcorpus.kalck_pair())
    assert err.value.partial.status == hwtypes.FAIL

    for pair in hwcorpus.a3_pairs():
        assert hwweight.hw_criterion(pair).status == hwtypes.PASS


def test_heart():
    """ The heart glued along the simples of A3 is mod-A3 itself. """
    alg = hwcorpus.load_algebra('a3')
    report = hwweight.heart_presentation(hwcorpus.a3_pairs()[1])
    assert len(report) == 3
    assert report.order == ['1', '2', '3']
    assert report.algebra.dimension == 6
    assert [part.dims for part in report.parts] == [
        (1, 1, 1), (0, 1, 1), (0, 0, 1)]
    total = hwmodule.direct_sum(report.parts, alg).module
    assert hwmodule.is_isomorphic(
        total, hwbasic.regular_module(alg)).isomorphic
    assert [sum(mod.dims) for mod in report.standards] == [1, 1, 1]
    assert [sum(mod.dims) for mod in report.costandards] == [1, 2, 3]
    assert report.flags['criterion'] == hwtypes.PASS
    assert report.flags['tilting'] == hwtypes.PASS
    assert report.endomorphisms.dimension == 6

    info = report.info()
    assert info.dimension == 6
    assert info.order == ['1', '2', '3']
    assert len(info.steps) == 3

    axioms = hwweight.verify_hw_axioms(report)
    for res in (axioms.st1, axioms.st2, axioms.cost1, axioms.cost2):
        assert res.status == hwtypes.PASS
    assert report.flags['axioms'] == hwtypes.PASS


def test_structure_report():
    """ The natural order on A3: simple standards, injective costandards. """
    report = hwcorpus.a3_structure()
    assert report.order == ['1', '2', '3']
    assert [mod.dims for mod in report.standards] == [
        (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [mod.dims for mod in report.costandards] == [
        (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert report.label('Delta', 0) == 'Delta(1)'
    assert report.label('Nabla', 2) == 'Nabla(3)'

    opposite = hwweight.opposite_heart(report)
    assert [mod.dims for mod in opposite.standards] == [
        (1, 0, 0), (1, 1, 0), (1, 1, 1)]

    for check in (hwweight.verify_hw_axioms(report).st1,
                  hwweight.reciprocity_check(report),
                  hwweight.gram_check(report),
                  hwweight.glued_filtration_check(report)):
        assert check.status == hwtypes.PASS

    proj = hwalgebra.projective_module(report.algebra, '1')
    assert hwweight.delta_filtration(proj, report.standards) == [0, 1, 2]
    res = hwweight.delta_filtration_check(proj, report, 'P1')
    assert res.status == hwtypes.PASS
    assert res.detail == "factors ['1', '2', '3']"

    with pytest.raises(hwcatch.ReportIncomplete):
        assert report.endomorphisms is None
    with pytest.raises(hwcatch.UnknownVertex):
        hwweight.structure_report(report.algebra, ['1', '2'])


def test_refinement():
    """ A different order of the A3 vertices changes the standards. """
    report = hwcorpus.a3_structure()
    assert hwweight.refinement_check(report, [0, 1, 2]).status == \
        hwtypes.PASS
    res = hwweight.refinement_check(report, [1, 0, 2])
    assert res.status == hwtypes.FAIL
    assert res.detail == "order ['2', '1', '3']"
    with pytest.raises(hwcatch.DimensionMismatch):
        hwweight.refinement_check(report, [0, 0, 2])

    incomplete = hwweight.HWReport(report.algebra, report.standards, None)
    with pytest.raises(hwcatch.ReportIncomplete):
        incomplete.require_complete()


def test_char_tilting():
    """ T is the sum of the injectives of A3. """
    package = hwweight.characteristic_tilting(hwcorpus.a3_structure())
    assert package.verdict.status == hwtypes.PASS
    assert [part.dims for part in package.parts] == [
        (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert package.steps == [0, 1, 2]
    assert package.delta_filtrations == [[0], [1, 0], [2, 1, 0]]
    assert package.module.dimension == 6

    info = package.info()
    assert info.parts == [[1, 0, 0], [1, 1, 0], [1, 1, 1]]
    assert None not in info.nabla_filtrations


def test_projective_heart():
    """ The reversed order on A3: projective standards, simple costandards. """
    alg = hwcorpus.load_algebra('a3')
    report = hwweight.structure_report(alg, ['3', '2', '1'])
    assert [mod.dims for mod in report.standards] == [
        (0, 0, 1), (0, 1, 1), (1, 1, 1)]
    assert [mod.dims for mod in report.costandards] == [
        (0, 0, 1), (0, 1, 0), (1, 0, 0)]

    info = hwweight.verify_hw_axioms(report, workers=1)
    for check in (info.st1, info.st2, info.cost1, info.cost2):
        assert check.status == hwtypes.PASS

    package = hwweight.characteristic_tilting(report, workers=1)
    assert [part.dims for part in package.parts] == [
        (0, 0, 1), (0, 1, 1), (1, 1, 1)]
    assert package.steps == [0, 0, 0]
    assert package.delta_filtrations == [[0], [1], [2]]
    assert package.verdict.status == hwtypes.PASS


def test_swapped_standards():
    """ Exchanging two standard modules breaks both standard axioms. """
    base = hwcorpus.a3_structure()
    std = base.standards
    report = hwweight.HWReport(base.algebra, [std[1], std[0], std[2]],
                               base.costandards, vertices=base.vertices,
                               order=base.order)
    info = hwweight.verify_hw_axioms(report, workers=1)
    assert info.st1.status == hwtypes.FAIL
    assert 'the top of Delta(1) is not L(1)' in info.st1.witnesses
    assert info.st2.status == hwtypes.FAIL
    assert 'no epimorphism P(1) -> Delta(1)' in info.st2.witnesses
    assert 'no epimorphism P(2) -> Delta(2)' in info.st2.witnesses


def test_tilting_tripwire():
    """ An exhausted extension bound stops the construction. """
    report = hwcorpus.a3_structure()
    with mock.patch('hwcert.hwweight.TRIPWIRE_SLACK', -3):
        with pytest.raises(hwcatch.NonTerminating) as err:
            hwweight.characteristic_tilting(report, workers=1)
    assert 'T(2) needed more than 0 extensions' in str(err.value)
    assert [part.dims for part in err.value.partial] == [(1, 0, 0)]


def test_ringel_dual():
    """ The Ringel dual of A3 is the opposite algebra. """
    alg = hwcorpus.load_algebra('a3')
    ringel = hwweight.ringel_dual(hwcorpus.a3_structure())
    assert ringel.info.dimension == 6
    assert len(ringel.report) == 3
    assert hwbasic.algebra_isomorphism(ringel.presentation.algebra,
                                       alg.opposite()).isomorphic
    assert ringel.info.involution.status != hwtypes.FAIL
    assert ringel.info.dual_heart.status == hwtypes.UNDECIDED


def test_bijection():
    """ The two directed pairs give mutually inverse orders. """
    alg = hwcorpus.load_algebra('a3')
    orders = []
    for pair in hwcorpus.a3_pairs():
        info = hwweight.bijection_check(alg, pair)
        assert info.forward.status == hwtypes.PASS
        assert info.backward.status == hwtypes.PASS
        orders.append(info.order)
    assert orders == [['3', '2', '1'], ['1', '2', '3']]

    kalck = hwcorpus.load_algebra('kalck')
    info = hwweight.bijection_check(kalck, hwcorpus.kalck_pair())
    assert info.forward.status == hwtypes.FAIL
    assert info.backward.status == hwtypes.UNDECIDED
    with pytest.raises(hwcatch.AlgebraMismatch):
        hwweight.bijection_check(alg, hwcorpus.kalck_pair())


def test_right_pair():
    """ A right dual pair is read as the left dual pair backwards. """
    seq = hwexcseq.ExceptionalSequence(simples('a3', ['1', '2', '3']),
                                       ['S1', 'S2', 'S3'])
    pair = hwexcseq.right_dual_sequence(seq)
    assert hwweight.hw_criterion(pair).status == hwtypes.PASS
