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
""" Highest weight structures from exceptional sequences.

A standarizable sequence of modules (E_1, ..., E_n) yields, by iterated
universal extensions, a tilting generator P = P_1 + ... + P_n; the heart
is then mod-B for B = End(P), with standard modules Hom(P, E_i) and
costandard modules Hom(P, F_i).  The weights are the positions in the
sequence, so every order reported here is a total order refining the
partial order of the structure. """

import collections
import logging
import random
from multiprocessing.pool import ThreadPool

import six

from . import hwalgebra
from . import hwbasic
from . import hwcatch
from . import hwderived
from . import hwexcseq
from . import hwhomology
from . import hwlinalg
from . import hwmodule
from . import hwtypes


LOG = logging.getLogger(__name__)

DEFAULT_ISO_TRIES = hwmodule.DEFAULT_ISO_TRIES
DEFAULT_SEED = hwmodule.DEFAULT_SEED
DEFAULT_WORKERS = hwexcseq.DEFAULT_WORKERS

TRIPWIRE_SLACK = 8

UniversalExtension = collections.namedtuple('UniversalExtension', [
    'module',
    'ext_dim',
    'projection',
])

Tower = collections.namedtuple('Tower', [
    'parts',
    'steps',
])

RingelDual = collections.namedtuple('RingelDual', [
    'presentation',
    'report',
    'package',
    'info',
])


def _pool_map(func, items, workers):
    items = list(items)
    if workers > 1 and len(items) > 1:
        pool = ThreadPool(min(workers, len(items)))
        try:
            return pool.map(func, items)
        finally:
            pool.close()
            pool.join()
    return [func(item) for item in items]


def _top_vertices(mod):
    tdims = hwmodule.top(mod)[0].dims
    return [vert for vert, dim in enumerate(tdims) if dim]


def _top_label(mod):
    alg = mod.algebra
    return '+'.join(alg.vertex_name(vert) for vert in _top_vertices(mod))


def _find_epi(src, dst, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ An epimorphism src -> dst among the basis maps and seeded random
    combinations of them, or None. """
    if dst.is_zero():
        return hwmodule.ModuleMap.zero(src, dst)
    basis = hwmodule.hom_space(src, dst)
    if not basis:
        return None
    for fmap in basis:
        if fmap.rank() == dst.dimension:
            return fmap
    if len(basis) < 2:
        return None
    rng = random.Random(seed)
    field = src.field
    for _ in range(tries):
        fmap = hwmodule.combine_maps(
            basis, [field.random_element(rng) for _ in basis], src, dst)
        if fmap.rank() == dst.dimension:
            return fmap
    return None


def is_standarizable(seq, names=None, workers=DEFAULT_WORKERS):
    """ Check rad(E_i, E_j) = 0 and Ext^1(E_i, E_j) = 0 for i >= j. """
    seq = list(seq)
    if names is None:
        names = ['E{idx}'.format(idx=idx + 1) for idx in range(len(seq))]
    hwmodule.check_same_algebra(*seq)
    pairs = [(i, j) for i in range(len(seq)) for j in range(i + 1)]

    def compute(pair):
        i, j = pair
        return (hwmodule.rad_hom(seq[i], seq[j]),
                hwhomology.ext(seq[i], seq[j], 1).dimension)

    witnesses = []
    for (i, j), (rad, ext1) in zip(pairs, _pool_map(compute, pairs,
                                                     workers)):
        if rad:
            witnesses.append('rad({src}, {dst}) has dimension {dim}'.format(
                src=names[i], dst=names[j], dim=rad))
        if ext1:
            witnesses.append('{label} has dimension {dim}'.format(
                label=hwexcseq.hom_label(names[i], names[j], 1), dim=ext1))
    return hwtypes.verdict(witnesses)


def universal_extension(q, t):
    """ The universal extension 0 -> t^k -> r -> q -> 0, k = dim
    Ext^1(q, t), given by the canonical element of Ext^1(q, t^k). """
    hwmodule.check_same_algebra(q, t)
    if q.is_zero():
        return UniversalExtension(q, 0, hwmodule.ModuleMap.identity(q))
    group = hwhomology.ext(q, t, 1)
    size = group.dimension
    if size == 0:
        return UniversalExtension(q, 0, hwmodule.ModuleMap.identity(q))

    res = group.resolution
    alg = q.algebra
    diff = res.differentials[0].to_module_map()
    total = hwmodule.direct_sum([t] * size + [res.terms[0].module], alg)
    fmap = total.injections[size].compose(diff).scale(-1)
    for idx, cocycle in enumerate(group.cocycles):
        fmap = fmap + total.injections[idx].compose(
            hwhomology.cocycle_to_map(group, cocycle))
    rmod, proj = hwmodule.cokernel(fmap)
    LOG.debug('Universal extension by %d copies: dimension %d -> %d',
              size, q.dimension, rmod.dimension)

    expected = q.dimension + size * t.dimension
    if rmod.dimension != expected:
        hwcatch.error(hwcatch.ConnectingMapError,
                      'The universal extension has dimension {got} '
                      'instead of {expected}', got=rmod.dimension,
                      expected=expected)
    if hwmodule.hom_dim(t, t) != 1 or \
            hwmodule.hom_dim(rmod, t) != hwmodule.hom_dim(q, t):
        hwcatch.error(hwcatch.ConnectingMapError,
                      'Hom({k} copies, T) -> Ext^1(Q, T) is not bijective',
                      k=size)
    return UniversalExtension(rmod, size, proj)


def coextension(x, delta):
    """ The universal extension 0 -> x -> y -> delta^k -> 0 with
    k = dim Ext^1(delta, x); returns (y, k). """
    hwmodule.check_same_algebra(x, delta)
    group = hwhomology.ext(delta, x, 1)
    size = group.dimension
    if size == 0:
        return x, 0
    res = group.resolution
    alg = x.algebra
    start = res.terms[1].module
    diff = res.differentials[0].to_module_map()
    source = hwmodule.direct_sum([start] * size, alg)
    target = hwmodule.direct_sum([x] + [res.terms[0].module] * size, alg)
    fmap = hwmodule.ModuleMap.zero(source.module, target.module)
    for idx, cocycle in enumerate(group.cocycles):
        gmap = hwhomology.cocycle_to_map(group, cocycle)
        fmap = fmap + target.injections[0].compose(gmap).compose(
            source.projections[idx])
        fmap = fmap - target.injections[idx + 1].compose(diff).compose(
            source.projections[idx])
    ymod, _ = hwmodule.cokernel(fmap)
    expected = x.dimension + size * delta.dimension
    if ymod.dimension != expected:
        hwcatch.error(hwcatch.ConnectingMapError,
                      'The coextension has dimension {got} instead of '
                      '{expected}', got=ymod.dimension, expected=expected)
    return ymod, size


def _tower(seq, steps):
    if len(seq) == 1:
        return [seq[0]]
    last = seq[-1]
    parts = []
    for idx, qmod in enumerate(_tower(seq[:-1], steps)):
        ext = universal_extension(qmod, last)
        steps.append((idx + 1, qmod.dimension, last.dimension, ext.ext_dim,
                      ext.module.dimension))
        parts.append(ext.module)
    parts.append(last)
    return parts


def iterated_universal_extension(seq, names=None, check=True):
    """ P_n = E_n and P_i = the universal extension of Q_i by E_n, where
    Q_1, ..., Q_(n-1) are built from the first n - 1 objects. """
    seq = list(seq)
    if not seq:
        hwcatch.error(hwcatch.NotStandarizable,
                      'Cannot extend an empty sequence')
    if check:
        res = is_standarizable(seq, names)
        if not res.passed:
            hwcatch.error(hwcatch.NotStandarizable,
                          'The sequence is not standarizable: {why}',
                          partial=res, why='; '.join(res.witnesses))
    steps = []
    parts = _tower(seq, steps)
    LOG.debug('Iterated universal extension: parts of dimensions %s',
              [part.dimension for part in parts])
    return Tower(parts=parts, steps=steps)


def hw_criterion(pair):
    """ Hom(E_i, E_j[l]) = 0 and Hom(F_i, F_j[l]) = 0 for all l < 0. """
    pair = hwexcseq.as_left_pair(pair)
    size = len(pair.dual)
    witnesses, undecided = [], []
    seq = pair.sequence
    seq.fill()
    sides = (
        (seq.hom, pair.names),
        (pair.dual_hom, pair.dual_names),
    )
    for hom, names in sides:
        for i in range(size):
            for j in range(size):
                ghom = hom(i, j)
                for deg in ghom.degrees():
                    if deg < 0:
                        witnesses.append('{label} != 0'.format(
                            label=hwexcseq.hom_label(names[i], names[j],
                                                     deg)))
                if not hwexcseq.negative_degrees_covered(ghom):
                    undecided.append(
                        'Hom*({src}, {dst}): negative degrees outside of '
                        '{window}'.format(src=names[i], dst=names[j],
                                          window=list(ghom.window)))
    return hwtypes.verdict(witnesses, undecided)


class HWReport(object):
    """ A highest weight structure on mod-B.

    standards[w] and costandards[w] belong to the weight w, the position
    in the total order; vertices[w] is the vertex of B at the top of
    standards[w]. """

    def __init__(self, algebra, standards, costandards, vertices=None,
                 order=None, pair=None, tower=None, presentation=None,
                 flags=None):
        self.algebra = algebra
        self.standards = standards
        self.costandards = costandards
        size = len(standards) if standards is not None else 0
        self.vertices = list(vertices) if vertices is not None else \
            list(range(size))
        self.order = list(order) if order is not None else \
            [algebra.vertex_name(vert) for vert in self.vertices]
        self.pair = pair
        self.tower = tower
        self.presentation = presentation
        self.flags = dict(flags or {})
        self._endomorphisms = None

    def __len__(self):
        return len(self.vertices)

    @property
    def parts(self):
        """ The parts of the tilting generator, if built. """
        if self.presentation is None:
            return None
        return self.presentation.parts

    @property
    def endomorphisms(self):
        """ End(P) as a structure constant algebra. """
        if self._endomorphisms is None:
            if self.parts is None:
                hwcatch.error(hwcatch.ReportIncomplete,
                              'The report has no tilting generator')
            self._endomorphisms = hwmodule.endomorphism_algebra(
                hwmodule.direct_sum(self.parts).module)
        return self._endomorphisms

    def weight_of(self, vert):
        """ The weight whose standard module has its top at a vertex. """
        return self.vertices.index(vert)

    def label(self, kind, weight):
        """ A name such as Delta(2). """
        return '{kind}({name})'.format(kind=kind, name=self.order[weight])

    def require_complete(self):
        """ Make sure both the standards and the costandards are known. """
        if self.standards is None or self.costandards is None:
            hwcatch.error(hwcatch.ReportIncomplete,
                          'The report lacks standard or costandard modules')
        if len(self.standards) != len(self.vertices) or \
                len(self.costandards) != len(self.vertices):
            hwcatch.error(hwcatch.ReportIncomplete,
                          'The report has {n} weights but {s} standard and '
                          '{c} costandard modules', n=len(self.vertices),
                          s=len(self.standards), c=len(self.costandards))

    def info(self):
        """ The serializable summary. """
        alg = self.algebra
        parts = self.parts or []
        steps = self.tower.steps if self.tower is not None else []
        return hwtypes.HeartInfo(
            algebra=hwbasic.algebra_summary(alg),
            parts=[list(part.dims) for part in parts],
            dimension=alg.dimension,
            cartan=alg.cartan_matrix(),
            standards=[list(mod.dims) for mod in self.standards or []],
            costandards=[list(mod.dims) for mod in self.costandards or []],
            order=list(self.order),
            steps=[list(step) for step in steps],
            flags=dict(self.flags))

    def __repr__(self):
        return 'HWReport({order}, dim B = {dim})'.format(
            order=self.order, dim=self.algebra.dimension)


def _costandard_check(parts, duals, costandards, names):
    witnesses, undecided = [], []
    for i, part in enumerate(parts):
        src = hwexcseq.as_complex(part)
        for j, dual in enumerate(duals):
            ghom = hwderived.graded_hom(src, hwexcseq.as_complex(dual))
            for deg in ghom.degrees():
                if deg != 0:
                    witnesses.append('{label} != 0'.format(
                        label=hwexcseq.hom_label(
                            'P{idx}'.format(idx=i + 1), names[j], deg)))
            if ghom.dims.get(0, 0) != costandards[j].dims[i]:
                witnesses.append(
                    'Hom(P{idx}, {name}) has dimension {got}, expected '
                    '{want}'.format(idx=i + 1, name=names[j],
                                    got=ghom.dims.get(0, 0),
                                    want=costandards[j].dims[i]))
            if not ghom.complete:
                undecided.append('Hom*(P{idx}, {name}): degrees outside of '
                                 '{window}'.format(idx=i + 1, name=names[j],
                                                   window=list(ghom.window)))
    return hwtypes.verdict(witnesses, undecided)


def heart_presentation(pair, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ Build the tilting generator of the glued heart and present the
    heart as mod-End(P). """
    pair = hwexcseq.as_left_pair(pair)
    crit = hw_criterion(pair)
    if not crit.passed:
        hwcatch.error(hwcatch.CriterionNotCertified,
                      'The highest weight criterion is {status}: {why}',
                      partial=crit, status=crit.status,
                      why='; '.join(crit.witnesses))
    modules, duals = [], []
    for names, objs, dest in ((pair.names, pair.objects, modules),
                              (pair.dual_names, pair.dual, duals)):
        for name, obj in zip(names, objs):
            mod = hwexcseq.module_of(obj)
            if mod is None:
                hwcatch.error(hwcatch.NonModuleStandard,
                              '{name} has cohomology outside of degree 0',
                              partial=crit, name=name)
            dest.append(mod)

    tower = iterated_universal_extension(modules, pair.names)
    pres = hwbasic.present_basic_algebra(tower.parts, tries, seed)
    standards = [hwbasic.hom_module(pres, mod) for mod in modules]
    costandards = [hwbasic.hom_module(pres, mod) for mod in duals]
    flags = {
        'criterion': crit.status,
        'costandards': _costandard_check(tower.parts, duals, costandards,
                                         pair.dual_names).status,
        'tilting': tilting_checks(tower.parts, tower=tower).status,
    }
    LOG.info('Presented the heart of %s: dimension %d, flags %s',
             pair.names, pres.algebra.dimension, flags)
    return HWReport(pres.algebra, standards, costandards,
                    order=[_top_label(mod) for mod in modules], pair=pair,
                    tower=tower, presentation=pres, flags=flags)


def structure_report(alg, order=None):
    """ The highest weight structure of a basic algebra for a total order
    of its vertices (given by name, smallest weight first): Delta(v) is
    the largest quotient of P(v) without composition factors above v,
    and Nabla(v) is obtained in the same way over the opposite algebra. """
    if order is None:
        order = list(alg.quiver.vertices)
    vertices = [alg.vertex_index(name) for name in order]
    if sorted(vertices) != list(range(alg.num_vertices)):
        hwcatch.error(hwcatch.UnknownVertex,
                      'The order {order} does not list every vertex once',
                      order=list(order))

    def truncate(algebra, weight):
        proj = hwalgebra.projective_module(algebra, order[weight])
        gens = {}
        for vert in vertices[weight + 1:]:
            if proj.dims[vert]:
                gens[vert] = hwlinalg.Matrix.identity(
                    algebra.field, proj.dims[vert]).columns()
        _, incl = hwmodule.submodule_generated(proj, gens)
        return hwmodule.cokernel(incl)[0]

    opp = alg.opposite()
    standards = [truncate(alg, weight) for weight in range(len(order))]
    costandards = [hwmodule.dual_module(truncate(opp, weight))
                   for weight in range(len(order))]
    return HWReport(alg, standards, costandards, vertices=vertices,
                    order=order)


def opposite_heart(report):
    """ The opposite structure on mod-B^op: the standard modules are the
    duals of the costandard ones and vice versa. """
    report.require_complete()
    return HWReport(report.algebra.opposite(),
                    [hwmodule.dual_module(mod) for mod in report.costandards],
                    [hwmodule.dual_module(mod) for mod in report.standards],
                    vertices=report.vertices, order=report.order)


def delta_filtration(x, deltas, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ Peel standard quotients off x, smallest weight first, and return
    the weights in peel order, or None if the greedy search gets stuck. """
    tops = [frozenset(_top_vertices(delta)) for delta in deltas]
    peeled = []
    cur = x
    while not cur.is_zero():
        present = frozenset(_top_vertices(cur))
        for weight, delta in enumerate(deltas):
            if not tops[weight] or not tops[weight] <= present:
                continue
            epi = _find_epi(cur, delta, tries, seed)
            if epi is None:
                continue
            cur = hwmodule.kernel(epi)[0]
            peeled.append(weight)
            break
        else:
            LOG.debug('Standard filtration stuck after %s with dimension '
                      'vector %s left', peeled, list(cur.dims))
            return None
    return peeled


def delta_filtration_check(x, report, name='X', tries=DEFAULT_ISO_TRIES,
                           seed=DEFAULT_SEED):
    """ A filtration by the standard modules of a report, certified either
    by the greedy peel or by Ext^1(x, Nabla(w)) = 0 for all w. """
    report.require_complete()
    filt = delta_filtration(x, report.standards, tries, seed)
    if filt is not None:
        return hwtypes.verdict(detail='factors {factors}'.format(
            factors=[report.order[w] for w in filt]))
    witnesses = []
    for weight, nabla in enumerate(report.costandards):
        if hwhomology.ext(x, nabla, 1).dimension:
            witnesses.append('{label} != 0'.format(
                label=hwexcseq.hom_label(name, report.label('Nabla', weight),
                                         1)))
    if witnesses:
        return hwtypes.verdict(witnesses)
    return hwtypes.verdict(undecided=[
        'no greedy filtration of {name} found although Ext^1 vanishes'
        .format(name=name)])


def _st1(report):
    """ The top of Delta(w) is L(w), the radical has smaller weights. """
    witnesses = []
    for weight, delta in enumerate(report.standards):
        vert = report.vertices[weight]
        tdims = hwmodule.top(delta)[0].dims
        expected = [1 if idx == vert else 0 for idx in range(len(tdims))]
        if list(tdims) != expected:
            witnesses.append('the top of {label} is not L({name})'.format(
                label=report.label('Delta', weight),
                name=report.order[weight]))
            continue
        rad = hwmodule.radical(delta)[0]
        for idx, dim in enumerate(rad.dims):
            if dim and report.weight_of(idx) >= weight:
                witnesses.append(
                    '{label} has L({name}) in its radical'.format(
                        label=report.label('Delta', weight),
                        name=report.order[report.weight_of(idx)]))
    return hwtypes.verdict(witnesses)


def _st2(report, tries, seed):
    """ P(w) -> Delta(w) has a kernel filtered by Delta(u), u > w. """
    alg = report.algebra
    witnesses = []
    for weight, delta in enumerate(report.standards):
        vert = report.vertices[weight]
        proj = hwalgebra.projective_module(alg, alg.vertex_name(vert))
        epi = _find_epi(proj, delta, tries, seed)
        if epi is None:
            witnesses.append('no epimorphism P({name}) -> {label}'.format(
                name=report.order[weight],
                label=report.label('Delta', weight)))
            continue
        filt = delta_filtration(hwmodule.kernel(epi)[0], report.standards,
                                tries, seed)
        if filt is None:
            witnesses.append('the kernel of P({name}) -> {label} has no '
                             'standard filtration'.format(
                                 name=report.order[weight],
                                 label=report.label('Delta', weight)))
            continue
        for other in filt:
            if other <= weight:
                witnesses.append(
                    'the kernel of P({name}) -> {label} has a factor '
                    '{factor}'.format(name=report.order[weight],
                                      label=report.label('Delta', weight),
                                      factor=report.label('Delta', other)))
    return hwtypes.verdict(witnesses)


def verify_hw_axioms(report, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED,
                     workers=DEFAULT_WORKERS):
    """ Check the axioms of a highest weight category inside mod-B, the
    costandard ones through the opposite structure. """
    report.require_complete()
    opposite = opposite_heart(report)
    checks = [
        ('st1', lambda: _st1(report)),
        ('st2', lambda: _st2(report, tries, seed)),
        ('cost1', lambda: _st1(opposite)),
        ('cost2', lambda: _st2(opposite, tries, seed)),
    ]

    def run(check):
        name, func = check
        box = {}

        def handle(res):
            box[name] = res

        return box, hwcatch.hw_catch(handle, func, None)

    results, exc = {}, None
    for box, err in _pool_map(run, checks, workers):
        results.update(box)
        if exc is None:
            exc = err
    hwcatch.hw_caught(exc, 'axioms', results)

    info = hwtypes.AxiomInfo(**results)
    report.flags['axioms'] = hwtypes.combine_status(
        res.status for res in six.itervalues(results))
    return info


def reciprocity_check(report, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ (P(v) : Delta(w)) = [Nabla(w) : L(v)] for all the weights. """
    report.require_complete()
    alg = report.algebra
    witnesses = []
    for weight, vert in enumerate(report.vertices):
        proj = hwalgebra.projective_module(alg, alg.vertex_name(vert))
        filt = delta_filtration(proj, report.standards, tries, seed)
        if filt is None:
            witnesses.append('P({name}) has no standard filtration'.format(
                name=report.order[weight]))
            continue
        counts = collections.Counter(filt)
        for other, nabla in enumerate(report.costandards):
            if counts[other] != nabla.dims[vert]:
                witnesses.append(
                    '(P({name}) : {delta}) = {got} but [{nabla} : L({name})]'
                    ' = {want}'.format(name=report.order[weight],
                                       delta=report.label('Delta', other),
                                       nabla=report.label('Nabla', other),
                                       got=counts[other],
                                       want=nabla.dims[vert]))
    return hwtypes.verdict(witnesses)


def gram_check(report):
    """ The Euler pairings of the standards form an upper unitriangular
    matrix, those of the standards with the costandards the identity. """
    report.require_complete()
    deltas = [hwexcseq.as_complex(mod) for mod in report.standards]
    nablas = [hwexcseq.as_complex(mod) for mod in report.costandards]
    witnesses = []
    for title, matrix, strict in (
            ('Delta', hwexcseq.gram_matrix(deltas, deltas), False),
            ('Nabla', hwexcseq.gram_matrix(deltas, nablas), True)):
        for i, row in enumerate(matrix):
            for j, val in enumerate(row):
                want = 1 if i == j else 0
                if (i > j or strict or i == j) and val != want:
                    witnesses.append(
                        'chi({delta}, {other}) = {val}'.format(
                            delta=report.label('Delta', i),
                            other=report.label(title, j), val=val))
    return hwtypes.verdict(witnesses)


class TiltingPackage(object):
    """ The indecomposable tilting modules T(w) with their filtrations. """

    def __init__(self, report, parts, steps, delta_filtrations,
                 nabla_filtrations, verdict):
        self.report = report
        self.parts = parts
        self.steps = steps
        self.delta_filtrations = delta_filtrations
        self.nabla_filtrations = nabla_filtrations
        self.verdict = verdict
        self._module = None

    @property
    def module(self):
        """ The characteristic tilting module T = T(1) + ... + T(n). """
        if self._module is None:
            self._module = hwmodule.direct_sum(
                self.parts, self.report.algebra).module
        return self._module

    def info(self):
        """ The serializable summary. """
        return hwtypes.TiltingInfo(
            parts=[list(part.dims) for part in self.parts],
            steps=list(self.steps),
            delta_filtrations=[list(filt) for filt in self.delta_filtrations],
            nabla_filtrations=[None if filt is None else list(filt)
                               for filt in self.nabla_filtrations],
            verdict=self.verdict)


def characteristic_tilting(report, tries=DEFAULT_ISO_TRIES,
                           seed=DEFAULT_SEED, workers=DEFAULT_WORKERS):
    """ Build T(w) from Delta(w) by universal extensions with Delta(u),
    u < w, sweeping u downwards until Ext^1(Delta(u), T(w)) vanishes. """
    report.require_complete()
    deltas, nablas = report.standards, report.costandards
    size = len(deltas)
    table = [hwhomology.ext(first, second, 1).dimension
             for first in deltas for second in deltas]
    bound = size * max(table + [0]) + TRIPWIRE_SLACK

    parts, steps, filtrations = [], [], []
    for weight in range(size):
        cur = deltas[weight]
        filt = [weight]
        count = 0
        for lower in reversed(range(weight)):
            while True:
                cur, mult = coextension(cur, deltas[lower])
                if mult == 0:
                    break
                filt.extend([lower] * mult)
                count += 1
                if count > bound:
                    hwcatch.error(hwcatch.NonTerminating,
                                  'T({name}) needed more than {bound} '
                                  'extensions', partial=parts,
                                  name=report.order[weight], bound=bound)
        LOG.debug('T(%s): %d extensions, dimension vector %s',
                  report.order[weight], count, list(cur.dims))
        parts.append(cur)
        steps.append(count)
        filtrations.append(filt)

    opposite = opposite_heart(report)

    def nabla_filtration(part):
        return delta_filtration(hwmodule.dual_module(part),
                                opposite.standards, tries, seed)

    def orthogonality(item):
        tidx, uidx = item
        found = []
        if hwhomology.ext(deltas[uidx], parts[tidx], 1).dimension:
            found.append('Ext^1({delta}, T({name})) != 0'.format(
                delta=report.label('Delta', uidx),
                name=report.order[tidx]))
        if hwhomology.ext(parts[tidx], nablas[uidx], 1).dimension:
            found.append('Ext^1(T({name}), {nabla}) != 0'.format(
                nabla=report.label('Nabla', uidx),
                name=report.order[tidx]))
        return found

    nabla_filts = _pool_map(nabla_filtration, parts, workers)
    witnesses = []
    for found in _pool_map(orthogonality, [(t, u) for t in range(size)
                                           for u in range(size)], workers):
        witnesses.extend(found)
    for weight, filt in enumerate(nabla_filts):
        if filt is None:
            witnesses.append('no costandard filtration of T({name}) found'
                             .format(name=report.order[weight]))
    return TiltingPackage(report, parts, steps, filtrations, nabla_filts,
                          hwtypes.verdict(witnesses))


def _same_standards(first, second, tries, seed):
    """ Compare the standard modules of two structures on one algebra as
    sets of isomorphism classes. """
    witnesses, undecided = [], []
    for weight, mod in enumerate(first.standards):
        found = False
        for other in second.standards:
            try:
                if hwmodule.is_isomorphic(mod, other, tries,
                                          seed).isomorphic:
                    found = True
                    break
            except hwcatch.Undecided:
                undecided.append('could not compare {label}'.format(
                    label=first.label('Delta', weight)))
                found = None
                break
        if found is False:
            witnesses.append('{label} with dimension vector {dims} has no '
                             'match'.format(label=first.label('Delta',
                                                              weight),
                                            dims=list(mod.dims)))
    return witnesses, undecided


def _iso_verdict(first, second, tries, seed, detail):
    try:
        iso = hwbasic.algebra_isomorphism(first, second, tries, seed)
    except hwcatch.Undecided as err:
        return hwtypes.verdict(undecided=[str(err)], detail=detail)
    if iso.isomorphic:
        return hwtypes.verdict(detail=detail)
    return hwtypes.verdict([iso.reason], detail=detail)


def _dual_heart(report, ringel, tries, seed):
    detail = 'the heart glued along the dual sequence'
    if report.pair is None:
        return hwtypes.verdict(undecided=['not applicable: no dual pair'],
                               detail=detail)
    objs, names = report.pair.dual_in_order()
    modules = [hwexcseq.module_of(obj) for obj in objs]
    if any(mod is None for mod in modules):
        return hwtypes.verdict(undecided=[
            'not applicable: the dual sequence is not in the module '
            'category'], detail=detail)
    if not is_standarizable(modules, names).passed:
        return hwtypes.verdict(undecided=[
            'not applicable: the dual sequence is not standarizable'],
            detail=detail)
    tower = iterated_universal_extension(modules, names, check=False)
    pres = hwbasic.present_basic_algebra(tower.parts, tries, seed)
    return _iso_verdict(pres.algebra, ringel, tries, seed, detail)


def ringel_dual(report, package=None, tries=DEFAULT_ISO_TRIES,
                seed=DEFAULT_SEED, workers=DEFAULT_WORKERS):
    """ End(T) for the characteristic tilting module T, with the standard
    modules Hom(T, Nabla(w)) in the reversed order. """
    report.require_complete()
    if package is None:
        package = characteristic_tilting(report, tries, seed, workers)
    size = len(report)
    pres = hwbasic.present_basic_algebra(package.parts, tries, seed)
    alg = pres.algebra
    predicted = [hwbasic.hom_module(pres, report.costandards[size - 1 - w])
                 for w in range(size)]
    order = [alg.vertex_name(size - 1 - w) for w in range(size)]
    dual_report = structure_report(alg, order)

    witnesses, undecided = _same_standards(
        HWReport(alg, predicted, None, vertices=dual_report.vertices),
        dual_report, tries, seed)
    if witnesses or undecided:
        involution = hwtypes.verdict(witnesses, undecided,
                                     detail='the Ringel dual standards')
    else:
        second = characteristic_tilting(dual_report, tries, seed, workers)
        back = hwbasic.present_basic_algebra(second.parts, tries, seed)
        involution = _iso_verdict(back.algebra, report.algebra, tries, seed,
                                  'the double Ringel dual')

    info = hwtypes.RingelInfo(
        algebra=hwbasic.algebra_summary(alg), dimension=alg.dimension,
        cartan=alg.cartan_matrix(),
        standards=[list(mod.dims) for mod in predicted],
        dual_heart=_dual_heart(report, alg, tries, seed),
        involution=involution)
    return RingelDual(presentation=pres, report=dual_report,
                      package=package, info=info)


def glued_filtration_check(report):
    """ Every simple module of B lies in the heart glued along the
    standard modules with the costandard ones as the dual sequence. """
    report.require_complete()
    alg = report.algebra
    names = [report.label('Delta', w) for w in range(len(report))]
    seq = hwexcseq.ExceptionalSequence(report.standards, names)
    pair = hwexcseq.DualPair(seq, report.costandards, hwexcseq.LEFT, [
        report.label('Nabla', w) for w in range(len(report))])
    witnesses, undecided = [], []
    for weight, vert in enumerate(report.vertices):
        name = 'L({name})'.format(name=report.order[weight])
        simple = hwalgebra.simple_module(alg, alg.vertex_name(vert))
        aisle = hwexcseq.glued_aisle_membership(simple, pair, name)
        if aisle.in_heart is False:
            witnesses.extend(aisle.witnesses)
        elif aisle.in_heart is None or not aisle.conclusive:
            undecided.append('{name}: membership not certified'.format(
                name=name))
    return hwtypes.verdict(witnesses, undecided)


def refinement_check(report, permutation, tries=DEFAULT_ISO_TRIES,
                     seed=DEFAULT_SEED):
    """ Reorder the weights and compare the standard modules of the two
    orders as sets of isomorphism classes. """
    alg = report.algebra
    names = [alg.vertex_name(vert) for vert in report.vertices]
    if sorted(permutation) != list(range(len(names))):
        hwcatch.error(hwcatch.DimensionMismatch,
                      '{perm} is not a permutation of the weights',
                      perm=list(permutation))
    base = structure_report(alg, names)
    other = structure_report(alg, [names[idx] for idx in permutation])
    witnesses, undecided = _same_standards(other, base, tries, seed)
    return hwtypes.verdict(witnesses, undecided,
                           detail='order {order}'.format(
                               order=other.order))


def bijection_check(alg, pair, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ The round trip between a dual pair of modules and a highest
    weight structure. """
    if pair.algebra is not alg:
        hwcatch.error(hwcatch.AlgebraMismatch,
                      'The dual pair lives over a different algebra')
    left = hwexcseq.as_left_pair(pair)
    modules = [hwexcseq.module_of(obj) for obj in left.objects]
    order = [] if any(mod is None for mod in modules) else \
        [_top_label(mod) for mod in modules]
    try:
        report = heart_presentation(left, tries, seed)
    except (hwcatch.CriterionNotCertified,
            hwcatch.NonModuleStandard) as err:
        status = err.partial.status if isinstance(err.partial,
                                                  hwtypes.Verdict) else None
        if status == hwtypes.UNDECIDED:
            forward = hwtypes.verdict(undecided=[str(err)])
        else:
            forward = hwtypes.verdict([str(err)])
        return hwtypes.BijectionInfo(
            forward=forward,
            backward=hwtypes.verdict(undecided=['not applicable']),
            order=order)

    intrinsic = structure_report(report.algebra, [
        report.algebra.vertex_name(vert) for vert in report.vertices])
    witnesses, undecided = _same_standards(report, intrinsic, tries, seed)
    forward = hwtypes.verdict(witnesses, undecided,
                              detail='the standard modules of mod-B')

    names = [report.label('Delta', w) for w in range(len(report))]
    back = hwexcseq.DualPair(
        hwexcseq.ExceptionalSequence(report.standards, names),
        report.costandards, hwexcseq.LEFT,
        [report.label('Nabla', w) for w in range(len(report))])
    backward = hwexcseq.verify_hom_duality(back).verdict
    return hwtypes.BijectionInfo(forward=forward, backward=backward,
                                 order=order)


def tilting_checks(parts, tower=None, names=None, workers=DEFAULT_WORKERS):
    """ Hom(P_i, P_j[l]) = 0 for l != 0, and generation: certified when
    every indecomposable projective is one of the parts. """
    parts = list(parts)
    if names is None:
        names = ['P{idx}'.format(idx=idx + 1) for idx in range(len(parts))]
    seq = hwexcseq.ExceptionalSequence(parts, names, workers=workers)
    seq.fill()
    witnesses, undecided = [], []
    for i in range(len(parts)):
        for j in range(len(parts)):
            ghom = seq.hom(i, j)
            for deg in ghom.degrees():
                if deg != 0:
                    witnesses.append('{label} != 0'.format(
                        label=hwexcseq.hom_label(names[i], names[j], deg)))
            if not ghom.complete:
                undecided.append('Hom*({src}, {dst}): degrees outside of '
                                 '{window}'.format(src=names[i], dst=names[j],
                                                   window=list(ghom.window)))
    if witnesses:
        return hwtypes.verdict(witnesses, undecided)

    modules = [hwexcseq.module_of(obj) for obj in seq.objects]
    alg = seq.algebra
    missing = []
    for name in alg.quiver.vertices:
        proj = hwalgebra.projective_module(alg, name)
        found = False
        for mod in modules:
            if mod is None or mod.dims != proj.dims:
                continue
            try:
                if hwmodule.is_isomorphic(proj, mod).isomorphic:
                    found = True
                    break
            except hwcatch.Undecided:
                continue
        if not found:
            missing.append(name)
    if not missing:
        return hwtypes.verdict(undecided=undecided,
                               detail='the parts contain every '
                               'indecomposable projective')
    chain = None
    if tower is not None:
        chain = '; '.join(
            'P{idx}: {k} copies of the last object over Q{idx}'.format(
                idx=step[0], k=step[3]) for step in tower.steps)
    return hwtypes.verdict(undecided=undecided + [
        'generation not certified: P{names} not among the parts'.format(
            names=',P'.join(missing))], detail=chain)
