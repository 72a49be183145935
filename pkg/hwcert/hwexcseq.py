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
""" Exceptional objects and sequences, mutations and dual sequences.

A sequence (E_1, ..., E_n) is exceptional when every E_i has the field as
its only graded endomorphisms and Hom(E_j, E_i[l]) vanishes for j > i.
The left dual sequence is built by iterated left mutations,
F_1 = E_1 and F_i = L_{E_1} ... L_{E_(i-1)} E_i, and is read in the
order (F_n, ..., F_1); the right dual sequence mirrors it with right
mutations.  All the objects are complexes of projectives. """

import collections
import logging
from multiprocessing.pool import ThreadPool

import six

from . import hwalgebra
from . import hwcatch
from . import hwderived
from . import hwhomology
from . import hwlinalg
from . import hwmodule
from . import hwtypes


LOG = logging.getLogger(__name__)

DEFAULT_WORKERS = 4

LEFT = 'left'
RIGHT = 'right'

FullnessReport = collections.namedtuple('FullnessReport', [
    'verdict',
    'class_matrix',
    'determinant',
])


def hom_label(src, dst, deg):
    """ A readable name of a graded Hom space. """
    if deg == 0:
        return 'Hom({src}, {dst})'.format(src=src, dst=dst)
    if deg > 0:
        return 'Ext^{deg}({src}, {dst})'.format(deg=deg, src=src, dst=dst)
    return 'Hom({src}, {dst}[{deg}])'.format(src=src, dst=dst, deg=deg)


def as_complex(obj, depth=hwderived.DEFAULT_RESOLUTION_DEPTH):
    """ Turn a module into its projective resolution; complexes of
    projectives are returned unchanged. """
    if isinstance(obj, hwmodule.Module):
        return hwderived.complex_of_module(obj, depth)
    return obj


def module_of(obj):
    """ The module a complex stands for if its cohomology is concentrated
    in degree 0, else None. """
    if isinstance(obj, hwmodule.Module):
        return obj
    if obj.origin is not None:
        mod, deg = obj.origin
        return mod if deg == 0 else None
    coh = hwderived.cohomology_modules(obj)
    if not coh:
        return hwmodule.direct_sum([], obj.algebra).module
    if list(coh) != [0]:
        return None
    return coh[0]


def class_vector(obj):
    """ The alternating sum of the dimension vectors of the cohomology. """
    if obj.origin is not None:
        mod, deg = obj.origin
        sign = -1 if deg % 2 else 1
        return [sign * dim for dim in mod.dims]
    res = [0] * obj.algebra.num_vertices
    for deg, mod in six.iteritems(hwderived.cohomology_modules(obj)):
        sign = -1 if deg % 2 else 1
        for vert, dim in enumerate(mod.dims):
            res[vert] += sign * dim
    return res


def is_exceptional(obj, name='E'):
    """ Is the graded endomorphism space the field in degree 0? """
    obj = as_complex(obj)
    if obj.is_zero():
        return hwtypes.verdict(witnesses=['{name} is zero'.format(
            name=name)])
    ghom = hwderived.graded_hom(obj, obj)
    witnesses = []
    for deg in ghom.degrees():
        if deg != 0 or ghom.dims[deg] != 1:
            witnesses.append('{label} has dimension {dim}'.format(
                label=hom_label(name, name, deg), dim=ghom.dims[deg]))
    if ghom.dims.get(0, 0) == 0:
        witnesses.append('{name} has no identity'.format(name=name))
    undecided = [] if ghom.complete else [
        'degrees outside of {window} were not computed'.format(
            window=list(ghom.window))]
    return hwtypes.verdict(witnesses, undecided)


class ExceptionalSequence(object):
    """ An ordered list of complexes of projectives with a lazily filled
    table of the pairwise graded Hom spaces. """

    def __init__(self, objects, names=None, workers=DEFAULT_WORKERS):
        objects = [as_complex(obj) for obj in objects]
        if not objects:
            hwcatch.error(hwcatch.NotExceptionalSequence,
                          'An exceptional sequence cannot be empty')
        hwmodule.check_same_algebra(*objects)
        self.objects = objects
        self.algebra = objects[0].algebra
        if names is None:
            names = ['E{idx}'.format(idx=idx + 1)
                     for idx in range(len(objects))]
        self.names = list(names)
        self.workers = workers
        self._homs = {}

    def __len__(self):
        return len(self.objects)

    def hom(self, first, second):
        """ The graded Hom space from the first object to the second. """
        key = (first, second)
        if key not in self._homs:
            self._homs[key] = hwderived.graded_hom(self.objects[first],
                                                   self.objects[second])
        return self._homs[key]

    def fill(self, pairs=None):
        """ Compute the requested (or all) pairwise Hom spaces, in
        parallel. """
        size = len(self.objects)
        if pairs is None:
            pairs = [(i, j) for i in range(size) for j in range(size)]
        missing = [pair for pair in pairs if pair not in self._homs]
        if not missing:
            return
        LOG.debug('Computing %d graded Hom spaces with %d workers',
                  len(missing), self.workers)

        def compute(pair):
            return pair, hwderived.graded_hom(self.objects[pair[0]],
                                              self.objects[pair[1]])

        if self.workers > 1 and len(missing) > 1:
            pool = ThreadPool(min(self.workers, len(missing)))
            try:
                results = pool.map(compute, missing)
            finally:
                pool.close()
                pool.join()
        else:
            results = [compute(pair) for pair in missing]
        for pair, ghom in results:
            self._homs[pair] = ghom

    def table(self):
        """ The dimensions of all the pairwise graded Hom spaces. """
        self.fill()
        size = len(self.objects)
        return [[dict(self.hom(i, j).dims) for j in range(size)]
                for i in range(size)]

    def __repr__(self):
        return 'ExceptionalSequence({names})'.format(names=self.names)


def is_exceptional_sequence(seq):
    """ Check the objects and the backward vanishing; the backward
    violations are listed first. """
    if not isinstance(seq, ExceptionalSequence):
        seq = ExceptionalSequence(seq)
    seq.fill()
    size = len(seq)
    backward, own, undecided = [], [], []
    for later in range(size):
        for earlier in range(later):
            ghom = seq.hom(later, earlier)
            for deg in ghom.degrees():
                backward.append('{label} != 0'.format(label=hom_label(
                    seq.names[later], seq.names[earlier], deg)))
            if not ghom.complete:
                undecided.append(
                    'Hom*({src}, {dst}): degrees outside of {window}'.format(
                        src=seq.names[later], dst=seq.names[earlier],
                        window=list(ghom.window)))
    for idx in range(size):
        ghom = seq.hom(idx, idx)
        name = seq.names[idx]
        if seq.objects[idx].is_zero():
            own.append('{name} is zero'.format(name=name))
            continue
        for deg in ghom.degrees():
            if deg != 0 or ghom.dims[deg] != 1:
                own.append('{label} has dimension {dim}'.format(
                    label=hom_label(name, name, deg), dim=ghom.dims[deg]))
        if not ghom.complete:
            undecided.append('End*({name}): degrees outside of {window}'
                             .format(name=name, window=list(ghom.window)))
    return hwtypes.verdict(backward + own, undecided)


def require_exceptional_pair(first, second, names=('E', 'F')):
    """ Raise NotExceptionalPair unless (first, second) is a complete,
    certified exceptional pair. """
    seq = ExceptionalSequence([first, second], names=list(names), workers=1)
    res = is_exceptional_sequence(seq)
    if not res.passed:
        hwcatch.error(hwcatch.NotExceptionalPair,
                      '({first}, {second}) is not an exceptional pair: '
                      '{why}', first=names[0], second=names[1],
                      why='; '.join(res.witnesses))
    return seq


def _require_untruncated(*objs):
    for obj in objs:
        if obj.truncated:
            hwcatch.error(hwcatch.TruncationTooShallow,
                          'Mutations need complete projective resolutions')


def left_mutation(first, second, check=True):
    """ L_E F: the cone of the evaluation map from the sum of the shifts
    E[-l], one for each basis element of Hom(E, F[l]), to F. """
    first, second = as_complex(first), as_complex(second)
    _require_untruncated(first, second)
    if check:
        require_exceptional_pair(first, second)
    alg = first.algebra
    ghom = hwderived.graded_hom(first, second)
    copies, maps = [], []
    for deg in ghom.degrees():
        for vec in ghom.cocycles[deg]:
            copies.append(hwderived.shift(first, -deg))
            maps.append((deg, ghom.components(deg, vec)))
    if not copies:
        return second
    source = hwderived.direct_sum_complexes(copies, alg)
    comps = {}
    for deg in set(source.degrees):
        grid = [[comp.get(deg - shift_by, None)
                 for shift_by, comp in maps]]
        comps[deg] = hwhomology.FreeMap.from_grid(
            [copy.term(deg) for copy in copies], [second.term(deg)],
            [[_fit(cell, copy.term(deg), second.term(deg))
              for cell, copy in zip(grid[0], copies)]])
    evaluation = hwderived.ChainMap(source, second, comps)
    res = hwderived.minimize(hwderived.cone(evaluation).complex)
    LOG.debug('Left mutation over a sum of %d shifted copies: %s',
              len(copies), res.label())
    return res


def right_mutation(first, second, check=True):
    """ R_F E for the exceptional pair (E, F) = (second, first): the cone
    of the coevaluation map from E to the sum of the shifts F[l], one for
    each basis element of Hom(E, F[l]), shifted by -1. """
    first, second = as_complex(first), as_complex(second)
    _require_untruncated(first, second)
    if check:
        require_exceptional_pair(second, first)
    alg = first.algebra
    ghom = hwderived.graded_hom(second, first)
    copies, maps = [], []
    for deg in ghom.degrees():
        for vec in ghom.cocycles[deg]:
            copies.append(hwderived.shift(first, deg))
            maps.append(ghom.components(deg, vec))
    if not copies:
        return hwderived.shift(second, 0)
    target = hwderived.direct_sum_complexes(copies, alg)
    comps = {}
    for deg in set(second.degrees):
        comps[deg] = hwhomology.FreeMap.from_grid(
            [second.term(deg)], [copy.term(deg) for copy in copies],
            [[_fit(comp.get(deg), second.term(deg), copy.term(deg))]
             for comp, copy in zip(maps, copies)])
    coevaluation = hwderived.ChainMap(second, target, comps)
    res = hwderived.minimize(hwderived.shift(
        hwderived.cone(coevaluation).complex, -1))
    LOG.debug('Right mutation into a sum of %d shifted copies: %s',
              len(copies), res.label())
    return res


def _fit(fmap, source, target):
    """ A FreeMap component retyped to the given terms, or None. """
    if fmap is None or fmap.is_zero():
        return None
    return hwhomology.FreeMap(source, target, fmap.entries, check=False)


class DualPair(object):
    """ An exceptional sequence together with its dual sequence.

    For a left dual, dual[i] is F_(i+1) and the pairing is
    Hom(E_i, F_j[l]); for a right dual, dual[i] is G_(i+1) and the
    pairing is Hom(G_i, E_j[l]).  Either way the dual is an exceptional
    sequence in the reversed order: (F_n, ..., F_1) or (G_n, ..., G_1). """

    def __init__(self, sequence, dual, kind=LEFT, dual_names=None):
        if not isinstance(sequence, ExceptionalSequence):
            sequence = ExceptionalSequence(sequence)
        self.sequence = sequence
        self.algebra = sequence.algebra
        self.kind = kind
        self.dual = [as_complex(obj) for obj in dual]
        if len(self.dual) != len(sequence):
            hwcatch.error(hwcatch.DimensionMismatch,
                          'A dual pair needs sequences of equal length')
        letter = 'F' if kind == LEFT else 'G'
        if dual_names is None:
            dual_names = ['{letter}{idx}'.format(letter=letter, idx=idx + 1)
                          for idx in range(len(self.dual))]
        self.dual_names = list(dual_names)
        self._pairing = None
        self._dual_seq = None

    @property
    def objects(self):
        """ The objects of the sequence. """
        return self.sequence.objects

    @property
    def names(self):
        """ The names of the objects of the sequence. """
        return self.sequence.names

    def dual_in_order(self):
        """ The dual objects in sequence order, with their names. """
        pairs = list(zip(self.dual, self.dual_names))
        pairs.reverse()
        return [obj for obj, _ in pairs], [name for _, name in pairs]

    def dual_sequence(self):
        """ The dual objects as an ExceptionalSequence in sequence
        order. """
        if self._dual_seq is None:
            objs, names = self.dual_in_order()
            self._dual_seq = ExceptionalSequence(
                objs, names, workers=self.sequence.workers)
        return self._dual_seq

    def dual_hom(self, first, second):
        """ The graded Hom space between two dual objects (by index). """
        dual = self.dual_sequence()
        size = len(self.dual)
        return dual.hom(size - 1 - first, size - 1 - second)

    def pairing(self):
        """ The pairing table: graded Hom spaces between the sequence
        and the dual, indexed as (i, j). """
        if self._pairing is None:
            size = len(self.dual)
            pairs = [(i, j) for i in range(size) for j in range(size)]

            def compute(pair):
                i, j = pair
                if self.kind == LEFT:
                    return pair, hwderived.graded_hom(self.objects[i],
                                                      self.dual[j])
                return pair, hwderived.graded_hom(self.dual[i],
                                                  self.objects[j])

            workers = self.sequence.workers
            if workers > 1:
                pool = ThreadPool(min(workers, len(pairs)))
                try:
                    results = pool.map(compute, pairs)
                finally:
                    pool.close()
                    pool.join()
            else:
                results = [compute(pair) for pair in pairs]
            self._pairing = dict(results)
        return self._pairing

    def pairing_label(self, i, j, deg):
        """ The name of a pairing space. """
        if self.kind == LEFT:
            return hom_label(self.names[i], self.dual_names[j], deg)
        return hom_label(self.dual_names[i], self.names[j], deg)

    def __repr__(self):
        return 'DualPair({kind}, {names} | {dual})'.format(
            kind=self.kind, names=self.names, dual=self.dual_names)


def as_left_pair(pair):
    """ A right dual pair (E; G) read as the left dual pair (G; E). """
    if pair.kind == LEFT:
        return pair
    seq = ExceptionalSequence(list(reversed(pair.dual)),
                              list(reversed(pair.dual_names)),
                              workers=pair.sequence.workers)
    return DualPair(seq, list(reversed(pair.objects)), LEFT,
                    dual_names=list(reversed(pair.names)))


def left_dual_sequence(seq, check=True):
    """ The left dual: F_1 = E_1, F_i = L_{E_1} ... L_{E_(i-1)} E_i. """
    if not isinstance(seq, ExceptionalSequence):
        seq = ExceptionalSequence(seq)
    if check:
        res = is_exceptional_sequence(seq)
        if not res.passed:
            hwcatch.error(hwcatch.NotExceptionalSequence,
                          'Not an exceptional sequence: {why}',
                          why='; '.join(res.witnesses))
    dual = []
    for idx, obj in enumerate(seq.objects):
        cur = obj
        for left in reversed(seq.objects[:idx]):
            cur = left_mutation(left, cur, check=False)
        dual.append(cur)
        LOG.debug('F%d = %s', idx + 1, cur.label())
    return DualPair(seq, dual, LEFT)


def right_dual_sequence(seq, check=True):
    """ The right dual: G_n = E_n, G_i = R_{E_n} ... R_{E_(i+1)} E_i. """
    if not isinstance(seq, ExceptionalSequence):
        seq = ExceptionalSequence(seq)
    if check:
        res = is_exceptional_sequence(seq)
        if not res.passed:
            hwcatch.error(hwcatch.NotExceptionalSequence,
                          'Not an exceptional sequence: {why}',
                          why='; '.join(res.witnesses))
    dual = []
    size = len(seq)
    for idx, obj in enumerate(seq.objects):
        cur = obj
        for right in seq.objects[idx + 1:size]:
            cur = right_mutation(right, cur, check=False)
        dual.append(cur)
        LOG.debug('G%d = %s', idx + 1, cur.label())
    return DualPair(seq, dual, RIGHT)


def verify_hom_duality(pair):
    """ Check that the pairing is the field exactly for i = j in degree 0
    and vanishes otherwise. """
    table = pair.pairing()
    size = len(pair.dual)
    witnesses, undecided, rows = [], [], []
    for i in range(size):
        row = []
        for j in range(size):
            ghom = table[(i, j)]
            row.append(dict(ghom.dims))
            expected = {0: 1} if i == j else {}
            if dict(ghom.dims) != expected:
                if i == j and not ghom.dims.get(0):
                    witnesses.append('{label} = 0'.format(
                        label=pair.pairing_label(i, j, 0)))
                for deg in ghom.degrees():
                    if deg == 0 and i == j and ghom.dims[deg] == 1:
                        continue
                    witnesses.append('{label} has dimension {dim}'.format(
                        label=pair.pairing_label(i, j, deg),
                        dim=ghom.dims[deg]))
            if not ghom.complete:
                undecided.append('{label}: degrees outside of {window}'
                                 .format(label=pair.pairing_label(i, j, 0),
                                         window=list(ghom.window)))
        rows.append(row)
    dual_objs, dual_names = pair.dual_in_order()
    del dual_objs
    return hwtypes.DualityTable(
        kind=pair.kind, sequence=pair.names, dual=dual_names, table=rows,
        verdict=hwtypes.verdict(witnesses, undecided))


def glued_aisle_membership(obj, pair, name='X', conclusive=None):
    """ The Hom-vanishing tests of the glued t-structure:
    obj is in D<=0 when Hom(obj, F_s[l]) = 0 for l < 0, and in D>=0 when
    Hom(E_s, obj[l]) = 0 for l < 0.  The tests characterize the aisles
    inside the subcategory generated by the sequence. """
    obj = as_complex(obj)
    if pair.kind != LEFT:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'The glued aisles are defined by a left dual pair')
    if conclusive is None:
        conclusive = fullness_necessary_conditions(
            pair.sequence).verdict.passed
    leq_wit, geq_wit = [], []
    leq_unknown = geq_unknown = False
    for idx, dual in enumerate(pair.dual):
        ghom = hwderived.graded_hom(obj, dual)
        for deg in ghom.degrees():
            if deg < 0:
                leq_wit.append('{label} != 0'.format(label=hom_label(
                    name, pair.dual_names[idx], deg)))
        if not negative_degrees_covered(ghom):
            leq_unknown = True
    for idx, seq_obj in enumerate(pair.objects):
        ghom = hwderived.graded_hom(seq_obj, obj)
        for deg in ghom.degrees():
            if deg < 0:
                geq_wit.append('{label} != 0'.format(label=hom_label(
                    pair.names[idx], name, deg)))
        if not negative_degrees_covered(ghom):
            geq_unknown = True
    in_leq0 = False if leq_wit else (None if leq_unknown else True)
    in_geq0 = False if geq_wit else (None if geq_unknown else True)
    if in_leq0 is False or in_geq0 is False:
        in_heart = False
    elif in_leq0 is None or in_geq0 is None:
        in_heart = None
    else:
        in_heart = True
    return hwtypes.AisleInfo(object=name, in_leq0=in_leq0, in_geq0=in_geq0,
                             in_heart=in_heart, conclusive=conclusive,
                             witnesses=leq_wit + geq_wit)


def negative_degrees_covered(ghom):
    """ Were all the negative degrees of the support computed? """
    if ghom.support is None:
        return True
    low = ghom.support[0]
    if low is not None and low >= 0:
        return True
    return low is not None and ghom.window[0] <= low


def restriction_hypotheses(pair):
    """ The sequence objects must lie in the standard D<=0 and the dual
    objects in D>=0; the strong form asks for modules throughout. """
    weak, strong = [], []
    for name, obj in zip(pair.names, pair.objects):
        low, high = hwderived.standard_aisle_degrees(obj)
        if high is not None and high > 0:
            weak.append('{name} has cohomology in degree {deg}'.format(
                name=name, deg=high))
        if (low, high) not in ((0, 0), (None, None)):
            strong.append('{name} has cohomology in degrees {low}..{high}'
                          .format(name=name, low=low, high=high))
    for name, obj in zip(pair.dual_names, pair.dual):
        low, high = hwderived.standard_aisle_degrees(obj)
        if low is not None and low < 0:
            weak.append('{name} has cohomology in degree {deg}'.format(
                name=name, deg=low))
        if (low, high) not in ((0, 0), (None, None)):
            strong.append('{name} has cohomology in degrees {low}..{high}'
                          .format(name=name, low=low, high=high))
    return hwtypes.RestrictionInfo(
        weak=hwtypes.verdict(weak),
        strong=hwtypes.verdict(
            weak + strong,
            detail='the sequence and its dual consist of modules'
            if not weak + strong else
            'the sequence and its dual do not consist of modules'))


def fullness_necessary_conditions(seq):
    """ Necessary conditions for a full sequence: as many objects as
    simple modules and a unimodular matrix of cohomology classes.  Passing
    them does not prove fullness. """
    if not isinstance(seq, ExceptionalSequence):
        seq = ExceptionalSequence(seq)
    alg = seq.algebra
    witnesses = []
    if len(seq) != alg.num_vertices:
        witnesses.append('{n} objects for {m} simple modules'.format(
            n=len(seq), m=alg.num_vertices))
    rows = [class_vector(obj) for obj in seq.objects]
    det = None
    if not witnesses:
        det = hwlinalg.determinant(hwlinalg.Matrix.from_rows(
            hwlinalg.QQ, rows, cols=alg.num_vertices))
        if det not in (1, -1):
            witnesses.append('the class matrix has determinant {det}'
                             .format(det=det))
    return FullnessReport(
        verdict=hwtypes.verdict(
            witnesses, detail='necessary conditions passed'
            if not witnesses else None),
        class_matrix=rows, determinant=det)


def euler_pairing(first, second):
    """ The alternating sum of the dimensions of Hom(first, second[l]). """
    ghom = hwderived.graded_hom(as_complex(first), as_complex(second))
    if not ghom.complete:
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'The Euler pairing needs the whole graded Hom space')
    return ghom.euler_characteristic()


def gram_matrix(first, second):
    """ The Euler pairings chi(A_i, B_j). """
    return [[euler_pairing(one, two) for two in second] for one in first]


def mutation_info(kind, first, second, names):
    """ Describe a mutated complex: its terms, its cohomology and the
    cohomology modules recognized among the simple, projective and
    injective ones. """
    res = left_mutation(first, second) if kind == LEFT else \
        right_mutation(first, second)
    coh = hwderived.cohomology_modules(res)
    identified = {}
    for deg, mod in six.iteritems(coh):
        identified[deg] = recognize_module(mod)
    return res, hwtypes.MutationInfo(
        kind=kind, first=names[0], second=names[1], terms=res.label(),
        cohomology=dict((deg, list(mod.dims))
                        for deg, mod in six.iteritems(coh)),
        identified=identified)


def recognize_module(mod):
    """ Name a module if it is a simple, projective or injective one. """
    alg = mod.algebra
    for vert in range(alg.num_vertices):
        name = alg.vertex_name(vert)
        for prefix, build in (('S', hwalgebra.simple_module),
                              ('P', hwalgebra.projective_module),
                              ('I', hwalgebra.injective_module)):
            cand = build(alg, name)
            if cand.dims != mod.dims:
                continue
            try:
                if hwmodule.is_isomorphic(cand, mod).isomorphic:
                    return '{prefix}{name}'.format(prefix=prefix, name=name)
            except hwcatch.Undecided:
                continue
    return 'dims {dims}'.format(dims=list(mod.dims))


def serre_check(seq):
    """ The double left dual of a full sequence is its image under the
    Serre functor: compare cohomology and graded endomorphisms with the
    Nakayama images. """
    if not isinstance(seq, ExceptionalSequence):
        seq = ExceptionalSequence(seq)
    first = left_dual_sequence(seq)
    objs, names = first.dual_in_order()
    second = left_dual_sequence(ExceptionalSequence(objs, names))
    double, _ = second.dual_in_order()
    witnesses = []
    for name, obj, dual in zip(seq.names, seq.objects, double):
        image = hwderived.nakayama(obj)
        if not hwderived.same_cohomology(image, dual):
            witnesses.append('the double dual of {name} differs from its '
                             'Serre image in cohomology'.format(name=name))
            continue
        if hwderived.graded_hom(image, image).dims != \
                hwderived.graded_hom(dual, dual).dims:
            witnesses.append('the double dual of {name} has a different '
                             'endomorphism profile'.format(name=name))
    return hwtypes.verdict(witnesses)
