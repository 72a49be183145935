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
""" Projective covers, minimal projective resolutions and Ext groups.

Sums of indecomposable projectives are kept in a compact form: a
FreeModule lists the vertices v of its summands A e_v, and a FreeMap
between two of them has one algebra element per pair of summands.  The
component from A e_v to A e_w is right multiplication by an element of
e_v A e_w, i.e. a combination of the paths from w to v, so that the
generator e_v is sent to that element.  Maps from a FreeModule into any
module are determined by the images of the generators. """

import collections
import logging
import threading

import six

from . import hwalgebra
from . import hwcatch
from . import hwlinalg
from . import hwmodule


LOG = logging.getLogger(__name__)

DEFAULT_GLDIM_BOUND = 64

Cover = collections.namedtuple('Cover', [
    'free',
    'epi',
])

ExtGroup = collections.namedtuple('ExtGroup', [
    'source',
    'target',
    'degree',
    'dimension',
    'cocycles',
    'resolution',
])

GlobalDimension = collections.namedtuple('GlobalDimension', [
    'kind',
    'value',
    'witness',
])

FINITE = 'finite'
INFINITE = 'infinite'
EXCEEDS = 'exceeds'

_RES_LOCK = threading.Lock()


class FreeModule(object):
    """ A finite direct sum of indecomposable projectives A e_v. """

    def __init__(self, alg, tops):
        self.algebra = alg
        self.tops = tuple(tops)
        self._module = None
        self._offsets = None

    @property
    def rank(self):
        """ The number of summands. """
        return len(self.tops)

    def is_zero(self):
        """ Is this the zero module? """
        return not self.tops

    @property
    def module(self):
        """ The direct sum as an ordinary module. """
        if self._module is None:
            alg = self.algebra
            self._module = hwmodule.direct_sum(
                [hwalgebra.projective_module(alg, alg.vertex_name(top))
                 for top in self.tops], alg).module
        return self._module

    def offsets(self, vert):
        """ The position of each summand's block at a vertex. """
        if self._offsets is None:
            alg = self.algebra
            self._offsets = []
            for cur in range(alg.num_vertices):
                pos, res = 0, []
                for top in self.tops:
                    res.append(pos)
                    pos += len(alg.paths(top, cur))
                self._offsets.append(res)
        return self._offsets[vert]

    def generator_vector(self, idx):
        """ The generator e_v of a summand, as a vector of the module. """
        alg = self.algebra
        top = self.tops[idx]
        vec = [alg.field.zero] * self.module.dims[top]
        pos = self.offsets(top)[idx] + alg.paths(top, top).index(
            alg.idempotent(top))
        vec[pos] = alg.field.one
        return tuple(vec)

    def __add__(self, other):
        return FreeModule(self.algebra, self.tops + other.tops)

    def multiplicities(self):
        """ The number of summands at every vertex. """
        counts = collections.Counter(self.tops)
        return tuple(counts[vert] for vert in range(self.algebra.num_vertices))

    def label(self):
        """ A short description such as "P1 + P2^2". """
        if not self.tops:
            return '0'
        alg = self.algebra
        parts = []
        for vert, count in enumerate(self.multiplicities()):
            if count:
                name = 'P{v}'.format(v=alg.vertex_name(vert))
                parts.append(name if count == 1 else '{n}^{c}'.format(
                    n=name, c=count))
        return ' + '.join(parts)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and \
            self.algebra is other.algebra and self.tops == other.tops

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.tops)

    def __repr__(self):
        return 'FreeModule({label})'.format(label=self.label())


def _add_elements(field, first, second, coef=1):
    res = dict(first)
    for idx, val in six.iteritems(second):
        new = field.normalize(res.get(idx, field.zero) + coef * val)
        if new == 0:
            res.pop(idx, None)
        else:
            res[idx] = new
    return res


class FreeMap(object):
    """ A map between FreeModules: entries[j][i] is the component from
    the i-th source summand to the j-th target summand. """

    def __init__(self, source, target, entries, check=True):
        self.source = source
        self.target = target
        self.algebra = source.algebra
        self.entries = tuple(tuple(dict(elem) for elem in row)
                             for row in entries)
        self._module_map = None
        if len(self.entries) != target.rank or any(
                len(row) != source.rank for row in self.entries):
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Expected a {rows}x{cols} grid of components',
                          rows=target.rank, cols=source.rank)
        if check:
            basis = self.algebra.basis
            for j, row in enumerate(self.entries):
                for i, elem in enumerate(row):
                    for idx in elem:
                        path = basis[idx]
                        if path.source != target.tops[j] or \
                                path.target != source.tops[i]:
                            hwcatch.error(hwcatch.DimensionMismatch,
                                          'Component ({j},{i}) has a path '
                                          'with the wrong endpoints',
                                          j=j, i=i)

    @classmethod
    def zero(cls, source, target):
        """ The zero map. """
        return cls(source, target, [[{} for _ in source.tops]
                                    for _ in target.tops], check=False)

    @classmethod
    def identity(cls, free):
        """ The identity map. """
        alg = free.algebra
        return cls(free, free, [
            [{alg.idempotent(top): alg.field.one} if i == j else {}
             for i in range(free.rank)]
            for j, top in enumerate(free.tops)], check=False)

    @classmethod
    def from_vectors(cls, source, target, vectors):
        """ The map sending each source generator to the given vector
        of the target module at the generator's vertex. """
        alg = source.algebra
        entries = [[{} for _ in source.tops] for _ in target.tops]
        for i, (top, vec) in enumerate(zip(source.tops, vectors)):
            offs = target.offsets(top)
            for j, ttop in enumerate(target.tops):
                for pos, idx in enumerate(alg.paths(ttop, top)):
                    coef = vec[offs[j] + pos]
                    if coef != 0:
                        entries[j][i][idx] = coef
        return cls(source, target, entries, check=False)

    @classmethod
    def from_grid(cls, sources, targets, grid):
        """ Assemble a map between direct sums from a grid of FreeMaps;
        None stands for a zero block. """
        alg = (sources or targets)[0].algebra
        source = FreeModule(alg, sum((free.tops for free in sources), ()))
        target = FreeModule(alg, sum((free.tops for free in targets), ()))
        entries = [[{} for _ in source.tops] for _ in target.tops]
        roff = 0
        for bj, tfree in enumerate(targets):
            coff = 0
            for bi, sfree in enumerate(sources):
                blk = grid[bj][bi]
                if blk is not None:
                    for j in range(tfree.rank):
                        for i in range(sfree.rank):
                            entries[roff + j][coff + i] = blk.entries[j][i]
                coff += sfree.rank
            roff += tfree.rank
        return cls(source, target, entries, check=False)

    def vector(self, idx):
        """ The image of the idx-th source generator as a vector of the
        target module. """
        alg = self.algebra
        top = self.source.tops[idx]
        vec = [alg.field.zero] * self.target.module.dims[top]
        offs = self.target.offsets(top)
        for j, ttop in enumerate(self.target.tops):
            paths = alg.paths(ttop, top)
            for pidx, coef in six.iteritems(self.entries[j][idx]):
                vec[offs[j] + paths.index(pidx)] = coef
        return tuple(vec)

    def is_zero(self):
        """ Is this the zero map? """
        return all(not elem for row in self.entries for elem in row)

    def is_radical(self):
        """ Does no component involve a trivial path?  For maps between
        projectives this means the image lies in the radical. """
        basis = self.algebra.basis
        return all(basis[idx].arrows for row in self.entries
                   for elem in row for idx in elem)

    def compose(self, other):
        """ The composition self o other. """
        alg = self.algebra
        field = alg.field
        entries = []
        for k in range(self.target.rank):
            row = []
            for i in range(other.source.rank):
                acc = {}
                for j in range(self.source.rank):
                    first, second = other.entries[j][i], self.entries[k][j]
                    if first and second:
                        acc = _add_elements(field, acc,
                                            alg.multiply(first, second))
                row.append(acc)
            entries.append(row)
        return FreeMap(other.source, self.target, entries, check=False)

    def _combine(self, other, coef):
        field = self.algebra.field
        return FreeMap(self.source, self.target, [
            [_add_elements(field, mine, theirs, coef)
             for mine, theirs in zip(mrow, trow)]
            for mrow, trow in zip(self.entries, other.entries)], check=False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coef):
        """ Multiply the map by a scalar. """
        field = self.algebra.field
        coef = field.coerce(coef)
        return FreeMap(self.source, self.target, [
            [dict((idx, field.normalize(coef * val))
                  for idx, val in six.iteritems(elem))
             if coef != 0 else {} for elem in row]
            for row in self.entries], check=False)

    def submap(self, rows, cols):
        """ The components between the selected summands. """
        rows, cols = list(rows), list(cols)
        alg = self.algebra
        return FreeMap(
            FreeModule(alg, [self.source.tops[i] for i in cols]),
            FreeModule(alg, [self.target.tops[j] for j in rows]),
            [[self.entries[j][i] for i in cols] for j in rows], check=False)

    def to_module_map(self):
        """ The map between the underlying modules. """
        if self._module_map is not None:
            return self._module_map
        alg = self.algebra
        field = alg.field
        src, dst = self.source.module, self.target.module
        blocks = []
        for vert in range(alg.num_vertices):
            soffs, toffs = self.source.offsets(vert), self.target.offsets(vert)
            data = [[field.zero] * src.dims[vert]
                    for _ in range(dst.dims[vert])]
            for i, stop in enumerate(self.source.tops):
                for ppos, pidx in enumerate(alg.paths(stop, vert)):
                    col = soffs[i] + ppos
                    for j, ttop in enumerate(self.target.tops):
                        elem = self.entries[j][i]
                        if not elem:
                            continue
                        tpaths = alg.paths(ttop, vert)
                        prod = alg.multiply({pidx: field.one}, elem)
                        for qidx, coef in six.iteritems(prod):
                            data[toffs[j] + tpaths.index(qidx)][col] = coef
            blocks.append(hwlinalg.Matrix(field, dst.dims[vert],
                                          src.dims[vert], data))
        self._module_map = hwmodule.ModuleMap(src, dst, blocks)
        return self._module_map

    def __repr__(self):
        return 'FreeMap({src} -> {dst})'.format(
            src=self.source.label(), dst=self.target.label())


def free_map_to_module(free, mod, vectors):
    """ The module map from a FreeModule sending the generators to the
    given vectors of mod. """
    alg = free.algebra
    field = alg.field
    blocks = []
    for vert in range(alg.num_vertices):
        columns = []
        for top, vec in zip(free.tops, vectors):
            for pidx in alg.paths(top, vert):
                columns.append(mod.path_matrix(
                    alg.basis[pidx].arrows, top).apply(vec))
        blocks.append(hwlinalg.Matrix.from_columns(
            field, columns, mod.dims[vert]))
    return hwmodule.ModuleMap(free.module, mod, blocks)


def generator_images(free, fmap):
    """ The images of the generators under a module map from a
    FreeModule's module. """
    res = []
    for idx, top in enumerate(free.tops):
        res.append(fmap.blocks[top].apply(free.generator_vector(idx)))
    return res


def projective_cover(mod):
    """ The projective cover and the covering epimorphism. """
    if mod.is_zero():
        hwcatch.error(hwcatch.DimensionMismatch,
                      'The zero module has no projective cover')
    rad, incl = hwmodule.radical(mod)
    tops, vectors = [], []
    for vert in range(mod.algebra.num_vertices):
        gens = hwlinalg.complement_columns(incl.blocks[vert], mod.dims[vert])
        for vec in gens.columns():
            tops.append(vert)
            vectors.append(vec)
    free = FreeModule(mod.algebra, tops)
    return Cover(free=free, epi=free_map_to_module(free, mod, vectors))


class Resolution(object):
    """ A minimal projective resolution, possibly truncated.

    differentials[k] maps terms[k + 1] to terms[k]; syzygies[k] is the
    k-th syzygy (syzygies[0] is the module itself). """

    def __init__(self, module, terms, differentials, augmentation,
                 syzygies, complete):
        self.module = module
        self.terms = list(terms)
        self.differentials = list(differentials)
        self.augmentation = augmentation
        self.syzygies = list(syzygies)
        self.complete = complete

    @property
    def truncated(self):
        """ Were the computations stopped before reaching a zero syzygy? """
        return not self.complete

    @property
    def length(self):
        """ The projective dimension, or None if truncated. """
        if not self.complete:
            return None
        return len(self.terms) - 1

    def is_minimal(self):
        """ Do all the differentials land in the radical? """
        return all(diff.is_radical() for diff in self.differentials)

    def term_labels(self):
        """ The terms as "P1 + P2^2" strings. """
        return [term.label() for term in self.terms]

    def __repr__(self):
        return 'Resolution({terms}{trunc})'.format(
            terms=self.term_labels(),
            trunc=', truncated' if self.truncated else '')


class _ResolutionState(object):
    """ The incrementally extended resolution of a single module. """

    def __init__(self, mod):
        self.module = mod
        self.terms = []
        self.differentials = []
        self.augmentation = None
        self.syzygies = [mod]
        self.inclusion = None
        self.complete = mod.is_zero()
        self.checked = 0

    def step(self):
        """ Add one more term. """
        syz = self.syzygies[-1]
        if syz.is_zero():
            self.complete = True
            return
        cover = projective_cover(syz)
        if not self.terms:
            self.augmentation = cover.epi
            epi = cover.epi
        else:
            prev = self.terms[-1]
            vectors = [self.inclusion.blocks[top].apply(vec)
                       for top, vec in zip(
                           cover.free.tops,
                           generator_images(cover.free, cover.epi))]
            diff = FreeMap.from_vectors(cover.free, prev, vectors)
            self.differentials.append(diff)
            epi = diff.to_module_map()
        nxt, self.inclusion = hwmodule.kernel(epi)
        self.terms.append(cover.free)
        self.syzygies.append(nxt)
        if nxt.is_zero():
            self.complete = True

    def check_minimal(self):
        """ The index of the first new differential that is not radical,
        or None; each differential is only checked once. """
        while self.checked < len(self.differentials):
            if not self.differentials[self.checked].is_radical():
                return self.checked
            self.checked += 1
        return None

    def view(self, depth):
        """ A Resolution with at most depth + 1 terms. """
        count = min(len(self.terms), depth + 1)
        complete = self.complete and count == len(self.terms)
        return Resolution(self.module, self.terms[:count],
                          self.differentials[:max(count - 1, 0)],
                          self.augmentation, self.syzygies[:count + 1],
                          complete)


def _state(mod):
    states = mod.algebra.cached(('resolutions',), dict)
    key = mod.key()
    with _RES_LOCK:
        state = states.get(key)
        if state is None:
            state = _ResolutionState(mod)
            states[key] = state
    return state


def minimal_resolution(mod, max_len):
    """ The minimal projective resolution with terms P_0 ... P_max_len;
    it is marked truncated if the syzygy after the last term is nonzero.
    Every differential is checked to land in the radical. """
    if max_len < 0:
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'The resolution length must not be negative')
    state = _state(mod)
    with _RES_LOCK:
        while not state.complete and len(state.terms) <= max_len:
            state.step()
        res = state.view(max_len)
        bad = state.check_minimal()
    if bad is not None:
        hwcatch.error(hwcatch.NotMinimal,
                      'The differential from term {idx} of the resolution '
                      '{terms} is not radical', partial=res, idx=bad + 1,
                      terms=' <- '.join(res.term_labels()))
    LOG.debug('Resolution of %s: %s', mod, res)
    return res


def _hom_free_dims(free, mod):
    return [mod.dims[top] for top in free.tops]


def _coboundary(res, mod, degree):
    """ The matrix of Hom(P_degree, mod) -> Hom(P_degree+1, mod). """
    field = mod.field
    src = res.terms[degree] if degree < len(res.terms) else None
    dst = res.terms[degree + 1] if degree + 1 < len(res.terms) else None
    cols = sum(_hom_free_dims(src, mod)) if src is not None else 0
    rows = sum(_hom_free_dims(dst, mod)) if dst is not None else 0
    if rows == 0 or cols == 0:
        return hwlinalg.Matrix(field, rows, cols)
    diff = res.differentials[degree]
    grid = []
    for i, stop in enumerate(dst.tops):
        grid.append([
            mod.element_matrix(diff.entries[j][i], ttop, stop)
            for j, ttop in enumerate(src.tops)])
    return hwlinalg.Matrix.from_blocks(
        field, grid, _hom_free_dims(dst, mod), _hom_free_dims(src, mod))


def ext(src, dst, degree, max_len=None):
    """ Ext^degree(src, dst) from the minimal resolution of src.

    The resolution is taken to at least degree + 1 terms; a shorter
    max_len is extended rather than refused. """
    if degree < 0:
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'Negative Ext degree {degree}', degree=degree)
    hwmodule.check_same_algebra(src, dst)
    depth = degree + 1
    if max_len is not None and max_len < depth:
        LOG.debug('Extending the resolution length from %d to %d for '
                  'Ext^%d', max_len, depth, degree)
    elif max_len is not None:
        depth = max_len
    res = minimal_resolution(src, depth)
    field = src.field
    after = _coboundary(res, dst, degree)
    size = after.cols
    if size == 0:
        return ExtGroup(src, dst, degree, 0, [], res)
    if degree > 0:
        before = _coboundary(res, dst, degree - 1)
    else:
        before = hwlinalg.Matrix(field, size, 0)
    cycles = hwlinalg.kernel_basis(after) if after.rows else \
        hwlinalg.Matrix.identity(field, size)
    bounds = hwlinalg.image_basis(before) if before.cols else before
    cocycles = []
    span = bounds
    for vec in cycles.columns():
        cand = span.hstack(hwlinalg.Matrix.from_columns(field, [vec], size))
        if hwlinalg.rank(cand) > span.cols:
            span = cand
            cocycles.append(vec)
    return ExtGroup(src, dst, degree, len(cocycles), cocycles, res)


def ext_dims(src, dst, max_degree):
    """ The dimensions of Ext^0 ... Ext^max_degree. """
    return [ext(src, dst, deg).dimension for deg in range(max_degree + 1)]


def cocycle_to_map(group, cocycle):
    """ The map from the degree-th resolution term into the target that
    represents a cocycle. """
    free = group.resolution.terms[group.degree]
    vectors, pos = [], 0
    for top in free.tops:
        size = group.target.dims[top]
        vectors.append(tuple(cocycle[pos:pos + size]))
        pos += size
    return free_map_to_module(free, group.target, vectors)


def global_dimension_probe(alg, bound=DEFAULT_GLDIM_BOUND):
    """ Finite global dimension, certified infinite global dimension
    through a periodic syzygy, or a report that the bound was exceeded. """
    if bound < 1:
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'The global dimension bound must be positive')

    def build():
        worst = 0
        for vert in range(alg.num_vertices):
            simple = hwalgebra.simple_module(alg, alg.vertex_name(vert))
            syzygies = [simple]
            state = _state(simple)
            for depth in range(bound + 1):
                res = minimal_resolution(simple, depth)
                if res.complete:
                    worst = max(worst, res.length)
                    break
                cur = state.syzygies[depth + 1]
                for prev, old in enumerate(syzygies):
                    if old.dims != cur.dims:
                        continue
                    try:
                        same = hwmodule.is_isomorphic(old, cur).isomorphic
                    except hwcatch.Undecided:
                        same = False
                    if same:
                        witness = 'syzygy {k} of S{v} is isomorphic to ' \
                            'syzygy {j}'.format(k=depth + 1, j=prev,
                                                v=alg.vertex_name(vert))
                        return GlobalDimension(INFINITE, depth + 1 - prev,
                                               witness)
                syzygies.append(cur)
            else:
                return GlobalDimension(
                    EXCEEDS, bound,
                    'S{v} has no terminating resolution of length at '
                    'most {b}'.format(v=alg.vertex_name(vert), b=bound))
        return GlobalDimension(FINITE, worst,
                               'all simple resolutions terminate')

    res = alg.cached(('gldim', bound), build)
    LOG.debug('Global dimension probe: %s', res)
    return res


def require_finite_global_dimension(alg, bound=DEFAULT_GLDIM_BOUND):
    """ Raise InfiniteGlobalDimension unless the probe says finite. """
    probe = global_dimension_probe(alg, bound)
    if probe.kind != FINITE:
        hwcatch.error(hwcatch.InfiniteGlobalDimension,
                      'The algebra does not have finite global dimension: '
                      '{witness}', witness=probe.witness)
    return probe.value


def euler_form(alg, first, second):
    """ The bilinear form <first, second> on dimension vectors given by
    the Cartan matrix; it equals the alternating sum of Ext dimensions
    when the global dimension is finite. """
    field = alg.field
    cartan = hwlinalg.Matrix.from_rows(field, alg.cartan_matrix())
    coords = hwlinalg.solve_vector(cartan, [field.coerce(x) for x in first])
    if coords is None or not hwlinalg.is_invertible(cartan):
        hwcatch.error(hwcatch.InfiniteGlobalDimension,
                      'The Cartan matrix is not invertible')
    return field.normalize(sum(
        (x * field.coerce(y) for x, y in zip(coords, second)), field.zero))


def _preimage(fmap, vert, vec):
    sol = hwlinalg.solve_vector(fmap.blocks[vert], vec)
    if sol is None:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'The map cannot be lifted along the resolution')
    return sol


def lift_map(fmap, src_res, dst_res, depth):
    """ Lift a module map to the resolutions (comparison theorem):
    the k-th entry maps the k-th term of src_res to that of dst_res. """
    alg = fmap.source.algebra
    lifts = []
    for deg in range(depth + 1):
        if deg >= len(src_res.terms):
            break
        sfree = src_res.terms[deg]
        dfree = dst_res.terms[deg] if deg < len(dst_res.terms) else \
            FreeModule(alg, ())
        vectors = []
        for idx, top in enumerate(sfree.tops):
            if deg == 0:
                gen = src_res.augmentation.blocks[top].apply(
                    sfree.generator_vector(idx))
                target = fmap.blocks[top].apply(gen)
                stage = dst_res.augmentation
            else:
                gen = src_res.differentials[deg - 1].vector(idx)
                target = lifts[-1].to_module_map().blocks[top].apply(gen)
                if dfree.is_zero():
                    if any(x != 0 for x in target):
                        hwcatch.error(hwcatch.TruncationTooShallow,
                                      'The target resolution is too short')
                    vectors.append(())
                    continue
                stage = dst_res.differentials[deg - 1].to_module_map()
            if dfree.is_zero():
                vectors.append(())
                continue
            vectors.append(_preimage(stage, top, target))
        lifts.append(FreeMap.from_vectors(sfree, dfree, vectors))
    return lifts
