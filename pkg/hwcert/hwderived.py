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
""" Bounded complexes of projectives as a model of the derived category.

Grading is cohomological: the differential d^n goes from degree n to
degree n + 1.  The shift x[k] has x[k]^n = x^(n+k) and the differential
multiplied by (-1)^k.  Morphisms in the derived category between
complexes of projectives are computed as the cohomology of the total
Hom complex, with D(f) = d_Y f - (-1)^n f d_X on Hom^n.

A complex computed from a resolution that was cut off is marked as
truncated; graded Hom computations involving it only report the degrees
that the missing terms cannot influence. """

import collections
import logging

import six

from . import hwalgebra
from . import hwcatch
from . import hwhomology
from . import hwlinalg
from . import hwmodule


LOG = logging.getLogger(__name__)

DEFAULT_RESOLUTION_DEPTH = 16

Cone = collections.namedtuple('Cone', [
    'complex',
    'inclusion',
    'projection',
])

ResolvedComplex = collections.namedtuple('ResolvedComplex', [
    'complex',
    'quasi_iso',
])


def _sign(num):
    return -1 if num % 2 else 1


class ProjComplex(object):
    """ A bounded complex of finitely generated projective modules.

    terms maps degrees to FreeModules, diffs maps a degree n to the
    FreeMap from terms[n] to terms[n + 1].  The origin, if known, is a
    (module, degree) pair such that the complex is a projective
    resolution of the module placed in that degree. """

    def __init__(self, alg, terms, diffs=None, truncated=False,
                 origin=None):
        self.algebra = alg
        self.terms = dict((deg, free) for deg, free in six.iteritems(terms)
                          if not free.is_zero())
        self.diffs = {}
        for deg, diff in six.iteritems(diffs or {}):
            if deg in self.terms and deg + 1 in self.terms and \
                    not diff.is_zero():
                self.diffs[deg] = diff
        self.truncated = truncated
        self.origin = origin

    @property
    def degrees(self):
        """ The degrees of the nonzero terms, in increasing order. """
        return sorted(self.terms)

    @property
    def min_degree(self):
        """ The lowest degree of a nonzero term. """
        return min(self.terms) if self.terms else None

    @property
    def max_degree(self):
        """ The highest degree of a nonzero term. """
        return max(self.terms) if self.terms else None

    def is_zero(self):
        """ Does the complex have no terms at all? """
        return not self.terms

    def term(self, deg):
        """ The term in a degree, possibly zero. """
        return self.terms.get(deg, hwhomology.FreeModule(self.algebra, ()))

    def diff(self, deg):
        """ The differential from a degree, possibly zero. """
        diff = self.diffs.get(deg)
        if diff is None:
            return hwhomology.FreeMap.zero(self.term(deg),
                                           self.term(deg + 1))
        return diff

    def is_complex(self):
        """ Check that the differentials compose to zero. """
        for deg in self.degrees:
            if not self.diff(deg + 1).compose(self.diff(deg)).is_zero():
                return False
        return True

    def to_module_complex(self):
        """ The same complex with the terms as ordinary modules. """
        return ModuleComplex(
            self.algebra,
            dict((deg, free.module)
                 for deg, free in six.iteritems(self.terms)),
            dict((deg, diff.to_module_map())
                 for deg, diff in six.iteritems(self.diffs)),
            truncated=self.truncated)

    def label(self):
        """ A one-line description of the terms. """
        if not self.terms:
            return '0'
        return ' -> '.join(
            '{free}@{deg}'.format(free=self.term(deg).label(), deg=deg)
            for deg in range(self.min_degree, self.max_degree + 1))

    def __repr__(self):
        return 'ProjComplex({label}{trunc})'.format(
            label=self.label(),
            trunc=', truncated' if self.truncated else '')


class ModuleComplex(object):
    """ A bounded complex of arbitrary modules. """

    def __init__(self, alg, terms, diffs=None, truncated=False):
        self.algebra = alg
        self.terms = dict((deg, mod) for deg, mod in six.iteritems(terms)
                          if not mod.is_zero())
        self.diffs = dict((deg, diff) for deg, diff in
                          six.iteritems(diffs or {})
                          if deg in self.terms and deg + 1 in self.terms)
        self.truncated = truncated
        self._zero = None

    @property
    def degrees(self):
        """ The degrees of the nonzero terms. """
        return sorted(self.terms)

    @property
    def min_degree(self):
        """ The lowest degree of a nonzero term. """
        return min(self.terms) if self.terms else None

    @property
    def max_degree(self):
        """ The highest degree of a nonzero term. """
        return max(self.terms) if self.terms else None

    def is_zero(self):
        """ Does the complex have no terms at all? """
        return not self.terms

    def term(self, deg):
        """ The term in a degree, possibly zero. """
        mod = self.terms.get(deg)
        if mod is None:
            if self._zero is None:
                self._zero = hwmodule.direct_sum([], self.algebra).module
            return self._zero
        return mod

    def diff(self, deg):
        """ The differential from a degree, possibly zero. """
        diff = self.diffs.get(deg)
        if diff is None:
            return hwmodule.ModuleMap.zero(self.term(deg), self.term(deg + 1))
        return diff


def module_in_degree(mod, deg=0):
    """ A module as a complex concentrated in one degree. """
    return ModuleComplex(mod.algebra, {deg: mod})


def complex_of_module(mod, depth=DEFAULT_RESOLUTION_DEPTH):
    """ The minimal projective resolution of a module, in degrees <= 0. """
    res = hwhomology.minimal_resolution(mod, depth)
    terms = dict((-idx, free) for idx, free in enumerate(res.terms))
    diffs = dict((-idx - 1, diff)
                 for idx, diff in enumerate(res.differentials))
    return ProjComplex(mod.algebra, terms, diffs, truncated=res.truncated,
                       origin=(mod, 0))


def projective_in_degree(alg, vertex, deg=0):
    """ An indecomposable projective as a complex in one degree. """
    vidx = alg.vertex_index(vertex)
    return ProjComplex(alg, {deg: hwhomology.FreeModule(alg, (vidx,))},
                       origin=(hwalgebra.projective_module(alg, vertex), deg))


def shift(obj, num):
    """ The shift obj[num]. """
    sign = _sign(num)
    if isinstance(obj, ModuleComplex):
        return ModuleComplex(
            obj.algebra,
            dict((deg - num, mod) for deg, mod in six.iteritems(obj.terms)),
            dict((deg - num, diff.scale(sign))
                 for deg, diff in six.iteritems(obj.diffs)),
            truncated=obj.truncated)
    origin = None
    if obj.origin is not None:
        origin = (obj.origin[0], obj.origin[1] - num)
    return ProjComplex(
        obj.algebra,
        dict((deg - num, free) for deg, free in six.iteritems(obj.terms)),
        dict((deg - num, diff.scale(sign) if sign < 0 else diff)
             for deg, diff in six.iteritems(obj.diffs)),
        truncated=obj.truncated, origin=origin)


class ChainMap(object):
    """ A degree preserving chain map between complexes of projectives:
    maps[p] goes from source.term(p) to target.term(p). """

    def __init__(self, source, target, maps):
        self.source = source
        self.target = target
        self.maps = dict(maps)

    def component(self, deg):
        """ The component in a degree, possibly zero. """
        fmap = self.maps.get(deg)
        if fmap is None:
            return hwhomology.FreeMap.zero(self.source.term(deg),
                                           self.target.term(deg))
        return fmap

    def is_chain_map(self):
        """ Check that the map commutes with the differentials. """
        degs = set(self.source.degrees) | set(self.target.degrees)
        for deg in degs:
            left = self.target.diff(deg).compose(self.component(deg))
            right = self.component(deg + 1).compose(self.source.diff(deg))
            if not (left - right).is_zero():
                return False
        return True


def direct_sum_complexes(objs, alg):
    """ The direct sum of complexes of projectives. """
    if not objs:
        return ProjComplex(alg, {})
    degs = set()
    for obj in objs:
        degs.update(obj.degrees)
    terms, diffs = {}, {}
    for deg in degs:
        terms[deg] = hwhomology.FreeModule(
            alg, sum((obj.term(deg).tops for obj in objs), ()))
    for deg in degs:
        if deg + 1 not in degs:
            continue
        grid = [[obj.diff(deg) if pos == col else None
                 for col, obj in enumerate(objs)]
                for pos, _ in enumerate(objs)]
        diffs[deg] = hwhomology.FreeMap.from_grid(
            [obj.term(deg) for obj in objs],
            [obj.term(deg + 1) for obj in objs], grid)
    return ProjComplex(alg, terms, diffs,
                       truncated=any(obj.truncated for obj in objs))


def cone(fmap):
    """ The mapping cone of a chain map x -> y, with cone^n = x^(n+1) + y^n
    and d = [[-d_x, 0], [f, d_y]], together with the inclusion of y and
    the projection onto x[1]. """
    src, dst = fmap.source, fmap.target
    alg = src.algebra
    degs = set(deg - 1 for deg in src.degrees) | set(dst.degrees)
    terms, diffs = {}, {}
    for deg in degs:
        terms[deg] = src.term(deg + 1) + dst.term(deg)
    for deg in degs:
        grid = [
            [-src.diff(deg + 1), None],
            [fmap.component(deg + 1), dst.diff(deg)],
        ]
        diffs[deg] = hwhomology.FreeMap.from_grid(
            [src.term(deg + 1), dst.term(deg)],
            [src.term(deg + 2), dst.term(deg + 1)], grid)
    res = ProjComplex(alg, terms, diffs,
                      truncated=src.truncated or dst.truncated)
    incl, proj = {}, {}
    for deg in degs:
        xfree, yfree = src.term(deg + 1), dst.term(deg)
        incl[deg] = hwhomology.FreeMap.from_grid(
            [yfree], [xfree, yfree],
            [[None], [hwhomology.FreeMap.identity(yfree)]])
        proj[deg] = hwhomology.FreeMap.from_grid(
            [xfree, yfree], [xfree],
            [[hwhomology.FreeMap.identity(xfree), None]])
    return Cone(complex=res,
                inclusion=ChainMap(dst, res, incl),
                projection=ChainMap(res, shift(src, 1), proj))


def _target_form(obj):
    """ The target of a graded Hom computation as a module complex. """
    if isinstance(obj, hwmodule.Module):
        return module_in_degree(obj, 0)
    if isinstance(obj, ModuleComplex):
        return obj
    if obj.truncated and obj.origin is not None:
        mod, deg = obj.origin
        return module_in_degree(mod, deg)
    return obj.to_module_complex()


class GradedHom(object):
    """ The graded space of derived category maps Hom(x, y[n]).

    dims maps the degrees with nonzero spaces to their dimensions;
    cocycles maps them to lists of representative cocycles of the total
    Hom complex.  support is the range of degrees where the Hom complex
    has nonzero terms, window the part of it that was computed. """

    def __init__(self, source, target, dims, cocycles, support, window,
                 layouts):
        self.source = source
        self.target = target
        self.dims = dict((deg, dim) for deg, dim in six.iteritems(dims)
                         if dim)
        self.cocycles = cocycles
        self.support = support
        self.window = window
        self._layouts = layouts

    def _in_support(self, deg):
        if self.support is None:
            return False
        low, high = self.support
        return (low is None or low <= deg) and (high is None or deg <= high)

    @property
    def complete(self):
        """ Does the computed window cover the whole support? """
        if self.support is None:
            return True
        low, high = self.support
        return low is not None and high is not None and \
            self.window[0] <= low and self.window[1] >= high

    def dimension(self, deg):
        """ The dimension of Hom(x, y[deg]). """
        if not self._in_support(deg):
            return 0
        if not self.window[0] <= deg <= self.window[1]:
            hwcatch.error(hwcatch.TruncationTooShallow,
                          'Degree {deg} lies outside of the computed '
                          'window {window}', deg=deg,
                          window=list(self.window))
        return self.dims.get(deg, 0)

    def is_zero(self):
        """ Is the graded space zero in all the computed degrees? """
        return not self.dims

    def total(self):
        """ The sum of the dimensions. """
        return sum(six.itervalues(self.dims))

    def degrees(self):
        """ The degrees with nonzero spaces, in increasing order. """
        return sorted(self.dims)

    def euler_characteristic(self):
        """ The alternating sum of the dimensions. """
        return sum(_sign(deg) * dim for deg, dim in six.iteritems(self.dims))

    def components(self, deg, vector):
        """ Split a Hom^deg vector into per-degree FreeMaps from the
        source terms into the target terms; the target must be a complex
        of projectives. """
        layout = self._layouts[deg]
        target = self.target
        res = {}
        for pdeg, pieces in layout:
            sfree = self.source.term(pdeg)
            vectors = [tuple(vector[start:start + size])
                       for start, size in pieces]
            res[pdeg] = hwhomology.FreeMap.from_vectors(
                sfree, target.term(pdeg + deg), vectors)
        return res

    def module_components(self, deg, vector):
        """ Split a Hom^deg vector into module maps from the source terms
        into the target terms given as modules. """
        layout = self._layouts[deg]
        target = _target_form(self.target)
        res = {}
        for pdeg, pieces in layout:
            sfree = self.source.term(pdeg)
            vectors = [tuple(vector[start:start + size])
                       for start, size in pieces]
            res[pdeg] = hwhomology.free_map_to_module(
                sfree, target.term(pdeg + deg), vectors)
        return res

    def chain_map(self, deg, vector):
        """ A cocycle of degree deg as a chain map x -> y[deg]. """
        shifted = shift(self.target, deg)
        comps = self.components(deg, vector)
        return ChainMap(self.source, shifted, dict(
            (pdeg, hwhomology.FreeMap(fmap.source, shifted.term(pdeg),
                                      fmap.entries, check=False))
            for pdeg, fmap in six.iteritems(comps)))

    def __repr__(self):
        return 'GradedHom({dims})'.format(dims=dict(self.dims))


def _hom_layout(src, tgt, deg):
    """ The blocks of Hom^deg: (source degree, [(start, size), ...]). """
    layout = []
    pos = 0
    for pdeg in src.degrees:
        tmod = tgt.term(pdeg + deg)
        if tmod.is_zero():
            continue
        pieces = []
        for top in src.term(pdeg).tops:
            size = tmod.dims[top]
            pieces.append((pos, size))
            pos += size
        layout.append((pdeg, pieces))
    return layout, pos


def _hom_differential(src, tgt, deg, layouts):
    """ The matrix of D: Hom^deg -> Hom^(deg+1). """
    field = src.algebra.field
    lsrc, ssize = layouts[deg]
    ldst, dsize = layouts[deg + 1]
    data = [[field.zero] * ssize for _ in range(dsize)]
    sblocks = dict((pdeg, pieces) for pdeg, pieces in lsrc)
    sign = _sign(deg)
    for pdeg, pieces in ldst:
        sfree = src.term(pdeg)
        # d_Y f^p: the component of f at (p, i), pushed by d_Y
        if pdeg in sblocks:
            dmap = tgt.diff(pdeg + deg)
            for (dstart, dlen), (sstart, slen), top in zip(
                    pieces, sblocks[pdeg], sfree.tops):
                blk = dmap.blocks[top]
                for row in range(dlen):
                    for col in range(slen):
                        val = blk[row, col]
                        if val != 0:
                            data[dstart + row][sstart + col] = \
                                field.normalize(
                                    data[dstart + row][sstart + col] + val)
        # -(-1)^deg f^(p+1) d_X^p
        if pdeg + 1 in sblocks:
            xdiff = src.diff(pdeg)
            nfree = src.term(pdeg + 1)
            tmod = tgt.term(pdeg + 1 + deg)
            for i, ((dstart, dlen), stop) in enumerate(zip(pieces,
                                                           sfree.tops)):
                for j, ((sstart, slen), ttop) in enumerate(zip(
                        sblocks[pdeg + 1], nfree.tops)):
                    elem = xdiff.entries[j][i]
                    if not elem:
                        continue
                    blk = tmod.element_matrix(elem, ttop, stop)
                    for row in range(dlen):
                        for col in range(slen):
                            val = blk[row, col]
                            if val != 0:
                                data[dstart + row][sstart + col] = \
                                    field.normalize(
                                        data[dstart + row][sstart + col] -
                                        sign * val)
    return hwlinalg.Matrix(field, dsize, ssize, data)


def hom_window(src, tgt):
    """ The support of Hom(src, tgt[n]) and the part of it that is not
    affected by truncated resolutions; tgt is in target form.  An
    unbounded end of the support is None. """
    if src.is_zero() or tgt.is_zero():
        return None, None
    low = tgt.min_degree - src.max_degree
    high = tgt.max_degree - src.min_degree
    if src.truncated and tgt.truncated:
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'Cannot compute Hom between two truncated complexes')
    support = (low, high)
    if src.truncated:
        support = (low, None)
        high = min(high, tgt.min_degree - src.min_degree - 1)
    if tgt.truncated:
        support = (None, high)
        low = max(low, tgt.min_degree - src.min_degree + 1)
    return support, (low, high)


def _covers(avail, support, wanted):
    """ Are the wanted degrees inside the support all computable? """
    low = wanted[0] if support[0] is None else max(wanted[0], support[0])
    high = wanted[1] if support[1] is None else min(wanted[1], support[1])
    return low > high or (avail[0] <= low and high <= avail[1])


def graded_hom(src, tgt, window=None):
    """ The graded Hom space from a complex of projectives src into a
    complex of projectives, a module complex or a module. """
    hwmodule.check_same_algebra(src, tgt)
    target = _target_form(tgt)
    support, avail = hom_window(src, target)
    if support is None:
        return GradedHom(src, tgt, {}, {}, None, None, {})
    if window is None:
        window = avail
    elif not _covers(avail, support, window):
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'The requested degrees {window} are not covered by '
                      'the resolutions', window=list(window))
    low, high = window
    layouts = {}
    for deg in range(low - 1, high + 2):
        layouts[deg] = _hom_layout(src, target, deg)
    field = src.algebra.field
    dims, cocycles = {}, {}
    for deg in range(low, high + 1):
        size = layouts[deg][1]
        if size == 0:
            continue
        after = _hom_differential(src, target, deg, layouts)
        before = _hom_differential(src, target, deg - 1, layouts)
        cycles = hwlinalg.kernel_basis(after) if after.rows else \
            hwlinalg.Matrix.identity(field, size)
        span = hwlinalg.image_basis(before) if before.cols else before
        reps = []
        for vec in cycles.columns():
            cand = span.hstack(hwlinalg.Matrix.from_columns(
                field, [vec], size))
            if hwlinalg.rank(cand) > span.cols:
                span = cand
                reps.append(vec)
        if reps:
            dims[deg] = len(reps)
            cocycles[deg] = reps
    return GradedHom(src, tgt, dims, cocycles, support, window,
                     dict((deg, layout[0])
                          for deg, layout in six.iteritems(layouts)))


def cohomology_modules(obj):
    """ The nonzero cohomology modules by degree.  For a truncated
    complex the lowest degree is left out. """
    if isinstance(obj, ProjComplex):
        obj = obj.to_module_complex()
    res = {}
    for deg in obj.degrees:
        if obj.truncated and deg == obj.min_degree:
            continue
        cyc, incl = hwmodule.kernel(obj.diff(deg))
        prev = obj.diff(deg - 1)
        bases = []
        for vert in range(obj.algebra.num_vertices):
            img = prev.blocks[vert]
            img = hwlinalg.image_basis(img) if img.cols else img
            bases.append(hwlinalg.coordinates(incl.blocks[vert], img)
                         if img.cols else
                         hwlinalg.Matrix(cyc.field, cyc.dims[vert], 0))
        quot, _ = hwmodule.quotient_of(cyc, bases)
        if not quot.is_zero():
            res[deg] = quot
    return res


def standard_aisle_degrees(obj):
    """ The lowest and the highest degree of nonzero cohomology. """
    coh = cohomology_modules(obj)
    if not coh:
        return (None, None)
    return (min(coh), max(coh))


def same_cohomology(first, second):
    """ Do two complexes have isomorphic cohomology in every degree? """
    one, two = cohomology_modules(first), cohomology_modules(second)
    if sorted(one) != sorted(two):
        return False
    return all(hwmodule.is_isomorphic(one[deg], two[deg]).isomorphic
               for deg in one)


def _unit_inverse(alg, elem, vert):
    """ The inverse of an element of e_v A e_v with a nonzero e_v part. """
    field = alg.field
    idem = alg.idempotent(vert)
    coef = elem[idem]
    inv = field.inv(coef)
    # u = c (e + r) with r nilpotent, u^-1 = c^-1 (e - r + r^2 - ...)
    rest = dict((idx, field.normalize(-val * inv))
                for idx, val in six.iteritems(elem) if idx != idem)
    total = {idem: field.one}
    power = {idem: field.one}
    for _ in range(alg.dimension + 1):
        power = alg.multiply(power, rest)
        if not power:
            break
        for idx, val in six.iteritems(power):
            new = field.normalize(total.get(idx, field.zero) + val)
            if new == 0:
                total.pop(idx, None)
            else:
                total[idx] = new
    return dict((idx, field.normalize(val * inv))
                for idx, val in six.iteritems(total))


def _find_unit(obj, deg):
    diff = obj.diffs.get(deg)
    if diff is None:
        return None
    alg = obj.algebra
    for j, ttop in enumerate(diff.target.tops):
        for i, stop in enumerate(diff.source.tops):
            if ttop != stop:
                continue
            if alg.idempotent(stop) in diff.entries[j][i]:
                return (j, i)
    return None


def minimize(obj):
    """ Strip contractible summands by Gaussian elimination of the
    invertible components of the differentials. """
    alg = obj.algebra
    terms = dict(obj.terms)
    diffs = dict(obj.diffs)
    removed = 0
    while True:
        cur = ProjComplex(alg, terms, diffs, obj.truncated, obj.origin)
        hit = None
        for deg in cur.degrees:
            if obj.truncated and deg == cur.min_degree:
                continue
            pos = _find_unit(cur, deg)
            if pos is not None:
                hit = (deg, pos)
                break
        if hit is None:
            break
        deg, (j, i) = hit
        diff = cur.diff(deg)
        src, dst = diff.source, diff.target
        vert = src.tops[i]
        keep_s = [pos for pos in range(src.rank) if pos != i]
        keep_t = [pos for pos in range(dst.rank) if pos != j]
        beta = diff.submap([j], keep_s)
        gamma = diff.submap(keep_t, [i])
        delta = diff.submap(keep_t, keep_s)
        finv = hwhomology.FreeMap(
            hwhomology.FreeModule(alg, (vert,)),
            hwhomology.FreeModule(alg, (vert,)),
            [[_unit_inverse(alg, diff.entries[j][i], vert)]], check=False)
        new_diff = delta - gamma.compose(finv.compose(beta))
        prev = cur.diff(deg - 1)
        nxt = cur.diff(deg + 1)
        terms[deg] = delta.source
        terms[deg + 1] = delta.target
        diffs[deg] = new_diff
        diffs[deg - 1] = prev.submap(keep_s, range(prev.source.rank))
        diffs[deg + 1] = nxt.submap(range(nxt.target.rank), keep_t)
        removed += 1
    if removed:
        LOG.debug('Minimization removed %d contractible pairs', removed)
    return ProjComplex(alg, terms, diffs, obj.truncated, obj.origin)


def _block_map(source, target, grid):
    """ A module map between direct sums given by a grid of ModuleMaps
    (None for zero), with source and target given as lists. """
    ssum = hwmodule.direct_sum(source, source[0].algebra)
    tsum = hwmodule.direct_sum(target, target[0].algebra)
    field = ssum.module.field
    blocks = []
    for vert in range(ssum.module.algebra.num_vertices):
        rows = [mod.dims[vert] for mod in target]
        cols = [mod.dims[vert] for mod in source]
        blocks.append(hwlinalg.Matrix.from_blocks(field, [
            [cell.blocks[vert] if cell is not None else None
             for cell in row] for row in grid], rows, cols))
    return ssum, tsum, hwmodule.ModuleMap(ssum.module, tsum.module, blocks)


def resolve_complex(cplx, depth=DEFAULT_RESOLUTION_DEPTH):
    """ A complex of projectives quasi-isomorphic to a bounded complex of
    modules, built from the top degree down; quasi_iso maps each
    projective term into the module term of the same degree. """
    alg = cplx.algebra
    field = alg.field
    if cplx.is_zero():
        return ResolvedComplex(ProjComplex(alg, {}), {})
    low, high = cplx.min_degree, cplx.max_degree
    empty = hwhomology.FreeModule(alg, ())
    terms, diffs, quasi = {}, {}, {}
    prev_free, prev_diff, prev_pi = empty, None, None
    truncated = True
    for deg in range(high, low - depth - 2, -1):
        cmod = cplx.term(deg)
        above = terms.get(deg + 2, empty)
        # (p, c) -> (d_P p, pi p + d_C c) on P^(deg+1) + C^deg
        dpmap = prev_diff.to_module_map() if prev_diff is not None else \
            hwmodule.ModuleMap.zero(prev_free.module, above.module)
        pimap = prev_pi if prev_pi is not None else \
            hwmodule.ModuleMap.zero(prev_free.module, cplx.term(deg + 1))
        ssum, _, total = _block_map(
            [prev_free.module, cmod], [above.module, cplx.term(deg + 1)],
            [[dpmap, None], [pimap, cplx.diff(deg)]])
        cyc, incl = hwmodule.kernel(total)
        before = cplx.diff(deg - 1)
        bases = []
        for vert in range(alg.num_vertices):
            col = hwlinalg.Matrix(field, prev_free.module.dims[vert],
                                  before.source.dims[vert]).vstack(
                                      before.blocks[vert])
            col = hwlinalg.image_basis(col) if col.cols else col
            bases.append(hwlinalg.coordinates(incl.blocks[vert], col)
                         if col.cols else
                         hwlinalg.Matrix(field, cyc.dims[vert], 0))
        quot, qproj = hwmodule.quotient_of(cyc, bases)
        if quot.is_zero():
            if deg < low:
                truncated = False
                break
            prev_free, prev_diff, prev_pi = empty, None, None
            continue
        cover = hwhomology.projective_cover(quot)
        split = ssum.module.dims
        zvecs, pvecs = [], []
        for top, vec in zip(cover.free.tops, hwhomology.generator_images(
                cover.free, cover.epi)):
            lift = hwlinalg.solve_vector(qproj.blocks[top], vec)
            whole = incl.blocks[top].apply(lift)
            cut = prev_free.module.dims[top]
            zvecs.append(tuple(field.normalize(-x) for x in whole[:cut]))
            pvecs.append(tuple(whole[cut:split[top]]))
        free = cover.free
        terms[deg] = free
        if not prev_free.is_zero():
            diffs[deg] = hwhomology.FreeMap.from_vectors(free, prev_free,
                                                         zvecs)
        quasi[deg] = hwhomology.free_map_to_module(free, cmod, pvecs)
        prev_free, prev_diff, prev_pi = free, diffs.get(deg), quasi[deg]
        if prev_diff is None:
            prev_diff = hwhomology.FreeMap.zero(free, empty)
    res = ProjComplex(alg, terms, diffs, truncated=truncated)
    if truncated:
        LOG.warning('Complex resolution stopped at depth %d', depth)
    return ResolvedComplex(res, quasi)


def nakayama_map(fmap, source, target):
    """ The Nakayama functor on a map between sums of projectives: the
    induced map between the sums of the corresponding injectives. """
    alg = fmap.algebra
    field = alg.field
    blocks = []
    for vert in range(alg.num_vertices):
        soffs, toffs = [], []
        pos = 0
        for top in fmap.source.tops:
            soffs.append(pos)
            pos += len(alg.paths(vert, top))
        pos = 0
        for top in fmap.target.tops:
            toffs.append(pos)
            pos += len(alg.paths(vert, top))
        data = [[field.zero] * source.dims[vert]
                for _ in range(target.dims[vert])]
        for j, ttop in enumerate(fmap.target.tops):
            rows = alg.paths(vert, ttop)
            for i, stop in enumerate(fmap.source.tops):
                elem = fmap.entries[j][i]
                if not elem:
                    continue
                cols = alg.paths(vert, stop)
                for rpos, xidx in enumerate(rows):
                    prod = alg.multiply(elem, {xidx: field.one})
                    for qidx, coef in six.iteritems(prod):
                        data[toffs[j] + rpos][soffs[i] + cols.index(qidx)] = \
                            coef
        blocks.append(hwlinalg.Matrix(field, target.dims[vert],
                                      source.dims[vert], data))
    return hwmodule.ModuleMap(source, target, blocks)


def _injective_sum(alg, free):
    return hwmodule.direct_sum(
        [hwalgebra.injective_module(alg, alg.vertex_name(top))
         for top in free.tops], alg).module


def nakayama(obj, depth=DEFAULT_RESOLUTION_DEPTH):
    """ The derived Nakayama functor: P_v goes to I_v termwise, then the
    resulting complex of injectives is resolved by projectives. """
    alg = obj.algebra
    hwhomology.require_finite_global_dimension(alg)
    terms = dict((deg, _injective_sum(alg, free))
                 for deg, free in six.iteritems(obj.terms))
    diffs = dict((deg, nakayama_map(diff, terms[deg], terms[deg + 1]))
                 for deg, diff in six.iteritems(obj.diffs))
    resolved = resolve_complex(ModuleComplex(alg, terms, diffs), depth)
    return minimize(resolved.complex)
