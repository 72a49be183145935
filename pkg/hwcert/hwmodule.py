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
""" Representations of quivers with relations and the maps between them.

A module assigns a vector space (given by its dimension) to every vertex
and a matrix to every arrow; an arrow from i to j acts by a matrix with
dims[j] rows and dims[i] columns.  Module maps are given by one matrix
per vertex.  Subobjects are always returned together with their
structure maps (inclusion, projection) so that the callers can transport
elements between the objects. """

import collections
import itertools
import logging
import random

import six

from . import hwcatch
from . import hwlinalg


LOG = logging.getLogger(__name__)

DEFAULT_ISO_TRIES = 64
DEFAULT_SEED = 20240101
# evaluation points tried by the exhaustive isomorphism search
PENCIL_LIMIT = 4096

DirectSum = collections.namedtuple('DirectSum', [
    'module',
    'injections',
    'projections',
])

IsoCheck = collections.namedtuple('IsoCheck', [
    'isomorphic',
    'certificate',
    'reason',
])


def check_same_algebra(*objs):
    """ Make sure that all the objects live over the same algebra. """
    algs = set(id(obj.algebra) for obj in objs)
    if len(algs) > 1:
        hwcatch.error(hwcatch.AlgebraMismatch,
                      'The objects are defined over different algebras')


class Module(object):
    """ A finite dimensional representation of a quiver with relations. """

    def __init__(self, alg, dims, action, check=True):
        """ Store the dimensions and the arrow matrices; missing arrows
        act by zero.  Unless told otherwise, verify the relations. """
        self.algebra = alg
        self.field = alg.field
        self.dims = tuple(int(dim) for dim in dims)
        if len(self.dims) != alg.num_vertices:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Expected {n} vertex dimensions, got {dims}',
                          n=alg.num_vertices, dims=list(self.dims))
        quiver = alg.quiver
        for name in action:
            quiver.arrow(name)
        self.action = {}
        for arrow in quiver.arrows:
            src = quiver.vertex_index(arrow.source)
            dst = quiver.vertex_index(arrow.target)
            mat = action.get(arrow.name)
            if mat is None:
                mat = hwlinalg.Matrix.zero(self.field, self.dims[dst],
                                           self.dims[src])
            elif not isinstance(mat, hwlinalg.Matrix):
                mat = hwlinalg.Matrix.from_rows(self.field, mat,
                                                cols=self.dims[src])
            if mat.shape != (self.dims[dst], self.dims[src]):
                hwcatch.error(hwcatch.DimensionMismatch,
                              'Arrow {name} should act by a {rows}x{cols} '
                              'matrix, got {shape}', name=arrow.name,
                              rows=self.dims[dst], cols=self.dims[src],
                              shape=mat.shape)
            self.action[arrow.name] = mat
        self._key = None
        if check:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            word = rel.terms[0][1]
            src, dst = self.algebra.quiver.word_endpoints(word)
            total = hwlinalg.Matrix.zero(self.field, self.dims[dst],
                                         self.dims[src])
            for coef, word in rel.terms:
                total = total + self.path_matrix(word).scale(coef)
            if not total.is_zero():
                hwcatch.error(hwcatch.IllFormedRelation,
                              'The module does not satisfy the relation '
                              '{rel}', rel=' + '.join(
                                  '{c}*{w}'.format(c=coef, w='*'.join(word))
                                  for coef, word in rel.terms))

    @property
    def dimension(self):
        """ The total dimension. """
        return sum(self.dims)

    def is_zero(self):
        """ Is this the zero module? """
        return self.dimension == 0

    def path_matrix(self, word, vertex=None):
        """ The action of a path: x1 o ... o xk acts as M(x1) ... M(xk);
        the trivial path at a vertex acts as the identity. """
        if not word:
            return hwlinalg.Matrix.identity(self.field, self.dims[vertex])
        res = self.action[word[0]]
        for name in word[1:]:
            res = res * self.action[name]
        return res

    def element_matrix(self, elem, source, target):
        """ The action of an algebra element from e_target A e_source. """
        res = hwlinalg.Matrix.zero(self.field, self.dims[target],
                                   self.dims[source])
        for idx, coef in six.iteritems(elem):
            path = self.algebra.basis[idx]
            if path.source != source or path.target != target:
                hwcatch.error(hwcatch.DimensionMismatch,
                              'The path {path} does not run from {src} '
                              'to {dst}', path=self.algebra.path_str(idx),
                              src=source, dst=target)
            res = res + self.path_matrix(path.arrows, source).scale(coef)
        return res

    def key(self):
        """ A hashable description of the module, used for caching. """
        if self._key is None:
            self._key = (self.dims, tuple(
                self.action[arrow.name]
                for arrow in self.algebra.quiver.arrows))
        return self._key

    def __repr__(self):
        return 'Module(dims={dims})'.format(dims=list(self.dims))


class ModuleMap(object):
    """ A homomorphism of modules: one matrix per vertex. """

    def __init__(self, source, target, blocks, check=False):
        """ Store the blocks; None stands for a zero block. """
        check_same_algebra(source, target)
        self.source = source
        self.target = target
        self.field = source.field
        field = self.field
        res = []
        for vert, blk in enumerate(blocks):
            shape = (target.dims[vert], source.dims[vert])
            if blk is None:
                blk = hwlinalg.Matrix.zero(field, *shape)
            if blk.shape != shape:
                hwcatch.error(hwcatch.DimensionMismatch,
                              'Vertex {v}: expected a {shape} block, got '
                              '{got}', v=vert, shape=shape, got=blk.shape)
            res.append(blk)
        if len(res) != source.algebra.num_vertices:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Expected {n} blocks, got {got}',
                          n=source.algebra.num_vertices, got=len(res))
        self.blocks = tuple(res)
        if check and not self.is_homomorphism():
            hwcatch.error(hwcatch.DimensionMismatch,
                          'The blocks do not commute with the arrows')

    @classmethod
    def identity(cls, mod):
        """ The identity map of a module. """
        return cls(mod, mod, [hwlinalg.Matrix.identity(mod.field, dim)
                              for dim in mod.dims])

    @classmethod
    def zero(cls, source, target):
        """ The zero map. """
        return cls(source, target, [None] * len(source.dims))

    def is_homomorphism(self):
        """ Check that the blocks intertwine the arrow actions. """
        quiver = self.source.algebra.quiver
        for arrow in quiver.arrows:
            src = quiver.vertex_index(arrow.source)
            dst = quiver.vertex_index(arrow.target)
            if (self.target.action[arrow.name] * self.blocks[src] !=
                    self.blocks[dst] * self.source.action[arrow.name]):
                return False
        return True

    def is_zero(self):
        """ Is this the zero map? """
        return all(blk.is_zero() for blk in self.blocks)

    def compose(self, other):
        """ The composition self o other. """
        if other.target is not self.source and \
                other.target.key() != self.source.key():
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Cannot compose maps that do not fit together')
        return ModuleMap(other.source, self.target, [
            mine * theirs for mine, theirs in zip(self.blocks, other.blocks)])

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [
            mine + theirs for mine, theirs in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        return ModuleMap(self.source, self.target, [
            mine - theirs for mine, theirs in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coef):
        """ Multiply the map by a scalar. """
        return ModuleMap(self.source, self.target,
                         [blk.scale(coef) for blk in self.blocks])

    def total_matrix(self):
        """ The block diagonal matrix of the whole map. """
        return hwlinalg.Matrix.block_diagonal(self.field, self.blocks)

    def to_vector(self):
        """ The entries of all the blocks, row by row. """
        return tuple(x for blk in self.blocks
                     for row in blk.to_lists() for x in row)

    def rank(self):
        """ The total rank. """
        return sum(hwlinalg.rank(blk) for blk in self.blocks)

    def is_iso(self):
        """ Is every block square and invertible? """
        return all(hwlinalg.is_invertible(blk) for blk in self.blocks)

    def inverse(self):
        """ The inverse of an isomorphism. """
        return ModuleMap(self.target, self.source,
                         [hwlinalg.inverse(blk) for blk in self.blocks])

    def __repr__(self):
        return 'ModuleMap({src} -> {dst})'.format(
            src=list(self.source.dims), dst=list(self.target.dims))


def map_from_vector(source, target, vector):
    """ Rebuild a map from the output of ModuleMap.to_vector(). """
    blocks = []
    pos = 0
    for sdim, tdim in zip(source.dims, target.dims):
        size = sdim * tdim
        part = vector[pos:pos + size]
        blocks.append(hwlinalg.Matrix(source.field, tdim, sdim, [
            part[row * sdim:(row + 1) * sdim] for row in range(tdim)]))
        pos += size
    return ModuleMap(source, target, blocks)


def hom_space(src, dst):
    """ A basis of the space of module maps from src to dst. """
    check_same_algebra(src, dst)
    alg = src.algebra
    field = src.field
    quiver = alg.quiver
    offsets = []
    total = 0
    for sdim, tdim in zip(src.dims, dst.dims):
        offsets.append(total)
        total += sdim * tdim
    if total == 0:
        return []

    # the unknown X_v[r][c] sits at offsets[v] + r * src.dims[v] + c
    equations = []
    zero = field.zero
    for arrow in quiver.arrows:
        iv = quiver.vertex_index(arrow.source)
        jv = quiver.vertex_index(arrow.target)
        nmat = dst.action[arrow.name]
        mmat = src.action[arrow.name]
        for row in range(dst.dims[jv]):
            for col in range(src.dims[iv]):
                eqn = [zero] * total
                for k in range(dst.dims[iv]):
                    coef = nmat[row, k]
                    if coef != 0:
                        pos = offsets[iv] + k * src.dims[iv] + col
                        eqn[pos] = field.normalize(eqn[pos] + coef)
                for k in range(src.dims[jv]):
                    coef = mmat[k, col]
                    if coef != 0:
                        pos = offsets[jv] + row * src.dims[jv] + k
                        eqn[pos] = field.normalize(eqn[pos] - coef)
                equations.append(eqn)
    if equations:
        ker = hwlinalg.kernel_basis(
            hwlinalg.Matrix(field, len(equations), total, equations))
        vectors = ker.columns()
    else:
        vectors = hwlinalg.Matrix.identity(field, total).columns()
    return [map_from_vector(src, dst, vec) for vec in vectors]


def hom_dim(src, dst):
    """ The dimension of the space of module maps. """
    return len(hom_space(src, dst))


def coordinates_of_maps(basis, maps):
    """ Express maps as combinations of the given linearly independent
    maps, returning one coordinate tuple per map. """
    if not maps:
        return []
    field = maps[0].field
    size = len(maps[0].to_vector())
    if not basis:
        if any(not fmap.is_zero() for fmap in maps):
            hwcatch.error(hwcatch.DimensionMismatch,
                          'A nonzero map in an empty span')
        return [() for _ in maps]
    bmat = hwlinalg.Matrix.from_columns(
        field, [fmap.to_vector() for fmap in basis], size)
    vmat = hwlinalg.Matrix.from_columns(
        field, [fmap.to_vector() for fmap in maps], size)
    return hwlinalg.coordinates(bmat, vmat).columns()


def combine_maps(basis, coefs, source, target):
    """ A linear combination of maps. """
    res = ModuleMap.zero(source, target)
    for fmap, coef in zip(basis, coefs):
        if coef != 0:
            res = res + fmap.scale(coef)
    return res


def submodule_of(mod, bases):
    """ The submodule spanned at each vertex by the columns of bases;
    the columns must be independent and closed under the arrows. """
    alg = mod.algebra
    quiver = alg.quiver
    action = {}
    for arrow in quiver.arrows:
        src = quiver.vertex_index(arrow.source)
        dst = quiver.vertex_index(arrow.target)
        image = mod.action[arrow.name] * bases[src]
        action[arrow.name] = hwlinalg.coordinates(bases[dst], image)
    sub = Module(alg, [basis.cols for basis in bases], action, check=False)
    return sub, ModuleMap(sub, mod, bases)


def quotient_of(mod, bases):
    """ The quotient by the submodule spanned by the columns of bases,
    together with the projection. """
    alg = mod.algebra
    quiver = alg.quiver
    comps, projs = [], []
    for vert, basis in enumerate(bases):
        comp, proj = hwlinalg.quotient_projection(basis, mod.dims[vert])
        comps.append(comp)
        projs.append(proj)
    action = {}
    for arrow in quiver.arrows:
        src = quiver.vertex_index(arrow.source)
        dst = quiver.vertex_index(arrow.target)
        action[arrow.name] = projs[dst] * mod.action[arrow.name] * comps[src]
    quot = Module(alg, [comp.cols for comp in comps], action, check=False)
    return quot, ModuleMap(mod, quot, projs)


def kernel(fmap):
    """ The kernel of a map and its inclusion into the source. """
    return submodule_of(fmap.source,
                        [hwlinalg.kernel_basis(blk) for blk in fmap.blocks])


def image(fmap):
    """ The image of a map, its inclusion into the target and the
    factorization of the map through it. """
    bases = [hwlinalg.image_basis(blk) for blk in fmap.blocks]
    img, incl = submodule_of(fmap.target, bases)
    factor = ModuleMap(fmap.source, img, [
        hwlinalg.coordinates(basis, blk)
        for basis, blk in zip(bases, fmap.blocks)])
    return img, incl, factor


def cokernel(fmap):
    """ The cokernel of a map and the projection from the target. """
    return quotient_of(fmap.target,
                       [hwlinalg.image_basis(blk) for blk in fmap.blocks])


def submodule_generated(mod, gens):
    """ The submodule generated by vectors: gens maps a vertex index to
    a list of vectors of mod at that vertex. """
    alg = mod.algebra
    quiver = alg.quiver
    field = mod.field
    spans = [hwlinalg.Matrix(field, dim, 0) for dim in mod.dims]
    queue = []
    for vert, vectors in six.iteritems(gens):
        queue.extend((vert, tuple(vec)) for vec in vectors)
    outgoing = collections.defaultdict(list)
    for arrow in quiver.arrows:
        outgoing[quiver.vertex_index(arrow.source)].append(arrow)
    while queue:
        vert, vec = queue.pop()
        col = hwlinalg.Matrix.from_columns(field, [vec], mod.dims[vert])
        cand = spans[vert].hstack(col)
        if hwlinalg.rank(cand) == spans[vert].cols:
            continue
        spans[vert] = cand
        for arrow in outgoing[vert]:
            dst = quiver.vertex_index(arrow.target)
            queue.append((dst, mod.action[arrow.name].apply(vec)))
    return submodule_of(mod, spans)


def direct_sum(mods, alg=None):
    """ The direct sum with its injections and projections. """
    if not mods:
        if alg is None:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'The empty direct sum needs an algebra')
        zero = Module(alg, [0] * alg.num_vertices, {}, check=False)
        return DirectSum(zero, [], [])
    check_same_algebra(*mods)
    alg = mods[0].algebra
    field = alg.field
    dims = [sum(mod.dims[vert] for mod in mods)
            for vert in range(alg.num_vertices)]
    action = dict(
        (arrow.name, hwlinalg.Matrix.block_diagonal(
            field, [mod.action[arrow.name] for mod in mods]))
        for arrow in alg.quiver.arrows)
    total = Module(alg, dims, action, check=False)
    injections, projections = [], []
    offsets = [0] * alg.num_vertices
    for mod in mods:
        inj, proj = [], []
        for vert in range(alg.num_vertices):
            rows = range(offsets[vert], offsets[vert] + mod.dims[vert])
            ident = hwlinalg.Matrix.identity(field, dims[vert])
            proj.append(ident.submatrix(rows, range(dims[vert])))
            inj.append(ident.submatrix(range(dims[vert]), rows))
            offsets[vert] += mod.dims[vert]
        injections.append(ModuleMap(mod, total, inj))
        projections.append(ModuleMap(total, mod, proj))
    return DirectSum(total, injections, projections)


def _radical_bases(mod):
    alg = mod.algebra
    quiver = alg.quiver
    field = mod.field
    bases = []
    for vert in range(alg.num_vertices):
        span = hwlinalg.Matrix(field, mod.dims[vert], 0)
        for arrow in quiver.arrows:
            if quiver.vertex_index(arrow.target) == vert:
                span = span.hstack(mod.action[arrow.name])
        bases.append(hwlinalg.image_basis(span) if span.cols else span)
    return bases


def radical(mod):
    """ The radical: the sum of the images of all the arrows. """
    return submodule_of(mod, _radical_bases(mod))


def top(mod):
    """ The top: the quotient by the radical. """
    return quotient_of(mod, _radical_bases(mod))


def socle(mod):
    """ The socle: the vectors killed by all the arrows. """
    alg = mod.algebra
    quiver = alg.quiver
    field = mod.field
    bases = []
    for vert in range(alg.num_vertices):
        stack = hwlinalg.Matrix(field, 0, mod.dims[vert])
        for arrow in quiver.arrows:
            if quiver.vertex_index(arrow.source) == vert:
                stack = stack.vstack(mod.action[arrow.name])
        bases.append(hwlinalg.kernel_basis(stack))
    return submodule_of(mod, bases)


def radical_layers(mod):
    """ The dimension vectors of the radical layers rad^k / rad^(k+1). """
    layers = []
    cur = mod
    while not cur.is_zero():
        rad, _ = radical(cur)
        layers.append(tuple(a - b for a, b in zip(cur.dims, rad.dims)))
        cur = rad
    return layers


def _trace(mat):
    field = mat.field
    return field.normalize(sum((mat[k, k] for k in range(mat.rows)),
                               field.zero))


class StructureConstantAlgebra(object):
    """ A finite dimensional associative algebra given by the products
    of its basis elements.

    table[i][j] is the coordinate tuple of b_i * b_j.  The optional
    elements are the objects the basis stands for (the module maps of
    an endomorphism algebra), the optional idempotents a complete set of
    orthogonal idempotents given as coordinate tuples. """

    def __init__(self, field, table, unit=None, idempotents=None,
                 elements=None):
        self.field = field
        self.table = tuple(tuple(tuple(prod) for prod in row)
                           for row in table)
        self.dimension = len(self.table)
        self.unit = tuple(unit) if unit is not None else None
        self.idempotents = tuple(tuple(idem) for idem in idempotents or ())
        self.elements = elements
        self._radical = None

    def basis_vector(self, idx):
        """ The coordinates of a basis element. """
        field = self.field
        return tuple(field.one if pos == idx else field.zero
                     for pos in range(self.dimension))

    def multiply(self, left, right):
        """ The product of two elements given by coordinates. """
        field = self.field
        res = [field.zero] * self.dimension
        for i, lcoef in enumerate(left):
            if lcoef == 0:
                continue
            for j, rcoef in enumerate(right):
                if rcoef == 0:
                    continue
                coef = lcoef * rcoef
                for k, val in enumerate(self.table[i][j]):
                    if val != 0:
                        res[k] = field.normalize(res[k] + coef * val)
        return tuple(res)

    def left_matrix(self, elem):
        """ The matrix of left multiplication by an element. """
        return hwlinalg.Matrix.from_columns(
            self.field, [self.multiply(elem, self.basis_vector(j))
                         for j in range(self.dimension)], self.dimension)

    def is_associative(self):
        """ Check associativity on all basis triples. """
        size = self.dimension
        for i in range(size):
            for j in range(size):
                for k in range(size):
                    one = self.multiply(self.table[i][j],
                                        self.basis_vector(k))
                    two = self.multiply(self.basis_vector(i),
                                        self.table[j][k])
                    if one != two:
                        return False
        return True

    def opposite(self):
        """ The opposite algebra on the same basis. """
        size = self.dimension
        return StructureConstantAlgebra(
            self.field,
            [[self.table[j][i] for j in range(size)] for i in range(size)],
            unit=self.unit, idempotents=self.idempotents)

    def _span(self, vectors):
        if not vectors:
            return hwlinalg.Matrix(self.field, self.dimension, 0)
        return hwlinalg.image_basis(hwlinalg.Matrix.from_columns(
            self.field, vectors, self.dimension))

    def _in_span(self, span, vec):
        if span.cols == 0:
            return all(x == 0 for x in vec)
        return hwlinalg.solve_vector(span, vec) is not None

    def radical_basis(self):
        """ A basis of the Jacobson radical.

        Over the rationals this is the kernel of the trace form of the
        regular representation.  Over a prime field F_p the trace form
        alone may vanish on semisimple elements, so a descending chain of
        ideals is cut out instead: I_i consists of the elements a of
        I_(i-1) with g_i(ab) = 0 for every b, where g_i(x) is the trace of
        the integer lift of x raised to the power p^i, divided by p^i and
        reduced mod p.  The chain stops at the largest p^i not exceeding
        the size of the representation, and its last term is the radical.

        Either way the result is verified to be a nilpotent ideal; a
        failed verification raises Undecided. """
        if self._radical is not None:
            return self._radical
        if self.dimension == 0:
            self._radical = []
            return self._radical
        if self.field.is_rational:
            cand = self._trace_form_radical()
        else:
            cand = self._prime_field_radical()
        if not self._verify_nilpotent_ideal(cand):
            LOG.warning('Radical check failed over %s', self.field.spec)
            hwcatch.error(hwcatch.Undecided,
                          'Could not certify the radical over {spec}',
                          spec=self.field.spec)
        self._radical = [tuple(vec) for vec in cand]
        return self._radical

    def _trace_form_radical(self):
        size = self.dimension
        field = self.field
        lmats = [self.left_matrix(self.basis_vector(i)) for i in range(size)]
        gram = [[_trace(lmats[i] * lmats[j]) for j in range(size)]
                for i in range(size)]
        return hwlinalg.kernel_basis(
            hwlinalg.Matrix(field, size, size, gram)).columns()

    def _representation(self):
        """ Faithful matrices for the basis, and the matrices b of the
        unital algebra they generate that the ideals are tested against.

        Without a known unit the algebra is embedded into its unitization
        A + k, acting on itself from the left. """
        field = self.field
        size = self.dimension
        lmats = [self.left_matrix(self.basis_vector(i)) for i in range(size)]
        if self.unit is not None:
            return lmats, lmats
        zero_row = hwlinalg.Matrix(field, 1, size)
        reps = []
        for idx, lmat in enumerate(lmats):
            column = hwlinalg.Matrix.from_columns(
                field, [self.basis_vector(idx)], size)
            reps.append(lmat.hstack(column).vstack(
                zero_row.hstack(hwlinalg.Matrix(field, 1, 1))))
        return reps, reps + [hwlinalg.Matrix.identity(field, size + 1)]

    def _prime_field_radical(self):
        field = self.field
        prime = field.p
        reps, tests = self._representation()
        rep_size = reps[0].rows
        cur = [self.basis_vector(i) for i in range(self.dimension)]
        step = 1
        while cur and step <= rep_size:
            values = []
            for vec in cur:
                elem = hwlinalg.Matrix(field, rep_size, rep_size)
                for coef, rep in zip(vec, reps):
                    if coef != 0:
                        elem = elem + rep.scale(coef)
                row = []
                for other in tests:
                    trace = hwlinalg.lifted_power_trace(
                        elem * other, step, prime * step)
                    if trace % step:
                        hwcatch.error(hwcatch.Undecided,
                                      'The p-power trace of an element of '
                                      'the ideal chain is not divisible '
                                      'by {step}', step=step)
                    row.append(trace // step)
                values.append(row)
            gram = hwlinalg.Matrix(field, len(tests), len(cur), [
                [values[j][k] for j in range(len(cur))]
                for k in range(len(tests))])
            combos = hwlinalg.kernel_basis(gram).columns()
            cur = [tuple(field.normalize(sum(
                (coef * vec[pos] for coef, vec in zip(combo, cur)),
                field.zero)) for pos in range(self.dimension))
                for combo in combos]
            LOG.debug('Radical chain over %s: step %d leaves %d elements',
                      field.spec, step, len(cur))
            step *= prime
        return cur

    def _verify_nilpotent_ideal(self, cand):
        if not cand:
            return True
        span = self._span(cand)
        for vec in cand:
            for idx in range(self.dimension):
                bvec = self.basis_vector(idx)
                if not self._in_span(span, self.multiply(vec, bvec)) or \
                        not self._in_span(span, self.multiply(bvec, vec)):
                    return False
        power = span
        for _ in range(self.dimension + 1):
            prods = [self.multiply(a, b) for a in power.columns()
                     for b in cand]
            nxt = self._span([vec for vec in prods
                              if any(x != 0 for x in vec)])
            if nxt.cols == 0:
                return True
            if nxt.cols >= power.cols:
                return False
            power = nxt
        return False

    def semisimple_dimension(self):
        """ The dimension of the quotient by the radical. """
        return self.dimension - len(self.radical_basis())

    def is_local(self):
        """ Is the quotient by the radical one dimensional? """
        return self.semisimple_dimension() == 1

    def __repr__(self):
        return 'StructureConstantAlgebra(dim={dim})'.format(
            dim=self.dimension)


def endomorphism_algebra(mod):
    """ The endomorphism algebra; the product of basis maps is their
    composition b_i o b_j. """
    basis = hom_space(mod, mod)
    field = mod.field
    table = []
    for left in basis:
        table.append([tuple(coord) for coord in coordinates_of_maps(
            basis, [left.compose(right) for right in basis])])
    unit = None
    if basis:
        unit = coordinates_of_maps(basis, [ModuleMap.identity(mod)])[0]
    return StructureConstantAlgebra(field, table, unit=unit, elements=basis)


def is_indecomposable(mod, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ Is the module nonzero with a local endomorphism algebra?

    A non-local endomorphism algebra only proves the module decomposable
    once an endomorphism splits it; if none is found the quotient by the
    radical may be a proper field extension, and NotSplit is raised. """
    if mod.is_zero():
        return False
    end = endomorphism_algebra(mod)
    if end.is_local():
        return True
    if _split_once(mod, end.elements, tries, seed) is None:
        hwcatch.error(hwcatch.NotSplit,
                      'No endomorphism splits a module with an '
                      'endomorphism algebra of semisimple dimension {dim}',
                      dim=end.semisimple_dimension())
    return False


def _candidates(basis, field, tries, seed):
    """ Basis maps first, then seeded random combinations. """
    for fmap in basis:
        yield fmap
    if len(basis) < 2:
        return
    rng = random.Random(seed)
    source, target = basis[0].source, basis[0].target
    for _ in range(tries):
        yield combine_maps(
            basis, [field.random_element(rng) for _ in basis],
            source, target)


def _power(fmap, exp):
    res = ModuleMap.identity(fmap.source)
    for _ in range(exp):
        res = fmap.compose(res)
    return res


def _split_once(mod, basis, tries, seed):
    """ Find a Fitting decomposition from an endomorphism with a
    rational eigenvalue; returns None if no candidate splits. """
    field = mod.field
    size = mod.dimension
    ident = ModuleMap.identity(mod)
    for fmap in _candidates(basis, field, tries, seed):
        poly = hwlinalg.charpoly(fmap.total_matrix())
        for root in hwlinalg.rational_roots(field, poly):
            shifted = _power(fmap - ident.scale(root), size)
            rnk = shifted.rank()
            if 0 < rnk < size:
                ker, _ = kernel(shifted)
                img, _, _ = image(shifted)
                return ker, img
    return None


def decompose(mod, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ A Krull-Schmidt decomposition: a list of (indecomposable,
    multiplicity) pairs in order of first appearance. """
    parts = []
    stack = [mod] if not mod.is_zero() else []
    while stack:
        cur = stack.pop()
        end = endomorphism_algebra(cur)
        if end.is_local():
            parts.append(cur)
            continue
        split = _split_once(cur, end.elements, tries, seed)
        if split is None:
            hwcatch.error(hwcatch.NotSplit,
                          'Could not split a module with an endomorphism '
                          'algebra of semisimple dimension {dim}',
                          dim=end.semisimple_dimension())
        stack.extend(reversed(split))
    LOG.debug('Decomposed a module of dimension %d into %d parts',
              mod.dimension, len(parts))

    res = []
    for part in parts:
        for pos, (known, mult) in enumerate(res):
            if is_isomorphic(part, known, tries, seed).isomorphic:
                res[pos] = (known, mult + 1)
                break
        else:
            res.append((part, 1))
    return res


def _invariants(src, dst):
    return [
        ('hom dimensions', hom_dim(src, dst), hom_dim(dst, src)),
        ('endomorphism dimensions', hom_dim(src, src), hom_dim(dst, dst)),
        ('top dimension vectors', top(src)[0].dims, top(dst)[0].dims),
        ('socle dimension vectors', socle(src)[0].dims, socle(dst)[0].dims),
    ]


def _vertex_obstruction(basis, src, dst):
    """ A vertex at which no combination of the maps can be bijective. """
    field = src.field
    for vert, dim in enumerate(src.dims):
        if dim == 0:
            continue
        stacked = hwlinalg.Matrix(field, 0, dim)
        beside = hwlinalg.Matrix(field, dst.dims[vert], 0)
        for fmap in basis:
            stacked = stacked.vstack(fmap.blocks[vert])
            beside = beside.hstack(fmap.blocks[vert])
        if hwlinalg.rank(stacked) < dim:
            return 'all maps share a kernel at vertex {v}'.format(
                v=src.algebra.vertex_name(vert))
        if hwlinalg.rank(beside) < dst.dims[vert]:
            return 'no map is onto at vertex {v}'.format(
                v=src.algebra.vertex_name(vert))
    return None


def pencil_isomorphism(basis, limit=PENCIL_LIMIT):
    """ Look for an invertible map in the span of a Hom basis.

    det(t_1 f_1 + ... + t_r f_r) is a polynomial of degree at most
    dim M in each variable, so over the rationals it vanishes identically
    once it vanishes on the grid {0, ..., dim M}^r; over F_p all of F_p^r
    is tried.  Returns a pair (map or None, exhaustive); the search is
    skipped, and not exhaustive, when the grid has more than `limit`
    points. """
    if not basis:
        return None, True
    source, target = basis[0].source, basis[0].target
    field = source.field
    if field.is_rational:
        values = [field.coerce(val) for val in range(source.dimension + 1)]
    else:
        values = list(range(field.p))
    if len(values) ** len(basis) > limit:
        return None, False
    for coefs in itertools.product(values, repeat=len(basis)):
        if all(coef == 0 for coef in coefs):
            continue
        fmap = combine_maps(basis, list(coefs), source, target)
        if fmap.is_iso():
            return fmap, True
    return None, True


def is_isomorphic(src, dst, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED):
    """ Decide whether two modules are isomorphic.

    A positive answer carries an isomorphism as a certificate; a negative
    one names the invariant that differs, or reports that no map in the
    span of Hom is invertible.  If the Hom pencil is too large to search
    exhaustively and no isomorphism turned up, Undecided is raised. """
    check_same_algebra(src, dst)
    if src.dims != dst.dims:
        return IsoCheck(False, None, 'dimension vectors differ')
    if src.is_zero():
        return IsoCheck(True, ModuleMap.identity(src), 'zero modules')
    if src.key() == dst.key():
        return IsoCheck(True, ModuleMap(src, dst, ModuleMap.identity(
            src).blocks), 'equal modules')
    for name, first, second in _invariants(src, dst):
        if first != second:
            return IsoCheck(False, None, '{name} differ'.format(name=name))
    basis = hom_space(src, dst)
    if not basis:
        return IsoCheck(False, None, 'no nonzero maps')
    for fmap in _candidates(basis, src.field, tries, seed):
        if fmap.is_iso():
            return IsoCheck(True, fmap, 'isomorphism found')
    obstruction = _vertex_obstruction(basis, src, dst)
    if obstruction is not None:
        return IsoCheck(False, None, obstruction)
    found, exhaustive = pencil_isomorphism(basis)
    if found is not None:
        return IsoCheck(True, found, 'isomorphism found in the Hom pencil')
    if exhaustive:
        return IsoCheck(False, None, 'no invertible map in the Hom pencil')
    LOG.warning('Isomorphism search exhausted after %d tries', tries)
    return hwcatch.error(hwcatch.Undecided,
                         'No isomorphism found among {n} candidates',
                         n=len(basis) + tries)


def rad_hom(src, dst):
    """ The dimension of the radical maps between two indecomposables. """
    for mod in (src, dst):
        if not is_indecomposable(mod):
            hwcatch.error(hwcatch.DecomposableInput,
                          'Expected an indecomposable module, got '
                          'dimension vector {dims}', dims=list(mod.dims))
    if is_isomorphic(src, dst).isomorphic:
        return len(endomorphism_algebra(src).radical_basis())
    return hom_dim(src, dst)


def dual_module(mod):
    """ The vector space dual, a module over the opposite algebra. """
    opp = mod.algebra.opposite()
    return Module(opp, mod.dims, dict(
        (name, mat.transpose()) for name, mat in six.iteritems(mod.action)),
        check=False)


def dual_map(fmap, source=None, target=None):
    """ The transpose of a map: D(target) -> D(source). """
    if source is None:
        source = dual_module(fmap.target)
    if target is None:
        target = dual_module(fmap.source)
    return ModuleMap(source, target,
                     [blk.transpose() for blk in fmap.blocks])
