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
""" Basic algebras presented by quivers with relations.

Given pairwise non-isomorphic indecomposable modules P_1, ..., P_n, the
algebra B whose modules are the Hom(P, X) is presented by a quiver: every
irreducible map P_j -> P_i gives an arrow i -> j and the relations are the
kernel of evaluating the paths as compositions.  A path x1 * ... * xk
evaluates to b_xk o ... o b_x1, so that Hom(P, X) becomes a module over
B with arrows acting by precomposition. """

import collections
import itertools
import logging
import random

import six

from . import hwalgebra
from . import hwcatch
from . import hwlinalg
from . import hwmodule


LOG = logging.getLogger(__name__)

DEFAULT_ISO_TRIES = hwmodule.DEFAULT_ISO_TRIES
DEFAULT_SEED = hwmodule.DEFAULT_SEED

MAX_VERTEX_PERMUTATIONS = 5040

EndPresentation = collections.namedtuple('EndPresentation', [
    'parts',
    'algebra',
    'arrow_maps',
    'hom_bases',
])


def _span_matrix(field, maps, size):
    if not maps:
        return hwlinalg.Matrix(field, size, 0)
    return hwlinalg.image_basis(hwlinalg.Matrix.from_columns(
        field, [fmap.to_vector() for fmap in maps], size))


def _radical_maps(parts, homs):
    """ The radical maps between the parts: every map between different
    parts, the radical of the endomorphism algebra on the diagonal. """
    size = len(parts)
    res = {}
    for src in range(size):
        for dst in range(size):
            if src != dst:
                res[(src, dst)] = list(homs[(src, dst)])
                continue
            end = hwmodule.endomorphism_algebra(parts[src])
            res[(src, dst)] = [
                hwmodule.combine_maps(end.elements, coords, parts[src],
                                      parts[src])
                for coords in end.radical_basis()]
    return res


def _irreducible_maps(parts, rad):
    """ For every pair, maps completing rad^2 to rad. """
    size = len(parts)
    field = parts[0].field
    res = {}
    for src in range(size):
        for dst in range(size):
            width = sum(a * b for a, b in zip(parts[src].dims,
                                              parts[dst].dims))
            products = []
            for mid in range(size):
                for first in rad[(src, mid)]:
                    for second in rad[(mid, dst)]:
                        prod = second.compose(first)
                        if not prod.is_zero():
                            products.append(prod)
            span = _span_matrix(field, products, width)
            chosen = []
            for fmap in rad[(src, dst)]:
                col = hwlinalg.Matrix.from_columns(
                    field, [fmap.to_vector()], width)
                cand = span.hstack(col)
                if hwlinalg.rank(cand) > span.cols:
                    span = cand
                    chosen.append(fmap)
            res[(src, dst)] = chosen
    return res


def _check_parts(parts, tries, seed):
    if not parts:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'Cannot present the endomorphisms of nothing')
    hwmodule.check_same_algebra(*parts)
    for idx, part in enumerate(parts):
        if not hwmodule.is_indecomposable(part, tries, seed):
            hwcatch.error(hwcatch.DecomposableInput,
                          'Part {idx} with dimension vector {dims} is not '
                          'indecomposable', idx=idx + 1,
                          dims=list(part.dims))
    for first, second in itertools.combinations(range(len(parts)), 2):
        if hwmodule.is_isomorphic(parts[first], parts[second], tries,
                                  seed).isomorphic:
            hwcatch.error(hwcatch.DecomposableInput,
                          'Parts {first} and {second} are isomorphic',
                          first=first + 1, second=second + 1)


def present_basic_algebra(parts, tries=DEFAULT_ISO_TRIES, seed=DEFAULT_SEED,
                          length_bound=hwalgebra.DEFAULT_LENGTH_BOUND):
    """ Present End(P_1 + ... + P_n) as a quiver with relations. """
    parts = list(parts)
    _check_parts(parts, tries, seed)
    field = parts[0].field
    size = len(parts)
    homs = dict(((src, dst), hwmodule.hom_space(parts[src], parts[dst]))
                for src in range(size) for dst in range(size))
    rad = _radical_maps(parts, homs)
    irred = _irreducible_maps(parts, rad)

    # an irreducible map P_j -> P_i is an arrow i -> j
    arrows, arrow_maps = [], {}
    for tgt in range(size):
        for src in range(size):
            for fmap in irred[(src, tgt)]:
                name = 'b{idx}'.format(idx=len(arrows) + 1)
                arrows.append((name, str(tgt + 1), str(src + 1)))
                arrow_maps[name] = fmap
    quiver = hwalgebra.Quiver([str(idx + 1) for idx in range(size)], arrows)

    relations = _path_relations(quiver, arrow_maps, field)
    alg = hwalgebra.build_path_algebra(quiver, relations, field,
                                       length_bound)
    expected = sum(len(basis) for basis in six.itervalues(homs))
    if alg.dimension != expected:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'The presented algebra has dimension {got} instead '
                      'of {expected}', got=alg.dimension, expected=expected)
    LOG.debug('Presented an endomorphism algebra of dimension %d with %d '
              'arrows and %d relations', expected, len(arrows),
              len(alg.relations))
    return EndPresentation(parts=parts, algebra=alg, arrow_maps=arrow_maps,
                           hom_bases={})


def _path_relations(quiver, arrow_maps, field):
    """ Minimal zero paths, and the linear dependencies among the nonzero
    paths of length at least two between every pair of vertices. """
    vidx = quiver.vertex_index
    starting = collections.defaultdict(list)
    for arrow in quiver.arrows:
        starting[vidx(arrow.source)].append(arrow)
    relations = []
    nonzero = collections.defaultdict(list)
    layer = [((arrow.name,), arrow_maps[arrow.name])
             for arrow in quiver.arrows]
    while layer:
        nxt = []
        for word, value in layer:
            head = vidx(quiver.arrow(word[0]).target)
            for arrow in starting[head]:
                longer = (arrow.name,) + word
                lval = value.compose(arrow_maps[arrow.name])
                if lval.is_zero():
                    relations.append(hwalgebra.relation((1, longer)))
                    continue
                nxt.append((longer, lval))
                nonzero[(vidx(quiver.arrow(word[-1]).source),
                         vidx(arrow.target))].append((longer, lval))
        layer = nxt

    for key in sorted(nonzero):
        paths = nonzero[key]
        if len(paths) < 2:
            continue
        width = len(paths[0][1].to_vector())
        mat = hwlinalg.Matrix.from_columns(
            field, [value.to_vector() for _, value in paths], width)
        for vec in hwlinalg.kernel_basis(mat).columns():
            relations.append(hwalgebra.relation(*[
                (coef, word) for (word, _), coef in zip(paths, vec)
                if coef != 0]))
    return relations


def hom_basis(pres, mod, vert):
    """ The basis of Hom(P_vert, mod) used by hom_module. """
    key = (vert, mod.key())
    basis = pres.hom_bases.get(key)
    if basis is None:
        basis = hwmodule.hom_space(pres.parts[vert], mod)
        pres.hom_bases[key] = basis
    return basis


def hom_module(pres, mod):
    """ Hom(P, mod) as a module over the presented algebra: the arrow
    i -> j acts from Hom(P_i, mod) to Hom(P_j, mod) by h -> h o b. """
    alg = pres.algebra
    field = alg.field
    size = alg.num_vertices
    bases = [hom_basis(pres, mod, vert) for vert in range(size)]
    action = {}
    for arrow in alg.quiver.arrows:
        src = alg.vertex_index(arrow.source)
        dst = alg.vertex_index(arrow.target)
        bmap = pres.arrow_maps[arrow.name]
        images = [hmap.compose(bmap) for hmap in bases[src]]
        action[arrow.name] = hwlinalg.Matrix.from_columns(
            field, [tuple(coords) for coords in
                    hwmodule.coordinates_of_maps(bases[dst], images)],
            len(bases[dst]))
    return hwmodule.Module(alg, [len(basis) for basis in bases], action)


def hom_module_map(pres, fmap, source=None, target=None):
    """ The map Hom(P, X) -> Hom(P, Y) induced by f: X -> Y. """
    if source is None:
        source = hom_module(pres, fmap.source)
    if target is None:
        target = hom_module(pres, fmap.target)
    field = pres.algebra.field
    blocks = []
    for vert in range(pres.algebra.num_vertices):
        sbasis = hom_basis(pres, fmap.source, vert)
        tbasis = hom_basis(pres, fmap.target, vert)
        images = [fmap.compose(hmap) for hmap in sbasis]
        blocks.append(hwlinalg.Matrix.from_columns(
            field, [tuple(coords) for coords in
                    hwmodule.coordinates_of_maps(tbasis, images)],
            len(tbasis)))
    return hwmodule.ModuleMap(source, target, blocks)


def regular_module(alg):
    """ The algebra as a module over itself. """
    return hwmodule.direct_sum(
        [hwalgebra.projective_module(alg, name)
         for name in alg.quiver.vertices], alg).module


def algebra_summary(alg):
    """ A one-line description of a presented algebra. """
    arrows = ', '.join('{name}:{src}->{dst}'.format(
        name=arrow.name, src=arrow.source, dst=arrow.target)
        for arrow in alg.quiver.arrows)
    return 'dim {dim}; vertices {verts}; arrows [{arrows}]; ' \
        '{rels} relations'.format(dim=alg.dimension,
                                  verts=','.join(alg.quiver.vertices),
                                  arrows=arrows, rels=len(alg.relations))


def _arrow_counts(alg):
    counts = collections.Counter()
    for arrow in alg.quiver.arrows:
        counts[(alg.vertex_index(arrow.source),
                alg.vertex_index(arrow.target))] += 1
    return counts


def _vertex_maps(first, second):
    """ The vertex bijections preserving the Cartan matrix and the number
    of arrows between each pair of vertices. """
    size = first.num_vertices
    cfirst, csecond = first.cartan_matrix(), second.cartan_matrix()
    afirst, asecond = _arrow_counts(first), _arrow_counts(second)
    for count, perm in enumerate(itertools.permutations(range(size))):
        if count >= MAX_VERTEX_PERMUTATIONS:
            LOG.warning('Stopped after %d vertex permutations', count)
            return
        if any(cfirst[w][v] != csecond[perm[w]][perm[v]]
               for v in range(size) for w in range(size)):
            continue
        if any(afirst[(v, w)] != asecond[(perm[v], perm[w])]
               for v in range(size) for w in range(size)):
            continue
        yield perm


def _image_of_word(alg, images, word):
    res = images[word[0]]
    for name in word[1:]:
        res = alg.multiply(res, images[name])
    return res


def _respects_relations(first, second, images):
    field = second.field
    for rel in first.relations:
        total = {}
        for coef, word in rel.terms:
            for idx, val in six.iteritems(_image_of_word(second, images,
                                                         word)):
                total[idx] = field.normalize(
                    total.get(idx, field.zero) + field.coerce(coef) * val)
        if any(val != 0 for val in six.itervalues(total)):
            return False
    return True


def _onto_modulo_rad2(first, second, perm, images):
    """ Are the arrow parts of the images invertible between every pair
    of vertices? """
    field = second.field
    groups = collections.defaultdict(list)
    for arrow in first.quiver.arrows:
        groups[(first.vertex_index(arrow.source),
                first.vertex_index(arrow.target))].append(arrow.name)
    for (src, dst), names in six.iteritems(groups):
        targets = [arrow.name for arrow in second.quiver.arrows
                   if second.vertex_index(arrow.source) == perm[src] and
                   second.vertex_index(arrow.target) == perm[dst]]
        rows = [[images[name].get(second.arrow_index(tname), field.zero)
                 for tname in targets] for name in names]
        if hwlinalg.rank(hwlinalg.Matrix(field, len(names), len(targets),
                                         rows)) < len(targets):
            return False
    return True


def _arrow_candidates(first, second, perm, tries, rng):
    """ Arrow images: matchings of the arrows first, then random
    combinations of the nontrivial paths. """
    field = second.field
    groups = collections.OrderedDict()
    for arrow in first.quiver.arrows:
        key = (first.vertex_index(arrow.source),
               first.vertex_index(arrow.target))
        groups.setdefault(key, []).append(arrow.name)
    matchings = []
    for (src, dst), names in six.iteritems(groups):
        targets = [arrow.name for arrow in second.quiver.arrows
                   if second.vertex_index(arrow.source) == perm[src] and
                   second.vertex_index(arrow.target) == perm[dst]]
        matchings.append([list(zip(names, order))
                          for order in itertools.permutations(targets)])
    for count, choice in enumerate(itertools.product(*matchings)):
        if count >= tries:
            break
        yield dict((name, {second.arrow_index(tname): field.one})
                   for group in choice for name, tname in group)

    paths = {}
    for (src, dst) in groups:
        paths[(src, dst)] = [idx for idx in second.paths(perm[src], perm[dst])
                             if second.basis[idx].arrows]
    for _ in range(tries):
        images = {}
        for key, names in six.iteritems(groups):
            for name in names:
                images[name] = dict(
                    (idx, coef) for idx, coef in
                    ((idx, field.random_element(rng, 5))
                     for idx in paths[key]) if coef != 0)
        yield images


def algebra_isomorphism(first, second, tries=DEFAULT_ISO_TRIES,
                        seed=DEFAULT_SEED):
    """ Decide whether two basic algebras given by quivers with relations
    are isomorphic.

    A positive answer carries the vertex bijection and the arrow images;
    a negative one names the differing invariant; Undecided is raised if
    the search runs out of candidates. """
    if first.field != second.field:
        return hwmodule.IsoCheck(False, None, 'different base fields')
    if first.dimension != second.dimension:
        return hwmodule.IsoCheck(False, None, 'dimensions differ')
    if first.num_vertices != second.num_vertices:
        return hwmodule.IsoCheck(False, None, 'vertex counts differ')
    if len(first.quiver.arrows) != len(second.quiver.arrows):
        return hwmodule.IsoCheck(False, None, 'arrow counts differ')
    perms = list(_vertex_maps(first, second))
    if not perms:
        return hwmodule.IsoCheck(False, None,
                                 'no vertex bijection matches the Cartan '
                                 'matrices and the arrow counts')
    rng = random.Random(seed)
    for perm in perms:
        for images in _arrow_candidates(first, second, perm, tries, rng):
            if not _onto_modulo_rad2(first, second, perm, images):
                continue
            if not _respects_relations(first, second, images):
                continue
            certificate = {
                'vertices': dict((first.vertex_name(v),
                                  second.vertex_name(perm[v]))
                                 for v in range(first.num_vertices)),
                'arrows': dict(
                    (name, ' + '.join(
                        '{c}*{p}'.format(c=coef, p=second.path_str(idx))
                        for idx, coef in sorted(six.iteritems(image))))
                    for name, image in six.iteritems(images)),
            }
            return hwmodule.IsoCheck(True, certificate, 'isomorphism found')
    LOG.warning('Algebra isomorphism search exhausted for %d vertex '
                'bijections', len(perms))
    return hwcatch.error(hwcatch.Undecided,
                         'No algebra isomorphism found for {n} vertex '
                         'bijections', n=len(perms))
