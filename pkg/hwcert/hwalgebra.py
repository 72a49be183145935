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
""" Quivers, path algebras with relations and their canonical modules.

Paths are written in function composition order: the word (x1, ..., xk)
stands for x1 o ... o xk, so xk is traversed first.  A path thus runs
from the source of its last arrow to the target of its first one.

The relations are completed into a rewriting system on paths ordered by
length and then lexicographically by arrow position; the irreducible
paths form the basis of the algebra.  The completion is truncated at a
length bound, and hitting the bound is reported instead of producing a
possibly wrong basis. """

import collections
import logging
import threading

import six

from . import hwcatch
from . import hwlinalg
from . import hwmodule


LOG = logging.getLogger(__name__)

DEFAULT_LENGTH_BOUND = 50

MAX_COMPLETION_STEPS = 200000

Arrow = collections.namedtuple('Arrow', [
    'name',
    'source',
    'target',
])

Path = collections.namedtuple('Path', [
    'source',
    'target',
    'arrows',
])

Relation = collections.namedtuple('Relation', [
    'terms',
])


class Quiver(object):
    """ A finite quiver: named vertices and named arrows between them. """

    def __init__(self, vertices, arrows):
        """ Validate the names and the arrow endpoints. """
        self.vertices = tuple(str(vert) for vert in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            hwcatch.error(hwcatch.IllFormedRelation,
                          'Duplicate vertex names in {vertices}',
                          vertices=list(self.vertices))
        self._vidx = dict((name, idx)
                          for idx, name in enumerate(self.vertices))

        self.arrows = tuple(
            Arrow(str(name), str(src), str(dst)) for name, src, dst in arrows)
        self._arrow = {}
        self._aidx = {}
        for idx, arrow in enumerate(self.arrows):
            if arrow.name in self._arrow or arrow.name in self._vidx:
                hwcatch.error(hwcatch.IllFormedRelation,
                              'Duplicate arrow name {name}', name=arrow.name)
            for end in (arrow.source, arrow.target):
                if end not in self._vidx:
                    hwcatch.error(hwcatch.UnknownVertex,
                                  'Arrow {name}: unknown vertex {vertex}',
                                  name=arrow.name, vertex=end)
            self._arrow[arrow.name] = arrow
            self._aidx[arrow.name] = idx

    def vertex_index(self, vertex):
        """ The position of a vertex in the vertex list. """
        try:
            return self._vidx[str(vertex)]
        except KeyError:
            return hwcatch.error(hwcatch.UnknownVertex,
                                 'Unknown vertex {vertex}', vertex=vertex)

    def arrow(self, name):
        """ Look up an arrow by name. """
        try:
            return self._arrow[name]
        except KeyError:
            return hwcatch.error(hwcatch.IllFormedRelation,
                                 'Unknown arrow {name}', name=name)

    def arrow_source(self, name):
        """ The source vertex index of an arrow. """
        return self._vidx[self.arrow(name).source]

    def arrow_target(self, name):
        """ The target vertex index of an arrow. """
        return self._vidx[self.arrow(name).target]

    def word_key(self, word):
        """ The ordering key: length first, then arrow positions. """
        return (len(word), tuple(self._aidx[name] for name in word))

    def word_endpoints(self, word):
        """ The (source, target) vertex indices of a nonempty word,
        validating composability. """
        for left, right in zip(word, word[1:]):
            if self.arrow_source(left) != self.arrow_target(right):
                hwcatch.error(hwcatch.IllFormedRelation,
                              'The arrows {left} and {right} do not compose',
                              left=left, right=right)
        return (self.arrow_source(word[-1]), self.arrow_target(word[0]))

    def opposite(self):
        """ The quiver with all the arrows reversed. """
        return Quiver(self.vertices, [
            (arrow.name, arrow.target, arrow.source)
            for arrow in self.arrows])

    def __repr__(self):
        return 'Quiver({vertices}, {arrows})'.format(
            vertices=list(self.vertices),
            arrows=[tuple(arrow) for arrow in self.arrows])


def _find_tip(word, tips):
    """ Find a contiguous subword of word that is a tip. """
    size = len(word)
    for start in range(size):
        for end in range(start + 1, size + 1):
            if word[start:end] in tips:
                return start, end
    return None


class _Completion(object):
    """ Buchberger-style completion of path relations. """

    def __init__(self, quiver, field, length_bound):
        self.quiver = quiver
        self.field = field
        self.length_bound = length_bound
        self.rules = {}

    def lead(self, poly):
        """ The largest word of a nonzero combination. """
        return max(poly, key=self.quiver.word_key)

    def monic(self, poly):
        """ Scale a combination so that its leading coefficient is one. """
        inv = self.field.inv(poly[self.lead(poly)])
        norm = self.field.normalize
        return dict((word, norm(coef * inv))
                    for word, coef in six.iteritems(poly))

    def reduce(self, poly):
        """ Fully reduce a combination of words by the current rules. """
        norm = self.field.normalize
        poly = dict(poly)
        result = {}
        while poly:
            lead = self.lead(poly)
            coef = poly.pop(lead)
            hit = _find_tip(lead, self.rules)
            if hit is None:
                result[lead] = coef
                continue
            start, end = hit
            tip = lead[start:end]
            head, tail = lead[:start], lead[end:]
            for word, rcoef in six.iteritems(self.rules[tip]):
                if word == tip:
                    continue
                new = head + word + tail
                val = norm(poly.get(new, self.field.zero) - coef * rcoef)
                if val == 0:
                    poly.pop(new, None)
                else:
                    poly[new] = val
        return result

    def overlaps(self, first, second):
        """ The S-combinations of two rules along suffix/prefix overlaps. """
        norm = self.field.normalize
        tfirst, tsecond = self.lead(first), self.lead(second)
        res = []
        for size in range(1, min(len(tfirst), len(tsecond))):
            if tfirst[-size:] != tsecond[:size]:
                continue
            head, tail = tfirst[:-size], tsecond[size:]
            spoly = {}
            for word, coef in six.iteritems(first):
                spoly[word + tail] = coef
            for word, coef in six.iteritems(second):
                new = head + word
                val = norm(spoly.get(new, self.field.zero) - coef)
                if val == 0:
                    spoly.pop(new, None)
                else:
                    spoly[new] = val
            if spoly:
                res.append(spoly)
        return res

    def run(self, polys):
        """ Complete the rewriting system generated by the polys. """
        queue = [poly for poly in polys if poly]
        steps = 0
        while queue:
            steps += 1
            if steps > MAX_COMPLETION_STEPS:
                hwcatch.error(hwcatch.NotFiniteDimensional,
                              'The relation completion did not terminate '
                              'after {steps} steps', steps=steps)
            queue.sort(key=lambda poly: self.quiver.word_key(
                self.lead(poly)), reverse=True)
            red = self.reduce(queue.pop())
            if not red:
                continue
            red = self.monic(red)
            tip = self.lead(red)
            if len(tip) >= self.length_bound:
                hwcatch.error(hwcatch.NotFiniteDimensional,
                              'The relation completion produced the path '
                              '{witness} at the length bound {bound}',
                              witness='*'.join(tip), bound=self.length_bound)
            for old in list(self.rules):
                if _find_tip(old, {tip: None}) is not None:
                    queue.append(self.rules.pop(old))
            self.rules[tip] = red
            for other in list(self.rules.values()):
                queue.extend(self.overlaps(red, other))
                if other is not red:
                    queue.extend(self.overlaps(other, red))
        LOG.debug('Relation completion: %d rules after %d steps',
                  len(self.rules), steps)
        return self.rules


class PathAlgebra(object):
    """ The path algebra of a quiver modulo an admissible ideal.

    The basis consists of the paths that are irreducible with respect to
    the completed relations, trivial paths included.  Basis elements are
    referred to by their position in the `basis` tuple; algebra elements
    are dictionaries mapping basis positions to nonzero coefficients. """

    def __init__(self, quiver, relations, field=None,
                 length_bound=DEFAULT_LENGTH_BOUND):
        """ Complete the relations and enumerate the path basis. """
        if length_bound < 1:
            hwcatch.error(hwcatch.NotFiniteDimensional,
                          'The length bound must be positive, got {bound}',
                          bound=length_bound)
        self.quiver = quiver
        self.field = field if field is not None else hwlinalg.QQ
        self.length_bound = length_bound
        self.relations = tuple(self._check_relation(rel) for rel in relations)
        self.relations = tuple(rel for rel in self.relations if rel.terms)

        completion = _Completion(quiver, self.field, length_bound)
        self.rules = completion.run([
            dict((word, coef) for coef, word in rel.terms)
            for rel in self.relations])
        self._completion = completion

        self.basis = self._enumerate_basis()
        self._pidx = dict((path, idx) for idx, path in enumerate(self.basis))
        self._paths = collections.defaultdict(list)
        for idx, path in enumerate(self.basis):
            self._paths[(path.source, path.target)].append(idx)
        self._products = {}
        self._cache = {}
        self._lock = threading.Lock()
        self._opposite = None
        LOG.debug('Path algebra over %s: %d vertices, %d arrows, '
                  'dimension %d', self.field.spec, len(quiver.vertices),
                  len(quiver.arrows), len(self.basis))

    def _check_relation(self, rel):
        """ Coerce the coefficients and check that the paths are parallel
        and of length at least two. """
        if not isinstance(rel, Relation):
            rel = Relation(terms=tuple(rel))
        norm = self.field.normalize
        combined = {}
        ends = None
        for coef, word in rel.terms:
            word = tuple(word)
            if len(word) < 2:
                hwcatch.error(hwcatch.IllFormedRelation,
                              'Relation terms must have length at least 2, '
                              'got "{word}"', word='*'.join(word) or 'e')
            cur = self.quiver.word_endpoints(word)
            if ends is None:
                ends = cur
            elif ends != cur:
                hwcatch.error(hwcatch.IllFormedRelation,
                              'The paths in a relation must be parallel: '
                              '"{word}" does not match', word='*'.join(word))
            val = norm(combined.get(word, self.field.zero) +
                       self.field.coerce(coef))
            combined[word] = val
        terms = tuple(sorted(
            ((coef, word) for word, coef in six.iteritems(combined)
             if coef != 0),
            key=lambda item: self.quiver.word_key(item[1]), reverse=True))
        return Relation(terms=terms)

    def _enumerate_basis(self):
        """ Breadth-first search over the irreducible paths. """
        quiver = self.quiver
        found = [Path(idx, idx, ()) for idx in range(len(quiver.vertices))]
        layer = list(found)
        outgoing = collections.defaultdict(list)
        for arrow in quiver.arrows:
            outgoing[quiver.vertex_index(arrow.source)].append(arrow)
        while layer:
            nxt = []
            for path in layer:
                for arrow in outgoing[path.target]:
                    word = (arrow.name,) + path.arrows
                    if any(word[:end] in self.rules
                           for end in range(2, len(word) + 1)):
                        continue
                    if len(word) >= self.length_bound:
                        hwcatch.error(hwcatch.NotFiniteDimensional,
                                      'The irreducible path {witness} '
                                      'reaches the length bound {bound}',
                                      witness='*'.join(word),
                                      bound=self.length_bound)
                    nxt.append(Path(path.source,
                                    quiver.vertex_index(arrow.target), word))
            found.extend(nxt)
            layer = nxt
        return tuple(sorted(
            found, key=lambda path: (path.source, path.target,
                                     quiver.word_key(path.arrows))))

    @property
    def dimension(self):
        """ The dimension of the algebra over the base field. """
        return len(self.basis)

    @property
    def num_vertices(self):
        """ The number of vertices, i.e. of simple modules. """
        return len(self.quiver.vertices)

    def vertex_index(self, vertex):
        """ The index of a vertex given by name. """
        return self.quiver.vertex_index(vertex)

    def vertex_name(self, idx):
        """ The name of the vertex at the given index. """
        return self.quiver.vertices[idx]

    def path_index(self, path):
        """ The basis position of an irreducible path. """
        return self._pidx[path]

    def idempotent(self, vidx):
        """ The basis position of the trivial path at a vertex. """
        return self._pidx[Path(vidx, vidx, ())]

    def arrow_index(self, name):
        """ The basis position of an arrow. """
        quiver = self.quiver
        return self._pidx[Path(quiver.arrow_source(name),
                               quiver.arrow_target(name), (name,))]

    def paths(self, source, target):
        """ The basis positions of the paths from source to target. """
        return self._paths.get((source, target), [])

    def path_str(self, idx):
        """ A readable form of a basis path. """
        path = self.basis[idx]
        if not path.arrows:
            return 'e{name}'.format(name=self.vertex_name(path.source))
        return '*'.join(path.arrows)

    def normal_form(self, word):
        """ The normal form of a nonempty word as an algebra element. """
        red = self._completion.reduce({tuple(word): self.field.one})
        source, target = self.quiver.word_endpoints(word)
        return dict((self._pidx[Path(source, target, rword)], coef)
                    for rword, coef in six.iteritems(red))

    def multiply_basis(self, left, right):
        """ The product left o right of two basis paths. """
        key = (left, right)
        res = self._products.get(key)
        if res is not None:
            return res
        pleft, pright = self.basis[left], self.basis[right]
        if pright.target != pleft.source:
            res = {}
        elif not pleft.arrows:
            res = {right: self.field.one}
        elif not pright.arrows:
            res = {left: self.field.one}
        else:
            res = self.normal_form(pleft.arrows + pright.arrows)
        self._products[key] = res
        return res

    def multiply(self, left, right):
        """ The product left o right of two algebra elements. """
        norm = self.field.normalize
        res = {}
        for lidx, lcoef in six.iteritems(left):
            for ridx, rcoef in six.iteritems(right):
                for idx, coef in six.iteritems(
                        self.multiply_basis(lidx, ridx)):
                    res[idx] = norm(res.get(idx, self.field.zero) +
                                    lcoef * rcoef * coef)
        return dict((idx, coef) for idx, coef in six.iteritems(res)
                    if coef != 0)

    def element(self, terms):
        """ Build an algebra element from (coefficient, word) pairs;
        an empty word is not allowed, use ("e", vertex) for idempotents. """
        norm = self.field.normalize
        res = {}
        for coef, word in terms:
            coef = self.field.coerce(coef)
            if isinstance(word, tuple) and len(word) == 2 and word[0] == 'e':
                part = {self.idempotent(self.vertex_index(word[1])):
                        self.field.one}
            else:
                part = self.normal_form(tuple(word))
            for idx, val in six.iteritems(part):
                res[idx] = norm(res.get(idx, self.field.zero) + coef * val)
        return dict((idx, coef) for idx, coef in six.iteritems(res)
                    if coef != 0)

    def multiplication_table(self):
        """ All the nonzero products of basis paths. """
        table = {}
        for left in range(self.dimension):
            for right in range(self.dimension):
                prod = self.multiply_basis(left, right)
                if prod:
                    table[(left, right)] = prod
        return table

    def is_associative(self):
        """ Check associativity on all composable basis triples. """
        for first in range(self.dimension):
            for second in self.paths_ending_at(self.basis[first].source):
                for third in self.paths_ending_at(self.basis[second].source):
                    one = self.multiply(self.multiply_basis(first, second),
                                        {third: self.field.one})
                    two = self.multiply({first: self.field.one},
                                        self.multiply_basis(second, third))
                    if one != two:
                        return False
        return True

    def paths_ending_at(self, vidx):
        """ The basis positions of all the paths ending at a vertex. """
        return [idx for idx, path in enumerate(self.basis)
                if path.target == vidx]

    def cartan_matrix(self):
        """ The Cartan matrix: entry [w][v] = dim e_w A e_v, so the
        columns are the dimension vectors of the projectives. """
        size = self.num_vertices
        return [[len(self.paths(v, w)) for v in range(size)]
                for w in range(size)]

    def cached(self, key, build):
        """ Look up or build a value in the per-algebra cache. """
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = build()
        with self._lock:
            return self._cache.setdefault(key, value)

    def opposite(self):
        """ The opposite algebra: arrows and relation words reversed. """
        with self._lock:
            if self._opposite is not None:
                return self._opposite
        opp = PathAlgebra(
            self.quiver.opposite(),
            [Relation(terms=tuple((coef, tuple(reversed(word)))
                                  for coef, word in rel.terms))
             for rel in self.relations],
            self.field, self.length_bound)
        if opp.dimension != self.dimension:
            hwcatch.error(hwcatch.NotFiniteDimensional,
                          'The opposite algebra has dimension {odim} '
                          'instead of {dim}', odim=opp.dimension,
                          dim=self.dimension)
        with self._lock:
            if self._opposite is None:
                opp._opposite = self  # pylint: disable=protected-access
                self._opposite = opp
            return self._opposite

    def __repr__(self):
        return 'PathAlgebra({quiver}, dim={dim}, field={spec})'.format(
            quiver=self.quiver, dim=self.dimension, spec=self.field.spec)


def build_path_algebra(quiver, relations, field=None,
                       length_bound=DEFAULT_LENGTH_BOUND):
    """ Build a path algebra, certifying that it is finite dimensional. """
    return PathAlgebra(quiver, relations, field, length_bound)


def relation(*terms):
    """ A convenience constructor: relation((1, 'a*d'), (-1, 'b*c')). """
    return Relation(terms=tuple(
        (coef, tuple(word.split('*')) if isinstance(word, str)
         else tuple(word))
        for coef, word in terms))


def simple_module(alg, vertex):
    """ The simple module at a vertex. """
    vidx = alg.vertex_index(vertex)

    def build():
        dims = [1 if idx == vidx else 0 for idx in range(alg.num_vertices)]
        return hwmodule.Module(alg, dims, {})

    return alg.cached(('simple', vidx), build)


def projective_module(alg, vertex):
    """ The indecomposable projective A e_v: its basis at the vertex w
    consists of the paths from v to w. """
    vidx = alg.vertex_index(vertex)

    def build():
        quiver = alg.quiver
        field = alg.field
        dims = [len(alg.paths(vidx, w)) for w in range(alg.num_vertices)]
        action = {}
        for arrow in quiver.arrows:
            src = quiver.vertex_index(arrow.source)
            dst = quiver.vertex_index(arrow.target)
            rows, cols = alg.paths(vidx, dst), alg.paths(vidx, src)
            rpos = dict((idx, pos) for pos, idx in enumerate(rows))
            data = [[field.zero] * len(cols) for _ in rows]
            aidx = alg.arrow_index(arrow.name)
            for col, pidx in enumerate(cols):
                for qidx, coef in six.iteritems(
                        alg.multiply_basis(aidx, pidx)):
                    data[rpos[qidx]][col] = coef
            action[arrow.name] = hwlinalg.Matrix(
                field, len(rows), len(cols), data)
        return hwmodule.Module(alg, dims, action)

    return alg.cached(('projective', vidx), build)


def injective_module(alg, vertex):
    """ The indecomposable injective D(e_v A): its basis at the vertex w
    consists of the duals of the paths from w to v. """
    vidx = alg.vertex_index(vertex)

    def build():
        quiver = alg.quiver
        field = alg.field
        dims = [len(alg.paths(w, vidx)) for w in range(alg.num_vertices)]
        action = {}
        for arrow in quiver.arrows:
            src = quiver.vertex_index(arrow.source)
            dst = quiver.vertex_index(arrow.target)
            rows, cols = alg.paths(dst, vidx), alg.paths(src, vidx)
            cpos = dict((idx, pos) for pos, idx in enumerate(cols))
            data = [[field.zero] * len(cols) for _ in rows]
            aidx = alg.arrow_index(arrow.name)
            for row, qidx in enumerate(rows):
                for pidx, coef in six.iteritems(
                        alg.multiply_basis(qidx, aidx)):
                    data[row][cpos[pidx]] = coef
            action[arrow.name] = hwlinalg.Matrix(
                field, len(rows), len(cols), data)
        return hwmodule.Module(alg, dims, action)

    return alg.cached(('injective', vidx), build)


def opposite_algebra(alg):
    """ The opposite algebra, cached so that taking it twice returns
    the original algebra object. """
    return alg.opposite()
