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
""" Exact linear algebra over the rationals and over prime fields.

All the Hom, Ext and decomposition computations of the engine reduce to
the kernels defined here: reduced row echelon forms, kernels, solutions
of linear systems, quotient projections and characteristic polynomials.
Matrices are dense and immutable; rational entries are kept as
fractions.Fraction objects, prime field entries as integers in [0, p).
Pivoting always picks the first nonzero entry, so the bases returned are
reproducible from run to run. """

import collections
import fractions
import logging

import six

from . import hwcatch


LOG = logging.getLogger(__name__)

PRIME_FIELD_ROOT_SEARCH = 65537

RrefResult = collections.namedtuple('RrefResult', [
    'reduced',
    'pivots',
    'rank',
])


def is_prime(num):
    """ Trial division primality test for the field characteristic. """
    if num < 2:
        return False
    if num % 2 == 0:
        return num == 2
    div = 3
    while div * div <= num:
        if num % div == 0:
            return False
        div += 2
    return True


class Field(object):
    """ The base field: the rationals (p is None) or a prime field. """

    def __init__(self, p=None):
        """ Validate the characteristic and set up the normalization. """
        if p is not None:
            p = int(p)
            if not is_prime(p):
                hwcatch.error(hwcatch.HWError,
                              'Not a prime field characteristic: {p}', p=p)
        self.p = p

    @classmethod
    def rationals(cls):
        """ The field of rational numbers. """
        return cls(None)

    @classmethod
    def prime(cls, p):
        """ The prime field with p elements. """
        return cls(p)

    @classmethod
    def from_spec(cls, spec):
        """ Parse a "q" or "fp:<p>" field specification. """
        spec = spec.strip().lower()
        if spec in ('q', 'qq', 'rationals'):
            return cls.rationals()
        if spec.startswith('fp:'):
            try:
                return cls.prime(int(spec[3:]))
            except ValueError:
                pass
        return hwcatch.error(hwcatch.ParseError,
                             'Invalid field specification "{spec}"',
                             spec=spec)

    @property
    def spec(self):
        """ The "q" or "fp:<p>" form of the field. """
        return 'q' if self.p is None else 'fp:{p}'.format(p=self.p)

    @property
    def is_rational(self):
        """ Is this the field of rational numbers? """
        return self.p is None

    @property
    def zero(self):
        """ The additive identity. """
        return fractions.Fraction(0) if self.p is None else 0

    @property
    def one(self):
        """ The multiplicative identity. """
        return fractions.Fraction(1) if self.p is None else 1

    def normalize(self, value):
        """ Bring the result of a ring operation back into the field. """
        if self.p is None:
            return value
        return value % self.p

    def coerce(self, value):
        """ Convert an integer, fraction or string into a field element. """
        frac = fractions.Fraction(value)
        if self.p is None:
            return frac
        den = frac.denominator % self.p
        if den == 0:
            hwcatch.error(hwcatch.HWError,
                          'The value {value} is not defined over {spec}',
                          value=value, spec=self.spec)
        return (frac.numerator * pow(den, self.p - 2, self.p)) % self.p

    def inv(self, value):
        """ The multiplicative inverse of a nonzero element. """
        if value == 0:
            raise ZeroDivisionError('field inverse of zero')
        if self.p is None:
            return 1 / value
        return pow(value, self.p - 2, self.p)

    def random_element(self, rng, spread=1000):
        """ A pseudo-random element with small height. """
        if self.p is None:
            return fractions.Fraction(rng.randint(-spread, spread))
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('Field', self.p))

    def __repr__(self):
        return 'Field({spec})'.format(spec=self.spec)


QQ = Field.rationals()


class Matrix(object):
    """ An immutable dense matrix over a Field. """

    __slots__ = ('field', 'rows', 'cols', '_data', '_hash')

    def __init__(self, field, rows, cols, data=None):
        """ Store the entries, checking the shape. """
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            zero = field.zero
            self._data = tuple(tuple(zero for _ in range(cols))
                               for _ in range(rows))
        else:
            self._data = tuple(tuple(row) for row in data)
            if len(self._data) != rows or any(
                    len(row) != cols for row in self._data):
                hwcatch.error(hwcatch.DimensionMismatch,
                              'Expected a {rows}x{cols} matrix',
                              rows=rows, cols=cols)
        self._hash = None

    @classmethod
    def zero(cls, field, rows, cols):
        """ The zero matrix of the specified shape. """
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, size):
        """ The identity matrix. """
        zero, one = field.zero, field.one
        return cls(field, size, size, [
            [one if i == j else zero for j in range(size)]
            for i in range(size)])

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        """ Build a matrix from a list of rows, coercing the entries. """
        rows = [[field.coerce(x) for x in row] for row in rows]
        if cols is None:
            if not rows:
                hwcatch.error(hwcatch.DimensionMismatch,
                              'Cannot infer the width of an empty matrix')
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field, columns, rows):
        """ Build a matrix from a list of column vectors. """
        columns = [list(col) for col in columns]
        if any(len(col) != rows for col in columns):
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Expected columns of height {rows}', rows=rows)
        return cls(field, rows, len(columns), [
            [columns[j][i] for j in range(len(columns))]
            for i in range(rows)])

    @classmethod
    def block_diagonal(cls, field, blocks):
        """ The block diagonal matrix with the given square-or-not blocks. """
        rows = sum(blk.rows for blk in blocks)
        cols = sum(blk.cols for blk in blocks)
        data = [[field.zero] * cols for _ in range(rows)]
        roff, coff = 0, 0
        for blk in blocks:
            for i, row in enumerate(blk.to_lists()):
                data[roff + i][coff:coff + blk.cols] = row
            roff += blk.rows
            coff += blk.cols
        return cls(field, rows, cols, data)

    @classmethod
    def from_blocks(cls, field, grid, row_sizes, col_sizes):
        """ Assemble a matrix from a grid of blocks; None means zero. """
        rows, cols = sum(row_sizes), sum(col_sizes)
        data = [[field.zero] * cols for _ in range(rows)]
        roff = 0
        for bi, height in enumerate(row_sizes):
            coff = 0
            for bj, width in enumerate(col_sizes):
                blk = grid[bi][bj]
                if blk is not None:
                    if blk.rows != height or blk.cols != width:
                        hwcatch.error(hwcatch.DimensionMismatch,
                                      'Block ({i},{j}) should be '
                                      '{h}x{w}, got {r}x{c}',
                                      i=bi, j=bj, h=height, w=width,
                                      r=blk.rows, c=blk.cols)
                    for i, row in enumerate(blk.to_lists()):
                        data[roff + i][coff:coff + width] = row
                coff += width
            roff += height
        return cls(field, rows, cols, data)

    @property
    def shape(self):
        """ The (rows, cols) pair. """
        return (self.rows, self.cols)

    def __getitem__(self, pos):
        return self._data[pos[0]][pos[1]]

    def row(self, idx):
        """ A row as a tuple. """
        return self._data[idx]

    def column(self, idx):
        """ A column as a tuple. """
        return tuple(row[idx] for row in self._data)

    def columns(self):
        """ All the columns as a list of tuples. """
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self):
        """ A mutable copy of the entries. """
        return [list(row) for row in self._data]

    def transpose(self):
        """ The transposed matrix. """
        return Matrix(self.field, self.cols, self.rows, self.columns())

    def is_zero(self):
        """ Are all the entries zero? """
        return all(x == 0 for row in self._data for x in row)

    def _check_same(self, other):
        if self.shape != other.shape:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Cannot combine {a} and {b} matrices',
                          a=self.shape, b=other.shape)

    def __add__(self, other):
        self._check_same(other)
        norm = self.field.normalize
        return Matrix(self.field, self.rows, self.cols, [
            [norm(x + y) for x, y in zip(ra, rb)]
            for ra, rb in zip(self._data, other._data)])

    def __sub__(self, other):
        self._check_same(other)
        norm = self.field.normalize
        return Matrix(self.field, self.rows, self.cols, [
            [norm(x - y) for x, y in zip(ra, rb)]
            for ra, rb in zip(self._data, other._data)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coef):
        """ Multiply all the entries by a scalar. """
        norm = self.field.normalize
        coef = self.field.coerce(coef)
        return Matrix(self.field, self.rows, self.cols, [
            [norm(coef * x) for x in row] for row in self._data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Cannot multiply {a} by {b}',
                          a=self.shape, b=other.shape)
        norm = self.field.normalize
        zero = self.field.zero
        ocols = other.columns()
        data = []
        for row in self._data:
            nz = [(k, x) for k, x in enumerate(row) if x != 0]
            data.append([
                norm(sum((x * col[k] for k, x in nz), zero))
                for col in ocols])
        return Matrix(self.field, self.rows, other.cols, data)

    def apply(self, vector):
        """ Multiply a column vector, returning a tuple. """
        if len(vector) != self.cols:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Cannot apply a {a} matrix to a vector of '
                          'length {n}', a=self.shape, n=len(vector))
        norm = self.field.normalize
        zero = self.field.zero
        nz = [(k, x) for k, x in enumerate(vector) if x != 0]
        return tuple(norm(sum((row[k] * x for k, x in nz), zero))
                     for row in self._data)

    def hstack(self, other):
        """ Place another matrix with the same row count to the right. """
        if self.rows != other.rows:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Cannot place {b} beside {a}',
                          a=self.shape, b=other.shape)
        return Matrix(self.field, self.rows, self.cols + other.cols, [
            ra + rb for ra, rb in zip(self._data, other._data)])

    def vstack(self, other):
        """ Place another matrix with the same column count below. """
        if self.cols != other.cols:
            hwcatch.error(hwcatch.DimensionMismatch,
                          'Cannot place {b} below {a}',
                          a=self.shape, b=other.shape)
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      self._data + other._data)

    def submatrix(self, rows, cols):
        """ The matrix formed by the selected rows and columns. """
        rows, cols = list(rows), list(cols)
        return Matrix(self.field, len(rows), len(cols), [
            [self._data[i][j] for j in cols] for i in rows])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field and
                self.shape == other.shape and self._data == other._data)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        return 'Matrix({rows}x{cols}, {data})'.format(
            rows=self.rows, cols=self.cols,
            data=[[str(x) for x in row] for row in self._data])


def _rref_lists(field, rows, ncols):
    """ Row reduce a list of lists in place, return the pivot columns. """
    norm = field.normalize
    nrows = len(rows)
    pivots = []
    top = 0
    for col in range(ncols):
        if top == nrows:
            break
        piv = None
        for i in range(top, nrows):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        head = rows[top][col]
        if head != 1:
            inv = field.inv(head)
            rows[top] = [norm(x * inv) for x in rows[top]]
        prow = rows[top]
        for i in range(nrows):
            if i == top:
                continue
            fac = rows[i][col]
            if fac != 0:
                rows[i] = [norm(x - fac * y) if y != 0 else x
                           for x, y in zip(rows[i], prow)]
        pivots.append(col)
        top += 1
    return pivots


def rref(mat):
    """ The reduced row echelon form, its pivot columns and the rank. """
    rows = mat.to_lists()
    pivots = _rref_lists(mat.field, rows, mat.cols)
    return RrefResult(
        reduced=Matrix(mat.field, mat.rows, mat.cols, rows),
        pivots=tuple(pivots),
        rank=len(pivots),
    )


def rank(mat):
    """ The rank of a matrix. """
    if mat.rows == 0 or mat.cols == 0:
        return 0
    return len(_rref_lists(mat.field, mat.to_lists(), mat.cols))


def kernel_basis(mat):
    """ A matrix whose columns form a basis of the null space. """
    field = mat.field
    rows = mat.to_lists()
    pivots = _rref_lists(field, rows, mat.cols)
    pivset = set(pivots)
    columns = []
    for free in range(mat.cols):
        if free in pivset:
            continue
        vec = [field.zero] * mat.cols
        vec[free] = field.one
        for i, pcol in enumerate(pivots):
            vec[pcol] = field.normalize(-rows[i][free])
        columns.append(vec)
    return Matrix.from_columns(field, columns, mat.cols)


def nullity(mat):
    """ The dimension of the null space. """
    return mat.cols - rank(mat)


def solve(lhs, rhs):
    """ Solve lhs * x = rhs, free variables set to zero; None if
    the system is inconsistent. """
    if lhs.rows != rhs.rows:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'Cannot solve a {a} system for a {b} right-hand side',
                      a=lhs.shape, b=rhs.shape)
    field = lhs.field
    aug = lhs.hstack(rhs).to_lists()
    pivots = _rref_lists(field, aug, lhs.cols + rhs.cols)
    if any(pcol >= lhs.cols for pcol in pivots):
        return None
    data = [[field.zero] * rhs.cols for _ in range(lhs.cols)]
    for i, pcol in enumerate(pivots):
        data[pcol] = aug[i][lhs.cols:]
    return Matrix(field, lhs.cols, rhs.cols, data)


def solve_vector(lhs, vector):
    """ Solve lhs * x = vector for a single vector; None if impossible. """
    res = solve(lhs, Matrix(lhs.field, lhs.rows, 1,
                            [[x] for x in vector]))
    if res is None:
        return None
    return res.column(0)


def inverse(mat):
    """ The inverse of a square matrix. """
    if mat.rows != mat.cols:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'Cannot invert a {a} matrix', a=mat.shape)
    res = solve(mat, Matrix.identity(mat.field, mat.rows))
    if res is None or mat * res != Matrix.identity(mat.field, mat.rows):
        hwcatch.error(hwcatch.DimensionMismatch, 'The matrix is singular')
    return res


def is_invertible(mat):
    """ Is this a square matrix of full rank? """
    return mat.rows == mat.cols and rank(mat) == mat.rows


def image_basis(mat):
    """ The pivot columns of a matrix: a basis of its column space. """
    res = rref(mat)
    return mat.submatrix(range(mat.rows), res.pivots)


def complement_columns(sub, size):
    """ Unit columns completing the column space of sub to the whole
    space of the given size. """
    field = sub.field
    if sub.cols == 0:
        pivots = ()
    else:
        pivots = rref(sub.transpose()).pivots
    pivset = set(pivots)
    columns = []
    for idx in range(size):
        if idx in pivset:
            continue
        vec = [field.zero] * size
        vec[idx] = field.one
        columns.append(vec)
    return Matrix.from_columns(field, columns, size)


def quotient_projection(sub, size):
    """ Split a space along the column space of sub.

    Returns (complement, projection): the columns of complement span a
    complement of the column space of sub, and projection maps the
    whole space onto the complement coordinates, vanishing on sub. """
    field = sub.field
    basis = image_basis(sub) if sub.cols else sub
    comp = complement_columns(basis, size)
    whole = basis.hstack(comp)
    inv = inverse(whole)
    proj = inv.submatrix(range(basis.cols, size), range(size))
    if comp.cols == 0:
        proj = Matrix(field, 0, size)
    return comp, proj


def coordinates(basis, vectors):
    """ Express the columns of vectors in terms of the independent
    columns of basis; an error if some vector is outside the span. """
    res = solve(basis, vectors)
    if res is None:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'The vectors are not in the span of the basis')
    return res


def intersect_columns(first, second):
    """ A basis of the intersection of two column spaces. """
    field = first.field
    if first.cols == 0 or second.cols == 0:
        return Matrix(field, first.rows, 0)
    ker = kernel_basis(first.hstack(-second))
    top = ker.submatrix(range(first.cols), range(ker.cols))
    return image_basis(first * top)


def determinant(mat):
    """ The determinant of a square matrix, by elimination. """
    if mat.rows != mat.cols:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'Cannot take the determinant of a {a} matrix',
                      a=mat.shape)
    field = mat.field
    norm = field.normalize
    rows = mat.to_lists()
    det = field.one
    size = mat.rows
    for col in range(size):
        piv = None
        for i in range(col, size):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = norm(-det)
        head = rows[col][col]
        det = norm(det * head)
        inv = field.inv(head)
        for i in range(col + 1, size):
            fac = norm(rows[i][col] * inv)
            if fac != 0:
                rows[i] = [norm(x - fac * y)
                           for x, y in zip(rows[i], rows[col])]
    return det


def charpoly(mat):
    """ The characteristic polynomial det(xI - mat), highest degree
    coefficient first; division free, so it works over any field. """
    if mat.rows != mat.cols:
        hwcatch.error(hwcatch.DimensionMismatch,
                      'Cannot take the characteristic polynomial of '
                      'a {a} matrix', a=mat.shape)
    field = mat.field
    norm = field.normalize
    zero, one = field.zero, field.one
    data = mat.to_lists()
    size = mat.rows
    if size == 0:
        return [one]
    poly = [one, norm(-data[0][0])]
    for top in range(1, size):
        row = data[top][:top]
        vec = [data[i][top] for i in range(top)]
        toeplitz = [one, norm(-data[top][top])]
        for _ in range(top):
            toeplitz.append(norm(-sum((row[t] * vec[t] for t in range(top)),
                                      zero)))
            vec = [norm(sum((data[i][t] * vec[t] for t in range(top)), zero))
                   for i in range(top)]
        poly = [
            norm(sum((toeplitz[i - j] * poly[j]
                      for j in range(top + 1) if i - j >= 0), zero))
            for i in range(top + 2)
        ]
    return poly


def _eval_poly(field, poly, value):
    """ Horner evaluation, highest degree coefficient first. """
    acc = field.zero
    for coef in poly:
        acc = field.normalize(acc * value + coef)
    return acc


def _divisors(num):
    """ The positive divisors of a nonzero integer. """
    num = abs(num)
    small, large = [], []
    div = 1
    while div * div <= num:
        if num % div == 0:
            small.append(div)
            if div * div != num:
                large.append(num // div)
        div += 1
    return small + large[::-1]


def rational_roots(field, poly):
    """ The distinct roots of a polynomial that lie in the base field. """
    poly = list(poly)
    while poly and poly[0] == 0:
        poly.pop(0)
    if len(poly) <= 1:
        return []

    roots = set()
    while poly[-1] == 0:
        roots.add(field.zero)
        poly.pop()
        if len(poly) == 1:
            return sorted(roots)

    if field.p is not None:
        limit = min(field.p, PRIME_FIELD_ROOT_SEARCH)
        if limit < field.p:
            LOG.warning('Only searching %d of the %d prime field elements '
                        'for eigenvalues', limit, field.p)
        roots.update(val for val in six.moves.range(limit)
                     if _eval_poly(field, poly, val) == 0)
        return sorted(roots)

    scale = 1
    for coef in poly:
        scale = _lcm(scale, coef.denominator)
    ints = [int(coef * scale) for coef in poly]
    for num in _divisors(ints[-1]):
        for den in _divisors(ints[0]):
            for sign in (1, -1):
                cand = fractions.Fraction(sign * num, den)
                if cand not in roots and _eval_poly(field, poly, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _lcm(first, second):
    """ The least common multiple of two positive integers. """
    a, b = first, second
    while b:
        a, b = b, a % b
    return first * second // a


def lifted_power_trace(mat, exp, modulus):
    """ The trace of L**exp modulo `modulus`, where L is the square prime
    field matrix lifted to integers in [0, p). """
    if mat.field.p is None:
        hwcatch.error(hwcatch.HWError,
                      'Integer lifts are only taken over prime fields')
    size = mat.rows

    def mult(left, right):
        return [[sum(left[i][k] * right[k][j] for k in range(size)) % modulus
                 for j in range(size)] for i in range(size)]

    prime = mat.field.p
    base = [[int(x) % prime for x in row] for row in mat.to_lists()]
    res = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    while exp:
        if exp & 1:
            res = mult(res, base)
        exp >>= 1
        if exp:
            base = mult(base, base)
    return sum(res[i][i] for i in range(size)) % modulus
