#
# Copyright (c) 2019, 2024  StorPool.
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
""" Errors raised by the hwcert engine, with partial results attached.

Every error carries a formatted message and, optionally, the part of the
computation that was completed before the failure was detected (the
"partial" member): the resolution terms computed before a bound was hit,
the checks already evaluated in a report, and so on.

The hw_catch() and hw_caught() functions are used by batch computations
(pairwise Hom tables, report verification, the regression corpus) to keep
evaluating after the first failure and then re-raise it with all the
partial results attached. """

import sys

import six


class HWError(Exception):
    """ Base class for all the hwcert errors. """

    name = 'hwError'

    def __init__(self, fmt, partial=None, **kwargs):
        """ Store the partial result and format the error message. """
        super(HWError, self).__init__()
        self.partial = partial
        self.__dict__.update(**kwargs)
        self.message = fmt.format(**kwargs)

    def __str__(self):
        """ Return a human-readable error message. """
        return self.message

    def to_json(self):
        """ Describe the error in the CLI error document form. """
        return {'name': self.name, 'descr': self.message}


class NotFiniteDimensional(HWError):
    """ The relation completion found an irreducible path at the bound. """

    name = 'notFiniteDimensional'


class IllFormedRelation(HWError):
    """ A relation combines non-parallel paths or is too short. """

    name = 'illFormedRelation'


class DimensionMismatch(HWError):
    """ Matrix or module shapes do not fit together. """

    name = 'dimensionMismatch'


class AlgebraMismatch(HWError):
    """ Two objects live over different algebras. """

    name = 'algebraMismatch'


class UnknownVertex(HWError):
    """ A vertex name does not belong to the quiver. """

    name = 'unknownVertex'


class Undecided(HWError):
    """ A semi-decision procedure ran out of candidates. """

    name = 'undecided'


class NotSplit(HWError):
    """ An endomorphism ring has a residue algebra of dimension > 1
    that could not be split over the base field. """

    name = 'notSplit'


class DecomposableInput(HWError):
    """ An operation defined for indecomposables got a decomposable module. """

    name = 'decomposableInput'


class TruncationTooShallow(HWError):
    """ A resolution is too short for the requested degree. """

    name = 'truncationTooShallow'


class InfiniteGlobalDimension(HWError):
    """ The operation needs an algebra of finite global dimension. """

    name = 'infiniteGlobalDimension'


class NotExceptionalPair(HWError):
    """ A mutation was requested for a pair that is not exceptional. """

    name = 'notExceptionalPair'


class NotExceptionalSequence(HWError):
    """ A dual sequence was requested for a non-exceptional sequence. """

    name = 'notExceptionalSequence'


class NotStandarizable(HWError):
    """ Iterated universal extensions need a standarizable sequence. """

    name = 'notStandarizable'


class CriterionNotCertified(HWError):
    """ The highest weight criterion does not hold for the pair. """

    name = 'criterionNotCertified'


class NonModuleStandard(HWError):
    """ A standard object has cohomology outside of degree zero. """

    name = 'nonModuleStandard'


class ReportIncomplete(HWError):
    """ A report lacks the data needed by a verification step. """

    name = 'reportIncomplete'


class NonTerminating(HWError):
    """ A recursion went past its tripwire bound. """

    name = 'nonTerminating'


class ConnectingMapError(HWError):
    """ The connecting map of a universal extension is not bijective. """

    name = 'connectingMapError'


class NotMinimal(HWError):
    """ A computed resolution has a differential outside the radical. """

    name = 'notMinimal'


class ParseError(HWError):
    """ A text file could not be parsed. """

    name = 'parseError'

    def __init__(self, fmt, partial=None, line=0, column=0, **kwargs):
        """ Record the position of the error in the input text. """
        super(ParseError, self).__init__(
            '{line}:{column}: ' + fmt, partial=partial,
            line=line, column=column, **kwargs)


def error(cls, fmt, partial=None, **kwargs):
    """ Raise an error of the specified class. """
    raise cls(fmt, partial, **kwargs)


def hw_catch(handle, func, exc):
    """ Invoke a handler and return an exception object if needed. """
    try:
        handle(func())
    except HWError as err:
        if err.partial is not None:
            handle(err.partial)
        if exc is None or not isinstance(exc[1], HWError):
            return sys.exc_info()
    except Exception:  # pylint: disable=broad-except
        if exc is None:
            return sys.exc_info()

    return exc


def hw_caught(exc, name, partial):
    """ Reraise a "partially computed result" error if needed. """
    if exc is None:
        return

    if isinstance(exc[1], HWError):
        exc[1].message = '{name}: {msg}'.format(name=name, msg=exc[1].message)
        exc[1].partial = partial
        six.reraise(*exc)

    raise HWError(
        fmt='{name}: {msg}', name=name, msg=str(exc[1]), partial=partial)
