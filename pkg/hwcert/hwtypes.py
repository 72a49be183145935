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
""" Report object definitions for the hwcert engine. """

import re

from . import hwcatch
from .hwjson import dumps
from .hwtype import JsonObject, hwTypeFun, maybe


PASS = 'pass'
FAIL = 'fail'
UNDECIDED = 'undecided'

EXIT_CODES = {
    PASS: 0,
    FAIL: 1,
    UNDECIDED: 2,
}


# Simple validator functions
def regex(argName, regex):
    _regex = re.compile(regex)

    def validator(string):
        if string is None:
            hwcatch.error(hwcatch.HWError, 'No {argName} specified',
                          argName=argName)

        string = str(string)
        if not _regex.match(string):
            hwcatch.error(hwcatch.HWError,
                          'Invalid {argName} "{argVal}". Must match {regex}',
                          argName=argName, argVal=string, regex=regex)
        return string

    return hwTypeFun(argName, validator,
                     '''string, regex {regex}'''.format(regex=regex))


def oneOf(argName, *accepted):
    accepted = list(accepted)
    _accepted = frozenset(accepted)

    def validator(value):
        if value not in _accepted:
            hwcatch.error(hwcatch.HWError,
                          "Invalid {argName}: {value}. Must be one of "
                          "{accepted}", argName=argName, value=value,
                          accepted=accepted)
        return value

    return hwTypeFun(argName, validator, '''One of {{{accepted}}}'''.format(
        accepted=", ".join(map(dumps, accepted))))


def anyJson(argName):
    return hwTypeFun(argName, lambda value: value,
                     'Any JSON value ({argName})'.format(argName=argName))


status = oneOf('status', PASS, FAIL, UNDECIDED)
fieldSpec = regex('fieldSpec', r'^(?:q|fp:[1-9][0-9]*)$')
vertexName = regex('vertexName', r'^[A-Za-z0-9_]+$')
glDimKind = oneOf('glDimKind', 'finite', 'infinite', 'exceeds')
mutationKind = oneOf('mutationKind', 'left', 'right')
dualKind = oneOf('dualKind', 'left', 'right')


def combine_status(statuses):
    """ fail beats undecided, undecided beats pass. """
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if UNDECIDED in statuses:
        return UNDECIDED
    return PASS


@JsonObject(status=status, witnesses=[str], detail=maybe(str))
class Verdict(object):
    """
    status: The outcome: pass, fail or undecided.
    witnesses: The offending data for a failure, or the missing data for
        an undecided outcome.
    detail: A short free-form explanation.
    """

    @property
    def passed(self):
        """ Did the check pass? """
        return self.status == PASS


def verdict(witnesses=(), undecided=(), detail=None):
    """ A Verdict from the collected failures and unknowns. """
    witnesses, undecided = list(witnesses), list(undecided)
    if witnesses:
        return Verdict(status=FAIL, witnesses=witnesses + undecided,
                       detail=detail)
    if undecided:
        return Verdict(status=UNDECIDED, witnesses=undecided, detail=detail)
    return Verdict(status=PASS, witnesses=[], detail=detail)


@JsonObject(source=str, target=str, dims={int: int}, window=maybe([int]),
            complete=bool)
class GradedHomDims(object):
    """
    source: The source object.
    target: The target object.
    dims: The dimensions of Hom(source, target[n]) by degree n.
    window: The degrees that were computed, if bounded.
    complete: Does the window cover every degree that may be nonzero?
    """


@JsonObject(module=str, terms=[str], complete=bool, length=maybe(int))
class ResolutionInfo(object):
    """
    module: The resolved module.
    terms: The projective terms P_0, P_1, ...
    complete: Did the resolution reach a zero syzygy?
    length: The projective dimension when complete.
    """


@JsonObject(kind=glDimKind, value=int, witness=str)
class GlDimInfo(object):
    """
    kind: finite, infinite (certified by a periodic syzygy) or exceeds.
    value: The global dimension, the period, or the bound.
    witness: The evidence.
    """


@JsonObject(kind=mutationKind, first=str, second=str, terms=str,
            cohomology={int: [int]}, identified={int: str})
class MutationInfo(object):
    """
    kind: left or right.
    first: The object mutated over.
    second: The mutated object.
    terms: The terms of the minimized complex.
    cohomology: The dimension vectors of the cohomology by degree.
    identified: The cohomology modules recognized as simples, projectives
        or injectives.
    """


@JsonObject(kind=dualKind, sequence=[str], dual=[str],
            table=[[{int: int}]], verdict=Verdict)
class DualityTable(object):
    """
    kind: The direction of the dual sequence.
    sequence: The exceptional sequence in order.
    dual: The dual sequence in order.
    table: The graded Hom dimensions between the paired objects.
    verdict: Does the table show the delta pattern?
    """


@JsonObject(object=str, in_leq0=maybe(bool), in_geq0=maybe(bool),
            in_heart=maybe(bool), conclusive=bool, witnesses=[str])
class AisleInfo(object):
    """
    object: The tested object.
    in_leq0: Do the Hom tests against the dual sequence vanish?
    in_geq0: Do the Hom tests from the sequence vanish?
    in_heart: Both of the above.
    conclusive: Does the sequence pass the fullness necessary conditions?
    witnesses: The nonvanishing Hom spaces.
    """


@JsonObject(weak=Verdict, strong=Verdict)
class RestrictionInfo(object):
    """
    weak: Do the sequence objects lie in D<=0 and the duals in D>=0?
    strong: Are all of them modules?
    """


@JsonObject(algebra=str, parts=[[int]], dimension=int, cartan=[[int]],
            standards=[[int]], costandards=[[int]], order=[str],
            steps=[[int]], flags={str: str})
class HeartInfo(object):
    """
    algebra: The presented endomorphism algebra.
    parts: The dimension vectors of the tilting generator parts.
    dimension: The dimension of the endomorphism algebra.
    cartan: Its Cartan matrix.
    standards: The dimension vectors of the standard modules.
    costandards: The dimension vectors of the costandard modules.
    order: The weights in increasing order (a refinement of the partial
        order).
    steps: (i, dim Q_i, dim E_n, dim Ext^1(Q_i, E_n), dim P_i) for each
        universal extension.
    flags: The certification flags set so far.
    """


@JsonObject(st1=Verdict, st2=Verdict, cost1=Verdict, cost2=Verdict)
class AxiomInfo(object):
    """
    st1: The standard objects cover the simples from above.
    st2: The projective covers are filtered by later standards.
    cost1: The costandard objects contain the simples.
    cost2: The injective hulls are filtered by later costandards.
    """


@JsonObject(parts=[[int]], steps=[int], delta_filtrations=[[int]],
            nabla_filtrations=[maybe([int])], verdict=Verdict)
class TiltingInfo(object):
    """
    parts: The dimension vectors of the indecomposable tilting modules.
    steps: The number of universal extensions used for each of them.
    delta_filtrations: The standard factors of each part, bottom up.
    nabla_filtrations: The costandard factors of each part.
    verdict: Do the Ext-vanishing checks hold?
    """


@JsonObject(algebra=str, dimension=int, cartan=[[int]], standards=[[int]],
            dual_heart=Verdict, involution=Verdict)
class RingelInfo(object):
    """
    algebra: The presented Ringel dual.
    dimension: Its dimension.
    cartan: Its Cartan matrix.
    standards: The dimension vectors of its standard modules.
    dual_heart: Is it isomorphic to the heart glued along the dual sequence?
    involution: Is the double Ringel dual isomorphic to the original?
    """


@JsonObject(forward=Verdict, backward=Verdict, order=[str])
class BijectionInfo(object):
    """
    forward: Do the standards of the heart match the sequence?
    backward: Are the standards and the costandards a dual pair?
    order: The vertices of the tops of the standards, in order.
    """


@JsonObject(name=str, status=status, detail=str)
class CorpusEntry(object):
    """
    name: The regression check.
    status: Its outcome.
    detail: What was compared.
    """


@JsonObject(command=str, status=status, result=anyJson('result'),
            witnesses=[str])
class Report(object):
    """
    command: The command line that produced the report.
    status: The overall outcome.
    result: The structured results.
    witnesses: The witnesses of a failure.
    """

    @property
    def exit_code(self):
        """ The process exit code for this report. """
        return EXIT_CODES[self.status]
