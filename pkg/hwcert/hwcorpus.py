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
""" The built-in algebras, the randomized Hom/Ext oracle and the
regression suite run by the corpus command. """

import collections
import logging
import os
import random
import threading

from . import hwalgebra
from . import hwbasic
from . import hwcatch
from . import hwderived
from . import hwexcseq
from . import hwformat
from . import hwhomology
from . import hwmodule
from . import hwtypes
from . import hwweight


LOG = logging.getLogger(__name__)

ORACLE_MAX_DEGREE = 6
ORACLE_PAIRS = 200
ORACLE_SEED = hwmodule.DEFAULT_SEED

BUILTINS = {
    'kalck': '''
VERTICES 1 2 3
ARROWS
a: 1 -> 2
b: 1 -> 2
c: 2 -> 3
d: 3 -> 1
RELATIONS
a*d
c*b
d*c
''',
    'a2': '''
VERTICES 1 2
ARROWS
a: 1 -> 2
''',
    'a3': '''
VERTICES 1 2 3
ARROWS
a: 1 -> 2
b: 2 -> 3
''',
    'z2': '''
VERTICES 1 2
ARROWS
a: 1 -> 2
b: 2 -> 1
RELATIONS
a*b
b*a
''',
    'pt': '''
VERTICES 1
''',
}

Check = collections.namedtuple('Check', [
    'name',
    'func',
])

_CACHE = {}
_CACHE_LOCK = threading.Lock()


def builtin_text(name):
    """ The algebra file text of a built-in algebra. """
    try:
        return hwformat.HEADER + '\n' + BUILTINS[name].lstrip()
    except KeyError:
        return hwcatch.error(hwcatch.ParseError,
                             'Unknown built-in algebra "{name}"', name=name)


def load_algebra(spec, field=None, length_bound=None, default_field='q',
                 default_bound=hwalgebra.DEFAULT_LENGTH_BOUND):
    """ A built-in algebra by name or an algebra file.  Built-in algebras
    are shared, so that objects built from them may be compared. """
    if spec in BUILTINS and not os.path.isfile(spec):
        key = (spec, field if field is not None else default_field,
               length_bound if length_bound is not None else default_bound)
        with _CACHE_LOCK:
            if key not in _CACHE:
                _CACHE[key] = hwformat.parse_algebra(
                    builtin_text(spec), field, length_bound, default_field,
                    default_bound)
            return _CACHE[key]
    try:
        with open(spec) as infile:
            text = infile.read()
    except (IOError, OSError) as err:
        return hwcatch.error(hwcatch.ParseError,
                             'Could not read the algebra file {spec}: {err}',
                             spec=spec, err=err)
    return hwformat.parse_algebra(text, field, length_bound, default_field,
                                  default_bound)


def random_module(alg, rng, max_tops=2, spread=3):
    """ A quotient of a sum of one or two indecomposable projectives by
    the submodule generated by a random vector. """
    count = rng.randint(1, max_tops)
    projs = [hwalgebra.projective_module(
        alg, alg.vertex_name(rng.randrange(alg.num_vertices)))
        for _ in range(count)]
    total = hwmodule.direct_sum(projs, alg).module
    candidates = [vert for vert, dim in enumerate(total.dims) if dim]
    vert = rng.choice(candidates)
    vec = [alg.field.random_element(rng, spread)
           for _ in range(total.dims[vert])]
    if not any(vec) or rng.random() < 0.25:
        return total
    _, incl = hwmodule.submodule_generated(total, {vert: [vec]})
    return hwmodule.cokernel(incl)[0]


def oracle_check(pairs=ORACLE_PAIRS, seed=ORACLE_SEED,
                 max_degree=ORACLE_MAX_DEGREE, algebras=None):
    """ Compare the graded Hom space of a resolved module and a module
    with the Ext groups computed from the resolution alone. """
    if algebras is None:
        algebras = [load_algebra(name) for name in sorted(BUILTINS)]
    rng = random.Random(seed)
    mismatches, undecided = [], []
    for idx in range(pairs):
        alg = rng.choice(algebras)
        first, second = random_module(alg, rng), random_module(alg, rng)
        src = hwderived.complex_of_module(first, max_degree + 2)
        ghom = hwderived.graded_hom(src, second)
        for deg in range(max_degree + 1):
            try:
                derived = ghom.dimension(deg)
            except hwcatch.TruncationTooShallow:
                undecided.append('pair {idx}, degree {deg}'.format(
                    idx=idx, deg=deg))
                continue
            direct = hwhomology.ext(first, second, deg).dimension
            if derived != direct:
                mismatches.append(
                    'pair {idx} ({src} -> {dst}), degree {deg}: graded Hom '
                    '{derived}, Ext {direct}'.format(
                        idx=idx, src=list(first.dims), dst=list(second.dims),
                        deg=deg, derived=derived, direct=direct))
    LOG.debug('Oracle: %d pairs, %d mismatches', pairs, len(mismatches))
    return hwtypes.verdict(mismatches, undecided, detail='{n} pairs up to '
                           'degree {d}'.format(n=pairs, d=max_degree))


def _modules(alg, kind, names):
    letter, build = hwformat.KINDS[kind]
    return ([build(alg, name) for name in names],
            ['{letter}{name}'.format(letter=letter, name=name)
             for name in names])


def _matches(objs, expected):
    """ Compare objects with modules up to isomorphism, in order. """
    found = []
    for idx, (obj, mod) in enumerate(zip(objs, expected)):
        cand = hwexcseq.module_of(obj)
        if cand is None:
            found.append('object {n} is not a module'.format(n=idx + 1))
        elif not hwmodule.is_isomorphic(cand, mod).isomorphic:
            found.append('object {n} has dimension vector {got}, expected '
                         '{want}'.format(n=idx + 1, got=list(cand.dims),
                                         want=list(mod.dims)))
    return found


def _expect(witnesses, cond, fmt, **kwargs):
    if not cond:
        witnesses.append(fmt.format(**kwargs))


def kalck_sequence():
    """ (S3, P2, P1) over the Kalck algebra. """
    alg = load_algebra('kalck')
    objs = [hwalgebra.simple_module(alg, '3'),
            hwalgebra.projective_module(alg, '2'),
            hwalgebra.projective_module(alg, '1')]
    return hwexcseq.ExceptionalSequence(objs, ['S3', 'P2', 'P1'])


def kalck_pair():
    """ The Kalck sequence with its left dual. """
    alg = load_algebra('kalck')
    return alg.cached(('corpus', 'pair'),
                      lambda: hwexcseq.left_dual_sequence(kalck_sequence()))


def check_kalck_sequence():
    """ The sequence is exceptional and passes the fullness conditions. """
    seq = kalck_sequence()
    exc = hwexcseq.is_exceptional_sequence(seq)
    full = hwexcseq.fullness_necessary_conditions(seq).verdict
    return hwtypes.Verdict(
        status=hwtypes.combine_status([exc.status, full.status]),
        witnesses=exc.witnesses + full.witnesses,
        detail='exceptional, fullness conditions')


def check_kalck_homs():
    """ The graded Hom spaces between the simples and projectives. """
    alg = load_algebra('kalck')
    simple = dict((name, hwalgebra.simple_module(alg, name))
                  for name in ('1', '2', '3'))
    proj = dict((name, hwalgebra.projective_module(alg, name))
                for name in ('1', '2'))
    witnesses = []
    for label, src, dst, want in (
            ('Hom*(S3, P2)', simple['3'], proj['2'], {0: 1, 2: 1}),
            ('Hom*(S1, S3)', simple['1'], simple['3'], {2: 1}),
            ('Hom*(S2, S3)', simple['2'], simple['3'], {1: 1})):
        ghom = hwderived.graded_hom(hwexcseq.as_complex(src), dst)
        _expect(witnesses, ghom.complete and ghom.dims == want,
                '{label} = {got}, expected {want}', label=label,
                got=ghom.dims, want=want)
    dim = hwmodule.hom_dim(proj['2'], proj['1'])
    _expect(witnesses, dim == 2, 'dim Hom(P2, P1) = {dim}', dim=dim)
    return hwtypes.verdict(witnesses, detail='graded Hom dimensions')


def check_kalck_mutations():
    """ L_S3 P2 has S2 and S3 as cohomology, R_P1 P2 has H^1. """
    alg = load_algebra('kalck')
    s3 = hwalgebra.simple_module(alg, '3')
    p2 = hwalgebra.projective_module(alg, '2')
    p1 = hwalgebra.projective_module(alg, '1')
    witnesses = []
    left = hwderived.cohomology_modules(hwexcseq.left_mutation(s3, p2))
    named = dict((deg, hwexcseq.recognize_module(mod))
                 for deg, mod in left.items())
    _expect(witnesses, named == {0: 'S2', 1: 'S3'},
            'L_S3 P2 has cohomology {named}', named=named)
    right = hwderived.cohomology_modules(hwexcseq.right_mutation(p1, p2))
    _expect(witnesses, 1 in right, 'R_P1 P2 has no cohomology in degree 1')
    return hwtypes.verdict(witnesses, detail='mutations')


def check_kalck_resolutions():
    """ The minimal resolutions of S1 and S2 term by term. """
    alg = load_algebra('kalck')
    witnesses = []
    for name, want in (('1', ['P1', 'P2^2', 'P3', 'P1', 'P2']),
                       ('2', ['P2', 'P3', 'P1', 'P2'])):
        res = hwhomology.minimal_resolution(
            hwalgebra.simple_module(alg, name), len(want) + 1)
        _expect(witnesses, res.complete and res.term_labels() == want,
                'the resolution of S{name} is {got}', name=name,
                got=res.term_labels())
    return hwtypes.verdict(witnesses, detail='minimal resolutions')


def check_kalck_aisle():
    """ The simple modules lie in the heart glued along the sequence. """
    alg = load_algebra('kalck')
    pair = kalck_pair()
    witnesses, undecided = [], []
    for name in ('1', '2', '3'):
        info = hwexcseq.glued_aisle_membership(
            hwalgebra.simple_module(alg, name), pair, 'S' + name)
        if info.in_heart is False:
            witnesses.extend(info.witnesses)
        elif info.in_heart is None or not info.conclusive:
            undecided.append('S{name}: membership not certified'.format(
                name=name))
    return hwtypes.verdict(witnesses, undecided, detail='glued heart')


def kalck_tau():
    """ (H^0(M), S2, S3); H^0(M) is the extension of S3 by S1. """
    alg = load_algebra('kalck')
    proj = hwalgebra.projective_module(alg, '3')
    vert = alg.vertex_index('2')
    _, incl = hwmodule.submodule_generated(
        proj, {vert: [[1] * proj.dims[vert]]})
    ext_mod = hwmodule.cokernel(incl)[0]
    return hwexcseq.ExceptionalSequence(
        [ext_mod, hwalgebra.simple_module(alg, '2'),
         hwalgebra.simple_module(alg, '3')], ['H0(M)', 'S2', 'S3'])


def check_kalck_tau():
    """ Ext^2(S3, S2) is the field and it is the first obstruction. """
    alg = load_algebra('kalck')
    witnesses = []
    dim = hwhomology.ext(hwalgebra.simple_module(alg, '3'),
                         hwalgebra.simple_module(alg, '2'), 2).dimension
    _expect(witnesses, dim == 1, 'dim Ext^2(S3, S2) = {dim}', dim=dim)
    res = hwexcseq.is_exceptional_sequence(kalck_tau())
    _expect(witnesses, res.status == hwtypes.FAIL and
            res.witnesses[:1] == ['Ext^2(S3, S2) != 0'],
            'the second sequence gave {status}: {why}', status=res.status,
            why=res.witnesses)
    return hwtypes.verdict(witnesses, detail='a non-exceptional sequence')


def check_kalck_restriction():
    """ The dual of the Kalck sequence does not consist of modules. """
    pair = kalck_pair()
    info = hwexcseq.restriction_hypotheses(pair)
    duals = [wit for wit in info.strong.witnesses
             if any(wit.startswith(name + ' ') for name in pair.dual_names)]
    return hwtypes.verdict(
        [] if duals else ['the dual sequence consists of modules'],
        detail='restriction hypotheses')


def check_kalck_criterion():
    """ The dual side of the Kalck pair has a negative degree Hom. """
    res = hwweight.hw_criterion(kalck_pair())
    want = 'Hom(F2, F1[-1]) != 0'
    return hwtypes.verdict(
        [] if res.status == hwtypes.FAIL and want in res.witnesses else
        ['the criterion gave {status}: {why}'.format(
            status=res.status, why=res.witnesses)],
        detail='criterion fails with ' + want)


def a3_pairs():
    """ (P3, P2, P1) with its left dual, and (S1, S2, S3) with its own. """
    alg = load_algebra('a3')

    def build():
        projs, pnames = _modules(alg, 'p', ['3', '2', '1'])
        first = hwexcseq.left_dual_sequence(
            hwexcseq.ExceptionalSequence(projs, pnames))
        simples, snames = _modules(alg, 's', ['1', '2', '3'])
        second = hwexcseq.left_dual_sequence(
            hwexcseq.ExceptionalSequence(simples, snames))
        return first, second

    return alg.cached(('corpus', 'pairs'), build)


def check_directed_duals():
    """ Projectives, simples and injectives are left duals in turn and
    every pair has the delta pattern. """
    alg = load_algebra('a3')
    first, second = a3_pairs()
    simples, _ = _modules(alg, 's', ['1', '2', '3'])
    injectives, _ = _modules(alg, 'i', ['3', '2', '1'])
    witnesses = _matches(first.dual_in_order()[0], simples)
    witnesses.extend(_matches(second.dual_in_order()[0], injectives))
    right = hwexcseq.right_dual_sequence(second.sequence, check=False)
    undecided = []
    for pair in (first, second, right):
        verdict = hwexcseq.verify_hom_duality(pair).verdict
        witnesses.extend(verdict.witnesses
                         if verdict.status == hwtypes.FAIL else [])
        if verdict.status == hwtypes.UNDECIDED:
            undecided.extend(verdict.witnesses)
    return hwtypes.verdict(witnesses, undecided, detail='dual sequences')


def check_directed_bijection():
    """ Both structures survive the round trip and their orders are
    mutually inverse. """
    alg = load_algebra('a3')
    first, second = a3_pairs()
    witnesses, undecided = [], []
    orders = []
    for pair in (first, second):
        info = hwweight.bijection_check(alg, pair)
        orders.append(info.order)
        for res in (info.forward, info.backward):
            if res.status == hwtypes.FAIL:
                witnesses.extend(res.witnesses)
            elif res.status == hwtypes.UNDECIDED:
                undecided.extend(res.witnesses)
    _expect(witnesses, orders[0] == list(reversed(orders[1])),
            'the orders {first} and {second} are not inverse',
            first=orders[0], second=orders[1])
    return hwtypes.verdict(witnesses, undecided, detail='bijection')


def check_criterion():
    """ The criterion holds for both directed pairs. """
    witnesses, undecided = [], []
    for pair in a3_pairs():
        res = hwweight.hw_criterion(pair)
        if res.status == hwtypes.FAIL:
            witnesses.extend(res.witnesses)
        elif res.status == hwtypes.UNDECIDED:
            undecided.extend(res.witnesses)
    return hwtypes.verdict(witnesses, undecided, detail='directed pairs')


def check_heart():
    """ The heart of (S1, S2, S3) is presented by A3 itself and the four
    axioms hold. """
    alg = load_algebra('a3')
    report = hwweight.heart_presentation(a3_pairs()[1])
    witnesses, undecided = [], []
    total = hwmodule.direct_sum(report.parts, alg).module
    iso = hwmodule.is_isomorphic(total, hwbasic.regular_module(alg))
    _expect(witnesses, iso.isomorphic, 'the tilting generator is not '
            'isomorphic to the regular module: {why}', why=iso.reason)
    _expect(witnesses, report.algebra.dimension == 6,
            'the heart algebra has dimension {dim}',
            dim=report.algebra.dimension)
    axioms = hwweight.verify_hw_axioms(report)
    for name in ('st1', 'st2', 'cost1', 'cost2'):
        res = getattr(axioms, name)
        if res.status == hwtypes.FAIL:
            witnesses.extend('{name}: {wit}'.format(name=name, wit=wit)
                             for wit in res.witnesses)
        elif res.status == hwtypes.UNDECIDED:
            undecided.append('{name} not certified'.format(name=name))
    return hwtypes.verdict(witnesses, undecided, detail='heart of A3')


def check_universal_extensions():
    """ dim P_i = dim Q_i + dim E_n * dim Ext^1(Q_i, E_n) throughout. """
    cases = []
    for name, kind, verts in (('a2', 's', ['1', '2']),
                              ('a3', 's', ['1', '2', '3']),
                              ('a3', 'p', ['3', '2', '1'])):
        cases.append(_modules(load_algebra(name), kind, verts))
    seq = kalck_sequence()
    cases.append(([hwexcseq.module_of(obj) for obj in seq.objects],
                  seq.names))
    witnesses = []
    count = 0
    for mods, names in cases:
        try:
            tower = hwweight.iterated_universal_extension(mods, names)
        except hwcatch.ConnectingMapError as err:
            witnesses.append('{names}: {err}'.format(names=names, err=err))
            continue
        for idx, dim_q, dim_e, mult, dim_p in tower.steps:
            count += 1
            _expect(witnesses, dim_p == dim_q + dim_e * mult,
                    '{names}: step {idx} gives {p} != {q} + {e} * {k}',
                    names=names, idx=idx, p=dim_p, q=dim_q, e=dim_e, k=mult)
    return hwtypes.verdict(witnesses, detail='{n} extension steps'.format(
        n=count))


def a3_structure():
    """ The structure on A3 whose standard modules are the simples. """
    alg = load_algebra('a3')
    return alg.cached(('corpus', 'structure'),
                      lambda: hwweight.structure_report(alg, ['1', '2', '3']))


def check_char_tilting():
    """ The characteristic tilting module is the sum of the injectives. """
    alg = load_algebra('a3')
    package = hwweight.characteristic_tilting(a3_structure())
    injectives, _ = _modules(alg, 'i', ['1', '2', '3'])
    iso = hwmodule.is_isomorphic(package.module,
                                 hwmodule.direct_sum(injectives).module)
    witnesses = list(package.verdict.witnesses)
    _expect(witnesses, iso.isomorphic, 'T is not the sum of the '
            'injectives: {why}', why=iso.reason)
    return hwtypes.verdict(witnesses, detail='characteristic tilting')


def check_ringel_dual():
    """ The Ringel dual of A3 is A3 again and the duality is an
    involution. """
    alg = load_algebra('a3')
    ringel = hwweight.ringel_dual(a3_structure())
    witnesses, undecided = [], []
    try:
        iso = hwbasic.algebra_isomorphism(ringel.presentation.algebra,
                                          alg.opposite())
        _expect(witnesses, iso.isomorphic, 'the Ringel dual differs from '
                'the opposite algebra: {why}', why=iso.reason)
    except hwcatch.Undecided as err:
        undecided.append(str(err))
    res = ringel.info.involution
    if res.status == hwtypes.FAIL:
        witnesses.extend(res.witnesses)
    elif res.status == hwtypes.UNDECIDED:
        undecided.extend(res.witnesses)
    return hwtypes.verdict(witnesses, undecided, detail='Ringel duality')


def check_serre():
    """ The double left dual matches the Nakayama images. """
    witnesses = []
    for name, verts in (('a2', ['1', '2']), ('a3', ['1', '2', '3'])):
        mods, names = _modules(load_algebra(name), 's', verts)
        res = hwexcseq.serre_check(hwexcseq.ExceptionalSequence(mods, names))
        witnesses.extend('{alg}: {wit}'.format(alg=name, wit=wit)
                         for wit in res.witnesses)
    return hwtypes.verdict(witnesses, detail='Serre functor')


def check_negative_control():
    """ Z2 has infinite global dimension and no exceptional simples. """
    alg = load_algebra('z2')
    witnesses = []
    probe = hwhomology.global_dimension_probe(alg)
    _expect(witnesses, probe.kind == hwhomology.INFINITE and
            probe.value == 2, 'the probe gave {kind} {value}: {witness}',
            kind=probe.kind, value=probe.value, witness=probe.witness)
    for name in ('1', '2'):
        res = hwexcseq.is_exceptional(hwalgebra.simple_module(alg, name),
                                      'S' + name)
        _expect(witnesses, res.status == hwtypes.FAIL and any(
            wit.startswith('Ext^') for wit in res.witnesses),
            'S{name} gave {status}: {why}', name=name, status=res.status,
            why=res.witnesses)
    return hwtypes.verdict(witnesses, detail='infinite global dimension')


def check_round_trip():
    """ Every built-in algebra survives emitting and parsing. """
    witnesses = []
    for name in sorted(BUILTINS):
        alg = load_algebra(name)
        back = hwformat.parse_algebra(hwformat.emit_algebra(alg))
        same = [alg.path_str(idx) for idx in range(alg.dimension)] == \
            [back.path_str(idx) for idx in range(back.dimension)]
        _expect(witnesses, same, '{name} changed in the round trip',
                name=name)
    return hwtypes.verdict(witnesses, detail='algebra files')


CHECKS = [
    Check('kalck-sequence', check_kalck_sequence),
    Check('kalck-homs', check_kalck_homs),
    Check('kalck-mutations', check_kalck_mutations),
    Check('kalck-resolutions', check_kalck_resolutions),
    Check('kalck-aisle', check_kalck_aisle),
    Check('kalck-tau', check_kalck_tau),
    Check('kalck-restriction', check_kalck_restriction),
    Check('kalck-criterion', check_kalck_criterion),
    Check('directed-duals', check_directed_duals),
    Check('directed-bijection', check_directed_bijection),
    Check('criterion', check_criterion),
    Check('heart', check_heart),
    Check('universal-extensions', check_universal_extensions),
    Check('char-tilting', check_char_tilting),
    Check('ringel-dual', check_ringel_dual),
    Check('serre', check_serre),
    Check('negative-control', check_negative_control),
    Check('round-trip', check_round_trip),
]


def _run(check):
    """ Run a single check; engine errors become failed or undecided
    entries. """
    try:
        res = check.func()
    except (hwcatch.Undecided, hwcatch.TruncationTooShallow,
            hwcatch.NonTerminating) as err:
        return hwtypes.CorpusEntry(name=check.name,
                                   status=hwtypes.UNDECIDED, detail=str(err))
    except hwcatch.HWError as err:
        return hwtypes.CorpusEntry(name=check.name, status=hwtypes.FAIL,
                                   detail=str(err))
    detail = res.detail or ''
    if res.witnesses:
        detail = '{detail}: {why}'.format(detail=detail,
                                          why='; '.join(res.witnesses))
    return hwtypes.CorpusEntry(name=check.name, status=res.status,
                               detail=detail)


def run_corpus(quick=False, oracle_pairs=ORACLE_PAIRS, seed=ORACLE_SEED):
    """ Run the regression suite; the oracle is skipped in quick mode. """
    checks = list(CHECKS)
    if not quick:
        checks.append(Check('oracle', lambda: oracle_check(oracle_pairs,
                                                           seed)))
    entries = []
    for check in checks:
        entry = _run(check)
        LOG.info('%s: %s', entry.name, entry.status)
        entries.append(entry)
    return entries
