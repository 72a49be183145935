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
""" The hwcert command-line tool. """

from __future__ import print_function

import argparse
import collections
import logging
import sys

import six
import six.moves

from . import hwcatch
from . import hwconfig
from . import hwcorpus
from . import hwderived
from . import hwexcseq
from . import hwformat
from . import hwhomology
from . import hwjson
from . import hwtypes
from . import hwweight


LOG = logging.getLogger(__name__)

EXIT_USAGE = 64

UNDECIDED_ERRORS = (
    hwcatch.Undecided,
    hwcatch.TruncationTooShallow,
    hwcatch.NonTerminating,
)

Context = collections.namedtuple('Context', [
    'args',
    'config',
    'algebra',
    'depth',
    'tries',
    'seed',
    'workers',
])

Outcome = collections.namedtuple('Outcome', [
    'status',
    'result',
    'witnesses',
])


class UsageError(Exception):
    """ The command line is syntactically fine but makes no sense. """


def err_exit(name, descr, code=EXIT_USAGE, **args):
    """ Output an error in JSON form to the standard error stream and
    exit. """
    err = {
        'error': {
            'name': name,
            'descr': descr,
        },
    }
    err['error'].update(args)
    print(hwjson.dumps(err), file=sys.stderr)
    sys.exit(code)


def build_parser():
    """ The argument parser: one subcommand per operation, the common
    options accepted after any of them. """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-a', '--algebra', type=str,
                        help='A built-in algebra name or an algebra file')
    common.add_argument('-s', '--sequence', type=str,
                        help='A sequence file or a comma-separated list of '
                        'object descriptors')
    common.add_argument('-j', '--json', action='store_true',
                        help='Output the report in JSON form')
    common.add_argument('--field', type=str,
                        help='The base field: q or fp:<p>')
    common.add_argument('--bound', type=int,
                        help='The path length bound for the relation '
                        'completion')
    common.add_argument('--config-section', type=str,
                        help='The hwcert.conf section to use')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='Log the computations to the standard error '
                        'stream')

    parser = argparse.ArgumentParser(
        prog='hwcert',
        description='Certify highest weight structures on module categories '
        'of finite dimensional algebras',
    )
    subs = parser.add_subparsers(dest='command', metavar='command')
    subs.required = True

    def add(name, helptext, objects=0):
        sub = subs.add_parser(name, parents=[common], help=helptext)
        for idx in range(objects):
            sub.add_argument('object{idx}'.format(idx=idx + 1), type=str,
                             help='An object descriptor, e.g. s3, p1[1]')
        return sub

    add('hom', 'The graded Hom space between two objects', 2)
    add('ext', 'An Ext group between two modules', 2).add_argument(
        '-d', '--degree', type=int, default=1, help='The Ext degree')
    add('resolve', 'The minimal projective resolution of a module',
        1).add_argument('--max-len', type=int,
                        help='The largest resolution length to compute')
    add('gldim', 'Probe the global dimension of the algebra')
    add('exc-check', 'Check an exceptional sequence')
    mutate = add('mutate', 'Mutate an exceptional pair (E, F): L_E F or '
                 'R_F E')
    mutate.add_argument('kind', choices=[hwexcseq.LEFT, hwexcseq.RIGHT],
                        help='The direction of the mutation')
    mutate.add_argument('object1', type=str, help='The first object E')
    mutate.add_argument('object2', type=str, help='The second object F')
    for name, helptext in (
            ('dualize', 'The dual exceptional sequence'),
            ('hom-duality', 'Verify the Hom duality of a dual pair')):
        add(name, helptext).add_argument(
            '-r', '--right', action='store_true',
            help='Use the right dual instead of the left one')
    add('aisle', 'Test an object against the glued t-structure', 1)
    add('restrict-check', 'Check the restriction hypotheses of a dual pair')
    add('hw-criterion', 'Check the highest weight criterion')
    add('heart', 'Present the glued heart as a module category')
    for name, helptext in (
            ('axioms', 'Verify the highest weight axioms'),
            ('char-tilting', 'Build the characteristic tilting module'),
            ('ringel-dual', 'Compute the Ringel dual')):
        add(name, helptext).add_argument(
            '-o', '--order', type=str,
            help='A comma-separated total order of the vertices, used '
            'instead of a sequence')
    add('bijection', 'Round-trip a dual pair through its highest weight '
        'structure')
    corpus = add('corpus', 'Run the regression suite')
    corpus.add_argument('--oracle-pairs', type=int,
                        help='The number of random module pairs to compare')
    corpus.add_argument('-q', '--quick', action='store_true',
                        help='Skip the randomized oracle')
    return parser


def parse_args(argv=None):
    """ Parse the command-line arguments, keeping the parser from writing
    to the standard error stream, since all errors are reported in JSON
    form. """
    parser = build_parser()
    errbuf = six.moves.StringIO()
    orig_stderr = sys.stderr
    sys.stderr = errbuf
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex_err:
        sys.stderr = orig_stderr
        if ex_err.code == 0:
            sys.exit(0)
        err_exit('cliParseArgs',
                 'Could not parse the command-line arguments',
                 parser_errors=errbuf.getvalue())
    except BaseException as err:  # pylint: disable=broad-except
        sys.stderr = orig_stderr
        err_exit('cliParseArgs', str(err),
                 parser_errors=errbuf.getvalue())

    sys.stderr = orig_stderr
    return args


def get_context(args, cfg=None):
    """ Merge the configuration settings and the command-line options and
    load the algebra if one is needed. """
    if cfg is None:
        cfg = hwconfig.HWConfig(section=args.config_section)
    field = args.field if args.field is not None else cfg['HW_FIELD']
    try:
        hwtypes.fieldSpec.handleVal(field)
    except hwcatch.HWError as err:
        raise UsageError(str(err))
    bound = args.bound if args.bound is not None else \
        cfg.get_int('HW_LENGTH_BOUND')
    alg = None
    if args.command != 'corpus':
        if args.algebra is None:
            raise UsageError('The {cmd} command needs --algebra'.format(
                cmd=args.command))
        alg = hwcorpus.load_algebra(args.algebra, field, bound)
    return Context(args=args, config=cfg, algebra=alg,
                   depth=cfg.get_int('HW_RESOLUTION_BOUND'),
                   tries=cfg.get_int('HW_ISO_TRIES'),
                   seed=cfg.get_int('HW_SEED'),
                   workers=cfg.get_int('HW_WORKERS'))


def _object(ctx, text):
    return hwformat.parse_descriptor(ctx.algebra, text, ctx.depth)


def _sequence(ctx):
    if ctx.args.sequence is None:
        raise UsageError('The {cmd} command needs --sequence'.format(
            cmd=ctx.args.command))
    objs, names = hwformat.parse_sequence(ctx.algebra, ctx.args.sequence,
                                          ctx.depth)
    return hwexcseq.ExceptionalSequence(objs, names, workers=ctx.workers)


def _module(ctx, text):
    obj, name = _object(ctx, text)
    mod = hwexcseq.module_of(obj)
    if mod is None:
        raise UsageError('{name} is not a module'.format(name=name))
    return mod, name


def _pair(ctx, right=False):
    seq = _sequence(ctx)
    if right:
        return hwexcseq.right_dual_sequence(seq)
    return hwexcseq.left_dual_sequence(seq)


def _from_verdict(verdict, result):
    return Outcome(verdict.status, result,
                   verdict.witnesses if verdict.status == hwtypes.FAIL
                   else [])


def _hw_report(ctx):
    """ The glued heart of the sequence, or the structure defined by a
    vertex order. """
    order = getattr(ctx.args, 'order', None)
    if order is not None:
        if ctx.args.sequence is not None:
            raise UsageError('Specify either --order or --sequence')
        return hwweight.structure_report(
            ctx.algebra, [item.strip() for item in order.split(',')])
    return hwweight.heart_presentation(_pair(ctx), ctx.tries, ctx.seed)


def cmd_hom(ctx):
    """ hom X Y """
    src, sname = _object(ctx, ctx.args.object1)
    dst, dname = _object(ctx, ctx.args.object2)
    ghom = hwderived.graded_hom(hwexcseq.as_complex(src, ctx.depth), dst)
    info = hwtypes.GradedHomDims(
        source=sname, target=dname, dims=dict(ghom.dims),
        window=list(ghom.window) if ghom.window is not None else None,
        complete=ghom.complete)
    return Outcome(hwtypes.PASS if ghom.complete else hwtypes.UNDECIDED,
                   info, [])


def cmd_ext(ctx):
    """ ext X Y --degree n """
    src, sname = _module(ctx, ctx.args.object1)
    dst, dname = _module(ctx, ctx.args.object2)
    group = hwhomology.ext(src, dst, ctx.args.degree)
    return Outcome(hwtypes.PASS, {
        'source': sname,
        'target': dname,
        'degree': ctx.args.degree,
        'dimension': group.dimension,
    }, [])


def cmd_resolve(ctx):
    """ resolve X --max-len n """
    mod, name = _module(ctx, ctx.args.object1)
    max_len = ctx.args.max_len if ctx.args.max_len is not None else \
        ctx.depth
    res = hwhomology.minimal_resolution(mod, max_len)
    info = hwtypes.ResolutionInfo(module=name, terms=res.term_labels(),
                                  complete=res.complete, length=res.length)
    return Outcome(hwtypes.PASS if res.complete else hwtypes.UNDECIDED,
                   info, [])


def cmd_gldim(ctx):
    """ gldim """
    probe = hwhomology.global_dimension_probe(
        ctx.algebra, ctx.config.get_int('HW_GLDIM_BOUND'))
    info = hwtypes.GlDimInfo(kind=probe.kind, value=probe.value,
                             witness=probe.witness)
    return Outcome(hwtypes.UNDECIDED if probe.kind == hwhomology.EXCEEDS
                   else hwtypes.PASS, info, [])


def cmd_exc_check(ctx):
    """ exc-check --sequence ... """
    seq = _sequence(ctx)
    verdict = hwexcseq.is_exceptional_sequence(seq)
    full = hwexcseq.fullness_necessary_conditions(seq)
    return _from_verdict(verdict, {
        'sequence': seq.names,
        'table': seq.table(),
        'exceptional': verdict,
        'fullness': full.verdict,
        'determinant': full.determinant,
    })


def cmd_mutate(ctx):
    """ mutate left|right E F """
    first, fname = _object(ctx, ctx.args.object1)
    second, sname = _object(ctx, ctx.args.object2)
    if ctx.args.kind == hwexcseq.LEFT:
        _, info = hwexcseq.mutation_info(hwexcseq.LEFT, first, second,
                                         (fname, sname))
    else:
        _, info = hwexcseq.mutation_info(hwexcseq.RIGHT, second, first,
                                         (sname, fname))
    return Outcome(hwtypes.PASS, info, [])


def _describe(obj, name):
    coh = hwderived.cohomology_modules(obj)
    return {
        'name': name,
        'terms': obj.label(),
        'cohomology': dict((deg, list(mod.dims))
                           for deg, mod in six.iteritems(coh)),
        'identified': dict((deg, hwexcseq.recognize_module(mod))
                           for deg, mod in six.iteritems(coh)),
    }


def cmd_dualize(ctx):
    """ dualize --sequence ... [--right] """
    pair = _pair(ctx, ctx.args.right)
    objs, names = pair.dual_in_order()
    return Outcome(hwtypes.PASS, {
        'kind': pair.kind,
        'sequence': pair.names,
        'dual': [_describe(obj, name) for obj, name in zip(objs, names)],
    }, [])


def cmd_hom_duality(ctx):
    """ hom-duality --sequence ... [--right] """
    table = hwexcseq.verify_hom_duality(_pair(ctx, ctx.args.right))
    return _from_verdict(table.verdict, table)


def cmd_aisle(ctx):
    """ aisle X --sequence ... """
    obj, name = _object(ctx, ctx.args.object1)
    info = hwexcseq.glued_aisle_membership(obj, _pair(ctx), name)
    if info.in_heart is False:
        return Outcome(hwtypes.FAIL, info, list(info.witnesses))
    if info.in_heart and info.conclusive:
        return Outcome(hwtypes.PASS, info, [])
    return Outcome(hwtypes.UNDECIDED, info, [])


def cmd_restrict_check(ctx):
    """ restrict-check --sequence ... """
    info = hwexcseq.restriction_hypotheses(_pair(ctx))
    return _from_verdict(info.strong, info)


def cmd_hw_criterion(ctx):
    """ hw-criterion --sequence ... """
    verdict = hwweight.hw_criterion(_pair(ctx))
    return _from_verdict(verdict, verdict)


def cmd_heart(ctx):
    """ heart --sequence ... """
    report = hwweight.heart_presentation(_pair(ctx), ctx.tries, ctx.seed)
    return Outcome(hwtypes.combine_status(six.itervalues(report.flags)),
                   report.info(), [])


def cmd_axioms(ctx):
    """ axioms --sequence ... | --order ... """
    report = _hw_report(ctx)
    info = hwweight.verify_hw_axioms(report, ctx.tries, ctx.seed,
                                     ctx.workers)
    verdicts = [info.st1, info.st2, info.cost1, info.cost2]
    return Outcome(
        hwtypes.combine_status(res.status for res in verdicts), info,
        [wit for res in verdicts if res.status == hwtypes.FAIL
         for wit in res.witnesses])


def cmd_char_tilting(ctx):
    """ char-tilting --sequence ... | --order ... """
    package = hwweight.characteristic_tilting(_hw_report(ctx), ctx.tries,
                                              ctx.seed, ctx.workers)
    return _from_verdict(package.verdict, package.info())


def cmd_ringel_dual(ctx):
    """ ringel-dual --sequence ... | --order ... """
    ringel = hwweight.ringel_dual(_hw_report(ctx), tries=ctx.tries,
                                  seed=ctx.seed, workers=ctx.workers)
    return _from_verdict(ringel.info.involution, ringel.info)


def cmd_bijection(ctx):
    """ bijection --sequence ... """
    info = hwweight.bijection_check(ctx.algebra, _pair(ctx), ctx.tries,
                                    ctx.seed)
    verdicts = [info.forward, info.backward]
    return Outcome(
        hwtypes.combine_status(res.status for res in verdicts), info,
        [wit for res in verdicts if res.status == hwtypes.FAIL
         for wit in res.witnesses])


def cmd_corpus(ctx):
    """ corpus [--quick] [--oracle-pairs n] """
    pairs = ctx.args.oracle_pairs if ctx.args.oracle_pairs is not None \
        else ctx.config.get_int('HW_ORACLE_PAIRS')
    entries = hwcorpus.run_corpus(quick=ctx.args.quick, oracle_pairs=pairs,
                                  seed=ctx.seed)
    return Outcome(
        hwtypes.combine_status(entry.status for entry in entries),
        {'checks': entries},
        [entry.name for entry in entries if entry.status == hwtypes.FAIL])


COMMANDS = {
    'hom': cmd_hom,
    'ext': cmd_ext,
    'resolve': cmd_resolve,
    'gldim': cmd_gldim,
    'exc-check': cmd_exc_check,
    'mutate': cmd_mutate,
    'dualize': cmd_dualize,
    'hom-duality': cmd_hom_duality,
    'aisle': cmd_aisle,
    'restrict-check': cmd_restrict_check,
    'hw-criterion': cmd_hw_criterion,
    'heart': cmd_heart,
    'axioms': cmd_axioms,
    'char-tilting': cmd_char_tilting,
    'ringel-dual': cmd_ringel_dual,
    'bijection': cmd_bijection,
    'corpus': cmd_corpus,
}


def execute(args, cfg=None):
    """ Run a parsed command and build its report. """
    ctx = get_context(args, cfg)
    LOG.debug('Running %s with %s', args.command, ctx)
    outcome = COMMANDS[args.command](ctx)
    return hwtypes.Report(command=args.command_line, status=outcome.status,
                          result=outcome.result, witnesses=outcome.witnesses)


def run_command(argv, cfg=None):
    """ Parse a command line, run the command and build its report. """
    args = parse_args(argv)
    args.command_line = ' '.join(['hwcert'] + list(argv))
    return execute(args, cfg)


def main(argv=None):
    """ Main function: parse the arguments, run the command, report. """
    if argv is None:
        argv = sys.argv[1:]
    args = parse_args(argv)
    args.command_line = ' '.join(['hwcert'] + list(argv))
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s %(name)s %(levelname)s %(message)s')

    try:
        report = execute(args)
    except UsageError as err:
        err_exit('cliUsage', str(err))
    except hwconfig.HWConfigException as err:
        err_exit('cliConfig', str(err))
    except hwcatch.ParseError as err:
        err_exit(err.name, str(err), line=err.line, column=err.column)
    except UNDECIDED_ERRORS as err:
        err_exit(err.name, str(err),
                 code=hwtypes.EXIT_CODES[hwtypes.UNDECIDED])
    except hwcatch.HWError as err:
        err_exit(err.name, str(err), code=hwtypes.EXIT_CODES[hwtypes.FAIL])

    print(hwformat.emit_report(report, as_json=args.json), end='')
    sys.exit(report.exit_code)


if __name__ == '__main__':
    main()
