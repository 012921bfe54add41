import argparse
import json
import logging
import sys

from . import ConfigException, configure_logging, load_config
from .exact import (SequenceKind, fib_poly, format_groups, gen_lucas_term,
                    lucas_poly, lucas_triangle_row, pascal_row)
from .models import IdentityException
from .numerics import PrecisionException
from .registry import composite_prefix, get_family, list_identities
from .render import (FORMATS, persist_report, persist_summary, render_catalog,
                     render_report, render_reports, render_rows, render_table)
from .utils import (EXIT_FAILURE, EXIT_OK, EXIT_USAGE, CommandException,
                    parse_int_list, parse_range)
from .verifier import convergence_table, scan, verify, verify_all


logger = logging.getLogger(__name__)

PARAM_FLAGS = ('x', 'n', 'm')
DUMP_KINDS = ('pascal', 'lucas_triangle', 'fib_poly', 'lucas_poly',
              'sequence', 'composite')


class CliConfig(object):
    """ Run options: command line flags over the yaml configuration. """

    def __init__(self, args, config):
        def pick(name, key=None):
            value = getattr(args, name, None)
            return config[key or name] if value is None else value

        self.digits = int(pick('digits'))
        self.guard = int(config['guard'])
        self.format = pick('format')
        self.output_dir = pick('output_dir')
        self.threshold = pick('threshold')
        self.jobs = int(pick('jobs'))
        self.config_terms = int(config['terms'])
        self.brothers_terms = int(config['brothers_terms'])
        self.terms_text = getattr(args, 'terms', None)
        self.action = args.action
        self.validate()

    def validate(self):
        if self.digits < 10:
            raise CommandException("--digits must be >= 10, got {}"
                                   .format(self.digits))
        if self.config_terms < 4:
            raise CommandException("terms must be >= 4, got {}"
                                   .format(self.config_terms))
        if self.jobs < 1:
            raise CommandException("--jobs must be >= 1, got {}"
                                   .format(self.jobs))
        if self.format not in FORMATS:
            raise CommandException("Unknown format {!r}".format(self.format))
        terms = None if self.action == 'table' else self.terms
        if terms is not None and terms < 4:
            raise CommandException("--terms must be >= 4, got {}"
                                   .format(terms))

    @property
    def terms(self):
        """ Explicit --terms as an integer, or None. """
        if self.terms_text is None:
            return None
        try:
            return int(self.terms_text)
        except ValueError:
            raise CommandException("--terms expects an integer here, got {!r}"
                                   .format(self.terms_text))

    def verify_options(self):
        return dict(digits=self.digits, K=self.terms,
                    threshold=self.threshold, guard=self.guard,
                    fallback_terms=self.config_terms,
                    limit_terms=self.brothers_terms)


def _int_param(args, name):
    text = getattr(args, name, None)
    if text is None:
        return None
    try:
        return int(text)
    except ValueError:
        raise CommandException("--{} expects an integer, got {!r}"
                               .format(name, text))


def _params(args):
    return {name: _int_param(args, name) for name in PARAM_FLAGS
            if getattr(args, name, None) is not None}


def _emit(text):
    sys.stdout.write(text)


# Commands
# =============================================================================
def cmd_list(args, cfg):
    _emit(render_catalog(list_identities(), cfg.format))
    return EXIT_OK


def cmd_verify(args, cfg):
    if args.all:
        if args.id:
            raise CommandException("Give an identity or --all, not both")
        result = verify_all(jobs=cfg.jobs, **cfg.verify_options())
        fmt = 'markdown' if cfg.format == 'text' else cfg.format
        _emit(render_reports(result.reports, fmt, result.summary))
        if cfg.output_dir:
            for report in result.reports:
                persist_report(report, cfg.output_dir, cfg.format)
            persist_summary(result.reports, cfg.output_dir, result.summary)
        ok = result.summary['succeeded'] == result.summary['total']
        return EXIT_OK if ok else EXIT_FAILURE

    if not args.id:
        raise CommandException("verify needs an identity id or --all")
    report = verify(args.id, _params(args), **cfg.verify_options())
    _emit(render_report(report, cfg.format))
    if cfg.output_dir:
        persist_report(report, cfg.output_dir, cfg.format)
    return EXIT_OK if report.succeeded else EXIT_FAILURE


def cmd_scan(args, cfg):
    family = get_family(args.family)
    if family.scan_param is None:
        raise CommandException("{} has no scan parameter".format(args.family))
    start = stop = None
    fixed = {}
    for name in PARAM_FLAGS:
        text = getattr(args, name, None)
        if text is None:
            continue
        if name == family.scan_param:
            start, stop = parse_range(text)
        else:
            fixed[name] = _int_param(args, name)
    result = scan(args.family, start, stop, params=fixed, jobs=cfg.jobs,
                  **cfg.verify_options())
    _emit(render_reports(result.reports, cfg.format, result.summary))
    if cfg.output_dir:
        for report in result.reports:
            persist_report(report, cfg.output_dir, cfg.format)
    ok = result.summary['succeeded'] == result.summary['total']
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_table(args, cfg):
    if cfg.terms_text is None:
        raise CommandException("table needs --terms K1,K2,...")
    depths = parse_int_list(cfg.terms_text)
    table = convergence_table(args.id, _params(args), cfg.digits, depths,
                              cfg.guard)
    _emit(render_table(table, cfg.format))
    return EXIT_OK


def _dump_rows(kind, args):
    if kind in ('pascal', 'lucas_triangle'):
        rows = args.rows if args.rows is not None else 8
        if rows < 0:
            raise CommandException("--rows must be >= 0")
        if kind == 'pascal':
            return [(n, pascal_row(n)) for n in range(rows + 1)]
        return [(n, lucas_triangle_row(n)) for n in range(1, rows + 1)]
    if kind in ('fib_poly', 'lucas_poly'):
        start, stop = parse_range(args.k if args.k is not None else '1..8')
        if start < 0:
            raise CommandException("--k must be >= 0")
        make = fib_poly if kind == 'fib_poly' else lucas_poly
        return [(k, make(k).to_text()) for k in range(start, stop + 1)]
    raise CommandException("Unknown dump kind {!r}".format(kind))


def cmd_dump(args, cfg):
    kind = args.kind
    if kind == 'sequence':
        x = _int_param(args, 'x')
        x = 1 if x is None else x
        start = -6 if args.start is None else args.start
        stop = 6 if args.stop is None else args.stop
        if stop < start:
            raise CommandException("Empty range {}..{}".format(start, stop))
        rows = [[k, gen_lucas_term(x, k, SequenceKind.numerator),
                 gen_lucas_term(x, k, SequenceKind.denominator)]
                for k in range(start, stop + 1)]
        if cfg.format == 'text':
            _emit('numerator:   {}\ndenominator: {}\n'.format(
                ' '.join(str(r[1]) for r in rows),
                ' '.join(str(r[2]) for r in rows)))
        else:
            _emit(render_rows(('k', 'numerator', 'denominator'), rows,
                              cfg.format))
        return EXIT_OK

    if kind == 'composite':
        text = format_groups(composite_prefix(cfg.terms or 5))
        if cfg.format == 'json':
            _emit(json.dumps({'series': text}) + '\n')
        else:
            _emit(text + '\n')
        return EXIT_OK

    rows = _dump_rows(kind, args)
    if cfg.format == 'text':
        if kind in ('fib_poly', 'lucas_poly') and len(rows) == 1:
            _emit(rows[0][1] + '\n')
        elif kind in ('fib_poly', 'lucas_poly'):
            _emit(''.join('{}: {}\n'.format(k, v) for k, v in rows))
        else:
            _emit(''.join('{}: {}\n'.format(n, ' '.join(map(str, row)))
                          for n, row in rows))
    elif cfg.format == 'json':
        _emit(json.dumps([{'index': n, 'value': row} for n, row in rows],
                         indent=2) + '\n')
    else:
        values = [[n, ' '.join(map(str, row)) if isinstance(row, list)
                   else row] for n, row in rows]
        _emit(render_rows(('index', 'value'), values, cfg.format))
    return EXIT_OK


COMMANDS = {'list': cmd_list, 'verify': cmd_verify, 'scan': cmd_scan,
            'dump': cmd_dump, 'table': cmd_table}


# Parser
# =============================================================================
def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-l', '--log-level',
                        choices=['DEBUG', 'INFO', 'WARN', 'ERROR'],
                        default=argparse.SUPPRESS)
    common.add_argument('--config', default=argparse.SUPPRESS,
                        help='yaml file laid over the packaged defaults')
    common.add_argument('--digits', type=int, default=argparse.SUPPRESS)
    common.add_argument('--terms', default=argparse.SUPPRESS,
                        help='truncation depth K (table: K1,K2,...)')
    common.add_argument('--threshold', type=int, default=argparse.SUPPRESS)
    common.add_argument('--format', choices=FORMATS,
                        default=argparse.SUPPRESS)
    common.add_argument('--output-dir', dest='output_dir',
                        default=argparse.SUPPRESS)
    common.add_argument('--jobs', type=int, default=argparse.SUPPRESS)
    for name in PARAM_FLAGS:
        common.add_argument('--' + name, default=argparse.SUPPRESS,
                            help='identity parameter {} (scan: a..b)'
                                 .format(name))

    parser = argparse.ArgumentParser(
        prog='pascalpi', parents=[common],
        description='Verify e and pi identities built from Pascal and Lucas '
                    'triangles.')
    subparsers = parser.add_subparsers(title='main subcommands', dest='action')
    subparsers.required = True

    subparsers.add_parser('list', parents=[common],
                          help='lists every identity in the catalog')
    verify_parser = subparsers.add_parser(
        'verify', parents=[common],
        help='verifies one identity, or the whole catalog with --all')
    verify_parser.add_argument('id', nargs='?')
    verify_parser.add_argument('--all', action='store_true', default=False)

    scan_parser = subparsers.add_parser(
        'scan', parents=[common],
        help='verifies a parameterized family over a range, e.g. --m 0..8')
    scan_parser.add_argument('family')

    table_parser = subparsers.add_parser(
        'table', parents=[common],
        help='convergence table over a list of depths')
    table_parser.add_argument('id')

    dump_parser = subparsers.add_parser(
        'dump', parents=[common],
        help='prints triangles, polynomials and sequences')
    dump_parser.add_argument('kind', choices=DUMP_KINDS)
    dump_parser.add_argument('--rows', type=int)
    dump_parser.add_argument('--k', help='index or a..b range')
    dump_parser.add_argument('--from', dest='start', type=int)
    dump_parser.add_argument('--to', dest='stop', type=int)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(getattr(args, 'config', None))
    except ConfigException as e:
        configure_logging()
        logger.error(str(e))
        return EXIT_USAGE
    configure_logging(getattr(args, 'log_level', None) or config['log_level'],
                      config.get('log_file'))

    try:
        cfg = CliConfig(args, config)
        return COMMANDS[args.action](args, cfg)
    except (CommandException, IdentityException) as e:
        logger.error(str(e))
        return getattr(e, 'code', EXIT_USAGE)
    except PrecisionException as e:
        logger.error("Invalid precision settings: {}".format(e))
        return EXIT_USAGE
    except Exception:
        logger.error("Unhandled exception in {}".format(args.action),
                     exc_info=True)
        return EXIT_FAILURE


def entry():
    sys.exit(main())
