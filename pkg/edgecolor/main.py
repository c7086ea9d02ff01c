#!/usr/bin/env python3

from __future__ import annotations

import sys
import yaml
import argparse
import edgecolor

from pathlib import Path
from edgecolor.constants import VERSION


class FullHelpParser(argparse.ArgumentParser):
    '''
    Custom ArgumentParser class to show more helpful help messages per default.
    Taken from: https://stackoverflow.com/a/4042861
    '''
    def error(self, message):
        '''
        Show the whole help menu per default.
        '''
        sys.stderr.write(f'error: {message}\n\n')
        self.print_help()
        sys.exit(edgecolor.constants.INPUT_ERROR)


common = argparse.ArgumentParser(add_help=False)
common.add_argument('--debug', dest='debug', action='store_true', help='enable debug output')
common.add_argument('--logfile', dest='log', metavar='file', type=argparse.FileType('w'), help='mirror output into a logfile')
common.add_argument('--oracle-limit', dest='oracle_limit', metavar='n', type=int, default=edgecolor.constants.DEFAULT_ORACLE_EDGES,
                    help='maximum number of edges for the exact oracle')
common.add_argument('-q', '--quiet', dest='quiet', action='store_true', help='only print errors')
common.add_argument('-v', '--verbose', dest='verbose', action='store_true', help='print every reduction step')

parser = FullHelpParser(description=f'''edgecolor v{VERSION} - colors the edges of multigraphs with at most
                                        phi + log_(3/2)(min{{(n+1)/3, phi}}) colors by a shrink / split / matching
                                        removal reduction and checks the result against an exact oracle.''',
                                        formatter_class=lambda prog: argparse.HelpFormatter(prog, max_help_position=60))

subparsers = parser.add_subparsers(dest='command', metavar='command')
subparsers.required = True

color_parser = subparsers.add_parser('color', parents=[common], help='color a multigraph')
color_parser.add_argument('file', metavar='file', help='multigraph file')
color_parser.add_argument('--certify', dest='certify', action='store_true', help='check the coloring against the bound')
color_parser.add_argument('--fallback', dest='fallback', action='store_true', help='turn internal state violations into fallback leaves')
color_parser.add_argument('-o', '--output', dest='output', metavar='file', help='write the coloring to a file')
color_parser.add_argument('--repro', dest='repro', metavar='file', default=edgecolor.constants.REPRO_FILE,
                          help='repro bundle location on internal state violations')
color_parser.add_argument('--trace', dest='trace', metavar='file', help='write the decomposition trace to a file')

oracle_parser = subparsers.add_parser('oracle', parents=[common], help='compute the chromatic index exactly')
oracle_parser.add_argument('file', metavar='file', help='multigraph file')
oracle_parser.add_argument('-o', '--output', dest='output', metavar='file', help='write the coloring to a file')

verify_parser = subparsers.add_parser('verify', parents=[common], help='check a coloring')
verify_parser.add_argument('graph', metavar='graph', help='multigraph file')
verify_parser.add_argument('coloring', metavar='coloring', help='coloring file')

gen_parser = subparsers.add_parser('gen', parents=[common], help='generate a multigraph')
gen_parser.add_argument('family', metavar='family', nargs='?', help='name of the family')
gen_parser.add_argument('params', metavar='param', nargs='*', help='family parameters')
gen_parser.add_argument('--list', dest='list', action='store_true', help='list the available families')
gen_parser.add_argument('-o', '--output', dest='output', metavar='file', help='write the multigraph to a file')
gen_parser.add_argument('--seed', dest='seed', metavar='n', type=int, default=edgecolor.constants.DEFAULT_SEED, help='random seed')

corpus_parser = subparsers.add_parser('corpus', parents=[common], help='run a corpus specification')
corpus_parser.add_argument('spec', metavar='spec', help='corpus specification (.yml file)')
corpus_parser.add_argument('--jobs', dest='jobs', metavar='n', type=int, help='number of worker processes')
corpus_parser.add_argument('-o', '--output', dest='output', metavar='file', help='write the CSV table to a file')


def raise_if_debug(args: argparse.Namespace, e: Exception) -> None:
    '''
    Checks whether the debug option is set and if so raises the specified Exception.

    Paramaters:
        args            argparse namespace
        e               Exception to raise if debug is enabled

    Returns:
        None
    '''
    if args.debug:
        raise e from None


def initialize_logger(args: argparse.Namespace) -> None:
    '''
    Sets the verbosity level and log file according to the specified options.

    Parameters:
        args        Namespace parsed by argparse

    Returns:
        None
    '''
    if args.verbose:
        edgecolor.Logger.set_verbosity(2)

    if args.quiet:
        edgecolor.Logger.set_verbosity(0)

    if args.debug:
        edgecolor.Logger.set_verbosity(3)

    if args.log:
        edgecolor.Logger.add_logfile(args.log)


def write_output(text: str, path: str | None) -> None:
    '''
    Writes text to the specified file or to stdout.
    '''
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()

    else:
        Path(path).write_text(text)


def print_certificate(certificate: edgecolor.BoundCertificate) -> None:
    '''
    Prints the bound comparison of a coloring.
    '''
    edgecolor.Logger.print_mixed_blue('Bound:', f'{certificate.colors_used} <= {certificate.bound}',
                                      f'(phi = {certificate.phi}, real bound {certificate.bound_value:.4f})')
    edgecolor.Logger.increase_indent()

    for name, value in certificate.reference.items():
        edgecolor.Logger.print_mixed_blue(f'{name}:', str(value))

    edgecolor.Logger.decrease_indent()


def color(args: argparse.Namespace, settings: edgecolor.Settings) -> int:
    '''
    Handles the 'color' command.
    '''
    g = edgecolor.read_multigraph(args.file)
    result = edgecolor.color_multigraph(g, settings)
    coloring = result.coloring

    write_output(edgecolor.emit_coloring(coloring), args.output)
    edgecolor.Logger.print_mixed_yellow('Colored', str(g), f'with {coloring.colors_used} colors.')

    code = edgecolor.constants.SUCCESS

    if result.tree is not None:
        report = edgecolor.verify_tree(result.tree)
        edgecolor.Logger.print_mixed_blue('Decomposition:', f'{len(result.tree.nodes)} nodes,', f'{len(report.leaves)} leaves.')

        if report.continuation:
            edgecolor.Logger.print_mixed_blue('Continuation nodes:', ', '.join(map(str, report.continuation)))

        if report.peeled:
            edgecolor.Logger.print_mixed_blue('Peeled leaves:', ', '.join(map(str, report.peeled)))

        if args.trace:
            Path(args.trace).write_text(edgecolor.emit_trace(result.tree))

        for failure in report.failures:
            edgecolor.Logger.print_mixed_red('Leaf check failed:', failure, e=True)
            code = edgecolor.constants.BOUND_FAILURE

        if report.fallback:
            edgecolor.Logger.print_mixed_yellow('Fallback leaves:', ', '.join(map(str, report.fallback)), e=True)
            code = max(code, edgecolor.constants.INTERNAL_STATE)

    elif args.trace:
        edgecolor.Logger.print_warning(f'{g} is colored directly, no trace was written.')

    certificate = edgecolor.certify(g, coloring)

    if args.certify:
        print_certificate(certificate)

        if not certificate.satisfied:
            edgecolor.Logger.print_mixed_red('Coloring exceeds the bound', str(certificate.bound), e=True)
            code = max(code, edgecolor.constants.BOUND_FAILURE)

    return code


def oracle(args: argparse.Namespace, settings: edgecolor.Settings) -> int:
    '''
    Handles the 'oracle' command.
    '''
    g = edgecolor.read_multigraph(args.file)
    index, coloring = edgecolor.exact_chromatic_index(g, settings.oracle_edges)

    write_output(edgecolor.emit_coloring(coloring), args.output)
    edgecolor.Logger.print_mixed_yellow('Chromatic index of', str(g), f'is {index}.')

    return edgecolor.constants.SUCCESS


def verify(args: argparse.Namespace, settings: edgecolor.Settings) -> int:
    '''
    Handles the 'verify' command.
    '''
    g = edgecolor.read_multigraph(args.graph)
    coloring = edgecolor.read_coloring(args.coloring)

    try:
        edgecolor.check_proper(g, coloring)

    except edgecolor.ColoringError as e:
        edgecolor.Logger.print_mixed_red('Coloring is', 'not proper:', str(e), e=True)
        return edgecolor.constants.BOUND_FAILURE

    certificate = edgecolor.certify(g, coloring)
    edgecolor.Logger.print_mixed_yellow('Coloring is', 'proper', f'and uses {coloring.colors_used} colors.')
    print_certificate(certificate)

    if not certificate.satisfied:
        edgecolor.Logger.print_mixed_red('Coloring exceeds the bound', str(certificate.bound), e=True)
        return edgecolor.constants.BOUND_FAILURE

    return edgecolor.constants.SUCCESS


def gen(args: argparse.Namespace, settings: edgecolor.Settings) -> int:
    '''
    Handles the 'gen' command.
    '''
    if args.list or args.family is None:

        for name in edgecolor.get_family_list():
            family = edgecolor.generators.families[name]
            params = ' '.join(f'<{param}>' for param in family.parameters)
            edgecolor.Logger.print_mixed_blue(f'{name} {params}'.strip(), '-', family.description, e=True)

        return edgecolor.constants.SUCCESS

    family = edgecolor.get_family(args.family, args.params, args.seed)
    g = family.generate()

    write_output(edgecolor.emit_multigraph(g, f'{family.label()} seed {args.seed}'), args.output)
    edgecolor.Logger.print_mixed_yellow('Generated', family.label(), f'({g}).')

    return edgecolor.constants.SUCCESS


def corpus(args: argparse.Namespace, settings: edgecolor.Settings) -> int:
    '''
    Handles the 'corpus' command.
    '''
    spec = edgecolor.Corpus.from_file(args.spec)
    edgecolor.Logger.print_mixed_yellow('Running corpus', spec.title or args.spec, f'({len(spec.instances)} instances).')

    rows = edgecolor.run_corpus(spec, settings, args.jobs)

    if args.output is None:
        edgecolor.write_csv(rows, sys.stdout)

    else:
        with open(args.output, 'w', newline='') as f:
            edgecolor.write_csv(rows, f)

    failed = [row for row in rows if row.status == 'fail']
    internal = [row for row in rows if row.status in ('violation', 'fallback')]

    edgecolor.Logger.print_mixed_blue('Corpus finished:', f'{len(rows) - len(failed) - len(internal)} passed,',
                                      f'{len(failed)} failed, {len(internal)} internal state violations.')

    if failed:
        return edgecolor.constants.BOUND_FAILURE

    if internal:
        return edgecolor.constants.INTERNAL_STATE

    return edgecolor.constants.SUCCESS


commands = {'color': color, 'oracle': oracle, 'verify': verify, 'gen': gen, 'corpus': corpus}


def main():
    '''
    Parses the command line and dispatches to the requested command. Exceptions are
    mapped to the exit codes in edgecolor.constants.

    Parameters:
        None

    Returns:
        None
    '''
    args = parser.parse_args()
    initialize_logger(args)

    settings = edgecolor.Settings(oracle_edges=args.oracle_limit, fallback=getattr(args, 'fallback', False))

    try:
        code = commands[args.command](args, settings)

    except KeyboardInterrupt:
        edgecolor.Logger.reset_indent()
        edgecolor.Logger.print('')
        edgecolor.Logger.print_mixed_yellow('Caught', 'KeyboardInterrupt', 'from user.', e=True)
        sys.exit(edgecolor.constants.KEYBOARD_INTERRUPT)

    except Exception as excpt:

        raise_if_debug(args, excpt)
        try:
            raise excpt

        except edgecolor.InternalStateViolation as e:
            edgecolor.Logger.print_mixed_red('Caught', 'InternalStateViolation', f'in check {e.check}.', e=True)
            edgecolor.Logger.print_with_indent_blue(e.message, e=True)

            if getattr(args, 'repro', None):
                path = edgecolor.write_repro(e, args.repro)
                edgecolor.Logger.print_mixed_yellow('Repro bundle written to', str(path), e=True)

            sys.exit(edgecolor.constants.INTERNAL_STATE)

        except edgecolor.MatchingError as e:
            edgecolor.Logger.print_mixed_red('Caught', 'MatchingError', 'while reducing the multigraph.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INTERNAL_STATE)

        except edgecolor.CompletionError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'CompletionError', 'while completing the multigraph.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INTERNAL_STATE if e.internal else edgecolor.constants.INPUT_ERROR)

        except edgecolor.ColoringError as e:
            edgecolor.Logger.print_mixed_red('Caught', 'ColoringError', 'while coloring the multigraph.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.BOUND_FAILURE)

        except edgecolor.OracleLimitError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'OracleLimitError', 'while coloring the multigraph.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            edgecolor.Logger.print_mixed_blue('The limit can be raised with', '--oracle-limit', e=True)
            sys.exit(edgecolor.constants.INPUT_ERROR)

        except edgecolor.FormatError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'FormatError', 'while parsing the input.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)

            if e.path:
                edgecolor.Logger.print_mixed_yellow('Affected file:', str(e.path), e=True)

            sys.exit(edgecolor.constants.INPUT_ERROR)

        except (edgecolor.GraphError, edgecolor.InvariantError, edgecolor.EnumerationLimitError) as e:
            edgecolor.Logger.print_mixed_yellow('Caught', type(e).__name__, 'while processing the multigraph.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INPUT_ERROR)

        except edgecolor.FamilyError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'FamilyError', 'while generating the multigraph.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INPUT_ERROR)

        except edgecolor.CorpusKeyError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'CorpusKeyError', 'while parsing the corpus specification.', e=True)
            edgecolor.Logger.print_blue(str(e), e=True)

            if e.path:
                edgecolor.Logger.print_mixed_yellow('Configuration file:', e.path, e=True)

            sys.exit(edgecolor.constants.INPUT_ERROR)

        except edgecolor.utils.EdgecolorEnvVariableError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'EdgecolorEnvVariableError', 'while reading the environment.', e=True)
            edgecolor.Logger.print_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INPUT_ERROR)

        except (yaml.parser.ParserError, yaml.scanner.ScannerError) as e:
            edgecolor.Logger.print_mixed_yellow('Caught', type(e).__name__, 'while parsing the corpus specification.', e=True)
            edgecolor.Logger.print('Seems that there is a syntax error within your corpus specification.', e=True)
            edgecolor.Logger.increase_indent()
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INPUT_ERROR)

        except FileNotFoundError as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'FileNotFoundError', 'while reading the input.', e=True)
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INPUT_ERROR)

        except Exception as e:
            edgecolor.Logger.print_mixed_yellow('Caught', 'unexpected Exception', 'while running edgecolor.', e=True)
            edgecolor.Logger.increase_indent()
            edgecolor.Logger.print_with_indent_blue(str(e), e=True)
            sys.exit(edgecolor.constants.INTERNAL_STATE)

    finally:
        edgecolor.Logger.reset_indent()
        edgecolor.Logger.remove_logfile(args.log)

    sys.exit(code)
