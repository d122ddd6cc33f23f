"""Command line driver: run a scenario, check a property, list kinds."""

import argparse
import sys
from portsim.sim.calc import (
        archive_run,
        check,
        init_communicator,
        read_input,
        run,
        run_all
        )
from portsim.sim.scenario import read_scenario
from portsim.streams.text import format_trace
from portsim.systems.utils import list_kinds
from portsim.utils.errors import ParseError, PortsimError


def parse_args(args):
    """Parse command-line arguments.

    Parameters
    ----------
    args : list of strings
        command-line arguments.

    Returns
    -------
    options : :class:`argparse.Namespace`
        Command line arguments.
    """
    parser = argparse.ArgumentParser(prog='portsim', description=__doc__)
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    prun = sub.add_parser('run', help='Execute a scenario.')
    prun.add_argument('scenario', help='Scenario file.')
    prun.add_argument('-t', '--trace', dest='trace', default=None,
                      help='Write the trace here instead of stdout.')
    prun.add_argument('-a', '--archive', dest='archive', default=None,
                      help='Also archive the run to this HDF5 file.')

    pcheck = sub.add_parser('check', help='Check a property of a scenario.')
    pcheck.add_argument('scenario', help='Scenario file.')
    pcheck.add_argument('-p', '--property', dest='prop', required=True,
                        help='reactivity, weak_pulse, strong_pulse, '
                        'medium_laws or stability(k).')
    pcheck.add_argument('-s', '--samples', type=int, dest='samples',
                        default=None, help='Number of samples.')
    pcheck.add_argument('-b', '--budget', type=int, dest='budget',
                        default=None, help='Probe budget.')

    for p in (prun, pcheck):
        p.add_argument('-o', '--options', dest='options', default=None,
                       help='JSON file of input options.')
        p.add_argument('-v', '--verbose', dest='verbose', action='count',
                       default=0, help='Increase output verbosity.')

    sub.add_parser('list-kinds', help='List the builtin automaton kinds.')

    return parser.parse_args(args)


def write_text(text, filename=None):
    if filename is None:
        sys.stdout.write(text)
    else:
        with open(filename, 'w') as out:
            out.write(text)


def main(args):
    """Run the command line driver.

    Parameters
    ----------
    args : list of strings
        command-line arguments.

    Returns
    -------
    status : int
        0 if the run succeeded or the property holds, 1 if the property is
        violated or the run fails, 2 for unusable input.
    """
    options = parse_args(args)
    if options.command == 'list-kinds':
        for kind, description in list_kinds():
            print("{:<14} {}".format(kind, description))
        return 0
    comm = init_communicator()
    try:
        sc = read_scenario(options.scenario)
        inputs = {}
        if options.options is not None:
            inputs = read_input(options.options, comm,
                                verbose=options.verbose)
        if options.command == 'run' and sc.policy.startswith('all'):
            if options.archive is not None:
                raise ValueError("cannot archive an {} run".format(sc.policy))
            traces = run_all(sc, inputs, comm=comm, verbose=options.verbose)
            if comm.rank != 0:
                return 0
            text = ''.join("# behaviour {}\n{}".format(k, format_trace(t))
                           for k, t in enumerate(traces, start=1))
            write_text(text, options.trace)
            return 0
        if options.command == 'run':
            trace = run(sc, inputs, comm=comm, verbose=options.verbose)
            if comm.rank != 0:
                return 0
            write_text(format_trace(trace), options.trace)
            if options.archive is not None:
                archive_run(options.archive, sc, trace, inputs)
            return 0
        if options.samples is not None:
            inputs['samples'] = options.samples
        if options.budget is not None:
            inputs['budget'] = options.budget
        report = check(sc, options.prop, inputs, comm=comm,
                       verbose=options.verbose)
    except ParseError as err:
        print("# {}: {}".format(options.scenario, err), file=sys.stderr)
        return 2
    except (OSError, ValueError) as err:
        print("# Error: {}".format(err), file=sys.stderr)
        return 2
    except PortsimError as err:
        print("# {}: {}".format(type(err).__name__, err), file=sys.stderr)
        return 1
    if comm.rank == 0:
        print(report.summary())
        if not report.passed and report.witness is not None:
            print("# Witness: {}".format(report.witness))
    return 0 if report.passed else 1


if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
