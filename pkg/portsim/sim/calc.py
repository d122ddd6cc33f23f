"""Helper routines for running and checking scenarios."""
import json
import numpy
try:
    from mpi4py import MPI
    parallel = True
except ImportError:
    parallel = False
from portsim.automata.checks import (
        check_reactivity,
        check_strong_pulse,
        check_weak_pulse
        )
from portsim.automata.execution import execute, run_policy
from portsim.automata.policy import ChoicePolicy
from portsim.automata.sampling import make_rng
from portsim.sim.builder import build_network
from portsim.sim.comm import FakeComm
from portsim.sim.options import CheckOpts
from portsim.sim.oracles import stabilization_tick
from portsim.streams.text import format_trace
from portsim.sysmodel.laws import (
        check_containment,
        check_medium_laws,
        random_workload
        )
from portsim.utils.errors import NotReactive
from portsim.utils.io import to_json, write_run
from portsim.utils.report import Report, merge_reports

PROPERTIES = ('reactivity', 'weak_pulse', 'strong_pulse', 'medium_laws',
              'stability')


def init_communicator():
    if parallel:
        comm = MPI.COMM_WORLD
    else:
        comm = FakeComm()
    return comm


def read_input(input_file, comm, verbose=False):
    """Read a JSON options file on the root process and broadcast it.

    Parameters
    ----------
    input_file : string
        Input filename.
    comm : MPI communicator
        Communicator object. If mpi4py is not installed this is a
        :class:`portsim.sim.comm.FakeComm`.
    verbose : bool
        If true print out set up information.

    Returns
    -------
    options : dict
        Python dict of input options.
    """
    if comm.rank == 0:
        if verbose:
            print('# Reading options from %s' % input_file)
        with open(input_file) as inp:
            options = json.load(inp)
    else:
        options = None
    options = comm.bcast(options, root=0)
    return options


def set_rng_seed(seed, comm):
    """Seed shared by all processes, drawn on the root if not given."""
    if seed is None:
        if comm.rank == 0:
            seed = numpy.array([numpy.random.randint(0, 1e8)], dtype='i4')
        else:
            seed = numpy.empty(1, dtype='i4')
        comm.Bcast(seed, root=0)
        seed = seed[0]
    return int(seed)


def parse_property(prop, opts):
    """Normalised property name and its argument.

    ``stability(k)`` carries k; plain ``stability`` uses ``opts.stable_from``.
    """
    name = prop.strip().replace('-', '_')
    arg = None
    if name.startswith('stability'):
        rest = name[len('stability'):]
        if rest:
            if not (rest.startswith('(') and rest.endswith(')')):
                raise ValueError("expected stability(k), got {!r}"
                                 .format(prop))
            arg = int(rest[1:-1])
        else:
            arg = int(opts.stable_from)
        name = 'stability'
    if name not in PROPERTIES:
        raise ValueError("unknown property {!r}; expected one of {}".format(
                         prop, ', '.join(PROPERTIES)))
    return name, arg


def run(sc, options=None, comm=None, verbose=0):
    """Assemble and execute a scenario.

    Parameters
    ----------
    sc : :class:`portsim.sim.scenario.Scenario`
        Parsed scenario.
    options : dict
        Options; ``rng_seed`` is used when the scenario sets no seed. The
        seed actually used is stored back as ``options['rng_seed']``.
    comm : MPI communicator, optional

    Returns
    -------
    trace : :class:`portsim.streams.history.TimedTrace`
        Behaviour of the network.
    """
    options = {} if options is None else options
    comm = init_communicator() if comm is None else comm
    seed = sc.seed if sc.seed is not None else options.get('rng_seed')
    seed = set_rng_seed(seed, comm)
    options['rng_seed'] = seed
    network = build_network(sc, verbose=verbose)
    policy = ChoicePolicy.from_string(sc.policy, seed)
    if verbose and comm.rank == 0:
        print("# Running {} for {} ticks with {!r}.".format(sc.network,
              sc.horizon, policy))
    ex = execute(network.automaton, network.stimulus_trace(sc), policy)
    return ex.behavior


def run_all(sc, options=None, comm=None, verbose=0):
    """Every behaviour of a scenario under an ``all<=k`` policy.

    Other policies give their single run. The behaviours are ordered by
    their trace text.

    Returns
    -------
    traces : list of :class:`portsim.streams.history.TimedTrace`
    """
    options = {} if options is None else options
    comm = init_communicator() if comm is None else comm
    seed = sc.seed if sc.seed is not None else options.get('rng_seed')
    seed = set_rng_seed(seed, comm)
    options['rng_seed'] = seed
    network = build_network(sc, verbose=verbose)
    policy = ChoicePolicy.from_string(sc.policy, seed)
    traces = run_policy(network.automaton, network.stimulus_trace(sc), policy)
    if verbose and comm.rank == 0:
        print("# {} behaviours of {} with {!r}.".format(len(traces),
              sc.network, policy))
    return sorted(traces, key=format_trace)


def archive_run(filename, sc, trace, options=None):
    """Write a run to HDF5 with its scenario and options as metadata."""
    metadata = to_json({'scenario': sc, 'options': options or {}})
    write_run(filename, trace, metadata, format_trace(trace))


def check_run(network, sc, name, arg, opts, seed):
    """One seeded run of a property check."""
    a = network.automaton
    if name == 'reactivity':
        bound = opts.bound if opts.reactivity == 'exhaustive' else None
        try:
            return check_reactivity(a, mode=opts.reactivity,
                                    budget=opts.per_run(opts.budget),
                                    bound=bound, seed=seed)
        except NotReactive as err:
            return Report('reactivity', False, samples=1,
                          witness={'state': err.state, 'input': err.input},
                          detail=str(err))
    elif name == 'weak_pulse':
        return check_weak_pulse(a, horizon=opts.horizon,
                                samples=opts.per_run(opts.samples), seed=seed,
                                frontier=opts.frontier, k=opts.branch)
    elif name == 'strong_pulse':
        return check_strong_pulse(a, horizon=opts.horizon,
                                  samples=opts.per_run(opts.samples),
                                  seed=seed, frontier=opts.frontier,
                                  k=opts.branch)
    elif name == 'medium_laws':
        spec = network.medium
        if spec is None:
            raise ValueError("network {} has no medium".format(sc.network))
        workload = random_workload(make_rng(seed), spec, opts.horizon)
        laws = check_medium_laws(spec, workload,
                                 policy=ChoicePolicy(seed=seed))
        if not laws.passed:
            return laws
        return check_containment(spec, probes=opts.per_run(opts.samples),
                                 seed=seed, horizon=opts.horizon)
    else:
        policy = ChoicePolicy.from_string(sc.policy, seed)
        trace = execute(a, network.stimulus_trace(sc), policy).behavior
        tick = stabilization_tick(trace, a.outputs)
        passed = tick <= arg or trace.horizon <= arg
        detail = "outputs constant from tick {} of {}".format(tick,
                                                              trace.horizon)
        return Report('stability', passed, samples=1,
                      witness=None if passed else {'tick': tick,
                                                   'seed': seed},
                      detail=detail)


def check(sc, prop, options=None, comm=None, verbose=0):
    """Check a property of a scenario's network.

    The samples are split into ``runs`` seeded runs, distributed round robin
    over the processes of ``comm`` and merged in seed order on the root, so
    the result does not depend on the number of processes.

    Parameters
    ----------
    sc : :class:`portsim.sim.scenario.Scenario`
        Parsed scenario.
    prop : string
        ``reactivity``, ``weak_pulse``, ``strong_pulse``, ``medium_laws`` or
        ``stability(k)``.
    options : dict
        Input options for :class:`portsim.sim.options.CheckOpts`.

    Returns
    -------
    report : :class:`portsim.utils.report.Report`
    """
    options = {} if options is None else options
    comm = init_communicator() if comm is None else comm
    opts = CheckOpts(options, verbose=(verbose > 1 and comm.rank == 0))
    name, arg = parse_property(prop, opts)
    seed = opts.rng_seed if opts.rng_seed is not None else sc.seed
    seed = set_rng_seed(seed, comm)
    options['rng_seed'] = seed
    network = build_network(sc, verbose=verbose if comm.rank == 0 else 0)
    seeds = [seed + j for j in range(opts.runs)]
    mine = [(s, check_run(network, sc, name, arg, opts, s))
            for s in seeds[comm.rank::comm.size]]
    gathered = comm.gather(mine, root=0)
    if comm.rank == 0:
        reports = sorted((r for part in gathered for r in part),
                         key=lambda x: x[0])
        report = merge_reports([r for _, r in reports], prop=name)
        if verbose:
            print(report.summary())
    else:
        report = None
    return comm.bcast(report, root=0)
