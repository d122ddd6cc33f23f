"""Assemble the network described by a scenario."""

from portsim.automata.automaton import Automaton
from portsim.composition.network import FamilySpec
from portsim.composition.operators import compose_family, hide, rename
from portsim.sim.options import MediumOpts
from portsim.streams.history import TimedTrace
from portsim.streams.message import Message
from portsim.sysmodel.assemble import assemble
from portsim.sysmodel.hierarchy import Hierarchy
from portsim.sysmodel.medium import MediumSpec
from portsim.sysmodel.routing import RoutingTable
from portsim.systems.utils import get_kind
from portsim.utils.errors import ParseError


class Network(object):
    """Assembled scenario network.

    Parameters
    ----------
    automaton : :class:`portsim.automata.automaton.Automaton`
        The network.
    members : dict
        Instance id -> automaton as built from its kind.
    medium : :class:`portsim.sysmodel.medium.MediumSpec`, optional
        Scenario medium, or the medium of a single assembled builtin.
    stamped : iterable of strings
        Input channels whose unannotated stimuli are annotated with
        ``(channel, '*')`` before they enter.
    """

    def __init__(self, automaton, members, medium=None, stamped=()):
        self.automaton = automaton
        self.members = members
        self.medium = medium
        self.stamped = frozenset(stamped)

    def stimulus_trace(self, sc):
        """Input history of the scenario over all network inputs."""
        streams = {}
        for c in sorted(self.automaton.inputs):
            ticks = sc.stimuli(c)
            if c in self.stamped:
                ticks = [tuple(m if m.meta is not None
                               else m.with_meta(c, '*') for m in seq)
                         for seq in ticks]
            streams[c] = ticks
        return TimedTrace.from_streams(streams, sc.horizon)

    def __repr__(self):
        return "Network({!r})".format(self.automaton)


def stamp_outputs(a):
    """``a`` with every output message annotated with its output channel."""
    outputs = a.outputs

    def stamp(step):
        theta, nxt = step
        fresh = {o: tuple(m.with_meta(o, m.receiver or '*')
                          for m in theta[o]) for o in outputs}
        return theta.updated(fresh), nxt

    def transitions(state, inp):
        for step in a.transitions(state, inp):
            yield stamp(step)

    sampler = None
    if a._sampler is not None:
        sampler = lambda state, inp, rng: stamp(a._sampler(state, inp, rng))
    stamped = Automaton(a.signature, a.initial_states, transitions,
                        moore=a.moore, bound_hint=a.bound_hint,
                        sampler=sampler, states=a.states, name=a.name)
    stamped._verified = dict(a._verified)
    return stamped


def build_members(sc, verbose=0):
    members = {}
    for kind, ident, params, n in sc.uses:
        try:
            members[ident] = get_kind(kind, ident, params, verbose=verbose)
        except KeyError:
            raise ParseError(n, "unknown automaton kind {!r}".format(kind))
        except ValueError as err:
            raise ParseError(n, str(err))
    return members


def wire_directly(sc, members):
    """Compose the members, renaming wired inputs to their source."""
    if len(members) == 1 and not sc.wires:
        a = next(iter(members.values()))
        return a, getattr(a, 'medium', None)
    inputs = {c: ident for ident, a in members.items() for c in a.inputs}
    outputs = {c for a in members.values() for c in a.outputs}
    renames = {ident: {} for ident in members}
    for source, targets, n in sc.wires:
        if source not in outputs:
            raise ParseError(n, "{} is not an output port".format(source))
        for t in targets:
            if t not in inputs:
                raise ParseError(n, "{} is not an input port".format(t))
            mapping = renames[inputs[t]]
            if t in mapping:
                raise ParseError(n, "{} is wired twice".format(t))
            if source in mapping.values():
                raise ParseError(n, "{} reads {} twice".format(inputs[t],
                                                               source))
            mapping[t] = source
    family = [(ident, rename(a, renames[ident]))
              for ident, a in members.items()]
    return compose_family(FamilySpec(family), name=sc.network), None


def medium_ports(sc, members):
    """Inputs and outputs of the network as a distributed component."""
    part_in = {c for a in members.values() for c in a.inputs}
    part_out = {c for a in members.values() for c in a.outputs}
    ins, outs = set(sc.inputs) - part_in - part_out, set()
    for source, targets, n in sc.wires:
        if source in part_in:
            raise ParseError(n, "{} is an input port".format(source))
        if source not in part_out:
            ins.add(source)
        for t in targets:
            if t in part_out:
                raise ParseError(n, "{} is an output port".format(t))
            if t not in part_in:
                outs.add(t)
    for n, line in sc.routes:
        if line.startswith('route'):
            target = line.rsplit(' -> ', 1)[-1]
            outs.update(t.strip() for t in target.split(',')
                        if t.strip() not in ('drop', 'error')
                        and '{' not in t and t.strip() not in part_in)
    return ins - outs, outs


def medium_alphabet(sc, members, ins, stamp):
    alphabet = {}
    for c in ins:
        letters = [m if m.meta is not None else m.with_meta(c, '*')
                   for seq in sc.inputs.get(c, {}).values() for m in seq]
        alphabet[c] = tuple(dict.fromkeys(letters))
    if stamp:
        for a in members.values():
            letters = [m for c in sorted(a.inputs)
                       for m in a.signature.letters(c)]
            for o in a.outputs:
                alphabet[o] = tuple(dict.fromkeys(
                    Message(m.sort, m.payload, (o, '*')) for m in letters))
    return alphabet


def wire_medium(sc, members, verbose=0):
    """Assemble the members as parts of a component joined by a medium."""
    opts = MediumOpts(sc.medium, verbose=verbose > 1)
    ins, outs = medium_ports(sc, members)
    stamp = not sc.routes
    if stamp:
        final = 'drop' if opts.policy == 'drop' else 'error'
        wires = {}
        for source, targets, _ in sc.wires:
            wires.setdefault(source, []).extend(targets)
        table = RoutingTable.wiring(wires, final=final)
        members = {ident: stamp_outputs(a) for ident, a in members.items()}
    else:
        table = RoutingTable.parse(sc.routes)
    ports_in = {ident: a.inputs for ident, a in members.items()}
    ports_out = {ident: a.outputs for ident, a in members.items()}
    ports_in[sc.network] = ins
    ports_out[sc.network] = outs
    h = Hierarchy({sc.network: list(members)}, ports_in, ports_out,
                  root=sc.network)
    spec = MediumSpec(h.origins(sc.network), h.destinations(sc.network),
                      table.origin, table.destination, delay=opts.delay,
                      window=opts.window, batch=opts.batch, serve=opts.serve,
                      idle=opts.idle, loss=opts.policy,
                      alphabet=medium_alphabet(sc, members, ins, stamp),
                      name=sc.network, table=table)
    net = assemble(h, sc.network, members, spec, verbose=verbose > 0)
    return net, spec


def build_network(sc, verbose=0):
    """Network of a scenario.

    Parameters
    ----------
    sc : :class:`portsim.sim.scenario.Scenario`
        Parsed scenario.
    verbose : int
        Output verbosity.

    Returns
    -------
    network : :class:`Network`

    Raises
    ------
    ParseError
        If the scenario does not fit the builtin kinds: bad parameters,
        wiring of unknown ports, or stimuli on channels that are not inputs
        of the network.
    """
    members = build_members(sc, verbose=verbose)
    stamped = set()
    for a in members.values():
        if getattr(a, 'medium', None) is not None:
            stamped |= a.inputs
    if sc.medium is None:
        a, medium = wire_directly(sc, members)
    else:
        a, medium = wire_medium(sc, members, verbose=verbose)
        stamped |= a.inputs
    if sc.hidden:
        unknown = [c for c in sc.hidden if c not in a.outputs]
        if unknown:
            raise ParseError(0, "cannot hide {}: not an output".format(
                             ', '.join(unknown)))
        a = hide(a, sc.hidden)
    for c, n in sorted(sc.input_lines.items()):
        if c not in a.inputs:
            raise ParseError(n, "{} is not an input of {}".format(
                             c, sc.network))
    if verbose:
        print("# Network {}: inputs {}, outputs {}.".format(
              sc.network, sorted(a.inputs), sorted(a.outputs)))
    return Network(a, members, medium=medium, stamped=stamped)
