"""Communication medium of a distributed component.

The medium reads every output port of the component's parts and the
component's own inputs (its origins) and writes every input port of the parts
and the component's outputs (its destinations). It keeps one buffer per
destination. Each tick the incoming messages are distributed into the
buffers, duplicated to every destination of a message, and buffered messages
are delivered.

Two variants exist. ``cma`` may deliver a message in the tick it arrives and
is weakly pulse-driven; ``cmas`` only delivers what was buffered before the
tick, imposing a delay of at least one tick, and is moore on all of its
channels. Every ``cmas`` transition is also a ``cma`` transition
(:func:`cma_admits`).

Fairness is a cyclic list of destinations, sorted, followed by ``idle`` empty
(Nil) slots. With ``serve='fair'`` one slot is consumed per tick and only
that destination delivers, at least one message when it has any. With
``serve='all'`` every destination delivers every tick and the list is not
consumed.
"""

from collections import namedtuple
from portsim.automata.automaton import Automaton
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq, project
from portsim.utils.errors import (
        ChannelClash,
        ChannelMismatch,
        LostMessage,
        OriginMismatch,
        UnroutableMessage
        )

DELAYS = ('cma', 'cmas')
SERVE = ('fair', 'all')
LOSS = ('error', 'drop')


class MediumSpec(object):
    """Routing and delivery parameters of a medium.

    Parameters
    ----------
    origins, destinations : iterable of strings
        Input and output channels of the medium.
    origin : callable
        Message -> origin channel.
    destination : callable
        Message -> set of destination channels.
    delay : string
        ``cma`` or ``cmas``.
    window : int, optional
        Fairness window W: every destination is served at least once in any
        W consecutive ticks. Defaults to ``4*len(destinations)``.
    batch : int or None
        Maximum number of messages delivered per destination and tick; None
        for no limit.
    serve : string
        ``fair`` or ``all``.
    idle : int
        Number of Nil slots per fairness round.
    loss : string
        ``error`` raises :class:`LostMessage` for messages without
        destination, ``drop`` discards them.
    single : bool
        Require exactly one destination per message.
    alphabet : dict, optional
        Origin channel -> sample messages with that origin, used by the
        sampled checks.
    table : :class:`portsim.sysmodel.routing.RoutingTable`, optional
        Table that ``origin`` and ``destination`` come from. Lets loops from
        the inputs to the outputs be found from the rules.
    """

    def __init__(self, origins, destinations, origin, destination,
                 delay='cmas', window=None, batch=1, serve='fair', idle=0,
                 loss='error', single=False, alphabet=None, name='medium',
                 table=None):
        self.origins = frozenset(origins)
        self.destinations = frozenset(destinations)
        common = self.origins & self.destinations
        if common:
            raise ChannelClash(sorted(common)[0], 'origin and destination')
        for value, allowed, what in ((delay, DELAYS, 'delay'),
                                     (serve, SERVE, 'serve'),
                                     (loss, LOSS, 'loss')):
            if value not in allowed:
                raise ValueError("unknown {} {!r}".format(what, value))
        if batch == 'all':
            batch = None
        if batch is not None and int(batch) < 1:
            raise ValueError("batch must be at least one")
        self.origin = origin
        self.destination = destination
        self.delay = delay
        self.batch = None if batch is None else int(batch)
        self.serve = serve
        self.idle = int(idle)
        self.loss = loss
        self.single = single
        self.fairlist = FairList(self.destinations, self.idle)
        self._window = window
        if window is None:
            window = max(4*len(self.destinations), len(self.fairlist))
        if window < len(self.fairlist):
            raise ValueError("window {} shorter than a fairness round of {}"
                             .format(window, len(self.fairlist)))
        self.window = int(window)
        self.alphabet = {} if alphabet is None else dict(alphabet)
        self.table = table
        self.name = name

    def replace(self, **kwargs):
        """Copy with some parameters changed."""
        params = dict(origins=self.origins, destinations=self.destinations,
                      origin=self.origin, destination=self.destination,
                      delay=self.delay, window=self._window, batch=self.batch,
                      serve=self.serve, idle=self.idle, loss=self.loss,
                      single=self.single, alphabet=self.alphabet,
                      name=self.name, table=self.table)
        params.update(kwargs)
        return MediumSpec(**params)

    def __repr__(self):
        return "MediumSpec({}, {}, serve={}, batch={})".format(
            self.name, self.delay, self.serve,
            'all' if self.batch is None else self.batch)


class FairList(object):
    """Cyclic fairness list; ``None`` is an idle slot."""

    def __init__(self, destinations, idle=0):
        slots = tuple(sorted(destinations)) + (None,)*idle
        self.slots = slots if slots else (None,)

    def slot(self, cursor):
        return self.slots[cursor % len(self.slots)]

    def advance(self, cursor):
        return (cursor + 1) % len(self.slots)

    def __len__(self):
        return len(self.slots)


class MediumState(namedtuple('MediumState', ['buffers', 'cursor'])):
    """Buffered messages per destination and the fairness list position."""

    @classmethod
    def initial(cls, destinations):
        return cls(tuple((d, ()) for d in sorted(destinations)), 0)

    def as_dict(self):
        return dict(self.buffers)

    def buffer(self, d):
        return self.as_dict()[d]

    def load(self):
        return sum(len(v) for _, v in self.buffers)


def distribute(spec, theta):
    """Sort one tick of incoming messages into destination sequences.

    Origins are visited in sorted order, each origin's messages in arrival
    order, and every message is appended to each of its destinations.

    Raises
    ------
    OriginMismatch
        If a message arrives on a channel other than its origin.
    LostMessage
        If a message has no destination and ``spec.loss`` is not
        ``drop``.
    UnroutableMessage
        If a destination is not a destination channel of the medium, or a
        single-destination spec routes a message to several.
    """
    if not theta.channels <= spec.origins:
        raise ChannelMismatch(spec.origins, theta.channels)
    out = {d: [] for d in spec.destinations}
    for o in sorted(theta.channels):
        for m in theta[o]:
            if spec.origin(m) != o:
                raise OriginMismatch(m, o)
            dests = frozenset(spec.destination(m))
            if not dests:
                if spec.loss == 'error':
                    raise LostMessage(m)
                continue
            if (spec.single and len(dests) > 1) \
                    or not dests <= spec.destinations:
                raise UnroutableMessage(m)
            for d in dests:
                out[d].append(m)
    return NamedSeq(out, channels=spec.destinations)


def medium_automaton(spec):
    """Timed port automaton of a medium.

    The canonical transition delivers the longest admissible prefix; with
    ``serve='fair'`` and a batch limit B the alternatives deliver prefixes
    of length B-1 down to 1 on the served destination.
    """
    fair = spec.fairlist
    dests = sorted(spec.destinations)

    def limit(n):
        return n if spec.batch is None else min(spec.batch, n)

    def step(inp, stock, later, out, cursor):
        theta = inp + NamedSeq(out, channels=spec.destinations)
        bufs = tuple((d, stock[d][len(out.get(d, ())):] + later[d])
                     for d in dests)
        return theta, MediumState(bufs, cursor)

    def transitions(state, inp):
        fresh = distribute(spec, inp)
        bufs = state.as_dict()
        if spec.delay == 'cma':
            stock = {d: bufs[d] + fresh[d] for d in dests}
            later = {d: () for d in dests}
        else:
            stock = bufs
            later = {d: fresh[d] for d in dests}
        if spec.serve == 'all':
            out = {d: stock[d][:limit(len(stock[d]))] for d in dests}
            yield step(inp, stock, later, out, state.cursor)
            return
        cursor = fair.advance(state.cursor)
        d = fair.slot(state.cursor)
        if d is None or not stock[d]:
            yield step(inp, stock, later, {}, cursor)
            return
        for k in range(limit(len(stock[d])), 0, -1):
            yield step(inp, stock, later, {d: stock[d][:k]}, cursor)

    moore = [(spec.origins, spec.destinations)] if spec.delay == 'cmas' else []
    sig = PortSignature(spec.origins, spec.destinations,
                        alphabet=spec.alphabet)
    return Automaton(sig, [MediumState.initial(dests)], transitions,
                     moore=moore, name=spec.name)


def cma_admits(spec, state, theta, nxt):
    """Is (state, theta, nxt) a transition of the general ``cma`` medium?

    The general medium may split buffered plus distributed messages freely
    into delivered and kept ones, as long as the served destination delivers
    something whenever its stored buffer is nonempty.
    """
    fair = spec.fairlist
    fresh = distribute(spec, project(theta, spec.origins))
    bufs, new = state.as_dict(), nxt.as_dict()
    for d in spec.destinations:
        if tuple(theta[d]) + new[d] != bufs[d] + fresh[d]:
            return False
    if spec.serve == 'all':
        served = spec.destinations
        if nxt.cursor != state.cursor:
            return False
    else:
        d = fair.slot(state.cursor)
        served = [] if d is None else [d]
        if nxt.cursor != fair.advance(state.cursor):
            return False
    return all(theta[d] or not bufs[d] for d in served)


def returns_to_environment(spec, inputs, outputs):
    """Ways a message entering on ``inputs`` may be routed to ``outputs``.

    Returns
    -------
    loops : list
        Offending route rules if ``spec.table`` is set, otherwise the
        offending messages of ``spec.alphabet``.
    decided : bool
        True if the answer comes from the routing rules. Sampled answers
        may miss loops.
    """
    inputs, outputs = frozenset(inputs), frozenset(outputs)
    if spec.table is not None:
        return spec.table.routes_back(inputs, outputs), True
    found = []
    for o in sorted(inputs):
        for m in spec.alphabet.get(o, ()):
            if frozenset(spec.destination(m)) & outputs:
                found.append(m)
    return found, False
