"""Scenario files.

A scenario names a network, the builtin automata it is made of, how they are
connected and the stimuli to run it with. The format is line oriented, ``#``
starts a comment::

    network latch
    use flipflop as ff init=OL
    input s @1..10 : bit:O
    input r @1..10 : bit:L
    horizon 10
    seed 4
    policy first

Directives:

``network <name>``
    Name of the assembled network.
``use <kind> as <id> [param=value ...]``
    Instantiate a builtin kind (see :func:`portsim.systems.utils.list_kinds`).
``wire <port> -> <port>[,<port>...]``
    Connect an output port to input ports. Without a medium the targets are
    renamed to the source; with a medium the wiring becomes its routing
    table.
``origin ...`` and ``route ...``
    Routing table rules (:mod:`portsim.sysmodel.routing`) for the medium.
``medium cma|cmas [key=value ...]``
    Join the instances through a medium instead of direct wiring. Keys are
    ``window``, ``batch``, ``serve`` (fair|all), ``idle`` and ``policy``
    (drop|error).
``input <channel> @<tick>[..<tick>] : <message> ...``
    Messages entering on a channel at one tick or at every tick of a range.
``hide <channel>[,<channel>...]``
    Hide output channels of the network.
``horizon <T>``, ``seed <S>``, ``policy first|random|all<=k``
    Run length, seed and resolution of nondeterminism.
"""

from portsim.automata.policy import STRATEGIES
from portsim.streams.message import Message
from portsim.systems.utils import KINDS
from portsim.utils.errors import ParseError

KEYWORDS = ('network', 'use', 'wire', 'origin', 'route', 'medium', 'input',
            'hide', 'horizon', 'seed', 'policy')


class Scenario(object):
    """Parsed scenario.

    Attributes
    ----------
    network : string
        Network name.
    uses : list
        ``(kind, id, params, line)`` tuples.
    wires : list
        ``(source, targets, line)`` tuples.
    routes : list
        ``(line, text)`` routing table lines.
    medium : dict or None
        Medium options, None for direct wiring.
    inputs : dict
        Channel -> {tick: message tuple}.
    input_lines : dict
        Channel -> first line mentioning it.
    hidden : list
        Channels to hide.
    horizon, seed : int
        Run length and seed (None if not given).
    policy : string
        Policy text, see
        :meth:`portsim.automata.policy.ChoicePolicy.from_string`.
    """

    def __init__(self):
        self.network = 'network'
        self.uses = []
        self.wires = []
        self.routes = []
        self.medium = None
        self.inputs = {}
        self.input_lines = {}
        self.hidden = []
        self.horizon = None
        self.seed = None
        self.policy = 'first'

    @property
    def ids(self):
        return [ident for _, ident, _, _ in self.uses]

    def stimuli(self, channel):
        """Per tick message sequences of an input channel, ticks 1..T."""
        ticks = self.inputs.get(channel, {})
        return [ticks.get(n, ()) for n in range(1, self.horizon+1)]

    def __repr__(self):
        return "Scenario({}, {})".format(self.network, self.ids)


def parse_params(words, n):
    params = {}
    for w in words:
        key, sep, value = w.partition('=')
        if not sep or not key or not value:
            raise ParseError(n, "expected param=value, got {!r}".format(w))
        if key in params:
            raise ParseError(n, "parameter {} given twice".format(key))
        params[key] = value
    return params


def parse_int(text, n, what, low=None):
    try:
        value = int(text)
    except ValueError:
        raise ParseError(n, "bad {} {!r}".format(what, text))
    if low is not None and value < low:
        raise ParseError(n, "{} must be at least {}".format(what, low))
    return value


def parse_ticks(text, n):
    if not text.startswith('@'):
        raise ParseError(n, "expected @<tick> or @<tick>..<tick>")
    first, sep, last = text[1:].partition('..')
    first = parse_int(first, n, 'tick', 1)
    last = parse_int(last, n, 'tick', 1) if sep else first
    if last < first:
        raise ParseError(n, "empty tick range {}".format(text))
    return range(first, last+1)


def parse_use(sc, words, n):
    if len(words) < 3 or words[1] != 'as':
        raise ParseError(n, "expected 'use <kind> as <id> [param=value ...]'")
    kind, ident = words[0], words[2]
    if kind not in KINDS:
        raise ParseError(n, "unknown automaton kind {!r}".format(kind))
    if ident in sc.ids:
        raise ParseError(n, "id {} used twice".format(ident))
    sc.uses.append((kind, ident, parse_params(words[3:], n), n))


def parse_wire(sc, rest, n):
    source, sep, targets = rest.partition(' -> ')
    targets = [t.strip() for t in targets.split(',') if t.strip()]
    if not sep or not source.strip() or not targets:
        raise ParseError(n, "expected 'wire <port> -> <port>[,<port>...]'")
    sc.wires.append((source.strip(), targets, n))


def parse_medium(sc, words, n):
    if sc.medium is not None:
        raise ParseError(n, "medium given twice")
    if not words or words[0] not in ('cma', 'cmas'):
        raise ParseError(n, "expected 'medium cma|cmas [key=value ...]'")
    opts = parse_params(words[1:], n)
    unknown = set(opts) - {'window', 'batch', 'serve', 'idle', 'policy'}
    if unknown:
        raise ParseError(n, "unknown medium options {}".format(sorted(unknown)))
    opts['delay'] = words[0]
    sc.medium = opts


def parse_input(sc, rest, n):
    head, sep, body = rest.partition(':')
    words = head.split()
    if not sep or len(words) != 2:
        raise ParseError(n, "expected 'input <channel> @<tick> : <m> ...'")
    channel, ticks = words[0], parse_ticks(words[1], n)
    try:
        seq = tuple(Message.parse(tok) for tok in body.split())
    except ValueError as err:
        raise ParseError(n, str(err))
    entries = sc.inputs.setdefault(channel, {})
    sc.input_lines.setdefault(channel, n)
    for t in ticks:
        if t in entries:
            raise ParseError(n, "input {} at tick {} given twice"
                             .format(channel, t))
        entries[t] = seq


def parse_scenario(text):
    """Parse scenario text.

    Returns
    -------
    scenario : :class:`Scenario`

    Raises
    ------
    ParseError
        With the number of the offending line (0 for whole-file problems).
    """
    sc = Scenario()
    seen = set()
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(' ')
        rest = rest.strip()
        words = rest.split()
        if keyword not in KEYWORDS:
            raise ParseError(n, "unknown directive {!r}".format(keyword))
        if keyword in ('network', 'horizon', 'seed', 'policy'):
            if keyword in seen:
                raise ParseError(n, "{} given twice".format(keyword))
            seen.add(keyword)
            if len(words) != 1:
                raise ParseError(n, "expected '{} <value>'".format(keyword))
        if keyword == 'network':
            sc.network = words[0]
        elif keyword == 'use':
            parse_use(sc, words, n)
        elif keyword == 'wire':
            parse_wire(sc, rest, n)
        elif keyword in ('origin', 'route'):
            sc.routes.append((n, line))
        elif keyword == 'medium':
            parse_medium(sc, words, n)
        elif keyword == 'input':
            parse_input(sc, rest, n)
        elif keyword == 'hide':
            sc.hidden.extend(c.strip() for c in rest.split(',') if c.strip())
        elif keyword == 'horizon':
            sc.horizon = parse_int(words[0], n, 'horizon', 1)
        elif keyword == 'seed':
            sc.seed = parse_int(words[0], n, 'seed', 0)
        elif keyword == 'policy':
            policy = words[0]
            if policy.startswith('all<='):
                parse_int(policy[5:], n, 'branching bound', 1)
            elif policy not in STRATEGIES:
                raise ParseError(n, "unknown policy {!r}".format(policy))
            sc.policy = policy
    if not sc.uses:
        raise ParseError(0, "scenario uses no automata")
    if sc.routes and sc.medium is None:
        raise ParseError(sc.routes[0][0], "routing rules need a medium")
    last = max((max(t) for t in sc.inputs.values() if t), default=1)
    if sc.horizon is None:
        sc.horizon = last
    elif last > sc.horizon:
        channel = next(c for c, t in sorted(sc.inputs.items())
                       if t and max(t) == last)
        raise ParseError(sc.input_lines[channel],
                         "input at tick {} beyond horizon {}".format(
                             last, sc.horizon))
    return sc


def read_scenario(filename):
    with open(filename) as inp:
        return parse_scenario(inp.read())
