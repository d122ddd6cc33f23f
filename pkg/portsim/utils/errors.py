"""Exceptions raised by portsim.

Every error carries the offending object(s) as attributes so that callers
(and the command line driver) can print a witness.
"""


class PortsimError(Exception):
    """Base class for all portsim errors."""


class OverlappingDomains(PortsimError):
    """Sum of named sequences or traces whose channel sets intersect."""

    def __init__(self, channels):
        self.channels = frozenset(channels)
        super().__init__("overlapping channels: {}".format(
            ', '.join(sorted(self.channels))))


class HorizonMismatch(PortsimError):

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__("horizons differ: {} vs {}".format(left, right))


class OutOfRange(PortsimError):

    def __init__(self, value, upper):
        self.value = value
        self.upper = upper
        super().__init__("{} not in [0, {}]".format(value, upper))


class ChannelMismatch(PortsimError):

    def __init__(self, expected, found):
        self.expected = frozenset(expected)
        self.found = frozenset(found)
        super().__init__("expected channels {} but found {}".format(
            sorted(self.expected), sorted(self.found)))


class InvalidSignature(PortsimError):
    """Input, output and hidden channel sets are not pairwise disjoint."""


class NotReactive(PortsimError):
    """No transition exists for a (state, input) pair."""

    def __init__(self, state, inp):
        self.state = state
        self.input = inp
        super().__init__("no transition from state {!r} on input {}".format(
            state, inp))


class BudgetInsufficient(PortsimError):
    pass


class Stuck(PortsimError):
    """Execution reached a (state, input) pair with no transition."""

    def __init__(self, state, inp, tick):
        self.state = state
        self.input = inp
        self.tick = tick
        super().__init__("stuck at tick {} in state {!r} on input {}".format(
            tick, state, inp))


class IncompatibleSignatures(PortsimError):

    def __init__(self, channel, reason=''):
        self.channel = channel
        super().__init__("incompatible signatures on channel {}{}".format(
            channel, ': ' + reason if reason else ''))


class PotentialBlocking(PortsimError):
    """A feedback cycle is not broken by any verified moore declaration."""

    def __init__(self, G=(), P=(), cycle=None):
        self.G = frozenset(G)
        self.P = frozenset(P)
        self.cycle = cycle
        if cycle:
            msg = "unbroken feedback cycle: {}".format(' -> '.join(
                str(c) for c in cycle))
        else:
            msg = "potential blocking between G={} and P={}".format(
                sorted(self.G), sorted(self.P))
        super().__init__(msg)


class InfiniteActivity(PortsimError):
    pass


class NotAnOutput(PortsimError):

    def __init__(self, channel):
        self.channel = channel
        super().__init__("{} is not an output channel".format(channel))


class ChannelClash(PortsimError):

    def __init__(self, channel, reason=''):
        self.channel = channel
        super().__init__("channel clash on {}{}".format(
            channel, ': ' + reason if reason else ''))


class OriginMismatch(PortsimError):

    def __init__(self, message, channel):
        self.message = message
        self.channel = channel
        super().__init__("message {} arrived on {} but its origin differs"
                         .format(message, channel))


class LostMessage(PortsimError):

    def __init__(self, message):
        self.message = message
        super().__init__("message {} has no destination".format(message))


class UnroutableMessage(PortsimError):

    def __init__(self, message):
        self.message = message
        super().__init__("no routing rule accepts {}".format(message))


class SignatureMismatch(PortsimError):
    pass


class HierarchyError(PortsimError):
    pass


class PoolExhausted(PortsimError):

    def __init__(self, element):
        self.element = element
        super().__init__("queue element {} has no identifiers left to create"
                         .format(element))


class ParseError(PortsimError):

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__("line {}: {}".format(line, reason))


class ChaoticInput(PortsimError):
    """Input a basic component does not specify a reaction for."""

    def __init__(self, data, message):
        self.data = data
        self.message = message
        super().__init__("no reaction to {} in {!r}".format(message, data))
