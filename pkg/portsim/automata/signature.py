from portsim.streams.message import Message
from portsim.utils.errors import InvalidSignature

DEFAULT_ALPHABET = tuple(Message('int', v) for v in range(4))


class PortSignature(object):
    """Input, output and hidden channels of an automaton.

    Parameters
    ----------
    inputs : iterable of strings
        Input channels I.
    outputs : iterable of strings
        Output channels O.
    hidden : iterable of strings
        Hidden (internal) channels H.
    alphabet : dict, optional
        Channel to tuple of sample messages. Used by sampled and exhaustive
        checks when drawing inputs; channels not listed draw from
        ``DEFAULT_ALPHABET``.

    Attributes
    ----------
    channels : frozenset
        Action domain C = I | O | H.
    external : frozenset
        I | O.
    """

    def __init__(self, inputs=(), outputs=(), hidden=(), alphabet=None):
        self.inputs = frozenset(inputs)
        self.outputs = frozenset(outputs)
        self.hidden = frozenset(hidden)
        for a, b in ((self.inputs, self.outputs), (self.inputs, self.hidden),
                     (self.outputs, self.hidden)):
            common = a & b
            if common:
                raise InvalidSignature("channels {} are used twice"
                                       .format(sorted(common)))
        self.alphabet = dict(alphabet) if alphabet is not None else {}

    @property
    def channels(self):
        return self.inputs | self.outputs | self.hidden

    @property
    def external(self):
        return self.inputs | self.outputs

    def letters(self, channel):
        return tuple(self.alphabet.get(channel, DEFAULT_ALPHABET))

    def rename(self, mapping):
        r = lambda names: [mapping.get(c, c) for c in names]
        alphabet = {mapping.get(c, c): v for c, v in self.alphabet.items()}
        return PortSignature(r(self.inputs), r(self.outputs), r(self.hidden),
                             alphabet)

    def __eq__(self, other):
        if not isinstance(other, PortSignature):
            return NotImplemented
        return (self.inputs == other.inputs and self.outputs == other.outputs
                and self.hidden == other.hidden)

    def __hash__(self):
        return hash((self.inputs, self.outputs, self.hidden))

    def __repr__(self):
        return "PortSignature(I={}, O={}, H={})".format(
            sorted(self.inputs), sorted(self.outputs), sorted(self.hidden))
