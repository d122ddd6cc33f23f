"""Basic components with buffered states.

The state of a basic component is a triple: an input buffer of received but
unprocessed messages, the data state, and an output buffer of produced but
not yet emitted messages. Initial states have both buffers empty. Messages
are processed one at a time by a reaction function; a message the reaction
does not specify moves the component to the absorbing chaotic state, which
emits nothing.
"""

from collections import namedtuple
from portsim.automata.automaton import Automaton
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq
from portsim.utils.errors import ChaoticInput, NotAnOutput

CHAOS = 'chaos'


class BasicState(namedtuple('BasicState',
                            ['input_buffer', 'data', 'output_buffer'])):

    @classmethod
    def initial(cls, data, inputs, outputs):
        return cls(NamedSeq.empty(inputs), data, NamedSeq.empty(outputs))

    @property
    def chaotic(self):
        return self.data == CHAOS


def pending_messages(buffered, inp, rate):
    """Messages to process this tick and the new input buffer."""
    queue = [(c, m) for c in sorted(inp.channels)
             for m in buffered[c] + inp[c]]
    if rate is None or len(queue) <= rate:
        return queue, NamedSeq.empty(inp.channels)
    rest = {c: [] for c in inp.channels}
    for c, m in queue[rate:]:
        rest[c].append(m)
    return queue[:rate], NamedSeq(rest)


def basic_component(h, c, data0, react, delayed=False, rate=None,
                    alphabet=None, name=None):
    """Automaton of basic component ``c`` of hierarchy ``h``.

    Parameters
    ----------
    h : :class:`portsim.sysmodel.hierarchy.Hierarchy`
        Hierarchy providing the ports of ``c``.
    c : string
        Component id.
    data0 : list
        Initial data states.
    react : callable
        ``react(data, channel, message)`` returning the new data state and a
        list of ``(output channel, message)`` pairs. Raises
        :class:`portsim.utils.errors.ChaoticInput` for unspecified input.
    delayed : bool
        Emit produced messages in the following tick. The component is then
        moore on all of its channels.
    rate : int, optional
        Maximum number of messages processed per tick; the rest wait in the
        input buffer.
    """
    inputs, outputs = h.in_ports(c), h.out_ports(c)
    chaos = BasicState.initial(CHAOS, inputs, outputs)

    def transitions(state, inp):
        silent = NamedSeq.empty(outputs)
        if state.chaotic:
            yield inp + silent, state
            return
        todo, rest = pending_messages(state.input_buffer, inp, rate)
        data = state.data
        produced = {o: [] for o in outputs}
        try:
            for channel, m in todo:
                data, out = react(data, channel, m)
                for o, msg in out:
                    if o not in produced:
                        raise NotAnOutput(o)
                    produced[o].append(msg)
        except ChaoticInput:
            yield inp + (state.output_buffer if delayed else silent), chaos
            return
        produced = NamedSeq(produced)
        if delayed:
            yield (inp + state.output_buffer,
                   BasicState(rest, data, produced))
        else:
            yield inp + produced, BasicState(rest, data, silent)

    initial = [BasicState.initial(d, inputs, outputs) for d in data0]
    moore = [(inputs, outputs)] if delayed else []
    sig = PortSignature(inputs, outputs, alphabet=alphabet)
    return Automaton(sig, initial, transitions, moore=moore,
                     name=c if name is None else name)
