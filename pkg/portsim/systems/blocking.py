"""Two automata with complementary signatures that block each other.

Each copies its input to its output with a leading 1 in the same tick, so the
feedback loop ``i -> o -> i`` has no joint transition.
"""

from portsim.automata.automaton import Automaton
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq
from portsim.streams.message import Message

ONE = Message('int', 1)


def prepend_one(inp_chan, out_chan, name):

    def transitions(state, inp):
        yield inp + NamedSeq({out_chan: (ONE,) + tuple(inp[inp_chan])}), state

    sig = PortSignature([inp_chan], [out_chan])
    return Automaton(sig, [name], transitions, bound_hint=2, states=[name],
                     name=name)


def blocking_pair(i='i', o='o'):
    """The pair (A1, A2): A1 maps i to o, A2 maps o to i."""
    return prepend_one(i, o, 's1'), prepend_one(o, i, 's2')
