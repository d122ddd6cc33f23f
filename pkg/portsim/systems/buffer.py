"""Unbounded FIFO buffer with finite delay.

The state is the buffered sequence. A transition emits a prefix of the
buffer (nonempty whenever the buffer is) and appends the tick's input behind
the rest, so a message received at tick n leaves at tick n+1 at the earliest.
"""

from portsim.automata.automaton import Automaton
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq


def buffer(i='i', o='o', name='buffer', alphabet=None):

    def transitions(state, inp):
        if not state:
            yield inp + NamedSeq({o: ()}), tuple(inp[i])
            return
        for k in range(len(state), 0, -1):
            yield inp + NamedSeq({o: state[:k]}), state[k:] + tuple(inp[i])

    def sampler(state, inp, rng):
        k = int(rng.integers(1, len(state)+1)) if state else 0
        return inp + NamedSeq({o: state[:k]}), state[k:] + tuple(inp[i])

    def constrained(state, inp, fixed):
        if o not in fixed:
            return transitions(state, inp)
        out = tuple(fixed[o])
        k = len(out)
        if state[:k] != out or (state and k == 0):
            return iter([])
        return iter([(inp + NamedSeq({o: out}), state[k:] + tuple(inp[i]))])

    alphabet = {} if alphabet is None else alphabet
    sig = PortSignature([i], [o], alphabet=alphabet)
    return Automaton(sig, [()], transitions, moore=[([i], [o])],
                     sampler=sampler, constrained=constrained, name=name)
