"""Fair merge of two input streams.

At every tick the output is an interleaving of the two inputs of that tick.
The automaton is weakly but not strongly pulse-driven: the output of a tick
depends on the input of the same tick. (Elsewhere also known as the timed
merge automaton, TMA.)
"""

import itertools
from portsim.automata.automaton import Automaton
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq

STATE = 'merge'


def interleave(a, b, positions):
    """Merge a and b taking a's messages at the given output positions."""
    out = []
    ia = iter(a)
    ib = iter(b)
    pos = set(positions)
    for n in range(len(a)+len(b)):
        out.append(next(ia) if n in pos else next(ib))
    return tuple(out)


def fair_merge(i='i', j='j', o='o', name='fair_merge', alphabet=None):
    """Fair merge automaton over inputs ``i``, ``j`` and output ``o``.

    The first enumerated transition emits all of ``i`` before all of ``j``;
    the sampler draws a uniformly random interleaving.
    """

    def transitions(state, inp):
        a, b = inp[i], inp[j]
        seen = set()
        for positions in itertools.combinations(range(len(a)+len(b)), len(a)):
            c = interleave(a, b, positions)
            if c in seen:
                continue
            seen.add(c)
            yield inp + NamedSeq({o: c}), state

    def sampler(state, inp, rng):
        a, b = inp[i], inp[j]
        labels = [0]*len(a) + [1]*len(b)
        labels = [labels[k] for k in rng.permutation(len(labels))]
        positions = [n for n, l in enumerate(labels) if l == 0]
        return inp + NamedSeq({o: interleave(a, b, positions)}), state

    def constrained(state, inp, fixed):
        if o not in fixed:
            return transitions(state, inp)
        c = tuple(fixed[o])
        if is_interleaving(inp[i], inp[j], c):
            return iter([(inp + NamedSeq({o: c}), state)])
        return iter([])

    alphabet = {} if alphabet is None else alphabet
    sig = PortSignature([i, j], [o], alphabet=alphabet)
    return Automaton(sig, [STATE], transitions, sampler=sampler,
                     constrained=constrained, bound_hint=2, states=[STATE],
                     name=name)


def is_interleaving(a, b, c):
    """True if c is a merge of a and b preserving the order of each."""
    if len(a) + len(b) != len(c):
        return False
    # reachable[x] : a[:x] and b[:n-x] merge to c[:n]
    reachable = {0}
    for n, m in enumerate(c):
        nxt = set()
        for x in reachable:
            y = n - x
            if x < len(a) and a[x] == m:
                nxt.add(x+1)
            if y < len(b) and b[y] == m:
                nxt.add(x)
        if not nxt:
            return False
        reachable = nxt
    return len(a) in reachable
