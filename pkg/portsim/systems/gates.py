"""Nor gates with a one tick delay and the RS flip-flop built from two of them.

Bits are ``O`` (low) and ``L`` (high). A gate's state is the bit it currently
drives: at every tick it emits its state and moves to ``nor(a, b)`` of the
tick's inputs. Regular input is exactly one bit per input channel; on
irregular input the gate holds its state.
"""

from portsim.automata.automaton import Automaton
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq
from portsim.streams.message import Message
from portsim.sysmodel.assemble import assemble
from portsim.sysmodel.hierarchy import Hierarchy
from portsim.sysmodel.medium import MediumSpec
from portsim.sysmodel.routing import RoutingTable

BITS = ('O', 'L')


def nor(x, y):
    return 'L' if (x == 'O' and y == 'O') else 'O'


def bit(value, sender=None, receiver='*'):
    meta = None if sender is None else (sender, receiver)
    return Message('bit', value, meta)


def read_bit(seq):
    """The bit carried by a regular (single message) sequence, else None."""
    if len(seq) != 1 or seq[0].payload not in BITS:
        return None
    return seq[0].payload


def nor_gate(a='a', b='b', o='o', init=None, name='nor'):
    """Moore nor gate.

    Parameters
    ----------
    a, b : string
        Input channels.
    o : string
        Output channel. Emitted bits carry the annotation ``(o, '*')``.
    init : string, optional
        Initial state; both bits are initial if not given.
    """
    if init is not None and init not in BITS:
        raise ValueError("gate state must be one of {}".format(BITS))

    def step(state, inp):
        x, y = read_bit(inp[a]), read_bit(inp[b])
        if x is None or y is None:
            return state
        return nor(x, y)

    def transitions(state, inp):
        yield inp + NamedSeq({o: (bit(state, o),)}), step(state, inp)

    alphabet = {a: tuple(bit(v) for v in BITS), b: tuple(bit(v) for v in BITS)}
    sig = PortSignature([a, b], [o], alphabet=alphabet)
    initial = BITS if init is None else (init,)
    return Automaton(sig, initial, transitions, moore=[([a, b], [o])],
                     bound_hint=2, states=BITS, name=name)


def flipflop_hierarchy(name='ff'):
    ins = {name: ['s', 'r'], 'g1': ['g1.a', 'g1.b'], 'g2': ['g2.a', 'g2.b']}
    outs = {name: ['q', 'qbar'], 'g1': ['g1.o'], 'g2': ['g2.o']}
    return Hierarchy({name: ['g1', 'g2']}, ins, outs, root=name)


# g1 computes qbar from s and q, g2 computes q from r and qbar.
FLIPFLOP_WIRES = {
    's': ['g1.a'],
    'r': ['g2.a'],
    'g1.o': ['qbar', 'g2.b'],
    'g2.o': ['q', 'g1.b'],
}


def stimulus(value, channel):
    """Bit entering the flip-flop on ``s`` or ``r``."""
    return bit(value, channel)


def flipflop_network(init=None, name='ff', verbose=False):
    """RS flip-flop: two moore nor gates joined by a zero-delay medium.

    Parameters
    ----------
    init : tuple, optional
        Initial states of g1 (driving qbar) and g2 (driving q); free if not
        given.

    Returns
    -------
    automaton : :class:`portsim.automata.automaton.Automaton`
        Inputs ``s``, ``r`` and outputs ``q``, ``qbar``. Input bits must be
        annotated with their channel as sender (:func:`stimulus`).
    """
    init = (None, None) if init is None else init
    h = flipflop_hierarchy(name)
    gates = {'g1': nor_gate('g1.a', 'g1.b', 'g1.o', init=init[0], name='g1'),
             'g2': nor_gate('g2.a', 'g2.b', 'g2.o', init=init[1], name='g2')}
    table = RoutingTable.wiring(FLIPFLOP_WIRES)
    alphabet = {c: tuple(bit(v, c) for v in BITS) for c in FLIPFLOP_WIRES}
    spec = MediumSpec(h.origins(name), h.destinations(name), table.origin,
                      table.destination, delay='cma', serve='all', batch=None,
                      alphabet=alphabet, name=name, table=table)
    return assemble(h, name, gates, spec, verbose=verbose)
