"""Builtin automaton kinds available to scenarios."""

from portsim.sysmodel.hierarchy import Hierarchy
from portsim.systems.buffer import buffer
from portsim.systems.gates import BITS, flipflop_network, nor_gate
from portsim.systems.merge import fair_merge
from portsim.systems.queue import SHAPES, VALUES, queue_element, queue_network

KINDS = {
    'fair_merge': "fair merge of <id>.i and <id>.j onto <id>.o",
    'buffer': "unbounded FIFO buffer from <id>.i to <id>.o",
    'nor': "moore nor gate <id>.a, <id>.b -> <id>.o [init=O|L]",
    'queue_element': "single queue element <id>.i -> <id>.o [new=q1,q2 "
                     "values=1,2,3]",
    'queue': "assembled queue <id>.i -> <id>.o [pool=4 shape=spine|binary "
             "values=1,2,3 window=W]",
    'flipflop': "assembled RS flip-flop s, r -> q, qbar [init=OL]",
}


def int_list(text):
    return tuple(int(v) for v in str(text).split(',') if v)


def pop_param(params, key, default, convert=str):
    value = params.pop(key, None)
    if value is None:
        return default
    try:
        return convert(value)
    except ValueError:
        raise ValueError("bad value {!r} for parameter {}".format(value, key))


def get_kind(kind, ident, params=None, verbose=0):
    """Wrapper to build a builtin automaton.

    Parameters
    ----------
    kind : string
        One of :data:`KINDS`.
    ident : string
        Instance id. Channels of the instance are prefixed with it, except
        for the flip-flop which keeps ``s``, ``r``, ``q`` and ``qbar``.
    params : dict
        String valued parameters.
    verbose : int
        Output verbosity.

    Returns
    -------
    automaton : :class:`portsim.automata.automaton.Automaton`

    Raises
    ------
    KeyError
        Unknown kind.
    ValueError
        Unknown or malformed parameters.
    """
    params = dict(params or {})
    chan = lambda port: '{}.{}'.format(ident, port)
    if kind == 'fair_merge':
        a = fair_merge(chan('i'), chan('j'), chan('o'), name=ident)
    elif kind == 'buffer':
        a = buffer(chan('i'), chan('o'), name=ident)
    elif kind == 'nor':
        init = pop_param(params, 'init', None)
        if init is not None and init not in BITS:
            raise ValueError("init must be one of {}".format(BITS))
        a = nor_gate(chan('a'), chan('b'), chan('o'), init=init, name=ident)
    elif kind == 'queue_element':
        new = pop_param(params, 'new', (), lambda v: tuple(v.split(',')))
        values = pop_param(params, 'values', VALUES, int_list)
        h = Hierarchy({'env': [ident]}, {ident: [chan('i')]},
                      {ident: [chan('o')]}, root='env')
        a = queue_element(h, ident, new, values)
    elif kind == 'queue':
        shape = pop_param(params, 'shape', 'spine')
        if shape not in SHAPES:
            raise ValueError("shape must be one of {}".format(SHAPES))
        a = queue_network(pool=pop_param(params, 'pool', 4, int), shape=shape,
                          values=pop_param(params, 'values', VALUES, int_list),
                          window=pop_param(params, 'window', None, int),
                          name=ident, verbose=verbose > 1)
    elif kind == 'flipflop':
        init = pop_param(params, 'init', None)
        if init is not None:
            if len(init) != 2 or any(b not in BITS for b in init):
                raise ValueError("init must be two bits, e.g. OL")
            init = tuple(init)
        a = flipflop_network(init=init, name=ident, verbose=verbose > 1)
    else:
        raise KeyError(kind)
    if params:
        raise ValueError("unknown parameters {} for {}".format(
                         sorted(params), kind))
    if verbose:
        print("# Built {} {} with inputs {} and outputs {}.".format(
              kind, ident, sorted(a.inputs), sorted(a.outputs)))
    return a


def list_kinds():
    return sorted(KINDS.items())
