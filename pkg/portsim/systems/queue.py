"""FIFO queue as a linked list of dynamically created queue elements.

Each element holds a value or None and the id of the next element. Elements
answer three kinds of message:

* ``enq(x)`` to an occupied element is forwarded to the next element;
* ``enq(x)`` to an empty element is absorbed and the element allocates the
  first id of its creation list as its successor;
* ``deq(r)`` to an occupied element is answered with ``deqd(v, next)`` sent
  to ``r``.

Any other (state, message) pair is unspecified and sends the element to the
chaotic state. Elements are addressed by the receiver id of a message; the
medium delays every message by one tick. An element is created when the first
message reaches it.
"""

from portsim.streams.message import Message
from portsim.sysmodel.assemble import assemble
from portsim.sysmodel.basic import basic_component
from portsim.sysmodel.hierarchy import Hierarchy
from portsim.sysmodel.medium import MediumSpec
from portsim.sysmodel.routing import RoutingTable
from portsim.utils.errors import ChaoticInput, PoolExhausted

ENV = 'env'
NIL = 'Nil'
SHAPES = ('spine', 'binary')
VALUES = (1, 2, 3)


def enq(value, sender, receiver):
    return Message('enq', value, (sender, receiver))


def deq(reply_to, sender, receiver):
    return Message('deq', reply_to, (sender, receiver))


def deqd(value, nxt, sender, receiver):
    return Message('deqd', '{}/{}'.format(value, NIL if nxt is None else nxt),
                   (sender, receiver))


def read_deqd(m):
    """(value, next id or None) of a deqd message."""
    value, nxt = str(m.payload).split('/', 1)
    return int(value), (None if nxt == NIL else nxt)


def element_ids(n, prefix='q'):
    return ['{}{}'.format(prefix, k) for k in range(n)]


def to_create(ids, shape='spine'):
    """Creation lists partitioning ``ids[1:]`` into a tree rooted at ids[0].

    ``spine`` lets element k create element k+1; ``binary`` lets element k
    create elements 2k+1 and 2k+2.
    """
    n = len(ids)
    if shape == 'spine':
        return {q: ids[k+1:k+2] for k, q in enumerate(ids)}
    elif shape == 'binary':
        return {q: [ids[j] for j in (2*k+1, 2*k+2) if j < n]
                for k, q in enumerate(ids)}
    else:
        raise ValueError("unknown shape {!r}".format(shape))


def queue_hierarchy(ids, name='qu'):
    ins = {q: ['{}.i'.format(q)] for q in ids}
    outs = {q: ['{}.o'.format(q)] for q in ids}
    ins[name] = ['{}.i'.format(name)]
    outs[name] = ['{}.o'.format(name)]
    return Hierarchy({name: ids}, ins, outs, root=name)


def queue_routing(ids, name='qu'):
    """Route by receiver id; everything not addressed to an element leaves."""
    origins = [('*@{}->*'.format(q), '{}.o'.format(q)) for q in ids]
    origins.append(('*', '{}.i'.format(name)))
    routes = [('*@*->{}'.format(q), ('{}.i'.format(q),)) for q in ids]
    routes.append(('*@*->*', ('{}.o'.format(name),)))
    routes.append(('*', 'error'))
    return RoutingTable(routes, origins)


def element_react(q):

    def react(data, channel, m):
        val, nxt, new_ids = data
        out = '{}.o'.format(q)
        if m.sort == 'enq':
            if val is not None:
                return data, [(out, enq(m.payload, q, nxt))]
            if not new_ids:
                raise PoolExhausted(q)
            return (m.payload, new_ids[0], new_ids[1:]), []
        if m.sort == 'deq' and val is not None:
            return data, [(out, deqd(val, nxt, q, m.payload))]
        raise ChaoticInput(data, m)

    return react


def queue_element(h, q, new_ids, values=VALUES):
    """Automaton of element ``q``; ``new_ids`` is its creation list."""
    alphabet = {'{}.i'.format(q): (tuple(enq(v, ENV, q) for v in values)
                                   + (deq(ENV, ENV, q),))}
    return basic_component(h, q, [(None, None, tuple(new_ids))],
                           element_react(q), alphabet=alphabet, name=q)


def medium_alphabet(ids, name='qu', values=VALUES):
    alphabet = {'{}.i'.format(name): (tuple(enq(v, ENV, ids[0])
                                            for v in values)
                                      + (deq(ENV, ENV, ids[0]),))}
    for k, q in enumerate(ids):
        alphabet['{}.o'.format(q)] = (enq(values[0], q, ids[(k+1) % len(ids)]),
                                      deqd(values[0], None, q, ENV))
    return alphabet


def queue_network(pool=4, shape='spine', values=VALUES, name='qu',
                  window=None, verbose=False):
    """Assembled queue holding up to ``pool`` values.

    Elements ``q0`` .. ``q<pool>`` exist, ``q0`` live from the start; the
    last element allocated stays empty as the tail.

    Returns
    -------
    automaton : :class:`portsim.automata.automaton.Automaton`
        Inputs ``<name>.i``, outputs ``<name>.o``.
    """
    if pool < 1:
        raise ValueError("pool must hold at least one value")
    ids = element_ids(pool+1)
    h = queue_hierarchy(ids, name)
    creates = to_create(ids, shape)
    automata = {q: queue_element(h, q, creates[q], values) for q in ids}
    table = queue_routing(ids, name)
    spec = MediumSpec(h.origins(name), h.destinations(name), table.origin,
                      table.destination, delay='cmas', serve='all',
                      batch=None, window=window, single=True,
                      alphabet=medium_alphabet(ids, name, values), name=name,
                      table=table)
    return assemble(h, name, automata, spec, active=[ids[0]], verbose=verbose)
