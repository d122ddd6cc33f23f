import pytest
from portsim.automata.checks import check_strong_pulse, trusted_moore
from portsim.automata.execution import execute
from portsim.automata.policy import ChoicePolicy
from portsim.streams.history import TimedTrace
from portsim.streams.message import Message
from portsim.sysmodel.assemble import assemble
from portsim.sysmodel.basic import CHAOS, BasicState, basic_component
from portsim.sysmodel.hierarchy import Hierarchy
from portsim.sysmodel.medium import MediumSpec
from portsim.sysmodel.routing import RoutingTable
from portsim.utils.errors import (
        ChaoticInput,
        HierarchyError,
        PotentialBlocking,
        SignatureMismatch
        )


def counter_hierarchy():
    return Hierarchy({'sys': ['cnt']},
                     in_ports={'sys': ['in'], 'cnt': ['cnt.i']},
                     out_ports={'sys': ['out'], 'cnt': ['cnt.o']})


def count_react(data, channel, m):
    if m.sort != 'tick':
        raise ChaoticInput(data, m)
    return data + 1, [('cnt.o', Message('count', data + 1, ('cnt.o', '*')))]


def counter(h, **kwargs):
    alphabet = {'cnt.i': (Message('tick', 0), Message('bad', 0))}
    return basic_component(h, 'cnt', [0], count_react, alphabet=alphabet,
                           **kwargs)


def ticks(n, sort='tick', sender=None):
    meta = None if sender is None else (sender, '*')
    return tuple(Message(sort, 0, meta) for _ in range(n))


def counts(seq):
    return [m.payload for m in seq]


@pytest.mark.unit
def test_basic_component():
    h = counter_hierarchy()
    a = counter(h)
    assert a.initial_states == (BasicState.initial(0, ['cnt.i'], ['cnt.o']),)
    s0 = a.initial_states[0]
    assert s0.input_buffer.is_empty() and s0.output_buffer.is_empty()
    bad = ticks(1, sort='bad')
    inp = TimedTrace.from_streams({'cnt.i': [ticks(2), (), bad, ticks(1)]})
    ex = execute(a, inp, ChoicePolicy(strategy='first'))
    out = [counts(t) for t in ex.actions.stream('cnt.o')]
    assert out == [[1, 2], [], [], []]
    assert ex.states[-1].data == CHAOS


@pytest.mark.unit
def test_basic_delayed_and_rate():
    h = counter_hierarchy()
    inp = TimedTrace.from_streams({'cnt.i': [ticks(2), (), ()]})
    delayed = counter(h, delayed=True)
    ex = execute(delayed, inp, ChoicePolicy(strategy='first'))
    assert [counts(t) for t in ex.actions.stream('cnt.o')] == [[], [1, 2], []]
    assert trusted_moore(delayed, delayed.inputs, delayed.outputs)
    slow = counter(h, rate=1)
    inp = TimedTrace.from_streams({'cnt.i': [ticks(3), (), (), ()]})
    ex = execute(slow, inp, ChoicePolicy(strategy='first'))
    assert [counts(t) for t in ex.actions.stream('cnt.o')] == [[1], [2], [3],
                                                               []]
    assert len(ex.states[1].input_buffer['cnt.i']) == 2


def counter_spec(h, delay='cmas', wires=None, sampled=True, with_table=True):
    wires = {'in': ['cnt.i'], 'cnt.o': ['out']} if wires is None else wires
    table = RoutingTable.wiring(wires)
    alphabet = {'cnt.o': (Message('count', 1, ('cnt.o', '*')),)}
    if sampled:
        alphabet['in'] = (Message('tick', 0, ('in', '*')),)
    return MediumSpec(h.origins('sys'), h.destinations('sys'), table.origin,
                      table.destination, delay=delay, serve='all', batch=None,
                      alphabet=alphabet, name='sys',
                      table=table if with_table else None)


@pytest.mark.unit
def test_assemble_cmas():
    h = counter_hierarchy()
    net = assemble(h, 'sys', {'cnt': counter(h)}, counter_spec(h))
    assert net.justification == 'medium'
    assert net.inputs == frozenset(['in'])
    assert net.outputs == frozenset(['out'])
    assert net.signature.hidden == frozenset(['cnt.i', 'cnt.o'])
    assert net.full_moore() is not None
    inp = TimedTrace.from_streams({'in': [ticks(1, sender='in'), (), (), ()]})
    ex = execute(net, inp, ChoicePolicy(strategy='first'))
    assert ex.behavior.channels == frozenset(['in', 'out'])
    assert [counts(t) for t in ex.behavior.stream('out')] == [[], [], [1], []]


@pytest.mark.unit
def test_assemble_refused():
    h = counter_hierarchy()
    with pytest.raises(PotentialBlocking) as err:
        assemble(h, 'sys', {'cnt': counter(h)}, counter_spec(h, delay='cma'))
    assert err.value.G == frozenset(['cnt.o'])
    assert err.value.P == frozenset(['cnt.i'])
    net = assemble(h, 'sys', {'cnt': counter(h)}, counter_spec(h, delay='cma'),
                   force=True)
    assert net.justification == 'forced'
    inp = TimedTrace.from_streams({'in': [ticks(1, sender='in'), ()]})
    ex = execute(net, inp, ChoicePolicy(strategy='first'))
    assert [counts(t) for t in ex.behavior.stream('out')] == [[1], []]


@pytest.mark.unit
def test_assemble_moore_parts():
    h = counter_hierarchy()
    parts = {'cnt': counter(h, delayed=True)}
    net = assemble(h, 'sys', parts, counter_spec(h, delay='cma'))
    assert net.justification == 'parts'
    assert net.full_moore().origin == 'derived'
    assert check_strong_pulse(net, horizon=5, samples=40, k=2,
                              frontier=16).passed
    looped = counter_spec(h, delay='cma',
                          wires={'in': ['cnt.i', 'out'], 'cnt.o': ['out']})
    net = assemble(h, 'sys', {'cnt': counter(h, delayed=True)}, looped)
    assert net.justification == 'parts'
    assert net.full_moore() is None


@pytest.mark.unit
def test_assemble_loop_without_samples():
    h = counter_hierarchy()
    wires = {'in': ['cnt.i', 'out'], 'cnt.o': ['out']}
    looped = counter_spec(h, delay='cma', wires=wires, sampled=False)
    net = assemble(h, 'sys', {'cnt': counter(h, delayed=True)}, looped)
    assert net.full_moore() is None
    blind = counter_spec(h, delay='cma', wires=wires, sampled=False,
                         with_table=False)
    net = assemble(h, 'sys', {'cnt': counter(h, delayed=True)}, blind)
    assert net.full_moore().origin == 'declared'
    plain = counter_spec(h, delay='cma', sampled=False, with_table=False)
    net = assemble(h, 'sys', {'cnt': counter(h, delayed=True)}, plain)
    assert net.full_moore().origin == 'declared'
    plain = counter_spec(h, delay='cma', sampled=False)
    net = assemble(h, 'sys', {'cnt': counter(h, delayed=True)}, plain)
    assert net.full_moore().origin == 'derived'


@pytest.mark.unit
def test_assemble_mismatch():
    h = counter_hierarchy()
    other = Hierarchy({'top': ['cnt']}, in_ports={'cnt': ['x']},
                      out_ports={'cnt': ['cnt.o']})
    stray = basic_component(other, 'cnt', [0], count_react)
    with pytest.raises(SignatureMismatch):
        assemble(h, 'sys', {'cnt': stray}, counter_spec(h))
    with pytest.raises(SignatureMismatch):
        assemble(h, 'sys', {}, counter_spec(h))
    with pytest.raises(HierarchyError):
        assemble(h, 'cnt', {}, counter_spec(h))
