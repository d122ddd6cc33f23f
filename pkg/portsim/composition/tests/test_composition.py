import itertools
import numpy
import pytest
from portsim.automata.checks import (
        ACCEPTED,
        check_strong_pulse,
        check_trace_membership,
        trace_of
        )
from portsim.automata.execution import behaviors, execute
from portsim.automata.policy import ChoicePolicy
from portsim.automata.sampling import random_trace
from portsim.automata.signature import PortSignature
from portsim.composition.network import FamilySpec
from portsim.composition.operators import (
        compose2,
        compose_family,
        compose_signatures,
        hide,
        rename
        )
from portsim.composition.plan import plan_tick
from portsim.streams.history import TimedTrace, project_trace
from portsim.streams.message import Message, msgs
from portsim.systems.blocking import blocking_pair
from portsim.systems.buffer import buffer
from portsim.systems.gates import nor_gate
from portsim.systems.merge import fair_merge
from portsim.utils.errors import (
        ChannelClash,
        IncompatibleSignatures,
        InfiniteActivity,
        NotAnOutput,
        PotentialBlocking,
        Stuck
        )


@pytest.mark.unit
def test_compose_signatures():
    sig = compose_signatures(PortSignature(['i'], ['m']),
                             PortSignature(['m'], ['o']))
    assert sig.inputs == frozenset(['i'])
    assert sig.outputs == frozenset(['m', 'o'])
    assert sig.hidden == frozenset()
    sig = compose_signatures(PortSignature(['a'], ['b']),
                             PortSignature(['c'], ['d']))
    assert sig.inputs == frozenset(['a', 'c'])
    assert sig.outputs == frozenset(['b', 'd'])
    with pytest.raises(IncompatibleSignatures) as err:
        compose_signatures(PortSignature(['a'], ['o']),
                           PortSignature(['b'], ['o']))
    assert err.value.channel == 'o'


def merge_then_delay():
    return compose2(fair_merge(o='m'), buffer(i='m', o='o'))


@pytest.mark.unit
def test_pipeline():
    net = merge_then_delay()
    assert net.inputs == frozenset(['i', 'j'])
    assert net.outputs == frozenset(['m', 'o'])
    inp = TimedTrace.from_streams({'i': [msgs(1), ()], 'j': [msgs(2), ()]})
    behs = behaviors(net, inp, k=8)
    outs = {b.stream('o') for b in behs}
    assert outs == {((), msgs(1, 2)), ((), msgs(2, 1)), ((), msgs(1)),
                    ((), msgs(2))}


@pytest.mark.unit
def test_blocking_refused():
    a1, a2 = blocking_pair()
    with pytest.raises(PotentialBlocking) as err:
        compose2(a1, a2)
    assert err.value.G == frozenset(['i'])
    assert err.value.P == frozenset(['o'])
    assert len(err.value.cycle) == 3


@pytest.mark.unit
def test_blocking_forced():
    a1, a2 = blocking_pair()
    net = compose2(a1, a2, force=True)
    assert net.inputs == frozenset()
    assert net.outputs == frozenset(['i', 'o'])
    with pytest.raises(Stuck) as err:
        execute(net, TimedTrace([], [{}]*3), ChoicePolicy(strategy='first'))
    assert err.value.tick == 1


def chain(n):
    names = ['c{}'.format(k) for k in range(n+1)]
    extra = ['x{}'.format(k) for k in range(n)]
    return [(k, fair_merge(i=names[k], j=extra[k], o=names[k+1]))
            for k in range(n)]


@pytest.mark.unit
def test_plan_pipeline():
    plan = plan_tick(chain(3))
    assert plan.stages == [[0], [1], [2]]
    assert plan.broken == []


def direct_flipflop(init=('O', 'O')):
    g1 = nor_gate(a='s', b='q', o='qbar', init=init[0], name='g1')
    g2 = nor_gate(a='r', b='qbar', o='q', init=init[1], name='g2')
    return [('g1', g1), ('g2', g2)]


@pytest.mark.unit
def test_plan_flipflop():
    plan = plan_tick(direct_flipflop())
    assert plan.stages == [['g1', 'g2']]
    assert len(plan.broken) == 2
    assert plan.peeks == {'g1': frozenset(['qbar']), 'g2': frozenset(['q'])}


@pytest.mark.unit
def test_plan_blocking():
    a1, a2 = blocking_pair()
    with pytest.raises(PotentialBlocking) as err:
        plan_tick([(1, a1), (2, a2)])
    assert set(err.value.cycle) == {1, 2}
    assert err.value.cycle[0] == err.value.cycle[-1]


@pytest.mark.unit
def test_direct_flipflop_runs():
    net = compose_family(direct_flipflop(('L', 'O')))
    bit = lambda v: (Message('bit', v),)
    inp = TimedTrace.from_streams({'s': [bit('O')]*4, 'r': [bit('L')]*4})
    ex = execute(net, inp, ChoicePolicy(strategy='first'))
    q = [t[0].payload for t in ex.actions.stream('q')]
    qbar = [t[0].payload for t in ex.actions.stream('qbar')]
    assert q[-1] == 'O'
    assert qbar[-1] == 'L'
    # Both gates are moore, so the network is as well.
    assert net.full_moore().origin == 'derived'


@pytest.mark.unit
def test_hide():
    net = merge_then_delay()
    assert hide(net, []) is net
    hidden = hide(net, ['m'])
    assert hidden.outputs == frozenset(['o'])
    assert hidden.signature.hidden == frozenset(['m'])
    with pytest.raises(NotAnOutput):
        hide(net, ['i'])
    inp = TimedTrace.from_streams({'i': [msgs(1, 2), msgs(3)],
                                   'j': [msgs(4), ()]})
    full = behaviors(net, inp, k=16)
    less = behaviors(hidden, inp, k=16)
    assert less == {project_trace(b, {'i', 'j', 'o'}) for b in full}
    for b in less:
        assert 'm' not in b.channels


@pytest.mark.unit
def test_execute_hidden_network():
    hidden = hide(merge_then_delay(), ['m'])
    assert hidden.external == frozenset(['i', 'j', 'o'])
    inp = TimedTrace.from_streams({'i': [msgs(1), ()], 'j': [(), ()]})
    ex = execute(hidden, inp, ChoicePolicy(strategy='first'))
    assert ex.behavior.channels == frozenset(['i', 'j', 'o'])
    assert 'm' in ex.actions.channels
    assert ex.behavior.stream('o') == ((), msgs(1))


@pytest.mark.unit
def test_family_independent():
    fam = FamilySpec([fair_merge(i='a', j='b', o='c'), buffer(i='d', o='e')])
    net = compose_family(fam)
    assert net.inputs == frozenset(['a', 'b', 'd'])
    assert net.outputs == frozenset(['c', 'e'])
    assert plan_tick(fam).stages == [[0, 1]]
    with pytest.raises(IncompatibleSignatures):
        compose_family([buffer(), buffer(i='x')])


@pytest.mark.unit
def test_family_limit():
    members = ((n, buffer(i='i{}'.format(n), o='o{}'.format(n)))
               for n in itertools.count())
    with pytest.raises(InfiniteActivity):
        FamilySpec(members, limit=8)


@pytest.mark.unit
def test_lazy_activation():
    fam = FamilySpec([(0, buffer(i='i', o='m')), (1, buffer(i='m', o='o'))],
                     active=[0])
    net = compose_family(fam)
    one = Message('int', 1)
    inp = TimedTrace.from_streams({'i': [(one,), (), (), ()]})
    ex = execute(net, inp, ChoicePolicy(strategy='first'))
    assert [s.live for s in ex.states] == [(0,), (0,), (0, 1), (0, 1),
                                           (0, 1)]
    assert ex.actions.stream('o') == ((), (), (one,), ())


@pytest.mark.unit
def test_members_use_own_streams():
    inp = TimedTrace.from_streams({'i': [msgs(1, 2, 3)], 'j': [msgs(4, 5)],
                                   'k': [msgs(6, 7, 8)], 'l': [msgs(9)]})
    pair = compose_family([(0, fair_merge()),
                           (1, fair_merge(i='k', j='l', o='p'))])
    alone = fair_merge(i='k', j='l', o='p')
    for seed in range(5):
        ex = execute(pair, inp, ChoicePolicy(seed=seed))
        chooser = ChoicePolicy(seed=seed).chooser().child(1)
        theta, _ = alone.choose(alone.initial_states[0],
                                project_trace(inp, {'k', 'l'}).tick(1),
                                chooser)
        assert ex.actions.tick(1)['p'] == theta['p']


@pytest.mark.unit
def test_rename():
    buf = rename(buffer(), {'i': 'x', 'o': 'y'})
    assert buf.inputs == frozenset(['x'])
    assert buf.moore[0].G == frozenset(['x'])
    inp = TimedTrace.from_streams({'x': [msgs(1), ()]})
    ex = execute(buf, inp, ChoicePolicy())
    assert ex.actions.stream('y') == ((), msgs(1))
    with pytest.raises(ChannelClash):
        rename(fair_merge(), {'i': 'j'})


@pytest.mark.unit
def test_member_behaviours_accepted():
    net = merge_then_delay()
    rng = numpy.random.default_rng(4)
    for seed in range(20):
        inp = random_trace(rng, net.signature, 5, cap=3)
        ex = execute(net, inp, ChoicePolicy(seed=seed))
        for member in (fair_merge(o='m'), buffer(i='m', o='o')):
            local = trace_of(ex, member.signature.external)
            assert check_trace_membership(member, local) == ACCEPTED


@pytest.mark.unit
def test_strong_composition():
    net = compose2(buffer(i='i', o='m'), buffer(i='m', o='o'))
    assert net.full_moore() is not None
    report = check_strong_pulse(net, horizon=6, samples=40, k=2, frontier=32)
    assert report.passed


def associativity_parts():
    return (fair_merge(o='m'), buffer(i='m', o='n'), buffer(i='n', o='o'))


@pytest.mark.unit
def test_associativity_and_family():
    a, b, c = associativity_parts()
    left = compose2(compose2(a, b), c)
    a, b, c = associativity_parts()
    right = compose2(a, compose2(b, c))
    a, b, c = associativity_parts()
    flat = compose_family([a, b, c])
    inputs = [TimedTrace.from_streams({'i': [msgs(1), (), ()],
                                       'j': [msgs(2), (), ()]}),
              TimedTrace.from_streams({'i': [msgs(1), msgs(3), ()],
                                       'j': [(), msgs(2), ()]})]
    for inp in inputs:
        expected = behaviors(left, inp, k=32)
        assert behaviors(right, inp, k=32) == expected
        assert behaviors(flat, inp, k=32) == expected
