import numpy
import pytest
from portsim.automata.checks import ACCEPTED, check_trace_membership
from portsim.automata.execution import execute
from portsim.automata.policy import ChoicePolicy
from portsim.automata.sampling import random_trace
from portsim.blackbox.functions import (
        check_fn_pulse,
        closure_probe,
        constant,
        delay,
        evaluate,
        functions_of,
        increment,
        policies_for,
        wire
        )
from portsim.blackbox.network import compose2_fn, compose_family_fn, hide_fn
from portsim.streams.history import TimedTrace, project_trace, sum_trace
from portsim.streams.message import Message, msgs
from portsim.systems.buffer import buffer
from portsim.systems.gates import nor_gate
from portsim.systems.merge import fair_merge
from portsim.utils.errors import (
        ChannelClash,
        ChannelMismatch,
        NotAnOutput,
        PotentialBlocking
        )


@pytest.mark.unit
def test_wire_and_delay():
    inp = TimedTrace.from_streams({'i': [msgs(1), msgs(2)]})
    out = evaluate(wire(), inp)
    assert out == inp.rename({'i': 'o'})
    out = evaluate(delay(), inp)
    assert out.stream('o') == ((), msgs(1))
    with pytest.raises(ChannelMismatch):
        evaluate(delay(), TimedTrace.from_streams({'x': [()]}))


@pytest.mark.unit
def test_fn_pulse():
    assert check_fn_pulse(wire(), 'weak', samples=100).passed
    report = check_fn_pulse(wire(), 'strong', samples=100)
    assert not report.passed
    assert report.witness['tick'] >= 1
    assert check_fn_pulse(delay(), 'strong', samples=100).passed
    assert check_fn_pulse(constant(seq=msgs(7), inputs=['i']), 'strong',
                          samples=100).passed
    assert check_fn_pulse(increment(), 'weak', samples=100).passed


@pytest.mark.unit
def test_pipeline_fn():
    comp = compose2_fn(wire(i='i', o='m'), delay(i='m', o='o'))
    assert comp.inputs == frozenset(['i'])
    assert comp.outputs == frozenset(['m', 'o'])
    rng = numpy.random.default_rng(1)
    for _ in range(10):
        inp = random_trace(rng, comp.members[0].signature, 6)
        out = evaluate(comp.members[0], inp)
        expected = evaluate(delay(), inp)
        assert out.stream('o') == expected.stream('o')


def delay_feedback():
    return compose2_fn(delay(i='x', o='y'), increment(i='y', o='x'))


@pytest.mark.unit
def test_delay_feedback():
    comp = delay_feedback()
    assert comp.inputs == frozenset()
    out = evaluate(comp.members[0], TimedTrace([], [{}]*5))
    ints = lambda *v: tuple((Message('int', x),) for x in v)
    assert out.stream('y') == ((),) + ints(0, 1, 2, 3)
    assert out.stream('x') == ints(0, 1, 2, 3, 4)
    # o = f1(p) and p = f2(o) hold tick by tick.
    x = project_trace(out, {'x'})
    y = project_trace(out, {'y'})
    assert evaluate(delay(i='x', o='y'), x) == y
    assert evaluate(increment(i='y', o='x'), y) == x


@pytest.mark.unit
def test_weak_loop_refused():
    with pytest.raises(PotentialBlocking) as err:
        compose2_fn(wire(i='x', o='y'), wire(i='y', o='x'))
    assert err.value.G == frozenset(['x'])
    assert err.value.P == frozenset(['y'])
    with pytest.raises(ChannelClash):
        compose2_fn(wire(i='a', o='o'), wire(i='b', o='o'))


@pytest.mark.unit
def test_family_fn():
    stages = [wire(i='a', o='b'), delay(i='b', o='c'), wire(i='c', o='d')]
    fam = compose_family_fn(stages)
    nested = compose2_fn(compose2_fn(stages[0], stages[1]), stages[2])
    rng = numpy.random.default_rng(2)
    for _ in range(10):
        inp = random_trace(rng, fam.members[0].signature, 5)
        out = evaluate(fam.members[0], inp)
        assert out == evaluate(nested.members[0], inp)
        assert out.stream('d') == evaluate(delay(i='a', o='d'),
                                           inp).stream('d')
    with pytest.raises(ChannelClash):
        compose_family_fn([wire(i='a', o='b'), wire(i='c', o='b')])


@pytest.mark.unit
def test_hide_fn():
    comp = delay_feedback()
    assert hide_fn(comp, []) is comp
    hidden = hide_fn(comp, ['x'])
    assert hidden.outputs == frozenset(['y'])
    inp = TimedTrace([], [{}]*4)
    full = evaluate(comp.members[0], inp)
    assert evaluate(hidden.members[0], inp) == project_trace(full, {'y'})
    empty = hide_fn(comp, ['x', 'y'])
    out = evaluate(empty.members[0], inp)
    assert out.channels == frozenset()
    assert out.horizon == 4
    with pytest.raises(NotAnOutput):
        hide_fn(comp, ['z'])


@pytest.mark.unit
def test_functions_of_deterministic():
    gate = nor_gate(init='L')
    comp = functions_of(gate, policies_for([0, 1]))
    bit = lambda v: (Message('bit', v),)
    inp = TimedTrace.from_streams({'a': [bit('O'), bit('L'), bit('O')],
                                   'b': [bit('O'), bit('O'), bit('O')]})
    ex = execute(gate, inp, ChoicePolicy(seed=0))
    for f in comp:
        assert evaluate(f, inp) == project_trace(ex.actions, {'o'})


@pytest.mark.unit
def test_functions_of_merge():
    comp = functions_of(fair_merge(), policies_for([0, 1]))
    inp = TimedTrace.from_streams({'i': [msgs(1, 2, 3)], 'j': [msgs(4, 5, 6)]})
    first, second = [evaluate(f, inp) for f in comp]
    assert first != second


@pytest.mark.unit
def test_functions_of_buffer():
    buf = buffer()
    comp = functions_of(buf, policies_for(range(4)))
    rng = numpy.random.default_rng(3)
    for _ in range(10):
        inp = random_trace(rng, buf.signature, 8, cap=3)
        for f in comp:
            out = evaluate(f, inp)
            sent = inp.flat('i')
            got = out.flat('o')
            assert got == sent[:len(got)]
            assert check_trace_membership(buf, sum_trace(inp, out)) == ACCEPTED


@pytest.mark.unit
def test_closure_probe():
    single = functions_of(buffer(), policies_for([5]))
    inputs = [TimedTrace.from_streams({'i': [msgs(k, k+1), (), ()]})
              for k in range(4)]
    report = closure_probe(single, inputs)
    assert report.passed
    pair = functions_of(fair_merge(), policies_for([0, 1]))
    inputs = [TimedTrace.from_streams({'i': [msgs(k, 1, 2)], 'j': [msgs(3)]})
              for k in range(4)]
    report = closure_probe(pair, inputs)
    assert report.samples == 8
