import json
import numpy
import pytest
from portsim.streams.message import Message
from portsim.utils.errors import NotReactive, ParseError, PortsimError
from portsim.utils.io import get_input_value, to_json
from portsim.utils.misc import get_from_dict, serialise, stable_index
from portsim.utils.report import Report, merge_reports
from portsim.utils.testing import (
        constant_trace,
        random_messages,
        seeded,
        sparse_trace
        )


@pytest.mark.unit
def test_get_input_value(capsys):
    inputs = {'nsamples': 20, 'T': None}
    assert get_input_value(inputs, 'samples', default=5,
                           alias=['nsamples']) == 20
    assert get_input_value(inputs, 'horizon', default=12, alias=['T'],
                           verbose=True) == 12
    assert '# Note: horizon not specified' in capsys.readouterr().out


@pytest.mark.unit
def test_serialise():
    class Opts(object):
        def __init__(self):
            self.seed = numpy.int64(3)
            self.channels = frozenset(['b', 'a'])
            self.pair = (Message('int', 1), 2)
            self.nested = {1: 'x'}
            self.fn = lambda x: x
            self._private = 1
    d = serialise(Opts())
    assert d == {'seed': 3, 'channels': ['a', 'b'], 'pair': ['int:1', 2],
                 'nested': {'1': 'x'}}
    assert 'fn' in serialise(Opts(), verbose=1)
    assert json.loads(to_json({'opts': Opts()}))['opts']['seed'] == 3


@pytest.mark.unit
def test_misc():
    d = {'scenario': {'medium': {'delay': 'cma'}}}
    assert get_from_dict(d, ['scenario', 'medium', 'delay']) == 'cma'
    assert get_from_dict(d, ['scenario', 'missing', 'delay']) is None
    assert stable_index(4) == 4
    assert stable_index(('a', 1)) == stable_index(('a', 1))
    assert stable_index(-1) >= 0


@pytest.mark.unit
def test_reports():
    ok = Report('weak_pulse', True, samples=10)
    bad = Report('weak_pulse', False, samples=3, witness={'tick': 2},
                 detail='differs')
    assert ok and not bad
    assert 'pass (10 samples)' in ok.summary()
    assert 'FAIL after 3 samples' in bad.summary()
    merged = merge_reports([ok, bad, ok])
    assert not merged.passed
    assert merged.samples == 23
    assert merged.witness == {'tick': 2}
    merged = merge_reports([ok, ok], prop='weak')
    assert merged.passed and merged.prop == 'weak'


@pytest.mark.unit
def test_errors():
    err = ParseError(4, 'bad tick')
    assert isinstance(err, PortsimError)
    assert err.line == 4 and str(err) == 'line 4: bad tick'
    err = NotReactive('s', {'i': ()})
    assert err.state == 's'


@pytest.mark.unit
def test_testing_helpers():
    trace = constant_trace(3, a=[Message('int', 1)])
    assert trace.stream('a') == ((Message('int', 1),),) * 3
    trace = sparse_trace(4, ['a', 'b'], {2: {'b': [Message('int', 2)]}})
    assert trace.horizon == 4
    assert trace.flat('b') == (Message('int', 2),)
    assert trace.flat('a') == ()
    seq = random_messages(seeded(1), 5, values=[7])
    assert seq == (Message('int', 7),) * 5
