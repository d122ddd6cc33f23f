import pytest
from portsim.streams.history import TimedTrace
from portsim.streams.message import Message, msgs
from portsim.streams.text import format_trace, parse_trace
from portsim.utils.errors import ParseError


@pytest.mark.unit
def test_format_trace():
    trace = TimedTrace.from_streams({
        'o': [(), msgs(1, 2)],
        'i': [(Message('int', 1, ('env', 'i')),), ()],
        })
    text = format_trace(trace)
    expected = ("tick 1 i : int:1@env->i\n"
                "tick 1 o : -\n"
                "tick 2 i : -\n"
                "tick 2 o : int:1 int:2\n")
    assert text == expected
    assert parse_trace(text) == trace
    assert format_trace(parse_trace(text)) == text


@pytest.mark.unit
def test_parse_fills_missing_lines():
    trace = parse_trace("tick 2 a : x:foo\n", channels=['a', 'b'])
    assert trace.horizon == 2
    assert trace.tick(1)['a'] == ()
    assert trace.tick(2)['a'] == (Message('x', 'foo'),)
    assert trace.tick(2)['b'] == ()


@pytest.mark.unit
def test_parse_errors():
    with pytest.raises(ParseError) as err:
        parse_trace("tick 1 a : int:1\nbogus line\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_trace("tick 0 a : -\n")
    with pytest.raises(ParseError):
        parse_trace("tick 1 a : nosort\n")
    with pytest.raises(ParseError):
        parse_trace("tick 1 a : -\ntick 1 a : -\n")


@pytest.mark.unit
def test_awkward_payloads_survive():
    awkward = (Message('str', 'a#b'), Message('str', '5'), Message('int', 5),
               Message('str', 'two words'), Message('str', '"q"'),
               Message('str', 'x@y->z', ('env', 'o')), Message('str', ''),
               Message('str', '1/Nil'))
    trace = TimedTrace.from_streams({'o': [awkward]})
    text = format_trace(trace)
    assert 'str:1/Nil' in text
    assert 'int:5 ' in text
    back = parse_trace(text)
    assert back == trace
    assert back.tick(1)['o'][1].payload == '5'
    assert back.tick(1)['o'][2].payload == 5
