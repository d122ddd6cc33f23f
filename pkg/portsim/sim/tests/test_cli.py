import json
import pytest
from portsim.sim.cli import main, parse_args
from portsim.streams.text import parse_trace

LATCH = """\
network latch
use flipflop as ff
input s @1..6 : bit:O
input r @1..6 : bit:L
seed 3
"""

MERGE = """\
use fair_merge as fm
input fm.i @1..4 : int:1
input fm.j @1..4 : int:2
"""


def write(tmp_path, name, text):
    filename = tmp_path / name
    filename.write_text(text)
    return str(filename)


@pytest.mark.unit
def test_parse_args():
    options = parse_args(['check', 'x.scn', '--property', 'reactivity',
                          '--samples', '20', '-vv'])
    assert options.command == 'check'
    assert options.prop == 'reactivity'
    assert options.samples == 20
    assert options.budget is None
    assert options.verbose == 2
    options = parse_args(['run', 'x.scn', '--trace', 'out.txt'])
    assert options.trace == 'out.txt'
    assert options.archive is None
    with pytest.raises(SystemExit):
        parse_args(['check', 'x.scn'])


@pytest.mark.unit
def test_run_trace(tmp_path, capsys):
    scn = write(tmp_path, 'latch.scn', LATCH)
    out = str(tmp_path / 'trace.txt')
    assert main(['run', scn, '--trace', out]) == 0
    with open(out) as f:
        text = f.read()
    trace = parse_trace(text)
    assert trace.horizon == 6
    assert main(['run', scn]) == 0
    assert capsys.readouterr().out == text


@pytest.mark.unit
def test_run_all_behaviours(tmp_path, capsys):
    scn = write(tmp_path, 'merge.scn',
                "use fair_merge as fm\ninput fm.i @1 : int:1\n"
                "input fm.j @1 : int:2\npolicy all<=4\n")
    assert main(['run', scn]) == 0
    out = capsys.readouterr().out
    assert '# behaviour 1' in out and '# behaviour 2' in out
    assert '# behaviour 3' not in out
    arch = str(tmp_path / 'run.h5')
    assert main(['run', scn, '--archive', arch]) == 2


@pytest.mark.unit
def test_check_exit_codes(tmp_path, capsys):
    latch = write(tmp_path, 'latch.scn', LATCH)
    merge = write(tmp_path, 'merge.scn', MERGE)
    opts = write(tmp_path, 'opts.json', json.dumps({'horizon': 5,
                                                    'rng_seed': 1}))
    assert main(['check', latch, '-p', 'stability(3)']) == 0
    assert 'pass' in capsys.readouterr().out
    assert main(['check', merge, '-p', 'strong_pulse', '-s', '100',
                 '--options', opts]) == 1
    out = capsys.readouterr().out
    assert 'FAIL' in out
    assert 'Witness' in out
    assert main(['check', merge, '-p', 'weak_pulse', '-s', '20',
                 '--options', opts]) == 0


@pytest.mark.unit
def test_usage_errors(tmp_path, capsys):
    bad = write(tmp_path, 'bad.scn', "use widget as w\n")
    assert main(['run', bad]) == 2
    assert 'line 1' in capsys.readouterr().err
    latch = write(tmp_path, 'latch.scn', LATCH)
    assert main(['check', latch, '-p', 'liveness']) == 2
    assert main(['run', str(tmp_path / 'missing.scn')]) == 2
    stray = write(tmp_path, 'stray.scn', LATCH + "input x @1 : bit:O\n")
    assert main(['run', stray]) == 2


@pytest.mark.unit
def test_list_kinds(capsys):
    assert main(['list-kinds']) == 0
    out = capsys.readouterr().out
    for kind in ('fair_merge', 'buffer', 'nor', 'queue_element', 'queue',
                 'flipflop'):
        assert kind in out
