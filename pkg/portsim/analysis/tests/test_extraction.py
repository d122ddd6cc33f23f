import pytest
from portsim.analysis.extraction import (
        extract_counts,
        extract_messages,
        extract_trace,
        get_metadata,
        get_param,
        set_info
        )
from portsim.sim.calc import archive_run, run
from portsim.sim.scenario import parse_scenario
from portsim.streams.text import format_trace

MERGE = """\
network merge
use fair_merge as fm
input fm.i @1 : int:1 int:2
input fm.j @2 : int:3
horizon 3
seed 5
policy random
"""


@pytest.mark.unit
def test_archive_round_trip(tmp_path):
    filename = str(tmp_path / 'run.h5')
    sc = parse_scenario(MERGE)
    options = {}
    trace = run(sc, options)
    archive_run(filename, sc, trace, options)
    md = get_metadata(filename)
    assert md['scenario']['network'] == 'merge'
    assert md['options']['rng_seed'] == 5
    assert get_param(filename, ['scenario', 'horizon']) == 3
    assert get_param(filename, ['scenario', 'missing']) is None
    counts = extract_counts(filename)
    assert list(counts.columns) == ['fm.i', 'fm.j', 'fm.o']
    assert list(counts.index) == [1, 2, 3]
    assert list(counts['fm.i']) == [2, 0, 0]
    assert list(counts['fm.o']) == [2, 1, 0]
    assert format_trace(extract_trace(filename)) == format_trace(trace)


@pytest.mark.unit
def test_extract_messages(tmp_path):
    filename = str(tmp_path / 'run.h5')
    sc = parse_scenario(MERGE)
    options = {}
    archive_run(filename, sc, run(sc, options), options)
    df = extract_messages(filename)
    assert len(df) == 6
    out = df[df.channel == 'fm.o'].sort_values(['tick', 'position'])
    assert sorted(out.payload[out.tick == 1]) == [1, 2]
    assert list(out.payload[out.tick == 2]) == [3]
    df = set_info(df, get_metadata(filename))
    assert set(df.network) == {'merge'}
    assert set(df.rng_seed) == {5}
