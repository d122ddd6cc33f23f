import h5py
import json
import numpy
import pandas as pd
from portsim.streams.text import parse_trace
from portsim.utils.misc import get_from_dict


def get_metadata(filename):
    with h5py.File(filename, 'r') as fh5:
        metadata = json.loads(fh5['metadata'][()])
    return metadata


def get_param(filename, param):
    """Value of a nested metadata entry, None if missing.

    Parameters
    ----------
    param : list
        Key path, e.g. ``['scenario', 'network']``.
    """
    md = get_metadata(filename)
    return get_from_dict(md, param)


def extract_counts(filename):
    """Message counts per tick and channel.

    Returns
    -------
    counts : :class:`pandas.DataFrame`
        One row per tick (index from 1), one column per channel.
    """
    with h5py.File(filename, 'r') as fh5:
        data = fh5['counts'][:]
        header = fh5['channels'][:]
    header = numpy.array([h.decode('utf-8') for h in header])
    df = pd.DataFrame(data, columns=header)
    df.index = numpy.arange(1, len(df)+1)
    df.index.name = 'tick'
    return df


def extract_trace(filename):
    """The archived trace, parsed back into a TimedTrace."""
    with h5py.File(filename, 'r') as fh5:
        text = fh5['trace'][()]
    if isinstance(text, bytes):
        text = text.decode('utf-8')
    channels = extract_counts(filename).columns
    return parse_trace(text, channels=list(channels))


def extract_messages(filename):
    """Long format table of every archived message.

    Returns
    -------
    messages : :class:`pandas.DataFrame`
        Columns tick, channel, position, sort, payload, sender and receiver.
    """
    trace = extract_trace(filename)
    rows = []
    for n, tick in enumerate(trace.ticks, start=1):
        for c in sorted(trace.channels):
            for k, m in enumerate(tick[c]):
                rows.append((n, c, k, m.sort, m.payload, m.sender,
                             m.receiver))
    return pd.DataFrame(rows, columns=['tick', 'channel', 'position', 'sort',
                                       'payload', 'sender', 'receiver'])


def set_info(frame, md):
    """Add scenario columns to a table extracted from an archive."""
    scenario = md.get('scenario', {})
    options = md.get('options', {})
    frame['network'] = scenario.get('network')
    frame['horizon'] = scenario.get('horizon')
    frame['policy'] = scenario.get('policy')
    frame['rng_seed'] = options.get('rng_seed', scenario.get('seed'))
    return frame
