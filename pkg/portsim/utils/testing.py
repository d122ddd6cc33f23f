"""Shared helpers for building stimuli in tests."""

import numpy
from portsim.streams.history import TimedTrace
from portsim.streams.message import Message


def seeded(seed=7):
    return numpy.random.default_rng(seed)


def constant_trace(horizon, **seqs):
    """The same sequence on each channel at every tick 1..T."""
    return TimedTrace.from_streams({c: [tuple(s)] * horizon
                                    for c, s in seqs.items()}, horizon)


def sparse_trace(horizon, channels, at):
    """Trace that is empty except at the given ticks.

    Parameters
    ----------
    at : dict
        tick -> {channel: sequence}, ticks counted from 1.
    """
    streams = {c: [()] * horizon for c in channels}
    for n, theta in at.items():
        for c, seq in theta.items():
            streams[c][n-1] = tuple(seq)
    return TimedTrace.from_streams(streams, horizon)


def random_messages(rng, n, sort='int', values=range(4)):
    values = list(values)
    return tuple(Message(sort, values[int(k)])
                 for k in rng.integers(len(values), size=n))
