"""Line oriented text format for timed traces.

One line per (tick, channel), ticks ascending and channels in lexicographic
order within a tick::

    tick 1 i : int:1 int:2
    tick 1 o : -
    tick 2 i : -
    tick 2 o : int:1@fm.o->buf.i

The format is emitted and parsed bit-exactly.
"""

from portsim.streams.history import NamedSeq, TimedTrace
from portsim.streams.message import Message
from portsim.utils.errors import ParseError


def format_line(n, channel, seq):
    body = ' '.join(m.render() for m in seq) if seq else '-'
    return 'tick {} {} : {}'.format(n, channel, body)


def format_trace(trace):
    lines = []
    channels = sorted(trace.channels)
    for n, theta in enumerate(trace.ticks, start=1):
        for c in channels:
            lines.append(format_line(n, c, theta[c]))
    return ''.join(l + '\n' for l in lines)


def parse_trace(text, channels=None):
    """Inverse of :func:`format_trace`.

    Parameters
    ----------
    text : string
        Trace text. Blank lines and ``#`` comments are ignored.
    channels : iterable of strings, optional
        Channel set. Inferred from the lines if not given.

    Returns
    -------
    trace : :class:`portsim.streams.history.TimedTrace`
    """
    entries = {}
    seen = set()
    horizon = 0
    for iline, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(' : ')
        if not sep:
            head, sep, body = line.partition(' :')
        words = head.split()
        if not sep or len(words) != 3 or words[0] != 'tick':
            raise ParseError(iline, "expected 'tick <n> <channel> : ...'")
        try:
            n = int(words[1])
        except ValueError:
            raise ParseError(iline, "bad tick number {!r}".format(words[1]))
        if n < 1:
            raise ParseError(iline, "ticks are numbered from 1")
        channel = words[2]
        body = body.strip()
        if body in ('-', ''):
            seq = ()
        else:
            try:
                seq = tuple(Message.parse(tok) for tok in body.split())
            except ValueError as err:
                raise ParseError(iline, str(err))
        if (n, channel) in entries:
            raise ParseError(iline, "duplicate line for tick {} channel {}"
                             .format(n, channel))
        entries[(n, channel)] = seq
        seen.add(channel)
        horizon = max(horizon, n)
    if channels is None:
        channels = seen
    else:
        channels = frozenset(channels)
        unknown = seen - channels
        if unknown:
            raise ParseError(0, "unknown channels {}".format(sorted(unknown)))
    ticks = []
    for n in range(1, horizon+1):
        ticks.append(NamedSeq({c: entries.get((n, c), ()) for c in channels}))
    return TimedTrace(channels, ticks)
