"""Named communication histories and their algebra.

A :class:`NamedSeq` is one tick of communication: every channel of its domain
maps to a (possibly empty) finite sequence of messages. A :class:`TimedTrace`
is a finite prefix of a named history, a sequence of NamedSeq values all over
the same channel set.
"""

from collections.abc import Mapping
from portsim.utils.errors import HorizonMismatch, OutOfRange, OverlappingDomains


class NamedSeq(Mapping):
    """Immutable mapping channel -> tuple of messages.

    Parameters
    ----------
    entries : dict
        Channel name to iterable of :class:`portsim.streams.message.Message`.
    channels : iterable of strings, optional
        Declared domain. Channels in ``channels`` absent from ``entries`` are
        stored explicitly as empty sequences. If given, ``entries`` must not
        mention channels outside it.
    """

    __slots__ = ('_entries', '_hash')

    def __init__(self, entries=None, channels=None):
        entries = {} if entries is None else entries
        data = {str(c): tuple(v) for c, v in entries.items()}
        if channels is not None:
            channels = frozenset(channels)
            extra = set(data) - channels
            if extra:
                raise ValueError("channels {} outside declared domain"
                                 .format(sorted(extra)))
            for c in channels:
                data.setdefault(c, ())
        self._entries = data
        self._hash = None

    @classmethod
    def empty(cls, channels=()):
        return cls({}, channels=channels)

    def __getitem__(self, channel):
        return self._entries[channel]

    def __iter__(self):
        return iter(sorted(self._entries))

    def __len__(self):
        return len(self._entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._entries.items())))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, NamedSeq):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self._entries == {c: tuple(v) for c, v in other.items()}
        return NotImplemented

    def __add__(self, other):
        return seq_sum(self, other)

    def __repr__(self):
        inner = ', '.join('{}:<{}>'.format(c, ','.join(str(m) for m in v))
                          for c, v in self.items())
        return '{' + inner + '}'

    @property
    def channels(self):
        return frozenset(self._entries)

    def is_empty(self):
        """True if no channel carries a message."""
        return all(len(v) == 0 for v in self._entries.values())

    def count(self):
        return sum(len(v) for v in self._entries.values())

    def replace(self, **kwargs):
        """Copy with some channels overwritten. Channels must be in domain."""
        data = dict(self._entries)
        for c, v in kwargs.items():
            if c not in data:
                raise KeyError(c)
            data[c] = tuple(v)
        return NamedSeq(data)

    def updated(self, entries):
        data = dict(self._entries)
        for c, v in entries.items():
            if c not in data:
                raise KeyError(c)
            data[c] = tuple(v)
        return NamedSeq(data)

    def rename(self, mapping):
        return NamedSeq({mapping.get(c, c): v for c, v in self._entries.items()})


def seq_sum(phi, psi):
    """Sum of two named sequences over disjoint domains.

    Raises
    ------
    OverlappingDomains
        If a channel belongs to both arguments.
    """
    common = phi.channels & psi.channels
    if common:
        raise OverlappingDomains(common)
    data = dict(phi.items())
    data.update(psi.items())
    return NamedSeq(data)


def project(theta, names):
    """Restriction of theta to ``names`` (intersected with its domain)."""
    names = frozenset(names)
    return NamedSeq({c: v for c, v in theta.items() if c in names})


def filter_msgs(keep, s):
    """Subsequence of ``s`` of messages satisfying ``keep``, order preserved."""
    return tuple(m for m in s if keep(m))


class TimedTrace(object):
    """Finite prefix of a named communication history.

    Parameters
    ----------
    channels : iterable of strings
        Channel set.
    ticks : iterable of :class:`NamedSeq` or dict
        Tick contents in order; tick 1 first. Each is widened to the full
        channel set with empty sequences and must not mention other channels.

    Attributes
    ----------
    horizon : int
        Number of ticks T.
    """

    __slots__ = ('channels', 'ticks')

    def __init__(self, channels, ticks=()):
        self.channels = frozenset(channels)
        self.ticks = tuple(NamedSeq(dict(t.items()), channels=self.channels)
                           for t in ticks)

    @classmethod
    def empty(cls, channels, horizon):
        return cls(channels, [NamedSeq.empty(channels)] * horizon)

    @classmethod
    def from_streams(cls, streams, horizon=None):
        """Build from ``{channel: [seq tick1, seq tick2, ...]}``.

        Shorter streams are padded with empty ticks up to the horizon (the
        longest stream if not given).
        """
        if horizon is None:
            horizon = max((len(v) for v in streams.values()), default=0)
        ticks = []
        for n in range(horizon):
            ticks.append({c: (v[n] if n < len(v) else ())
                          for c, v in streams.items()})
        return cls(streams.keys(), ticks)

    @property
    def horizon(self):
        return len(self.ticks)

    def tick(self, n):
        """Content at tick n, 1-indexed."""
        if not 1 <= n <= self.horizon:
            raise OutOfRange(n, self.horizon)
        return self.ticks[n-1]

    def stream(self, channel):
        """Timed stream of one channel as a tuple of per tick sequences."""
        return tuple(t[channel] for t in self.ticks)

    def flat(self, channel):
        """All messages of a channel, tick boundaries dropped."""
        return tuple(m for t in self.ticks for m in t[channel])

    def append(self, theta):
        return TimedTrace(self.channels, self.ticks + (theta,))

    def rename(self, mapping):
        return TimedTrace([mapping.get(c, c) for c in self.channels],
                          [t.rename(mapping) for t in self.ticks])

    def __add__(self, other):
        return sum_trace(self, other)

    def __eq__(self, other):
        if not isinstance(other, TimedTrace):
            return NotImplemented
        return self.channels == other.channels and self.ticks == other.ticks

    def __hash__(self):
        return hash((self.channels, self.ticks))

    def __len__(self):
        return self.horizon

    def __repr__(self):
        return "TimedTrace({}, T={})".format(sorted(self.channels),
                                             self.horizon)


def sum_trace(alpha, beta):
    if alpha.horizon != beta.horizon:
        raise HorizonMismatch(alpha.horizon, beta.horizon)
    common = alpha.channels & beta.channels
    if common:
        raise OverlappingDomains(common)
    return TimedTrace(alpha.channels | beta.channels,
                      [seq_sum(a, b) for a, b in zip(alpha.ticks, beta.ticks)])


def project_trace(alpha, names):
    names = frozenset(names)
    return TimedTrace(alpha.channels & names,
                      [project(t, names) for t in alpha.ticks])


def prefix(alpha, j):
    """First ``j`` ticks of alpha, same channels."""
    if not 0 <= j <= alpha.horizon:
        raise OutOfRange(j, alpha.horizon)
    return TimedTrace(alpha.channels, alpha.ticks[:j])
