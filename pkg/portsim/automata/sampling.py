"""Random and exhaustive input generation for property checks."""

import itertools
import numpy
from portsim.streams.history import NamedSeq, TimedTrace

GEOMETRIC_P = 0.5
MAX_LENGTH = 8


def random_seq(rng, letters, p=GEOMETRIC_P, cap=MAX_LENGTH):
    """Finite message sequence with geometrically distributed length."""
    n = min(int(rng.geometric(p)) - 1, cap)
    if n == 0 or len(letters) == 0:
        return ()
    idx = rng.integers(len(letters), size=n)
    return tuple(letters[i] for i in idx)


def random_input(rng, signature, channels=None, cap=MAX_LENGTH):
    if channels is None:
        channels = signature.inputs
    return NamedSeq({c: random_seq(rng, signature.letters(c), cap=cap)
                     for c in sorted(channels)})


def random_trace(rng, signature, horizon, channels=None, cap=MAX_LENGTH):
    if channels is None:
        channels = signature.inputs
    return TimedTrace(channels, [random_input(rng, signature, channels, cap)
                                 for _ in range(horizon)])


def agreeing_pair(rng, signature, horizon, n, vary=None, cap=MAX_LENGTH):
    """Two input traces that agree through tick ``n``.

    Parameters
    ----------
    n : int
        Common prefix length, 0 <= n < horizon.
    vary : iterable of strings, optional
        If given, at tick n+1 the second trace differs from the first only on
        these channels; later ticks are independent.

    Returns
    -------
    iota, kappa : :class:`portsim.streams.history.TimedTrace`
    """
    iota = random_trace(rng, signature, horizon, cap=cap)
    ticks = list(iota.ticks[:n])
    if n < horizon:
        step = iota.ticks[n]
        if vary is None:
            ticks.append(random_input(rng, signature, cap=cap))
        else:
            fresh = {c: random_seq(rng, signature.letters(c), cap=cap)
                     for c in vary if c in step}
            ticks.append(step.updated(fresh))
        for _ in range(n+1, horizon):
            ticks.append(random_input(rng, signature, cap=cap))
    return iota, TimedTrace(signature.inputs, ticks)


def seqs_up_to(letters, bound):
    out = []
    for length in range(bound+1):
        out.extend(itertools.product(letters, repeat=length))
    return out


def bounded_inputs(signature, bound):
    """Every input NamedSeq with at most ``bound[c]`` messages on channel c.

    ``bound`` is an int or a dict channel -> int.
    """
    channels = sorted(signature.inputs)
    if isinstance(bound, dict):
        limits = [bound[c] for c in channels]
    else:
        limits = [bound] * len(channels)
    choices = [seqs_up_to(signature.letters(c), b)
               for c, b in zip(channels, limits)]
    for combo in itertools.product(*choices):
        yield NamedSeq(dict(zip(channels, combo)))


def make_rng(seed):
    return numpy.random.default_rng(seed)
