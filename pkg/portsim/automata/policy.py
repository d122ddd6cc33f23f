"""Deterministic resolution of nondeterministic choices.

A :class:`ChoicePolicy` names a seed and a strategy; each run builds a fresh
:class:`Chooser` tree from it. Sub-choosers are derived from the run seed with
numpy's ``SeedSequence`` spawn keys, so a composed automaton's member ``j``
draws from a stream that depends only on the seed and on ``j``.
"""

import numpy
from portsim.utils.misc import stable_index

STRATEGIES = ('first', 'random', 'all')


class ChoicePolicy(object):
    """How to resolve nondeterminism in a run.

    Parameters
    ----------
    seed : int
        Run seed.
    strategy : string
        ``first`` (always the first enumerated option), ``random`` (uniform
        over the enumerated options) or ``all`` (enumerate up to ``k``
        options per step; only meaningful for behaviour enumeration, single
        runs take the first option).
    k : int
        Branching bound for ``all``.
    """

    def __init__(self, seed=0, strategy='random', k=4):
        if strategy not in STRATEGIES:
            raise ValueError("unknown strategy {!r}".format(strategy))
        self.seed = int(seed)
        self.strategy = strategy
        self.k = int(k)

    @classmethod
    def from_string(cls, text, seed=0):
        """Parse ``first``, ``random`` or ``all<=k``."""
        text = text.strip()
        if text.startswith('all'):
            k = 4
            if '<=' in text:
                k = int(text.split('<=', 1)[1])
            return cls(seed, 'all', k)
        return cls(seed, text)

    def chooser(self):
        return Chooser(self.seed, self.strategy)

    def __repr__(self):
        if self.strategy == 'all':
            return "ChoicePolicy(seed={}, all<={})".format(self.seed, self.k)
        return "ChoicePolicy(seed={}, {})".format(self.seed, self.strategy)


class Chooser(object):
    """Stateful random stream for one run (or one member of a run).

    Children are cached so that repeated requests for the same index within a
    run continue the same stream.
    """

    def __init__(self, seed, strategy='random', key=()):
        self.seed = seed
        self.strategy = strategy
        self.key = tuple(key)
        ss = numpy.random.SeedSequence(entropy=seed, spawn_key=self.key)
        self.rng = numpy.random.default_rng(ss)
        self._children = {}

    @property
    def deterministic(self):
        return self.strategy != 'random'

    def pick(self, n):
        """Index of the option to take among ``n``."""
        if n <= 0:
            raise ValueError("nothing to choose from")
        if self.deterministic or n == 1:
            return 0
        return int(self.rng.integers(n))

    def child(self, index):
        try:
            return self._children[index]
        except KeyError:
            c = Chooser(self.seed, self.strategy,
                        self.key + (stable_index(index),))
            self._children[index] = c
            return c
