import copy
from collections import namedtuple
from portsim.streams.history import NamedSeq


class MooreDecl(namedtuple('MooreDecl', ['G', 'P', 'origin'])):
    """Output on ``P`` at a tick does not depend on same-tick input on ``G``.

    ``origin`` is ``declared`` for declarations that must be verified by
    sampling before composition trusts them, and ``derived`` for
    declarations derived by composition from already trusted ones.
    """

    def __new__(cls, G, P, origin='declared'):
        return super().__new__(cls, frozenset(G), frozenset(P), origin)

    def covers(self, G, P):
        return frozenset(G) <= self.G and frozenset(P) <= self.P

    def rename(self, mapping):
        return MooreDecl([mapping.get(c, c) for c in self.G],
                         [mapping.get(c, c) for c in self.P], self.origin)


def agrees(theta, fixed):
    """True if ``theta`` carries exactly ``fixed``'s content on its channels."""
    if not fixed:
        return True
    return all(theta[c] == v for c, v in fixed.items())


class Automaton(object):
    """Timed port automaton.

    Parameters
    ----------
    signature : :class:`portsim.automata.signature.PortSignature`
        Channels of the automaton.
    initial_states : iterable
        Nonempty finite set of hashable initial states.
    transitions : callable
        ``transitions(state, inp)`` yields ``(theta, next_state)`` pairs where
        ``inp`` is a NamedSeq over the inputs and ``theta`` a NamedSeq over
        all channels of the signature with ``project(theta, I) == inp``. The
        first option yielded is the canonical one.
    moore : list of tuples
        Declared ``(G, P)`` pairs, see :class:`MooreDecl`.
    bound_hint : int or dict, optional
        Maximum number of messages per tick on each input for exhaustive
        checking.
    sampler : callable, optional
        ``sampler(state, inp, rng)`` returning one transition drawn uniformly
        at random, for automata whose option lists are too long to build.
    constrained : callable, optional
        ``constrained(state, inp, fixed)`` yielding only transitions whose
        actions agree with the NamedSeq ``fixed``. Defaults to filtering
        ``transitions``.
    states : iterable, optional
        Complete (finite) state set, if known.
    name : string
        Used in error messages and logs.
    """

    def __init__(self, signature, initial_states, transitions, moore=(),
                 bound_hint=None, sampler=None, constrained=None, states=None,
                 name=''):
        self.signature = signature
        self._initial = tuple(initial_states)
        if len(self._initial) == 0:
            raise ValueError("automaton {} has no initial state".format(name))
        self._transitions = transitions
        self._sampler = sampler
        self._constrained = constrained
        self.moore = [d if isinstance(d, MooreDecl) else MooreDecl(*d)
                      for d in moore]
        self.bound_hint = bound_hint
        self.states = tuple(states) if states is not None else None
        self.name = name
        self._verified = {}

    @property
    def inputs(self):
        return self.signature.inputs

    @property
    def outputs(self):
        return self.signature.outputs

    @property
    def channels(self):
        return self.signature.channels

    @property
    def external(self):
        return self.signature.external

    @property
    def initial_states(self):
        return self._initial

    def initial(self, chooser):
        return self._initial[chooser.pick(len(self._initial))]

    def transitions(self, state, inp):
        return iter(self._transitions(state, inp))

    def constrained(self, state, inp, fixed):
        if self._constrained is not None:
            return iter(self._constrained(state, inp, fixed))
        return (t for t in self.transitions(state, inp) if agrees(t[0], fixed))

    def choose(self, state, inp, chooser, fixed=None):
        """One transition picked according to ``chooser``, None if stuck."""
        if (not chooser.deterministic and self._sampler is not None
                and not fixed):
            return self._sampler(state, inp, chooser.rng)
        if fixed:
            options = self.constrained(state, inp, fixed)
        else:
            options = self.transitions(state, inp)
        if chooser.deterministic:
            return next(options, None)
        options = list(options)
        if not options:
            return None
        return options[chooser.pick(len(options))]

    def declare_moore(self, G, P, origin='declared'):
        self.moore.append(MooreDecl(G, P, origin))

    def full_moore(self):
        """Declaration covering all inputs and all outputs, if any."""
        for d in self.moore:
            if d.covers(self.inputs, self.outputs):
                return d
        return None

    def covering(self, G, P):
        return [d for d in self.moore if d.covers(G, P)]

    def with_signature(self, signature, moore=None):
        new = copy.copy(self)
        new.signature = signature
        new.moore = list(self.moore if moore is None else moore)
        new._verified = dict(self._verified)
        return new

    def empty_input(self):
        return NamedSeq.empty(self.inputs)

    def __repr__(self):
        return "Automaton({}, {!r})".format(self.name or '?', self.signature)
