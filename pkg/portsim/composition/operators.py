"""Composition, hiding and renaming of automata."""

from portsim.automata.automaton import Automaton
from portsim.automata.checks import trusted_moore
from portsim.automata.signature import PortSignature
from portsim.composition.network import ComposedAutomaton, FamilySpec
from portsim.utils.errors import (
        ChannelClash,
        IncompatibleSignatures,
        NotAnOutput,
        PotentialBlocking
        )


def compose_signatures(s1, s2):
    """Signature of the composition of two compatible signatures.

    Raises
    ------
    IncompatibleSignatures
        With a witness channel if the outputs overlap or a hidden channel of
        one is used by the other.
    """
    for clash, reason in ((s1.outputs & s2.outputs, 'output of both'),
                          (s1.hidden & s2.channels, 'hidden in the first'),
                          (s2.hidden & s1.channels, 'hidden in the second')):
        if clash:
            raise IncompatibleSignatures(sorted(clash)[0], reason)
    inputs = (s1.inputs - s2.outputs) | (s2.inputs - s1.outputs)
    alphabet = dict(s1.alphabet)
    alphabet.update(s2.alphabet)
    return PortSignature(inputs, s1.outputs | s2.outputs,
                         s1.hidden | s2.hidden, alphabet)


def all_strong(automata):
    """Every member trusted moore on all of its inputs and outputs."""
    return all(a.full_moore() is not None
               and trusted_moore(a, a.inputs, a.outputs) for a in automata)


def compose2(a1, a2, force=False, name=None):
    """Binary composition of two automata.

    Parameters
    ----------
    a1, a2 : :class:`portsim.automata.automaton.Automaton`
        Compatible automata.
    force : bool
        Compose even when blocking is possible; blocking then shows up as a
        stuck execution.

    Raises
    ------
    IncompatibleSignatures
    PotentialBlocking
        If G = I1 & O2 and P = I2 & O1 are both nonempty and neither side is
        trusted moore on them.
    """
    sig = compose_signatures(a1.signature, a2.signature)
    G = a1.inputs & a2.outputs
    P = a2.inputs & a1.outputs
    if name is None:
        name = '({} * {})'.format(a1.name or '?', a2.name or '?')
    try:
        net = ComposedAutomaton(FamilySpec([(0, a1), (1, a2)]), force=force,
                                name=name)
    except PotentialBlocking as err:
        raise PotentialBlocking(G, P, cycle=err.cycle)
    assert net.signature == sig
    if all_strong((a1, a2)):
        net.declare_moore(net.inputs, net.outputs, origin='derived')
    return net


def compose_family(family, force=False, name='family'):
    """Composition of an indexed family (:class:`FamilySpec`)."""
    if not isinstance(family, FamilySpec):
        family = FamilySpec(family)
    net = ComposedAutomaton(family, force=force, name=name)
    if all_strong([a for _, a in family.members]):
        net.declare_moore(net.inputs, net.outputs, origin='derived')
    return net


def hide(a, channels):
    """Reclassify output channels as hidden.

    Raises
    ------
    NotAnOutput
        If a channel is not an output of ``a``.
    """
    channels = frozenset(channels)
    for c in sorted(channels):
        if c not in a.outputs:
            raise NotAnOutput(c)
    if not channels:
        return a
    sig = PortSignature(a.inputs, a.outputs - channels,
                        a.signature.hidden | channels, a.signature.alphabet)
    moore = [type(d)(d.G, d.P - channels, d.origin) for d in a.moore]
    return a.with_signature(sig, moore=[d for d in moore if d.P])


class RenamedAutomaton(Automaton):
    """``base`` with channels renamed by ``mapping`` (old -> new)."""

    def __init__(self, base, mapping):
        mapping = {k: v for k, v in mapping.items() if k in base.channels}
        targets = list(mapping.values())
        if len(set(targets)) != len(targets):
            raise ChannelClash(sorted(targets)[0], 'renamed twice')
        kept = base.channels - set(mapping)
        for c in targets:
            if c in kept:
                raise ChannelClash(c, 'already a channel of {}'
                                   .format(base.name))
        self.base = base
        self.mapping = mapping
        self.inverse = {v: k for k, v in mapping.items()}
        bound = base.bound_hint
        if isinstance(bound, dict):
            bound = {mapping.get(c, c): b for c, b in bound.items()}
        super().__init__(base.signature.rename(mapping), base.initial_states,
                         self._renamed, bound_hint=bound,
                         moore=[d.rename(mapping) for d in base.moore],
                         constrained=self._renamed_constrained,
                         states=base.states, name=base.name)
        self._verified = {d.rename(mapping): ok
                          for d, ok in base._verified.items()}

    def _forward(self, step):
        theta, nxt = step
        return theta.rename(self.mapping), nxt

    def _renamed(self, state, inp):
        for step in self.base.transitions(state, inp.rename(self.inverse)):
            yield self._forward(step)

    def _renamed_constrained(self, state, inp, fixed):
        for step in self.base.constrained(state, inp.rename(self.inverse),
                                          fixed.rename(self.inverse)):
            yield self._forward(step)

    def initial(self, chooser):
        return self.base.initial(chooser)

    def choose(self, state, inp, chooser, fixed=None):
        if fixed:
            fixed = fixed.rename(self.inverse)
        step = self.base.choose(state, inp.rename(self.inverse), chooser,
                                fixed=fixed or None)
        return None if step is None else self._forward(step)


def rename(a, mapping):
    """Automaton ``a`` with channels renamed; states and choices unchanged."""
    if not mapping:
        return a
    return RenamedAutomaton(a, mapping)
