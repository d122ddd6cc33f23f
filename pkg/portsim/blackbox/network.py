"""Composition and hiding of black-box components.

A composed function is evaluated tick by tick with the same staging as
composed automata (:func:`portsim.composition.plan.plan_tick`): outputs of
members that are strong on their feedback channels are read first from a
copy of the member's evaluator, then all members step in stage order. The
resulting outputs satisfy the feedback equations of the composition at every
tick.
"""

import copy
import itertools
from portsim.blackbox.functions import (
        Component,
        StreamFn,
        as_component,
        trusted_strong
        )
from portsim.composition.plan import plan_tick
from portsim.streams.history import NamedSeq
from portsim.utils.errors import (
        ChannelClash,
        InfiniteActivity,
        NotAnOutput,
        PotentialBlocking,
        Stuck
        )

DEFAULT_LIMIT = 256


class NetworkEval(object):

    def __init__(self, members, plan, outputs):
        self.members = members
        self.plan = plan
        self.outputs = outputs
        self.evs = {idx: f.make() for idx, f in members}
        self.fns = dict(members)
        self.tick = 0

    def step(self, inp):
        self.tick += 1
        values = dict(inp.items())
        peeked = {}
        for idx in self.plan.order:
            if idx not in self.plan.peeks:
                continue
            f = self.fns[idx]
            probe = NamedSeq({c: inp[c] if c in inp else () for c in f.inputs})
            out = copy.deepcopy(self.evs[idx]).step(probe)
            peeked[idx] = {c: out[c] for c in self.plan.peeks[idx]}
        for out in peeked.values():
            values.update(out)
        for idx in self.plan.order:
            f = self.fns[idx]
            x = NamedSeq({c: values.get(c, ()) for c in f.inputs})
            out = self.evs[idx].step(x)
            for c, v in peeked.get(idx, {}).items():
                if out[c] != v:
                    raise Stuck(idx, x, self.tick)
            values.update(out.items())
        return NamedSeq({c: values.get(c, ()) for c in self.outputs})


def network_fn(members, plan, name=''):
    outputs = frozenset().union(*(f.outputs for _, f in members))
    inputs = frozenset().union(*(f.inputs for _, f in members)) - outputs
    strong = all(f.strong_covers(f.inputs, f.outputs) for _, f in members)
    alphabet = {}
    for _, f in members:
        alphabet.update(f.alphabet)
    return StreamFn(inputs, outputs,
                    lambda: NetworkEval(members, plan, outputs),
                    strength='strong' if strong else 'weak',
                    alphabet=alphabet, name=name)


def component_trust(comp, G, P):
    return all(trusted_strong(f, G, P) for f in comp.members)


def check_channels(components):
    owner = {}
    for idx, comp in components:
        clash = comp.inputs & comp.outputs
        if clash:
            raise ChannelClash(sorted(clash)[0], 'input and output of {}'
                               .format(idx))
        for c in comp.outputs:
            if c in owner:
                raise ChannelClash(c, 'output of {} and {}'.format(owner[c],
                                                                   idx))
            owner[c] = idx


def compose2_fn(f1, f2, name=None):
    """Binary composition of two components.

    Raises
    ------
    ChannelClash
        If a component reads its own output or both write one channel.
    PotentialBlocking
        If J = I1 & O2 and P = I2 & O1 are both nonempty and neither side
        is strong on them.
    """
    f1, f2 = as_component(f1), as_component(f2)
    comps = [(0, f1), (1, f2)]
    check_channels(comps)
    J = f1.inputs & f2.outputs
    P = f2.inputs & f1.outputs
    try:
        plan = plan_tick(comps, trusted=component_trust)
    except PotentialBlocking as err:
        raise PotentialBlocking(J, P, cycle=err.cycle)
    if name is None:
        name = '({} * {})'.format(f1.name or '?', f2.name or '?')
    members = [network_fn([(0, g1), (1, g2)], plan, name=name)
               for g1, g2 in itertools.product(f1.members, f2.members)]
    return Component(members, name=name)


def compose_family_fn(components, limit=DEFAULT_LIMIT, name='family'):
    """Composition of an indexed family of components.

    ``components`` holds Components (or stream functions), optionally as
    ``(index, component)`` pairs.
    """
    comps = []
    for n, c in enumerate(itertools.islice(iter(components), limit+1)):
        idx, c = c if isinstance(c, tuple) else (n, c)
        comps.append((idx, as_component(c)))
    if len(comps) > limit:
        raise InfiniteActivity("more than {} components".format(limit))
    check_channels(comps)
    plan = plan_tick(comps, trusted=component_trust)
    total = 1
    for _, c in comps:
        total *= len(c)
    if total > limit:
        raise InfiniteActivity("{} member combinations exceed {}"
                               .format(total, limit))
    members = []
    for combo in itertools.product(*(c.members for _, c in comps)):
        members.append(network_fn(list(zip([i for i, _ in comps], combo)),
                                  plan, name=name))
    return Component(members, name=name)


class Project(object):

    def __init__(self, inner, keep):
        self.inner = inner
        self.keep = keep

    def step(self, inp):
        out = self.inner.step(inp)
        return NamedSeq({c: out[c] for c in self.keep})


def hide_fn(comp, channels, name=None):
    """Component with outputs ``channels`` removed from every member."""
    comp = as_component(comp)
    channels = frozenset(channels)
    for c in sorted(channels):
        if c not in comp.outputs:
            raise NotAnOutput(c)
    if not channels:
        return comp
    keep = comp.outputs - channels
    members = []
    for f in comp.members:
        strong = [(J, P - channels) for J, P in f.strong_on if P - channels]
        members.append(StreamFn(f.inputs, keep,
                                (lambda f=f: Project(f.make(), keep)),
                                strong_on=strong, alphabet=f.alphabet,
                                name=f.name))
    return Component(members, name=name or comp.name)
