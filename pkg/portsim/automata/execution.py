import itertools
from portsim.streams.history import NamedSeq, TimedTrace, project, project_trace
from portsim.utils.errors import ChannelMismatch, Stuck


class Execution(object):
    """Finite execution s0, theta1, s1, ..., thetaT, sT.

    Attributes
    ----------
    states : tuple
        States s0 .. sT.
    actions : :class:`portsim.streams.history.TimedTrace`
        Schedule over all channels of the automaton.
    external : frozenset
        Input and output channels.
    """

    def __init__(self, states, actions, external):
        self.states = tuple(states)
        self.actions = actions
        self.external = frozenset(external)

    @property
    def horizon(self):
        return self.actions.horizon

    @property
    def behavior(self):
        return project_trace(self.actions, self.external)

    def __repr__(self):
        return "Execution(T={})".format(self.horizon)


def widen_input(a, inp):
    """Check ``inp`` against the automaton inputs and fill absent channels."""
    if not inp.channels <= a.inputs:
        raise ChannelMismatch(a.inputs, inp.channels)
    if inp.channels == a.inputs:
        return inp
    return TimedTrace(a.inputs, inp.ticks)


def execute(a, inp, policy, initial=None):
    """Run ``a`` on ``inp``, resolving nondeterminism with ``policy``.

    Parameters
    ----------
    a : :class:`portsim.automata.automaton.Automaton`
        Automaton.
    inp : :class:`portsim.streams.history.TimedTrace`
        Input history over (a subset of) the inputs of ``a``.
    policy : :class:`portsim.automata.policy.ChoicePolicy`
        Choice policy; a fresh chooser is built for every call.
    initial : object, optional
        Start from this state instead of one chosen from the initial states.

    Returns
    -------
    execution : :class:`Execution`

    Raises
    ------
    Stuck
        If no transition exists at some tick.
    """
    inp = widen_input(a, inp)
    chooser = policy.chooser()
    state = a.initial(chooser) if initial is None else initial
    states = [state]
    ticks = []
    for n, theta_in in enumerate(inp.ticks, start=1):
        step = a.choose(state, theta_in, chooser)
        if step is None:
            raise Stuck(state, theta_in, n)
        theta, state = step
        ticks.append(theta)
        states.append(state)
    return Execution(states, TimedTrace(a.channels, ticks), a.external)


def behaviors(a, inp, k=4, frontier=256, initial=None):
    """Behaviour prefixes of ``a`` under input ``inp``.

    Breadth-first enumeration taking at most ``k`` transitions per
    (state, tick) and keeping at most ``frontier`` distinct
    (state, behaviour) nodes per tick.

    Returns
    -------
    behs : set of :class:`portsim.streams.history.TimedTrace`
        Behaviour prefixes over the external channels.
    """
    inp = widen_input(a, inp)
    external = sorted(a.signature.external)
    starts = a.initial_states if initial is None else (initial,)
    nodes = list(dict.fromkeys((s, ()) for s in starts))[:frontier]
    for n, theta_in in enumerate(inp.ticks, start=1):
        successors = {}
        for state, beh in nodes:
            for theta, nxt in itertools.islice(a.transitions(state, theta_in),
                                               k):
                node = (nxt, beh + (project(theta, external),))
                successors.setdefault(node, None)
                if len(successors) >= frontier:
                    break
            if len(successors) >= frontier:
                break
        if not successors:
            raise Stuck(nodes[0][0] if nodes else None, theta_in, n)
        nodes = list(successors)
    return set(TimedTrace(external, beh) for _, beh in nodes)


def run_policy(a, inp, policy):
    """Behaviours for a policy: all up to k, or the single policy run."""
    if policy.strategy == 'all':
        return behaviors(a, inp, k=policy.k)
    return {execute(a, inp, policy).behavior}
