"""Executable pulse-driven stream processing functions.

A :class:`StreamFn` describes a function from input histories to output
histories by a factory of stateful evaluators: a fresh evaluator is fed the
input tick by tick and returns the output of each tick. Strongly
pulse-driven functions (on a pair (J, P) of inputs and outputs) produce
their tick n output on P before their tick n input on J is known; the
output is read by stepping a deep copy of the evaluator with empty input on J.
"""

import copy
import numpy
from portsim.automata.checks import trusted_moore
from portsim.automata.policy import ChoicePolicy
from portsim.automata.sampling import agreeing_pair
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq, TimedTrace, prefix, project_trace
from portsim.streams.message import Message
from portsim.utils.errors import ChannelMismatch, Stuck
from portsim.utils.misc import stable_index
from portsim.utils.report import Report


class StreamFn(object):
    """Pulse-driven stream processing function.

    Parameters
    ----------
    inputs, outputs : iterable of strings
        Channels.
    make : callable
        Returns a fresh evaluator, an object with ``step(inp)`` mapping the
        tick's input NamedSeq to the tick's output NamedSeq.
    strength : string
        ``weak`` or ``strong``. Strong means strong on (inputs, outputs).
    strong_on : list of tuples
        Further (J, P) pairs on which the function is strong.
    alphabet : dict
        Sample messages per input channel for the sampled checks.
    """

    def __init__(self, inputs, outputs, make, strength='weak', strong_on=(),
                 alphabet=None, name=''):
        self.inputs = frozenset(inputs)
        self.outputs = frozenset(outputs)
        self.make = make
        self.strength = strength
        self.strong_on = [(frozenset(J), frozenset(P)) for J, P in strong_on]
        if strength == 'strong':
            self.strong_on.append((self.inputs, self.outputs))
        self.alphabet = {} if alphabet is None else dict(alphabet)
        self.name = name
        self._trusted = {}

    @property
    def signature(self):
        return PortSignature(self.inputs, self.outputs, alphabet=self.alphabet)

    def strong_covers(self, J, P):
        J, P = frozenset(J), frozenset(P)
        return any(J <= j and P <= p for j, p in self.strong_on)

    def __repr__(self):
        return "StreamFn({}, {} -> {})".format(self.name or '?',
                                               sorted(self.inputs),
                                               sorted(self.outputs))


class Component(object):
    """Nonempty finite family of stream functions over the same channels."""

    def __init__(self, members, name=''):
        members = list(members)
        if not members:
            raise ValueError("a component needs at least one function")
        self.inputs = members[0].inputs
        self.outputs = members[0].outputs
        for f in members[1:]:
            if f.inputs != self.inputs or f.outputs != self.outputs:
                raise ChannelMismatch(self.inputs | self.outputs,
                                      f.inputs | f.outputs)
        self.members = members
        self.name = name

    def strong_covers(self, J, P):
        return all(f.strong_covers(J, P) for f in self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def as_component(f):
    return f if isinstance(f, Component) else Component([f], name=f.name)


def evaluate(f, inp):
    """Apply ``f`` to a finite input history.

    Raises
    ------
    ChannelMismatch
        If the input channels are not the function's inputs.
    """
    if inp.channels != f.inputs:
        raise ChannelMismatch(f.inputs, inp.channels)
    ev = f.make()
    ticks = [ev.step(t) for t in inp.ticks]
    return TimedTrace(f.outputs, ticks)


def check_fn_pulse(f, strength='weak', horizon=12, samples=300, seed=7,
                   J=None, P=None):
    """Sampled check of weak or strong pulse-drivenness of one function.

    For pairs agreeing through a random tick n, weak demands equal outputs
    through n and strong equal outputs through n+1. For the strong form,
    ``J`` restricts which inputs differ at tick n+1 and ``P`` which outputs
    are compared.
    """
    rng = numpy.random.default_rng(seed)
    sig = f.signature
    J = f.inputs if J is None else frozenset(J)
    P = f.outputs if P is None else frozenset(P)
    prop = '{}_pulse'.format(strength)
    for sample in range(samples):
        n = int(rng.integers(horizon))
        vary = J if strength == 'strong' else None
        iota, kappa = agreeing_pair(rng, sig, horizon, n, vary=vary)
        left = evaluate(f, iota)
        right = evaluate(f, kappa)
        if strength == 'strong':
            j = n + 1
            left = project_trace(left, P)
            right = project_trace(right, P)
        else:
            j = n
        if prefix(left, j) != prefix(right, j):
            witness = {'tick': j, 'iota': iota, 'kappa': kappa}
            return Report(prop, False, samples=sample+1, witness=witness,
                          detail="outputs through tick {} differ for inputs "
                                 "agreeing through tick {}".format(j, n))
    return Report(prop, True, samples=samples,
                  detail="no counterexample in {} samples".format(samples))


def trusted_strong(f, J, P, samples=100, horizon=6):
    """Declared strength on (J, P), confirmed by a sampled check (cached)."""
    key = (frozenset(J), frozenset(P))
    if key not in f._trusted:
        ok = f.strong_covers(J, P)
        if ok and J:
            ok = check_fn_pulse(f, 'strong', horizon=horizon, samples=samples,
                                J=J, P=P).passed
        f._trusted[key] = ok
    return f._trusted[key]


class Wire(object):

    def __init__(self, mapping):
        self.mapping = mapping

    def step(self, inp):
        return NamedSeq({o: inp[i] for i, o in self.mapping.items()})


class Delay(object):

    def __init__(self, mapping):
        self.mapping = mapping
        self.held = {o: () for o in mapping.values()}

    def step(self, inp):
        out = NamedSeq(self.held)
        self.held = {o: inp[i] for i, o in self.mapping.items()}
        return out


class Constant(object):

    def __init__(self, outputs):
        self.outputs = outputs

    def step(self, inp):
        return NamedSeq(self.outputs)


class Lift(object):
    """Stateless per tick function."""

    def __init__(self, fn, outputs):
        self.fn = fn
        self.outputs = outputs

    def step(self, inp):
        return NamedSeq(self.fn(inp), channels=self.outputs)


def wire(i='i', o='o', name='wire'):
    return StreamFn([i], [o], lambda: Wire({i: o}), name=name)


def delay(i='i', o='o', name='delay'):
    """Unit delay: tick 1 is empty, tick n carries input tick n-1."""
    return StreamFn([i], [o], lambda: Delay({i: o}), strength='strong',
                    name=name)


def constant(o='o', seq=(), inputs=(), name='constant'):
    seq = tuple(seq)
    return StreamFn(inputs, [o], lambda: Constant({o: seq}),
                    strength='strong', name=name)


def lift(fn, inputs, outputs, name='lift'):
    outputs = frozenset(outputs)
    return StreamFn(inputs, outputs, lambda: Lift(fn, outputs), name=name)


def increment(i='i', o='o', name='increment'):
    """Adds one to every integer message; an empty tick yields ``<0>``."""

    def bump(inp):
        seq = inp[i]
        if not seq:
            return {o: (Message('int', 0),)}
        return {o: tuple(Message(m.sort, m.payload + 1, m.meta) for m in seq)}

    return lift(bump, [i], [o], name=name)


class AutomatonEval(object):
    """Deterministic unrolling of an automaton under one choice policy."""

    def __init__(self, automaton, policy):
        self.automaton = automaton
        self.chooser = policy.chooser()
        self.state = automaton.initial(self.chooser)
        self.tick = 0

    def __deepcopy__(self, memo):
        new = copy.copy(self)
        new.chooser = copy.deepcopy(self.chooser, memo)
        return new

    def step(self, inp):
        self.tick += 1
        a = self.automaton
        step = a.choose(self.state, inp, self.chooser)
        if step is None:
            raise Stuck(self.state, inp, self.tick)
        theta, self.state = step
        return NamedSeq({c: theta[c] for c in a.outputs})


def functions_of(a, policies, validate=True, samples=30, horizon=6):
    """One stream function per policy, the policy-resolved unrolling of ``a``.

    Every function is checked to be weakly pulse-driven when ``validate``.
    Moore declarations of the automaton carry over as strong pairs.
    """
    strong = [(d.G, d.P) for d in a.moore if trusted_moore(a, d.G, d.P)]
    members = []
    for policy in policies:
        f = StreamFn(a.inputs, a.outputs,
                     (lambda p=policy: AutomatonEval(a, p)),
                     strong_on=strong, alphabet=a.signature.alphabet,
                     name='{}[{}]'.format(a.name, policy.seed))
        if validate:
            report = check_fn_pulse(f, 'weak', horizon=horizon,
                                    samples=samples)
            if not report.passed:
                raise ValueError("{} is not weakly pulse-driven: {}"
                                 .format(f.name, report.detail))
        members.append(f)
    return Component(members, name=a.name)


def policies_for(seeds, strategy='random'):
    return [ChoicePolicy(seed=s, strategy=strategy) for s in seeds]


class Selector(object):
    """Follows one member of a family, picked from the tick 1 input."""

    def __init__(self, members, table):
        self.members = members
        self.table = table
        self.current = None

    def step(self, inp):
        if self.current is None:
            key = stable_index(inp) % len(self.table)
            self.current = self.members[self.table[key]].make()
        return self.current.step(inp)


def closure_probe(component, inputs, selectors=8, seed=3):
    """Finite probe of the closure condition of a component.

    Builds functions that follow some member chosen from the first tick of
    the input; each agrees pointwise with a member on every input, so a
    closed family contains it. The probe reports whether every such function
    coincides with a single member on all of ``inputs``. A finite family
    failing the probe is not closed; passing it proves nothing.
    """
    rng = numpy.random.default_rng(seed)
    members = component.members
    outputs = [[evaluate(f, inp) for inp in inputs] for f in members]
    missing = 0
    for s in range(selectors):
        table = [int(x) for x in rng.integers(len(members), size=4)]
        h = StreamFn(component.inputs, component.outputs,
                     (lambda t=table: Selector(members, t)))
        got = [evaluate(h, inp) for inp in inputs]
        if not any(got == row for row in outputs):
            missing += 1
    return Report('closure_probe', missing == 0, samples=selectors,
                  detail="{} of {} selector functions match no single member"
                  .format(missing, selectors))
