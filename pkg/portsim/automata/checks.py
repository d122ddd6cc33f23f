"""Bounded checks of reactivity, pulse-drivenness and trace membership.

Every check is a test, not a proof: it reports "no counterexample in N
samples" or the first counterexample found. Inputs are drawn with
:mod:`portsim.automata.sampling`; all randomness derives from an explicit
seed so that failures can be replayed.
"""

import itertools
import numpy
from portsim.automata.policy import Chooser
from portsim.automata.sampling import (
        agreeing_pair,
        bounded_inputs,
        random_input
        )
from portsim.streams.history import project, TimedTrace
from portsim.utils.errors import BudgetInsufficient, ChannelMismatch, NotReactive
from portsim.utils.report import Report

ACCEPTED = 'accepted'
REJECTED = 'rejected'
INCONCLUSIVE = 'inconclusive'

# Options enumerated per (state, input) when comparing output sets.
MAX_OPTIONS = 256


def sample_states(a, rng, runs=20, length=6, cap=3):
    """Distinct states visited by short random runs from the initial states."""
    seen = dict.fromkeys(a.initial_states)
    for r in range(runs):
        chooser = Chooser(int(rng.integers(2**31)), 'random')
        state = a.initial(chooser)
        for _ in range(int(rng.integers(length+1))):
            step = a.choose(state, random_input(rng, a.signature, cap=cap),
                            chooser)
            if step is None:
                break
            state = step[1]
            seen.setdefault(state, None)
    return list(seen)


def check_reactivity(a, mode='sampled', budget=10000, bound=None, seed=7,
                     verbose=False):
    """Check that every (state, input) pair admits a transition.

    Parameters
    ----------
    a : :class:`portsim.automata.automaton.Automaton`
        Automaton to check.
    mode : string
        ``exhaustive`` needs a finite ``a.states`` and a message bound per
        input (``bound`` or ``a.bound_hint``); ``sampled`` probes ``budget``
        random pairs drawn from reachable states.
    budget : int
        Maximum number of (state, input) probes.

    Returns
    -------
    report : :class:`portsim.utils.report.Report`

    Raises
    ------
    NotReactive
        With the witnessing state and input.
    BudgetInsufficient
        If an exhaustive check needs more than ``budget`` probes.
    """
    if budget < 1:
        raise BudgetInsufficient("reactivity needs at least one probe")
    if mode == 'exhaustive':
        bound = a.bound_hint if bound is None else bound
        if a.states is None or bound is None:
            raise ValueError("exhaustive reactivity needs a finite state set "
                             "and a message bound")
        inputs = list(bounded_inputs(a.signature, bound))
        total = len(a.states) * len(inputs)
        if total > budget:
            raise BudgetInsufficient(
                "{} (state, input) pairs exceed budget {}".format(total,
                                                                  budget))
        for state in a.states:
            for inp in inputs:
                if next(a.transitions(state, inp), None) is None:
                    raise NotReactive(state, inp)
        return Report('reactivity', True, samples=total,
                      detail='exhaustive over {} states'.format(len(a.states)))
    elif mode == 'sampled':
        rng = numpy.random.default_rng(seed)
        states = sample_states(a, rng)
        for p in range(budget):
            state = states[int(rng.integers(len(states)))]
            inp = random_input(rng, a.signature)
            if next(a.transitions(state, inp), None) is None:
                raise NotReactive(state, inp)
        if verbose:
            print("# Reactivity: {} probes over {} sampled states."
                  .format(budget, len(states)))
        return Report('reactivity', True, samples=budget,
                      detail="no counterexample in {} probes".format(budget))
    else:
        raise ValueError("unknown reactivity mode {!r}".format(mode))


def state_frontier(a, ticks, frontier=256, k=4, keep=None):
    """Nodes (state, kept-prefix) reachable under the given input ticks.

    ``keep`` selects the channels recorded in the prefix; None records no
    prefix so that nodes are states only.
    """
    nodes = list(dict.fromkeys((s, ()) for s in a.initial_states))
    for theta_in in ticks:
        successors = {}
        for state, pre in nodes:
            options = itertools.islice(a.transitions(state, theta_in), k)
            for theta, nxt in options:
                if keep is None:
                    node = (nxt, ())
                else:
                    node = (nxt, pre + (project(theta, keep),))
                successors.setdefault(node, None)
            if len(successors) >= frontier:
                break
        nodes = list(successors)[:frontier]
    return nodes


def output_set(a, state, inp, channels, limit=MAX_OPTIONS):
    outs = set()
    for theta, _ in itertools.islice(a.transitions(state, inp), limit):
        outs.add(project(theta, channels))
    return outs


def extends(a, state, ticks, k=4, budget=4096):
    """Can an execution from ``state`` consume every tick of ``ticks``?

    Depth-first over the first ``k`` options per step. Returns None when the
    answer is unknown because options were cut off or ``budget`` expansions
    were used up.
    """
    stack = [(state, 0)]
    seen = set()
    unknown = False
    while stack:
        state, depth = stack.pop()
        if depth == len(ticks):
            return True
        if (state, depth) in seen:
            continue
        seen.add((state, depth))
        if len(seen) > budget:
            return None
        options = list(itertools.islice(a.transitions(state, ticks[depth]),
                                        k+1))
        if len(options) > k:
            unknown = True
        for _, nxt in reversed(options[:k]):
            stack.append((nxt, depth+1))
    return None if unknown else False


def check_weak_pulse(a, horizon=12, samples=500, seed=7, frontier=256, k=4):
    """Sampled test that behaviour through n depends only on input through n.

    For pairs (iota, kappa) agreeing through a random tick n, a behaviour
    prefix through n is kept under an input when some execution reaching it
    extends through the horizon. The kept prefixes must be the same for both
    inputs.
    """
    rng = numpy.random.default_rng(seed)
    for sample in range(samples):
        n = int(rng.integers(horizon))
        iota, kappa = agreeing_pair(rng, a.signature, horizon, n)
        nodes = state_frontier(a, iota.ticks[:n], frontier=frontier, k=k,
                               keep=a.outputs)
        prefixes = {}
        for state, pre in nodes:
            prefixes.setdefault(pre, []).append(state)
        for pre, states in prefixes.items():
            left = [extends(a, s, iota.ticks[n:], k=k) for s in states]
            right = [extends(a, s, kappa.ticks[n:], k=k) for s in states]
            if None in left or None in right:
                continue
            if any(left) != any(right):
                witness = {'tick': n, 'prefix': pre, 'iota': iota,
                           'kappa': kappa}
                return Report('weak_pulse', False, samples=sample+1,
                              witness=witness,
                              detail="prefix through tick {} depends on later "
                                     "input".format(n))
    return Report('weak_pulse', True, samples=samples,
                  detail="no counterexample in {} samples".format(samples))


def check_strong_pulse(a, G=None, P=None, horizon=12, samples=500, seed=7,
                       frontier=256, k=4):
    """Sampled test of strong pulse-drivenness with respect to (G, P).

    Pairs agree through tick n and on the inputs outside ``G`` at tick n+1;
    the sets of behaviour prefixes projected onto ``P`` through n+1 must be
    equal. ``G`` and ``P`` default to all inputs and all outputs.
    """
    G = a.inputs if G is None else frozenset(G)
    P = a.outputs if P is None else frozenset(P)
    prop = 'strong_pulse'
    rng = numpy.random.default_rng(seed)
    for sample in range(samples):
        n = int(rng.integers(horizon))
        iota, kappa = agreeing_pair(rng, a.signature, horizon, n, vary=G)
        nodes = state_frontier(a, iota.ticks[:n], frontier=frontier, k=k,
                               keep=P)
        left = set()
        right = set()
        for state, pre in nodes:
            for out in output_set(a, state, iota.ticks[n], P):
                left.add(pre + (out,))
            for out in output_set(a, state, kappa.ticks[n], P):
                right.add(pre + (out,))
        if left != right:
            diff = sorted(left ^ right, key=repr)[0]
            witness = {'tick': n+1, 'iota': iota, 'kappa': kappa,
                       'prefix': diff}
            return Report(prop, False, samples=sample+1, witness=witness,
                          detail="output on {} at tick {} depends on same-tick "
                                 "input on {}".format(sorted(P), n+1,
                                                      sorted(G)))
    return Report(prop, True, samples=samples,
                  detail="no counterexample in {} samples".format(samples))


def verify_moore(a, decl, probes=500, seed=11):
    """Sampled verification of a moore declaration (G, P).

    At sampled reachable states, inputs differing only on ``G`` must admit
    the same set of ``P`` outputs. The outcome is cached on the automaton.
    """
    if decl in a._verified:
        return a._verified[decl]
    rng = numpy.random.default_rng(seed)
    states = sample_states(a, rng)
    ok = True
    for p in range(probes):
        state = states[int(rng.integers(len(states)))]
        iota = random_input(rng, a.signature, cap=3)
        kappa = iota.updated({c: random_input(rng, a.signature, [c],
                                              cap=3)[c]
                              for c in decl.G if c in iota})
        if (output_set(a, state, iota, decl.P)
                != output_set(a, state, kappa, decl.P)):
            ok = False
            break
    a._verified[decl] = ok
    return ok


def trusted_moore(a, G, P, probes=500):
    """True if a verified (or composition-derived) declaration covers (G, P)."""
    for decl in a.covering(G, P):
        if decl.origin == 'derived' or verify_moore(a, decl, probes=probes):
            return True
    return False


def check_trace_membership(a, trace, budget=10000):
    """Is ``trace`` a behaviour prefix of ``a``?

    Depth-first search over initial states and nondeterministic transitions
    (hidden channels unconstrained) for an execution whose projection onto the
    trace's channels equals ``trace``.

    Returns
    -------
    verdict : string
        ``accepted``, ``rejected`` or ``inconclusive`` (budget exhausted with
        branches left).
    """
    if not (a.inputs <= trace.channels <= a.signature.external):
        raise ChannelMismatch(a.signature.external, trace.channels)
    outs = trace.channels & a.outputs
    ticks = [(project(t, a.inputs), project(t, outs)) for t in trace.ticks]
    horizon = len(ticks)
    dead = set()
    expansions = 0
    stack = [(0, s) for s in reversed(a.initial_states)]
    exhausted = False
    while stack:
        n, state = stack.pop()
        if n == horizon:
            return ACCEPTED
        if (n, state) in dead:
            continue
        if expansions >= budget:
            exhausted = True
            break
        expansions += 1
        inp, fixed = ticks[n]
        nexts = list(dict.fromkeys(nxt for _, nxt in
                                   a.constrained(state, inp, fixed)))
        # States reached again at the same tick need no second expansion.
        dead.add((n, state))
        for nxt in reversed(nexts):
            if (n+1, nxt) not in dead:
                stack.append((n+1, nxt))
    if exhausted:
        return INCONCLUSIVE
    return REJECTED


def trace_of(execution, channels):
    """External trace of an execution restricted to ``channels``."""
    return TimedTrace(channels, [project(t, channels)
                                 for t in execution.actions.ticks])
