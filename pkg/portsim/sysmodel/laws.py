"""Audits of a medium run against the delivery laws.

A workload is fed to the medium and the run continues with empty input until
the buffers drain. Delivered messages are then matched against the sent ones
per (origin, destination) pair: the k-th delivery on the pair must be the
k-th message sent on it.
"""

from collections import Counter
import numpy
from portsim.automata.policy import ChoicePolicy
from portsim.automata.sampling import random_input, random_trace
from portsim.automata.signature import PortSignature
from portsim.streams.history import NamedSeq
from portsim.sysmodel.medium import cma_admits, distribute, medium_automaton
from portsim.utils.errors import Stuck
from portsim.utils.report import Report

LAWS = ('no_modification', 'destination', 'no_generation', 'order',
        'exactly_once', 'delay', 'fairness')


def random_workload(rng, spec, horizon, cap=3):
    """Random input over the medium's origins drawn from its alphabet."""
    sig = PortSignature(spec.origins, alphabet=spec.alphabet)
    return random_trace(rng, sig, horizon, cap=cap)


def sent_messages(spec, workload):
    """(origin, destination) -> list of (message, tick sent)."""
    sent = {}
    for n, tick in enumerate(workload.ticks, start=1):
        fresh = distribute(spec, tick)
        for d in sorted(fresh.channels):
            for m in fresh[d]:
                sent.setdefault((spec.origin(m), d), []).append((m, n))
    return sent


def run_medium(a, workload, policy, drain):
    """Actions of a run on ``workload`` followed by up to ``drain`` idle ticks.

    The drain stops early once a state reports an empty load.
    """
    chooser = policy.chooser()
    state = a.initial(chooser)
    actions = []
    idle = NamedSeq.empty(a.inputs)
    ticks = list(workload.ticks)
    n = 0
    while n < len(ticks) + drain:
        inp = ticks[n] if n < len(ticks) else idle
        n += 1
        step = a.choose(state, inp, chooser)
        if step is None:
            raise Stuck(state, inp, n)
        theta, state = step
        actions.append(theta)
        if n >= len(ticks) and getattr(state, 'load', None) is not None \
                and state.load() == 0:
            break
    return actions


def fail(law, samples, detail, **witness):
    witness['law'] = law
    return Report('medium_laws', False, samples=samples, witness=witness,
                  detail="{}: {}".format(law, detail))


def check_medium_laws(spec, workload, automaton=None, policy=None,
                      drain=None, verbose=False):
    """Check one run of a medium against the delivery laws.

    Parameters
    ----------
    spec : :class:`portsim.sysmodel.medium.MediumSpec`
        Routing used to compute what must be delivered.
    workload : :class:`portsim.streams.history.TimedTrace`
        Input over the origins.
    automaton : :class:`portsim.automata.automaton.Automaton`, optional
        Medium to audit; the automaton of ``spec`` by default.
    policy : :class:`portsim.automata.policy.ChoicePolicy`, optional
        Resolution of the medium's choices.
    drain : int, optional
        Idle ticks allowed after the workload.

    Returns
    -------
    report : :class:`portsim.utils.report.Report`
        The witness of a failure names the violated law.
    """
    a = medium_automaton(spec) if automaton is None else automaton
    policy = ChoicePolicy(seed=0) if policy is None else policy
    sent = sent_messages(spec, workload)
    copies = sum(len(v) for v in sent.values())
    if drain is None:
        drain = len(spec.fairlist) * (copies + 1) + spec.window
    actions = run_medium(a, workload, policy, drain)
    # The per message window bound needs unlimited batches and canonical
    # choices; otherwise only the service of destinations is bounded.
    per_message = spec.batch is None and policy.strategy != 'random'
    delivered = {}
    known = Counter(m for v in sent.values() for m, _ in v)
    for n, theta in enumerate(actions, start=1):
        for d in sorted(spec.destinations):
            for m in theta[d]:
                if m not in known:
                    return fail('no_modification', copies,
                                "delivered message was never sent",
                                message=m, destination=d, tick=n)
                if d not in spec.destination(m):
                    return fail('destination', copies,
                                "message delivered outside its destinations",
                                message=m, destination=d, tick=n)
                delivered.setdefault((spec.origin(m), d), []).append((m, n))
    for key in sorted(set(sent) | set(delivered)):
        got = delivered.get(key, [])
        exp = sent.get(key, [])
        extra = Counter(m for m, _ in got) - Counter(m for m, _ in exp)
        if extra:
            m = sorted(extra)[0]
            return fail('no_generation', copies,
                        "more copies delivered than sent", message=m,
                        origin=key[0], destination=key[1])
        for (m, n), (e, _) in zip(got, exp):
            if m != e:
                return fail('order', copies, "delivery order differs from "
                            "sending order", message=m, expected=e,
                            origin=key[0], destination=key[1], tick=n)
        if len(got) < len(exp):
            m, n = exp[len(got)]
            return fail('exactly_once', copies, "message not delivered "
                        "after {} idle ticks".format(drain), message=m,
                        origin=key[0], destination=key[1], tick=n)
        for (m, n), (_, s) in zip(got, exp):
            if spec.delay == 'cmas' and n <= s:
                return fail('delay', copies, "delivered in the tick it was "
                            "sent", message=m, destination=key[1], tick=n)
            if per_message and n - s > spec.window:
                return fail('fairness', copies, "delivered {} ticks after "
                            "sending, window {}".format(n - s, spec.window),
                            message=m, destination=key[1], tick=n)
    if not per_message:
        report = check_service(spec, sent, delivered, len(actions), copies)
        if report is not None:
            return report
    if verbose:
        print("# Medium laws: {} deliveries over {} ticks."
              .format(copies, len(actions)))
    return Report('medium_laws', True, samples=copies,
                  detail="all laws hold for {} deliveries".format(copies))


def check_service(spec, sent, delivered, horizon, copies):
    """Every destination with pending messages delivers within the window."""
    for d in sorted(spec.destinations):
        arrivals = numpy.zeros(horizon+2, dtype=int)
        served = numpy.zeros(horizon+2, dtype=int)
        for (o, e), v in sent.items():
            if e == d:
                for _, s in v:
                    arrivals[s] += 1
        for (o, e), v in delivered.items():
            if e == d:
                for _, n in v:
                    served[n] += 1
        pending = numpy.cumsum(arrivals) - numpy.cumsum(served)
        for n in range(1, horizon - spec.window + 1):
            if pending[n] > 0 and not served[n+1:n+spec.window+1].any():
                return fail('fairness', copies, "{} not served for {} ticks "
                            "while messages wait".format(d, spec.window),
                            destination=d, tick=n)
    return None


def check_containment(spec, probes=1000, seed=7, horizon=6):
    """Sampled check that every ``cmas`` transition is a ``cma`` transition.

    States are collected from random runs of the ``cmas`` medium of ``spec``.
    """
    strong = spec.replace(delay='cmas')
    a = medium_automaton(strong)
    rng = numpy.random.default_rng(seed)
    states = list(a.initial_states)
    runs = max(1, probes // 50)
    for r in range(runs):
        workload = random_workload(rng, strong, horizon)
        chooser = ChoicePolicy(seed=int(rng.integers(2**31))).chooser()
        state = a.initial(chooser)
        for tick in workload.ticks:
            state = a.choose(state, tick, chooser)[1]
            states.append(state)
    for p in range(probes):
        state = states[int(rng.integers(len(states)))]
        inp = random_input(rng, a.signature, cap=3)
        for theta, nxt in a.transitions(state, inp):
            if not cma_admits(strong, state, theta, nxt):
                return Report('containment', False, samples=p+1,
                              witness={'state': state, 'input': inp,
                                       'next': nxt},
                              detail="cmas transition outside cma")
    return Report('containment', True, samples=probes,
                  detail="no counterexample in {} probes".format(probes))
