import pytest
from portsim.automata.checks import (
        ACCEPTED,
        REJECTED,
        check_reactivity,
        check_strong_pulse,
        check_trace_membership,
        check_weak_pulse,
        trace_of
        )
from portsim.automata.execution import execute
from portsim.automata.policy import ChoicePolicy
from portsim.automata.sampling import random_trace
from portsim.blackbox.functions import evaluate, functions_of, policies_for
from portsim.composition.operators import compose2
from portsim.streams.history import sum_trace
from portsim.streams.message import Message
from portsim.sysmodel.laws import (
        check_containment,
        check_medium_laws,
        random_workload
        )
from portsim.sysmodel.medium import DELAYS, SERVE, MediumSpec
from portsim.systems.buffer import buffer
from portsim.systems.gates import flipflop_network, nor_gate
from portsim.systems.merge import fair_merge
from portsim.systems.queue import queue_network
from portsim.systems.utils import get_kind
from portsim.utils.testing import seeded


def builtins():
    return {'fair_merge': get_kind('fair_merge', 'fm'),
            'buffer': get_kind('buffer', 'buf'),
            'nor': get_kind('nor', 'g'),
            'queue_element': get_kind('queue_element', 'q0', {'new': 'q1'}),
            'flipflop': get_kind('flipflop', 'ff')}


@pytest.mark.driver
def test_reactivity_acceptance():
    kinds = builtins()
    for kind in ('fair_merge', 'nor'):
        report = check_reactivity(kinds[kind], mode='exhaustive', bound=2)
        assert report.passed
    for kind in ('buffer', 'queue_element'):
        report = check_reactivity(kinds[kind], mode='sampled', budget=10000)
        assert report.passed


@pytest.mark.driver
def test_pulse_acceptance():
    for kind, a in builtins().items():
        report = check_weak_pulse(a, horizon=12, samples=500)
        assert report.passed, kind
    report = check_strong_pulse(get_kind('fair_merge', 'fm'), horizon=12,
                                samples=500)
    assert not report.passed
    report = check_strong_pulse(flipflop_network(), horizon=10, samples=500)
    assert report.passed


@pytest.mark.driver
def test_membership_acceptance():
    rng = seeded(5)
    net = compose2(fair_merge(o='m'), buffer(i='m', o='o'))
    members = (fair_merge(o='m'), buffer(i='m', o='o'))
    ff = flipflop_network()
    gates = [nor_gate(*['{}.{}'.format(g, p) for p in 'abo'], name=g)
             for g in ('g1', 'g2')]
    for seed in range(100):
        ex = execute(net, random_trace(rng, net.signature, 10, cap=3),
                     ChoicePolicy(seed=seed))
        for member in members:
            local = trace_of(ex, member.signature.external)
            assert check_trace_membership(member, local) == ACCEPTED
        ex = execute(ff, random_trace(rng, ff.signature, 10, cap=2),
                     ChoicePolicy(seed=seed))
        for gate in gates:
            local = trace_of(ex, gate.signature.external)
            assert check_trace_membership(gate, local) == ACCEPTED


@pytest.mark.driver
def test_medium_acceptance():
    rng = seeded(8)
    spec = queue_network(pool=3).medium
    assert len(spec.origins) <= 8 and len(spec.destinations) <= 8
    for seed in range(200):
        workload = random_workload(rng, spec, 20)
        report = check_medium_laws(spec, workload,
                                   policy=ChoicePolicy(seed=seed))
        assert report.passed, report.detail
    assert check_containment(spec, probes=10000).passed


@pytest.mark.driver
@pytest.mark.parametrize('kind', sorted(builtins()))
def test_functions_agree_with_behaviours(kind):
    a = builtins()[kind]
    comp = functions_of(a, policies_for(range(3)))
    rng = seeded(13)
    for _ in range(100):
        inp = random_trace(rng, a.signature, 5, cap=2)
        for f in comp:
            beh = sum_trace(inp, evaluate(f, inp))
            verdict = check_trace_membership(a, beh, budget=20000)
            if kind in ('fair_merge', 'buffer', 'nor'):
                assert verdict == ACCEPTED, (kind, f.name)
            else:
                assert verdict != REJECTED, (kind, f.name)


def random_medium(rng):
    """Medium with up to 8 origins and 8 destinations and random delivery
    parameters."""
    no, nd = (int(x) for x in rng.integers(1, 9, size=2))
    origins = ['o{}'.format(k) for k in range(no)]
    dests = ['d{}'.format(k) for k in range(nd)]
    routes = {}
    for r in ('r0', 'r1', 'r2', 'r3'):
        size = int(rng.integers(1, min(3, nd)+1))
        routes[r] = frozenset(dests[int(k)] for k in
                              rng.choice(nd, size=size, replace=False))
    alphabet = {o: tuple(Message('int', v, (o, r)) for v in (1, 2)
                         for r in sorted(routes))
                for o in origins}
    return MediumSpec(origins, dests, lambda m: m.sender,
                      lambda m: routes[m.receiver],
                      delay=DELAYS[int(rng.integers(len(DELAYS)))],
                      serve=SERVE[int(rng.integers(len(SERVE)))],
                      batch=(None, 1, 2)[int(rng.integers(3))],
                      idle=int(rng.integers(3)), alphabet=alphabet)


@pytest.mark.driver
def test_random_medium_laws():
    rng = seeded(9)
    variants = set()
    for seed in range(200):
        spec = random_medium(rng)
        assert spec.window == max(4*len(spec.destinations),
                                  len(spec.fairlist))
        variants.add((spec.delay, spec.serve, spec.batch))
        workload = random_workload(rng, spec, 20)
        for policy in (ChoicePolicy(seed=seed),
                       ChoicePolicy(seed=seed, strategy='first')):
            report = check_medium_laws(spec, workload, policy=policy)
            assert report.passed, (spec, report.detail)
    assert len(variants) == 12
