"""Per-tick evaluation order of a network of components.

A network's members form a dependency graph: member j feeds member k if an
output channel of j is an input channel of k. An edge is *broken* when j is
trusted to be moore on the channels it carries with respect to all of j's
network-internal inputs; j's output on them can then be read before any of
its same-tick input is known. The remaining edges must be acyclic and are
sorted into stages.
"""

from portsim.utils.errors import PotentialBlocking


class TickPlan(object):
    """Evaluation order for one tick.

    Attributes
    ----------
    stages : list of lists
        Member indices; every member consumes only channels produced in
        earlier stages, peeked, or supplied by the environment.
    peeks : dict
        Member index -> frozenset of output channels read in advance.
    broken : list of tuples
        ``(src, dst, channels)`` for every moore-broken edge.
    """

    def __init__(self, stages, peeks, broken):
        self.stages = stages
        self.peeks = peeks
        self.broken = broken

    @property
    def order(self):
        return [idx for stage in self.stages for idx in stage]

    def __repr__(self):
        return "TickPlan(stages={}, broken={})".format(
            self.stages, [(s, d) for s, d, _ in self.broken])


def default_trust(node, G, P):
    from portsim.automata.checks import trusted_moore
    return trusted_moore(node, G, P)


def dependency_edges(members):
    """Edges (src, dst) -> set of channels, and internal inputs per member."""
    producer = {}
    for idx, node in members:
        for c in node.outputs:
            producer[c] = idx
    edges = {}
    internal = {}
    for idx, node in members:
        internal[idx] = frozenset(c for c in node.inputs if c in producer
                                  and producer[c] != idx)
        for c in node.inputs:
            src = producer.get(c)
            if src is None:
                continue
            edges.setdefault((src, idx), set()).add(c)
    return edges, internal


def find_cycle(nodes, pred):
    """Some cycle among ``nodes``; each node has a predecessor in ``nodes``.

    Returned in edge direction with the first node repeated at the end.
    """
    path = [nodes[0]]
    pos = {nodes[0]: 0}
    while True:
        prv = pred[path[-1]][0]
        if prv in pos:
            return list(reversed(path[pos[prv]:] + [prv]))
        pos[prv] = len(path)
        path.append(prv)


def plan_tick(members, trusted=None):
    """Build the :class:`TickPlan` of a network.

    Parameters
    ----------
    members : list of (index, node) or an object with a ``members`` list
        Nodes expose ``inputs`` and ``outputs`` channel sets.
    trusted : callable, optional
        ``trusted(node, G, P)``: may ``node``'s output on ``P`` be read before
        its same-tick input on ``G``? Defaults to verified moore declarations
        of automata.

    Raises
    ------
    PotentialBlocking
        If the unbroken edges contain a cycle.
    """
    if hasattr(members, 'members'):
        members = members.members
    members = list(members)
    trusted = default_trust if trusted is None else trusted
    nodes = dict(members)
    order = [idx for idx, _ in members]
    edges, internal = dependency_edges(members)
    peeks = {}
    broken = []
    indeg = {idx: 0 for idx in order}
    succ = {idx: [] for idx in order}
    for (src, dst), chans in sorted(edges.items(), key=lambda e: (
            order.index(e[0][0]), order.index(e[0][1]))):
        if trusted(nodes[src], internal[src], chans):
            peeks[src] = peeks.get(src, frozenset()) | frozenset(chans)
            broken.append((src, dst, frozenset(chans)))
        else:
            succ[src].append(dst)
            indeg[dst] += 1
    stages = []
    ready = [idx for idx in order if indeg[idx] == 0]
    done = set()
    while ready:
        stages.append(ready)
        done.update(ready)
        nxt = []
        for idx in ready:
            for d in succ[idx]:
                indeg[d] -= 1
                if indeg[d] == 0:
                    nxt.append(d)
        ready = sorted(nxt, key=order.index)
    if len(done) != len(order):
        left = [idx for idx in order if idx not in done]
        pred = {idx: [s for s in left if idx in succ[s]] for idx in left}
        cycle = find_cycle(left, pred)
        chans = set()
        for a, b in zip(cycle, cycle[1:]):
            chans |= edges[(a, b)]
        raise PotentialBlocking(P=chans, cycle=cycle)
    return TickPlan(stages, peeks, broken)
