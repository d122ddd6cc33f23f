"""Time-synchronous composition of a family of automata.

All members transition once per tick. Within a tick, members are evaluated
in the stages of a :class:`portsim.composition.plan.TickPlan`: outputs on
moore-broken channels are read first (peeked) from the members' states,
then stages run in order, each member seeing its complete input and being
constrained to agree with what was peeked from it.

Members of a family come alive lazily: a member not marked active at tick 0
is dormant (emits nothing, keeps no state) until a message is addressed to
one of its inputs. Its state is created from its initial states in that tick.
"""

import itertools
from portsim.automata.automaton import Automaton
from portsim.automata.policy import Chooser
from portsim.automata.signature import PortSignature
from portsim.composition.plan import plan_tick
from portsim.streams.history import NamedSeq, project
from portsim.utils.errors import (
        IncompatibleSignatures,
        InfiniteActivity,
        PotentialBlocking
        )

DEFAULT_LIMIT = 256


class FamilySpec(object):
    """Indexed family of automata.

    Parameters
    ----------
    members : iterable
        ``(index, automaton)`` pairs or bare automata (indexed 0, 1, ...).
        Possibly a generator; at most ``limit`` members are materialised.
    active : callable or iterable, optional
        Predicate on indices (or the set of indices) live at tick 0. All
        members are live if not given.
    limit : int
        Maximum number of members, and of simultaneously live members.
    """

    def __init__(self, members, active=None, limit=DEFAULT_LIMIT):
        self.limit = limit
        items = []
        for n, m in enumerate(itertools.islice(iter(members), limit+1)):
            items.append(m if isinstance(m, tuple) else (n, m))
        if len(items) > limit:
            raise InfiniteActivity("family has more than {} members"
                                   .format(limit))
        self.members = items
        if active is None:
            self.active = frozenset(idx for idx, _ in items)
        elif callable(active):
            self.active = frozenset(idx for idx, _ in items if active(idx))
        else:
            self.active = frozenset(active)

    def __len__(self):
        return len(self.members)


class NetworkState(object):
    """States of the live members of a composed automaton."""

    __slots__ = ('items',)

    def __init__(self, items):
        self.items = tuple(items)

    def as_dict(self):
        return dict(self.items)

    def get(self, idx, default=None):
        for i, s in self.items:
            if i == idx:
                return s
        return default

    @property
    def live(self):
        return tuple(i for i, _ in self.items)

    def __eq__(self, other):
        return isinstance(other, NetworkState) and self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        return 'NetworkState({})'.format(
            ', '.join('{}={!r}'.format(i, s) for i, s in self.items))


def check_compatible(automata):
    """Pairwise compatibility of member signatures.

    Outputs must be disjoint, and hidden channels private to their owner.
    """
    owner = {}
    for a in automata:
        for c in a.signature.outputs | a.signature.hidden:
            if c in owner:
                raise IncompatibleSignatures(c, 'two members produce it')
            owner[c] = a
    for a in automata:
        for c in a.signature.inputs:
            if c in owner and c in owner[c].signature.hidden:
                raise IncompatibleSignatures(c, 'hidden channel read by '
                                             'another member')


def network_signature(automata):
    outputs = frozenset().union(*(a.outputs for a in automata))
    hidden = frozenset().union(*(a.signature.hidden for a in automata))
    inputs = frozenset().union(*(a.inputs for a in automata)) - outputs
    alphabet = {}
    for a in automata:
        alphabet.update(a.signature.alphabet)
    return PortSignature(inputs, outputs, hidden, alphabet)


class ComposedAutomaton(Automaton):
    """Product automaton of a family, see module documentation.

    Parameters
    ----------
    family : :class:`FamilySpec`
        Members.
    force : bool
        If the members may block each other, run anyway: each tick is then
        computed by fixed point iteration over all members and blocking
        surfaces as a stuck execution.
    name : string
        Name.
    max_iter : int
        Iteration bound for forced evaluation.
    """

    def __init__(self, family, force=False, name='network', max_iter=32):
        self.family = family
        self.members = list(family.members)
        self.automata = dict(self.members)
        self.limit = family.limit
        self.force = force
        self.max_iter = max_iter
        automata = [a for _, a in self.members]
        check_compatible(automata)
        sig = network_signature(automata)
        try:
            self.plan = plan_tick(self.members)
        except PotentialBlocking:
            if not force:
                raise
            self.plan = None
        produced = frozenset().union(*(a.outputs for a in automata))
        consumed = frozenset().union(*(a.inputs for a in automata))
        self.internal = produced & consumed
        self.owned = {idx: a.outputs | a.signature.hidden
                      for idx, a in self.members}
        active = [(idx, a) for idx, a in self.members if idx in family.active]
        initial = [NetworkState(zip([i for i, _ in active], combo))
                   for combo in itertools.product(*(a.initial_states
                                                    for _, a in active))]
        super().__init__(sig, initial, self._enumerate,
                         constrained=self._enumerate, name=name)

    def initial(self, chooser):
        items = []
        for idx, a in self.members:
            if idx in self.family.active:
                items.append((idx, a.initial(chooser.child(idx))))
        return NetworkState(items)

    def _enumerate(self, state, inp, fixed=None):
        if self.plan is None:
            step = self._forced(state, inp, Chooser(0, 'first'))
            if step is not None and (not fixed or all(
                    step[0][c] == v for c, v in fixed.items())):
                yield step
            return
        steps = ([('peek', idx) for idx in self.plan.order
                  if idx in self.plan.peeks]
                 + [('run', idx) for idx in self.plan.order])
        yield from self._branch(0, steps, state.as_dict(), {}, dict(inp.items()),
                                {}, inp, fixed, None)

    def choose(self, state, inp, chooser, fixed=None):
        if self.plan is None:
            return self._forced(state, inp, chooser)
        steps = ([('peek', idx) for idx in self.plan.order
                  if idx in self.plan.peeks]
                 + [('run', idx) for idx in self.plan.order])
        return next(self._branch(0, steps, state.as_dict(), {},
                                 dict(inp.items()), {}, inp, fixed, chooser),
                    None)

    def _options(self, a, idx, s, x, fx, chooser):
        if chooser is None:
            if fx:
                return a.constrained(s, x, fx)
            return a.transitions(s, x)
        step = a.choose(s, x, chooser.child(idx), fixed=fx or None)
        return [step] if step is not None else []

    def _member_fixed(self, idx, peeked, fixed):
        fx = {}
        if fixed:
            fx.update((c, v) for c, v in fixed.items() if c in self.owned[idx])
        if idx in peeked:
            fx.update(peeked[idx].items())
        return NamedSeq(fx)

    def _branch(self, k, steps, pre, post, values, peeked, inp, fixed,
                chooser):
        if k == len(steps):
            yield self._finish(values, pre, post)
            return
        kind, idx = steps[k]
        a = self.automata[idx]
        if kind == 'peek':
            chans = self.plan.peeks[idx]
            if idx not in pre:
                out = NamedSeq.empty(chans)
                options = [out]
            else:
                probe = NamedSeq({c: inp[c] if c in inp else ()
                                  for c in a.inputs})
                fx = self._member_fixed(idx, {}, fixed)
                options = []
                for theta, _ in self._options(a, idx, pre[idx], probe, fx,
                                              chooser):
                    out = project(theta, chans)
                    if out not in options:
                        options.append(out)
            for out in options:
                new_values = dict(values)
                new_values.update(out.items())
                new_peeked = dict(peeked)
                new_peeked[idx] = out
                yield from self._branch(k+1, steps, pre, post, new_values,
                                        new_peeked, inp, fixed, chooser)
            return
        x = NamedSeq({c: values.get(c, ()) for c in a.inputs})
        fx = self._member_fixed(idx, peeked, fixed)
        if idx in pre:
            starts = [pre[idx]]
        elif x.is_empty():
            # Dormant: nothing produced, no state.
            if any(len(v) for v in fx.values()):
                return
            yield from self._branch(k+1, steps, pre, post, values, peeked,
                                    inp, fixed, chooser)
            return
        elif chooser is None:
            starts = a.initial_states
        else:
            starts = [a.initial(chooser.child(idx))]
        for s in starts:
            for theta, nxt in self._options(a, idx, s, x, fx, chooser):
                new_values = dict(values)
                new_values.update((c, theta[c]) for c in self.owned[idx])
                new_post = dict(post)
                new_post[idx] = nxt
                yield from self._branch(k+1, steps, pre, new_post,
                                        new_values, peeked, inp, fixed,
                                        chooser)

    def _finish(self, values, pre, post):
        if len(post) > self.limit:
            raise InfiniteActivity("{} live members exceed limit {}"
                                   .format(len(post), self.limit))
        theta = NamedSeq({c: values.get(c, ()) for c in self.channels})
        items = [(idx, post[idx]) for idx, _ in self.members if idx in post]
        return theta, NetworkState(items)

    def _forced(self, state, inp, chooser):
        pre = state.as_dict()
        guess = {c: () for c in self.internal}
        for it in range(self.max_iter):
            values = dict(inp.items())
            values.update(guess)
            post = {}
            produced = {}
            for idx, a in self.members:
                x = NamedSeq({c: values.get(c, ()) for c in a.inputs})
                if idx in pre:
                    s = pre[idx]
                elif x.is_empty():
                    continue
                else:
                    s = a.initial(chooser.child(idx))
                step = a.choose(s, x, chooser.child(idx))
                if step is None:
                    return None
                theta, nxt = step
                produced.update((c, theta[c]) for c in self.owned[idx])
                post[idx] = nxt
            new_guess = {c: produced.get(c, ()) for c in self.internal}
            if new_guess == guess:
                values.update(produced)
                return self._finish(values, pre, post)
            guess = new_guess
        return None

    def __repr__(self):
        return "ComposedAutomaton({}, members={})".format(
            self.name, [idx for idx, _ in self.members])
