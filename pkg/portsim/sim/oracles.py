"""Independent reference computations the simulated networks are checked
against."""

from collections import deque
from portsim.streams.history import NamedSeq, project
from portsim.systems.gates import nor
from portsim.systems.queue import ENV, deq, enq, read_deqd
from portsim.utils.errors import Stuck


def stabilization_tick(trace, channels=None):
    """First tick from which the trace is constant on ``channels``.

    Returns the horizon if the last two ticks differ, and 1 for constant or
    empty traces.
    """
    channels = trace.channels if channels is None else frozenset(channels)
    ticks = [project(t, channels) for t in trace.ticks]
    if not ticks:
        return 1
    n = len(ticks)
    while n > 1 and ticks[n-2] == ticks[-1]:
        n -= 1
    return n


def nor_recurrence(s, r, q0, qbar0, horizon=None):
    """Levels (q, qbar) at ticks 1..T of a flip-flop of one tick gates.

    ``s`` and ``r`` are the input bits at ticks 1..T; ``q0`` and ``qbar0``
    the outputs at tick 1.
    """
    horizon = len(s) if horizon is None else horizon
    levels = [(q0, qbar0)]
    for n in range(horizon-1):
        q, qbar = levels[-1]
        levels.append((nor(r[n], qbar), nor(s[n], q)))
    return levels


class ReferenceQueue(object):
    """List based FIFO queue."""

    def __init__(self):
        self.items = deque()

    def enq(self, value):
        self.items.append(value)

    def deq(self):
        return self.items.popleft()

    def __len__(self):
        return len(self.items)

    def run(self, program):
        """Values returned by the deq operations of ``program``."""
        out = []
        for op in program:
            if op[0] == 'enq':
                self.enq(op[1])
            else:
                out.append(self.deq())
        return out


def random_program(rng, nenq, values=(1, 2, 3)):
    """Random interleaving of ``nenq`` enqs and up to ``nenq`` deqs.

    No prefix holds more deqs than enqs.
    """
    ndeq = int(rng.integers(nenq+1))
    program = []
    held = 0
    enqs, deqs = nenq, ndeq
    while enqs or deqs:
        if deqs and held and (not enqs or rng.random() < 0.5):
            program.append(('deq',))
            held -= 1
            deqs -= 1
        elif enqs:
            program.append(('enq', int(rng.choice(values))))
            held += 1
            enqs -= 1
        else:
            break
    return program


class QueueDriver(object):
    """Closed loop environment running a program against a queue network.

    Enqs are sent to the first element as soon as they come up. A deq is
    sent once every earlier enq has settled and no other deq is waiting for
    its reply; it goes to the element currently at the head, which the reply
    names.

    Parameters
    ----------
    net : :class:`portsim.automata.automaton.Automaton`
        Queue network with input ``<name>.i`` and output ``<name>.o``.
    name : string
        Queue name.
    """

    def __init__(self, net, name='qu'):
        self.net = net
        self.inp = '{}.i'.format(name)
        self.out = '{}.o'.format(name)

    def run(self, program, chooser, max_ticks=None):
        """Drive ``program``.

        Returns
        -------
        values : list
            Values of the deq replies in arrival order.
        activity : list of tuples
            ``(live elements, enqs sent)`` after every tick.
        """
        nenq_total = sum(1 for op in program if op[0] == 'enq')
        if max_ticks is None:
            max_ticks = (len(program) + 2) * (nenq_total + 4)
        pending = deque(program)
        state = self.net.initial(chooser)
        head, first = 'q0', 'q0'
        waiting = False
        last_enq, nenq = -1, 0
        values, activity = [], []
        ndeq = sum(1 for op in program if op[0] == 'deq')
        for n in range(1, max_ticks+1):
            if not pending and len(values) == ndeq:
                break
            sent = ()
            if pending and pending[0][0] == 'enq':
                sent = (enq(pending.popleft()[1], ENV, first),)
                last_enq, nenq = n, nenq + 1
            elif pending and not waiting and n >= last_enq + nenq + 2:
                pending.popleft()
                sent = (deq(ENV, ENV, head),)
                waiting = True
            theta_in = NamedSeq({self.inp: sent}, channels=self.net.inputs)
            step = self.net.choose(state, theta_in, chooser)
            if step is None:
                raise Stuck(state, theta_in, n)
            theta, state = step
            for m in theta[self.out]:
                if m.sort == 'deqd':
                    value, nxt = read_deqd(m)
                    values.append(value)
                    head = nxt
                    waiting = False
            activity.append((len(state.live) - 1, nenq))
        return values, activity

