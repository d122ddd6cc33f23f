"""Routing tables: origin and destination functions of a medium.

A routing table is read from lines of the form::

    origin <pattern> -> <template>
    route  <pattern> -> <template>[,<template>...]
    route  * -> drop|error

Patterns are shell style globs (:mod:`fnmatch`) matched against the routing
key of a message, ``sort@sender->receiver`` (``sort`` for messages without
sender and receiver). Templates may refer to ``{sort}``, ``{sender}`` and
``{receiver}``. The first matching rule wins. The last route rule must be the
catch-all ``route * -> drop`` (no destination) or ``route * -> error``.
Without origin rules the origin of a message is its sender.
"""

from fnmatch import fnmatchcase
from portsim.utils.errors import ParseError, UnroutableMessage

FINAL = ('drop', 'error')
GLOB = '*?['


def routing_key(m):
    if m.meta is None:
        return m.sort
    return '{}@{}->{}'.format(m.sort, m.sender, m.receiver)


def fill(template, m):
    return template.format(sort=m.sort, sender=m.sender, receiver=m.receiver)


def sender_pattern(pattern):
    """Sender part of a ``sort@sender->receiver`` pattern, None if absent."""
    _, at, rest = pattern.partition('@')
    if not at or '->' not in rest:
        return None
    return rest.split('->', 1)[0]


class RoutingTable(object):
    """Ordered origin and route rules.

    Parameters
    ----------
    routes : list of tuples
        ``(pattern, targets)`` with ``targets`` a tuple of templates, or the
        string ``drop`` or ``error``.
    origins : list of tuples
        ``(pattern, template)``.
    """

    def __init__(self, routes, origins=()):
        self.routes = [(p, t if isinstance(t, str) else tuple(t))
                       for p, t in routes]
        self.origins = list(origins)
        if not self.routes or self.routes[-1][0] != '*' \
                or self.routes[-1][1] not in FINAL:
            raise ValueError("routing table must end with route * -> "
                             "drop|error")

    @classmethod
    def parse(cls, lines, start=1):
        """Build from text lines; ``start`` is the number of the first line.

        Lines may also be given as ``(number, text)`` pairs.

        Raises
        ------
        ParseError
            On malformed rules or a missing final rule.
        """
        routes = []
        origins = []
        last = start
        numbered = [l if isinstance(l, tuple) else (n, l)
                    for n, l in enumerate(lines, start=start)]
        for n, line in numbered:
            last = n
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            rule = parse_rule(line, n)
            if rule[0] == 'origin':
                origins.append(rule[1:])
            else:
                if routes and routes[-1][0] == '*' and routes[-1][1] in FINAL:
                    raise ParseError(n, "route after the final catch-all rule")
                routes.append(rule[1:])
        if not routes or routes[-1][0] != '*' or routes[-1][1] not in FINAL:
            raise ParseError(last, "missing final rule route * -> drop|error")
        return cls(routes, origins)

    @classmethod
    def wiring(cls, wires, final='error'):
        """Table sending everything a port emits to fixed ports.

        ``wires`` maps a sender port to a list of receiving ports.
        """
        routes = [('*@{}->*'.format(src), tuple(dst))
                  for src, dst in sorted(wires.items())]
        return cls(routes + [('*', final)])

    def routes_back(self, inputs, outputs):
        """Route rules that may pass a message entering on ``inputs`` straight
        on to ``outputs``.

        Decided from the rules alone. A rule is skipped only if its pattern
        names a literal sender outside ``inputs`` while no origin rule can
        relabel senders, or if none of its targets can be an output.
        """
        inputs, outputs = frozenset(inputs), frozenset(outputs)
        found = []
        for pattern, targets in self.routes:
            if targets in FINAL:
                continue
            sender = sender_pattern(pattern)
            if (not self.origins and sender is not None
                    and not any(ch in sender for ch in GLOB)
                    and sender not in inputs):
                continue
            if any('{' in t or t in outputs for t in targets):
                found.append((pattern, targets))
        return found

    def origin(self, m):
        key = routing_key(m)
        for pattern, template in self.origins:
            if fnmatchcase(key, pattern):
                return fill(template, m)
        return m.sender

    def destination(self, m):
        """Set of destination channels of ``m``; empty for dropped messages.

        Raises
        ------
        UnroutableMessage
            If ``m`` falls through to ``route * -> error``.
        """
        key = routing_key(m)
        for pattern, targets in self.routes:
            if fnmatchcase(key, pattern):
                if targets == 'drop':
                    return frozenset()
                if targets == 'error':
                    raise UnroutableMessage(m)
                return frozenset(fill(t, m) for t in targets)
        raise UnroutableMessage(m)

    def render(self):
        lines = ['origin {} -> {}'.format(p, t) for p, t in self.origins]
        for p, t in self.routes:
            lines.append('route {} -> {}'.format(
                p, t if isinstance(t, str) else ','.join(t)))
        return '\n'.join(lines) + '\n'

    def __repr__(self):
        return "RoutingTable({} routes, {} origin rules)".format(
            len(self.routes), len(self.origins))


def parse_rule(line, n):
    words = line.split(None, 1)
    if len(words) != 2 or words[0] not in ('origin', 'route'):
        raise ParseError(n, "expected origin or route rule")
    kind, rest = words
    if '->' not in rest:
        raise ParseError(n, "missing '->'")
    # The pattern itself may contain '->' (sender->receiver).
    pattern, target = rest.rsplit(' -> ', 1) if ' -> ' in rest else (None, None)
    if pattern is None:
        raise ParseError(n, "targets must be separated by ' -> '")
    pattern, target = pattern.strip(), target.strip()
    if not pattern or not target:
        raise ParseError(n, "empty pattern or target")
    if kind == 'origin':
        if ',' in target:
            raise ParseError(n, "a message has exactly one origin")
        return ('origin', pattern, target)
    if target in FINAL:
        return ('route', pattern, target)
    targets = tuple(t.strip() for t in target.split(','))
    if not all(targets):
        raise ParseError(n, "empty destination")
    return ('route', pattern, targets)
