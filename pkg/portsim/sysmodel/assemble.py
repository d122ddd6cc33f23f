"""Automaton of a distributed component: its parts and medium, composed.

The composition of the medium with the parts is only formed when it is
known not to block: either the medium is the delaying ``cmas`` variant, or
every part is moore on all of its channels. The part ports are hidden.

The result is moore on all of its channels when the medium delays, or when
all parts are moore and no message entering from the environment is routed
straight back to it. Without a routing table the second case is only
sampled, so the declaration is left to be verified before it is trusted.
"""

from portsim.automata.checks import trusted_moore
from portsim.composition.network import FamilySpec
from portsim.composition.operators import compose_family, hide
from portsim.sysmodel.medium import medium_automaton, returns_to_environment
from portsim.utils.errors import (
        HierarchyError,
        PotentialBlocking,
        SignatureMismatch
        )


def part_is_strong(a):
    return (a.full_moore() is not None
            and trusted_moore(a, a.inputs, a.outputs))


def assemble(h, c, automata, spec, active=None, force=False, verbose=False):
    """Compose the medium of ``c`` with the automata of its parts.

    Parameters
    ----------
    h : :class:`portsim.sysmodel.hierarchy.Hierarchy`
        Hierarchy containing ``c``.
    c : string
        Distributed component id. The medium is the member indexed ``c``.
    automata : dict
        Part id -> automaton with exactly the part's ports.
    spec : :class:`portsim.sysmodel.medium.MediumSpec`
        Medium over the origins and destinations of ``c``.
    active : iterable, optional
        Parts live at tick 0; all parts if not given. The medium is always
        live.
    force : bool
        Compose even if neither well-definedness condition holds.

    Returns
    -------
    automaton : :class:`portsim.automata.automaton.Automaton`
        Signature (In_c, Out_c) with the part ports hidden. The attribute
        ``justification`` records which condition admitted the composition
        (``medium``, ``parts`` or ``forced``) and ``medium`` holds ``spec``.

    Raises
    ------
    HierarchyError
        If ``c`` has no parts.
    SignatureMismatch
        If a part automaton or the medium does not fit the hierarchy.
    PotentialBlocking
        If neither condition holds and ``force`` is not set.
    """
    parts = sorted(h.parts(c))
    if not parts:
        raise HierarchyError("{} is a basic component".format(c))
    for p in parts:
        if p not in automata:
            raise SignatureMismatch("no automaton for part {}".format(p))
        a = automata[p]
        if a.inputs != h.in_ports(p) or a.outputs != h.out_ports(p):
            raise SignatureMismatch(
                "automaton {} has I={} O={}, part {} has I={} O={}".format(
                    a.name, sorted(a.inputs), sorted(a.outputs), p,
                    sorted(h.in_ports(p)), sorted(h.out_ports(p))))
    if spec.origins != h.origins(c) or spec.destinations != h.destinations(c):
        raise SignatureMismatch("medium of {} does not match its origins and "
                                "destinations".format(c))
    medium = medium_automaton(spec)
    medium_strong = (spec.delay == 'cmas'
                     and trusted_moore(medium, medium.inputs, medium.outputs))
    parts_strong = all(part_is_strong(automata[p]) for p in parts)
    if medium_strong:
        justification = 'medium'
    elif parts_strong:
        justification = 'parts'
    elif force:
        justification = 'forced'
    else:
        raise PotentialBlocking(h.out_parts(c), h.in_parts(c))
    if verbose:
        print("# Assembling {} from {} parts with a {} medium ({}).".format(
              c, len(parts), spec.delay, justification))
    members = [(c, medium)] + [(p, automata[p]) for p in parts]
    live = None if active is None else [c] + list(active)
    net = compose_family(FamilySpec(members, active=live), force=force,
                         name=c)
    hidden = hide(net, h.in_parts(c) | h.out_parts(c))
    loops, decided = returns_to_environment(spec, h.in_ports(c),
                                            h.out_ports(c))
    if medium_strong or (parts_strong and not loops):
        origin = 'derived' if medium_strong or decided else 'declared'
        if hidden.full_moore() is None:
            hidden.declare_moore(hidden.inputs, hidden.outputs, origin=origin)
    elif verbose and loops:
        print("# Note: {} routes environment input back to the environment, "
              "e.g. {}.".format(c, loops[0]))
    hidden.justification = justification
    hidden.medium = spec
    return hidden
