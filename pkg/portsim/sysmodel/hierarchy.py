"""Component hierarchy of a system model.

Components are identified by ids. Distributed components have parts; basic
components (the leaves) have none. Every component owns its input and output
ports exclusively.
"""

from portsim.utils.errors import HierarchyError


class Hierarchy(object):
    """Tree of components with their ports.

    Parameters
    ----------
    parts : dict
        Component id -> iterable of part ids. Ids without an entry are
        basic.
    in_ports : dict
        Component id -> iterable of input channels.
    out_ports : dict
        Component id -> iterable of output channels.
    root : string, optional
        Root id. Inferred as the only id which is nobody's part.

    Attributes
    ----------
    ids : frozenset
        All component ids.
    root : string
        Root of the tree.

    Raises
    ------
    HierarchyError
        If parts do not form a tree or ports are shared.
    """

    def __init__(self, parts, in_ports=None, out_ports=None, root=None):
        self._parts = {c: frozenset(p) for c, p in parts.items()}
        in_ports = {} if in_ports is None else in_ports
        out_ports = {} if out_ports is None else out_ports
        ids = set(self._parts)
        for p in self._parts.values():
            ids |= p
        ids |= set(in_ports) | set(out_ports)
        self.ids = frozenset(ids)
        self._in = {c: frozenset(in_ports.get(c, ())) for c in self.ids}
        self._out = {c: frozenset(out_ports.get(c, ())) for c in self.ids}
        self.root = self._find_root(root)
        self._check_tree()
        self._check_ports()

    def _find_root(self, root):
        parent = {}
        for c, ps in sorted(self._parts.items()):
            for p in ps:
                if p in parent:
                    raise HierarchyError("{} is a part of both {} and {}"
                                         .format(p, parent[p], c))
                parent[p] = c
        self._parent = parent
        tops = sorted(self.ids - set(parent))
        if root is None:
            if len(tops) != 1:
                raise HierarchyError("expected exactly one root, found {}"
                                     .format(tops))
            return tops[0]
        if root not in self.ids:
            raise HierarchyError("unknown root {}".format(root))
        if root in parent:
            raise HierarchyError("root {} is a part of {}"
                                 .format(root, parent[root]))
        return root

    def _check_tree(self):
        seen = set()
        stack = [self.root]
        while stack:
            c = stack.pop()
            if c in seen:
                raise HierarchyError("{} reached twice".format(c))
            seen.add(c)
            stack.extend(sorted(self.parts(c)))
        missing = self.ids - seen
        if missing:
            raise HierarchyError("not reachable from {}: {}"
                                 .format(self.root, sorted(missing)))

    def _check_ports(self):
        owner = {}
        for c in sorted(self.ids):
            common = self._in[c] & self._out[c]
            if common:
                raise HierarchyError("{} uses {} as input and output"
                                     .format(c, sorted(common)))
            for port in self._in[c] | self._out[c]:
                if port in owner:
                    raise HierarchyError("port {} belongs to {} and {}"
                                         .format(port, owner[port], c))
                owner[port] = c
        self._owner = owner

    def parts(self, c):
        return self._parts.get(c, frozenset())

    def parent(self, c):
        return self._parent.get(c)

    def owner(self, port):
        return self._owner.get(port)

    def in_ports(self, c):
        return self._in[c]

    def out_ports(self, c):
        return self._out[c]

    def is_basic(self, c):
        return not self.parts(c)

    @property
    def basic_ids(self):
        return frozenset(c for c in self.ids if self.is_basic(c))

    @property
    def distributed_ids(self):
        return self.ids - self.basic_ids

    def in_parts(self, c):
        """Inputs of the parts of c."""
        return frozenset().union(*(self._in[p] for p in self.parts(c)))

    def out_parts(self, c):
        return frozenset().union(*(self._out[p] for p in self.parts(c)))

    def origins(self, c):
        """Input channels of c's communication medium."""
        return self._in[c] | self.out_parts(c)

    def destinations(self, c):
        """Output channels of c's communication medium."""
        return self._out[c] | self.in_parts(c)

    def __repr__(self):
        return "Hierarchy(root={}, ids={})".format(self.root, len(self.ids))
