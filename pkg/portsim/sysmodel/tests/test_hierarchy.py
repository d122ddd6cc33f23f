import pytest
from portsim.streams.message import Message
from portsim.sysmodel.hierarchy import Hierarchy
from portsim.sysmodel.routing import RoutingTable
from portsim.systems.gates import flipflop_hierarchy
from portsim.utils.errors import HierarchyError, ParseError, UnroutableMessage


@pytest.mark.unit
def test_flipflop_views():
    h = flipflop_hierarchy()
    assert h.root == 'ff'
    assert h.basic_ids == frozenset(['g1', 'g2'])
    assert h.distributed_ids == frozenset(['ff'])
    assert h.in_parts('ff') == frozenset(['g1.a', 'g1.b', 'g2.a', 'g2.b'])
    assert h.out_parts('ff') == frozenset(['g1.o', 'g2.o'])
    assert h.origins('ff') == frozenset(['s', 'r', 'g1.o', 'g2.o'])
    assert h.destinations('ff') == frozenset(['q', 'qbar', 'g1.a', 'g1.b',
                                              'g2.a', 'g2.b'])
    assert h.owner('g2.b') == 'g2'
    assert h.parent('g1') == 'ff'
    assert h.is_basic('g1')


@pytest.mark.unit
def test_nested():
    h = Hierarchy({'top': ['mid', 'leaf'], 'mid': ['a', 'b']})
    assert h.root == 'top'
    assert h.basic_ids == frozenset(['leaf', 'a', 'b'])
    assert h.distributed_ids == frozenset(['top', 'mid'])


@pytest.mark.unit
def test_not_a_tree():
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['b'], 'b': ['a']})
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['c'], 'b': ['c'], 'top': ['a', 'b']})
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['b']}, in_ports={'c': ['x']}, root='a')
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['b']}, root='b')


@pytest.mark.unit
def test_port_ownership():
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['b', 'c']}, in_ports={'b': ['x'], 'c': ['x']})
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['b']}, in_ports={'b': ['x']}, out_ports={'b': ['x']})
    with pytest.raises(HierarchyError):
        Hierarchy({'a': ['b']}, in_ports={'a': ['x']}, out_ports={'b': ['x']})


TABLE = """\
# queue style routing
origin *@q*->* -> {sender}.o
origin * -> qu.i
route *@*->q0 -> q0.i
route *@*->env -> qu.o,log
route * -> drop
"""


@pytest.mark.unit
def test_routing_table():
    table = RoutingTable.parse(TABLE.splitlines())
    into = Message('enq', 1, ('env', 'q0'))
    back = Message('deqd', '1/Nil', ('q0', 'env'))
    assert table.origin(into) == 'qu.i'
    assert table.origin(back) == 'q0.o'
    assert table.destination(into) == frozenset(['q0.i'])
    assert table.destination(back) == frozenset(['qu.o', 'log'])
    assert table.destination(Message('int', 3)) == frozenset()
    again = RoutingTable.parse(table.render().splitlines())
    assert again.routes == table.routes
    assert again.origins == table.origins


@pytest.mark.unit
def test_routing_errors():
    with pytest.raises(ParseError) as err:
        RoutingTable.parse(['route * -> x'])
    assert err.value.line == 1
    with pytest.raises(ParseError) as err:
        RoutingTable.parse(['route * -> drop', 'route a -> b'])
    assert err.value.line == 2
    with pytest.raises(ParseError):
        RoutingTable.parse(['send * -> x', 'route * -> drop'])
    with pytest.raises(ParseError):
        RoutingTable.parse(['origin * -> a,b', 'route * -> drop'])
    table = RoutingTable.parse(['route int -> x', 'route * -> error'])
    assert table.destination(Message('int', 1)) == frozenset(['x'])
    with pytest.raises(UnroutableMessage):
        table.destination(Message('bit', 'O'))


@pytest.mark.unit
def test_wiring():
    table = RoutingTable.wiring({'s': ['g1.a'], 'g1.o': ['qbar', 'g2.b']})
    m = Message('bit', 'O', ('g1.o', '*'))
    assert table.origin(m) == 'g1.o'
    assert table.destination(m) == frozenset(['qbar', 'g2.b'])
    with pytest.raises(UnroutableMessage):
        table.destination(Message('bit', 'O', ('x', '*')))


@pytest.mark.unit
def test_routes_back():
    table = RoutingTable.wiring({'s': ['g1.a'], 'g1.o': ['qbar', 'g2.b']})
    assert table.routes_back(['s', 'r'], ['q', 'qbar']) == []
    table = RoutingTable.wiring({'in': ['cnt.i', 'out'], 'cnt.o': ['out']})
    assert table.routes_back(['in'], ['out']) == [('*@in->*',
                                                   ('cnt.i', 'out'))]
    table = RoutingTable.parse(['route *@*->x -> {receiver}',
                                'route * -> drop'])
    assert table.routes_back(['in'], ['x']) == [('*@*->x', ('{receiver}',))]
    table = RoutingTable.parse(TABLE.splitlines())
    assert table.routes_back(['qu.i'], ['qu.o'])
