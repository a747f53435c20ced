""" Expression tree of the coefficient language and its canonical printer. """

from typing import NamedTuple, Set, Tuple, Union

__all__ = ("Num",
           "Time",
           "Lag",
           "MeanLag",
           "MeanSupNorm",
           "Neg",
           "BinOp",
           "Func",
           "Node",
           "FUNCTION_ARITY",
           "to_source",
           "depth",
           "terminals")

FUNCTION_ARITY = {'min': 2, 'max': 2, 'exp': 1, 'tanh': 1, 'abs': 1}


class Num(NamedTuple):
    """ Decimal constant. """
    value: float
    kind: str = 'num'


class Time(NamedTuple):
    """ The time argument `t`. """
    kind: str = 't'


class Lag(NamedTuple):
    """ :math:`\\xi^i(\\theta)`: value of coordinate `coordinate` of the segment at lag `theta`. """
    coordinate: int
    """ int: 1-based coordinate. """
    theta: float
    """ float: Lag snapped to the grid. """
    column: int
    """ int: Segment column holding the lag. """
    kind: str = 'lag'


class MeanLag(NamedTuple):
    """ :math:`\\int \\xi^i(\\theta)\\,\\mu(d\\xi)`: law mean of a lagged value. """
    coordinate: int
    theta: float
    column: int
    kind: str = 'mean'


class MeanSupNorm(NamedTuple):
    """ :math:`\\int \\|\\xi\\|_\\infty\\,\\mu(d\\xi)`. """
    kind: str = 'supnorm'


class Neg(NamedTuple):
    operand: 'Node'
    kind: str = 'neg'


class BinOp(NamedTuple):
    op: str
    """ str: One of :code:`'+'`, :code:`'-'`, :code:`'*'` or :code:`'/'`. """
    left: 'Node'
    right: 'Node'
    kind: str = 'binop'


class Func(NamedTuple):
    name: str
    """ str: Key of :data:`FUNCTION_ARITY`. """
    args: Tuple['Node', ...]
    kind: str = 'func'


Node = Union[Num, Time, Lag, MeanLag, MeanSupNorm, Neg, BinOp, Func]


def to_source(node: Node) -> str:
    """ Canonical text of `node`.
    Binary operations and negations are fully parenthesised and numbers are written with :func:`repr`, so parsing
    the output reproduces the tree exactly.
    """
    if isinstance(node, Num):
        text = repr(float(node.value))
        return f"({text})" if node.value < 0 else text
    if isinstance(node, Time):
        return 't'
    if isinstance(node, Lag):
        return f"x[{node.coordinate}]({float(node.theta)!r})"
    if isinstance(node, MeanLag):
        return f"E[x[{node.coordinate}]({float(node.theta)!r})]"
    if isinstance(node, MeanSupNorm):
        return 'E[supnorm]'
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Func):
        return f"{node.name}({', '.join(to_source(a) for a in node.args)})"
    raise TypeError(f"Unknown node type {type(node).__name__}.")


def _children(node: Node) -> Tuple[Node, ...]:
    if isinstance(node, Neg):
        return node.operand,
    if isinstance(node, BinOp):
        return node.left, node.right
    if isinstance(node, Func):
        return node.args
    return ()


def depth(node: Node) -> int:
    """ Number of nodes on the longest root-to-leaf path. """
    deepest = 0
    stack = [(node, 1)]
    while stack:
        current, level = stack.pop()
        deepest = max(deepest, level)
        stack.extend((child, level + 1) for child in _children(current))
    return deepest


def terminals(node: Node) -> Set[Node]:
    """ Set of leaves of the tree (constants excluded). """
    found = set()
    stack = [node]
    while stack:
        current = stack.pop()
        children = _children(current)
        if children:
            stack.extend(children)
        elif not isinstance(current, Num):
            found.add(current)
    return found
