"""Deterministic document-order traversal over a Program.

Traversal order: stage first, then sprites in project order; within an
actor, scripts then procedure definitions; within a unit, depth-first over
statements and expressions (a node's expressions precede its substacks,
matching Locator path indices). Every node is visited exactly once.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .nodes import Actor, Locator, Node, Program, node_children


class NodeVisitor:
    """Dispatching visitor: visit_<ClassName> methods, generic_visit fallback.

    Traversal is driven by visit(); subclasses only observe nodes. State is
    whatever the subclass accumulates on itself.
    """

    def visit_node(self, node: Node, locator: Locator) -> None:
        method = getattr(self, f"visit_{type(node).__name__}", None)
        if method is not None:
            method(node, locator)
        else:
            self.generic_visit(node, locator)

    def generic_visit(self, node: Node, locator: Locator) -> None:
        pass


def iter_unit_nodes(body: list, base: Locator) -> Iterator[tuple[Node, Locator]]:
    """Depth-first nodes of one script/procedure body with their locators.

    Synthetic nodes (empty conditions, defaulted literals) carry no block id
    of their own; their locators inherit the nearest ancestor's id.
    """
    stack: list[tuple[Node, tuple[int, ...], str | None]] = [
        (stmt, (i,), base.block_id) for i, stmt in reversed(list(enumerate(body)))
    ]
    while stack:
        node, path, inherited = stack.pop()
        block_id = getattr(node, "block_id", None) or inherited
        yield node, Locator(
            actor=base.actor,
            script_index=base.script_index,
            proccode=base.proccode,
            path=path,
            block_id=block_id,
        )
        children = node_children(node)
        for i in reversed(range(len(children))):
            stack.append((children[i], path + (i,), block_id))


def iter_nodes(program: Program) -> Iterator[tuple[Node, Locator]]:
    """All statement and expression nodes of a program, document order."""
    for actor in program.actors():
        yield from iter_actor_nodes(actor)


def iter_actor_nodes(actor: Actor) -> Iterator[tuple[Node, Locator]]:
    for index, script in enumerate(actor.scripts):
        base = Locator(actor=actor.name, script_index=index, block_id=script.origin)
        yield from iter_unit_nodes(script.body, base)
    for proc in actor.procedures:
        base = Locator(actor=actor.name, proccode=proc.proccode, block_id=proc.block_id)
        yield from iter_unit_nodes(proc.body, base)


def visit(program: Program, visitor: NodeVisitor) -> NodeVisitor:
    """Walk the program, notifying the visitor of every node; returns it."""
    for node, locator in iter_nodes(program):
        visitor.visit_node(node, locator)
    return visitor


class _CallbackVisitor(NodeVisitor):
    def __init__(self, callback: Callable[[Node, Locator], None]):
        self.callback = callback

    def generic_visit(self, node: Node, locator: Locator) -> None:
        self.callback(node, locator)


def visit_with(program: Program, callback: Callable[[Node, Locator], None]) -> None:
    visit(program, _CallbackVisitor(callback))
