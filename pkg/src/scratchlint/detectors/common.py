"""Shared finding type and traversal helpers for the detectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..nodes import (
    Actor,
    EventHandler,
    Expression,
    HatKind,
    Locator,
    Node,
    Program,
    Script,
    Statement,
    node_children,
)
from ..visitor import iter_nodes, iter_unit_nodes

__all__ = [
    "Finding",
    "hat_locator",
    "iter_nodes",
    "iter_unit_nodes",
    "iter_units",
    "iter_hats",
    "walk_statements",
    "walk_expression",
    "contains",
]


@dataclass(frozen=True)
class Finding:
    """One detected bug-pattern instance."""

    detector: str
    actor: str
    locator: Locator
    message: str


def hat_locator(actor: Actor, index: int, script: Script) -> Locator:
    """Locator pointing at a script's top-level (hat) block."""
    block_id = script.origin
    if script.event is not None and script.event.block_id is not None:
        block_id = script.event.block_id
    return Locator(actor=actor.name, script_index=index, path=(), block_id=block_id)


def iter_units(actor: Actor) -> Iterator[tuple[Locator, list[Statement]]]:
    """Every statement sequence root of an actor: scripts and procedure bodies."""
    for index, script in enumerate(actor.scripts):
        yield Locator(actor=actor.name, script_index=index, block_id=script.origin), script.body
    for proc in actor.procedures:
        yield Locator(actor=actor.name, proccode=proc.proccode, block_id=proc.block_id), proc.body


def iter_hats(program: Program, kind: HatKind) -> Iterator[tuple[Actor, int, Script, EventHandler]]:
    for actor in program.actors():
        for index, script in enumerate(actor.scripts):
            if script.event is not None and script.event.kind is kind:
                yield actor, index, script, script.event


def walk_statements(body: list[Statement]) -> Iterator[Statement]:
    """All statements of a body, nested substacks included, document order."""
    stack: list[Statement] = list(reversed(body))
    while stack:
        stmt = stack.pop()
        yield stmt
        nested = [c for c in node_children(stmt) if isinstance(c, Statement)]
        stack.extend(reversed(nested))


def walk_expression(expr: Expression) -> Iterator[Expression]:
    """An expression and all its sub-expressions, document order."""
    stack: list[Node] = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Expression):
            yield node
        stack.extend(reversed(node_children(node)))


def contains(body: list[Statement], node_type) -> bool:
    return any(isinstance(stmt, node_type) for stmt in walk_statements(body))
