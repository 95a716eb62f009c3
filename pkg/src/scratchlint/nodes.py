"""Typed syntax tree for Scratch programs.

A Program is a tree of actors (stage + sprites), each owning scripts and
custom-block definitions. Statements and expressions form a closed set of
node classes; blocks the analyzer does not model specifically are kept as
generic statement/expression nodes so nothing in a project is dropped.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator


def normalize_name(name: Any) -> str:
    """Canonical form for broadcast and backdrop names: trimmed, case-folded."""
    return str(name).strip().casefold()


class LiteralKind(Enum):
    NUMBER = "number"
    POSITIVE_NUMBER = "positive-number"
    WHOLE_NUMBER = "whole-number"
    ANGLE = "angle"
    COLOR = "color"
    STRING = "string"
    BROADCAST = "broadcast-ref"
    VARIABLE = "variable-ref"
    LIST = "list-ref"


# Kinds that denote a compile-time constant (variable/list/broadcast
# references read runtime state and are excluded).
CONSTANT_KINDS = frozenset(
    {
        LiteralKind.NUMBER,
        LiteralKind.POSITIVE_NUMBER,
        LiteralKind.WHOLE_NUMBER,
        LiteralKind.ANGLE,
        LiteralKind.COLOR,
        LiteralKind.STRING,
    }
)


class ParameterKind(Enum):
    STRING_NUMBER = "string-number"
    BOOLEAN = "boolean"


class HatKind(Enum):
    GREEN_FLAG = "when-green-flag"
    KEY_PRESSED = "when-key-pressed"
    BROADCAST_RECEIVED = "when-broadcast-received"
    BACKDROP_SWITCHED = "when-backdrop-switches-to"
    SPRITE_CLICKED = "when-this-sprite-clicked"
    START_AS_CLONE = "when-start-as-clone"
    OTHER = "other"


class TargetKind(Enum):
    """How a sprite/backdrop slot is filled: a fixed choice or an expression."""

    NAMED = "named"
    MYSELF = "myself"
    MOUSE = "mouse-pointer"
    EDGE = "edge"
    NEXT = "next"
    PREVIOUS = "previous"
    RANDOM = "random"
    DYNAMIC = "dynamic"


class Node:
    """Base class for statements and expressions."""

    block_id: str | None


class Expression(Node):
    pass


class Statement(Node):
    pass


def _node(cls):
    return dataclass(eq=False)(cls)


# --- expressions -----------------------------------------------------------


@_node
class Literal(Expression):
    kind: LiteralKind
    value: Any
    block_id: str | None = None


@_node
class EmptyCondition(Expression):
    """Placeholder for an empty boolean slot."""

    block_id: str | None = None


@_node
class ParameterUse(Expression):
    name: str
    kind: ParameterKind
    block_id: str | None = None


@_node
class Comparison(Expression):
    op: str  # "=", ">", "<"
    left: Expression
    right: Expression
    block_id: str | None = None


@_node
class BoolOp(Expression):
    op: str  # "and", "or"
    left: Expression
    right: Expression
    block_id: str | None = None


@_node
class Not(Expression):
    operand: Expression
    block_id: str | None = None


@_node
class Arithmetic(Expression):
    op: str
    args: list[Expression]
    block_id: str | None = None


@dataclass(eq=False)
class SlotTarget:
    """A touchable / clone-of / backdrop slot value with menus folded in.

    `expr` is set when the slot holds an expression instead of a menu choice;
    `name` carries the chosen or literal name when one is statically known.
    """

    kind: TargetKind
    name: str | None = None
    expr: Expression | None = None


@_node
class Touching(Expression):
    target: SlotTarget
    block_id: str | None = None


@_node
class TouchingColor(Expression):
    color: Expression
    block_id: str | None = None


@_node
class ColorIsTouchingColor(Expression):
    color_a: Expression
    color_b: Expression
    block_id: str | None = None


@_node
class KeyPressed(Expression):
    key: str | None  # None when the slot holds an expression
    expr: Expression | None = None
    block_id: str | None = None


@_node
class MouseDown(Expression):
    block_id: str | None = None


@_node
class MouseX(Expression):
    block_id: str | None = None


@_node
class MouseY(Expression):
    block_id: str | None = None


@_node
class DistanceTo(Expression):
    target: SlotTarget
    block_id: str | None = None


@_node
class Timer(Expression):
    block_id: str | None = None


@_node
class XPosition(Expression):
    block_id: str | None = None


@_node
class YPosition(Expression):
    block_id: str | None = None


@_node
class Direction(Expression):
    block_id: str | None = None


@_node
class GenericExpression(Expression):
    """Any reporter the analyzer has no dedicated node for."""

    opcode: str
    args: list[Expression] = field(default_factory=list)
    boolean_shaped: bool = False
    shadow: bool = False
    block_id: str | None = None


# Reporters that produce x/y-style coordinate values.
POSITION_REPORTERS = (XPosition, YPosition, MouseX, MouseY, DistanceTo)


def is_boolean_shaped(expr: Expression) -> bool:
    """Whether an expression fits a boolean (hexagonal) slot by its own shape."""
    if isinstance(expr, (Comparison, BoolOp, Not, Touching, TouchingColor,
                         ColorIsTouchingColor, KeyPressed, MouseDown, EmptyCondition)):
        return True
    if isinstance(expr, ParameterUse):
        return expr.kind is ParameterKind.BOOLEAN
    if isinstance(expr, GenericExpression):
        return expr.boolean_shaped
    return False


# --- statements ------------------------------------------------------------


@_node
class Forever(Statement):
    body: list[Statement]
    block_id: str | None = None


@_node
class Repeat(Statement):
    times: Expression
    body: list[Statement]
    block_id: str | None = None


@_node
class RepeatUntil(Statement):
    condition: Expression
    body: list[Statement]
    block_id: str | None = None


@_node
class If(Statement):
    condition: Expression
    body: list[Statement]
    block_id: str | None = None


@_node
class IfElse(Statement):
    condition: Expression
    then_body: list[Statement]
    else_body: list[Statement]
    block_id: str | None = None


@_node
class Wait(Statement):
    duration: Expression
    block_id: str | None = None


@_node
class WaitUntil(Statement):
    condition: Expression
    block_id: str | None = None


@_node
class Stop(Statement):
    scope: str  # "all", "this script", "other scripts in sprite"
    block_id: str | None = None


@_node
class CreateCloneOf(Statement):
    target: SlotTarget
    block_id: str | None = None


@_node
class DeleteThisClone(Statement):
    block_id: str | None = None


@_node
class MoveSteps(Statement):
    steps: Expression
    block_id: str | None = None


@_node
class ChangeXBy(Statement):
    amount: Expression
    block_id: str | None = None


@_node
class ChangeYBy(Statement):
    amount: Expression
    block_id: str | None = None


@_node
class GoTo(Statement):
    target: SlotTarget
    block_id: str | None = None


@_node
class SwitchBackdropTo(Statement):
    backdrop: SlotTarget
    block_id: str | None = None


@_node
class NextBackdrop(Statement):
    block_id: str | None = None


@_node
class PenDown(Statement):
    block_id: str | None = None


@_node
class PenUp(Statement):
    block_id: str | None = None


@_node
class EraseAll(Statement):
    block_id: str | None = None


@_node
class SetPenColor(Statement):
    color: Expression
    block_id: str | None = None


@_node
class Broadcast(Statement):
    message: Expression  # Literal(BROADCAST) when constant
    wait: bool = False
    block_id: str | None = None


@_node
class ProcedureCall(Statement):
    proccode: str
    args: list[Expression] = field(default_factory=list)
    block_id: str | None = None


@_node
class ExpressionStatement(Statement):
    """A detached reporter stack: an expression used as a top-level block."""

    expr: Expression
    block_id: str | None = None


@_node
class GenericStatement(Statement):
    """Any statement the analyzer has no dedicated node for."""

    opcode: str
    args: list[Expression] = field(default_factory=list)
    bodies: list[list[Statement]] = field(default_factory=list)
    block_id: str | None = None


LOOP_TYPES = (Forever, Repeat, RepeatUntil)
MOVEMENT_TYPES = (MoveSteps, ChangeXBy, ChangeYBy)


def constant_message(expr: Expression) -> str | None:
    """Normalized broadcast name when the message expression is constant."""
    if isinstance(expr, Literal) and (
        expr.kind is LiteralKind.BROADCAST or expr.kind in CONSTANT_KINDS
    ):
        return normalize_name(expr.value)
    return None


# --- containers ------------------------------------------------------------


@dataclass(eq=False)
class EventHandler:
    """The hat block heading a script."""

    kind: HatKind
    opcode: str
    value: str | None = None  # key name / raw message / raw backdrop name
    block_id: str | None = None


@dataclass(eq=False)
class Script:
    event: EventHandler | None
    body: list[Statement]
    origin: str  # block id of the top-level block


@dataclass(eq=False)
class Parameter:
    name: str
    kind: ParameterKind


@dataclass(eq=False)
class ProcedureDefinition:
    proccode: str
    parameters: list[Parameter]
    body: list[Statement]
    actor: str
    block_id: str  # id of the definition hat block


@dataclass(eq=False)
class Actor:
    name: str
    is_stage: bool
    scripts: list[Script]
    procedures: list[ProcedureDefinition]
    declared_broadcast_names: frozenset[str] = frozenset()


@dataclass(eq=False)
class Program:
    stage: Actor
    sprites: list[Actor]

    def actors(self) -> Iterator[Actor]:
        yield self.stage
        yield from self.sprites


@dataclass(frozen=True)
class Locator:
    """Position of a node: actor, owning unit, child-index path, block id."""

    actor: str
    script_index: int | None = None
    proccode: str | None = None
    path: tuple[int, ...] = ()
    block_id: str | None = None

    def unit_label(self) -> str:
        if self.proccode is not None:
            return f"proc {self.proccode!r}"
        return f"script[{self.script_index}]"


def node_children(node: Node) -> list[Node]:
    """Ordered children of a node: expressions first, then substack bodies.

    The ordering defines the child indices used in Locator paths and the
    document-order traversal.
    """
    exprs: list[Node] = []
    stmts: list[Node] = []
    for f in dataclasses.fields(node):
        value = getattr(node, f.name)
        if isinstance(value, SlotTarget):
            if value.expr is not None:
                exprs.append(value.expr)
        elif isinstance(value, Node):
            exprs.append(value)
        elif isinstance(value, list):
            if value and isinstance(value[0], list):
                for body in value:
                    stmts.extend(body)
            elif value and isinstance(value[0], Statement):
                stmts.extend(value)
            elif value and isinstance(value[0], Expression):
                exprs.extend(value)
    return exprs + stmts
