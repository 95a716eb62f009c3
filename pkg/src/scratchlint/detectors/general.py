"""Detectors for language-independent defect idioms: constant comparisons,
blocked or dead control flow, unmatched messages, and broken clone wiring.
"""

from __future__ import annotations

import dataclasses
from typing import Iterator

from ..nodes import (
    Actor,
    BoolOp,
    ColorIsTouchingColor,
    Comparison,
    CreateCloneOf,
    DeleteThisClone,
    Expression,
    Forever,
    HatKind,
    If,
    IfElse,
    KeyPressed,
    Literal,
    Locator,
    MouseDown,
    Not,
    POSITION_REPORTERS,
    ProcedureCall,
    ProcedureDefinition,
    Program,
    RepeatUntil,
    Statement,
    Stop,
    TargetKind,
    Touching,
    TouchingColor,
    WaitUntil,
    CONSTANT_KINDS,
    LOOP_TYPES,
    constant_message,
    node_children,
    normalize_name,
)
from .common import Finding, hat_locator, iter_hats, iter_unit_nodes, iter_units, walk_statements
from .registry import detector


def _sequences(stmt: Statement) -> list[list[Statement]]:
    """The substack statement sequences directly owned by one statement."""
    seqs: list[list[Statement]] = []
    for f in dataclasses.fields(stmt):
        value = getattr(stmt, f.name)
        if isinstance(value, list) and value:
            if isinstance(value[0], list):
                seqs.extend(value)
            elif isinstance(value[0], Statement):
                seqs.append(value)
    return seqs


@detector(
    "comparing-literals",
    "general",
    "A comparison has constants on both sides and always yields the same result",
)
def comparing_literals(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for base, body in iter_units(actor):
            for node, locator in iter_unit_nodes(body, base):
                if (
                    isinstance(node, Comparison)
                    and _is_constant(node.left)
                    and _is_constant(node.right)
                ):
                    findings.append(
                        Finding(
                            detector="comparing-literals",
                            actor=actor.name,
                            locator=locator,
                            message=f"comparison {_fmt(node.left)} {node.op} {_fmt(node.right)} "
                            "compares two constants and always gives the same result",
                        )
                    )
    return findings


def _is_constant(expr: Expression) -> bool:
    return isinstance(expr, Literal) and expr.kind in CONSTANT_KINDS


def _fmt(expr: Expression) -> str:
    value = getattr(expr, "value", "")
    return repr(str(value))


# -- custom blocks that block their callers ---------------------------------


def _successor_call_ids(body: list[Statement]) -> set[str]:
    """Block ids of calls that have at least one statement still to run
    after them in their script (directly or via an enclosing statement)."""
    found: set[str] = set()

    def rec(seq: list[Statement], ancestor_has_more: bool) -> None:
        for i, stmt in enumerate(seq):
            has_more = i < len(seq) - 1 or ancestor_has_more
            if isinstance(stmt, ProcedureCall) and has_more and stmt.block_id:
                found.add(stmt.block_id)
            for sub in _sequences(stmt):
                rec(sub, has_more)

    rec(body, False)
    return found


def _blocking_call_findings(program: Program, detector_id: str, blocked: str, procs_of) -> list[Finding]:
    findings = []
    for actor in program.actors():
        bad_proccodes = procs_of(actor)
        if not bad_proccodes:
            continue
        for base, body in iter_units(actor):
            with_successor = _successor_call_ids(body)
            for node, locator in iter_unit_nodes(body, base):
                if (
                    isinstance(node, ProcedureCall)
                    and node.proccode in bad_proccodes
                    and node.block_id in with_successor
                ):
                    findings.append(
                        Finding(
                            detector=detector_id,
                            actor=actor.name,
                            locator=locator,
                            message=f"custom block {node.proccode!r} {blocked}; "
                            "the blocks after this call never run",
                        )
                    )
    return findings


@detector(
    "custom-block-with-forever",
    "general",
    "A custom block containing a forever loop is called mid-script",
)
def custom_block_with_forever(program: Program) -> list[Finding]:
    def procs_of(actor: Actor) -> set[str]:
        return {
            proc.proccode
            for proc in actor.procedures
            if any(isinstance(s, Forever) for s in walk_statements(proc.body))
        }

    return _blocking_call_findings(
        program, "custom-block-with-forever", "never finishes (it contains a forever loop)", procs_of
    )


@detector(
    "custom-block-with-termination",
    "general",
    "A custom block ending in stop-all or delete-this-clone is called mid-script",
)
def custom_block_with_termination(program: Program) -> list[Finding]:
    def terminates(proc: ProcedureDefinition) -> bool:
        if not proc.body:
            return False
        last = proc.body[-1]
        return isinstance(last, DeleteThisClone) or (
            isinstance(last, Stop) and normalize_name(last.scope) == "all"
        )

    def procs_of(actor: Actor) -> set[str]:
        return {proc.proccode for proc in actor.procedures if terminates(proc)}

    return _blocking_call_findings(
        program, "custom-block-with-termination", "always stops the program", procs_of
    )


_GUARDS = (If, IfElse, RepeatUntil)


@detector(
    "endless-recursion",
    "general",
    "A custom block calls itself with no condition guarding the recursion",
)
def endless_recursion(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for proc in actor.procedures:
            unguarded = _unguarded_self_call(proc)
            if unguarded is None:
                continue
            locator = _locate_block(actor, proc, unguarded)
            findings.append(
                Finding(
                    detector="endless-recursion",
                    actor=actor.name,
                    locator=locator,
                    message=f"custom block {proc.proccode!r} calls itself unconditionally "
                    "and never stops",
                )
            )
    return findings


def _unguarded_self_call(proc: ProcedureDefinition) -> ProcedureCall | None:
    def rec(seq: list[Statement], guarded: bool) -> ProcedureCall | None:
        for stmt in seq:
            if (
                not guarded
                and isinstance(stmt, ProcedureCall)
                and stmt.proccode == proc.proccode
            ):
                return stmt
            child_guard = guarded or isinstance(stmt, _GUARDS)
            for sub in _sequences(stmt):
                hit = rec(sub, child_guard)
                if hit is not None:
                    return hit
        return None

    return rec(proc.body, False)


def _locate_block(actor: Actor, proc: ProcedureDefinition, target: Statement) -> Locator:
    base = Locator(actor=actor.name, proccode=proc.proccode, block_id=proc.block_id)
    for node, locator in iter_unit_nodes(proc.body, base):
        if node is target:
            return locator
    return base


@detector(
    "forever-inside-loop",
    "general",
    "A forever loop is nested inside another loop",
)
def forever_inside_loop(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for base, body in iter_units(actor):
            inner = _nested_forevers(body)
            for node, locator in iter_unit_nodes(body, base):
                if isinstance(node, Forever) and id(node) in inner:
                    findings.append(
                        Finding(
                            detector="forever-inside-loop",
                            actor=actor.name,
                            locator=locator,
                            message="forever loop inside another loop never lets "
                            "the outer loop repeat",
                        )
                    )
    return findings


def _nested_forevers(body: list[Statement]) -> set[int]:
    found: set[int] = set()

    def rec(seq: list[Statement], depth: int) -> None:
        for stmt in seq:
            if isinstance(stmt, Forever) and depth > 0:
                found.add(id(stmt))
            child_depth = depth + 1 if isinstance(stmt, LOOP_TYPES) else depth
            for sub in _sequences(stmt):
                rec(sub, child_depth)

    rec(body, 0)
    return found


# -- broadcast matching -------------------------------------------------------


def _broadcast_statements(program: Program):
    """(actor, locator, node, constant-message-or-None) for every broadcast."""
    from ..nodes import Broadcast

    for actor in program.actors():
        for base, body in iter_units(actor):
            for node, locator in iter_unit_nodes(body, base):
                if isinstance(node, Broadcast):
                    yield actor, locator, node, constant_message(node.message)


def _receiver_hats(program: Program):
    """(actor, index, script, normalized-message-or-None) for receive hats."""
    for actor, index, script, event in iter_hats(program, HatKind.BROADCAST_RECEIVED):
        message = normalize_name(event.value) if event.value is not None else None
        yield actor, index, script, message


@detector(
    "message-never-received",
    "general",
    "A message is broadcast but nothing reacts to it",
)
def message_never_received(program: Program) -> list[Finding]:
    received: set[str] = set()
    any_dynamic_receiver = False
    for _, _, _, message in _receiver_hats(program):
        if message is None:
            any_dynamic_receiver = True
        else:
            received.add(message)
    if any_dynamic_receiver:
        return []

    findings = []
    for actor, locator, node, message in _broadcast_statements(program):
        if message is not None and message not in received:
            findings.append(
                Finding(
                    detector="message-never-received",
                    actor=actor.name,
                    locator=locator,
                    message=f"message {str(getattr(node.message, 'value', message))!r} "
                    "is broadcast but has no receiver",
                )
            )
    return findings


@detector(
    "message-never-sent",
    "general",
    "A receive-message script waits for a message nothing broadcasts",
)
def message_never_sent(program: Program) -> list[Finding]:
    sent: set[str] = set()
    any_dynamic_sender = False
    for _, _, _, message in _broadcast_statements(program):
        if message is None:
            any_dynamic_sender = True
        else:
            sent.add(message)
    if any_dynamic_sender:
        return []

    findings = []
    for actor, index, script, message in _receiver_hats(program):
        if message is not None and message not in sent:
            findings.append(
                Finding(
                    detector="message-never-sent",
                    actor=actor.name,
                    locator=hat_locator(actor, index, script),
                    message=f"message {script.event.value!r} is never broadcast; "
                    "this script never runs",
                )
            )
    return findings


# -- clone wiring -------------------------------------------------------------


def _clone_creations(program: Program):
    """(actor, locator, node, resolved-target-name-or-None, dynamic) tuples."""
    for actor in program.actors():
        for base, body in iter_units(actor):
            for node, locator in iter_unit_nodes(body, base):
                if not isinstance(node, CreateCloneOf):
                    continue
                target = node.target
                if target.kind is TargetKind.MYSELF:
                    yield actor, locator, node, actor.name, False
                elif target.kind is TargetKind.NAMED and target.name:
                    yield actor, locator, node, target.name, False
                else:
                    yield actor, locator, node, None, target.kind is TargetKind.DYNAMIC


@detector(
    "missing-clone-call",
    "general",
    "A when-I-start-as-a-clone script exists but the sprite is never cloned",
)
def missing_clone_call(program: Program) -> list[Finding]:
    cloned: set[str] = set()
    for _, _, _, name, dynamic in _clone_creations(program):
        if dynamic:
            return []  # a computed clone target may clone anything
        if name is not None:
            cloned.add(name)

    findings = []
    for actor, index, script, _ in iter_hats(program, HatKind.START_AS_CLONE):
        if actor.is_stage:
            continue  # the stage cannot be cloned
        if actor.name not in cloned:
            findings.append(
                Finding(
                    detector="missing-clone-call",
                    actor=actor.name,
                    locator=hat_locator(actor, index, script),
                    message=f"{actor.name!r} is never cloned; "
                    "this when-I-start-as-a-clone script is dead",
                )
            )
    return findings


_CLONE_INIT_HATS = (HatKind.START_AS_CLONE, HatKind.SPRITE_CLICKED)


@detector(
    "missing-clone-initialization",
    "general",
    "A sprite is cloned but has no script that makes its clones act",
)
def missing_clone_initialization(program: Program) -> list[Finding]:
    actors = {actor.name: actor for actor in program.actors()}

    def initialized(actor: Actor) -> bool:
        return any(
            script.event is not None and script.event.kind in _CLONE_INIT_HATS
            for script in actor.scripts
        )

    findings = []
    for creator, locator, node, name, dynamic in _clone_creations(program):
        if name is None:
            continue
        target = actors.get(name)
        if target is None or target.is_stage or initialized(target):
            continue
        findings.append(
            Finding(
                detector="missing-clone-initialization",
                actor=creator.name,
                locator=locator,
                message=f"clones of {name!r} do nothing: it has no "
                "when-I-start-as-a-clone or when-clicked script",
            )
        )
    return findings


# -- event polling and guard shape ---------------------------------------------


_SENSING_PREDICATES = (Touching, TouchingColor, ColorIsTouchingColor, KeyPressed, MouseDown)


def _expression_nodes(expr: Expression) -> Iterator[Expression]:
    stack: list[Expression] = [expr]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(c for c in reversed(node_children(node)) if isinstance(c, Expression))


@detector(
    "missing-loop-sensing",
    "general",
    "A green-flag script checks a sensing condition once instead of in a loop",
)
def missing_loop_sensing(program: Program) -> list[Finding]:
    findings = []
    for actor, index, script, _ in iter_hats(program, HatKind.GREEN_FLAG):
        base = Locator(actor=actor.name, script_index=index, block_id=script.origin)
        for i, stmt in enumerate(script.body):
            if not isinstance(stmt, (If, IfElse)):
                continue
            if any(isinstance(e, _SENSING_PREDICATES) for e in _expression_nodes(stmt.condition)):
                findings.append(
                    Finding(
                        detector="missing-loop-sensing",
                        actor=actor.name,
                        locator=Locator(
                            actor=actor.name,
                            script_index=index,
                            path=(i,),
                            block_id=stmt.block_id or script.origin,
                        ),
                        message="condition is checked only once when the flag is "
                        "clicked; the event is likely missed (no enclosing loop)",
                    )
                )
    return findings


@detector(
    "no-working-scripts",
    "general",
    "A sprite has only empty event handlers and detached block stacks",
)
def no_working_scripts(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        if not actor.scripts:
            continue
        hat_only = [s for s in actor.scripts if s.event is not None and not s.body]
        headless = [s for s in actor.scripts if s.event is None and s.body]
        if hat_only and headless and len(hat_only) + len(headless) == len(actor.scripts):
            index = actor.scripts.index(hat_only[0])
            findings.append(
                Finding(
                    detector="no-working-scripts",
                    actor=actor.name,
                    locator=hat_locator(actor, index, hat_only[0]),
                    message=f"{actor.name!r} has only bare event handlers and detached "
                    "blocks; the handler was likely meant to head the detached stack",
                )
            )
    return findings


@detector(
    "position-equals-check",
    "general",
    "A guard compares a floating-point position with exact equality",
)
def position_equals_check(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for base, body in iter_units(actor):
            flagged: set[int] = set()
            for node, _ in iter_unit_nodes(body, base):
                if isinstance(node, (If, IfElse, RepeatUntil, WaitUntil)):
                    for eq in _guard_equals(node.condition):
                        if _has_position_operand(eq):
                            flagged.add(id(eq))
            for node, locator in iter_unit_nodes(body, base):
                if id(node) in flagged:
                    findings.append(
                        Finding(
                            detector="position-equals-check",
                            actor=actor.name,
                            locator=locator,
                            message="positions are floating point and may never be "
                            "exactly equal; compare with > or < instead",
                        )
                    )
    return findings


def _guard_equals(condition: Expression) -> Iterator[Comparison]:
    """Equality comparisons sitting in guard position within a condition."""
    if isinstance(condition, Comparison) and condition.op == "=":
        yield condition
    elif isinstance(condition, BoolOp):
        yield from _guard_equals(condition.left)
        yield from _guard_equals(condition.right)
    elif isinstance(condition, Not):
        yield from _guard_equals(condition.operand)


def _has_position_operand(eq: Comparison) -> bool:
    return isinstance(eq.left, POSITION_REPORTERS) or isinstance(eq.right, POSITION_REPORTERS)


@detector(
    "recursive-cloning",
    "general",
    "A clone creates a clone of itself, multiplying without bound",
)
def recursive_cloning(program: Program) -> list[Finding]:
    findings = []
    for actor, index, script, _ in iter_hats(program, HatKind.START_AS_CLONE):
        if actor.is_stage:
            continue
        base = Locator(actor=actor.name, script_index=index, block_id=script.origin)
        for node, locator in iter_unit_nodes(script.body, base):
            if not isinstance(node, CreateCloneOf):
                continue
            target = node.target
            if target.kind is TargetKind.MYSELF or (
                target.kind is TargetKind.NAMED and target.name == actor.name
            ):
                findings.append(
                    Finding(
                        detector="recursive-cloning",
                        actor=actor.name,
                        locator=locator,
                        message="a clone of this sprite clones it again; clones "
                        "multiply without bound",
                    )
                )
    return findings
