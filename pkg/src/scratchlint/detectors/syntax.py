"""Detectors for mistakes a compiler would reject in a text language:
broken custom-block signatures, undefined calls, ill-typed slots, and
missing loop conditions.
"""

from __future__ import annotations

from ..nodes import (
    ColorIsTouchingColor,
    CreateCloneOf,
    DistanceTo,
    EmptyCondition,
    Expression,
    GenericExpression,
    Literal,
    LiteralKind,
    Locator,
    ParameterUse,
    Program,
    ProcedureCall,
    RepeatUntil,
    SetPenColor,
    Touching,
    TouchingColor,
    WaitUntil,
    is_boolean_shaped,
)
from .common import Finding, iter_unit_nodes, iter_units
from .registry import detector


@detector(
    "ambiguous-custom-block-signature",
    "syntax",
    "Two custom blocks in one sprite share the same signature",
)
def ambiguous_custom_block_signature(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        seen: set[str] = set()
        for proc in actor.procedures:
            if proc.proccode in seen:
                findings.append(
                    Finding(
                        detector="ambiguous-custom-block-signature",
                        actor=actor.name,
                        locator=Locator(actor=actor.name, proccode=proc.proccode, block_id=proc.block_id),
                        message=f"custom block {proc.proccode!r} is defined more than once; "
                        "calls always run the earlier definition",
                    )
                )
            seen.add(proc.proccode)
    return findings


@detector(
    "ambiguous-parameter-name",
    "syntax",
    "A custom block declares two parameters with the same name",
)
def ambiguous_parameter_name(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for proc in actor.procedures:
            names = [p.name for p in proc.parameters]
            duplicates = sorted({name for name in names if names.count(name) > 1})
            if duplicates:
                findings.append(
                    Finding(
                        detector="ambiguous-parameter-name",
                        actor=actor.name,
                        locator=Locator(actor=actor.name, proccode=proc.proccode, block_id=proc.block_id),
                        message=f"custom block {proc.proccode!r} declares duplicate parameter(s) "
                        f"{', '.join(repr(d) for d in duplicates)}; every use reads the last one",
                    )
                )
    return findings


@detector(
    "call-without-definition",
    "syntax",
    "A custom block is called but not defined in the calling sprite",
)
def call_without_definition(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        defined = {proc.proccode for proc in actor.procedures}
        for base, body in iter_units(actor):
            for node, locator in iter_unit_nodes(body, base):
                if isinstance(node, ProcedureCall) and node.proccode not in defined:
                    findings.append(
                        Finding(
                            detector="call-without-definition",
                            actor=actor.name,
                            locator=locator,
                            message=f"call to undefined custom block {node.proccode!r} does nothing",
                        )
                    )
    return findings


def _flaggable_slot_expr(expr: Expression | None, allow_color: bool) -> bool:
    if expr is None or isinstance(expr, EmptyCondition):
        return False
    if isinstance(expr, Literal):
        if allow_color and expr.kind is LiteralKind.COLOR:
            return False
        return True
    if is_boolean_shaped(expr):
        return False
    if isinstance(expr, GenericExpression) and expr.shadow:
        return False  # unrecognized menu, not a user-placed reporter
    return True


@detector(
    "expression-as-touchable-or-color",
    "syntax",
    "A sprite or colour slot holds a plain value expression",
)
def expression_as_touchable_or_color(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for base, body in iter_units(actor):
            for node, locator in iter_unit_nodes(body, base):
                slots: list[tuple[Expression | None, bool, str]] = []
                if isinstance(node, (Touching, DistanceTo, CreateCloneOf)):
                    slots.append((node.target.expr, False, "a sprite"))
                elif isinstance(node, TouchingColor):
                    slots.append((node.color, True, "a colour"))
                elif isinstance(node, ColorIsTouchingColor):
                    slots.append((node.color_a, True, "a colour"))
                    slots.append((node.color_b, True, "a colour"))
                elif isinstance(node, SetPenColor):
                    slots.append((node.color, True, "a colour"))
                for expr, allow_color, expected in slots:
                    if _flaggable_slot_expr(expr, allow_color):
                        findings.append(
                            Finding(
                                detector="expression-as-touchable-or-color",
                                actor=actor.name,
                                locator=locator,
                                message=f"slot expecting {expected} holds a plain value expression",
                            )
                        )
    return findings


@detector(
    "missing-termination-condition",
    "syntax",
    "A repeat-until or wait-until block has an empty condition",
)
def missing_termination_condition(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for base, body in iter_units(actor):
            for node, locator in iter_unit_nodes(body, base):
                if isinstance(node, (RepeatUntil, WaitUntil)) and isinstance(
                    node.condition, EmptyCondition
                ):
                    what = "repeat until" if isinstance(node, RepeatUntil) else "wait until"
                    findings.append(
                        Finding(
                            detector="missing-termination-condition",
                            actor=actor.name,
                            locator=locator,
                            message=f"{what} has no stopping condition and never terminates",
                        )
                    )
    return findings


@detector(
    "orphaned-parameter",
    "syntax",
    "A custom block body uses a parameter the definition does not declare",
)
def orphaned_parameter(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for proc in actor.procedures:
            declared = {p.name for p in proc.parameters}
            base = Locator(actor=actor.name, proccode=proc.proccode, block_id=proc.block_id)
            for node, locator in iter_unit_nodes(proc.body, base):
                if isinstance(node, ParameterUse) and node.name not in declared:
                    findings.append(
                        Finding(
                            detector="orphaned-parameter",
                            actor=actor.name,
                            locator=locator,
                            message=f"parameter {node.name!r} is not declared by {proc.proccode!r} "
                            "and always evaluates to its default",
                        )
                    )
    return findings


@detector(
    "parameter-out-of-scope",
    "syntax",
    "A custom block parameter is used outside any custom block body",
)
def parameter_out_of_scope(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        for index, script in enumerate(actor.scripts):
            base = Locator(actor=actor.name, script_index=index, block_id=script.origin)
            for node, locator in iter_unit_nodes(script.body, base):
                if isinstance(node, ParameterUse):
                    findings.append(
                        Finding(
                            detector="parameter-out-of-scope",
                            actor=actor.name,
                            locator=locator,
                            message=f"parameter {node.name!r} used outside a custom block "
                            "is never initialised",
                        )
                    )
    return findings
