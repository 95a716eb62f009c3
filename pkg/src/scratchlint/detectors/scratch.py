"""Detectors tied to Scratch's stage, pen, and keyboard mechanics."""

from __future__ import annotations

from ..nodes import (
    Actor,
    EraseAll,
    HatKind,
    Locator,
    NextBackdrop,
    PenDown,
    PenUp,
    Program,
    SwitchBackdropTo,
    TargetKind,
    LOOP_TYPES,
    MOVEMENT_TYPES,
    normalize_name,
)
from .common import Finding, hat_locator, iter_hats, iter_unit_nodes, iter_units
from .registry import detector


_WILDCARD_SWITCH_KINDS = (
    TargetKind.NEXT,
    TargetKind.PREVIOUS,
    TargetKind.RANDOM,
    TargetKind.DYNAMIC,
)


@detector(
    "missing-backdrop-switch",
    "scratch",
    "A when-backdrop-switches-to script waits for a backdrop nothing switches to",
)
def missing_backdrop_switch(program: Program) -> list[Finding]:
    switched: set[str] = set()
    for actor in program.actors():
        for base, body in iter_units(actor):
            for node, _ in iter_unit_nodes(body, base):
                if isinstance(node, NextBackdrop):
                    return []  # stepping through backdrops can reach any of them
                if isinstance(node, SwitchBackdropTo):
                    if node.backdrop.kind in _WILDCARD_SWITCH_KINDS:
                        return []
                    if node.backdrop.name is not None:
                        switched.add(normalize_name(node.backdrop.name))

    findings = []
    for actor, index, script, event in iter_hats(program, HatKind.BACKDROP_SWITCHED):
        if event.value is None:
            continue
        if normalize_name(event.value) not in switched:
            findings.append(
                Finding(
                    detector="missing-backdrop-switch",
                    actor=actor.name,
                    locator=hat_locator(actor, index, script),
                    message=f"nothing switches to backdrop {event.value!r}; "
                    "this script never runs",
                )
            )
    return findings


def _pen_blocks(actor: Actor, node_type) -> list:
    hits = []
    for base, body in iter_units(actor):
        for node, locator in iter_unit_nodes(body, base):
            if isinstance(node, node_type):
                hits.append((node, locator))
    return hits


@detector(
    "missing-erase-all",
    "scratch",
    "A sprite draws with the pen but the project never erases the canvas",
)
def missing_erase_all(program: Program) -> list[Finding]:
    for actor in program.actors():
        if _pen_blocks(actor, EraseAll):
            return []  # erase-all clears the whole stage no matter who runs it
    findings = []
    for actor in program.actors():
        if actor.is_stage:
            continue
        pen_downs = _pen_blocks(actor, PenDown)
        if pen_downs:
            _, locator = pen_downs[0]
            findings.append(
                Finding(
                    detector="missing-erase-all",
                    actor=actor.name,
                    locator=locator,
                    message=f"{actor.name!r} draws with the pen but nothing erases "
                    "the canvas; old drawings persist across runs",
                )
            )
    return findings


@detector(
    "missing-pen-down",
    "scratch",
    "A sprite lifts the pen but never puts it down",
)
def missing_pen_down(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        if actor.is_stage:
            continue
        pen_ups = _pen_blocks(actor, PenUp)
        if pen_ups and not _pen_blocks(actor, PenDown):
            _, locator = pen_ups[0]
            findings.append(
                Finding(
                    detector="missing-pen-down",
                    actor=actor.name,
                    locator=locator,
                    message=f"{actor.name!r} uses pen-up but never pen-down, "
                    "so it never draws anything",
                )
            )
    return findings


@detector(
    "missing-pen-up",
    "scratch",
    "A sprite puts the pen down but never lifts it",
)
def missing_pen_up(program: Program) -> list[Finding]:
    findings = []
    for actor in program.actors():
        if actor.is_stage:
            continue
        pen_downs = _pen_blocks(actor, PenDown)
        if pen_downs and not _pen_blocks(actor, PenUp):
            _, locator = pen_downs[0]
            findings.append(
                Finding(
                    detector="missing-pen-up",
                    actor=actor.name,
                    locator=locator,
                    message=f"{actor.name!r} puts the pen down and never lifts it; "
                    "it may draw immediately on restart",
                )
            )
    return findings


@detector(
    "stuttering-movement",
    "scratch",
    "Movement on a when-key-pressed hat reacts slowly and stutters",
)
def stuttering_movement(program: Program) -> list[Finding]:
    findings = []
    for actor, index, script, event in iter_hats(program, HatKind.KEY_PRESSED):
        if actor.is_stage:
            continue  # movement blocks exist only in the sprite palette
        base = Locator(actor=actor.name, script_index=index, block_id=script.origin)
        movement_locator = None
        has_loop = False
        for node, locator in iter_unit_nodes(script.body, base):
            if isinstance(node, LOOP_TYPES):
                has_loop = True
                break
            if movement_locator is None and isinstance(node, MOVEMENT_TYPES):
                movement_locator = locator
        if movement_locator is not None and not has_loop:
            key = event.value if event.value is not None else "?"
            findings.append(
                Finding(
                    detector="stuttering-movement",
                    actor=actor.name,
                    locator=movement_locator,
                    message=f"moving on the {key!r} key hat stutters; poll the key "
                    "inside a forever loop instead",
                )
            )
    return findings
