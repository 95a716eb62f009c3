"""Complexity metrics: per-unit cyclomatic complexity and project totals.

Decision points are: if, if-else, repeat, repeat-until, forever, wait-until,
and each and/or operator; a unit's complexity is 1 plus its decision points.
The weighted method count (WMC) of a project is the sum over all scripts
and custom-block bodies of all actors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import (
    Actor,
    BoolOp,
    Forever,
    If,
    IfElse,
    Node,
    Program,
    Repeat,
    RepeatUntil,
    Statement,
    WaitUntil,
    node_children,
)

_DECISION_STATEMENTS = (If, IfElse, Repeat, RepeatUntil, Forever, WaitUntil)


@dataclass(frozen=True)
class ActorMetrics:
    name: str
    wmc: int
    script_count: int
    procedure_count: int
    block_count: int


@dataclass(frozen=True)
class ProjectMetrics:
    wmc: int
    script_count: int
    procedure_count: int
    block_count: int
    actors: tuple[ActorMetrics, ...]


def cyclomatic_complexity(body: list[Statement]) -> int:
    """Complexity of one script or custom-block body."""
    complexity = 1
    stack: list[Node] = list(body)
    while stack:
        node = stack.pop()
        if isinstance(node, _DECISION_STATEMENTS) or isinstance(node, BoolOp):
            complexity += 1
        stack.extend(node_children(node))
    return complexity


def actor_metrics(actor: Actor) -> ActorMetrics:
    wmc = sum(cyclomatic_complexity(s.body) for s in actor.scripts)
    wmc += sum(cyclomatic_complexity(p.body) for p in actor.procedures)
    return ActorMetrics(
        name=actor.name,
        wmc=wmc,
        script_count=len(actor.scripts),
        procedure_count=len(actor.procedures),
        block_count=_count_blocks(actor),
    )


def project_metrics(program: Program) -> ProjectMetrics:
    per_actor = tuple(actor_metrics(a) for a in program.actors())
    return ProjectMetrics(
        wmc=sum(a.wmc for a in per_actor),
        script_count=sum(a.script_count for a in per_actor),
        procedure_count=sum(a.procedure_count for a in per_actor),
        block_count=sum(a.block_count for a in per_actor),
        actors=per_actor,
    )


def wmc(program: Program) -> int:
    """Weighted method count of the whole project."""
    return project_metrics(program).wmc


def collect_block_ids(actor: Actor) -> set[str]:
    """Ids of all placed blocks reachable from the actor's tree: statements,
    expressions, event hats, and custom-block definition blocks."""
    ids: set[str] = set()
    stack: list[Node] = []
    for script in actor.scripts:
        if script.event is not None and script.event.block_id is not None:
            ids.add(script.event.block_id)
        stack.extend(script.body)
    for proc in actor.procedures:
        ids.add(proc.block_id)
        stack.extend(proc.body)
    while stack:
        node = stack.pop()
        block_id = getattr(node, "block_id", None)
        if block_id is not None:
            ids.add(block_id)
        stack.extend(node_children(node))
    return ids


def _count_blocks(actor: Actor) -> int:
    return len(collect_block_ids(actor))
