"""Builds the typed syntax tree from a raw project.

Scripts are recovered by starting from every parentless non-shadow block
and following `next` chains and substack inputs; custom-block definitions
are recovered from definition/prototype block pairs. Menu shadow blocks
are folded into their parent nodes.
"""

from __future__ import annotations

import json

from . import nodes as n
from .model import (
    LIT_ANGLE,
    LIT_BROADCAST,
    LIT_COLOR,
    LIT_INTEGER,
    LIT_LIST,
    LIT_NUMBER,
    LIT_POSITIVE_NUMBER,
    LIT_STRING,
    LIT_VARIABLE,
    LIT_WHOLE_NUMBER,
    BlockRef,
    RawBlock,
    RawLiteral,
    RawProject,
    RawTarget,
)


class AstBuildError(Exception):
    """A structurally impossible block arrangement (e.g. a `next` cycle)."""

    def __init__(self, block_id: str, reason: str):
        self.block_id = block_id
        self.reason = reason
        super().__init__(f"block {block_id!r}: {reason}")


_LITERAL_KINDS = {
    LIT_NUMBER: n.LiteralKind.NUMBER,
    LIT_POSITIVE_NUMBER: n.LiteralKind.POSITIVE_NUMBER,
    LIT_WHOLE_NUMBER: n.LiteralKind.WHOLE_NUMBER,
    LIT_INTEGER: n.LiteralKind.WHOLE_NUMBER,
    LIT_ANGLE: n.LiteralKind.ANGLE,
    LIT_COLOR: n.LiteralKind.COLOR,
    LIT_STRING: n.LiteralKind.STRING,
    LIT_BROADCAST: n.LiteralKind.BROADCAST,
    LIT_VARIABLE: n.LiteralKind.VARIABLE,
    LIT_LIST: n.LiteralKind.LIST,
}

_HATS = {
    "event_whenflagclicked": n.HatKind.GREEN_FLAG,
    "event_whenkeypressed": n.HatKind.KEY_PRESSED,
    "event_whenbroadcastreceived": n.HatKind.BROADCAST_RECEIVED,
    "event_whenbackdropswitchesto": n.HatKind.BACKDROP_SWITCHED,
    "event_whenthisspriteclicked": n.HatKind.SPRITE_CLICKED,
    "event_whenstageclicked": n.HatKind.SPRITE_CLICKED,
    "control_start_as_clone": n.HatKind.START_AS_CLONE,
    "event_whengreaterthan": n.HatKind.OTHER,
    "event_whentouchingobject": n.HatKind.OTHER,
}

_HAT_VALUE_FIELDS = {
    "event_whenkeypressed": "KEY_OPTION",
    "event_whenbroadcastreceived": "BROADCAST_OPTION",
    "event_whenbackdropswitchesto": "BACKDROP",
}

# Special menu choices in sprite slots.
_MYSELF = "_myself_"
_MOUSE = "_mouse_"
_EDGE = "_edge_"

_SPRITE_MENUS = {
    "control_create_clone_of_menu": "CLONE_OPTION",
    "sensing_touchingobjectmenu": "TOUCHINGOBJECTMENU",
    "sensing_distancetomenu": "DISTANCETOMENU",
    "motion_goto_menu": "TO",
    "motion_glideto_menu": "TO",
    "motion_pointtowards_menu": "TOWARDS",
    "sensing_of_object_menu": "OBJECT",
}

_BACKDROP_WILDCARDS = {
    "next backdrop": n.TargetKind.NEXT,
    "previous backdrop": n.TargetKind.PREVIOUS,
    "random backdrop": n.TargetKind.RANDOM,
}

# Known reporters that fit boolean slots (used to classify generic ones).
_BOOLEAN_OPCODES = {
    "operator_contains",
    "data_listcontainsitem",
    "sensing_touchingobject",
    "sensing_touchingcolor",
    "sensing_coloristouchingcolor",
    "sensing_keypressed",
    "sensing_mousedown",
    "argument_reporter_boolean",
}

_ARITHMETIC_OPS = {
    "operator_add": "+",
    "operator_subtract": "-",
    "operator_multiply": "*",
    "operator_divide": "/",
    "operator_mod": "mod",
    "operator_random": "random",
    "operator_round": "round",
    "operator_mathop": "mathop",
}

# Reporter opcodes with a dedicated node class, for classifying detached
# top-level reporter stacks.
_EXPRESSION_OPCODES = {
    "operator_equals", "operator_gt", "operator_lt", "operator_and", "operator_or",
    "operator_not", "operator_join", "operator_letter_of", "operator_length",
    "sensing_touchingobject", "sensing_touchingcolor", "sensing_coloristouchingcolor",
    "sensing_keypressed", "sensing_mousedown", "sensing_mousex", "sensing_mousey",
    "sensing_distanceto", "sensing_timer", "sensing_answer", "sensing_loudness",
    "sensing_username", "sensing_of", "sensing_current", "sensing_dayssince2000",
    "motion_xposition", "motion_yposition", "motion_direction",
    "looks_costumenumbername", "looks_backdropnumbername", "looks_size",
    "sound_volume", "data_variable", "data_listcontents", "data_itemoflist",
    "data_lengthoflist", "data_itemnumoflist",
    "argument_reporter_string_number", "argument_reporter_boolean",
} | set(_ARITHMETIC_OPS) | _BOOLEAN_OPCODES


def build_ast(project: RawProject) -> n.Program:
    """Construct the Program tree for a loaded raw project."""
    actors = [_build_actor(target) for target in project.targets]
    stage = next(a for a in actors if a.is_stage)
    sprites = [a for a in actors if not a.is_stage]
    return n.Program(stage=stage, sprites=sprites)


def _build_actor(target: RawTarget) -> n.Actor:
    builder = _UnitBuilder(target)
    scripts: list[n.Script] = []
    procedures: list[n.ProcedureDefinition] = []
    for block_id, block in target.blocks.items():
        if block.shadow or block.parent is not None:
            continue
        if block.opcode == "procedures_definition":
            definition = builder.procedure_definition(block_id, block)
            if definition is not None:
                procedures.append(definition)
                continue
        scripts.append(builder.script(block_id, block))
    broadcast_names = frozenset(n.normalize_name(v) for v in target.broadcasts.values())
    return n.Actor(
        name=target.name,
        is_stage=target.is_stage,
        scripts=scripts,
        procedures=procedures,
        declared_broadcast_names=broadcast_names,
    )


class _UnitBuilder:
    """Decodes the block graph of one target into scripts and procedures."""

    def __init__(self, target: RawTarget):
        self.target = target
        self.blocks = target.blocks
        self._active: set[str] = set()  # ids on the current decode path

    # -- scripts and procedures --------------------------------------------

    def script(self, block_id: str, block: RawBlock) -> n.Script:
        event = self._decode_hat(block_id, block)
        if event is not None:
            body = self._chain(block.next)
        elif block.opcode in _EXPRESSION_OPCODES:
            stmt = n.ExpressionStatement(expr=self._expression_block(block_id, block), block_id=block_id)
            body = [stmt] + self._chain(block.next)
        else:
            body = self._chain(block_id)
        return n.Script(event=event, body=body, origin=block_id)

    def procedure_definition(self, block_id: str, block: RawBlock) -> n.ProcedureDefinition | None:
        prototype = self._resolve_prototype(block)
        if prototype is None or prototype.mutation is None:
            return None
        mutation = prototype.mutation
        parameters = _parameters_from_mutation(mutation.proccode, mutation.argument_names)
        return n.ProcedureDefinition(
            proccode=mutation.proccode,
            parameters=parameters,
            body=self._chain(block.next),
            actor=self.target.name,
            block_id=block_id,
        )

    def _resolve_prototype(self, block: RawBlock) -> RawBlock | None:
        inp = block.inputs.get("custom_block")
        if inp is None or not isinstance(inp.value, BlockRef):
            return None
        proto = self.blocks.get(inp.value.id)
        if proto is None or proto.opcode != "procedures_prototype":
            return None
        return proto

    def _decode_hat(self, block_id: str, block: RawBlock) -> n.EventHandler | None:
        kind = _HATS.get(block.opcode)
        if kind is None:
            # Extension hats follow the *_when... naming convention.
            if (
                block.opcode in _STATEMENTS
                or block.opcode in _EXPRESSION_OPCODES
                or "when" not in block.opcode.lower()
            ):
                return None
            kind = n.HatKind.OTHER
        value = None
        value_field = _HAT_VALUE_FIELDS.get(block.opcode)
        if value_field is not None:
            fld = block.fields.get(value_field)
            value = None if fld is None else _as_text(fld.value)
        return n.EventHandler(kind=kind, opcode=block.opcode, value=value, block_id=block_id)

    # -- statement chains ----------------------------------------------------

    def _chain(self, start_id: str | None) -> list[n.Statement]:
        body: list[n.Statement] = []
        seen: set[str] = set()
        current = start_id
        while current is not None:
            if current in seen:
                raise AstBuildError(current, "cycle in next chain")
            seen.add(current)
            block = self.blocks.get(current)
            if block is None:
                break  # dangling refs are rejected at load; be lenient here
            body.append(self._statement(current, block))
            current = block.next
        return body

    def _substack(self, block: RawBlock, slot: str) -> list[n.Statement]:
        inp = block.inputs.get(slot)
        if inp is None or not isinstance(inp.value, BlockRef):
            return []
        return self._chain(inp.value.id)

    def _guarded(self, block_id: str, decode):
        if block_id in self._active:
            raise AstBuildError(block_id, "block contains itself")
        self._active.add(block_id)
        try:
            return decode()
        finally:
            self._active.discard(block_id)

    # -- statements ----------------------------------------------------------

    def _statement(self, block_id: str, block: RawBlock) -> n.Statement:
        decoder = _STATEMENTS.get(block.opcode)
        if decoder is not None:
            return self._guarded(block_id, lambda: decoder(self, block_id, block))
        return self._guarded(block_id, lambda: self._generic_statement(block_id, block))

    def _generic_statement(self, block_id: str, block: RawBlock) -> n.Statement:
        if block.opcode in _EXPRESSION_OPCODES:
            return n.ExpressionStatement(expr=self._expression_block(block_id, block), block_id=block_id)
        args: list[n.Expression] = []
        bodies: list[list[n.Statement]] = []
        for slot in block.inputs:
            if slot.startswith("SUBSTACK"):
                bodies.append(self._substack(block, slot))
            elif slot != "custom_block":
                args.append(self._value(block, slot))
        return n.GenericStatement(opcode=block.opcode, args=args, bodies=bodies, block_id=block_id)

    # -- input decoding --------------------------------------------------------

    def _active_value(self, block: RawBlock, slot: str):
        inp = block.inputs.get(slot)
        return None if inp is None else inp.value

    def _value(self, block: RawBlock, slot: str) -> n.Expression:
        """Decode a value (round/string) input slot; empty slots read as ""."""
        value = self._active_value(block, slot)
        if value is None:
            return n.Literal(kind=n.LiteralKind.STRING, value="")
        if isinstance(value, RawLiteral):
            return _literal(value)
        return self._expression_ref(value.id)

    def _condition(self, block: RawBlock, slot: str) -> n.Expression:
        """Decode a boolean input slot; empty slots become EmptyCondition."""
        value = self._active_value(block, slot)
        if value is None:
            return n.EmptyCondition()
        if isinstance(value, RawLiteral):
            return _literal(value)
        return self._expression_ref(value.id)

    def _expression_ref(self, block_id: str) -> n.Expression:
        block = self.blocks.get(block_id)
        if block is None:
            return n.Literal(kind=n.LiteralKind.STRING, value="")
        return self._guarded(block_id, lambda: self._expression_block(block_id, block))

    def _expression_block(self, block_id: str, block: RawBlock) -> n.Expression:
        decoder = _EXPRESSIONS.get(block.opcode)
        if decoder is not None:
            return decoder(self, block_id, block)
        args = [
            self._value(block, slot)
            for slot in block.inputs
            if not slot.startswith("SUBSTACK")
        ]
        return n.GenericExpression(
            opcode=block.opcode,
            args=args,
            boolean_shaped=block.opcode in _BOOLEAN_OPCODES,
            shadow=block.shadow,
            block_id=block_id,
        )

    def _sprite_slot(self, block: RawBlock, slot: str, special: dict[str, n.TargetKind]) -> n.SlotTarget:
        """Decode a slot choosing a sprite/touchable, folding its menu."""
        value = self._active_value(block, slot)
        if value is None:
            return n.SlotTarget(kind=n.TargetKind.NAMED, name="")
        if isinstance(value, RawLiteral):
            if value.code in (LIT_BROADCAST, LIT_VARIABLE, LIT_LIST):
                # a variable/list read: the target is computed at runtime
                return n.SlotTarget(kind=n.TargetKind.DYNAMIC, expr=_literal(value))
            name = _as_text(value.value)
            kind = special.get(name, n.TargetKind.NAMED)
            return n.SlotTarget(kind=kind, name=name, expr=_literal(value))
        referenced = self.blocks.get(value.id)
        if referenced is not None and referenced.opcode in _SPRITE_MENUS and referenced.shadow:
            fld = referenced.fields.get(_SPRITE_MENUS[referenced.opcode])
            name = _as_text(fld.value) if fld is not None else ""
            return n.SlotTarget(kind=special.get(name, n.TargetKind.NAMED), name=name)
        return n.SlotTarget(kind=n.TargetKind.DYNAMIC, expr=self._expression_ref(value.id))

    def _backdrop_slot(self, block: RawBlock, slot: str) -> n.SlotTarget:
        value = self._active_value(block, slot)
        if value is None:
            return n.SlotTarget(kind=n.TargetKind.NAMED, name="")
        if isinstance(value, RawLiteral):
            if value.code in (LIT_BROADCAST, LIT_VARIABLE, LIT_LIST):
                return n.SlotTarget(kind=n.TargetKind.DYNAMIC, expr=_literal(value))
            name = _as_text(value.value)
            kind = _BACKDROP_WILDCARDS.get(n.normalize_name(name), n.TargetKind.NAMED)
            return n.SlotTarget(kind=kind, name=name, expr=_literal(value))
        referenced = self.blocks.get(value.id)
        if referenced is not None and referenced.opcode == "looks_backdrops" and referenced.shadow:
            fld = referenced.fields.get("BACKDROP")
            name = _as_text(fld.value) if fld is not None else ""
            kind = _BACKDROP_WILDCARDS.get(n.normalize_name(name), n.TargetKind.NAMED)
            return n.SlotTarget(kind=kind, name=name)
        return n.SlotTarget(kind=n.TargetKind.DYNAMIC, expr=self._expression_ref(value.id))

    def _broadcast_message(self, block: RawBlock, slot: str) -> n.Expression:
        value = self._active_value(block, slot)
        if value is None:
            return n.Literal(kind=n.LiteralKind.STRING, value="")
        if isinstance(value, RawLiteral):
            return _literal(value)
        return self._expression_ref(value.id)

    def _key_slot(self, block: RawBlock, slot: str) -> tuple[str | None, n.Expression | None]:
        value = self._active_value(block, slot)
        if isinstance(value, RawLiteral):
            return _as_text(value.value), None
        if isinstance(value, BlockRef):
            referenced = self.blocks.get(value.id)
            if referenced is not None and referenced.opcode == "sensing_keyoptions" and referenced.shadow:
                fld = referenced.fields.get("KEY_OPTION")
                return (_as_text(fld.value) if fld is not None else None), None
            return None, self._expression_ref(value.id)
        return None, None

    def _field_text(self, block: RawBlock, name: str, default: str = "") -> str:
        fld = block.fields.get(name)
        return default if fld is None else _as_text(fld.value)

    def _call_arguments(self, block: RawBlock) -> list[n.Expression]:
        mutation = block.mutation
        if mutation is None:
            return []
        kinds = _placeholder_kinds(mutation.proccode)
        args = []
        for i, arg_id in enumerate(mutation.argument_ids):
            boolean = i < len(kinds) and kinds[i] is n.ParameterKind.BOOLEAN
            if boolean:
                args.append(self._condition(block, arg_id))
            else:
                args.append(self._value(block, arg_id))
        return args


def _literal(value: RawLiteral) -> n.Literal:
    kind = _LITERAL_KINDS.get(value.code, n.LiteralKind.STRING)
    return n.Literal(kind=kind, value=value.value)


def _as_text(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value) if isinstance(value, (dict, list)) else str(value)


def _placeholder_kinds(proccode: str) -> list[n.ParameterKind]:
    kinds = []
    i = 0
    while i < len(proccode) - 1:
        if proccode[i] == "%":
            if proccode[i + 1] == "b":
                kinds.append(n.ParameterKind.BOOLEAN)
            elif proccode[i + 1] in ("s", "n"):
                kinds.append(n.ParameterKind.STRING_NUMBER)
            i += 2
            continue
        i += 1
    return kinds


def _parameters_from_mutation(proccode: str, names: list[str]) -> list[n.Parameter]:
    kinds = _placeholder_kinds(proccode)
    parameters = []
    for i, name in enumerate(names):
        kind = kinds[i] if i < len(kinds) else n.ParameterKind.STRING_NUMBER
        parameters.append(n.Parameter(name=name, kind=kind))
    return parameters


# --- statement decoders -----------------------------------------------------


def _stop(b: _UnitBuilder, block_id: str, block: RawBlock) -> n.Statement:
    return n.Stop(scope=b._field_text(block, "STOP_OPTION", "all"), block_id=block_id)


_SPRITE_SLOT_SPECIALS = {
    _MYSELF: n.TargetKind.MYSELF,
    _MOUSE: n.TargetKind.MOUSE,
    _EDGE: n.TargetKind.EDGE,
    "_random_": n.TargetKind.RANDOM,
}

_STATEMENTS = {
    "control_forever": lambda b, i, blk: n.Forever(body=b._substack(blk, "SUBSTACK"), block_id=i),
    "control_repeat": lambda b, i, blk: n.Repeat(
        times=b._value(blk, "TIMES"), body=b._substack(blk, "SUBSTACK"), block_id=i
    ),
    "control_repeat_until": lambda b, i, blk: n.RepeatUntil(
        condition=b._condition(blk, "CONDITION"), body=b._substack(blk, "SUBSTACK"), block_id=i
    ),
    "control_while": lambda b, i, blk: n.RepeatUntil(
        condition=b._condition(blk, "CONDITION"), body=b._substack(blk, "SUBSTACK"), block_id=i
    ),
    "control_if": lambda b, i, blk: n.If(
        condition=b._condition(blk, "CONDITION"), body=b._substack(blk, "SUBSTACK"), block_id=i
    ),
    "control_if_else": lambda b, i, blk: n.IfElse(
        condition=b._condition(blk, "CONDITION"),
        then_body=b._substack(blk, "SUBSTACK"),
        else_body=b._substack(blk, "SUBSTACK2"),
        block_id=i,
    ),
    "control_wait": lambda b, i, blk: n.Wait(duration=b._value(blk, "DURATION"), block_id=i),
    "control_wait_until": lambda b, i, blk: n.WaitUntil(condition=b._condition(blk, "CONDITION"), block_id=i),
    "control_stop": _stop,
    "control_create_clone_of": lambda b, i, blk: n.CreateCloneOf(
        target=b._sprite_slot(blk, "CLONE_OPTION", _SPRITE_SLOT_SPECIALS), block_id=i
    ),
    "control_delete_this_clone": lambda b, i, blk: n.DeleteThisClone(block_id=i),
    "motion_movesteps": lambda b, i, blk: n.MoveSteps(steps=b._value(blk, "STEPS"), block_id=i),
    "motion_changexby": lambda b, i, blk: n.ChangeXBy(amount=b._value(blk, "DX"), block_id=i),
    "motion_changeyby": lambda b, i, blk: n.ChangeYBy(amount=b._value(blk, "DY"), block_id=i),
    "motion_goto": lambda b, i, blk: n.GoTo(
        target=b._sprite_slot(blk, "TO", _SPRITE_SLOT_SPECIALS), block_id=i
    ),
    "looks_switchbackdropto": lambda b, i, blk: n.SwitchBackdropTo(
        backdrop=b._backdrop_slot(blk, "BACKDROP"), block_id=i
    ),
    "looks_switchbackdroptoandwait": lambda b, i, blk: n.SwitchBackdropTo(
        backdrop=b._backdrop_slot(blk, "BACKDROP"), block_id=i
    ),
    "looks_nextbackdrop": lambda b, i, blk: n.NextBackdrop(block_id=i),
    "pen_penDown": lambda b, i, blk: n.PenDown(block_id=i),
    "pen_penUp": lambda b, i, blk: n.PenUp(block_id=i),
    "pen_clear": lambda b, i, blk: n.EraseAll(block_id=i),
    "pen_setPenColorToColor": lambda b, i, blk: n.SetPenColor(color=b._value(blk, "COLOR"), block_id=i),
    "event_broadcast": lambda b, i, blk: n.Broadcast(
        message=b._broadcast_message(blk, "BROADCAST_INPUT"), wait=False, block_id=i
    ),
    "event_broadcastandwait": lambda b, i, blk: n.Broadcast(
        message=b._broadcast_message(blk, "BROADCAST_INPUT"), wait=True, block_id=i
    ),
    "procedures_call": lambda b, i, blk: n.ProcedureCall(
        proccode=blk.mutation.proccode if blk.mutation else "",
        args=b._call_arguments(blk),
        block_id=i,
    ),
}


# --- expression decoders ----------------------------------------------------


def _comparison(op: str):
    return lambda b, i, blk: n.Comparison(
        op=op, left=b._value(blk, "OPERAND1"), right=b._value(blk, "OPERAND2"), block_id=i
    )


def _boolop(op: str):
    return lambda b, i, blk: n.BoolOp(
        op=op, left=b._condition(blk, "OPERAND1"), right=b._condition(blk, "OPERAND2"), block_id=i
    )


def _arith(opcode: str):
    op = _ARITHMETIC_OPS[opcode]

    def decode(b, i, blk):
        args = [b._value(blk, slot) for slot in blk.inputs if not slot.startswith("SUBSTACK")]
        return n.Arithmetic(op=op, args=args, block_id=i)

    return decode


def _key_pressed(b: _UnitBuilder, block_id: str, block: RawBlock) -> n.Expression:
    key, expr = b._key_slot(block, "KEY_OPTION")
    return n.KeyPressed(key=key, expr=expr, block_id=block_id)


def _argument_reporter(kind: n.ParameterKind):
    return lambda b, i, blk: n.ParameterUse(name=b._field_text(blk, "VALUE"), kind=kind, block_id=i)


def _data_reporter(kind: n.LiteralKind, field_name: str):
    return lambda b, i, blk: n.Literal(kind=kind, value=b._field_text(blk, field_name), block_id=i)


_EXPRESSIONS = {
    "operator_equals": _comparison("="),
    "operator_gt": _comparison(">"),
    "operator_lt": _comparison("<"),
    "operator_and": _boolop("and"),
    "operator_or": _boolop("or"),
    "operator_not": lambda b, i, blk: n.Not(operand=b._condition(blk, "OPERAND"), block_id=i),
    "sensing_touchingobject": lambda b, i, blk: n.Touching(
        target=b._sprite_slot(blk, "TOUCHINGOBJECTMENU", _SPRITE_SLOT_SPECIALS), block_id=i
    ),
    "sensing_touchingcolor": lambda b, i, blk: n.TouchingColor(color=b._value(blk, "COLOR"), block_id=i),
    "sensing_coloristouchingcolor": lambda b, i, blk: n.ColorIsTouchingColor(
        color_a=b._value(blk, "COLOR"), color_b=b._value(blk, "COLOR2"), block_id=i
    ),
    "sensing_keypressed": _key_pressed,
    "sensing_mousedown": lambda b, i, blk: n.MouseDown(block_id=i),
    "sensing_mousex": lambda b, i, blk: n.MouseX(block_id=i),
    "sensing_mousey": lambda b, i, blk: n.MouseY(block_id=i),
    "sensing_distanceto": lambda b, i, blk: n.DistanceTo(
        target=b._sprite_slot(blk, "DISTANCETOMENU", _SPRITE_SLOT_SPECIALS), block_id=i
    ),
    "sensing_timer": lambda b, i, blk: n.Timer(block_id=i),
    "motion_xposition": lambda b, i, blk: n.XPosition(block_id=i),
    "motion_yposition": lambda b, i, blk: n.YPosition(block_id=i),
    "motion_direction": lambda b, i, blk: n.Direction(block_id=i),
    "argument_reporter_string_number": _argument_reporter(n.ParameterKind.STRING_NUMBER),
    "argument_reporter_boolean": _argument_reporter(n.ParameterKind.BOOLEAN),
    "data_variable": _data_reporter(n.LiteralKind.VARIABLE, "VARIABLE"),
    "data_listcontents": _data_reporter(n.LiteralKind.LIST, "LIST"),
}
_EXPRESSIONS.update({opcode: _arith(opcode) for opcode in _ARITHMETIC_OPS})
