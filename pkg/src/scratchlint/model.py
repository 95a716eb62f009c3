"""Raw object model for Scratch 3 project files.

Loads a `project.json` (bare, or packed inside an `.sb3` zip archive) into
a faithful, validated structure without interpreting block semantics.
Unknown opcodes and unknown JSON fields are preserved so that projects
using extensions survive a load/serialize round trip.
"""

from __future__ import annotations

import io
import json
import zipfile
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, BinaryIO


class ProjectLoadError(Exception):
    """Base class for errors raised while ingesting a project file."""


class MalformedJsonError(ProjectLoadError):
    """The input is not parseable as the expected JSON structure."""


class NotScratch3Error(ProjectLoadError):
    """The input parses as JSON but is not a Scratch 3 project."""


class DanglingReferenceError(ProjectLoadError):
    """A block references an id that is not present in the blocks map."""

    def __init__(self, block_ref: str, referrer: str = ""):
        self.block_ref = block_ref
        self.referrer = referrer
        where = f" (referenced from block {referrer!r})" if referrer else ""
        super().__init__(f"dangling block reference {block_ref!r}{where}")


class MissingArchiveEntryError(ProjectLoadError):
    """An .sb3 archive does not contain a project.json entry."""


# Literal primitive codes used inside block input arrays.
LIT_NUMBER = 4
LIT_POSITIVE_NUMBER = 5
LIT_WHOLE_NUMBER = 6
LIT_INTEGER = 7
LIT_ANGLE = 8
LIT_COLOR = 9
LIT_STRING = 10
LIT_BROADCAST = 11
LIT_VARIABLE = 12
LIT_LIST = 13

PROJECT_JSON_ENTRY = "project.json"


@dataclass(frozen=True)
class BlockRef:
    """Reference to another block by id."""

    id: str


@dataclass(frozen=True)
class RawLiteral:
    """A literal primitive stored inline in an input slot.

    `code` is the numeric tag from the project format; `ref_id` carries the
    broadcast/variable/list id for codes 11-13.
    """

    code: int
    value: Any
    ref_id: str | None = None


@dataclass(frozen=True)
class RawInput:
    """One decoded input slot: shadow state plus active and obscured values."""

    shadow_state: int
    value: BlockRef | RawLiteral | None
    shadow: BlockRef | RawLiteral | None = None


@dataclass(frozen=True)
class RawField:
    """One dropdown field: the selected value plus an optional id."""

    value: Any
    ref_id: str | None = None


@dataclass
class Mutation:
    """Custom-block metadata attached to prototype and call blocks."""

    proccode: str = ""
    argument_ids: list[str] = field(default_factory=list)
    argument_names: list[str] = field(default_factory=list)
    argument_defaults: list[Any] = field(default_factory=list)
    warp: bool = False
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class RawBlock:
    opcode: str
    next: str | None = None
    parent: str | None = None
    inputs: dict[str, RawInput] = field(default_factory=dict)
    fields: dict[str, RawField] = field(default_factory=dict)
    top_level: bool = False
    shadow: bool = False
    mutation: Mutation | None = None
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class RawTarget:
    is_stage: bool
    name: str
    blocks: dict[str, RawBlock] = field(default_factory=dict)
    broadcasts: dict[str, str] = field(default_factory=dict)
    variables: dict[str, list] = field(default_factory=dict)
    lists: dict[str, list] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class RawProject:
    targets: list[RawTarget]
    meta: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def stage(self) -> RawTarget:
        return next(t for t in self.targets if t.is_stage)

    @property
    def sprites(self) -> list[RawTarget]:
        return [t for t in self.targets if not t.is_stage]

    @property
    def semver(self) -> str:
        return str(self.meta.get("semver", ""))


@dataclass(frozen=True)
class StructuralWarning:
    """A non-fatal issue found by validate()."""

    kind: str
    target: str
    message: str


def load_project(source: bytes | BinaryIO, kind: str = "json") -> RawProject:
    """Load a Scratch 3 project from raw bytes or a binary stream.

    kind is "json" for a bare project.json, "sb3-archive" for a zip archive
    containing a project.json entry. Raises MalformedJsonError,
    NotScratch3Error, DanglingReferenceError, or MissingArchiveEntryError;
    never anything else, regardless of input bytes.
    """
    data = source.read() if hasattr(source, "read") else source
    if not isinstance(data, bytes):
        raise MalformedJsonError("expected a byte stream")
    if kind == "sb3-archive":
        data = _extract_project_json(data)
    elif kind != "json":
        raise ValueError(f"unknown source kind {kind!r}")
    try:
        doc = json.loads(data.decode("utf-8-sig", errors="strict"))
    except (ValueError, UnicodeDecodeError, RecursionError) as exc:
        raise MalformedJsonError(f"not valid JSON: {exc}") from None
    return project_from_dict(doc)


def load_project_file(path: str | Path) -> RawProject:
    """Load a project from a .json or .sb3 file, sniffing zip archives."""
    data = Path(path).read_bytes()
    kind = "sb3-archive" if data[:4] == b"PK\x03\x04" else "json"
    return load_project(data, kind=kind)


def _extract_project_json(data: bytes) -> bytes:
    # Damaged archives surface as more than BadZipFile: corrupt offsets raise
    # ValueError/OSError, bad payloads zlib.error, odd compression methods
    # NotImplementedError, encryption RuntimeError.
    try:
        with zipfile.ZipFile(io.BytesIO(data)) as archive:
            names = archive.namelist()
            if PROJECT_JSON_ENTRY not in names:
                raise MissingArchiveEntryError(
                    f"archive has no {PROJECT_JSON_ENTRY} entry (found {names[:5]})"
                )
            return archive.read(PROJECT_JSON_ENTRY)
    except MissingArchiveEntryError:
        raise
    except (zipfile.BadZipFile, ValueError, OSError, EOFError, zlib.error,
            NotImplementedError, RuntimeError, OverflowError) as exc:
        raise MalformedJsonError(f"not a readable zip archive: {exc}") from None


def project_from_dict(doc: Any) -> RawProject:
    """Build a RawProject from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise NotScratch3Error("top-level JSON value is not an object")
    if "objName" in doc:
        raise NotScratch3Error("pre-3.0 project layout (objName present)")
    targets_json = doc.get("targets")
    if not isinstance(targets_json, list):
        raise NotScratch3Error("missing targets array")
    meta = doc.get("meta")
    if meta is not None:
        if not isinstance(meta, dict):
            raise NotScratch3Error("meta is not an object")
        semver = str(meta.get("semver", "3.0.0"))
        if not semver.startswith("3."):
            raise NotScratch3Error(f"unsupported format version {semver!r}")
    else:
        meta = {}

    targets = [_target_from_dict(t, i) for i, t in enumerate(targets_json)]
    stages = [t for t in targets if t.is_stage]
    if len(stages) != 1:
        raise NotScratch3Error(f"expected exactly one stage target, found {len(stages)}")

    extra = {k: v for k, v in doc.items() if k not in ("targets", "meta")}
    project = RawProject(targets=targets, meta=meta, extra=extra)
    _check_references(project)
    return project


_TARGET_KEYS = ("isStage", "name", "blocks", "broadcasts", "variables", "lists")


def _target_from_dict(doc: Any, index: int) -> RawTarget:
    if not isinstance(doc, dict):
        raise MalformedJsonError(f"target #{index} is not an object")
    name = doc.get("name")
    if not isinstance(name, str):
        raise MalformedJsonError(f"target #{index} has no string name")
    blocks_json = doc.get("blocks", {})
    if not isinstance(blocks_json, dict):
        raise MalformedJsonError(f"target {name!r}: blocks is not a map")
    blocks = {}
    for block_id, block_json in blocks_json.items():
        blocks[str(block_id)] = _block_from_json(block_json, name, str(block_id))

    broadcasts = _string_map(doc.get("broadcasts", {}), name, "broadcasts")
    variables = _entry_map(doc.get("variables", {}), name, "variables")
    lists = _entry_map(doc.get("lists", {}), name, "lists")
    extra = {k: v for k, v in doc.items() if k not in _TARGET_KEYS}
    return RawTarget(
        is_stage=bool(doc.get("isStage", False)),
        name=name,
        blocks=blocks,
        broadcasts=broadcasts,
        variables=variables,
        lists=lists,
        extra=extra,
    )


def _string_map(doc: Any, target: str, what: str) -> dict[str, str]:
    if not isinstance(doc, dict):
        raise MalformedJsonError(f"target {target!r}: {what} is not a map")
    return {str(k): str(v) for k, v in doc.items()}


def _entry_map(doc: Any, target: str, what: str) -> dict[str, list]:
    if not isinstance(doc, dict):
        raise MalformedJsonError(f"target {target!r}: {what} is not a map")
    out = {}
    for key, entry in doc.items():
        if not isinstance(entry, list) or not entry:
            raise MalformedJsonError(f"target {target!r}: {what}[{key!r}] is not a [name, ...] entry")
        out[str(key)] = entry
    return out


_BLOCK_KEYS = ("opcode", "next", "parent", "inputs", "fields", "topLevel", "shadow", "mutation")

# Compact top-level arrays encode detached variable/list reporters.
_COMPACT_OPCODES = {LIT_VARIABLE: ("data_variable", "VARIABLE"), LIT_LIST: ("data_listcontents", "LIST")}


def _block_from_json(doc: Any, target: str, block_id: str) -> RawBlock:
    if isinstance(doc, list):
        return _block_from_compact(doc, target, block_id)
    if not isinstance(doc, dict):
        raise MalformedJsonError(f"target {target!r}: block {block_id!r} is neither object nor array")
    opcode = doc.get("opcode")
    if not isinstance(opcode, str):
        raise MalformedJsonError(f"target {target!r}: block {block_id!r} has no string opcode")
    nxt = doc.get("next")
    parent = doc.get("parent")
    if nxt is not None and not isinstance(nxt, str):
        raise MalformedJsonError(f"block {block_id!r}: next is neither string nor null")
    if parent is not None and not isinstance(parent, str):
        raise MalformedJsonError(f"block {block_id!r}: parent is neither string nor null")

    inputs_json = doc.get("inputs", {})
    if not isinstance(inputs_json, dict):
        raise MalformedJsonError(f"block {block_id!r}: inputs is not a map")
    inputs = {str(k): _input_from_json(v, block_id) for k, v in inputs_json.items()}

    fields_json = doc.get("fields", {})
    if not isinstance(fields_json, dict):
        raise MalformedJsonError(f"block {block_id!r}: fields is not a map")
    fields = {str(k): _field_from_json(v, block_id) for k, v in fields_json.items()}

    mutation = None
    mutation_json = doc.get("mutation")
    if isinstance(mutation_json, dict):
        mutation = _mutation_from_json(mutation_json)

    extra = {k: v for k, v in doc.items() if k not in _BLOCK_KEYS}
    return RawBlock(
        opcode=opcode,
        next=nxt,
        parent=parent,
        inputs=inputs,
        fields=fields,
        top_level=bool(doc.get("topLevel", False)),
        shadow=bool(doc.get("shadow", False)),
        mutation=mutation,
        extra=extra,
    )


def _block_from_compact(doc: list, target: str, block_id: str) -> RawBlock:
    if not doc or not isinstance(doc[0], int) or doc[0] not in _COMPACT_OPCODES:
        raise MalformedJsonError(f"target {target!r}: block {block_id!r} has unrecognized compact form")
    opcode, field_name = _COMPACT_OPCODES[doc[0]]
    value = doc[1] if len(doc) > 1 else ""
    ref_id = doc[2] if len(doc) > 2 and isinstance(doc[2], str) else None
    extra: dict[str, Any] = {}
    if len(doc) > 3:
        extra["x"] = doc[3]
    if len(doc) > 4:
        extra["y"] = doc[4]
    return RawBlock(
        opcode=opcode,
        top_level=True,
        fields={field_name: RawField(value=value, ref_id=ref_id)},
        extra=extra,
    )


def _input_from_json(doc: Any, block_id: str) -> RawInput:
    if not isinstance(doc, list) or not doc:
        raise MalformedJsonError(f"block {block_id!r}: input is not an array")
    state = doc[0]
    if not isinstance(state, int):
        raise MalformedJsonError(f"block {block_id!r}: input shadow state is not an int")
    value = _input_value_from_json(doc[1], block_id) if len(doc) > 1 else None
    shadow = _input_value_from_json(doc[2], block_id) if len(doc) > 2 else None
    return RawInput(shadow_state=state, value=value, shadow=shadow)


def _input_value_from_json(doc: Any, block_id: str) -> BlockRef | RawLiteral | None:
    if doc is None:
        return None
    if isinstance(doc, str):
        return BlockRef(doc)
    if isinstance(doc, list) and doc and isinstance(doc[0], int):
        code = doc[0]
        value = doc[1] if len(doc) > 1 else None
        ref_id = doc[2] if len(doc) > 2 and isinstance(doc[2], str) else None
        return RawLiteral(code=code, value=value, ref_id=ref_id)
    raise MalformedJsonError(f"block {block_id!r}: unrecognized input value {doc!r}")


def _field_from_json(doc: Any, block_id: str) -> RawField:
    if isinstance(doc, list):
        value = doc[0] if doc else None
        ref_id = doc[1] if len(doc) > 1 and isinstance(doc[1], str) else None
        return RawField(value=value, ref_id=ref_id)
    # Some exporters emit the bare value instead of a [value, id] pair.
    return RawField(value=doc)


def _mutation_from_json(doc: dict) -> Mutation:
    # tagName/children are constant boilerplate; keeping them out of extra
    # makes serialize/load round trips structurally stable.
    known = ("proccode", "argumentids", "argumentnames", "argumentdefaults", "warp", "tagName", "children")
    return Mutation(
        proccode=str(doc.get("proccode", "")),
        argument_ids=_json_string_list(doc.get("argumentids")),
        argument_names=_json_string_list(doc.get("argumentnames")),
        argument_defaults=_json_list(doc.get("argumentdefaults")),
        warp=_flex_bool(doc.get("warp")),
        extra={k: v for k, v in doc.items() if k not in known},
    )


def _json_string_list(value: Any) -> list[str]:
    return [str(v) for v in _json_list(value)]


def _json_list(value: Any) -> list:
    # Mutation list attributes are JSON encoded inside a JSON string.
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except (ValueError, RecursionError):
            return []
    return value if isinstance(value, list) else []


def _flex_bool(value: Any) -> bool:
    if isinstance(value, str):
        return value.lower() == "true"
    return bool(value)


def _check_references(project: RawProject) -> None:
    for target in project.targets:
        blocks = target.blocks
        for block_id, block in blocks.items():
            for ref in (block.next, block.parent):
                if ref is not None and ref not in blocks:
                    raise DanglingReferenceError(ref, block_id)
            for inp in block.inputs.values():
                for side in (inp.value, inp.shadow):
                    if isinstance(side, BlockRef) and side.id not in blocks:
                        raise DanglingReferenceError(side.id, block_id)


def validate(project: RawProject) -> list[StructuralWarning]:
    """Report non-fatal structural issues on a loaded project."""
    warnings: list[StructuralWarning] = []
    seen_names: dict[str, str] = {}
    sprite_names = {t.name for t in project.targets}
    for target in project.targets:
        if target.name in seen_names:
            warnings.append(
                StructuralWarning(
                    kind="duplicate-target-name",
                    target=target.name,
                    message=f"target name {target.name!r} is used more than once",
                )
            )
        seen_names[target.name] = target.name

        var_names: set[str] = set()
        for entry in target.variables.values():
            var_name = str(entry[0])
            if var_name in var_names:
                warnings.append(
                    StructuralWarning(
                        kind="duplicate-variable-name",
                        target=target.name,
                        message=f"variable {var_name!r} declared more than once in {target.name!r}",
                    )
                )
            var_names.add(var_name)

        for block_id, block in target.blocks.items():
            if block.shadow and block.parent is None:
                warnings.append(
                    StructuralWarning(
                        kind="orphan-shadow",
                        target=target.name,
                        message=f"shadow block {block_id!r} ({block.opcode}) has no parent",
                    )
                )
            warnings.extend(_target_reference_warnings(target, block_id, block, sprite_names))
    return warnings


_SPRITE_MENU_FIELDS = {
    "control_create_clone_of_menu": "CLONE_OPTION",
    "sensing_touchingobjectmenu": "TOUCHINGOBJECTMENU",
    "sensing_distancetomenu": "DISTANCETOMENU",
}
_SPECIAL_MENU_VALUES = {"_myself_", "_mouse_", "_edge_", "_stage_", "_random_"}


def _target_reference_warnings(target, block_id, block, sprite_names):
    field_name = _SPRITE_MENU_FIELDS.get(block.opcode)
    if field_name is None:
        return
    menu_field = block.fields.get(field_name)
    if menu_field is None:
        return
    value = menu_field.value
    if isinstance(value, str) and value not in _SPECIAL_MENU_VALUES and value not in sprite_names:
        yield StructuralWarning(
            kind="unknown-target-reference",
            target=target.name,
            message=f"block {block_id!r} refers to nonexistent sprite {value!r}",
        )


def serialize(project: RawProject) -> bytes:
    """Serialize a RawProject back to project.json bytes.

    Loading the output yields a RawProject structurally equal to the input;
    byte-level layout (key order, compact block forms) is not preserved.
    """
    return json.dumps(project_to_dict(project), ensure_ascii=False).encode("utf-8")


def project_to_dict(project: RawProject) -> dict:
    doc = {"targets": [_target_to_dict(t) for t in project.targets], "meta": project.meta}
    doc.update(project.extra)
    return doc


def _target_to_dict(target: RawTarget) -> dict:
    doc = {
        "isStage": target.is_stage,
        "name": target.name,
        "blocks": {bid: _block_to_dict(b) for bid, b in target.blocks.items()},
        "broadcasts": target.broadcasts,
        "variables": target.variables,
        "lists": target.lists,
    }
    doc.update(target.extra)
    return doc


def _block_to_dict(block: RawBlock) -> dict:
    doc: dict[str, Any] = {
        "opcode": block.opcode,
        "next": block.next,
        "parent": block.parent,
        "inputs": {k: _input_to_json(v) for k, v in block.inputs.items()},
        "fields": {k: _field_to_json(v) for k, v in block.fields.items()},
        "shadow": block.shadow,
        "topLevel": block.top_level,
    }
    if block.mutation is not None:
        doc["mutation"] = _mutation_to_json(block.mutation)
    doc.update(block.extra)
    return doc


def _input_to_json(inp: RawInput) -> list:
    out: list[Any] = [inp.shadow_state, _input_value_to_json(inp.value)]
    if inp.shadow is not None:
        out.append(_input_value_to_json(inp.shadow))
    return out


def _input_value_to_json(value: BlockRef | RawLiteral | None):
    if value is None:
        return None
    if isinstance(value, BlockRef):
        return value.id
    out = [value.code, value.value]
    if value.ref_id is not None:
        out.append(value.ref_id)
    return out


def _field_to_json(fld: RawField) -> list:
    return [fld.value, fld.ref_id]


def _mutation_to_json(mutation: Mutation) -> dict:
    doc = {
        "tagName": "mutation",
        "children": [],
        "proccode": mutation.proccode,
        "argumentids": json.dumps(mutation.argument_ids),
        "argumentnames": json.dumps(mutation.argument_names),
        "argumentdefaults": json.dumps(mutation.argument_defaults),
        "warp": "true" if mutation.warp else "false",
    }
    doc.update(mutation.extra)
    return doc
