"""Loader tests: formats, containers, reference checking, round trips."""

import io
import json
import zipfile

import pytest

from projectbuilder import (
    ProjectBuilder,
    broadcast,
    forever,
    if_,
    move,
    say,
    touching,
    when_flag,
    when_receive,
)
from scratchlint.model import (
    DanglingReferenceError,
    MalformedJsonError,
    MissingArchiveEntryError,
    NotScratch3Error,
    load_project,
    load_project_file,
    serialize,
    validate,
)

MINIMAL = (
    b'{"targets":[{"isStage":true,"name":"Stage","blocks":{},"broadcasts":{},'
    b'"variables":{},"lists":{}}],"meta":{"semver":"3.0.0"}}'
)


def zipped(data: bytes, entry: str = "project.json") -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        zf.writestr(entry, data)
    return buf.getvalue()


def test_minimal_project_loads():
    project = load_project(MINIMAL)
    assert len(project.targets) == 1
    assert project.stage.name == "Stage"
    assert project.stage.is_stage
    assert project.stage.blocks == {}
    assert project.semver == "3.0.0"


def test_archive_and_bare_json_load_identically():
    bare = load_project(MINIMAL, kind="json")
    packed = load_project(zipped(MINIMAL), kind="sb3-archive")
    assert bare == packed


def test_load_accepts_stream():
    assert load_project(io.BytesIO(MINIMAL)) == load_project(MINIMAL)


def test_file_loader_sniffs_zip(tmp_path):
    json_path = tmp_path / "p.json"
    json_path.write_bytes(MINIMAL)
    sb3_path = tmp_path / "p.sb3"
    sb3_path.write_bytes(zipped(MINIMAL))
    assert load_project_file(json_path) == load_project_file(sb3_path)


def test_missing_archive_entry():
    with pytest.raises(MissingArchiveEntryError):
        load_project(zipped(MINIMAL, entry="other.json"), kind="sb3-archive")


def test_not_json():
    with pytest.raises(MalformedJsonError):
        load_project(b"this is not json")


def test_sb2_layout_rejected():
    doc = {"objName": "Stage", "children": []}
    with pytest.raises(NotScratch3Error):
        load_project(json.dumps(doc).encode())


def test_missing_targets_rejected():
    with pytest.raises(NotScratch3Error):
        load_project(b'{"meta":{"semver":"3.0.0"}}')


def test_pre3_semver_rejected():
    doc = json.loads(MINIMAL)
    doc["meta"]["semver"] = "2.0.0"
    with pytest.raises(NotScratch3Error):
        load_project(json.dumps(doc).encode())


def test_no_stage_rejected():
    doc = json.loads(MINIMAL)
    doc["targets"][0]["isStage"] = False
    with pytest.raises(NotScratch3Error):
        load_project(json.dumps(doc).encode())


def test_dangling_next_reference():
    doc = json.loads(MINIMAL)
    doc["targets"][0]["blocks"] = {
        "b1": {
            "opcode": "event_whenflagclicked",
            "next": "deadbeef",
            "parent": None,
            "inputs": {},
            "fields": {},
            "shadow": False,
            "topLevel": True,
        }
    }
    with pytest.raises(DanglingReferenceError) as err:
        load_project(json.dumps(doc).encode())
    assert err.value.block_ref == "deadbeef"


def test_dangling_input_reference():
    pb = ProjectBuilder()
    pb.sprite("S").script(when_flag(), if_(touching("_edge_"), [say("x")]))
    doc = pb.build()
    blocks = doc["targets"][1]["blocks"]
    if_id = next(i for i, b in blocks.items() if b["opcode"] == "control_if")
    blocks[if_id]["inputs"]["CONDITION"] = [2, "nope"]
    with pytest.raises(DanglingReferenceError):
        load_project(json.dumps(doc).encode())


def test_unknown_opcodes_and_fields_survive():
    doc = json.loads(MINIMAL)
    doc["targets"][0]["blocks"] = {
        "b1": {
            "opcode": "music_playDrumForBeats",
            "next": None,
            "parent": None,
            "inputs": {"BEATS": [1, [4, "0.25"]]},
            "fields": {},
            "shadow": False,
            "topLevel": True,
            "somethingNew": 42,
        }
    }
    doc["futureTopLevelKey"] = {"a": 1}
    project = load_project(json.dumps(doc).encode())
    block = project.stage.blocks["b1"]
    assert block.opcode == "music_playDrumForBeats"
    assert block.extra["somethingNew"] == 42
    assert project.extra["futureTopLevelKey"] == {"a": 1}


def test_compact_variable_block_normalizes():
    doc = json.loads(MINIMAL)
    doc["targets"][0]["variables"] = {"vid": ["score", 0]}
    doc["targets"][0]["blocks"] = {"b1": [12, "score", "vid", 10, 20]}
    project = load_project(json.dumps(doc).encode())
    block = project.stage.blocks["b1"]
    assert block.opcode == "data_variable"
    assert block.top_level
    assert block.fields["VARIABLE"].value == "score"
    assert block.extra == {"x": 10, "y": 20}


def _rich_builder() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Cat")
    sp.script(when_flag(), forever([if_(touching("_edge_"), [broadcast("hit"), move(5)])]))
    sp.script(when_receive("hit"), say("ouch"))
    sp.proc("walk %s", ["steps"], [move(10)])
    pb.stage.script(when_flag(), say("start"))
    return pb


def test_roundtrip_structural_equality():
    original = load_project(_rich_builder().to_bytes())
    reloaded = load_project(serialize(original))
    assert reloaded == original


def test_roundtrip_minimal():
    original = load_project(MINIMAL)
    assert load_project(serialize(original)) == original


def test_validate_empty_project():
    assert validate(load_project(MINIMAL)) == []


def test_validate_duplicate_target_names():
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), say("a"))
    pb.sprite("Sprite1").script(when_flag(), say("b"))
    warnings = validate(load_project(pb.to_bytes()))
    assert any(w.kind == "duplicate-target-name" for w in warnings)


def test_validate_orphan_shadow():
    doc = json.loads(MINIMAL)
    doc["targets"][0]["blocks"] = {
        "sh1": {
            "opcode": "sensing_touchingobjectmenu",
            "next": None,
            "parent": None,
            "inputs": {},
            "fields": {"TOUCHINGOBJECTMENU": ["_edge_", None]},
            "shadow": True,
            "topLevel": False,
        }
    }
    warnings = validate(load_project(json.dumps(doc).encode()))
    assert any(w.kind == "orphan-shadow" for w in warnings)


def test_validate_duplicate_variable_names():
    doc = json.loads(MINIMAL)
    doc["targets"][0]["variables"] = {"v1": ["score", 0], "v2": ["score", 1]}
    warnings = validate(load_project(json.dumps(doc).encode()))
    assert any(w.kind == "duplicate-variable-name" for w in warnings)


def test_validate_unknown_target_reference():
    pb = ProjectBuilder()
    pb.sprite("S").script(when_flag(), if_(touching("Ghost"), [say("boo")]))
    warnings = validate(load_project(pb.to_bytes()))
    assert any(w.kind == "unknown-target-reference" for w in warnings)
