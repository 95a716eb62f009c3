"""The canonical detector fixture corpus.

One positive and one near-miss negative project per detector. Positives are
built so that exactly one finding (from the detector under test) appears in
the whole project, which lets corpus-level tests assert per-row stats of
affected=1/instances=1. Negatives only promise zero findings from the
detector under test.
"""

from __future__ import annotations

from projectbuilder import (
    ProjectBuilder,
    broadcast,
    call_proc,
    change_x,
    create_clone,
    equals,
    erase_all,
    forever,
    gt,
    if_,
    join,
    key_pressed,
    lit,
    lt,
    move,
    mouse_down,
    next_backdrop,
    param,
    pen_down,
    pen_up,
    repeat,
    repeat_until,
    say,
    stop,
    switch_backdrop,
    touching,
    turn,
    var,
    wait_until,
    when_backdrop,
    when_clone,
    when_flag,
    when_key,
    when_receive,
    x_position,
)

# Pairs that must not fire together on one project (positive fixtures of one
# side are asserted clean for the other).
MUTUALLY_EXCLUSIVE = {
    "message-never-sent": ("message-never-received",),
    "message-never-received": ("message-never-sent",),
    "missing-clone-call": ("missing-clone-initialization",),
    "missing-clone-initialization": ("missing-clone-call",),
    "missing-pen-down": ("missing-pen-up",),
    "missing-pen-up": ("missing-pen-down",),
}


# --- syntax ------------------------------------------------------------------


def ambiguous_custom_block_signature_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.proc("block name %s", ["x"], [])
    sp.proc("block name %s", ["x"], [])
    return pb


def ambiguous_custom_block_signature_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc("block name %s", ["x"], [])
    pb.sprite("Sprite2").proc("block name %s", ["x"], [])
    return pb


def ambiguous_parameter_name_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc("do %s %s", ["x", "x"], [])
    return pb


def ambiguous_parameter_name_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc("do %s %s", ["x", "X"], [])
    return pb


def call_without_definition_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), call_proc("do thing"))
    return pb


def call_without_definition_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.proc("do thing", [], [say("done")])
    sp.script(when_flag(), call_proc("do thing"))
    return pb


def expression_as_touchable_or_color_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(
        when_flag(), forever([if_(touching(join("a", "b")), [say("hit")])])
    )
    return pb


def expression_as_touchable_or_color_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(
        when_flag(), forever([if_(touching("_mouse_"), [say("hit")])])
    )
    return pb


def missing_termination_condition_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), repeat_until(None, [say("waiting")]))
    return pb


def missing_termination_condition_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), repeat_until(mouse_down(), [say("waiting")]))
    return pb


def orphaned_parameter_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc("walk %s", ["steps"], [move(param("speed"))])
    return pb


def orphaned_parameter_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc("walk %s", ["steps"], [move(param("steps"))])
    return pb


def parameter_out_of_scope_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), move(param("steps")))
    return pb


def parameter_out_of_scope_neg() -> ProjectBuilder:
    return orphaned_parameter_neg()


# --- general ------------------------------------------------------------------


def comparing_literals_pos() -> ProjectBuilder:
    # The published example: if <"Level" = "21"> with both sides typed in.
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), if_(equals("Level", "21"), [say("you win")]))
    return pb


def comparing_literals_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), if_(equals(var("Level"), "21"), [say("you win")]))
    return pb


def custom_block_with_forever_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.proc("spin", [], [forever([turn(15)])])
    sp.script(when_flag(), call_proc("spin"), say("done"))
    return pb


def custom_block_with_forever_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.proc("spin", [], [forever([turn(15)])])
    sp.script(when_flag(), say("start"), call_proc("spin"))
    return pb


def custom_block_with_termination_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.proc("shutdown", [], [say("bye"), stop("all")])
    sp.script(when_flag(), call_proc("shutdown"), move(10))
    return pb


def custom_block_with_termination_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.proc("shutdown", [], [if_(mouse_down(), [stop("all")])])
    sp.script(when_flag(), call_proc("shutdown"), move(10))
    return pb


def endless_recursion_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc("loop", [], [move(10), call_proc("loop")])
    return pb


def endless_recursion_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").proc(
        "loop", [], [move(10), if_(lt(x_position(), lit(10)), [call_proc("loop")])]
    )
    return pb


def forever_inside_loop_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), repeat(10, [forever([say("stuck")])]))
    return pb


def forever_inside_loop_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.script(when_flag(), forever([say("a")]))
    sp.script(when_clone(), forever([say("b")]))
    return pb


def message_never_received_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), broadcast("start"))
    return pb


def message_never_received_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), broadcast("start"))
    pb.sprite("Sprite2").script(when_receive("start"), say("go"))
    return pb


def message_never_sent_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_receive("go"), say("hi"))
    return pb


def message_never_sent_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_receive("go"), say("hi"))
    pb.stage.script(when_flag(), broadcast("go"))
    return pb


def missing_clone_call_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Ball").script(when_clone(), say("clone here"))
    return pb


def missing_clone_call_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Ball").script(when_clone(), say("clone here"))
    pb.sprite("Spawner").script(when_flag(), create_clone("Ball"))
    return pb


def missing_clone_initialization_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Spawner").script(when_flag(), create_clone("Ball"))
    pb.sprite("Ball").script(when_flag(), say("idle"))
    return pb


def missing_clone_initialization_neg() -> ProjectBuilder:
    return missing_clone_call_neg()


def missing_loop_sensing_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), if_(touching("_edge_"), [say("hit")]))
    return pb


def missing_loop_sensing_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), forever([if_(touching("_edge_"), [say("hit")])]))
    return pb


def no_working_scripts_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.script(when_flag())
    sp.script(move(10), turn(15))
    return pb


def no_working_scripts_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    sp = pb.sprite("Sprite1")
    sp.script(when_flag())
    sp.script(move(10), turn(15))
    sp.script(when_key("space"), say("complete"))
    return pb


def position_equals_check_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), wait_until(equals(x_position(), lit(100))))
    return pb


def position_equals_check_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), wait_until(gt(x_position(), lit(100))))
    return pb


def recursive_cloning_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_clone(), create_clone("_myself_"))
    return pb


def recursive_cloning_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_clone(), create_clone("Other"))
    pb.sprite("Other").script(when_clone(), say("ok"))
    return pb


# --- scratch-specific ----------------------------------------------------------


def missing_backdrop_switch_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_backdrop("Level2"), say("level 2"))
    pb.stage.script(when_flag(), switch_backdrop("Level1"))
    return pb


def missing_backdrop_switch_neg() -> ProjectBuilder:
    pb = missing_backdrop_switch_pos()
    pb.sprite("Sprite2").script(when_key("space"), next_backdrop())
    return pb


def missing_erase_all_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), pen_down(), move(50), pen_up())
    return pb


def missing_erase_all_neg() -> ProjectBuilder:
    pb = missing_erase_all_pos()
    pb.stage.script(when_flag(), erase_all())
    return pb


def missing_pen_down_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), pen_up())
    return pb


def missing_pen_down_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), pen_down(), move(50), pen_up())
    pb.stage.script(when_flag(), erase_all())
    return pb


def missing_pen_up_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_flag(), pen_down(), move(50))
    pb.stage.script(when_flag(), erase_all())
    return pb


def missing_pen_up_neg() -> ProjectBuilder:
    return missing_pen_down_neg()


def stuttering_movement_pos() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(when_key("right arrow"), change_x(10))
    return pb


def stuttering_movement_neg() -> ProjectBuilder:
    pb = ProjectBuilder()
    pb.sprite("Sprite1").script(
        when_flag(), forever([if_(key_pressed("right arrow"), [change_x(10)])])
    )
    return pb


# --- figure reconstructions ------------------------------------------------------


def figure_literal_comparison() -> ProjectBuilder:
    """An if-condition comparing the typed-in strings "Level" and "21"."""
    return comparing_literals_pos()


def figure_nested_forever() -> ProjectBuilder:
    """A forever loop whose tail is another forever loop, so the outer
    loop's leading blocks (clone + turn) run only once."""
    pb = ProjectBuilder()
    pb.sprite("Spiral").script(
        when_flag(),
        forever([create_clone("Trail"), turn(15), forever([say("spin")])]),
    )
    pb.sprite("Trail").script(when_clone(), move(5))
    return pb


FIXTURES: dict[str, tuple] = {
    "ambiguous-custom-block-signature": (
        ambiguous_custom_block_signature_pos,
        ambiguous_custom_block_signature_neg,
    ),
    "ambiguous-parameter-name": (ambiguous_parameter_name_pos, ambiguous_parameter_name_neg),
    "call-without-definition": (call_without_definition_pos, call_without_definition_neg),
    "expression-as-touchable-or-color": (
        expression_as_touchable_or_color_pos,
        expression_as_touchable_or_color_neg,
    ),
    "missing-termination-condition": (
        missing_termination_condition_pos,
        missing_termination_condition_neg,
    ),
    "orphaned-parameter": (orphaned_parameter_pos, orphaned_parameter_neg),
    "parameter-out-of-scope": (parameter_out_of_scope_pos, parameter_out_of_scope_neg),
    "comparing-literals": (comparing_literals_pos, comparing_literals_neg),
    "custom-block-with-forever": (custom_block_with_forever_pos, custom_block_with_forever_neg),
    "custom-block-with-termination": (
        custom_block_with_termination_pos,
        custom_block_with_termination_neg,
    ),
    "endless-recursion": (endless_recursion_pos, endless_recursion_neg),
    "forever-inside-loop": (forever_inside_loop_pos, forever_inside_loop_neg),
    "message-never-received": (message_never_received_pos, message_never_received_neg),
    "message-never-sent": (message_never_sent_pos, message_never_sent_neg),
    "missing-clone-call": (missing_clone_call_pos, missing_clone_call_neg),
    "missing-clone-initialization": (
        missing_clone_initialization_pos,
        missing_clone_initialization_neg,
    ),
    "missing-loop-sensing": (missing_loop_sensing_pos, missing_loop_sensing_neg),
    "no-working-scripts": (no_working_scripts_pos, no_working_scripts_neg),
    "position-equals-check": (position_equals_check_pos, position_equals_check_neg),
    "recursive-cloning": (recursive_cloning_pos, recursive_cloning_neg),
    "missing-backdrop-switch": (missing_backdrop_switch_pos, missing_backdrop_switch_neg),
    "missing-erase-all": (missing_erase_all_pos, missing_erase_all_neg),
    "missing-pen-down": (missing_pen_down_pos, missing_pen_down_neg),
    "missing-pen-up": (missing_pen_up_pos, missing_pen_up_neg),
    "stuttering-movement": (stuttering_movement_pos, stuttering_movement_neg),
}
