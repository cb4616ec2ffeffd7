"""Scripted conversation replay with embedded expectations.

Script format (one `[turn]` section per round, `#` comments):

    [turn]
    user: I just saw Inception...
    predicates: talk(movie, Inception, plot episode). attitude(positive).
    force: continue_attr=true; attitude=positive
    expect_mode: general
    expect_reply: movie|Inception|plot episode
    expect_attitude: positive

`predicates:` lines repeat and are joined; they bypass the extraction
gateway (scripted parse fixtures). `force:` pins random decisions — keys:
seed, continue_topic, continue_attr, ask, attitude, property, rcc (1-based
index), rcc_target. `expect_reply:` lines repeat; any listed triple passes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from socialbot.engine import ChatSession, Engine, TurnRecord
from socialbot.model import BotAttitude, Topic, normalize
from socialbot.reasoner import DecisionOverrides


class ScriptError(Exception):
    """Malformed replay script."""


class ExpectationFailed(Exception):
    def __init__(self, round_number: int, expected: str, got: str):
        super().__init__(f"round {round_number}: expected {expected}, got {got}")
        self.round = round_number
        self.expected = expected
        self.got = got


@dataclass
class ScriptTurn:
    user_text: str = ""
    predicates: str = ""
    overrides: DecisionOverrides = field(default_factory=DecisionOverrides)
    expect_mode: Optional[str] = None
    expect_replies: list[tuple[str, str, str]] = field(default_factory=list)
    expect_attitude: Optional[str] = None


def _parse_bool(value: str, key: str) -> bool:
    value = value.strip().casefold()
    if value in ("true", "yes", "1"):
        return True
    if value in ("false", "no", "0"):
        return False
    raise ScriptError(f"force {key} expects true/false, got {value!r}")


def _apply_force(turn: ScriptTurn, text: str) -> None:
    for clause in text.split(";"):
        clause = clause.strip()
        if not clause:
            continue
        if "=" not in clause:
            raise ScriptError(f"force clause without '=': {clause!r}")
        key, value = (part.strip() for part in clause.split("=", 1))
        ov = turn.overrides
        if key == "seed":
            ov.seed_theme = value
        elif key == "continue_topic":
            ov.continue_topic = _parse_bool(value, key)
        elif key == "continue_attr":
            ov.continue_attr = _parse_bool(value, key)
        elif key == "ask":
            ov.ask = _parse_bool(value, key)
        elif key == "attitude":
            ov.attitude = BotAttitude(value.casefold())
        elif key == "property":
            ov.property = value
        elif key == "rcc":
            ov.rcc_index = int(value)
        elif key == "rcc_target":
            ov.rcc_target = value
        else:
            raise ScriptError(f"unknown force key {key!r}")


def _parse_triple(value: str, where: str) -> tuple[str, str, str]:
    parts = [p.strip() for p in value.split("|")]
    if len(parts) != 3:
        raise ScriptError(f"{where} expects topic|instance|property, got {value!r}")
    return (Topic.parse(parts[0]).value, normalize(parts[1]), normalize(parts[2]))


def parse_script(text: str) -> list[ScriptTurn]:
    turns: list[ScriptTurn] = []
    current: Optional[ScriptTurn] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[turn]":
            current = ScriptTurn()
            turns.append(current)
            continue
        if current is None:
            raise ScriptError(f"line {lineno}: content before the first [turn]")
        if ":" not in line:
            raise ScriptError(f"line {lineno}: expected 'key: value'")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "user":
            current.user_text = value
        elif key == "predicates":
            current.predicates = f"{current.predicates} {value}".strip()
        elif key == "force":
            _apply_force(current, value)
        elif key == "expect_mode":
            current.expect_mode = value.casefold()
        elif key == "expect_reply":
            current.expect_replies.append(_parse_triple(value, "expect_reply"))
        elif key == "expect_attitude":
            current.expect_attitude = value.casefold()
        else:
            raise ScriptError(f"line {lineno}: unknown key {key!r}")
    return turns


def load_script(path: Union[str, Path]) -> list[ScriptTurn]:
    return parse_script(Path(path).read_text(encoding="utf-8"))


@dataclass
class ReplayReport:
    records: list[TurnRecord]
    failures: list[ExpectationFailed]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.failures


def _check(turn: ScriptTurn, record: TurnRecord) -> list[ExpectationFailed]:
    failures = []
    output = record.reasoner_output
    if turn.expect_mode and output.mode.value != turn.expect_mode:
        failures.append(
            ExpectationFailed(record.round, f"mode={turn.expect_mode}", f"mode={output.mode.value}")
        )
    if turn.expect_replies:
        theme = output.reply_theme.theme if output.reply_theme else None
        got = theme.key() if theme else None
        if got not in turn.expect_replies:
            want = " or ".join("|".join(t) for t in turn.expect_replies)
            failures.append(
                ExpectationFailed(record.round, f"reply {want}", f"reply {got}")
            )
    if turn.expect_attitude:
        attitude = (
            output.reply_theme.attitude.value
            if output.reply_theme and output.reply_theme.attitude
            else None
        )
        if attitude != turn.expect_attitude:
            failures.append(
                ExpectationFailed(
                    record.round, f"attitude={turn.expect_attitude}", f"attitude={attitude}"
                )
            )
    return failures


def run_script(
    engine: Engine,
    turns: list[ScriptTurn],
    seed: int = 0,
    chat: Optional[ChatSession] = None,
) -> ReplayReport:
    """Drive the full offline pipeline over the script and collect every
    expectation failure (the report is ok iff there are none)."""
    start = time.perf_counter()
    chat = chat or engine.create_session(seed=seed)
    records: list[TurnRecord] = []
    failures: list[ExpectationFailed] = []
    for index, turn in enumerate(turns, start=1):
        user_text = turn.user_text or f"(scripted turn {index})"
        record = engine.post(
            chat,
            user_text,
            predicates=turn.predicates or "irrelevant.",
            overrides=turn.overrides,
        )
        records.append(record)
        failures.extend(_check(turn, record))
    return ReplayReport(records=records, failures=failures, elapsed=time.perf_counter() - start)
