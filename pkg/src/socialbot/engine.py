"""Pipeline orchestration: prompt -> gateway -> parse -> reason -> render.

Both the CLI and the network service drive conversations through Engine so
they produce identical TurnRecords for identical (seed, script, config).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from socialbot import nlg
from socialbot.gateway import (
    CompletionRequest,
    FixtureProvider,
    Gateway,
    GatewayError,
    HttpProvider,
    Purpose,
)
from socialbot.kb import KnowledgeBase, load_kb_dir
from socialbot.model import ParseResult, PropertyCatalog, ReasonerOutput
from socialbot.predparse import (
    NAME_SIMILARITY_THRESHOLD,
    ParseError,
    build_parse_prompt,
    canonicalize_result,
    parse_predicate_text,
)
from socialbot.reasoner import DecisionOverrides, ReasonerConfig, Session, step

log = logging.getLogger(__name__)

GREETING = (
    "Hello! It's always a pleasure to meet another movie and book lover. "
    "Seen anything great lately, or read something you couldn't put down?"
)


class SessionNotFound(Exception):
    def __init__(self, session_id: str):
        super().__init__(f"no session {session_id!r}")
        self.session_id = session_id


class SessionEnded(Exception):
    def __init__(self, session_id: str):
        super().__init__(f"session {session_id!r} has ended")
        self.session_id = session_id


@dataclass(frozen=True)
class TurnRecord:
    round: int
    user_text: str
    parse_result: ParseResult
    reasoner_output: ReasonerOutput
    reply_text: str
    rng_draws_used: int

    def to_dict(self) -> dict:
        return {
            "schema": "turn/1",
            "round": self.round,
            "user_text": self.user_text,
            "parse_result": self.parse_result.to_dict(),
            "reasoner_output": self.reasoner_output.to_dict(),
            "reply_text": self.reply_text,
            "rng_draws_used": self.rng_draws_used,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TurnRecord":
        return cls(
            round=d["round"],
            user_text=d["user_text"],
            parse_result=ParseResult.from_dict(d["parse_result"]),
            reasoner_output=ReasonerOutput.from_dict(d["reasoner_output"]),
            reply_text=d["reply_text"],
            rng_draws_used=d["rng_draws_used"],
        )


class ChatSession:
    """A reasoner session plus its turn log."""

    def __init__(self, session: Session):
        self.session = session
        self.turns: list[TurnRecord] = []

    @property
    def id(self) -> str:
        return self.session.id

    def context(self, turns: int = 2) -> str:
        lines = []
        for turn in self.turns[-turns:]:
            lines.append(f"User: {turn.user_text}")
            lines.append(f"Bot: {turn.reply_text}")
        return "\n".join(lines)

    def state_document(self) -> dict:
        doc = self.session.snapshot()
        doc["schema"] = "session-state/1"
        doc["turns"] = [t.to_dict() for t in self.turns]
        return doc


@dataclass
class AppConfig:
    """Runtime settings shared by the CLI and the service."""

    kb_dir: Optional[str] = None
    fixtures_dir: Optional[str] = None
    properties_file: Optional[str] = None
    offline: bool = True
    provider_url: Optional[str] = None
    model: str = "gpt-4"
    name_threshold: float = NAME_SIMILARITY_THRESHOLD
    p_continue_topic: float = 0.4
    p_continue_attr: float = 0.3
    p_ask: float = 0.2
    recommend_threshold: int = 2
    fallback_instances: tuple[str, ...] = ("Titanic",)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "AppConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "fallback_instances" in data:
            data["fallback_instances"] = tuple(data["fallback_instances"])
        return cls(**data)

    def reasoner_config(self) -> ReasonerConfig:
        return ReasonerConfig(
            p_continue_topic=self.p_continue_topic,
            p_continue_attr=self.p_continue_attr,
            p_ask=self.p_ask,
            recommend_threshold=self.recommend_threshold,
            fallback_instances=self.fallback_instances,
        )


class Engine:
    """Shared, session-independent machinery: KB, catalog, gateway."""

    def __init__(
        self,
        kb: KnowledgeBase,
        catalog: Optional[PropertyCatalog] = None,
        gateway: Optional[Gateway] = None,
        offline: bool = True,
        config: Optional[ReasonerConfig] = None,
        name_threshold: float = NAME_SIMILARITY_THRESHOLD,
    ):
        self.kb = kb
        self.catalog = catalog or PropertyCatalog.default()
        self.gateway = gateway
        self.offline = offline
        self.config = config or ReasonerConfig()
        self.name_threshold = name_threshold

    @classmethod
    def from_config(cls, config: AppConfig) -> "Engine":
        if not config.kb_dir:
            raise ValueError("kb_dir is required")
        kb = load_kb_dir(config.kb_dir)
        catalog = (
            PropertyCatalog.load(config.properties_file)
            if config.properties_file
            else PropertyCatalog.default()
        )
        gateway = None
        if config.fixtures_dir:
            gateway = Gateway(FixtureProvider(config.fixtures_dir))
        elif not config.offline and config.provider_url:
            gateway = Gateway(HttpProvider(config.provider_url, config.model))
        return cls(
            kb=kb,
            catalog=catalog,
            gateway=gateway,
            offline=config.offline,
            config=config.reasoner_config(),
            name_threshold=config.name_threshold,
        )

    def create_session(
        self, seed: Optional[int] = None, config: Optional[ReasonerConfig] = None
    ) -> ChatSession:
        session = Session(seed=seed, config=config or self.config, catalog=self.catalog)
        return ChatSession(session)

    def restore_session(self, doc: dict) -> ChatSession:
        chat = ChatSession(Session.restore(doc, catalog=self.catalog))
        for turn in doc.get("turns", []):
            chat.turns.append(TurnRecord.from_dict(turn))
        return chat

    # -- the pipeline -------------------------------------------------------

    def _extract(self, user_text: str, context: str) -> ParseResult:
        """Prompt the gateway and parse its completion; every failure
        degrades to an irrelevant parse so the turn still gets a reply."""
        prompt = build_parse_prompt(user_text, context)
        if self.gateway is None:
            log.warning("no gateway configured; treating input as irrelevant")
            return ParseResult(irrelevant=True)
        try:
            completion = self.gateway.complete(
                CompletionRequest(prompt=prompt, purpose=Purpose.parse)
            )
        except GatewayError as exc:
            log.warning("parse gateway failed: %s", exc)
            return ParseResult(irrelevant=True)
        try:
            return parse_predicate_text(completion)
        except ParseError as exc:
            log.warning("unparseable extraction output: %s", exc)
            return ParseResult(irrelevant=True)

    def post(
        self,
        chat: ChatSession,
        user_text: str,
        predicates: Optional[str] = None,
        overrides: Optional[DecisionOverrides] = None,
    ) -> TurnRecord:
        """Run one full turn and append its TurnRecord.

        `predicates` bypasses the extraction gateway with a scripted
        predicate block (replay fixtures); parse errors in scripted blocks
        are raised, not degraded.
        """
        session = chat.session
        if session.ended:
            raise SessionEnded(chat.id)
        round_number = session.round
        draws_before = session.rng.draw_count
        context = chat.context()

        if predicates is not None:
            raw = parse_predicate_text(predicates)
        else:
            raw = self._extract(user_text, context)
        parsed = canonicalize_result(raw, self.kb, self.catalog, self.name_threshold)

        output = step(session, parsed, self.kb, overrides)

        try:
            assembled = nlg.assemble_reply(
                output, offline=self.offline, gateway=self.gateway, context=context
            )
            reply_text = assembled.text
            if assembled.attitude_flipped and output.reply_theme and output.reply_theme.theme:
                flipped = session.flip_attitude(output.reply_theme.theme.key())
                log.info("content generation opposed its attitude; stored %s", flipped)
        except GatewayError as exc:
            log.warning("reply generation fell back to templates: %s", exc)
            reply_text = exc.fallback_text or ""

        record = TurnRecord(
            round=round_number,
            user_text=user_text,
            parse_result=parsed,
            reasoner_output=output,
            reply_text=reply_text,
            rng_draws_used=session.rng.draw_count - draws_before,
        )
        chat.turns.append(record)
        return record
