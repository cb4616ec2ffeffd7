"""The topic controller.

Consumes one ParseResult per round plus the session state and produces a
ReasonerOutput: quit/irrelevant/general/recommend, answers to the round's
questions, and the theme the bot will talk about next.

Dispatch order per step:

1. quit flag short-circuits.
2. Question-bearing themes are answered from the KB; they are consumed
   (never queued, never used as the reply seed).
3. New preferences are folded in; on turns that carried any `prefer`
   predicate, a catalog item matching at least `recommend_threshold`
   preferences (and not yet offered) produces a recommendation, reserving
   the round's themes in the queue.
4. Otherwise a reply seed is picked: a fresh theme at random, else a queued
   theme at random, else a configured fallback instance (irrelevant mode).
5. Topic/property/attitude selection (below) turns the seed into the reply.
6. User themes and the bot reply are appended to history; round++.

Topic selection mirrors three rules: a first-mentioned instance is kept for
one more round; continue_topic keeps the instance with a property advance;
otherwise a uniformly drawn related concept becomes the new instance, with
its relation text attached. Property selection keeps the current property
under continue_attr and otherwise draws uniformly among the instance's
not-yet-discussed catalog properties; both origins of history rows block
re-selection. Attitudes are sticky per (topic, instance, property); a user
`argue` against a stored stance yields `acknowledge` and flips the stored
stance to align with the user.

All randomness flows through one seeded per-session stream; every draw is a
labeled event consuming exactly one underlying sample, so a snapshot is
fully described by (seed, draw count).
"""

from __future__ import annotations

import logging
import random
import uuid
from dataclasses import dataclass
from typing import Optional

from socialbot.kb import CatalogItem, KnowledgeBase, UnknownInstance, match_preferences
from socialbot.model import (
    Answer,
    BotAttitude,
    DecisionFlags,
    HistoryEntry,
    Mode,
    Origin,
    ParseResult,
    Preference,
    PropertyCatalog,
    ReasonerOutput,
    ReplyTheme,
    Theme,
    Topic,
    UserAttitude,
    normalize,
)

log = logging.getLogger(__name__)


class Exhausted:
    """Sentinel: every catalog property of an instance is already in history."""


EXHAUSTED = Exhausted()


class OverrideError(Exception):
    """A forced decision does not match any legal choice."""


@dataclass(frozen=True)
class ReasonerConfig:
    p_continue_topic: float = 0.4
    p_continue_attr: float = 0.3
    p_ask: float = 0.2
    recommend_threshold: int = 2
    fallback_instances: tuple[str, ...] = ("Titanic",)

    def __post_init__(self):
        for name in ("p_continue_topic", "p_continue_attr", "p_ask"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if self.recommend_threshold < 1:
            raise ValueError("recommend_threshold must be >= 1")

    def to_dict(self) -> dict:
        return {
            "p_continue_topic": self.p_continue_topic,
            "p_continue_attr": self.p_continue_attr,
            "p_ask": self.p_ask,
            "recommend_threshold": self.recommend_threshold,
            "fallback_instances": list(self.fallback_instances),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReasonerConfig":
        return cls(
            p_continue_topic=d.get("p_continue_topic", 0.4),
            p_continue_attr=d.get("p_continue_attr", 0.3),
            p_ask=d.get("p_ask", 0.2),
            recommend_threshold=d.get("recommend_threshold", 2),
            fallback_instances=tuple(d.get("fallback_instances", ("Titanic",))),
        )


@dataclass
class DecisionOverrides:
    """Per-step forced decisions for replay tooling.

    A forced value replaces the corresponding RNG draw (which is then not
    consumed). `seed_theme` / `rcc_target` select by "topic|instance|property"
    triple and instance name respectively; `rcc_index` is 1-based into the
    canonical candidate list; `property` pins the free property choice.
    """

    seed_theme: Optional[str] = None
    continue_topic: Optional[bool] = None
    continue_attr: Optional[bool] = None
    ask: Optional[bool] = None
    attitude: Optional[BotAttitude] = None
    rcc_index: Optional[int] = None
    rcc_target: Optional[str] = None
    property: Optional[str] = None


_NO_OVERRIDES = DecisionOverrides()


class SessionRng:
    """Seeded draw stream; every draw consumes exactly one sample."""

    def __init__(self, seed: int):
        self.seed = seed
        self._random = random.Random(seed)
        self.draw_count = 0

    def _draw(self, label: str) -> float:
        value = self._random.random()
        self.draw_count += 1
        log.debug("rng draw #%d %s -> %.6f", self.draw_count, label, value)
        return value

    def coin(self, p: float, label: str) -> bool:
        return self._draw(label) < p

    def index(self, n: int, label: str) -> int:
        if n <= 0:
            raise ValueError("index draw over an empty range")
        return min(int(self._draw(label) * n), n - 1)

    def burn(self, count: int) -> None:
        for _ in range(count):
            self._random.random()
        self.draw_count += count


class Session:
    """One conversation's mutable state. Single-writer."""

    def __init__(
        self,
        session_id: Optional[str] = None,
        seed: Optional[int] = None,
        config: Optional[ReasonerConfig] = None,
        catalog: Optional[PropertyCatalog] = None,
    ):
        self.id = session_id or uuid.uuid4().hex
        self.seed = seed if seed is not None else random.SystemRandom().randrange(2**31)
        self.rng = SessionRng(self.seed)
        self.config = config or ReasonerConfig()
        self.catalog = catalog or PropertyCatalog.default()
        self.round = 1
        self.history: list[HistoryEntry] = []
        self.theme_queue: list[Theme] = []
        self.preferences: list[Preference] = []
        self.bot_attitudes: dict[tuple[str, str, str], BotAttitude] = {}
        self.recommended: set[str] = set()
        self.ended = False
        self.last_flags: Optional[DecisionFlags] = None

    # -- history views -----------------------------------------------------

    def discussed_before(self, topic: Topic, instance: str) -> bool:
        """Any history row for (topic, instance) from an earlier round."""
        key = (topic.value, normalize(instance))
        return any(
            e.round < self.round and (e.topic.value, normalize(e.instance)) == key
            for e in self.history
        )

    def discussed_properties(self, topic: Topic, instance: str) -> set[str]:
        """Normalized properties locked by history rows of either origin."""
        key = (topic.value, normalize(instance))
        return {
            normalize(e.property)
            for e in self.history
            if (e.topic.value, normalize(e.instance)) == key
        }

    def undiscussed_properties(self, topic: Topic, instance: str) -> list[str]:
        used = self.discussed_properties(topic, instance)
        return [p for p in self.catalog.properties(topic) if normalize(p) not in used]

    # -- attitude store ----------------------------------------------------

    def attitude_for(self, key: tuple[str, str, str]) -> Optional[BotAttitude]:
        return self.bot_attitudes.get(key)

    def flip_attitude(self, key: tuple[str, str, str]) -> Optional[BotAttitude]:
        """Invert a stored positive/negative stance (argue and oppose paths)."""
        stored = self.bot_attitudes.get(key)
        if stored is BotAttitude.positive:
            self.bot_attitudes[key] = BotAttitude.negative
        elif stored is BotAttitude.negative:
            self.bot_attitudes[key] = BotAttitude.positive
        return self.bot_attitudes.get(key)

    # -- snapshots -----------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "schema": "session-snapshot/1",
            "id": self.id,
            "seed": self.seed,
            "draw_count": self.rng.draw_count,
            "round": self.round,
            "ended": self.ended,
            "history": [e.to_dict() for e in self.history],
            "theme_queue": [t.to_dict() for t in self.theme_queue],
            "preferences": [p.to_dict() for p in self.preferences],
            "bot_attitudes": [
                {"topic": k[0], "instance": k[1], "property": k[2], "attitude": v.value}
                for k, v in self.bot_attitudes.items()
            ],
            "recommended": sorted(self.recommended),
            "config": self.config.to_dict(),
        }

    @classmethod
    def restore(cls, doc: dict, catalog: Optional[PropertyCatalog] = None) -> "Session":
        if doc.get("schema") not in ("session-snapshot/1", "session-state/1"):
            raise ValueError(f"unsupported snapshot schema: {doc.get('schema')!r}")
        session = cls(
            session_id=doc["id"],
            seed=doc["seed"],
            config=ReasonerConfig.from_dict(doc["config"]),
            catalog=catalog,
        )
        session.rng.burn(doc["draw_count"])
        session.round = doc["round"]
        session.ended = doc.get("ended", False)
        session.history = [HistoryEntry.from_dict(e) for e in doc["history"]]
        session.theme_queue = [Theme.from_dict(t) for t in doc["theme_queue"]]
        session.preferences = [Preference.from_dict(p) for p in doc["preferences"]]
        session.bot_attitudes = {
            (a["topic"], a["instance"], a["property"]): BotAttitude(a["attitude"])
            for a in doc["bot_attitudes"]
        }
        session.recommended = set(doc["recommended"])
        return session


# -- operations -------------------------------------------------------------


def answer_questions(themes: list[Theme], kb: KnowledgeBase) -> list[Answer]:
    """One Answer per question-bearing theme; values come only from the KB."""
    answers = []
    for theme in themes:
        values = kb.lookup_property(theme.topic, theme.instance, theme.property)
        answers.append(
            Answer(
                topic=theme.topic,
                instance=theme.instance,
                property=theme.property,
                value=", ".join(values) if values else None,
            )
        )
    return answers


def maybe_recommend(
    session: Session, kb: KnowledgeBase
) -> Optional[tuple[CatalogItem, list[Preference]]]:
    """Best catalog item matching at least the threshold, not yet offered."""
    catalog = kb.movie_catalog + kb.book_catalog
    for item, matched in match_preferences(session.preferences, catalog):
        if len(matched) < session.config.recommend_threshold:
            break  # sorted best-first; nothing below can qualify
        if item.title in session.recommended:
            continue
        return item, matched
    return None


def ckt_next_property(
    topic: Topic,
    instance: str,
    current_property: Optional[str],
    flags: DecisionFlags,
    session: Session,
    overrides: DecisionOverrides = _NO_OVERRIDES,
):
    """Next property for (topic, instance): the current one under
    continue_attr, else a uniform draw among undiscussed catalog properties;
    EXHAUSTED when history already covers the whole catalog."""
    continue_attr = (
        overrides.continue_attr if overrides.continue_attr is not None else flags.continue_attr
    )
    if continue_attr and current_property:
        return current_property
    candidates = session.undiscussed_properties(topic, instance)
    if not candidates:
        return EXHAUSTED
    if overrides.property is not None:
        forced = normalize(overrides.property)
        for prop in candidates:
            if normalize(prop) == forced:
                return prop
        raise OverrideError(
            f"property {overrides.property!r} is not an undiscussed {topic.value} property"
        )
    if len(candidates) == 1:
        return candidates[0]
    return candidates[session.rng.index(len(candidates), "property")]


def _history_index(session: Session) -> dict[tuple[str, str], set[str]]:
    index: dict[tuple[str, str], set[str]] = {}
    for e in session.history:
        index.setdefault((e.topic.value, normalize(e.instance)), set()).add(
            normalize(e.property)
        )
    return index


def _has_room(session: Session, index, topic: Topic, instance: str) -> bool:
    used = index.get((topic.value, normalize(instance)))
    if not used:
        return True
    return any(key not in used for key in session.catalog.normalized_keys(topic))


def _related_with_room(session: Session, candidates) -> list:
    index = _history_index(session)
    return [c for c in candidates if _has_room(session, index, c.topic, c.instance)]


def next_topic(
    reply_seed: Theme,
    flags: DecisionFlags,
    session: Session,
    kb: KnowledgeBase,
    overrides: DecisionOverrides = _NO_OVERRIDES,
) -> tuple[Theme, Optional[str], Optional[str]]:
    """Turn the seed into the instance/property the bot replies with.

    Rule order: (a) a first-mentioned instance is kept; (b) continue_topic
    keeps the instance with a property step; (c) otherwise switch to a drawn
    related concept, carrying its relation text. Exhaustion escalates:
    (b)->(c)->fallback instances->any instance with an undiscussed property.
    """
    topic, instance = reply_seed.topic, reply_seed.instance
    current_property = reply_seed.property or None

    if not session.discussed_before(topic, instance):
        prop = ckt_next_property(topic, instance, current_property, flags, session, overrides)
        if prop is not EXHAUSTED:
            return Theme(topic, instance, prop), None, None

    continue_topic = (
        overrides.continue_topic if overrides.continue_topic is not None else flags.continue_topic
    )
    if continue_topic:
        prop = ckt_next_property(topic, instance, current_property, flags, session, overrides)
        if prop is not EXHAUSTED:
            return Theme(topic, instance, prop), None, None

    try:
        candidates = kb.related_concepts(topic, instance)
    except UnknownInstance:
        candidates = []

    chosen = None
    if candidates:
        if overrides.rcc_index is not None:
            if not 1 <= overrides.rcc_index <= len(candidates):
                raise OverrideError(f"rcc index {overrides.rcc_index} out of 1..{len(candidates)}")
            chosen = candidates[overrides.rcc_index - 1]
            if not session.undiscussed_properties(chosen.topic, chosen.instance):
                raise OverrideError(f"forced candidate {chosen.instance!r} is exhausted")
        elif overrides.rcc_target is not None:
            key = normalize(overrides.rcc_target)
            for cand in candidates:
                if normalize(cand.instance) == key and session.undiscussed_properties(
                    cand.topic, cand.instance
                ):
                    chosen = cand
                    break
            if chosen is None:
                raise OverrideError(f"no usable related concept named {overrides.rcc_target!r}")
        else:
            with_room = _related_with_room(session, candidates)
            if with_room:
                chosen = with_room[session.rng.index(len(with_room), "rcc")]

    if chosen is not None:
        prop = ckt_next_property(chosen.topic, chosen.instance, None, flags, session, overrides)
        assert prop is not EXHAUSTED  # filtered above
        return Theme(chosen.topic, chosen.instance, prop), chosen.source_instance, chosen.relation

    # No usable related concept. Stay if the seed instance has room, else
    # walk the fallback list, else any instance with an undiscussed property.
    if session.undiscussed_properties(topic, instance):
        prop = ckt_next_property(topic, instance, current_property, flags, session, overrides)
        return Theme(topic, instance, prop), None, None
    for name in session.config.fallback_instances:
        fb_topic, fb_name = _resolve_fallback(name, kb)
        if session.undiscussed_properties(fb_topic, fb_name):
            prop = ckt_next_property(fb_topic, fb_name, None, flags, session, overrides)
            return Theme(fb_topic, fb_name, prop), None, None
    index = _history_index(session)
    open_instances = [
        (t, name)
        for t in (Topic.movie, Topic.book, Topic.person)
        for name in kb.instance_names(t)
        if _has_room(session, index, t, name)
    ]
    if open_instances:
        t, name = open_instances[session.rng.index(len(open_instances), "fallback")]
        prop = ckt_next_property(t, name, None, flags, session, overrides)
        return Theme(t, name, prop), None, None
    # Truly everything discussed: allow reuse on the seed instance.
    props = session.catalog.properties(topic)
    return Theme(topic, instance, props[session.rng.index(len(props), "reuse")]), None, None


def _resolve_fallback(name: str, kb: KnowledgeBase) -> tuple[Topic, str]:
    for topic in (Topic.movie, Topic.book, Topic.person):
        display = kb.find_instance(topic, name)
        if display is not None:
            return topic, display
    return Topic.movie, name


def decide_attitude(
    topic: Topic,
    instance: str,
    prop: str,
    user_attitude: Optional[UserAttitude],
    flags: DecisionFlags,
    session: Session,
    overrides: DecisionOverrides = _NO_OVERRIDES,
) -> BotAttitude:
    """Sticky per-(topic, instance, property) attitude.

    A user argue against a stored positive/negative stance acknowledges and
    flips the store; an existing stance is obeyed; a fresh key draws ask
    with p_ask, else the positive/negative flag draw, and stores the result.
    """
    key = (topic.value, normalize(instance), normalize(prop))
    stored = session.bot_attitudes.get(key)
    if user_attitude is UserAttitude.argue and stored in (
        BotAttitude.positive,
        BotAttitude.negative,
    ):
        session.flip_attitude(key)
        return BotAttitude.acknowledge
    if stored is not None:
        return stored
    if overrides.attitude is not None:
        attitude = overrides.attitude
    else:
        ask = (
            overrides.ask
            if overrides.ask is not None
            else session.rng.coin(session.config.p_ask, "ask")
        )
        attitude = BotAttitude.ask if ask else flags.attitude_draw
    session.bot_attitudes[key] = attitude
    return attitude


def _draw_flags(session: Session, overrides: DecisionOverrides) -> DecisionFlags:
    continue_topic = (
        overrides.continue_topic
        if overrides.continue_topic is not None
        else session.rng.coin(session.config.p_continue_topic, "continue_topic")
    )
    continue_attr = (
        overrides.continue_attr
        if overrides.continue_attr is not None
        else session.rng.coin(session.config.p_continue_attr, "continue_attr")
    )
    if overrides.attitude in (BotAttitude.positive, BotAttitude.negative):
        attitude_draw = overrides.attitude
    elif overrides.attitude is not None:
        attitude_draw = BotAttitude.positive  # unused; decide_attitude takes the override
    else:
        attitude_draw = (
            BotAttitude.positive
            if session.rng.index(2, "attitude") == 0
            else BotAttitude.negative
        )
    return DecisionFlags(continue_topic, continue_attr, attitude_draw)


def _pick_fresh_seed(
    session: Session, fresh: list[Theme], overrides: DecisionOverrides
) -> Theme:
    if overrides.seed_theme is not None:
        wanted = _parse_triple(overrides.seed_theme)
        for theme in fresh:
            if theme.key() == wanted:
                return theme
        raise OverrideError(f"seed theme {overrides.seed_theme!r} not among the fresh themes")
    if len(fresh) == 1:
        return fresh[0]
    return fresh[session.rng.index(len(fresh), "seed")]


def _pick_queued_seed(session: Session, overrides: DecisionOverrides) -> Theme:
    queue = session.theme_queue
    if overrides.seed_theme is not None:
        wanted = _parse_triple(overrides.seed_theme)
        for i, theme in enumerate(queue):
            if theme.key() == wanted:
                return queue.pop(i)
        raise OverrideError(f"seed theme {overrides.seed_theme!r} not in the queue")
    index = 0 if len(queue) == 1 else session.rng.index(len(queue), "queue")
    return queue.pop(index)


def _parse_triple(text: str) -> tuple[str, str, str]:
    parts = [p.strip() for p in text.split("|")]
    if len(parts) != 3:
        raise OverrideError(f"expected 'topic|instance|property', got {text!r}")
    return (Topic.parse(parts[0]).value, normalize(parts[1]), normalize(parts[2]))


def step(
    session: Session,
    parsed: ParseResult,
    kb: KnowledgeBase,
    overrides: Optional[DecisionOverrides] = None,
) -> ReasonerOutput:
    """One conversation round. Total: every input maps to exactly one mode."""
    ov = overrides or _NO_OVERRIDES

    if parsed.quit:
        session.ended = True
        session.last_flags = None
        return ReasonerOutput(mode=Mode.quit)

    question_themes = [t for t in parsed.themes if t.question]
    answers = tuple(answer_questions(question_themes, kb))

    for theme in parsed.themes:
        session.history.append(
            HistoryEntry(
                round=session.round,
                topic=theme.topic,
                instance=theme.instance,
                property=theme.property,
                attitude=theme.attitude,
                origin=Origin.user,
            )
        )

    for pref in parsed.preferences:
        if pref not in session.preferences:
            session.preferences.append(pref)

    fresh = [t for t in parsed.themes if not t.question]

    if parsed.preferences:
        recommendation = maybe_recommend(session, kb)
        if recommendation is not None:
            item, matched = recommendation
            session.theme_queue.extend(fresh)  # themes reserved for later rounds
            session.recommended.add(item.title)
            session.last_flags = None
            output = ReasonerOutput(
                mode=Mode.recommend,
                answers=answers,
                reply_theme=ReplyTheme(item=item.to_dict(), matched=tuple(matched)),
            )
            session.round += 1
            return output

    mode = Mode.general
    if fresh:
        seed = _pick_fresh_seed(session, fresh, ov)
        for theme in fresh:
            if theme is not seed:
                session.theme_queue.append(theme)
    elif session.theme_queue:
        seed = _pick_queued_seed(session, ov)
    else:
        mode = Mode.irrelevant
        fb_topic, fb_name = _resolve_fallback(session.config.fallback_instances[0], kb)
        seed = Theme(fb_topic, fb_name, "")

    stored_seed = session.bot_attitudes.get(seed.key())
    if seed.attitude is UserAttitude.argue and stored_seed in (
        BotAttitude.positive,
        BotAttitude.negative,
    ):
        # Arguing maintains the current property; no flags are drawn.
        session.last_flags = None
        reply = Theme(seed.topic, seed.instance, seed.property)
        attitude = decide_attitude(
            reply.topic, reply.instance, reply.property, UserAttitude.argue,
            DecisionFlags(True, True, BotAttitude.positive), session, ov,
        )
        source = relation = None
        prompt_attitude = session.bot_attitudes.get(reply.key())
    else:
        flags = _draw_flags(session, ov)
        session.last_flags = flags
        reply, source, relation = next_topic(seed, flags, session, kb, ov)
        attitude = decide_attitude(
            reply.topic, reply.instance, reply.property, None, flags, session, ov
        )
        prompt_attitude = attitude

    session.history.append(
        HistoryEntry(
            round=session.round,
            topic=reply.topic,
            instance=reply.instance,
            property=reply.property,
            attitude=attitude,
            origin=Origin.bot,
        )
    )
    session.round += 1
    return ReasonerOutput(
        mode=mode,
        answers=answers,
        reply_theme=ReplyTheme(
            theme=reply,
            attitude=attitude,
            source=source,
            relation=relation,
            prompt_attitude=prompt_attitude,
        ),
    )
