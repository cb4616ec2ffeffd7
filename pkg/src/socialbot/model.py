"""Domain types shared across the whole pipeline.

Everything here is an immutable value: themes and preferences extracted from
user input, the reasoner's output structures, and the per-topic property
catalogs. No behavior beyond construction, validation, and (de)serialization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union


class Topic(enum.Enum):
    """Subject category of a conversation: a movie, a book, or a person."""

    movie = "movie"
    book = "book"
    person = "person"

    @classmethod
    def parse(cls, atom: str) -> "Topic":
        atom = atom.strip().casefold()
        if atom == "people":  # the prompt ontology says "people", traces say "person"
            atom = "person"
        try:
            return cls(atom)
        except ValueError:
            raise UnknownTopic(atom) from None


class UserAttitude(enum.Enum):
    """Stance the user takes on a theme."""

    positive = "positive"
    negative = "negative"
    ask = "ask"
    argue = "argue"


class BotAttitude(enum.Enum):
    """Stance the bot takes on a theme.

    `acknowledge` is only ever produced in response to a user `argue`.
    """

    positive = "positive"
    negative = "negative"
    ask = "ask"
    acknowledge = "acknowledge"


class Mode(enum.Enum):
    """Four-way classification of a reasoner step."""

    quit = "quit"
    irrelevant = "irrelevant"
    general = "general"
    recommend = "recommend"


class Origin(enum.Enum):
    user = "user"
    bot = "bot"


#: Properties a `prefer` predicate may carry; everything else is dropped.
PREFERENCE_PROPERTIES = frozenset(
    {
        "popularity rank",
        "rating",
        "genre",
        "language",
        "countries",
        "writer",
        "actor",
        "director",
    }
)

#: Aliases the parser normalizes before checking PREFERENCE_PROPERTIES.
_PREFERENCE_ALIASES = {
    "genres": "genre",
    "languages": "language",
    "country": "countries",
    "actors": "actor",
    "directors": "director",
    "writers": "writer",
    "rank": "popularity rank",
    "popularity": "popularity rank",
}


def normalize(text: str) -> str:
    """Comparison key: whitespace-collapsed, case-folded."""
    return " ".join(text.split()).casefold()


class ModelError(Exception):
    """Base for domain-type validation failures."""


class UnknownTopic(ModelError):
    def __init__(self, atom: str):
        super().__init__(f"unknown topic atom: {atom!r}")
        self.atom = atom


class UnknownProperty(ModelError):
    def __init__(self, topic: Topic, prop: str):
        super().__init__(f"property {prop!r} is not in the {topic.value} catalog")
        self.topic = topic
        self.property = prop


class UnknownPreferenceProperty(ModelError):
    def __init__(self, prop: str):
        super().__init__(f"{prop!r} is not a preference-matchable property")
        self.property = prop


@dataclass(frozen=True)
class Theme:
    """One conversational unit: a property of a topic instance, plus the
    detail, stance, and question the user attached to it."""

    topic: Topic
    instance: str
    property: str
    content: Optional[str] = None
    attitude: Optional[UserAttitude] = None
    question: Optional[str] = None

    def key(self) -> tuple[str, str, str]:
        return (self.topic.value, normalize(self.instance), normalize(self.property))

    def to_dict(self) -> dict:
        return {
            "topic": self.topic.value,
            "instance": self.instance,
            "property": self.property,
            "content": self.content,
            "attitude": self.attitude.value if self.attitude else None,
            "question": self.question,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Theme":
        return cls(
            topic=Topic(d["topic"]),
            instance=d["instance"],
            property=d["property"],
            content=d.get("content"),
            attitude=UserAttitude(d["attitude"]) if d.get("attitude") else None,
            question=d.get("question"),
        )


@dataclass(frozen=True)
class Preference:
    """A standing user taste used for recommendations."""

    topic: Topic
    property: str
    value: str

    def __post_init__(self):
        prop = normalize(self.property)
        prop = _PREFERENCE_ALIASES.get(prop, prop)
        if prop not in PREFERENCE_PROPERTIES:
            raise UnknownPreferenceProperty(self.property)
        object.__setattr__(self, "property", prop)

    def to_dict(self) -> dict:
        return {"topic": self.topic.value, "property": self.property, "value": self.value}

    @classmethod
    def from_dict(cls, d: dict) -> "Preference":
        return cls(Topic(d["topic"]), d["property"], d["value"])


@dataclass(frozen=True)
class ParseResult:
    """Everything extracted from one user turn."""

    themes: tuple[Theme, ...] = ()
    preferences: tuple[Preference, ...] = ()
    quit: bool = False
    irrelevant: bool = False

    def __post_init__(self):
        if self.irrelevant and self.themes:
            # irrelevant is only meaningful when nothing was extracted
            object.__setattr__(self, "irrelevant", False)

    def to_dict(self) -> dict:
        return {
            "themes": [t.to_dict() for t in self.themes],
            "preferences": [p.to_dict() for p in self.preferences],
            "quit": self.quit,
            "irrelevant": self.irrelevant,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ParseResult":
        return cls(
            themes=tuple(Theme.from_dict(t) for t in d["themes"]),
            preferences=tuple(Preference.from_dict(p) for p in d["preferences"]),
            quit=d["quit"],
            irrelevant=d["irrelevant"],
        )


Attitude = Union[UserAttitude, BotAttitude]


@dataclass(frozen=True)
class HistoryEntry:
    """One discussed (round, topic, instance, property) row, from either side."""

    round: int
    topic: Topic
    instance: str
    property: str
    attitude: Optional[Attitude]
    origin: Origin

    def key(self) -> tuple[str, str, str]:
        return (self.topic.value, normalize(self.instance), normalize(self.property))

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "topic": self.topic.value,
            "instance": self.instance,
            "property": self.property,
            "attitude": self.attitude.value if self.attitude else None,
            "origin": self.origin.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HistoryEntry":
        origin = Origin(d["origin"])
        attitude: Optional[Attitude] = None
        if d.get("attitude"):
            attitude = (
                UserAttitude(d["attitude"]) if origin is Origin.user else BotAttitude(d["attitude"])
            )
        return cls(d["round"], Topic(d["topic"]), d["instance"], d["property"], attitude, origin)


@dataclass(frozen=True)
class RccCandidate:
    """A related topic instance plus the verifiable relation justifying it."""

    index: int
    topic: Topic
    instance: str
    source_instance: str
    relation: str

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "topic": self.topic.value,
            "instance": self.instance,
            "source_instance": self.source_instance,
            "relation": self.relation,
        }


@dataclass(frozen=True)
class Answer:
    """Reply to one user question; a missing value means "I don't know"."""

    topic: Topic
    instance: str
    property: str
    value: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "topic": self.topic.value,
            "instance": self.instance,
            "property": self.property,
            "value": self.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Answer":
        return cls(Topic(d["topic"]), d["instance"], d["property"], d.get("value"))


@dataclass(frozen=True)
class ReplyTheme:
    """What the bot will talk about next.

    For general/irrelevant modes: a theme plus the bot's attitude, and the
    source/relation pair when the topic switched through a related concept.
    For recommend mode: the catalog item and the preferences it matched.
    prompt_attitude is the polarity fed to content generation (differs from
    attitude only for acknowledge, which carries the user-aligned stance).
    """

    theme: Optional[Theme] = None
    attitude: Optional[BotAttitude] = None
    source: Optional[str] = None
    relation: Optional[str] = None
    item: Optional[dict] = None
    matched: tuple[Preference, ...] = ()
    prompt_attitude: Optional[BotAttitude] = None

    def to_dict(self) -> dict:
        return {
            "theme": self.theme.to_dict() if self.theme else None,
            "attitude": self.attitude.value if self.attitude else None,
            "source": self.source,
            "relation": self.relation,
            "item": self.item,
            "matched": [p.to_dict() for p in self.matched],
            "prompt_attitude": self.prompt_attitude.value if self.prompt_attitude else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReplyTheme":
        return cls(
            theme=Theme.from_dict(d["theme"]) if d.get("theme") else None,
            attitude=BotAttitude(d["attitude"]) if d.get("attitude") else None,
            source=d.get("source"),
            relation=d.get("relation"),
            item=d.get("item"),
            matched=tuple(Preference.from_dict(p) for p in d.get("matched", [])),
            prompt_attitude=(
                BotAttitude(d["prompt_attitude"]) if d.get("prompt_attitude") else None
            ),
        )


@dataclass(frozen=True)
class ReasonerOutput:
    """Mode, question answers, and the next reply theme."""

    mode: Mode
    answers: tuple[Answer, ...] = ()
    reply_theme: Optional[ReplyTheme] = None

    def __post_init__(self):
        if self.mode in (Mode.general, Mode.irrelevant):
            if self.reply_theme is None or self.reply_theme.theme is None:
                raise ModelError(f"mode={self.mode.value} requires a reply theme")
        if self.mode is Mode.recommend and (
            self.reply_theme is None or self.reply_theme.item is None
        ):
            raise ModelError("mode=recommend requires a catalog item")
        if self.mode is Mode.quit and self.reply_theme is not None:
            raise ModelError("mode=quit carries no reply theme")

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "answers": [a.to_dict() for a in self.answers],
            "reply_theme": self.reply_theme.to_dict() if self.reply_theme else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReasonerOutput":
        return cls(
            mode=Mode(d["mode"]),
            answers=tuple(Answer.from_dict(a) for a in d["answers"]),
            reply_theme=ReplyTheme.from_dict(d["reply_theme"]) if d.get("reply_theme") else None,
        )


@dataclass(frozen=True)
class DecisionFlags:
    """Per-step random decisions, drawn from the session RNG."""

    continue_topic: bool
    continue_attr: bool
    attitude_draw: BotAttitude


class PropertyCatalog:
    """Closed per-topic list of discussable properties.

    Loaded from a config file with one `[topic]` section per topic, one
    property per line, and `#` comments. The packaged default covers the
    shipped knowledge-base fields plus the free-chat properties.
    """

    def __init__(self, properties: dict[Topic, list[str]]):
        self._properties = {t: list(props) for t, props in properties.items()}
        self._keys = {
            t: {normalize(p): p for p in props} for t, props in self._properties.items()
        }

    def properties(self, topic: Topic) -> list[str]:
        return list(self._properties.get(topic, []))

    def canonical(self, topic: Topic, prop: str) -> Optional[str]:
        """Catalog spelling of `prop` for `topic`, or None if unlisted."""
        return self._keys.get(topic, {}).get(normalize(prop))

    def normalized_keys(self, topic: Topic):
        return self._keys.get(topic, {}).keys()

    def __contains__(self, item: tuple[Topic, str]) -> bool:
        topic, prop = item
        return self.canonical(topic, prop) is not None

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PropertyCatalog":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def parse(cls, text: str) -> "PropertyCatalog":
        properties: dict[Topic, list[str]] = {}
        current: Optional[Topic] = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                current = Topic.parse(line[1:-1])
                properties.setdefault(current, [])
            elif current is None:
                raise ModelError(f"property line before any [topic] section: {raw!r}")
            else:
                if line not in properties[current]:
                    properties[current].append(line)
        return cls(properties)

    @classmethod
    def default(cls) -> "PropertyCatalog":
        text = (
            resources.files("socialbot").joinpath("assets/properties.conf").read_text("utf-8")
        )
        return cls.parse(text)


def validate_theme(theme: Theme, catalog: PropertyCatalog) -> Theme:
    """Return the theme unchanged if its property is catalog-listed."""
    if catalog.canonical(theme.topic, theme.property) is None:
        raise UnknownProperty(theme.topic, theme.property)
    return theme
