"""Parsing of the predicate text emitted by the LLM extraction stage.

The grammar is small: period-terminated terms `functor(arg, ...)` with
single-quoted (`''` escapes a quote) or bare arguments, theme blocks
separated by `###`. Known functors and arities:

    talk/3  content/2  attitude/1  question/1  prefer/3  quit/0  irrelevant/0

Within a block, every `talk` opens a new theme; content/attitude/question
terms attach to the nearest preceding talk. `prefer` terms may sit in any
block and are hoisted into ParseResult.preferences.

This module also builds the extraction prompt and canonicalizes instance
names by fuzzy matching against the knowledge base.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from typing import TYPE_CHECKING, Optional

from socialbot import textmatch
from socialbot.model import (
    ParseResult,
    Preference,
    PropertyCatalog,
    Theme,
    Topic,
    UnknownPreferenceProperty,
    UnknownProperty,
    UnknownTopic,
    UserAttitude,
    validate_theme,
)

if TYPE_CHECKING:
    from socialbot.kb import KnowledgeBase

log = logging.getLogger(__name__)

#: Similarity floor below which a name is left uncorrected.
NAME_SIMILARITY_THRESHOLD = 0.72

ARITIES = {
    "talk": 3,
    "content": 2,
    "attitude": 1,
    "question": 1,
    "prefer": 3,
    "quit": 0,
    "irrelevant": 0,
}


class ParseError(Exception):
    """Base for all predicate-text parse failures."""


class PredicateSyntaxError(ParseError):
    def __init__(self, offset: int, expected: str):
        super().__init__(f"at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


class ArityError(ParseError):
    def __init__(self, functor: str, got: int):
        super().__init__(f"{functor} takes {ARITIES[functor]} arguments, got {got}")
        self.functor = functor
        self.got = got


class UnknownFunctor(ParseError):
    def __init__(self, name: str):
        super().__init__(f"unknown functor: {name!r}")
        self.name = name


@dataclass(frozen=True)
class PredicateTerm:
    functor: str
    args: tuple[str, ...]


_BLOCK_SEP = "###"


class _Scanner:
    """Single-pass, quote-aware scanner over the raw predicate text."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def at_separator(self) -> bool:
        self.skip_ws()
        return self.text.startswith(_BLOCK_SEP, self.pos)

    def eat_separator(self) -> None:
        self.pos += len(_BLOCK_SEP)

    def functor(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise PredicateSyntaxError(start, "a functor name")
        return self.text[start : self.pos]

    def quoted(self) -> str:
        # opening quote already seen
        assert self.text[self.pos] == "'"
        self.pos += 1
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise PredicateSyntaxError(self.pos, "a closing quote")
            ch = self.text[self.pos]
            if ch == "'":
                if self.text.startswith("''", self.pos):
                    out.append("'")
                    self.pos += 2
                    continue
                self.pos += 1
                return "".join(out)
            out.append(ch)
            self.pos += 1

    def bare(self) -> str:
        # A quote only opens a quoted argument at the start; mid-atom
        # apostrophes (Don't Look Up) are literal.
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)(":
            self.pos += 1
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            raise PredicateSyntaxError(self.pos, "',' or ')' (nested terms are not allowed)")
        return self.text[start : self.pos].strip()

    def args(self) -> tuple[str, ...]:
        # called right after '('
        out: list[str] = []
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                raise PredicateSyntaxError(self.pos, "an argument or ')'")
            if self.text[self.pos] == ")":
                self.pos += 1
                return tuple(out)
            if out:
                if self.text[self.pos] != ",":
                    raise PredicateSyntaxError(self.pos, "',' or ')'")
                self.pos += 1
                self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "'":
                out.append(self.quoted())
            else:
                out.append(self.bare())

    def term(self) -> PredicateTerm:
        name = self.functor()
        self.skip_ws()
        args: tuple[str, ...] = ()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            self.pos += 1
            args = self.args()
            self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ".":
            raise PredicateSyntaxError(self.pos, "'.' terminating the term")
        self.pos += 1
        if name not in ARITIES:
            raise UnknownFunctor(name)
        if len(args) != ARITIES[name]:
            raise ArityError(name, len(args))
        return PredicateTerm(name, args)


def _scan_blocks(raw: str) -> list[list[PredicateTerm]]:
    scanner = _Scanner(raw)
    blocks: list[list[PredicateTerm]] = [[]]
    while not scanner.at_end():
        if scanner.at_separator():
            scanner.eat_separator()
            blocks.append([])
            continue
        blocks[-1].append(scanner.term())
    return blocks


class _ThemeBuilder:
    def __init__(self, topic: Topic, instance: str, prop: str):
        self.topic = topic
        self.instance = instance
        self.property = prop
        self.content: Optional[str] = None
        self.attitude: Optional[UserAttitude] = None
        self.question: Optional[str] = None

    def build(self) -> Theme:
        return Theme(
            self.topic, self.instance, self.property, self.content, self.attitude, self.question
        )


def parse_predicate_text(raw: str) -> ParseResult:
    """Parse one extraction-stage output into a ParseResult.

    Structural problems (bad syntax, wrong arity, unknown functor) raise
    typed errors. Semantic problems in otherwise well-formed terms (unknown
    topic or attitude atoms, unmatchable preference properties, dangling
    content/attitude terms) drop the offending piece with a logged warning,
    because the extractor copies user mistakes as they are.
    """
    blocks = _scan_blocks(raw)
    themes: list[Theme] = []
    preferences: list[Preference] = []
    quit_flag = False
    irrelevant_flag = False

    for block in blocks:
        builder: Optional[_ThemeBuilder] = None
        for term in block:
            if term.functor == "quit":
                quit_flag = True
            elif term.functor == "irrelevant":
                irrelevant_flag = True
            elif term.functor == "prefer":
                try:
                    preferences.append(
                        Preference(Topic.parse(term.args[0]), term.args[1], term.args[2])
                    )
                except (UnknownTopic, UnknownPreferenceProperty) as exc:
                    log.warning("dropped preference %s: %s", term, exc)
            elif term.functor == "talk":
                if builder is not None:
                    themes.append(builder.build())
                try:
                    builder = _ThemeBuilder(Topic.parse(term.args[0]), term.args[1], term.args[2])
                except UnknownTopic as exc:
                    log.warning("dropped theme %s: %s", term, exc)
                    builder = None
            elif builder is None:
                log.warning("dropped %s: no preceding talk term", term)
            elif term.functor == "content":
                if builder.content is None:
                    builder.content = term.args[1]
            elif term.functor == "attitude":
                try:
                    att = UserAttitude(term.args[0].strip().casefold())
                except ValueError:
                    log.warning("dropped attitude atom %r", term.args[0])
                else:
                    if builder.attitude is None:
                        builder.attitude = att
            elif term.functor == "question":
                if builder.question is None:
                    builder.question = term.args[0]
        if builder is not None:
            themes.append(builder.build())

    if not themes and not preferences and not quit_flag:
        irrelevant_flag = True
    return ParseResult(
        themes=tuple(themes),
        preferences=tuple(preferences),
        quit=quit_flag,
        irrelevant=irrelevant_flag,
    )


def _render_arg(value: str) -> str:
    """Quote an argument when bare syntax could not reproduce it."""
    needs_quotes = (
        value == ""
        or value != value.strip()
        or value.startswith("'")
        or any(ch in value for ch in ",()")
    )
    if needs_quotes:
        return "'" + value.replace("'", "''") + "'"
    return value


def render_term(functor: str, *args: str) -> str:
    if not args:
        return f"{functor}."
    return f"{functor}({', '.join(_render_arg(a) for a in args)})."


def render_parse_result(result: ParseResult) -> str:
    """Predicate text that parses back to a structurally equal ParseResult."""
    blocks: list[str] = []
    for theme in result.themes:
        terms = [render_term("talk", theme.topic.value, theme.instance, theme.property)]
        if theme.content is not None:
            terms.append(render_term("content", theme.property, theme.content))
        if theme.attitude is not None:
            terms.append(render_term("attitude", theme.attitude.value))
        if theme.question is not None:
            terms.append(render_term("question", theme.question))
        blocks.append(" ".join(terms))
    for pref in result.preferences:
        blocks.append(render_term("prefer", pref.topic.value, pref.property, pref.value))
    if result.quit:
        blocks.append("quit.")
    if result.irrelevant:
        blocks.append("irrelevant.")
    return " ### ".join(blocks)


def _prompt_asset(name: str) -> str:
    return resources.files("socialbot").joinpath(f"assets/prompts/{name}").read_text("utf-8")


def _parse_examples(text: str) -> list[tuple[str, str]]:
    """Read the alternating `Sentence:` / `Predicates:` example file."""
    pairs: list[tuple[str, str]] = []
    sentence: Optional[str] = None
    for line in text.splitlines():
        if line.startswith("Sentence:"):
            sentence = line[len("Sentence:") :].strip()
        elif line.startswith("Predicates:"):
            if sentence is None:
                raise ValueError("Predicates: block without a preceding Sentence:")
            pairs.append((sentence, line[len("Predicates:") :].strip()))
            sentence = None
    return pairs


def build_parse_prompt(user_text: str, context: str = "") -> str:
    """Extraction prompt: instruction header, predicate schema, few-shot
    examples, then the input sentence. Byte-stable for fixed inputs."""
    header = _prompt_asset("parse_header.txt").rstrip("\n")
    examples = _parse_examples(_prompt_asset("parse_examples.txt"))
    parts = [header, "", "Examples:"]
    parts.extend(f"{sentence} -> {preds}" for sentence, preds in examples)
    parts.append("")
    if context.strip():
        parts.append("Recent conversation:")
        parts.append(context.strip())
        parts.append("")
    parts.append("Input sentence ->")
    parts.append(f"{user_text} ->")
    return "\n".join(parts)


def correct_name(
    raw: str,
    topic: Topic,
    kb: "KnowledgeBase",
    threshold: float = NAME_SIMILARITY_THRESHOLD,
) -> tuple[str, bool]:
    """Canonical KB spelling of `raw` for `topic`, or `raw` itself.

    Deterministic: the best-similarity instance wins, ties broken by
    popularity then lexicographically. Below `threshold` the raw name is
    returned unmatched (the instance may simply be outside the KB).
    """
    exact = kb.find_instance(topic, raw)
    if exact is not None:
        return exact, True
    cand, score = textmatch.best_match(
        raw, kb.instance_names(topic), popularity=lambda name: kb.popularity(topic, name)
    )
    if cand is not None and score >= threshold:
        return cand, True
    return raw, False


def canonicalize_result(
    parsed: ParseResult,
    kb: "KnowledgeBase",
    catalog: PropertyCatalog,
    threshold: float = NAME_SIMILARITY_THRESHOLD,
) -> ParseResult:
    """Name-correct every theme and drop the ones that fail validation."""
    themes: list[Theme] = []
    for theme in parsed.themes:
        prop = catalog.canonical(theme.topic, theme.property)
        if prop is None:
            log.warning(
                "dropped theme on %r: %s", theme.instance, UnknownProperty(theme.topic, theme.property)
            )
            continue
        name, _ = correct_name(theme.instance, theme.topic, kb, threshold)
        if not name.strip():
            log.warning("dropped theme with empty instance name")
            continue
        themes.append(
            validate_theme(
                Theme(theme.topic, name, prop, theme.content, theme.attitude, theme.question),
                catalog,
            )
        )
    return ParseResult(
        themes=tuple(themes),
        preferences=parsed.preferences,
        quit=parsed.quit,
        irrelevant=parsed.irrelevant or (bool(parsed.themes) and not themes and not parsed.preferences),
    )
