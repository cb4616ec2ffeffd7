"""Reply rendering: fixed templates plus LLM content generation.

The deterministic skeleton of every reply comes from bit-exact templates
(cohesion, answers, recommendation, the irrelevant preamble, the farewell).
Free-form color for the reply theme is delegated to the gateway in online
mode and replaced by a stable placeholder offline, so offline assembly is a
pure function of the ReasonerOutput.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from socialbot.gateway import CompletionRequest, Gateway, GatewayError, Purpose
from socialbot.model import Answer, BotAttitude, Mode, Preference, ReasonerOutput, Topic

log = logging.getLogger(__name__)

FAREWELL = (
    "Sure thing! I had a great time talking about movies and books with you. "
    "See you next time!"
)

OPPOSE_MARKER = "[OPPOSE]"

#: Context handed to the language modifier is capped to keep prompts bounded.
MODIFIER_CONTEXT_BUDGET = 2000


class MissingField(Exception):
    def __init__(self, name: str):
        super().__init__(f"template field {name!r} must be nonempty")
        self.name = name


@dataclass(frozen=True)
class ReplyPlan:
    """Deterministic sentences plus the optional content prompt."""

    template_sentences: tuple[str, ...]
    content_prompt: Optional[str] = None
    modifier_enabled: bool = True


@dataclass(frozen=True)
class AssembledReply:
    text: str
    attitude_flipped: bool = False


def _asset(name: str) -> str:
    return resources.files("socialbot").joinpath(f"assets/prompts/{name}").read_text("utf-8")


def build_content_prompt(
    topic: Topic, instance: str, prop: str, attitude: BotAttitude
) -> str:
    """Content-generation prompt: role/tone preamble, examples, question."""
    if attitude not in (BotAttitude.positive, BotAttitude.negative, BotAttitude.ask):
        raise MissingField("attitude")
    preamble = _asset("content_preamble.txt").rstrip("\n")
    examples = _asset("content_examples.txt").rstrip("\n")
    question = f"What are the most interesting {prop} for {instance}? {attitude.value} ->"
    return f"{preamble}\n\n{examples}\n\n{question}"


def build_cohesive_sentence(
    source_instance: str, next_topic: Topic, next_instance: str, relation: str
) -> str:
    for name, value in (
        ("source_instance", source_instance),
        ("next_instance", next_instance),
        ("relation", relation),
    ):
        if not value or not value.strip():
            raise MissingField(name)
    return (
        f"Because you mentioned {source_instance}, it makes me think of the "
        f"{next_topic.value} {next_instance}, since {relation}."
    )


def build_answer_sentence(answer: Answer) -> str:
    if answer.value is not None:
        return (
            f"I remembered that the {answer.property} of the {answer.topic.value} "
            f"{answer.instance} is {answer.value.strip()}."
        )
    return (
        f"Sorry I could not remember the {answer.property} of the "
        f"{answer.topic.value} {answer.instance}."
    )


def build_recommend_sentence(item: dict, source: str) -> str:
    if not source or not source.strip():
        raise MissingField("source")
    return (
        f"Do you know the recent {item['topic']} named {item['title']}? "
        f"Since you like {source}, so you should like it."
    )


def irrelevant_preamble(topic: Topic, instance: str) -> str:
    return (
        "I cannot catch up with you now. Let's go back and talk about the "
        f"{topic.value} {instance}."
    )


def placeholder_content(prop: str, instance: str) -> str:
    return f"Let's talk about the {prop} of {instance}."


_PLURAL = {Topic.movie: "movies", Topic.book: "books", Topic.person: "people"}


def preference_phrase(matched: tuple[Preference, ...], topic: Topic) -> str:
    """Human-readable reason a catalog item matched ("crime movies and ...")."""
    plural = _PLURAL[topic]
    phrases = []
    for pref in matched:
        if pref.property == "genre":
            phrases.append(f"{pref.value} {plural}")
        elif pref.property == "actor":
            phrases.append(f"{plural} with {pref.value}")
        elif pref.property == "director":
            phrases.append(f"{plural} directed by {pref.value}")
        elif pref.property == "writer":
            phrases.append(f"{plural} written by {pref.value}")
        elif pref.property == "language":
            phrases.append(f"{pref.value}-language {plural}")
        elif pref.property == "countries":
            phrases.append(f"{plural} from {pref.value}")
        elif pref.property == "rating":
            phrases.append(f"highly rated {plural}")
        else:
            phrases.append(f"popular {plural}")
    return " and ".join(dict.fromkeys(phrases))


def build_reply_plan(output: ReasonerOutput) -> ReplyPlan:
    """Turn a ReasonerOutput into ordered template sentences + content prompt."""
    if output.mode is Mode.quit:
        return ReplyPlan(template_sentences=(FAREWELL,), modifier_enabled=False)

    sentences: list[str] = []
    reply = output.reply_theme

    if output.mode is Mode.irrelevant:
        sentences.append(irrelevant_preamble(reply.theme.topic, reply.theme.instance))

    sentences.extend(build_answer_sentence(a) for a in output.answers)

    if output.mode is Mode.recommend:
        topic = Topic(reply.item["topic"])
        source = preference_phrase(reply.matched, topic)
        sentences.append(build_recommend_sentence(reply.item, source))
        return ReplyPlan(template_sentences=tuple(sentences))

    if reply.source and reply.relation:
        sentences.append(
            build_cohesive_sentence(
                reply.source, reply.theme.topic, reply.theme.instance, reply.relation
            )
        )

    prompt_attitude = reply.prompt_attitude or reply.attitude
    if prompt_attitude is BotAttitude.acknowledge:
        prompt_attitude = BotAttitude.positive
    content_prompt = build_content_prompt(
        reply.theme.topic, reply.theme.instance, reply.theme.property, prompt_attitude
    )
    return ReplyPlan(template_sentences=tuple(sentences), content_prompt=content_prompt)


def _offline_text(output: ReasonerOutput, plan: ReplyPlan) -> str:
    parts = list(plan.template_sentences)
    if plan.content_prompt is not None:
        theme = output.reply_theme.theme
        parts.append(placeholder_content(theme.property, theme.instance))
    return " ".join(parts)


def build_modifier_prompt(reply: str, context: str) -> str:
    instruction = _asset("modifier.txt").rstrip("\n")
    context = context.strip()[-MODIFIER_CONTEXT_BUDGET:]
    parts = [instruction]
    if context:
        parts.append(f"Recent conversation:\n{context}")
    parts.append(f"Reply to rewrite:\n{reply}")
    return "\n\n".join(parts)


def assemble_reply(
    output: ReasonerOutput,
    offline: bool,
    gateway: Optional[Gateway] = None,
    context: str = "",
) -> AssembledReply:
    """Final reply text.

    Offline: the deterministic concatenation (template sentences plus the
    stable placeholder for the content block). Online: the content prompt
    goes through the gateway, an [OPPOSE] marker in the completion flips the
    reported attitude, and the whole reply passes the language modifier.
    Gateway failures raise GatewayError with `fallback_text` attached.
    """
    plan = build_reply_plan(output)
    fallback = _offline_text(output, plan)
    if offline or (plan.content_prompt is None and not plan.modifier_enabled):
        return AssembledReply(text=fallback)
    if gateway is None:
        return AssembledReply(text=fallback)

    flipped = False
    parts = list(plan.template_sentences)
    try:
        if plan.content_prompt is not None:
            content = gateway.complete(
                CompletionRequest(prompt=plan.content_prompt, purpose=Purpose.content)
            ).strip()
            if content.startswith(OPPOSE_MARKER):
                content = content[len(OPPOSE_MARKER) :].strip()
                flipped = True
            parts.append(content)
        text = " ".join(parts)
        if plan.modifier_enabled:
            text = gateway.complete(
                CompletionRequest(
                    prompt=build_modifier_prompt(text, context), purpose=Purpose.modifier
                )
            ).strip()
        return AssembledReply(text=text, attitude_flipped=flipped)
    except GatewayError as exc:
        exc.fallback_text = fallback
        raise
