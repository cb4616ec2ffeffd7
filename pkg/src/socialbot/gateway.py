"""The only boundary to external LLM providers.

Two providers implement the same `complete` contract: an HTTP
chat-completion client and a fixture provider that serves canned responses
keyed by (purpose, prompt digest) from a directory, erroring on a missing
key so offline runs never fabricate text. No other module performs network
communication.
"""

from __future__ import annotations

import enum
import hashlib
import logging
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Protocol, Union

from socialbot.kb import ExtraRccRule, KnowledgeBase
from socialbot.model import Topic

log = logging.getLogger(__name__)

API_KEY_ENV = "SOCIALBOT_API_KEY"

MAX_ATTEMPTS = 3
BACKOFF_SECONDS = 0.5
DEFAULT_DEADLINE = 30.0


class Purpose(enum.Enum):
    parse = "parse"
    content = "content"
    modifier = "modifier"
    name_correct = "name_correct"
    extra_rules = "extra_rules"


#: Sampling defaults per purpose; parse is pinned to 0 (extraction should be
#: as deterministic as the provider allows).
DEFAULT_TEMPERATURE = {
    Purpose.parse: 0.0,
    Purpose.content: 0.8,
    Purpose.modifier: 0.7,
    Purpose.name_correct: 0.0,
    Purpose.extra_rules: 0.2,
}


class GatewayError(Exception):
    """Base for gateway failures. May carry `fallback_text` when raised
    from reply assembly."""

    fallback_text: Optional[str] = None


class GatewayTimeout(GatewayError):
    pass


class ProviderError(GatewayError):
    def __init__(self, status: int, detail: str = ""):
        super().__init__(f"provider returned status {status}{': ' + detail if detail else ''}")
        self.status = status


class MissingFixture(GatewayError):
    def __init__(self, purpose: "Purpose", digest: str):
        super().__init__(f"no fixture for purpose={purpose.value} digest={digest}")
        self.purpose = purpose
        self.digest = digest


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    purpose: Purpose
    max_tokens: int = 512
    temperature: Optional[float] = None

    def resolved_temperature(self) -> float:
        if self.purpose is Purpose.parse:
            return 0.0
        if self.temperature is None:
            return DEFAULT_TEMPERATURE[self.purpose]
        return self.temperature


def fixture_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()[:16]


class Provider(Protocol):
    def complete(self, request: CompletionRequest) -> str: ...


class FixtureProvider:
    """Serves canned completions from `<dir>/<purpose>/<digest>.txt`."""

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)

    def _path(self, purpose: Purpose, digest: str) -> Path:
        return self.directory / purpose.value / f"{digest}.txt"

    def complete(self, request: CompletionRequest) -> str:
        digest = fixture_digest(request.prompt)
        path = self._path(request.purpose, digest)
        if not path.exists():
            raise MissingFixture(request.purpose, digest)
        return path.read_text(encoding="utf-8")

    def record(self, purpose: Purpose, prompt: str, response: str) -> str:
        """Store a canned response; returns the digest it is keyed under."""
        digest = fixture_digest(prompt)
        path = self._path(purpose, digest)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(response, encoding="utf-8")
        return digest


class HttpProvider:
    """Chat-completion style HTTP client. Credentials come only from the
    environment; a process-wide per-provider lock spaces out requests."""

    _locks: dict[str, threading.Lock] = {}
    _locks_guard = threading.Lock()

    def __init__(
        self,
        base_url: str,
        model: str,
        timeout: float = 20.0,
        min_interval: float = 0.0,
    ):
        self.base_url = base_url
        self.model = model
        self.timeout = timeout
        self.min_interval = min_interval
        self._last_request = 0.0
        with HttpProvider._locks_guard:
            self._lock = HttpProvider._locks.setdefault(base_url, threading.Lock())

    def complete(self, request: CompletionRequest) -> str:
        import httpx

        headers = {}
        api_key = os.environ.get(API_KEY_ENV)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.resolved_temperature(),
            "max_tokens": request.max_tokens,
        }
        with self._lock:
            wait = self.min_interval - (time.monotonic() - self._last_request)
            if wait > 0:
                time.sleep(wait)
            self._last_request = time.monotonic()
        try:
            response = httpx.post(
                self.base_url, json=payload, headers=headers, timeout=self.timeout
            )
        except httpx.TimeoutException as exc:
            raise GatewayTimeout(str(exc)) from exc
        except httpx.HTTPError as exc:
            raise ProviderError(0, str(exc)) from exc
        if response.status_code != 200:
            raise ProviderError(response.status_code, response.text[:200])
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise ProviderError(200, f"malformed completion payload: {exc}") from exc


class Gateway:
    """Retry/timeout wrapper around a provider.

    At most MAX_ATTEMPTS attempts with exponential backoff, the whole call
    bounded by `deadline` seconds. Missing fixtures are never retried.
    """

    def __init__(
        self,
        provider: Provider,
        deadline: float = DEFAULT_DEADLINE,
        sleep: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.provider = provider
        self.deadline = deadline
        self._sleep = sleep
        self._clock = clock

    def complete(self, request: CompletionRequest) -> str:
        start = self._clock()
        last_error: Optional[GatewayError] = None
        for attempt in range(MAX_ATTEMPTS):
            try:
                return self.provider.complete(request)
            except MissingFixture:
                raise
            except GatewayError as exc:
                last_error = exc
                log.warning("gateway attempt %d failed: %s", attempt + 1, exc)
                pause = BACKOFF_SECONDS * (2**attempt)
                if self._clock() - start + pause > self.deadline:
                    break
                if attempt + 1 < MAX_ATTEMPTS:
                    self._sleep(pause)
        assert last_error is not None
        raise last_error


_EXTRA_RULES_EXAMPLES = (
    "The Dark Knight Rises | Batman sacrifices himself to save Gotham City, "
    "taking the blame for Harvey Dent's crimes and going into hiding.\n"
    "The Hunger Games: Mockingjay - Part 2 | Finnick sacrifices himself to "
    "allow Katniss and others to escape from mutts during the assault on the "
    "Capitol."
)

_HEADER_WORDS = {"movie name", "book name", "person name", "title", "similar content"}


def build_extra_rules_prompt(
    topic: Topic, instance: str, prop: str, content: str, kb: KnowledgeBase
) -> str:
    titles = "; ".join(kb.instance_names(topic))
    return (
        f"In the {topic.value} {instance}, {content}. Is there any other "
        f"{topic.value} that contains a similar {prop}?\n"
        f"Choose only from this list of {topic.value} titles:\n{titles}\n"
        f"Answer with one line per {topic.value}, formatted exactly like "
        f"these examples:\n{_EXTRA_RULES_EXAMPLES}"
    )


def generate_extra_rules(
    topic: Topic,
    instance: str,
    prop: str,
    content: str,
    kb: KnowledgeBase,
    gateway: Gateway,
) -> list[ExtraRccRule]:
    """Ask the provider for instances with a similar property detail and
    parse the tabular completion; rows whose title cannot be resolved
    against the KB are dropped with a warning."""
    from socialbot.predparse import correct_name

    prompt = build_extra_rules_prompt(topic, instance, prop, content, kb)
    completion = gateway.complete(
        CompletionRequest(prompt=prompt, purpose=Purpose.extra_rules, max_tokens=400)
    )
    rules = []
    for line in completion.splitlines():
        if "|" not in line:
            continue
        title, _, similar = line.partition("|")
        title, similar = title.strip(), similar.strip().rstrip(".")
        if not title or not similar or title.casefold() in _HEADER_WORDS:
            continue
        canonical, matched = correct_name(title, topic, kb)
        if not matched:
            log.warning("extra-rule row dropped, unresolvable title %r", title)
            continue
        rules.append(
            ExtraRccRule(
                source_instance=instance,
                target_instance=canonical,
                target_topic=topic,
                shared_property=prop,
                relation_text=f"it has a similar {prop}: {similar}",
            )
        )
    return rules
