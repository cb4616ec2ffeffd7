import json
import threading

import pytest

from socialbot import gateway as gw
from socialbot.gateway import (
    CompletionRequest,
    FixtureProvider,
    Gateway,
    GatewayTimeout,
    MissingFixture,
    ProviderError,
    Purpose,
    build_extra_rules_prompt,
    fixture_digest,
    generate_extra_rules,
)
from socialbot.model import Topic
from socialbot.predparse import build_parse_prompt

ROUND1_TEXT = (
    "Me too! I just saw Inception. It is a great idea to take action on one's "
    "dream! Dreams in the dreams! What a fabulous idea!"
)
ROUND1_PREDICATES = (
    "talk(movie, Inception, plot episode). "
    "content(plot episode, actions in dreams). attitude(positive)."
)

TABLE_COMPLETION = (
    "Movie Name | Similar Content\n"
    "The Dark Knight Rises | Batman sacrifices himself to save Gotham City, "
    "taking the blame for Harvey Dent's crimes and going into hiding.\n"
    "The Hunger Games: Mockingjay - Part 2 | Finnick sacrifices himself to "
    "allow Katniss and others to escape from mutts during the assault on the "
    "Capitol."
)


class TestCompletionRequest:
    def test_parse_temperature_pinned_to_zero(self):
        request = CompletionRequest(prompt="x", purpose=Purpose.parse, temperature=0.9)
        assert request.resolved_temperature() == 0.0

    def test_purpose_defaults(self):
        assert CompletionRequest("x", Purpose.content).resolved_temperature() == 0.8
        assert CompletionRequest("x", Purpose.content, temperature=0.1).resolved_temperature() == 0.1


class TestFixtureProvider:
    def test_round1_prompt_fixture(self, tmp_path):
        provider = FixtureProvider(tmp_path)
        prompt = build_parse_prompt(ROUND1_TEXT, "")
        digest = provider.record(Purpose.parse, prompt, ROUND1_PREDICATES)
        assert digest == fixture_digest(prompt)
        assert provider.complete(
            CompletionRequest(prompt=prompt, purpose=Purpose.parse)
        ) == ROUND1_PREDICATES

    def test_missing_fixture_raises(self, tmp_path):
        provider = FixtureProvider(tmp_path)
        with pytest.raises(MissingFixture) as exc:
            provider.complete(CompletionRequest(prompt="nope", purpose=Purpose.parse))
        assert exc.value.digest == fixture_digest("nope")

    def test_keying_is_content_sensitive(self, tmp_path):
        provider = FixtureProvider(tmp_path)
        provider.record(Purpose.parse, "prompt A", "resp")
        with pytest.raises(MissingFixture):
            provider.complete(CompletionRequest(prompt="prompt A!", purpose=Purpose.parse))


class _FlakyProvider:
    def __init__(self, failures, error=None):
        self.failures = failures
        self.calls = 0
        self.error = error or ProviderError(429)

    def complete(self, request):
        self.calls += 1
        if self.calls <= self.failures:
            raise self.error
        return "ok"


class TestRetryPolicy:
    def test_succeeds_after_retries(self):
        sleeps = []
        provider = _FlakyProvider(failures=2)
        gateway = Gateway(provider, sleep=sleeps.append)
        assert gateway.complete(CompletionRequest("p", Purpose.content)) == "ok"
        assert provider.calls == 3
        assert sleeps == [0.5, 1.0]  # exponential backoff

    def test_gives_up_after_three_attempts(self):
        provider = _FlakyProvider(failures=10)
        gateway = Gateway(provider, sleep=lambda _s: None)
        with pytest.raises(ProviderError) as exc:
            gateway.complete(CompletionRequest("p", Purpose.content))
        assert exc.value.status == 429
        assert provider.calls == 3

    def test_deadline_bounds_total_time(self):
        provider = _FlakyProvider(failures=10, error=GatewayTimeout("slow"))
        clock = {"now": 0.0}

        def fake_sleep(seconds):
            clock["now"] += seconds

        gateway = Gateway(
            provider, deadline=0.4, sleep=fake_sleep, clock=lambda: clock["now"]
        )
        with pytest.raises(GatewayTimeout):
            gateway.complete(CompletionRequest("p", Purpose.content))
        assert provider.calls == 1  # first backoff already exceeds the deadline

    def test_missing_fixture_not_retried(self, tmp_path):
        calls = []
        provider = FixtureProvider(tmp_path)
        original = provider.complete

        def counting(request):
            calls.append(1)
            return original(request)

        provider.complete = counting
        gateway = Gateway(provider, sleep=lambda _s: None)
        with pytest.raises(MissingFixture):
            gateway.complete(CompletionRequest("p", Purpose.parse))
        assert len(calls) == 1


class TestHttpProvider:
    def make_app_provider(self, handler):
        """Run a local HTTP server for one test."""
        import http.server

        class Handler(http.server.BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers["Content-Length"])
                body = json.loads(self.rfile.read(length))
                status, payload = handler(body, self.headers)
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.end_headers()
                self.wfile.write(json.dumps(payload).encode())

            def log_message(self, *args):
                pass

        server = http.server.HTTPServer(("127.0.0.1", 0), Handler)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        url = f"http://127.0.0.1:{server.server_port}/v1/chat/completions"
        return server, gw.HttpProvider(url, model="test-model", timeout=5.0)

    def test_happy_path_and_payload_shape(self, monkeypatch):
        seen = {}

        def handler(body, headers):
            seen.update(body)
            seen["auth"] = headers.get("Authorization")
            return 200, {"choices": [{"message": {"content": "hi there"}}]}

        monkeypatch.setenv(gw.API_KEY_ENV, "secret-key")
        server, provider = self.make_app_provider(handler)
        try:
            text = provider.complete(CompletionRequest("say hi", Purpose.content))
        finally:
            server.shutdown()
        assert text == "hi there"
        assert seen["model"] == "test-model"
        assert seen["messages"] == [{"role": "user", "content": "say hi"}]
        assert seen["temperature"] == 0.8
        assert seen["auth"] == "Bearer secret-key"

    def test_error_status_raises(self):
        server, provider = self.make_app_provider(lambda body, headers: (429, {}))
        try:
            with pytest.raises(ProviderError) as exc:
                provider.complete(CompletionRequest("x", Purpose.content))
        finally:
            server.shutdown()
        assert exc.value.status == 429


class TestGenerateExtraRules:
    def record_fixture(self, tmp_path, kb, completion, prop="plot episode",
                       content="Jack sacrifices himself to save Rose"):
        provider = FixtureProvider(tmp_path)
        prompt = build_extra_rules_prompt(Topic.movie, "Titanic", prop, content, kb)
        provider.record(Purpose.extra_rules, prompt, completion)
        return Gateway(provider)

    def test_table_parsed_and_resolved(self, small_kb, tmp_path):
        gateway = self.record_fixture(tmp_path, small_kb, TABLE_COMPLETION)
        rules = generate_extra_rules(
            Topic.movie, "Titanic", "plot episode",
            "Jack sacrifices himself to save Rose", small_kb, gateway,
        )
        targets = {r.target_instance for r in rules}
        assert targets == {
            "The Dark Knight Rises",
            "The Hunger Games: Mockingjay - Part 2",
        }
        assert all(r.relation_text.startswith("it has a similar plot episode: ") for r in rules)

    def test_unknown_title_dropped(self, small_kb, tmp_path):
        completion = TABLE_COMPLETION + "\nTotally Unknown Film Xyz | also sacrifice."
        gateway = self.record_fixture(tmp_path, small_kb, completion)
        rules = generate_extra_rules(
            Topic.movie, "Titanic", "plot episode",
            "Jack sacrifices himself to save Rose", small_kb, gateway,
        )
        assert len(rules) == 2

    def test_empty_completion(self, small_kb, tmp_path):
        gateway = self.record_fixture(tmp_path, small_kb, "")
        assert generate_extra_rules(
            Topic.movie, "Titanic", "plot episode",
            "Jack sacrifices himself to save Rose", small_kb, gateway,
        ) == []

    def test_prompt_scopes_to_instance_list(self, small_kb):
        prompt = build_extra_rules_prompt(
            Topic.movie, "Titanic", "plot episode", "sacrifice", small_kb
        )
        assert "Choose only from this list of movie titles:" in prompt
        assert "Inception" in prompt
        assert "formatted exactly like these examples:" in prompt

    def test_rules_land_in_rcc_after_add(self, fresh_kb, tmp_path):
        gateway = self.record_fixture(
            tmp_path, fresh_kb, TABLE_COMPLETION, prop="scene", content="the ship sinks"
        )
        rules = generate_extra_rules(
            Topic.movie, "Titanic", "scene", "the ship sinks", fresh_kb, gateway
        )
        for rule in rules:
            fresh_kb.add_extra_rule(rule)
        candidates = fresh_kb.related_concepts(Topic.movie, "Titanic")
        assert any("it has a similar scene" in c.relation for c in candidates)
