"""Command-line entry points: REPL chat, trace replay, service, KB tools."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Optional

import click

from socialbot import kbgen
from socialbot.engine import AppConfig, Engine, GREETING, TurnRecord
from socialbot.gateway import FixtureProvider, Purpose
from socialbot.kb import KbError, load_kb_dir
from socialbot.model import Mode
from socialbot.predparse import build_parse_prompt, render_parse_result
from socialbot.replay import load_script, run_script

log = logging.getLogger(__name__)


def _merge_config(
    config_path: Optional[str],
    kb_dir: Optional[str],
    offline: Optional[bool],
    provider_url: Optional[str],
    model: Optional[str],
    fixtures_dir: Optional[str],
) -> AppConfig:
    config = AppConfig.from_file(config_path) if config_path else AppConfig()
    if kb_dir:
        config.kb_dir = kb_dir
    if offline is not None:
        config.offline = offline
    if provider_url:
        config.provider_url = provider_url
        config.offline = False
    if model:
        config.model = model
    if fixtures_dir:
        config.fixtures_dir = fixtures_dir
    return config


def _build_engine(ctx: click.Context, config: AppConfig) -> Engine:
    try:
        return Engine.from_config(config)
    except (KbError, FileNotFoundError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(2)


def _print_turn_debug(record: TurnRecord) -> None:
    click.echo("Themes:")
    rendered = render_parse_result(record.parse_result)
    click.echo(f"  {rendered}" if rendered else "  (none)")
    click.echo("Next:")
    output = record.reasoner_output
    click.echo(f"  mode={output.mode.value}")
    for answer in output.answers:
        value = answer.value if answer.value is not None else "(unknown)"
        click.echo(f"  answer {answer.property} of {answer.instance}: {value}")
    reply = output.reply_theme
    if reply and reply.theme:
        attitude = reply.attitude.value if reply.attitude else "-"
        theme = reply.theme
        click.echo(
            f"  talk({theme.topic.value},{theme.instance},{theme.property}). "
            f"attitude({attitude})."
        )
        if reply.source and reply.relation:
            click.echo(f"  via {reply.source}: {reply.relation}")
    elif reply and reply.item:
        click.echo(f"  recommend {reply.item['topic']} {reply.item['title']}")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def main(verbose: bool) -> None:
    """Knowledge-grounded socialbot engine."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--kb-dir", type=click.Path(), help="Knowledge-base directory.")
@click.option("--seed", type=int, default=None, help="Session RNG seed.")
@click.option("--offline/--online", "offline", default=None)
@click.option("--provider-url", help="Chat-completion endpoint URL.")
@click.option("--model", default=None, help="Provider model name.")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--fixtures-dir", type=click.Path(), help="Fixture store for offline runs.")
@click.option("--show-themes", is_flag=True, help="Print parse/reasoner state per turn.")
@click.option("--snapshot", "snapshot_path", type=click.Path(), help="Session snapshot file.")
@click.option("--replay", "replay_script", type=click.Path(exists=True), help="Run a script instead of the REPL.")
@click.pass_context
def chat(
    ctx, kb_dir, seed, offline, provider_url, model, config_path,
    fixtures_dir, show_themes, snapshot_path, replay_script,
) -> None:
    """Interactive chat (or scripted replay with --replay)."""
    config = _merge_config(config_path, kb_dir, offline, provider_url, model, fixtures_dir)
    engine = _build_engine(ctx, config)
    if replay_script:
        ctx.exit(_run_replay(engine, replay_script, seed or 0, show_themes))

    chat_session = None
    if snapshot_path and Path(snapshot_path).exists():
        chat_session = engine.restore_session(
            json.loads(Path(snapshot_path).read_text(encoding="utf-8"))
        )
        click.echo(f"(resumed session {chat_session.id} at round {chat_session.session.round})")
    if chat_session is None:
        chat_session = engine.create_session(seed=seed)
        click.echo(f"(session {chat_session.id}, seed {chat_session.session.seed})")
        click.echo(f"bot> {GREETING}")

    while True:
        try:
            line = input("you> ")
        except EOFError:
            break
        if not line.strip():
            continue
        record = engine.post(chat_session, line)
        if show_themes:
            _print_turn_debug(record)
        click.echo(f"bot> {record.reply_text}")
        if snapshot_path:
            Path(snapshot_path).write_text(
                json.dumps(chat_session.state_document(), indent=2), encoding="utf-8"
            )
        if record.reasoner_output.mode is Mode.quit:
            break
    ctx.exit(0)


def _run_replay(engine: Engine, script_path: str, seed: int, show_themes: bool) -> int:
    turns = load_script(script_path)
    report = run_script(engine, turns, seed=seed)
    for record in report.records:
        reply = record.reasoner_output.reply_theme
        summary = record.reasoner_output.mode.value
        if reply and reply.theme:
            summary += (
                f" ({reply.theme.topic.value}, {reply.theme.instance}, {reply.theme.property})"
            )
        click.echo(f"round {record.round}: {summary}")
        if show_themes:
            _print_turn_debug(record)
    if report.failures:
        for failure in report.failures:
            click.echo(f"FAIL {failure}", err=True)
        click.echo(f"replay failed: {len(report.failures)} expectation(s)", err=True)
        return 1
    click.echo(f"replay ok: {len(report.records)} turns in {report.elapsed:.2f}s")
    return 0


@main.command()
@click.argument("script", type=click.Path(exists=True))
@click.option("--kb-dir", type=click.Path(), required=True)
@click.option("--seed", type=int, default=0)
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--show-themes", is_flag=True)
@click.pass_context
def replay(ctx, script, kb_dir, seed, config_path, show_themes) -> None:
    """Replay a scripted conversation and verify its expectations."""
    config = _merge_config(config_path, kb_dir, True, None, None, None)
    engine = _build_engine(ctx, config)
    ctx.exit(_run_replay(engine, script, seed, show_themes))


@main.command()
@click.option("--kb-dir", type=click.Path(), required=True)
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--offline/--online", "offline", default=None)
@click.option("--provider-url")
@click.option("--model", default=None)
@click.option("--fixtures-dir", type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.pass_context
def serve(ctx, kb_dir, host, port, offline, provider_url, model, fixtures_dir, config_path):
    """Run the HTTP/WebSocket service."""
    import uvicorn

    from socialbot.service import create_app

    config = _merge_config(config_path, kb_dir, offline, provider_url, model, fixtures_dir)
    engine = _build_engine(ctx, config)
    uvicorn.run(create_app(engine), host=host, port=port, log_level="info")


@main.command("validate-kb")
@click.option("--kb-dir", type=click.Path(), required=True)
@click.pass_context
def validate_kb(ctx, kb_dir) -> None:
    """Load a KB directory and report its record counts."""
    try:
        kb = load_kb_dir(kb_dir)
    except (KbError, FileNotFoundError) as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(2)
    counts = kb.counts()
    click.echo(
        f"ok: {counts['movies']} movies, {counts['books']} books, "
        f"{counts['people']} people, {len(kb.movie_catalog)} catalog movies, "
        f"{len(kb.book_catalog)} catalog books, {len(kb.extra_rules)} extra rules"
    )


@main.command("gen-kb")
@click.option("--out", type=click.Path(), required=True)
@click.option("--scale", type=click.Choice(["small", "full"]), default="small")
@click.option("--seed", type=int, default=2024)
def gen_kb(out, scale, seed) -> None:
    """Write a demo knowledge base (small = curated core only)."""
    if scale == "full":
        counts = kbgen.generate_kb(out, seed=seed)
    else:
        counts = kbgen.generate_small_kb(out, seed=seed)
    click.echo(
        f"wrote {counts['movies']} movies, {counts['books']} books, "
        f"{counts['people']} people to {out}"
    )


@main.command("add-fixture")
@click.option("--fixtures-dir", type=click.Path(), required=True)
@click.option("--purpose", type=click.Choice([p.value for p in Purpose]), required=True)
@click.option("--prompt-file", type=click.Path(exists=True))
@click.option("--user-text", help="Build a first-turn extraction prompt from this text.")
@click.option("--response-file", type=click.Path(exists=True), required=True)
def add_fixture(fixtures_dir, purpose, prompt_file, user_text, response_file) -> None:
    """Record a canned gateway response keyed by its prompt digest."""
    if (prompt_file is None) == (user_text is None):
        raise click.UsageError("provide exactly one of --prompt-file / --user-text")
    if prompt_file:
        prompt = Path(prompt_file).read_text(encoding="utf-8")
    else:
        prompt = build_parse_prompt(user_text, "")
    response = Path(response_file).read_text(encoding="utf-8")
    digest = FixtureProvider(fixtures_dir).record(Purpose(purpose), prompt, response)
    click.echo(f"recorded {purpose} fixture {digest}")


if __name__ == "__main__":
    main(sys.argv[1:])
