// Debug panel: renders the symbolic state of one turn in Themes/Next order.
// Strictly a projection of the TurnRecord; no client-side inference.

import type { ParseResultDoc, ReasonerOutputDoc, ThemeDoc, TurnRecordDoc } from './types';

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function themeLine(theme: ThemeDoc): string {
  let line = `talk(${theme.topic}, ${theme.instance}, ${theme.property})`;
  if (theme.content !== null) {
    line += ` content: ${theme.content}`;
  }
  if (theme.attitude !== null) {
    line += ` attitude: ${theme.attitude}`;
  }
  if (theme.question !== null) {
    line += ` question: ${theme.question}`;
  }
  return line;
}

function renderThemes(parse: ParseResultDoc): HTMLElement {
  const block = el('div', 'debug-themes');
  block.appendChild(el('div', 'debug-heading', 'Themes:'));
  for (const theme of parse.themes) {
    const row = el('div', 'debug-theme-row', themeLine(theme));
    row.dataset.field = 'theme';
    block.appendChild(row);
  }
  for (const pref of parse.preferences) {
    const row = el(
      'div',
      'debug-pref-row',
      `prefer(${pref.topic}, ${pref.property}, ${pref.value})`,
    );
    row.dataset.field = 'preference';
    block.appendChild(row);
  }
  if (parse.quit) {
    block.appendChild(el('div', 'debug-flag', 'quit'));
  }
  if (parse.irrelevant) {
    block.appendChild(el('div', 'debug-flag', 'irrelevant'));
  }
  if (!parse.themes.length && !parse.preferences.length && !parse.quit && !parse.irrelevant) {
    block.appendChild(el('div', 'debug-flag', '(none)'));
  }
  return block;
}

function renderNext(output: ReasonerOutputDoc): HTMLElement {
  const block = el('div', 'debug-next');
  block.appendChild(el('div', 'debug-heading', 'Next:'));
  const mode = el('div', 'debug-mode', `mode: ${output.mode}`);
  mode.dataset.field = 'mode';
  mode.dataset.mode = output.mode;
  block.appendChild(mode);

  for (const answer of output.answers) {
    const row = el(
      'div',
      'debug-answer-row',
      `answer ${answer.property} of ${answer.instance}: ` +
        (answer.value === null ? '(unknown)' : answer.value),
    );
    row.dataset.field = 'answer';
    block.appendChild(row);
  }

  const reply = output.reply_theme;
  if (reply === null) {
    return block;
  }
  if (reply.theme !== null) {
    const row = el(
      'div',
      'debug-reply-row',
      `talk(${reply.theme.topic}, ${reply.theme.instance}, ${reply.theme.property})` +
        (reply.attitude !== null ? ` attitude: ${reply.attitude}` : ''),
    );
    row.dataset.field = 'reply-theme';
    row.dataset.topic = reply.theme.topic;
    row.dataset.instance = reply.theme.instance;
    row.dataset.property = reply.theme.property;
    row.dataset.attitude = reply.attitude ?? '';
    block.appendChild(row);
  }
  if (reply.source !== null && reply.relation !== null) {
    const row = el('div', 'debug-relation-row', `via ${reply.source}: ${reply.relation}`);
    row.dataset.field = 'relation';
    row.dataset.source = reply.source;
    row.dataset.relation = reply.relation;
    block.appendChild(row);
  }
  if (reply.item !== null) {
    const row = el('div', 'debug-recommend-row', `recommend ${reply.item.topic}: ${reply.item.title}`);
    row.dataset.field = 'recommend';
    row.dataset.title = reply.item.title;
    block.appendChild(row);
    for (const pref of reply.matched) {
      const matched = el(
        'div',
        'debug-matched-row',
        `matched prefer(${pref.topic}, ${pref.property}, ${pref.value})`,
      );
      matched.dataset.field = 'matched';
      block.appendChild(matched);
    }
  }
  return block;
}

export function renderDebugTurn(turn: TurnRecordDoc): HTMLElement {
  const section = el('section', 'debug-turn');
  section.dataset.round = String(turn.round);
  section.appendChild(el('div', 'debug-round', `round ${turn.round}`));
  section.appendChild(renderThemes(turn.parse_result));
  section.appendChild(renderNext(turn.reasoner_output));
  const draws = el('div', 'debug-draws', `rng draws: ${turn.rng_draws_used}`);
  draws.dataset.field = 'draws';
  section.appendChild(draws);
  return section;
}
