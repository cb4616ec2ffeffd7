import { beforeEach, describe, expect, it } from 'vitest';

import type { ApiClient } from '../src/api';
import { ChatView, type SocketLike } from '../src/chat';
import type { SessionStateDoc, TurnRecordDoc } from '../src/types';
import { switchTurn } from './fixtures';

class FakeSocket implements SocketLike {
  onmessage: ((event: { data: string }) => void) | null = null;
  onclose: (() => void) | null = null;
  onerror: (() => void) | null = null;
  closed = false;
  close(): void {
    this.closed = true;
  }
}

function fakeApi(turns: TurnRecordDoc[]): ApiClient {
  const state: SessionStateDoc = {
    schema: 'session-state/1',
    id: 'abc',
    seed: 42,
    round: turns.length + 1,
    draw_count: 0,
    ended: false,
    turns,
    preferences: [],
    recommended: [],
  };
  return {
    baseUrl: 'http://fake',
    createSession: async () => ({
      schema: 'session/1',
      session_id: 'abc',
      seed: 42,
      greeting: 'Hello! Movies or books?',
    }),
    postMessage: async (_sid: string, text: string) => {
      const turn = { ...switchTurn(), round: turns.length + 1, user_text: text };
      turns.push(turn);
      state.round = turns.length + 1;
      return turn;
    },
    getState: async () => state,
    streamUrl: (sid: string) => `ws://fake/sessions/${sid}/stream`,
  } as unknown as ApiClient;
}

describe('chat view', () => {
  let root: HTMLElement;
  let sockets: FakeSocket[];
  let view: ChatView;
  let turns: TurnRecordDoc[];

  beforeEach(async () => {
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById('app') as HTMLElement;
    sockets = [];
    turns = [];
    view = new ChatView({
      root,
      api: fakeApi(turns),
      socketFactory: () => {
        const socket = new FakeSocket();
        sockets.push(socket);
        return socket;
      },
    });
    await view.start();
  });

  function bubbles(role: string): string[] {
    return Array.from(root.querySelectorAll(`.bubble-${role}`)).map(
      (b) => b.textContent ?? '',
    );
  }

  it('greets on start and opens a stream', () => {
    expect(bubbles('bot')).toEqual(['Hello! Movies or books?']);
    expect(sockets).toHaveLength(1);
  });

  it('posting renders user and bot bubbles plus a debug section', async () => {
    await view.send('I just saw Inception');
    expect(bubbles('user')).toEqual(['I just saw Inception']);
    expect(bubbles('bot')).toHaveLength(2);
    expect(root.querySelectorAll('.debug-turn')).toHaveLength(1);
  });

  it('stream pushes and POST responses are deduplicated by round', async () => {
    const sent = view.send('hello');
    const turn = await sent;
    expect(turn).not.toBeNull();
    sockets[0].onmessage?.({ data: JSON.stringify(turn) });
    expect(bubbles('bot')).toHaveLength(2); // greeting + one reply, not two
  });

  it('the debug panel is collapsed until toggled', () => {
    const panel = root.querySelector('.debug-panel') as HTMLElement;
    expect(panel.classList.contains('collapsed')).toBe(true);
    (root.querySelector('.chat-debug-toggle') as HTMLButtonElement).click();
    expect(panel.classList.contains('collapsed')).toBe(false);
  });

  it('connection loss shows a banner and retry restores from state', async () => {
    await view.send('first message');
    sockets[0].onclose?.();
    const banner = root.querySelector('.chat-banner') as HTMLElement;
    expect(banner.classList.contains('hidden')).toBe(false);
    expect(banner.textContent).toContain('Connection lost.');

    (banner.querySelector('.banner-retry') as HTMLButtonElement).click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(banner.classList.contains('hidden')).toBe(true);
    // history rebuilt from the state endpoint: greeting + user + reply
    expect(bubbles('user')).toEqual(['first message']);
    expect(bubbles('bot')).toHaveLength(2);
    expect(sockets).toHaveLength(2); // stream reopened
  });
});
