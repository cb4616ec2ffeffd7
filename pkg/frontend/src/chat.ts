// Chat view: message bubbles, input box, WebSocket turn streaming with a
// reconnect banner, and the collapsible debug sidebar (hidden by default).

import type { ApiClient } from './api';
import { renderDebugTurn } from './debug';
import type { TurnRecordDoc } from './types';

// Minimal surface of WebSocket the view needs; tests inject fakes.
export interface SocketLike {
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

const defaultSocketFactory: SocketFactory = (url) => new WebSocket(url) as unknown as SocketLike;

export interface ChatViewOptions {
  root: HTMLElement;
  api: ApiClient;
  socketFactory?: SocketFactory;
  seed?: number;
}

export class ChatView {
  readonly messages: HTMLElement;
  readonly debugPanel: HTMLElement;
  readonly banner: HTMLElement;
  readonly input: HTMLInputElement;
  readonly sendButton: HTMLButtonElement;

  private readonly api: ApiClient;
  private readonly socketFactory: SocketFactory;
  private readonly seed?: number;
  private socket: SocketLike | null = null;
  private sessionId = '';
  private greeting = '';
  private renderedRounds = new Set<number>();
  private sending = false;

  constructor(options: ChatViewOptions) {
    this.api = options.api;
    this.socketFactory = options.socketFactory ?? defaultSocketFactory;
    this.seed = options.seed;
    options.root.innerHTML = `
      <div class="chat-layout">
        <div class="chat-main">
          <div class="chat-banner hidden"></div>
          <div class="chat-messages"></div>
          <form class="chat-form">
            <input class="chat-input" type="text" autocomplete="off"
                   placeholder="Say something about a movie or a book..." />
            <button class="chat-send" type="submit">Send</button>
            <button class="chat-debug-toggle" type="button">Debug</button>
          </form>
        </div>
        <aside class="debug-panel collapsed"></aside>
      </div>`;
    this.messages = options.root.querySelector('.chat-messages') as HTMLElement;
    this.debugPanel = options.root.querySelector('.debug-panel') as HTMLElement;
    this.banner = options.root.querySelector('.chat-banner') as HTMLElement;
    this.input = options.root.querySelector('.chat-input') as HTMLInputElement;
    this.sendButton = options.root.querySelector('.chat-send') as HTMLButtonElement;

    const form = options.root.querySelector('.chat-form') as HTMLFormElement;
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.send(this.input.value);
    });
    const toggle = options.root.querySelector('.chat-debug-toggle') as HTMLButtonElement;
    toggle.addEventListener('click', () => this.debugPanel.classList.toggle('collapsed'));
  }

  async start(): Promise<void> {
    const body: Record<string, unknown> = {};
    if (this.seed !== undefined) {
      body.seed = this.seed;
    }
    const session = await this.api.createSession(body);
    this.sessionId = session.session_id;
    this.greeting = session.greeting;
    this.addBubble('bot', session.greeting);
    this.connectStream();
  }

  get session(): string {
    return this.sessionId;
  }

  async send(text: string): Promise<TurnRecordDoc | null> {
    const trimmed = text.trim();
    if (!trimmed || this.sending || !this.sessionId) {
      return null;
    }
    this.sending = true;
    this.sendButton.disabled = true;
    this.addBubble('user', trimmed);
    this.input.value = '';
    try {
      const turn = await this.api.postMessage(this.sessionId, trimmed);
      this.applyTurn(turn);
      return turn;
    } catch (error) {
      this.showBanner(`Message failed: ${String(error)}`);
      return null;
    } finally {
      this.sending = false;
      this.sendButton.disabled = false;
    }
  }

  // Applies a turn exactly once whether it arrives from the POST response
  // or the stream push, whichever lands first.
  applyTurn(turn: TurnRecordDoc): void {
    if (this.renderedRounds.has(turn.round)) {
      return;
    }
    this.renderedRounds.add(turn.round);
    this.addBubble('bot', turn.reply_text);
    this.debugPanel.appendChild(renderDebugTurn(turn));
  }

  connectStream(): void {
    this.socket = this.socketFactory(this.api.streamUrl(this.sessionId));
    this.socket.onmessage = (event) => {
      try {
        this.applyTurn(JSON.parse(event.data) as TurnRecordDoc);
      } catch {
        // not a turn document; ignore
      }
    };
    this.socket.onclose = () => this.showBanner('Connection lost.');
    this.socket.onerror = () => this.showBanner('Connection error.');
  }

  // Rebuild the whole conversation from the state endpoint, then reopen
  // the stream. Used by the banner's retry button.
  async reconnect(): Promise<void> {
    this.hideBanner();
    const state = await this.api.getState(this.sessionId);
    this.messages.innerHTML = '';
    this.debugPanel.innerHTML = '';
    this.renderedRounds.clear();
    if (this.greeting) {
      this.addBubble('bot', this.greeting);
    }
    for (const turn of state.turns) {
      this.addBubble('user', turn.user_text);
      this.applyTurn(turn);
    }
    this.connectStream();
  }

  addBubble(role: 'user' | 'bot', text: string): void {
    const bubble = document.createElement('div');
    bubble.className = `bubble bubble-${role}`;
    bubble.textContent = text;
    this.messages.appendChild(bubble);
    this.messages.scrollTop = this.messages.scrollHeight;
  }

  showBanner(text: string): void {
    this.banner.classList.remove('hidden');
    this.banner.innerHTML = '';
    this.banner.appendChild(document.createTextNode(text + ' '));
    const retry = document.createElement('button');
    retry.textContent = 'Retry';
    retry.className = 'banner-retry';
    retry.addEventListener('click', () => void this.reconnect());
    this.banner.appendChild(retry);
  }

  hideBanner(): void {
    this.banner.classList.add('hidden');
    this.banner.innerHTML = '';
  }
}
