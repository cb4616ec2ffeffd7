import type { SessionCreatedDoc, SessionStateDoc, TurnRecordDoc } from './types';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    throw new ApiError(response.status, await response.text());
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  async createSession(body: Record<string, unknown> = {}): Promise<SessionCreatedDoc> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    return asJson<SessionCreatedDoc>(response);
  }

  async postMessage(sessionId: string, text: string): Promise<TurnRecordDoc> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/messages`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ text }),
    });
    return asJson<TurnRecordDoc>(response);
  }

  async getState(sessionId: string): Promise<SessionStateDoc> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/state`);
    return asJson<SessionStateDoc>(response);
  }

  streamUrl(sessionId: string): string {
    const ws = this.baseUrl.replace(/^http/, 'ws');
    return `${ws}/sessions/${sessionId}/stream`;
  }
}
