// Client for the chat service's structured-text HTTP API.

import {
  decodeBody,
  encodeBody,
  firstField,
  parseRecord,
  type HistoryRecord,
} from './protocol.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export interface MessageResult {
  reply: string;
  userTurn: number;
  systemTurn: number;
  nlml?: string;
}

export interface PersonaInfo {
  name: string;
  curiosity: number;
  narrativity: number;
  quietness: number;
}

export interface ParseResult {
  nlml?: string;
  trace?: string;
  parses?: number;
  error?: string;
  unknown?: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post(path: string, fields: Record<string, string>) {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'text/plain; charset=utf-8' },
      body: encodeBody(fields),
    });
    const decoded = decodeBody(await resp.text());
    if (!resp.ok) {
      throw new ApiError(resp.status, firstField(decoded, 'error') ?? 'request failed');
    }
    return decoded;
  }

  private async get(path: string) {
    const resp = await this.fetchFn(this.baseUrl + path, { method: 'GET' });
    const decoded = decodeBody(await resp.text());
    if (!resp.ok) {
      throw new ApiError(resp.status, firstField(decoded, 'error') ?? 'request failed');
    }
    return decoded;
  }

  async createSession(persona: string): Promise<string> {
    const fields = await this.post('/session', { persona });
    const sessionId = firstField(fields, 'session_id');
    if (!sessionId) throw new ApiError(500, 'response lacks session_id');
    return sessionId;
  }

  async sendMessage(sessionId: string, text: string): Promise<MessageResult> {
    const fields = await this.post('/message', { session_id: sessionId, text });
    const reply = firstField(fields, 'reply');
    if (reply === undefined) throw new ApiError(500, 'response lacks reply');
    return {
      reply,
      userTurn: Number(firstField(fields, 'user_turn') ?? -1),
      systemTurn: Number(firstField(fields, 'system_turn') ?? -1),
      nlml: firstField(fields, 'nlml'),
    };
  }

  async getHistory(sessionId: string, lastN: number): Promise<HistoryRecord[]> {
    const fields = await this.get(
      `/history?session_id=${encodeURIComponent(sessionId)}&last_n=${lastN}`,
    );
    return (fields.get('record') ?? []).map(parseRecord);
  }

  async personas(): Promise<PersonaInfo[]> {
    const fields = await this.get('/personas');
    return (fields.get('persona') ?? []).map((line) => {
      const [name, c, n, q] = line.split('|');
      return {
        name,
        curiosity: Number(c),
        narrativity: Number(n),
        quietness: Number(q),
      };
    });
  }

  async parse(text: string): Promise<ParseResult> {
    const fields = await this.post('/parse', { text });
    return {
      nlml: firstField(fields, 'nlml'),
      trace: firstField(fields, 'trace'),
      parses: Number(firstField(fields, 'parses') ?? 0) || undefined,
      error: firstField(fields, 'error'),
      unknown: firstField(fields, 'unknown'),
    };
  }
}
