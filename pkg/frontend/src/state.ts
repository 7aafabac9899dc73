// Chat view state and its transitions, kept pure for testing.
// Invariants: transcript order always equals server turn order; at most
// one message is in flight; the optimistic user bubble is replaced by the
// server-acknowledged pair when the reply lands.

import type { HistoryRecord } from './protocol.js';
import type { MessageResult } from './api.js';

export interface TranscriptTurn {
  speaker: 'user' | 'system';
  text: string;
  nlml?: string;
  turn: number;
  pending?: boolean;
}

export interface ChatViewState {
  sessionId: string | null;
  persona: string;
  transcript: TranscriptTurn[];
  pending: boolean;
  error: string | null;
}

export function initialState(persona = 'curious'): ChatViewState {
  return { sessionId: null, persona, transcript: [], pending: false, error: null };
}

export function beginSession(
  state: ChatViewState,
  sessionId: string,
  persona: string,
): ChatViewState {
  return { sessionId, persona, transcript: [], pending: false, error: null };
}

export function sessionFailed(state: ChatViewState, message: string): ChatViewState {
  return { ...state, sessionId: null, transcript: [], pending: false, error: message };
}

export function canSend(state: ChatViewState, text: string): boolean {
  return Boolean(state.sessionId) && !state.pending && text.trim().length > 0;
}

/** Optimistic echo of the user's text; rejects while another send is live. */
export function beginSend(state: ChatViewState, text: string): ChatViewState {
  if (!canSend(state, text)) {
    throw new Error('send not allowed in this state');
  }
  const optimistic: TranscriptTurn = {
    speaker: 'user',
    text,
    turn: nextTurn(state),
    pending: true,
  };
  return {
    ...state,
    transcript: [...state.transcript, optimistic],
    pending: true,
    error: null,
  };
}

export function completeSend(
  state: ChatViewState,
  result: MessageResult,
): ChatViewState {
  const settled = state.transcript.filter((t) => !t.pending);
  const user = state.transcript.find((t) => t.pending);
  const turns: TranscriptTurn[] = [
    {
      speaker: 'user',
      text: user?.text ?? '',
      turn: result.userTurn,
      nlml: result.nlml,
    },
    { speaker: 'system', text: result.reply, turn: result.systemTurn },
  ];
  return {
    ...state,
    transcript: [...settled, ...turns].sort((a, b) => a.turn - b.turn),
    pending: false,
  };
}

export function failSend(state: ChatViewState, message: string): ChatViewState {
  return {
    ...state,
    transcript: state.transcript.filter((t) => !t.pending),
    pending: false,
    error: message,
  };
}

export function restoreTranscript(
  state: ChatViewState,
  records: HistoryRecord[],
): ChatViewState {
  const transcript = [...records]
    .sort((a, b) => a.turn - b.turn)
    .map<TranscriptTurn>((r) => ({
      speaker: r.speaker,
      text: r.raw,
      nlml: r.nlml,
      turn: r.turn,
    }));
  return { ...state, transcript, pending: false };
}

function nextTurn(state: ChatViewState): number {
  const last = state.transcript[state.transcript.length - 1];
  return last ? last.turn + 1 : 0;
}
