// Structured-text wire protocol: UTF-8 key=value lines, with \n \t \\
// escaping inside values (see docs/api.md in the repository root).

export function escapeValue(value: string): string {
  return value
    .replace(/\\/g, '\\\\')
    .replace(/\n/g, '\\n')
    .replace(/\t/g, '\\t');
}

export function unescapeValue(value: string): string {
  let out = '';
  for (let i = 0; i < value.length; i++) {
    const ch = value[i];
    if (ch === '\\' && i + 1 < value.length) {
      const next = value[i + 1];
      if (next === 'n') out += '\n';
      else if (next === 't') out += '\t';
      else if (next === '\\') out += '\\';
      else out += next;
      i++;
    } else {
      out += ch;
    }
  }
  return out;
}

export function encodeBody(fields: Record<string, string>): string {
  const lines = Object.entries(fields).map(
    ([key, value]) => `${key}=${escapeValue(value)}`,
  );
  return lines.join('\n') + '\n';
}

/** Decode a response body; repeated keys are collected in order. */
export function decodeBody(text: string): Map<string, string[]> {
  const out = new Map<string, string[]>();
  for (const line of text.split('\n')) {
    if (!line.trim()) continue;
    const eq = line.indexOf('=');
    if (eq < 0) continue;
    const key = line.slice(0, eq).trim();
    const value = unescapeValue(line.slice(eq + 1));
    const bucket = out.get(key);
    if (bucket) bucket.push(value);
    else out.set(key, [value]);
  }
  return out;
}

export function firstField(fields: Map<string, string[]>, key: string): string | undefined {
  return fields.get(key)?.[0];
}

export interface HistoryRecord {
  sessionId: string;
  turn: number;
  speaker: 'user' | 'system';
  timestamp: number;
  raw: string;
  nlml?: string;
}

/**
 * One history `record=` value is a tab-separated dialog-log line whose
 * text fields carry their own backslash escapes (the body encoding is
 * unescaped by decodeBody before this runs).
 */
export function parseRecord(line: string): HistoryRecord {
  const parts = line.split('\t');
  if (parts.length !== 6) {
    throw new Error(`malformed history record: ${line.slice(0, 60)}`);
  }
  const [sessionId, turn, speaker, timestamp, raw, nlml] = parts;
  if (speaker !== 'user' && speaker !== 'system') {
    throw new Error(`unknown speaker '${speaker}'`);
  }
  return {
    sessionId: unescapeValue(sessionId),
    turn: Number(turn),
    speaker,
    timestamp: Number(timestamp),
    raw: unescapeValue(raw),
    nlml: nlml === '' ? undefined : unescapeValue(nlml),
  };
}
