// DOM layer: persona picker, transcript with NLML inspectors, composer.

import { ApiClient, ApiError } from './api.js';
import {
  beginSend,
  beginSession,
  canSend,
  completeSend,
  failSend,
  initialState,
  restoreTranscript,
  sessionFailed,
  type ChatViewState,
} from './state.js';

const AVATARS: Record<string, string> = {
  curious: '\u{1F989}', // owl
  narrative: '\u{1F4D6}', // open book
  quiet: '\u{1F319}', // moon
};

const STORAGE_KEY = 'csiec-session';

export class ChatApp {
  state: ChatViewState = initialState();
  private openInspectors = new Set<number>();

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private storage: Pick<Storage, 'getItem' | 'setItem' | 'removeItem'> | null = null,
  ) {}

  async boot(): Promise<void> {
    this.buildSkeleton();
    try {
      const personas = await this.api.personas();
      const select = this.personaSelect();
      select.innerHTML = '';
      for (const p of personas) {
        const option = document.createElement('option');
        option.value = p.name;
        option.textContent = `${AVATARS[p.name] ?? ''} ${p.name}`.trim();
        select.appendChild(option);
      }
    } catch {
      /* the server lists personas; fall back to the bundled three */
      for (const name of ['curious', 'narrative', 'quiet']) {
        const option = document.createElement('option');
        option.value = name;
        option.textContent = name;
        this.personaSelect().appendChild(option);
      }
    }
    const stored = this.storage?.getItem(STORAGE_KEY);
    if (stored) {
      const { sessionId, persona } = JSON.parse(stored);
      try {
        const records = await this.api.getHistory(sessionId, 200);
        this.state = restoreTranscript(
          beginSession(this.state, sessionId, persona),
          records,
        );
        this.personaSelect().value = persona;
        this.render();
        return;
      } catch {
        this.storage?.removeItem(STORAGE_KEY);
      }
    }
    await this.startSession(this.personaSelect().value || 'curious');
  }

  async startSession(persona: string): Promise<void> {
    try {
      const sessionId = await this.api.createSession(persona);
      this.state = beginSession(this.state, sessionId, persona);
      this.openInspectors.clear();
      this.storage?.setItem(STORAGE_KEY, JSON.stringify({ sessionId, persona }));
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      this.state = sessionFailed(this.state, message);
    }
    this.render();
  }

  async send(text: string): Promise<void> {
    if (!canSend(this.state, text)) return;
    this.state = beginSend(this.state, text);
    this.render();
    try {
      const result = await this.api.sendMessage(this.state.sessionId!, text);
      this.state = completeSend(this.state, result);
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      this.state = failSend(this.state, message);
    }
    this.render();
  }

  toggleInspector(turn: number): void {
    if (this.openInspectors.has(turn)) this.openInspectors.delete(turn);
    else this.openInspectors.add(turn);
    this.render();
  }

  // -- DOM plumbing ---------------------------------------------------------

  private buildSkeleton(): void {
    this.root.innerHTML = `
      <header class="topbar">
        <span class="avatar" id="avatar"></span>
        <select id="persona"></select>
        <button id="new-session" type="button">new session</button>
      </header>
      <div id="error" class="error" hidden></div>
      <main id="transcript" class="transcript"></main>
      <footer class="composer">
        <input id="message" type="text" autocomplete="off"
               placeholder="Say something in English" />
        <button id="send" type="button" disabled>send</button>
      </footer>`;
    const input = this.input();
    const send = this.sendButton();
    input.addEventListener('input', () => this.syncComposer());
    input.addEventListener('keydown', (event) => {
      if ((event as KeyboardEvent).key === 'Enter' && !send.disabled) {
        void this.send(input.value);
        input.value = '';
        this.syncComposer();
      }
    });
    send.addEventListener('click', () => {
      void this.send(input.value);
      input.value = '';
      this.syncComposer();
    });
    this.personaSelect().addEventListener('change', () => {
      void this.startSession(this.personaSelect().value);
    });
    this.root.querySelector('#new-session')!.addEventListener('click', () => {
      void this.startSession(this.personaSelect().value);
    });
  }

  render(): void {
    const transcript = this.root.querySelector('#transcript') as HTMLElement;
    transcript.innerHTML = '';
    for (const turn of this.state.transcript) {
      const bubble = document.createElement('div');
      bubble.className = `bubble ${turn.speaker}${turn.pending ? ' pending' : ''}`;
      bubble.dataset.turn = String(turn.turn);
      const text = document.createElement('span');
      text.className = 'text';
      text.textContent = turn.text;
      bubble.appendChild(text);
      if (turn.nlml !== undefined) {
        const toggle = document.createElement('button');
        toggle.type = 'button';
        toggle.className = 'inspector-toggle';
        toggle.textContent = 'NLML';
        toggle.addEventListener('click', () => this.toggleInspector(turn.turn));
        bubble.appendChild(toggle);
        if (this.openInspectors.has(turn.turn)) {
          const pre = document.createElement('pre');
          pre.className = 'inspector';
          pre.textContent = turn.nlml;
          bubble.appendChild(pre);
        }
      }
      transcript.appendChild(bubble);
    }
    const error = this.root.querySelector('#error') as HTMLElement;
    error.hidden = !this.state.error;
    error.textContent = this.state.error ?? '';
    const avatar = this.root.querySelector('#avatar') as HTMLElement;
    avatar.textContent = AVATARS[this.state.persona] ?? '';
    this.syncComposer();
  }

  private syncComposer(): void {
    this.sendButton().disabled = !canSend(this.state, this.input().value);
  }

  private personaSelect(): HTMLSelectElement {
    return this.root.querySelector('#persona') as HTMLSelectElement;
  }

  private input(): HTMLInputElement {
    return this.root.querySelector('#message') as HTMLInputElement;
  }

  private sendButton(): HTMLButtonElement {
    return this.root.querySelector('#send') as HTMLButtonElement;
  }
}
