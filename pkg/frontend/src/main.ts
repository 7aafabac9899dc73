import { ApiClient } from './api.js';
import { ChatApp } from './ui.js';

const base = (window as { CSIEC_BASE_URL?: string }).CSIEC_BASE_URL ?? '';
const app = new ChatApp(
  new ApiClient(base),
  document.getElementById('app') as HTMLElement,
  window.localStorage,
);
void app.boot();
