import { ApiClient } from './api';
import { ChatView } from './chat';

// ?api=http://host:port overrides the service location; defaults to the
// page's own origin (serve the UI behind the same host as the service).
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? window.location.origin;
const seedParam = params.get('seed');

const root = document.getElementById('app');
if (!root) {
  throw new Error('missing #app element');
}

const view = new ChatView({
  root,
  api: new ApiClient(baseUrl),
  seed: seedParam !== null ? Number(seedParam) : undefined,
});

view.start().catch((error) => {
  view.showBanner(`Could not reach the service at ${baseUrl}: ${String(error)}`);
});
