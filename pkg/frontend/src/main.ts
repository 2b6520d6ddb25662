import { ApiClient } from './api.js';
import { App } from './app.js';

// override with <script>window.MEEDAV_API_BASE = '...'</script> before
// this module loads; same-origin by default when served by the API host
declare global {
  interface Window {
    MEEDAV_API_BASE?: string;
  }
}

const base = window.MEEDAV_API_BASE ?? 'http://127.0.0.1:8000';
const root = document.getElementById('app');
if (root) {
  const app = new App(root, new ApiClient(base));
  app.start().catch((err) => console.error('startup failed:', err));
}
