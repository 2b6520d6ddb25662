/**
 * Wires controls, fetches, and the three tab renderers together. All
 * data access goes through one cache-backed client, every render is a
 * pure function of the current ViewState plus fetched payloads, and a
 * request token discards responses a newer interaction has superseded.
 */

import { ApiClient, ApiError, RequestSequence } from './api.js';
import {
  EventKind,
  Method,
  SortMode,
  Tab,
  Target,
  ViewState,
  clampCursor,
  initialState,
} from './state.js';
import {
  attachCursorSync,
  renderTimeline,
  setCursor,
  trialDuration,
} from './timeline.js';
import { renderHeatmap } from './heatmap.js';
import { renderDashboard } from './dashboard.js';
import { COLORMAP_NAMES, ColormapName } from './colormap.js';
import {
  CorrelationPayload,
  DashboardPayload,
  HeatmapPayload,
  TimelinePayload,
  TrialSummary,
} from './types.js';

// keep timeline payloads around 1 MB: ~95 bytes of JSON per grid point
// across four EEG channels plus the envelope
const TARGET_POINTS = 8000;

export function renderErrorPanel(root: HTMLElement, err: unknown): void {
  root.innerHTML = '';
  const panel = document.createElement('div');
  panel.className = 'error-panel';
  const title = document.createElement('strong');
  const detail = document.createElement('div');
  if (err instanceof ApiError) {
    title.textContent = err.code;
    detail.textContent = err.detail || `request failed with status ${err.status}`;
  } else {
    title.textContent = 'request_failed';
    detail.textContent = String(err);
  }
  panel.append(title, detail);
  root.append(panel);
}

function messagePanel(root: HTMLElement, text: string): void {
  root.innerHTML = '';
  const panel = document.createElement('div');
  panel.className = 'message-panel';
  panel.textContent = text;
  root.append(panel);
}

function option(value: string, label?: string): HTMLOptionElement {
  const opt = document.createElement('option');
  opt.value = value;
  opt.textContent = label ?? value;
  return opt;
}

export class App {
  state: ViewState = initialState();
  trials: TrialSummary[] = [];

  private seq = new RequestSequence();
  private view: HTMLElement;
  private trialSelect: HTMLSelectElement;
  private participantSelect: HTMLSelectElement;
  private timelinePayload: TimelinePayload | null = null;

  constructor(private root: HTMLElement, readonly api: ApiClient) {
    root.innerHTML = '';
    const header = document.createElement('header');
    header.className = 'controls';

    this.participantSelect = document.createElement('select');
    this.participantSelect.id = 'participant';
    this.trialSelect = document.createElement('select');
    this.trialSelect.id = 'trial';

    const tabs = document.createElement('nav');
    tabs.className = 'tabs';
    for (const tab of ['timeline', 'heatmap', 'dashboard'] as Tab[]) {
      const button = document.createElement('button');
      button.className = 'tab';
      button.dataset.tab = tab;
      button.textContent = tab;
      button.addEventListener('click', () => void this.setState({ tab }));
      tabs.append(button);
    }

    const clean = document.createElement('input');
    clean.type = 'checkbox';
    clean.id = 'clean';
    clean.addEventListener('change', () => void this.setState({ clean: clean.checked }));
    const cleanLabel = document.createElement('label');
    cleanLabel.htmlFor = 'clean';
    cleanLabel.append(clean, document.createTextNode(' clean'));

    const eventKind = document.createElement('select');
    eventKind.id = 'event-kind';
    eventKind.append(option('fixation'), option('saccade'));
    eventKind.addEventListener('change', () =>
      void this.setState({ eventKind: eventKind.value as EventKind }));

    const colormap = document.createElement('select');
    colormap.id = 'colormap';
    for (const name of COLORMAP_NAMES) colormap.append(option(name));
    colormap.addEventListener('change', () =>
      void this.setState({ colormap: colormap.value as ColormapName }));

    const method = document.createElement('select');
    method.id = 'method';
    method.append(option('pearson'), option('spearman'), option('kendall'));
    method.addEventListener('change', () =>
      void this.setState({ method: method.value as Method }));

    const target = document.createElement('select');
    target.id = 'target';
    target.append(option('audio'), option('gaze_intensity'));
    target.addEventListener('change', () =>
      void this.setState({ target: target.value as Target }));

    const sort = document.createElement('select');
    sort.id = 'sort';
    sort.append(option('value', 'by value'), option('name', 'by name'));
    sort.addEventListener('change', () =>
      void this.setState({ sortMode: sort.value as SortMode }));

    this.participantSelect.addEventListener('change', () => {
      const value = this.participantSelect.value;
      void this.setState({ participant: value === '' ? null : value });
    });
    this.trialSelect.addEventListener('change', () =>
      void this.setState({ basename: this.trialSelect.value }));

    header.append(
      this.participantSelect, this.trialSelect, tabs,
      cleanLabel, eventKind, colormap, method, target, sort,
    );

    this.view = document.createElement('main');
    this.view.className = 'view';
    root.append(header, this.view);
  }

  async start(): Promise<void> {
    try {
      this.trials = await this.api.get<TrialSummary[]>('/api/trials');
    } catch (err) {
      renderErrorPanel(this.view, err);
      return;
    }
    this.populateFilters();
    this.state = { ...this.state, basename: this.visibleTrials()[0]?.basename ?? null };
    this.syncControls();
    await this.refresh();
  }

  private visibleTrials(): TrialSummary[] {
    const wanted = this.state.participant;
    if (wanted === null) return this.trials;
    return this.trials.filter((t) => t.key?.participant === wanted);
  }

  private populateFilters(): void {
    this.participantSelect.innerHTML = '';
    this.participantSelect.append(option('', 'all participants'));
    const participants = [...new Set(
      this.trials.map((t) => t.key?.participant).filter((p): p is string => !!p),
    )].sort();
    for (const p of participants) this.participantSelect.append(option(p));

    this.trialSelect.innerHTML = '';
    for (const t of this.visibleTrials()) this.trialSelect.append(option(t.basename));
  }

  private syncControls(): void {
    this.participantSelect.value = this.state.participant ?? '';
    if (this.state.basename !== null) this.trialSelect.value = this.state.basename;
    const clean = this.root.querySelector<HTMLInputElement>('#clean');
    if (clean) clean.checked = this.state.clean;
    this.root.querySelectorAll<HTMLElement>('.tab').forEach((b) =>
      b.classList.toggle('active', b.dataset.tab === this.state.tab));
  }

  async setState(patch: Partial<ViewState>): Promise<void> {
    this.state = { ...this.state, ...patch };
    if ('participant' in patch) {
      this.populateFilters();
      const visible = this.visibleTrials();
      if (!visible.some((t) => t.basename === this.state.basename)) {
        this.state = { ...this.state, basename: visible[0]?.basename ?? null };
      }
    }
    this.syncControls();
    await this.refresh();
  }

  /** Hover updates reposition the overlay; nothing is redrawn. */
  moveCursor(timeS: number | null): void {
    const durationS = this.timelinePayload ? trialDuration(this.timelinePayload) : 0;
    this.state = { ...this.state, cursorS: clampCursor(timeS, durationS) };
    setCursor(this.view, this.state.cursorS, durationS);
  }

  private async refresh(): Promise<void> {
    const token = this.seq.next();
    try {
      if (this.state.basename === null) {
        messagePanel(this.view, 'no trials available');
        return;
      }
      if (this.state.tab === 'timeline') await this.showTimeline(token);
      else if (this.state.tab === 'heatmap') await this.showHeatmap(token);
      else await this.showDashboard(token);
    } catch (err) {
      if (!this.seq.isCurrent(token)) return; // superseded, drop silently
      renderErrorPanel(this.view, err);
    }
  }

  private downsampleFor(basename: string): number | undefined {
    const summary = this.trials.find((t) => t.basename === basename);
    if (!summary) return undefined;
    const k = Math.ceil(summary.n_samples / TARGET_POINTS);
    return k > 1 ? k : undefined;
  }

  private async showTimeline(token: number): Promise<void> {
    const basename = this.state.basename!;
    const payload = await this.api.get<TimelinePayload>(
      `/api/trials/${basename}/timeline`,
      {
        clean: this.state.clean ? true : undefined,
        downsample: this.downsampleFor(basename),
      },
    );
    if (!this.seq.isCurrent(token)) return;
    this.timelinePayload = payload;
    renderTimeline(this.view, payload, this.state);
    attachCursorSync(this.view, trialDuration(payload), (t) => this.moveCursor(t));
    if (this.state.cursorS !== null) {
      setCursor(this.view, this.state.cursorS, trialDuration(payload));
    }
  }

  private async showHeatmap(token: number): Promise<void> {
    const payload = await this.api.get<HeatmapPayload>(
      `/api/trials/${this.state.basename}/heatmap`,
      { event: this.state.eventKind },
    );
    if (!this.seq.isCurrent(token)) return;
    renderHeatmap(this.view, payload, this.state.colormap);
  }

  private async showDashboard(token: number): Promise<void> {
    const summary = this.trials.find((t) => t.basename === this.state.basename);
    const participant = this.state.participant
      ?? summary?.key?.participant
      ?? this.state.basename!.split('_')[0];
    const [dash, corr] = await Promise.all([
      this.api.get<DashboardPayload>(`/api/participants/${participant}/dashboard`),
      this.api.get<CorrelationPayload>(
        `/api/trials/${this.state.basename}/correlation`,
        {
          method: this.state.method,
          target: this.state.target,
          window_s: this.state.windowS,
          stride_s: this.state.strideS,
          clean: this.state.clean ? true : undefined,
        },
      ),
    ]);
    if (!this.seq.isCurrent(token)) return;
    renderDashboard(this.view, dash, corr, this.state.sortMode);
  }
}
