/**
 * Four stacked rows on one time axis: EEG traces, audio envelope, signed
 * gaze-intensity bars, and event markers. Dense traces are drawn on
 * canvas (a downsampled trial can still be ~1e5 points, DOM plotting
 * does not survive that); sparse event markers are plain positioned
 * elements. A vertical cursor overlay in every row tracks the hover
 * position, so moving the mouse never redraws a canvas.
 */

import { EegTrace, TimelinePayload } from './types.js';
import { ViewState } from './state.js';

export const ROW_ORDER = ['eeg', 'envelope', 'intensity', 'events'] as const;
export type RowName = (typeof ROW_ORDER)[number];

const PLOT_WIDTH = 900;
const ROW_HEIGHT = 130;
const EVENT_ROW_HEIGHT = 46;
const INVALID_COLOR = '#9aa0a6';
const TRACE_COLORS = ['#1a73e8', '#d93025', '#188038', '#f29900', '#9334e6', '#12838c'];
const ENVELOPE_COLOR = '#5f6368';
const HORIZONTAL_BAR_COLOR = '#1a73e8';
const VERTICAL_BAR_COLOR = '#f29900';
const EVENT_COLORS: Record<string, string> = {
  fixation: '#188038',
  saccade: '#d93025',
  blink: '#5f6368',
};

export function trialDuration(payload: TimelinePayload): number {
  return payload.grid.start + payload.grid.step * Math.max(payload.grid.length - 1, 0);
}

function makeRow(name: RowName, label: string, height: number): HTMLElement {
  const row = document.createElement('div');
  row.className = 'trow';
  row.dataset.row = name;
  row.style.height = `${height}px`;

  const head = document.createElement('div');
  head.className = 'row-label';
  head.textContent = label;

  const cursor = document.createElement('div');
  cursor.className = 'cursor';
  cursor.style.display = 'none';

  row.append(head, cursor);
  return row;
}

function makeAbsentRow(name: RowName, label: string): HTMLElement {
  const row = makeRow(name, label, EVENT_ROW_HEIGHT);
  row.classList.add('absent');
  const note = document.createElement('div');
  note.className = 'absent-note';
  note.textContent = 'modality absent';
  row.append(note);
  return row;
}

function makeCanvas(height: number): HTMLCanvasElement {
  const canvas = document.createElement('canvas');
  canvas.width = PLOT_WIDTH;
  canvas.height = height;
  canvas.className = 'row-canvas';
  return canvas;
}

interface Series {
  values: number[];
  color: string;
}

/** Each series gets its own stacked band, min-max scaled within it. */
function drawTraces(canvas: HTMLCanvasElement, series: Series[]): void {
  const ctx = canvas.getContext('2d');
  if (!ctx || series.length === 0) return; // headless test runs have no raster backend
  const band = canvas.height / series.length;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  series.forEach((s, idx) => {
    const n = s.values.length;
    if (n === 0) return;
    let lo = Infinity;
    let hi = -Infinity;
    for (const v of s.values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    const span = hi - lo;
    const top = idx * band + 3;
    const usable = band - 6;
    ctx.beginPath();
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1;
    for (let i = 0; i < n; i++) {
      const x = n > 1 ? (i / (n - 1)) * canvas.width : 0;
      const frac = span > 0 ? (s.values[i] - lo) / span : 0.5;
      const y = top + (1 - frac) * usable;
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    }
    ctx.stroke();
  });
}

function drawBars(
  canvas: HTMLCanvasElement,
  payload: NonNullable<TimelinePayload['intensity']>,
  durationS: number,
): void {
  const ctx = canvas.getContext('2d');
  if (!ctx || durationS <= 0) return;
  const mid = canvas.height / 2;
  const half = mid - 4;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = '#dadce0';
  ctx.beginPath();
  ctx.moveTo(0, mid);
  ctx.lineTo(canvas.width, mid);
  ctx.stroke();
  const barW = Math.max((payload.window_s / durationS) * canvas.width - 1, 1);
  for (const bar of payload.windows) {
    const x = (bar.start_s / durationS) * canvas.width;
    // horizontal points up from the midline, vertical (already signed
    // negative) mirrors down
    ctx.fillStyle = HORIZONTAL_BAR_COLOR;
    ctx.fillRect(x, mid - bar.horizontal * half, barW, bar.horizontal * half);
    ctx.fillStyle = VERTICAL_BAR_COLOR;
    ctx.fillRect(x, mid, barW, -bar.vertical * half);
  }
}

function eegRow(payload: TimelinePayload, state: ViewState): HTMLElement {
  const useClean = state.clean && payload.cleaned !== null;
  const row = makeRow('eeg', 'EEG', ROW_HEIGHT);
  row.dataset.source = useClean ? 'cleaned' : 'raw';

  const validity = new Map<string, boolean>();
  for (const trace of payload.eeg) validity.set(trace.name, trace.valid);
  const traces: EegTrace[] = useClean
    ? payload.cleaned!.map((t) => ({ ...t, valid: validity.get(t.name) ?? true }))
    : payload.eeg;

  const legend = document.createElement('div');
  legend.className = 'legend';
  const series: Series[] = [];
  traces.forEach((trace, idx) => {
    const color = trace.valid ? TRACE_COLORS[idx % TRACE_COLORS.length] : INVALID_COLOR;
    const chip = document.createElement('span');
    chip.className = trace.valid ? 'chan' : 'chan invalid';
    chip.style.color = color;
    chip.textContent = trace.valid ? trace.name : `${trace.name} (invalid)`;
    legend.append(chip);
    series.push({ values: trace.values, color });
  });
  if (useClean) {
    const note = document.createElement('span');
    note.className = 'ica-note';
    const rejected = payload.rejected_components ?? [];
    note.textContent = rejected.length > 0
      ? `ICA rejected [${rejected.join(', ')}]`
      : 'ICA rejected none';
    if (payload.ica_converged === false) note.textContent += ', not converged';
    legend.append(note);
  }

  const canvas = makeCanvas(ROW_HEIGHT);
  drawTraces(canvas, series);
  row.append(legend, canvas);
  return row;
}

function envelopeRow(payload: TimelinePayload): HTMLElement {
  if (payload.envelope === null) return makeAbsentRow('envelope', 'Audio');
  const row = makeRow('envelope', 'Audio envelope', ROW_HEIGHT);
  const canvas = makeCanvas(ROW_HEIGHT);
  drawTraces(canvas, [{ values: payload.envelope, color: ENVELOPE_COLOR }]);
  row.append(canvas);
  return row;
}

function intensityRow(payload: TimelinePayload, durationS: number): HTMLElement {
  if (payload.intensity === null) return makeAbsentRow('intensity', 'Gaze intensity');
  const row = makeRow('intensity', 'Gaze intensity', ROW_HEIGHT);
  const peak = document.createElement('span');
  peak.className = 'peak-note';
  peak.textContent = `peak ${payload.intensity.peak_motion_px.toFixed(1)} px/window`;
  row.querySelector('.row-label')!.append(peak);
  const canvas = makeCanvas(ROW_HEIGHT);
  drawBars(canvas, payload.intensity, durationS);
  row.append(canvas);
  return row;
}

function eventsRow(payload: TimelinePayload, durationS: number): HTMLElement {
  const row = makeRow('events', 'Events', EVENT_ROW_HEIGHT);
  const lane = document.createElement('div');
  lane.className = 'event-lane';
  for (const event of payload.events) {
    const marker = document.createElement('span');
    marker.className = `event-marker kind-${event.kind}`;
    marker.style.left = durationS > 0 ? `${(event.time_s / durationS) * 100}%` : '0%';
    marker.style.background = EVENT_COLORS[event.kind] ?? '#202124';
    marker.title = `${event.kind} @ ${event.time_s.toFixed(3)} s`;
    lane.append(marker);
  }
  row.append(lane);
  return row;
}

export function renderTimeline(
  root: HTMLElement,
  payload: TimelinePayload,
  state: ViewState,
): void {
  const durationS = trialDuration(payload);
  root.innerHTML = '';
  root.dataset.basename = payload.basename;

  const strip = document.createElement('div');
  strip.className = 'timeline';
  strip.append(
    eegRow(payload, state),
    envelopeRow(payload),
    intensityRow(payload, durationS),
    eventsRow(payload, durationS),
  );

  const readout = document.createElement('div');
  readout.className = 'cursor-readout';
  root.append(strip, readout);
}

/** Position the shared cursor in every row; null hides it everywhere. */
export function setCursor(
  root: HTMLElement,
  timeS: number | null,
  durationS: number,
): void {
  const cursors = root.querySelectorAll<HTMLElement>('.trow .cursor');
  const readout = root.querySelector<HTMLElement>('.cursor-readout');
  if (timeS === null || durationS <= 0) {
    cursors.forEach((c) => {
      c.style.display = 'none';
    });
    if (readout) readout.textContent = '';
    return;
  }
  const clamped = Math.min(Math.max(timeS, 0), durationS);
  const pct = (clamped / durationS) * 100;
  cursors.forEach((c) => {
    c.style.display = 'block';
    c.style.left = `${pct}%`;
  });
  if (readout) readout.textContent = `${clamped.toFixed(3)} s`;
}

/** Hovering any row moves one cursor through all of them. */
export function attachCursorSync(
  root: HTMLElement,
  durationS: number,
  onCursor: (timeS: number | null) => void,
): void {
  const strip = root.querySelector<HTMLElement>('.timeline');
  if (!strip) return;
  strip.addEventListener('mousemove', (ev: MouseEvent) => {
    const rect = strip.getBoundingClientRect();
    if (rect.width <= 0) return;
    const frac = (ev.clientX - rect.left) / rect.width;
    onCursor(Math.min(Math.max(frac, 0), 1) * durationS);
  });
  strip.addEventListener('mouseleave', () => onCursor(null));
}
