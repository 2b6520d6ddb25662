// Canned payloads shaped like real service responses, plus a scripted
// fetch. Values are small but dimensionally honest: trace lengths match
// grid.length so the renderers exercise their real paths.

import { FetchLike } from '../src/api';
import {
  CorrelationPayload,
  DashboardPayload,
  HeatmapPayload,
  TimelinePayload,
  TrialSummary,
} from '../src/types';

export const READ_TRIAL = 'P01_S001_01_Read';
export const LISTEN_TRIAL = 'P02_S002_01_Listen';

export function trialSummaries(): TrialSummary[] {
  return [
    {
      basename: READ_TRIAL,
      key: { participant: 'P01', stimulus: 'S001', order: 1, task: 'Read' },
      modalities: ['audio', 'eeg', 'gaze'],
      duration_s: 2.0,
      n_samples: 513,
    },
    {
      basename: LISTEN_TRIAL,
      key: { participant: 'P02', stimulus: 'S002', order: 1, task: 'Listen' },
      modalities: ['audio', 'eeg', 'gaze'],
      duration_s: 2.0,
      n_samples: 513,
    },
  ];
}

function wave(n: number, scale: number, phase = 0): number[] {
  return Array.from({ length: n }, (_, i) => scale * Math.sin(0.05 * i + phase));
}

export function timelinePayload(
  overrides: Partial<TimelinePayload> = {},
): TimelinePayload {
  const n = 513; // 2 s on the 256 Hz grid
  return {
    basename: READ_TRIAL,
    key: { participant: 'P01', stimulus: 'S001', order: 1, task: 'Read' },
    grid: { start: 0.0, step: 1 / 256, length: n },
    downsample: 1,
    eeg: [
      { name: 'TP9', values: wave(n, 20), valid: true },
      { name: 'AF7', values: wave(n, 900, 1), valid: false },
    ],
    cleaned: null,
    rejected_components: null,
    ica_converged: null,
    envelope: wave(n, 0.4).map(Math.abs),
    intensity: {
      window_s: 0.5,
      peak_motion_px: 120.5,
      windows: [0, 0.5, 1, 1.5, 2].map((start) => ({
        start_s: start,
        horizontal: 0.4,
        vertical: -0.3,
        total: 0.7,
      })),
    },
    events: [
      { time_s: 0.5, kind: 'fixation' },
      { time_s: 1.5, kind: 'saccade' },
    ],
    ...overrides,
  };
}

export function cleanTimelinePayload(): TimelinePayload {
  const base = timelinePayload();
  return {
    ...base,
    cleaned: base.eeg.map((t) => ({
      name: t.name,
      values: t.values.map((v) => v * 0.5),
    })),
    rejected_components: [1],
    ica_converged: true,
  };
}

export function heatmapPayload(): HeatmapPayload {
  // tiny grid: the renderer does not care that the real one is 100x100
  const density = [
    [0.0, 0.1, 0.0],
    [0.1, 0.9, 0.1],
    [0.0, 0.1, 0.0],
  ];
  return {
    event_kind: 'fixation',
    extent: [1280.0, 1024.0],
    bandwidth: [32.0, 25.6],
    n_points: 41,
    density,
  };
}

export function correlationPayload(
  means: Record<string, number | null>,
): CorrelationPayload {
  const perChannel: CorrelationPayload['per_channel'] = {};
  for (const [name, mean] of Object.entries(means)) {
    perChannel[name] = {
      mean,
      windows: [
        { start_s: 0.0, coefficient: mean },
        { start_s: 0.5, coefficient: mean },
      ],
    };
  }
  return {
    method: 'pearson',
    target: 'audio',
    window_s: 1.0,
    stride_s: 0.5,
    clean: false,
    per_channel: perChannel,
  };
}

export function dashboardPayload(participant: string): DashboardPayload {
  return {
    participant,
    trial_count: 1,
    basenames: [participant === 'P01' ? READ_TRIAL : LISTEN_TRIAL],
    mean_duration_s: 2.0,
    channel_validity_rate: { AF7: 0.0, TP9: 1.0 },
    mean_intensity_peak: 120.5,
  };
}

export interface Route {
  status?: number;
  body: unknown;
}

/** Scripted fetch: exact URL -> response. Unrouted URLs 404. */
export function routedFetch(routes: Record<string, Route | unknown>): FetchLike {
  return async (url: string) => {
    const route = routes[url];
    if (route === undefined) {
      return {
        ok: false,
        status: 404,
        json: async () => ({ error: 'not_found', detail: `no route for ${url}` }),
      };
    }
    const { status = 200, body } =
      route && typeof route === 'object' && 'body' in (route as Route)
        ? (route as Route)
        : { body: route };
    return { ok: status < 400, status, json: async () => body };
  };
}

export function deferred<T>(): { promise: Promise<T>; resolve: (v: T) => void } {
  let resolve!: (v: T) => void;
  const promise = new Promise<T>((r) => {
    resolve = r;
  });
  return { promise, resolve };
}
