/**
 * Everything the view depends on. Rendering is a pure function of
 * (ViewState, fetched payloads); there is no other client state.
 */

import { ColormapName } from './colormap.js';

export type Tab = 'timeline' | 'heatmap' | 'dashboard';
export type SortMode = 'value' | 'name';
export type EventKind = 'fixation' | 'saccade';
export type Method = 'pearson' | 'spearman' | 'kendall';
export type Target = 'audio' | 'gaze_intensity';

export interface ViewState {
  participant: string | null;
  stimulus: string | null;
  basename: string | null;
  /** Affects EEG traces and correlation requests only, never gaze/audio. */
  clean: boolean;
  tab: Tab;
  eventKind: EventKind;
  method: Method;
  target: Target;
  windowS: number;
  strideS: number;
  colormap: ColormapName;
  sortMode: SortMode;
  /** Hover position in seconds, or null when the pointer is elsewhere. */
  cursorS: number | null;
}

export function initialState(): ViewState {
  return {
    participant: null,
    stimulus: null,
    basename: null,
    clean: false,
    tab: 'timeline',
    eventKind: 'fixation',
    method: 'pearson',
    target: 'audio',
    windowS: 1.0,
    strideS: 0.5,
    colormap: 'Reds',
    sortMode: 'value',
    cursorS: null,
  };
}

/** Keep the cursor inside the trial span; anything unusable becomes null. */
export function clampCursor(
  timeS: number | null,
  durationS: number,
): number | null {
  if (timeS === null || !Number.isFinite(timeS) || durationS <= 0) return null;
  return Math.min(Math.max(timeS, 0), durationS);
}
