// Shapes of the JSON the service returns. Field names mirror the wire
// format exactly, snake_case included, so payloads need no translation.

export interface TrialKeyFields {
  participant: string;
  stimulus: string;
  order: number;
  task: string;
}

export interface TrialSummary {
  basename: string;
  key: TrialKeyFields | null;
  modalities: string[];
  duration_s: number;
  n_samples: number;
}

export interface GridInfo {
  start: number;
  step: number;
  length: number;
}

export interface EegTrace {
  name: string;
  values: number[];
  valid: boolean;
}

export interface CleanedTrace {
  name: string;
  values: number[];
}

export interface IntensityBar {
  start_s: number;
  horizontal: number;
  /** Already negated server-side so the mirror plot can draw it as-is. */
  vertical: number;
  total: number;
}

export interface IntensityPayload {
  window_s: number;
  peak_motion_px: number;
  windows: IntensityBar[];
}

export interface GazeEvent {
  time_s: number;
  kind: string;
}

export interface TimelinePayload {
  basename: string;
  key: TrialKeyFields | null;
  grid: GridInfo;
  downsample: number;
  eeg: EegTrace[];
  cleaned: CleanedTrace[] | null;
  rejected_components: number[] | null;
  ica_converged: boolean | null;
  envelope: number[] | null;
  intensity: IntensityPayload | null;
  events: GazeEvent[];
}

export interface HeatmapPayload {
  event_kind: string;
  extent: [number, number];
  bandwidth: [number, number];
  n_points: number;
  density: number[][];
}

export interface CorrelationWindow {
  start_s: number;
  coefficient: number | null;
}

export interface ChannelCorrelation {
  mean: number | null;
  windows: CorrelationWindow[];
}

export interface CorrelationPayload {
  method: string;
  target: string;
  window_s: number;
  stride_s: number;
  clean: boolean;
  per_channel: Record<string, ChannelCorrelation>;
}

export interface DashboardPayload {
  participant: string;
  trial_count: number;
  basenames: string[];
  mean_duration_s: number;
  channel_validity_rate: Record<string, number>;
  mean_intensity_peak: number | null;
}
