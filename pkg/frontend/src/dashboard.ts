/**
 * Participant summary plus per-channel correlation bars. Sorting is
 * purely client-side: re-sorting reorders the already-fetched payload.
 */

import { CorrelationPayload, DashboardPayload } from './types.js';
import { SortMode } from './state.js';

/**
 * Channel order for the bar plot. 'value' sorts descending by mean
 * coefficient with undefined coefficients last; ties and the 'name'
 * mode fall back to the channel name, so equal values keep a stable,
 * reproducible order.
 */
export function sortChannels(
  perChannel: Record<string, { mean: number | null }>,
  mode: SortMode,
): string[] {
  const byName = (a: string, b: string) => (a < b ? -1 : a > b ? 1 : 0);
  const names = Object.keys(perChannel).sort(byName);
  if (mode === 'name') return names;
  return names.sort((a, b) => {
    const va = perChannel[a].mean;
    const vb = perChannel[b].mean;
    if (va === null && vb === null) return byName(a, b);
    if (va === null) return 1;
    if (vb === null) return -1;
    if (vb !== va) return vb - va;
    return byName(a, b);
  });
}

function summaryBlock(dash: DashboardPayload): HTMLElement {
  const block = document.createElement('div');
  block.className = 'dash-summary';

  const title = document.createElement('h2');
  title.textContent = `${dash.participant}: ${dash.trial_count} trial(s)`;

  const facts = document.createElement('ul');
  const mean = document.createElement('li');
  mean.textContent = `mean duration ${dash.mean_duration_s.toFixed(2)} s`;
  facts.append(mean);
  const peak = document.createElement('li');
  peak.textContent = dash.mean_intensity_peak === null
    ? 'gaze intensity: no gaze data'
    : `mean intensity peak ${dash.mean_intensity_peak.toFixed(1)} px/window`;
  facts.append(peak);
  for (const [name, rate] of Object.entries(dash.channel_validity_rate)) {
    const item = document.createElement('li');
    item.className = 'validity';
    item.textContent = `${name} valid in ${(rate * 100).toFixed(0)}% of trials`;
    facts.append(item);
  }

  const trials = document.createElement('div');
  trials.className = 'dash-trials';
  trials.textContent = dash.basenames.join(', ');

  block.append(title, facts, trials);
  return block;
}

export function renderDashboard(
  root: HTMLElement,
  dash: DashboardPayload,
  corr: CorrelationPayload,
  mode: SortMode,
): void {
  root.innerHTML = '';
  root.append(summaryBlock(dash));

  const caption = document.createElement('div');
  caption.className = 'corr-caption';
  caption.textContent =
    `${corr.method} vs ${corr.target}` +
    `${corr.clean ? ' (cleaned EEG)' : ''}, window ${corr.window_s} s`;

  const bars = document.createElement('div');
  bars.className = 'corr-bars';
  for (const name of sortChannels(corr.per_channel, mode)) {
    const mean = corr.per_channel[name].mean;
    const row = document.createElement('div');
    row.className = 'bar-row';
    row.dataset.channel = name;

    const label = document.createElement('span');
    label.className = 'bar-label';
    label.textContent = name;

    const bar = document.createElement('div');
    bar.className = mean !== null && mean < 0 ? 'bar neg' : 'bar pos';
    bar.style.width = mean === null ? '0%' : `${Math.min(Math.abs(mean), 1) * 100}%`;

    const value = document.createElement('span');
    value.className = 'bar-value';
    value.textContent = mean === null ? 'n/a' : mean.toFixed(3);

    row.append(label, bar, value);
    bars.append(row);
  }
  root.append(caption, bars);
}
