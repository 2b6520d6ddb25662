/**
 * KDE density rendered as an image. The 100x100 grid is painted at grid
 * resolution into an offscreen canvas and scaled up to the screen's
 * 1280:1024 proportions; switching colormaps only repaints, it never
 * refetches.
 */

import { HeatmapPayload } from './types.js';
import { ColormapName, colorize } from './colormap.js';

// half the recording screen, aspect preserved exactly (5:4)
export const HEATMAP_W = 640;
export const HEATMAP_H = 512;

export function renderHeatmap(
  root: HTMLElement,
  payload: HeatmapPayload,
  colormap: ColormapName,
): void {
  root.innerHTML = '';
  const wrap = document.createElement('div');
  wrap.className = 'heatmap';

  const meta = document.createElement('div');
  meta.className = 'heatmap-meta';
  meta.textContent =
    `${payload.n_points} ${payload.event_kind} points, ` +
    `bandwidth ${payload.bandwidth[0].toFixed(1)} x ${payload.bandwidth[1].toFixed(1)} px, ` +
    `${colormap}`;

  const canvas = document.createElement('canvas');
  canvas.className = 'heatmap-canvas';
  canvas.width = HEATMAP_W;
  canvas.height = HEATMAP_H;

  wrap.append(meta, canvas);
  root.append(wrap);
  paint(canvas, payload, colormap);
}

function paint(
  canvas: HTMLCanvasElement,
  payload: HeatmapPayload,
  colormap: ColormapName,
): void {
  const ctx = canvas.getContext('2d');
  if (!ctx) return; // headless test runs have no raster backend
  const rows = payload.density.length;
  const cols = rows > 0 ? payload.density[0].length : 0;
  if (rows === 0 || cols === 0) return;

  const off = document.createElement('canvas');
  off.width = cols;
  off.height = rows;
  const offCtx = off.getContext('2d');
  if (!offCtx) return;
  offCtx.putImageData(new ImageData(colorize(payload.density, colormap), cols, rows), 0, 0);

  ctx.imageSmoothingEnabled = true;
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);
}
