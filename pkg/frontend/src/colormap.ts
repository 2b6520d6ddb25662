/**
 * The three density palettes offered by the heatmap tab. Stop lists are
 * the standard colorbrewer / matplotlib anchors; lookup interpolates
 * linearly in RGB between neighboring stops.
 */

export type ColormapName = 'Reds' | 'Blues' | 'Viridis';

export const COLORMAPS: Record<ColormapName, string[]> = {
  Reds: [
    '#fff5f0', '#fee0d2', '#fcbba1', '#fc9272', '#fb6a4a',
    '#ef3b2c', '#cb181d', '#a50f15', '#67000d',
  ],
  Blues: [
    '#f7fbff', '#deebf7', '#c6dbef', '#9ecae1', '#6baed6',
    '#4292c6', '#2171b5', '#08519c', '#08306b',
  ],
  Viridis: [
    '#440154', '#482878', '#3e4989', '#31688e', '#26828e',
    '#1f9e89', '#35b779', '#6ece58', '#b5de2b', '#fde725',
  ],
};

/** Selector options, in display order. Exactly these three. */
export const COLORMAP_NAMES = Object.keys(COLORMAPS) as ColormapName[];

function hexToRgb(hex: string): [number, number, number] {
  const n = parseInt(hex.slice(1), 16);
  return [(n >> 16) & 0xff, (n >> 8) & 0xff, n & 0xff];
}

export function sampleColormap(
  name: ColormapName,
  t: number,
): [number, number, number] {
  const stops = COLORMAPS[name];
  const x = Math.min(Math.max(t, 0), 1) * (stops.length - 1);
  const i = Math.min(Math.floor(x), stops.length - 2);
  const frac = x - i;
  const lo = hexToRgb(stops[i]);
  const hi = hexToRgb(stops[i + 1]);
  return [
    Math.round(lo[0] + (hi[0] - lo[0]) * frac),
    Math.round(lo[1] + (hi[1] - lo[1]) * frac),
    Math.round(lo[2] + (hi[2] - lo[2]) * frac),
  ];
}

/** Density grid (rows = y) to row-major RGBA pixels, max-normalized. */
export function colorize(density: number[][], name: ColormapName) {
  const rows = density.length;
  const cols = rows > 0 ? density[0].length : 0;
  let max = 0;
  for (const row of density) {
    for (const v of row) if (v > max) max = v;
  }
  // explicit ArrayBuffer so the result is accepted by ImageData
  const rgba = new Uint8ClampedArray(new ArrayBuffer(rows * cols * 4));
  let p = 0;
  for (const row of density) {
    for (const v of row) {
      const [r, g, b] = sampleColormap(name, max > 0 ? v / max : 0);
      rgba[p] = r;
      rgba[p + 1] = g;
      rgba[p + 2] = b;
      rgba[p + 3] = 255;
      p += 4;
    }
  }
  return rgba;
}
