import { money, ratio } from "./format.js";
import { esc } from "./html.js";
import type { LocalSensitivityResponse, SobolResult, SweepResponse } from "./types.js";

// All builders return SVG markup as strings. Layout scaling is presentation
// only; every numeric label comes verbatim from a service response field.

const PALETTE = ["#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed", "#0891b2"];

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) return [0, 1];
  if (lo === hi) {
    const pad = Math.abs(lo) || 1;
    return [lo - pad, hi + pad];
  }
  return [lo, hi];
}

/** Earnings-vs-parameter lines for every scenario, crossings marked. */
export function sweepChart(sweep: SweepResponse, width = 640, height = 360): string {
  const margin = { top: 16, right: 16, bottom: 36, left: 64 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const xs = sweep.series.flatMap((s) => s.points.map((p) => p.value));
  const ys = sweep.series.flatMap((s) => s.points.map((p) => p.earnings));
  const [x0, x1] = extent(xs);
  const [y0, y1] = extent(ys);
  const px = (x: number): number => margin.left + ((x - x0) / (x1 - x0)) * plotW;
  const py = (y: number): number => margin.top + (1 - (y - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `role="img" aria-label="parameter sweep">`,
  );
  parts.push(
    `<rect x="${margin.left}" y="${margin.top}" width="${plotW}" height="${plotH}" ` +
    `fill="none" stroke="var(--chart-frame, #9ca3af)"/>`,
  );
  if (y0 < 0 && y1 > 0) {
    const zy = py(0).toFixed(2);
    parts.push(
      `<line x1="${margin.left}" y1="${zy}" x2="${margin.left + plotW}" y2="${zy}" ` +
      `stroke="var(--chart-frame, #9ca3af)" stroke-dasharray="4 3"/>`,
    );
  }
  sweep.series.forEach((series, idx) => {
    const pts = series.points
      .map((p) => `${px(p.value).toFixed(2)},${py(p.earnings).toFixed(2)}`)
      .join(" ");
    const color = PALETTE[idx % PALETTE.length];
    parts.push(
      `<polyline data-series="${esc(series.name)}" points="${pts}" fill="none" ` +
      `stroke="${color}" stroke-width="2"/>`,
    );
    const lx = margin.left + 8;
    const ly = margin.top + 16 + idx * 16;
    parts.push(
      `<text x="${lx}" y="${ly}" fill="${color}" font-size="12">${esc(series.name)}</text>`,
    );
  });
  for (const crossing of sweep.crossings) {
    const cx = px(crossing.value).toFixed(2);
    const cy = py(crossing.earnings).toFixed(2);
    const label = `${crossing.scenario_a}=${crossing.scenario_b} at ${ratio(crossing.value)}`;
    parts.push(
      `<circle data-crossing="${esc(crossing.scenario_a)}/${esc(crossing.scenario_b)}" ` +
      `cx="${cx}" cy="${cy}" r="4" fill="none" stroke="currentColor" stroke-width="1.5"/>`,
    );
    parts.push(
      `<text x="${cx}" y="${(parseFloat(cy) - 8).toFixed(2)}" text-anchor="middle" ` +
      `font-size="11" fill="currentColor">${esc(label)}</text>`,
    );
  }
  parts.push(
    `<text x="${margin.left + plotW / 2}" y="${height - 8}" text-anchor="middle" ` +
    `font-size="12" fill="currentColor">${esc(sweep.variable)}</text>`,
  );
  parts.push(`<text x="14" y="${margin.top + plotH / 2}" text-anchor="middle" font-size="12" ` +
    `fill="currentColor" transform="rotate(-90 14 ${margin.top + plotH / 2})">earnings</text>`);
  parts.push("</svg>");
  return parts.join("");
}

/** Paired S1/ST horizontal bars, one row per variable. */
export function sobolBars(result: SobolResult, width = 560): string {
  const rowH = 34;
  const barH = 12;
  const labelW = 90;
  const valueW = 150;
  const trackW = width - labelW - valueW;
  const height = result.variables.length * rowH + 28;
  const peak = Math.max(
    1e-12,
    ...result.first_order.map(Math.abs),
    ...result.total_order.map(Math.abs),
  );

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `role="img" aria-label="variance decomposition">`,
  );
  result.variables.forEach((name, idx) => {
    const y = 8 + idx * rowH;
    const s1 = result.first_order[idx] ?? 0;
    const st = result.total_order[idx] ?? 0;
    const w1 = Math.max(0, (s1 / peak) * trackW);
    const wt = Math.max(0, (st / peak) * trackW);
    parts.push(
      `<text x="${labelW - 8}" y="${y + rowH / 2}" text-anchor="end" font-size="13" ` +
      `fill="currentColor">${esc(name)}</text>`,
    );
    parts.push(
      `<rect data-kind="first" data-var="${esc(name)}" data-value="${s1}" ` +
      `x="${labelW}" y="${y + 4}" width="${w1.toFixed(2)}" height="${barH}" fill="#2563eb"/>`,
    );
    parts.push(
      `<rect data-kind="total" data-var="${esc(name)}" data-value="${st}" ` +
      `x="${labelW}" y="${y + 4 + barH + 2}" width="${wt.toFixed(2)}" height="${barH}" ` +
      `fill="#93c5fd"/>`,
    );
    parts.push(
      `<text x="${labelW + trackW + 8}" y="${y + rowH / 2 + 4}" font-size="12" ` +
      `fill="currentColor">${ratio(s1)} / ${ratio(st)}</text>`,
    );
  });
  const legendY = height - 8;
  parts.push(
    `<text x="${labelW}" y="${legendY}" font-size="11" fill="currentColor">` +
    `dark: first-order, light: total</text>`,
  );
  parts.push("</svg>");
  return parts.join("");
}

/** Interaction heatmap; cell brightness scales with |S2|. */
export function sobolHeatmap(result: SobolResult, cell = 56): string {
  const matrix = result.second_order;
  if (!matrix || matrix.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 200 40">` +
      `<text x="8" y="24" font-size="12" fill="currentColor">no second-order data</text></svg>`;
  }
  const vars = result.variables;
  const labelW = 54;
  const width = labelW + vars.length * cell + 8;
  const height = labelW + vars.length * cell + 8;
  let peak = 1e-12;
  for (let i = 0; i < vars.length; i++) {
    for (let j = i + 1; j < vars.length; j++) {
      peak = Math.max(peak, Math.abs(matrix[i]?.[j] ?? 0));
    }
  }
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `role="img" aria-label="pairwise interactions">`,
  );
  vars.forEach((name, idx) => {
    const cx = labelW + idx * cell + cell / 2;
    parts.push(
      `<text x="${cx}" y="${labelW - 10}" text-anchor="middle" font-size="12" ` +
      `fill="currentColor">${esc(name)}</text>`,
    );
    const cy = labelW + idx * cell + cell / 2;
    parts.push(
      `<text x="${labelW - 10}" y="${cy + 4}" text-anchor="end" font-size="12" ` +
      `fill="currentColor">${esc(name)}</text>`,
    );
  });
  for (let r = 0; r < vars.length; r++) {
    for (let c = r + 1; c < vars.length; c++) {
      const value = matrix[r]?.[c] ?? 0;
      const intensity = Math.min(1, Math.abs(value) / peak);
      const alpha = (0.08 + 0.92 * intensity).toFixed(3);
      parts.push(
        `<rect data-pair="${esc(vars[r]!)}/${esc(vars[c]!)}" data-value="${value}" ` +
        `x="${labelW + c * cell}" y="${labelW + r * cell}" width="${cell}" height="${cell}" ` +
        `fill="rgba(37, 99, 235, ${alpha})" stroke="var(--chart-frame, #9ca3af)">` +
        `<title>${esc(vars[r]!)} x ${esc(vars[c]!)}: ${ratio(value)}</title></rect>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Signed horizontal bars for a local gradient, largest magnitude first. */
export function gradientTornado(report: LocalSensitivityResponse, width = 560): string {
  const order = report.variables
    .map((name, idx) => ({ name, value: report.gradient[idx] ?? 0 }))
    .sort((a, b) => Math.abs(b.value) - Math.abs(a.value));
  const rowH = 26;
  const labelW = 90;
  const height = order.length * rowH + 16;
  const trackW = width - labelW - 120;
  const mid = labelW + trackW / 2;
  const peak = Math.max(1e-12, ...order.map((e) => Math.abs(e.value)));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `role="img" aria-label="local gradient">`,
  );
  parts.push(
    `<line x1="${mid}" y1="8" x2="${mid}" y2="${height - 8}" ` +
    `stroke="var(--chart-frame, #9ca3af)"/>`,
  );
  order.forEach(({ name, value }, idx) => {
    const y = 8 + idx * rowH;
    const w = (Math.abs(value) / peak) * (trackW / 2);
    const x = value >= 0 ? mid : mid - w;
    parts.push(
      `<text x="${labelW - 8}" y="${y + rowH / 2 + 4}" text-anchor="end" font-size="13" ` +
      `fill="currentColor">${esc(name)}</text>`,
    );
    parts.push(
      `<rect data-var="${esc(name)}" data-value="${value}" x="${x.toFixed(2)}" y="${y + 5}" ` +
      `width="${w.toFixed(2)}" height="14" fill="${value >= 0 ? "#059669" : "#dc2626"}"/>`,
    );
    parts.push(
      `<text x="${labelW + trackW + 10}" y="${y + rowH / 2 + 4}" font-size="12" ` +
      `fill="currentColor">${money(value)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}
