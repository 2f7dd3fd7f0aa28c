/** Linear and log10 axis scales with tick generation, no DOM required. */

export interface Scale {
  (value: number): number;
  ticks(): number[];
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    d0 -= 1;
    d1 += 1;
  }
  const f = ((value: number) =>
    range[0] + ((value - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  f.domain = [d0, d1];
  f.ticks = () => linearTicks(d0, d1);
  return f;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale requires positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1 === d0 ? d0 * 10 : d1);
  const f = ((value: number) =>
    range[0] + ((Math.log10(value) - l0) / (l1 - l0)) * (range[1] - range[0])) as Scale;
  f.domain = [d0, d1];
  f.ticks = () => {
    const ticks: number[] = [];
    for (let e = Math.ceil(l0); e <= Math.floor(l1); e++) ticks.push(10 ** e);
    // wide sweeps get unreadable with one tick per decade
    const step = Math.max(1, Math.ceil(ticks.length / 11));
    return ticks.filter((_, i) => i % step === 0);
  };
  return f;
}

export function linearTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  const rawStep = span / count;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => span / s <= count) ?? candidates[4];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < step / 1e6 ? 0 : v);
  }
  return ticks;
}

export function extent(values: number[]): [number, number] {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) throw new Error("no finite values to scale");
  return [Math.min(...finite), Math.max(...finite)];
}

export function padded(domain: [number, number], frac = 0.05): [number, number] {
  const span = domain[1] - domain[0] || 1;
  return [domain[0] - frac * span, domain[1] + frac * span];
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) {
    const e = Math.round(Math.log10(abs));
    if (Math.abs(abs - 10 ** e) / 10 ** e < 1e-9) {
      return `${value < 0 ? "-" : ""}1e${e}`;
    }
    return value.toExponential(1);
  }
  return `${Number(value.toPrecision(6))}`;
}
