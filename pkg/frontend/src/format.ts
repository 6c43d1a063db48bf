// Display formatting that matches the service's own table renderer, so a
// value shown here is byte-identical to the one the CLI would print.

/** Currency amounts: fixed five decimals ("9.44000"). */
export function money(value: number | null | undefined): string {
  if (value === null || value === undefined) return "";
  return value.toFixed(5);
}

/**
 * Dimensionless ratios (RoI): thousands separators, up to five decimals
 * with trailing zeros trimmed ("944", "15,599", "0.8395"). Null means the
 * denominator was zero and renders as the word "undefined".
 */
export function ratio(value: number | null | undefined): string {
  if (value === null || value === undefined) return "undefined";
  const fixed = value.toLocaleString("en-US", {
    minimumFractionDigits: 5,
    maximumFractionDigits: 5,
  });
  const text = fixed.replace(/0+$/, "").replace(/\.$/, "");
  return text === "" || text === "-" ? "0" : text;
}

/** Job progress as a whole percentage ("42%"). */
export function percent(fraction: number): string {
  return `${Math.round(fraction * 100)}%`;
}

/** Compact signed form for deltas ("+1.64050" / "-0.44600"). */
export function signedMoney(value: number): string {
  const body = money(Math.abs(value));
  return value < 0 ? `-${body}` : `+${body}`;
}

export function signedRatio(value: number | null | undefined): string {
  if (value === null || value === undefined) return "undefined";
  const body = ratio(Math.abs(value));
  return value < 0 ? `-${body}` : `+${body}`;
}
