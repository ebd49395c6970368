/** Visual query building.
 *
 * Clicking a vertex while holding a modifier key combines it with the
 * session's current query. The produced string is the same canonical form
 * the service prints, so round-trips stay stable:
 *
 *   hold A: (current AND term)
 *   hold O: (current OR term)
 *   hold N: (current AND (NOT term))
 */

export type Modifier = "AND" | "OR" | "ANDNOT";

export const MODIFIER_KEYS: Readonly<Record<string, Modifier>> = {
  a: "AND",
  o: "OR",
  n: "ANDNOT",
};

/** Multi-word vertex labels (phrases) get quoted. */
export function quoteLabel(label: string): string {
  return /\s/.test(label) ? `"${label}"` : label;
}

export function combineQuery(current: string, modifier: Modifier, label: string): string {
  const term = quoteLabel(label);
  switch (modifier) {
    case "AND":
      return `(${current} AND ${term})`;
    case "OR":
      return `(${current} OR ${term})`;
    case "ANDNOT":
      return `(${current} AND (NOT ${term}))`;
  }
}

/** Modifier for the currently pressed keys, if exactly one applies. */
export function modifierForKeys(pressed: ReadonlySet<string>): Modifier | null {
  const hits = Object.keys(MODIFIER_KEYS).filter((key) => pressed.has(key));
  if (hits.length !== 1) {
    return null;
  }
  return MODIFIER_KEYS[hits[0]];
}
