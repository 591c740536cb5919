/** Small display helpers shared by the views. */

export function audioLabel(on: boolean): string {
  return on ? "Audio on" : "Audio off";
}

export function countLabel(n: number, noun: string): string {
  return `${n} ${noun}${n === 1 ? "" : "s"}`;
}

export function resultLabel(correct: number, total: number): string {
  return `${correct}/${total}`;
}

export function dateLabel(iso: string): string {
  const d = new Date(iso);
  if (Number.isNaN(d.getTime())) return iso;
  return d.toLocaleString(undefined, {
    year: "numeric",
    month: "short",
    day: "numeric",
    hour: "2-digit",
    minute: "2-digit",
  });
}

/** Human wording for validation violation codes coming from the server. */
export function violationText(code: string): string {
  switch (code) {
    case "not-a-word":
      return "must be a word (not found in the lexicon)";
    case "capitalization":
      return "must start with a capital letter";
    case "initial-phoneme":
      return "must start with one of the phonemes of the lipshape";
    default:
      return code;
  }
}
