// Board-state hashing: the client and server must agree on the position at
// every ply, so both sides hash the canonical JSON (sorted keys, no spaces)
// of the position payload.

function canonical(value: unknown): string {
  if (value === null || typeof value !== 'object') {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return '[' + value.map(canonical).join(',') + ']';
  }
  const obj = value as Record<string, unknown>;
  const keys = Object.keys(obj).sort();
  return (
    '{' +
    keys.map((k) => JSON.stringify(k) + ':' + canonical(obj[k])).join(',') +
    '}'
  );
}

export function canonicalJson(value: unknown): string {
  return canonical(value);
}

export async function hashPayload(value: unknown): Promise<string> {
  const data = new TextEncoder().encode(canonical(value));
  const digest = await crypto.subtle.digest('SHA-256', data);
  return Array.from(new Uint8Array(digest))
    .map((b) => b.toString(16).padStart(2, '0'))
    .join('');
}
