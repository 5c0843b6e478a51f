import { describe, expect, it } from 'vitest';

import { canonicalJson, hashPayload } from '../src/hash.js';
import { BRB_PATH } from './fixtures.js';

describe('canonicalJson', () => {
  it('is insensitive to key order', () => {
    expect(canonicalJson({ b: 1, a: [2, { d: 3, c: 4 }] })).toBe(
      canonicalJson({ a: [2, { c: 4, d: 3 }], b: 1 }),
    );
  });

  it('keeps array order significant', () => {
    expect(canonicalJson([1, 2])).not.toBe(canonicalJson([2, 1]));
  });
});

describe('hashPayload', () => {
  it('is deterministic for a position payload', async () => {
    const once = await hashPayload(BRB_PATH);
    const twice = await hashPayload(JSON.parse(JSON.stringify(BRB_PATH)));
    expect(once).toBe(twice);
    expect(once).toMatch(/^[0-9a-f]{64}$/);
  });

  it('differs once the position changes', async () => {
    const moved = {
      ...BRB_PATH,
      edges: BRB_PATH.edges.slice(1),
      to_move: 'red' as const,
    };
    expect(await hashPayload(moved)).not.toBe(await hashPayload(BRB_PATH));
  });
});
