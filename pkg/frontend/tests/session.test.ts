// Scripted session against a live engine: serve the blue-red-blue path,
// play every move the /hint endpoint suggests, and check at each ply that
// the client's board hash equals the hash of the server's payload.  The
// final banner must agree with the engine's own solver verdict.

import { execFile, spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { promisify } from 'node:util';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { bannerFor } from '../src/banner.js';
import { projectBoard } from '../src/board.js';
import { EngineClient } from '../src/client.js';
import { hashPayload } from '../src/hash.js';
import { BRB_PATH } from './fixtures.js';

const execFileAsync = promisify(execFile);
const PORT = 8639;
const BASE = `http://127.0.0.1:${PORT}`;

let engine: ChildProcess;
let fixture: string;

async function waitForEngine(): Promise<void> {
  for (let i = 0; i < 100; i += 1) {
    try {
      const resp = await fetch(`${BASE}/position`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error('engine did not come up');
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), 'arckplay-'));
  fixture = join(dir, 'brb.json');
  writeFileSync(fixture, JSON.stringify(BRB_PATH));
  engine = spawn(
    'python3',
    ['-m', 'arckbench', 'serve', '--port', String(PORT), '--position', fixture],
    { stdio: 'ignore' },
  );
  await waitForEngine();
}, 30_000);

afterAll(() => {
  engine?.kill();
});

describe('scripted session on the blue-red-blue path', () => {
  it('plays to completion against /hint with hash agreement each ply', async () => {
    const client = new EngineClient(BASE);
    const human = 'blue';

    let envelope = await client.position();
    let plies = 0;
    while (!envelope.terminal && plies < 10) {
      // client state mirrors the server payload exactly
      const clientHash = await hashPayload(envelope.position);
      const serverEnvelope = await client.position();
      const serverHash = await hashPayload(serverEnvelope.position);
      expect(clientHash).toBe(serverHash);

      const view = projectBoard(envelope, human);
      expect(view.toMove).toBe(envelope.position.to_move);

      const hint = await client.hint();
      expect(hint).not.toBeNull();
      envelope = await client.move(hint as number);
      plies += 1;
    }
    expect(envelope.terminal).toBe(true);
    expect(plies).toBeGreaterThan(0);

    const finalHash = await hashPayload(envelope.position);
    const serverFinal = await client.position();
    expect(await hashPayload(serverFinal.position)).toBe(finalHash);

    // final banner must match the engine's own solve of the start position
    const { stdout } = await execFileAsync('python3', [
      '-m', 'arckbench', 'solve-arck', '--in', fixture,
    ]);
    const verdict = JSON.parse(stdout) as { winner: 'blue' | 'red' };
    const banner = bannerFor(envelope, human);
    if (verdict.winner === human) {
      expect(banner.kind).toBe('win');
    } else {
      expect(banner.kind).toBe('loss');
    }
    expect(envelope.winner).toBe(verdict.winner);
  }, 30_000);

  it('rejects an opponent-colour move server-side with 400', async () => {
    const client = new EngineClient(BASE);
    await client.newGame(BRB_PATH);
    await expect(client.move(1)).rejects.toMatchObject({
      status: 400,
      reason: 'wrong colour',
    });
    await client.newGame(BRB_PATH); // leave a fresh game behind
  });
});
