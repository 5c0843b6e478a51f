import { parseEnvelope } from './board.js';
import type { Envelope, MoveRejection, PositionPayload } from './types.js';

export class EngineError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly reason?: string,
  ) {
    super(message);
  }
}

/** Thin serialized client for the engine's HTTP protocol.  The client never
 * mutates game state itself; every view is rebuilt from server payloads. */
export class EngineClient {
  private queue: Promise<unknown> = Promise.resolve();

  constructor(private readonly base: string) {}

  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.queue.then(job, job);
    this.queue = next.catch(() => undefined);
    return next;
  }

  private async request(path: string, init?: RequestInit): Promise<Envelope> {
    const resp = await fetch(this.base + path, init);
    const body = (await resp.json()) as Envelope | MoveRejection;
    if (!resp.ok) {
      const rejection = body as MoveRejection;
      throw new EngineError(rejection.error ?? 'engine error', resp.status, rejection.reason);
    }
    return parseEnvelope(body);
  }

  position(): Promise<Envelope> {
    return this.enqueue(() => this.request('/position'));
  }

  move(edge: number): Promise<Envelope> {
    return this.enqueue(() =>
      this.request('/move', {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ edge }),
      }),
    );
  }

  newGame(position: PositionPayload): Promise<Envelope> {
    return this.enqueue(() =>
      this.request('/new', {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ position }),
      }),
    );
  }

  async hint(): Promise<number | null> {
    return this.enqueue(async () => {
      const resp = await fetch(this.base + '/hint');
      const body = (await resp.json()) as { edge: number | null; error?: string };
      if (!resp.ok) {
        throw new EngineError(body.error ?? 'engine error', resp.status);
      }
      return body.edge;
    });
  }

  async legal(): Promise<number[]> {
    return this.enqueue(async () => {
      const resp = await fetch(this.base + '/legal');
      const body = (await resp.json()) as { edges: number[]; error?: string };
      if (!resp.ok) {
        throw new EngineError(body.error ?? 'engine error', resp.status);
      }
      return body.edges;
    });
  }
}
