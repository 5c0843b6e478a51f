import type { Envelope, PositionPayload, PlayerColour } from './types.js';

export type EdgeState = 'available-own' | 'available-opponent' | 'removed';

export type RenderedVertex = {
  id: number;
  x: number;
  y: number;
  alive: boolean;
};

export type RenderedEdge = {
  id: number;
  from: RenderedVertex;
  to: RenderedVertex;
  colour: 'blue' | 'red' | 'either';
  label: string | null;
  state: EdgeState;
};

export type BoardView = {
  vertices: RenderedVertex[];
  edges: RenderedEdge[];
  toMove: PlayerColour;
  convention: 'normal' | 'misere';
  terminal: boolean;
  winner: PlayerColour | null;
};

const SCALE = 60;
const SQRT3_2 = Math.sqrt(3) / 2;

/** Map lattice coordinates to the plane; axial triangular coordinates use
 * the basis (1, 0), (1/2, sqrt(3)/2). Coordinate-free graphs go on a circle. */
export function layoutVertices(position: PositionPayload): Map<number, { x: number; y: number }> {
  const out = new Map<number, { x: number; y: number }>();
  const missing = position.vertices.filter((v) => v.coord === null);
  if (missing.length === 0 && position.vertices.length > 0) {
    for (const v of position.vertices) {
      const [cx, cy] = v.coord as [number, number];
      if (position.lattice === 'triangular') {
        out.set(v.id, { x: (cx + cy / 2) * SCALE, y: -cy * SQRT3_2 * SCALE });
      } else {
        out.set(v.id, { x: cx * SCALE, y: -cy * SCALE });
      }
    }
    return out;
  }
  const n = Math.max(position.vertices.length, 1);
  const radius = SCALE * Math.max(2, n / 3);
  position.vertices.forEach((v, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    out.set(v.id, {
      x: radius * Math.cos(angle),
      y: radius * Math.sin(angle),
    });
  });
  return out;
}

/** Pure projection of the latest server envelope; no game rules live here. */
export function projectBoard(envelope: Envelope, human: PlayerColour): BoardView {
  const position = envelope.position;
  const placed = layoutVertices(position);
  const legal = new Set(envelope.legal);
  const vertices: RenderedVertex[] = position.vertices.map((v) => ({
    id: v.id,
    x: placed.get(v.id)?.x ?? 0,
    y: placed.get(v.id)?.y ?? 0,
    alive: true,
  }));
  const byId = new Map(vertices.map((v) => [v.id, v]));
  const edges: RenderedEdge[] = position.edges.map((e) => {
    const mine =
      e.colour === 'either' || e.colour === (position.to_move as string);
    const playableNow = legal.has(e.id);
    let state: EdgeState;
    if (envelope.terminal) {
      state = 'removed';
    } else if (playableNow && position.to_move === human && mine) {
      state = 'available-own';
    } else {
      state = 'available-opponent';
    }
    return {
      id: e.id,
      from: byId.get(e.u)!,
      to: byId.get(e.v)!,
      colour: e.colour,
      label: e.label,
      state,
    };
  });
  return {
    vertices,
    edges,
    toMove: position.to_move,
    convention: position.convention,
    terminal: envelope.terminal,
    winner: envelope.winner,
  };
}

/** Client-side pre-check only; the server remains authoritative. */
export function mayClick(view: BoardView, edgeId: number, human: PlayerColour): boolean {
  if (view.terminal || view.toMove !== human) return false;
  const edge = view.edges.find((e) => e.id === edgeId);
  if (!edge) return false;
  return edge.colour === 'either' || edge.colour === human;
}

export class SchemaError extends Error {}

export function parseEnvelope(raw: unknown): Envelope {
  const body = raw as Envelope;
  if (
    !body ||
    typeof body !== 'object' ||
    !body.position ||
    !Array.isArray(body.position.edges) ||
    !Array.isArray(body.position.vertices) ||
    !Array.isArray(body.legal) ||
    typeof body.terminal !== 'boolean'
  ) {
    throw new SchemaError('payload does not match the position schema');
  }
  for (const e of body.position.edges) {
    if (
      typeof e.id !== 'number' ||
      typeof e.u !== 'number' ||
      typeof e.v !== 'number' ||
      !['blue', 'red', 'either'].includes(e.colour)
    ) {
      throw new SchemaError(`edge ${JSON.stringify(e)} is malformed`);
    }
  }
  return body;
}
