import type { Envelope, PositionPayload } from '../src/types.js';

// The engine's goal gadget on the general backend: four blue edges plus one
// disjoint red companion.
export const GOAL_GADGET: PositionPayload = {
  vertices: [0, 1, 2, 3, 4, 5, 6].map((id) => ({ id, coord: null })),
  edges: [
    { id: 0, u: 1, v: 0, colour: 'blue', label: 'I' },
    { id: 1, u: 1, v: 2, colour: 'blue', label: 'A' },
    { id: 2, u: 1, v: 3, colour: 'blue', label: null },
    { id: 3, u: 5, v: 6, colour: 'red', label: null },
    { id: 4, u: 2, v: 4, colour: 'blue', label: 'G' },
  ],
  lattice: 'none',
  convention: 'misere',
  to_move: 'blue',
};

export const BRB_PATH: PositionPayload = {
  vertices: [0, 1, 2, 3].map((id) => ({ id, coord: null })),
  edges: [
    { id: 0, u: 0, v: 1, colour: 'blue', label: null },
    { id: 1, u: 1, v: 2, colour: 'red', label: null },
    { id: 2, u: 2, v: 3, colour: 'blue', label: null },
  ],
  lattice: 'none',
  convention: 'misere',
  to_move: 'blue',
};

export const EMPTY_MISERE: PositionPayload = {
  vertices: [{ id: 0, coord: null }, { id: 1, coord: null }],
  edges: [],
  lattice: 'none',
  convention: 'misere',
  to_move: 'blue',
};

export function envelopeOf(position: PositionPayload, legal: number[],
                           terminal = false,
                           winner: 'blue' | 'red' | null = null): Envelope {
  return { position, legal, terminal, winner };
}
