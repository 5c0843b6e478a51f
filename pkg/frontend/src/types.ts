export type Colour = 'blue' | 'red' | 'either';
export type PlayerColour = 'blue' | 'red';
export type Convention = 'normal' | 'misere';
export type LatticeKind = 'none' | 'cartesian' | 'triangular';

export type VertexPayload = {
  id: number;
  coord: [number, number] | null;
};

export type EdgePayload = {
  id: number;
  u: number;
  v: number;
  colour: Colour;
  label: string | null;
};

// Matches the engine's position schema byte for byte.
export type PositionPayload = {
  vertices: VertexPayload[];
  edges: EdgePayload[];
  lattice: LatticeKind;
  convention: Convention;
  to_move: PlayerColour;
};

export type Envelope = {
  position: PositionPayload;
  legal: number[];
  terminal: boolean;
  winner: PlayerColour | null;
};

export type MoveRejection = {
  error: string;
  reason?: string;
};
