// Colour-blind-safe palette (Okabe-Ito); colour is the entire game signal,
// so each side also gets a distinct stroke pattern.
export const PALETTE = {
  blue: { stroke: '#0072B2', dash: '' },
  red: { stroke: '#D55E00', dash: '7 4' },
  either: { stroke: '#009E73', dash: '2 5' },
  removed: { stroke: '#BBBBBB', dash: '1 6' },
  hint: '#F0E442',
  vertex: '#333333',
  vertexDead: '#DDDDDD',
} as const;

export function strokeFor(colour: 'blue' | 'red' | 'either'): {
  stroke: string;
  dash: string;
} {
  return PALETTE[colour];
}
