import type { Envelope, PlayerColour } from './types.js';

export type Banner = {
  kind: 'turn' | 'win' | 'loss' | 'error';
  text: string;
};

/** Turn and winner banners; the misere win text appears exactly when the
 * server reports a terminal position whose mover is the winner. */
export function bannerFor(envelope: Envelope, human: PlayerColour): Banner {
  if (!envelope.terminal) {
    const yours = envelope.position.to_move === human;
    return {
      kind: 'turn',
      text: yours ? 'Your turn' : "Engine's turn",
    };
  }
  const winner = envelope.winner;
  const moverWon = winner === envelope.position.to_move;
  if (winner === human) {
    return {
      kind: 'win',
      text: moverWon
        ? 'You win — no edges of your colour remain at your turn'
        : 'You win — the engine has run out of moves',
    };
  }
  return {
    kind: 'loss',
    text: moverWon
      ? 'You lose — the engine ran out of edges first'
      : 'You lose — you have no move left',
  };
}

export function errorBanner(message: string): Banner {
  return { kind: 'error', text: message };
}
