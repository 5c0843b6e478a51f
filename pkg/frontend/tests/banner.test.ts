import { describe, expect, it } from 'vitest';

import { bannerFor } from '../src/banner.js';
import { BRB_PATH, EMPTY_MISERE, envelopeOf } from './fixtures.js';

describe('bannerFor', () => {
  it('announces the turn while the game runs', () => {
    expect(bannerFor(envelopeOf(BRB_PATH, [0, 2]), 'blue').text).toBe('Your turn');
    expect(bannerFor(envelopeOf(BRB_PATH, [0, 2]), 'red').kind).toBe('turn');
  });

  it('shows the misere win text exactly when the mover is the winner', () => {
    const envelope = envelopeOf(EMPTY_MISERE, [], true, 'blue');
    const banner = bannerFor(envelope, 'blue');
    expect(banner.kind).toBe('win');
    expect(banner.text).toBe(
      'You win — no edges of your colour remain at your turn',
    );
  });

  it('empty misere position reports an immediate winner', () => {
    // blue to move with nothing on the board: misere makes the mover win
    const envelope = envelopeOf(EMPTY_MISERE, [], true, 'blue');
    expect(bannerFor(envelope, 'red').kind).toBe('loss');
    expect(bannerFor(envelope, 'blue').kind).toBe('win');
  });

  it('distinguishes the normal-play loss wording', () => {
    const normal = {
      ...EMPTY_MISERE,
      convention: 'normal' as const,
    };
    const envelope = envelopeOf(normal, [], true, 'red');
    const banner = bannerFor(envelope, 'blue');
    expect(banner.kind).toBe('loss');
    expect(banner.text).toContain('no move left');
  });
});
