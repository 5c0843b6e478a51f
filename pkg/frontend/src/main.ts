import { EngineClient } from './client.js';
import { PlayUi } from './ui.js';
import type { PlayerColour } from './types.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('engine') ?? 'http://127.0.0.1:8631';
const human = (params.get('side') ?? 'blue') as PlayerColour;

const svg = document.getElementById('board') as unknown as SVGSVGElement;
const banner = document.getElementById('banner') as HTMLElement;
const hintButton = document.getElementById('hint') as HTMLButtonElement;

const ui = new PlayUi(new EngineClient(base), human, svg, banner);
hintButton.addEventListener('click', () => void ui.requestHint());
void ui.refresh();
