import { bannerFor, errorBanner, type Banner } from './banner.js';
import { mayClick, projectBoard, type BoardView } from './board.js';
import { EngineClient, EngineError } from './client.js';
import { hashPayload } from './hash.js';
import { PALETTE, strokeFor } from './palette.js';
import type { Envelope, PlayerColour } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export type UiState = {
  envelope: Envelope | null;
  view: BoardView | null;
  hint: number | null;
  lastHash: string;
};

export class PlayUi {
  readonly state: UiState = { envelope: null, view: null, hint: null, lastHash: '' };

  constructor(
    private readonly client: EngineClient,
    private readonly human: PlayerColour,
    private readonly svg: SVGSVGElement,
    private readonly bannerEl: HTMLElement,
  ) {}

  async refresh(): Promise<void> {
    try {
      const envelope = await this.client.position();
      await this.accept(envelope);
    } catch (err) {
      this.showBanner(errorBanner(describe(err)));
    }
  }

  private async accept(envelope: Envelope): Promise<void> {
    this.state.envelope = envelope;
    this.state.view = projectBoard(envelope, this.human);
    this.state.hint = null;
    this.state.lastHash = await hashPayload(envelope.position);
    this.showBanner(bannerFor(envelope, this.human));
    this.render();
  }

  async clickEdge(edgeId: number): Promise<void> {
    const view = this.state.view;
    if (!view) return;
    if (!mayClick(view, edgeId, this.human)) {
      this.tooltip(edgeId, 'not your edge');
      return;
    }
    try {
      const envelope = await this.client.move(edgeId);
      await this.accept(envelope);
    } catch (err) {
      if (err instanceof EngineError && err.status === 400) {
        this.shake(edgeId, err.reason ?? err.message);
      } else {
        this.showBanner(errorBanner(describe(err) + ' — retry?'));
      }
    }
  }

  async requestHint(): Promise<void> {
    try {
      this.state.hint = await this.client.hint();
      this.render();
    } catch (err) {
      this.showBanner(errorBanner(describe(err)));
    }
  }

  private showBanner(banner: Banner): void {
    this.bannerEl.textContent = banner.text;
    this.bannerEl.dataset.kind = banner.kind;
  }

  private tooltip(edgeId: number, text: string): void {
    const el = this.svg.querySelector(`[data-edge="${edgeId}"]`);
    if (el) el.setAttribute('data-tooltip', text);
  }

  private shake(edgeId: number, reason: string): void {
    const el = this.svg.querySelector(`[data-edge="${edgeId}"]`);
    if (el) {
      el.classList.add('shake');
      el.setAttribute('data-tooltip', reason);
      setTimeout(() => el.classList.remove('shake'), 400);
    }
  }

  render(): void {
    const view = this.state.view;
    if (!view) return;
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    const xs = view.vertices.map((v) => v.x);
    const ys = view.vertices.map((v) => v.y);
    const pad = 50;
    const minX = Math.min(...xs, 0) - pad;
    const minY = Math.min(...ys, 0) - pad;
    const width = Math.max(...xs, 0) - minX + pad;
    const height = Math.max(...ys, 0) - minY + pad;
    this.svg.setAttribute('viewBox', `${minX} ${minY} ${width} ${height}`);

    for (const edge of view.edges) {
      const line = document.createElementNS(SVG_NS, 'line');
      line.setAttribute('x1', String(edge.from.x));
      line.setAttribute('y1', String(edge.from.y));
      line.setAttribute('x2', String(edge.to.x));
      line.setAttribute('y2', String(edge.to.y));
      const style = strokeFor(edge.colour);
      line.setAttribute('stroke', style.stroke);
      if (style.dash) line.setAttribute('stroke-dasharray', style.dash);
      line.setAttribute('stroke-width', edge.id === this.state.hint ? '9' : '5');
      if (edge.id === this.state.hint) {
        line.setAttribute('filter', `drop-shadow(0 0 6px ${PALETTE.hint})`);
      }
      line.setAttribute('data-edge', String(edge.id));
      line.style.cursor = edge.state === 'available-own' ? 'pointer' : 'not-allowed';
      line.addEventListener('click', () => void this.clickEdge(edge.id));
      this.svg.appendChild(line);
    }
    for (const vertex of view.vertices) {
      const dot = document.createElementNS(SVG_NS, 'circle');
      dot.setAttribute('cx', String(vertex.x));
      dot.setAttribute('cy', String(vertex.y));
      dot.setAttribute('r', '7');
      dot.setAttribute('fill', vertex.alive ? PALETTE.vertex : PALETTE.vertexDead);
      this.svg.appendChild(dot);
    }
  }
}

function describe(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
