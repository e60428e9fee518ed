// DOM wiring: controls on the left, SVG canvas in the middle, flows tab.
// All interactivity is client-side over the static bundle.

import { applyFilters } from "./filters.js";
import { computeLayout } from "./layout.js";
import { LoadError, Model, loadBundle, maxEdgeWeight } from "./model.js";
import { flowView, periodPairCount } from "./sankey.js";
import { ViewState } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 800;
const HEIGHT = 600;

export class ViewerApp {
  readonly state: ViewState = {
    minEdgeWeight: 0,
    enabledTypes: new Set<string>(),
    showIsolated: true,
    searchQuery: "",
    layout: "force",
    activePeriodPair: 0,
  };
  model: Model | null = null;

  constructor(private readonly root: HTMLElement) {
    this.root.innerHTML = `
      <div class="banner" hidden></div>
      <div class="controls">
        <label>min edge weight
          <input type="range" class="weight-slider" min="0" max="1" step="1" value="0">
          <span class="weight-value">0</span>
        </label>
        <fieldset class="type-toggles"><legend>entity types</legend></fieldset>
        <label><input type="checkbox" class="show-isolated" checked> show isolated</label>
        <input type="search" class="search" placeholder="search labels">
        <select class="layout-choice">
          <option value="force">force</option>
          <option value="circular">circular</option>
        </select>
        <select class="period-pair" disabled></select>
      </div>
      <div class="status"></div>
      <svg class="graph-canvas" width="${WIDTH}" height="${HEIGHT}"></svg>
      <svg class="sankey-canvas" width="${WIDTH}" height="400"></svg>
      <div class="sankey-notice" hidden></div>
    `;
    this.bind();
  }

  private q<T extends Element>(selector: string): T {
    const el = this.root.querySelector<T>(selector);
    if (!el) throw new Error(`missing element: ${selector}`);
    return el;
  }

  private bind(): void {
    this.q<HTMLInputElement>(".weight-slider").addEventListener("input", (e) => {
      this.state.minEdgeWeight = Number((e.target as HTMLInputElement).value);
      this.render();
    });
    this.q<HTMLInputElement>(".show-isolated").addEventListener("change", (e) => {
      this.state.showIsolated = (e.target as HTMLInputElement).checked;
      this.render();
    });
    this.q<HTMLInputElement>(".search").addEventListener("input", (e) => {
      this.state.searchQuery = (e.target as HTMLInputElement).value;
      this.render();
    });
    this.q<HTMLSelectElement>(".layout-choice").addEventListener("change", (e) => {
      this.state.layout = (e.target as HTMLSelectElement).value as "force" | "circular";
      this.render();
    });
    this.q<HTMLSelectElement>(".period-pair").addEventListener("change", (e) => {
      this.state.activePeriodPair = Number((e.target as HTMLSelectElement).value);
      this.renderSankey();
    });
  }

  showBanner(message: string): void {
    const banner = this.q<HTMLElement>(".banner");
    banner.textContent = message;
    banner.hidden = false;
  }

  async load(graphUrl: string, sankeyUrl: string, fetchFn: typeof fetch = fetch): Promise<void> {
    try {
      this.model = await loadBundle(graphUrl, sankeyUrl, fetchFn);
    } catch (err) {
      if (err instanceof LoadError) {
        this.showBanner(err.message);
        return;
      }
      throw err;
    }
    this.initControls();
    this.render();
    this.renderSankey();
  }

  private initControls(): void {
    if (!this.model) return;
    const types = new Set<string>();
    for (const n of this.model.graph.nodes) {
      for (const t of n.type.split("|")) types.add(t);
    }
    const fieldset = this.q<HTMLElement>(".type-toggles");
    for (const t of [...types].sort()) {
      this.state.enabledTypes.add(t);
      const label = this.root.ownerDocument.createElement("label");
      const box = this.root.ownerDocument.createElement("input");
      box.type = "checkbox";
      box.checked = true;
      box.dataset.type = t;
      box.addEventListener("change", () => {
        if (box.checked) this.state.enabledTypes.add(t);
        else this.state.enabledTypes.delete(t);
        this.render();
      });
      label.append(box, t);
      fieldset.append(label);
    }

    const slider = this.q<HTMLInputElement>(".weight-slider");
    slider.max = String(maxEdgeWeight(this.model));

    const pairSelect = this.q<HTMLSelectElement>(".period-pair");
    if (this.model.sankey && periodPairCount(this.model.sankey) > 0) {
      const periods = this.model.sankey.periods;
      for (let i = 0; i < periods.length - 1; i++) {
        const opt = this.root.ownerDocument.createElement("option");
        opt.value = String(i);
        opt.textContent = `${periods[i].label} → ${periods[i + 1].label}`;
        pairSelect.append(opt);
      }
      pairSelect.disabled = false;
    } else {
      const notice = this.q<HTMLElement>(".sankey-notice");
      notice.textContent = "no temporal flows in this bundle";
      notice.hidden = false;
    }
  }

  render(): void {
    if (!this.model) return;
    const view = applyFilters(this.model, this.state);
    const positions = computeLayout(view.nodes, view.edges, this.state.layout, WIDTH, HEIGHT);

    this.q<HTMLElement>(".weight-value").textContent = String(this.state.minEdgeWeight);
    this.q<HTMLElement>(".status").textContent =
      `${view.nodes.length} nodes, ${view.edges.length} edges`;

    const svg = this.q<SVGSVGElement>(".graph-canvas");
    svg.innerHTML = "";
    const doc = this.root.ownerDocument;
    for (const e of view.edges) {
      const a = positions.get(e.source);
      const b = positions.get(e.target);
      if (!a || !b) continue;
      const line = doc.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "edge");
      line.setAttribute("x1", String(a.x));
      line.setAttribute("y1", String(a.y));
      line.setAttribute("x2", String(b.x));
      line.setAttribute("y2", String(b.y));
      line.setAttribute("stroke-width", String(Math.sqrt(e.weight)));
      svg.append(line);
    }
    const dimming = view.highlighted.size > 0;
    for (const n of view.nodes) {
      const p = positions.get(n.id);
      if (!p) continue;
      const g = doc.createElementNS(SVG_NS, "g");
      const match = view.highlighted.has(n.id);
      g.setAttribute("class", `node${dimming ? (match ? " highlight" : " dimmed") : ""}`);
      g.dataset.nodeId = String(n.id);
      const circle = doc.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", String(4 + Math.sqrt(n.freq)));
      const text = doc.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(p.x + 8));
      text.setAttribute("y", String(p.y + 4));
      text.textContent = n.label;
      g.append(circle, text);
      svg.append(g);
    }
  }

  renderSankey(): void {
    if (!this.model?.sankey || periodPairCount(this.model.sankey) === 0) return;
    const svg = this.q<SVGSVGElement>(".sankey-canvas");
    svg.innerHTML = "";
    const doc = this.root.ownerDocument;
    const height = 360;
    const view = flowView(this.model.sankey, this.state.activePeriodPair, height);

    if (view.ribbons.length === 0) {
      const text = doc.createElementNS(SVG_NS, "text");
      text.setAttribute("class", "no-flows");
      text.setAttribute("x", String(WIDTH / 2));
      text.setAttribute("y", "180");
      text.textContent = "no flows";
      svg.append(text);
      return;
    }

    const leftX = 80;
    const rightX = WIDTH - 120;
    for (const [boxes, x] of [
      [view.left, leftX],
      [view.right, rightX],
    ] as const) {
      for (const box of boxes) {
        const rect = doc.createElementNS(SVG_NS, "rect");
        rect.setAttribute("class", "flow-node");
        rect.setAttribute("x", String(x));
        rect.setAttribute("y", String(box.y0 + 20));
        rect.setAttribute("width", "16");
        rect.setAttribute("height", String(Math.max(1, box.y1 - box.y0)));
        svg.append(rect);
        const label = doc.createElementNS(SVG_NS, "text");
        label.setAttribute("x", String(x === leftX ? x - 8 : x + 24));
        label.setAttribute("y", String((box.y0 + box.y1) / 2 + 24));
        if (x === leftX) label.setAttribute("text-anchor", "end");
        label.textContent = box.term;
        svg.append(label);
      }
    }
    for (const ribbon of view.ribbons) {
      const path = doc.createElementNS(SVG_NS, "path");
      path.setAttribute("class", "ribbon");
      const x0 = leftX + 16;
      const x1 = rightX;
      const mid = (x0 + x1) / 2;
      const d =
        `M ${x0} ${ribbon.sourceY0 + 20} ` +
        `C ${mid} ${ribbon.sourceY0 + 20}, ${mid} ${ribbon.targetY0 + 20}, ${x1} ${ribbon.targetY0 + 20} ` +
        `L ${x1} ${ribbon.targetY1 + 20} ` +
        `C ${mid} ${ribbon.targetY1 + 20}, ${mid} ${ribbon.sourceY1 + 20}, ${x0} ${ribbon.sourceY1 + 20} Z`;
      path.setAttribute("d", d);
      const title = doc.createElementNS(SVG_NS, "title");
      title.textContent = `${ribbon.link.entities.join(", ")} (${ribbon.link.value})`;
      path.append(title);
      svg.append(path);
    }
  }
}

export function mount(root: HTMLElement, graphUrl = "graph.json", sankeyUrl = "sankey.json"): ViewerApp {
  const app = new ViewerApp(root);
  void app.load(graphUrl, sankeyUrl);
  return app;
}
