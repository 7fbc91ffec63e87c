// Controller wiring the query form to the analysis and results panes.
// Two explicit actions: Analyze interprets the query, Results executes
// it. At most the latest request per action is rendered; responses for
// superseded queries are dropped.

import { Analysis, ApiClient, PipelineFailure, SearchPayload } from "./api.js";
import { renderDiagram } from "./diagram.js";
import {
  renderDependencyTables,
  renderEmitted,
  renderErrorBanner,
  renderMentionChips,
  renderNotice,
  renderResults,
  renderRetryBanner,
} from "./views.js";

export type Service = Pick<ApiClient, "analyze" | "search">;

function replaceContent(pane: HTMLElement, child: Element | null): void {
  pane.innerHTML = "";
  if (child) {
    pane.appendChild(child);
  }
}

export class App {
  private analyzeSeq = 0;
  private searchSeq = 0;

  constructor(private readonly doc: Document, private readonly service: Service) {}

  mount(): void {
    const form = this.doc.getElementById("query-form") as HTMLFormElement;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitQuery();
    });
    const results = this.doc.getElementById("results-button") as HTMLButtonElement;
    results.addEventListener("click", () => void this.fetchResults());
  }

  currentQuery(): string {
    const input = this.doc.getElementById("query-input") as HTMLInputElement;
    return input.value.trim();
  }

  async submitQuery(): Promise<void> {
    const query = this.currentQuery();
    if (!query) {
      this.showBanner(renderNotice("Type a query first."));
      return;
    }
    const seq = ++this.analyzeSeq;
    try {
      const analysis = await this.service.analyze(query);
      if (seq !== this.analyzeSeq) {
        return;
      }
      this.showBanner(null);
      this.renderAnalysis(analysis);
    } catch (err) {
      if (seq !== this.analyzeSeq) {
        return;
      }
      this.renderFailure(err);
    }
  }

  async fetchResults(): Promise<void> {
    const query = this.currentQuery();
    if (!query) {
      this.showBanner(renderNotice("Type a query first."));
      return;
    }
    const seq = ++this.searchSeq;
    try {
      const payload = await this.service.search(query);
      if (seq !== this.searchSeq) {
        return;
      }
      this.showBanner(null);
      this.renderAnalysis(payload.analysis);
      this.renderSearch(payload);
    } catch (err) {
      if (seq !== this.searchSeq) {
        return;
      }
      this.renderFailure(err);
    }
  }

  private renderFailure(err: unknown): void {
    if (err instanceof PipelineFailure) {
      // Render whatever stages completed, then say where it stopped.
      this.renderAnalysis(err.analysis);
      if (err.analysis.error) {
        this.showBanner(renderErrorBanner(err.analysis.error));
      }
      return;
    }
    const message = err instanceof Error ? err.message : String(err);
    this.showBanner(renderRetryBanner(message));
  }

  private renderAnalysis(analysis: Analysis): void {
    replaceContent(this.pane("chips"), renderMentionChips(analysis.mentions));
    replaceContent(this.pane("tables"), renderDependencyTables(analysis.tables));
    const diagram = analysis.nodes.length > 0 ? renderDiagram(analysis.nodes, analysis.relations) : null;
    replaceContent(this.pane("diagram"), diagram);
    replaceContent(this.pane("emitted"), analysis.emitted ? renderEmitted(analysis.emitted) : null);
  }

  private renderSearch(payload: SearchPayload): void {
    replaceContent(this.pane("results"), renderResults(payload));
  }

  private showBanner(banner: Element | null): void {
    replaceContent(this.pane("banner"), banner);
  }

  private pane(id: string): HTMLElement {
    return this.doc.getElementById(id) as HTMLElement;
  }
}

export function bootstrap(): void {
  if (!document.getElementById("query-form")) {
    return;
  }
  new App(document, new ApiClient()).mount();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", bootstrap);
}
