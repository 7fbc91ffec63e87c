import { beforeEach, describe, expect, it, vi } from "vitest";

import { Analysis, PipelineFailure, SearchPayload } from "../src/api.js";
import { App, Service } from "../src/app.js";
import demoAnalyze from "./fixtures/demo_analyze.json";
import demoSearch from "./fixtures/demo_search.json";
import parseError from "./fixtures/parse_error.json";
import termsAnalyze from "./fixtures/terms_analyze.json";

const demo = demoAnalyze as Analysis;
const terms = termsAnalyze as Analysis;
const failed = parseError as Analysis;
const search = demoSearch as SearchPayload;

const PAGE = `
  <form id="query-form">
    <input id="query-input" type="text">
    <button id="analyze-button" type="submit">Analyze</button>
  </form>
  <button id="results-button" type="button">Results</button>
  <div id="banner"></div>
  <div id="chips"></div>
  <div id="tables"></div>
  <div id="diagram"></div>
  <div id="emitted"></div>
  <div id="results"></div>
`;

function setup(overrides: Partial<Service> = {}): { app: App; service: Service } {
  document.body.innerHTML = PAGE;
  const service: Service = {
    analyze: vi.fn().mockResolvedValue(demo),
    search: vi.fn().mockResolvedValue(search),
    ...overrides,
  };
  const app = new App(document, service);
  app.mount();
  return { app, service };
}

function input(): HTMLInputElement {
  return document.getElementById("query-input") as HTMLInputElement;
}

function pane(id: string): HTMLElement {
  return document.getElementById(id) as HTMLElement;
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("analyze action", () => {
  it("validates empty input without calling the service", async () => {
    const { app, service } = setup();
    await app.submitQuery();
    expect(service.analyze).not.toHaveBeenCalled();
    expect(pane("banner").textContent).toContain("Type a query first.");
  });

  it("fills every analysis pane on success", async () => {
    const { app } = setup();
    input().value = demo.query;
    await app.submitQuery();
    expect(pane("chips").querySelectorAll(".chip").length).toBe(5);
    expect(pane("tables").querySelectorAll("table").length).toBe(2);
    expect(pane("diagram").querySelectorAll("g.node").length).toBe(5);
    expect(pane("emitted").textContent).toContain("MATCH ");
    expect(pane("banner").textContent).toBe("");
  });

  it("keeps the finished stages and names the failing one", async () => {
    const { app } = setup({
      analyze: vi.fn().mockRejectedValue(new PipelineFailure(failed)),
    });
    input().value = failed.query;
    await app.submitQuery();
    expect(pane("banner").textContent).toContain("error at stage parse");
    expect(pane("chips").querySelectorAll(".chip").length).toBe(2);
    expect(pane("diagram").innerHTML).toBe("");
    expect(input().value).toBe(failed.query);
  });

  it("offers a retry on network failure and keeps the query", async () => {
    const { app } = setup({
      analyze: vi.fn().mockRejectedValue(new TypeError("fetch failed")),
    });
    input().value = "papers about ontology";
    await app.submitQuery();
    expect(pane("banner").querySelector(".banner-retry")?.textContent).toContain("try again");
    expect(input().value).toBe("papers about ontology");
  });

  it("drops responses for superseded queries", async () => {
    const resolvers: Array<(analysis: Analysis) => void> = [];
    const { app } = setup({
      analyze: vi.fn(() => new Promise<Analysis>((resolve) => resolvers.push(resolve))),
    });
    input().value = terms.query;
    const first = app.submitQuery();
    input().value = demo.query;
    const second = app.submitQuery();

    resolvers[1](demo);
    await second;
    resolvers[0](terms);
    await first;
    expect(pane("chips").querySelectorAll(".chip").length).toBe(demo.mentions.length);
  });

  it("is wired to the form submit event", () => {
    const { service } = setup();
    input().value = demo.query;
    const form = document.getElementById("query-form") as HTMLFormElement;
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(service.analyze).toHaveBeenCalledWith(demo.query);
  });
});

describe("results action", () => {
  it("renders the recorded rows with the match count", async () => {
    const { app } = setup();
    input().value = demo.query;
    await app.fetchResults();
    const names = Array.from(
      pane("results").querySelectorAll("tbody tr td:first-child"),
      (cell) => cell.textContent,
    );
    expect(names).toEqual([
      "Margin Classifiers Revisited",
      "Boosting for Noisy Labels",
      "Feature Selection Benchmarks",
    ]);
    expect(pane("results").textContent).toContain("3 match(es)");
  });

  it("shows the empty state when nothing matches", async () => {
    const { app } = setup({
      search: vi.fn().mockResolvedValue({ ...search, rows: [], match_count: 0 }),
    });
    input().value = "papers about ontology";
    await app.fetchResults();
    expect(pane("results").querySelector(".empty-state")).not.toBeNull();
  });
});
