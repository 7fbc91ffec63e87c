// DOM builders for every pane except the diagram; each one is a pure
// function from a response fragment to an element.

import { DependencyTable, Mention, SearchPayload, StageError } from "./api.js";

const TABLE_HEADERS = ["Order", "Subject", "Object", "Relation Code", "Relation Name"];

function buildTable(className: string, headers: string[], rows: string[][]): HTMLTableElement {
  const table = document.createElement("table");
  table.className = className;
  const head = document.createElement("thead");
  const headRow = document.createElement("tr");
  for (const header of headers) {
    const cell = document.createElement("th");
    cell.textContent = header;
    headRow.appendChild(cell);
  }
  head.appendChild(headRow);
  table.appendChild(head);

  const body = document.createElement("tbody");
  for (const row of rows) {
    const line = document.createElement("tr");
    for (const value of row) {
      const cell = document.createElement("td");
      cell.textContent = value;
      line.appendChild(cell);
    }
    body.appendChild(line);
  }
  table.appendChild(body);
  return table;
}

export function renderMentionChips(mentions: Mention[]): HTMLUListElement {
  const list = document.createElement("ul");
  list.className = "chips";
  for (const mention of mentions) {
    const chip = document.createElement("li");
    chip.className = mention.is_class ? "chip chip-class" : "chip";
    chip.dataset.etype = mention.etype;
    chip.textContent = mention.surface;
    chip.title =
      mention.distance > 0 && mention.canonical
        ? `${mention.etype}, matched "${mention.canonical}"`
        : mention.etype;
    list.appendChild(chip);
  }
  return list;
}

export function renderDependencyTables(tables: DependencyTable[]): HTMLElement {
  const container = document.createElement("div");
  container.className = "dependency-tables";
  for (const table of tables) {
    const section = document.createElement("section");
    const heading = document.createElement("h3");
    heading.textContent = `dependency relations (${table.part})`;
    section.appendChild(heading);

    const rows = table.rows.map((row) => [
      String(row.order), row.subject, row.object, row.code, row.name,
    ]);
    section.appendChild(buildTable("dependency-table", TABLE_HEADERS, rows));
    container.appendChild(section);
  }
  return container;
}

export function renderEmitted(text: string): HTMLPreElement {
  const pane = document.createElement("pre");
  pane.className = "emitted";
  pane.textContent = text;
  return pane;
}

export function renderResults(payload: SearchPayload): HTMLElement {
  const container = document.createElement("div");
  container.className = "results-view";

  const count = document.createElement("p");
  count.className = "result-count";
  count.textContent = `${payload.match_count} match(es) in ${payload.total_ms.toFixed(1)} ms`;
  container.appendChild(count);

  if (payload.rows.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No entities match this query.";
    container.appendChild(empty);
    return container;
  }

  const rows = payload.rows.map((row) => [
    row.name, row.etype, row.year == null ? "" : String(row.year),
  ]);
  container.appendChild(buildTable("results-table", ["Name", "Type", "Year"], rows));
  return container;
}

export function renderErrorBanner(error: StageError): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "banner banner-error";
  const where = error.token ? `error at stage ${error.stage} (token '${error.token}')` : `error at stage ${error.stage}`;
  banner.textContent = `${where}: ${error.message}`;
  return banner;
}

export function renderRetryBanner(message: string): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "banner banner-retry";
  banner.textContent = `service unreachable (${message}); the query was kept, try again`;
  return banner;
}

export function renderNotice(message: string): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "banner banner-notice";
  banner.textContent = message;
  return banner;
}
