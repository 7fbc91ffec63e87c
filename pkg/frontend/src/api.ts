// Wire types mirroring the service's JSON responses.

export type Mention = {
  start: number;
  end: number;
  surface: string;
  etype: string;
  is_class: boolean;
  canonical: string | null;
  distance: number;
};

export type Token = {
  index: number;
  text: string;
  is_entity: boolean;
};

export type DependencyRow = {
  order: number;
  subject: string;
  object: string;
  code: string;
  name: string;
};

export type DependencyTable = {
  part: string;
  rows: DependencyRow[];
};

export type QueryNode = {
  named_entity: string;
  instance: string;
  etype: string;
  part: string;
  answer: boolean;
  constraint: string | null;
};

export type QueryRelation = {
  source: string;
  label: string;
  target: string;
};

export type StageError = {
  stage: string;
  message: string;
  token: string | null;
};

export type Analysis = {
  query: string;
  mentions: Mention[];
  tokens: Token[];
  pivot: string | null;
  tables: DependencyTable[];
  nodes: QueryNode[];
  relations: QueryRelation[];
  emitted: string | null;
  answer_instance: string | null;
  timings_ms: Record<string, number>;
  error: StageError | null;
};

export type ResultRow = {
  id: number;
  name: string;
  etype: string;
  year: number | null;
};

export type SearchPayload = {
  analysis: Analysis;
  rows: ResultRow[];
  match_count: number;
  total_ms: number;
};

// A query the pipeline could not interpret; carries every stage that
// completed so the partial analysis can still be rendered.
export class PipelineFailure extends Error {
  constructor(readonly analysis: Analysis) {
    super(analysis.error ? analysis.error.message : "query failed");
    this.name = "PipelineFailure";
  }

  get stage(): string {
    return this.analysis.error?.stage ?? "unknown";
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  analyze(query: string): Promise<Analysis> {
    return this.post<Analysis>("/analyze", { query });
  }

  search(query: string, limit?: number): Promise<SearchPayload> {
    const body = limit == null ? { query } : { query, limit };
    return this.post<SearchPayload>("/search", body);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (response.status === 422) {
      const payload = (await response.json()) as Analysis;
      if (payload.error) {
        throw new PipelineFailure(payload);
      }
      throw new Error("the service rejected the request");
    }
    if (!response.ok) {
      throw new Error(`request failed with status ${response.status}`);
    }
    return (await response.json()) as T;
  }
}
