/**
 * GET-only API client with a cache keyed by the full request URL.
 *
 * The server is pure (same URL, same bytes), so every successful body is
 * kept for the life of the page and concurrent requests for one URL share
 * a single fetch. This is what makes the raw/clean toggle instant: each
 * timeline variant crosses the network at most once per session.
 */

export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<ResponseLike>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(detail ? `${code}: ${detail}` : code);
    this.name = 'ApiError';
  }
}

type Params = Record<string, string | number | boolean | undefined>;

export class ApiClient {
  private cache = new Map<string, unknown>();
  private inflight = new Map<string, Promise<unknown>>();
  /** Every URL that actually reached the network, in order. */
  readonly requests: string[] = [];

  constructor(
    readonly baseUrl: string,
    private fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  url(path: string, params?: Params): string {
    const query = new URLSearchParams();
    for (const [key, value] of Object.entries(params ?? {})) {
      if (value !== undefined) query.set(key, String(value));
    }
    const qs = query.toString();
    return this.baseUrl + path + (qs ? `?${qs}` : '');
  }

  requestCount(url: string): number {
    let n = 0;
    for (const seen of this.requests) if (seen === url) n += 1;
    return n;
  }

  async get<T>(path: string, params?: Params): Promise<T> {
    const url = this.url(path, params);
    if (this.cache.has(url)) return this.cache.get(url) as T;
    const pending = this.inflight.get(url);
    if (pending) return pending as Promise<T>;

    const request = this.fetchNow(url);
    this.inflight.set(url, request);
    try {
      const body = await request;
      this.cache.set(url, body);
      return body as T;
    } finally {
      // errors are deliberately not cached; a 502 from a flaky backend
      // should be retried on the next interaction
      this.inflight.delete(url);
    }
  }

  private async fetchNow(url: string): Promise<unknown> {
    this.requests.push(url);
    const response = await this.fetchImpl(url);
    if (!response.ok) {
      let code = `http_${response.status}`;
      let detail = '';
      try {
        const body = (await response.json()) as { error?: string; detail?: string };
        if (body && typeof body === 'object') {
          code = body.error ?? code;
          detail = body.detail ?? '';
        }
      } catch {
        // non-JSON error body, keep the synthetic code
      }
      throw new ApiError(response.status, code, detail);
    }
    return response.json();
  }
}

/**
 * Monotonic token source for discarding stale responses: a view applies
 * a payload only when its token is still the latest one handed out.
 */
export class RequestSequence {
  private seq = 0;

  next(): number {
    this.seq += 1;
    return this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}
