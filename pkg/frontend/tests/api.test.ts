import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError, RequestSequence } from '../src/api';
import { deferred, routedFetch } from './fixtures';

describe('ApiClient', () => {
  it('builds URLs and skips undefined params', () => {
    const api = new ApiClient('http://h:1');
    expect(api.url('/api/trials')).toBe('http://h:1/api/trials');
    expect(
      api.url('/api/t/x/timeline', { clean: true, downsample: undefined, n: 4 }),
    ).toBe('http://h:1/api/t/x/timeline?clean=true&n=4');
  });

  it('serves repeat requests from the cache', async () => {
    let hits = 0;
    const api = new ApiClient('', async (url) => {
      hits += 1;
      return { ok: true, status: 200, json: async () => ({ url }) };
    });
    const first = await api.get<{ url: string }>('/api/trials');
    const second = await api.get<{ url: string }>('/api/trials');
    expect(first).toEqual({ url: '/api/trials' });
    expect(second).toBe(first);
    expect(hits).toBe(1);
    expect(api.requestCount('/api/trials')).toBe(1);
  });

  it('dedupes concurrent requests for one URL', async () => {
    let hits = 0;
    const gate = deferred<void>();
    const api = new ApiClient('', async () => {
      hits += 1;
      await gate.promise;
      return { ok: true, status: 200, json: async () => ({ n: 7 }) };
    });
    const a = api.get('/slow');
    const b = api.get('/slow');
    gate.resolve();
    expect(await a).toEqual({ n: 7 });
    expect(await b).toEqual({ n: 7 });
    expect(hits).toBe(1);
  });

  it('keeps distinct URLs separate', async () => {
    const api = new ApiClient('', routedFetch({ '/a': { v: 1 }, '/b': { v: 2 } }));
    expect(await api.get('/a')).toEqual({ v: 1 });
    expect(await api.get('/b')).toEqual({ v: 2 });
    expect(api.requests).toEqual(['/a', '/b']);
  });

  it('raises ApiError with the server error code and detail', async () => {
    const api = new ApiClient(
      '',
      routedFetch({
        '/x': { status: 409, body: { error: 'no_such_events', detail: 'T has no saccade events' } },
      }),
    );
    const err = await api.get('/x').catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe('no_such_events');
    expect(err.detail).toContain('no saccade events');
  });

  it('does not cache failures', async () => {
    let hits = 0;
    const api = new ApiClient('', async () => {
      hits += 1;
      return { ok: false, status: 502, json: async () => ({ error: 'backend_unavailable' }) };
    });
    await expect(api.get('/y')).rejects.toBeInstanceOf(ApiError);
    await expect(api.get('/y')).rejects.toBeInstanceOf(ApiError);
    expect(hits).toBe(2);
  });

  it('survives non-JSON error bodies', async () => {
    const api = new ApiClient('', async () => ({
      ok: false,
      status: 500,
      json: async () => {
        throw new SyntaxError('not json');
      },
    }));
    const err = await api.get('/z').catch((e) => e);
    expect(err.code).toBe('http_500');
  });
});

describe('RequestSequence', () => {
  it('marks earlier tokens stale once a newer one exists', () => {
    const seq = new RequestSequence();
    const t1 = seq.next();
    expect(seq.isCurrent(t1)).toBe(true);
    const t2 = seq.next();
    expect(seq.isCurrent(t1)).toBe(false);
    expect(seq.isCurrent(t2)).toBe(true);
  });
});
