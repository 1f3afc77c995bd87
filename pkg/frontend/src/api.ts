/** Fetch wrapper with one in-flight request per view: starting a new request
 * for a view aborts the previous one, so stale responses never paint. */

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(private baseUrl: string = "") {}

  async request<T>(view: string, path: string): Promise<T> {
    this.inflight.get(view)?.abort();
    const controller = new AbortController();
    this.inflight.set(view, controller);
    const response = await fetch(this.baseUrl + path, { signal: controller.signal });
    const body = await response.text();
    if (!response.ok) {
      let message = `HTTP ${response.status}`;
      try {
        message = (JSON.parse(body) as { error?: string }).error ?? message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, message);
    }
    return JSON.parse(body) as T;
  }
}
