// Typed client for the cluster algebra session service.
// All mathematics happens on the server; this module only moves JSON.

export interface QuiverJson {
  n: number;
  m: number;
  arrows: [number, number, number][];
}

export interface SeedJson {
  n: number;
  m: number;
  B: number[][];
  names: string[];
  history: number[];
  cluster: string[];
  currentB: number[][];
}

export interface ExchangePolyInfo {
  direction: number;
  text: string;
  factorCount: number | null;
  isolated?: boolean;
}

export interface PerVariableCount {
  i: number;
  l?: number;
  isolated?: boolean;
}

export interface ClassGroupResult {
  t: number;
  rank: number;
  invariantFactors: number[];
  perVariable: PerVariableCount[];
}

export interface UfdResult {
  ufd: boolean;
  nontrivial: { i: number; l: number }[];
}

/** A server-side computation that either succeeded or refused coherently. */
export type Guarded<T> =
  | { status: "ok"; result: T }
  | { status: string; message: string };

export function guardedResult<T>(guarded: Guarded<T>): T | null {
  return guarded.status === "ok" && "result" in guarded ? guarded.result : null;
}

export interface SessionState {
  id: string;
  n: number;
  m: number;
  field: string;
  names: string[];
  seed: SeedJson;
  quiver: QuiverJson | null;
  exchangePolys: ExchangePolyInfo[];
  sharing: [number, number][];
  classGroup: Guarded<ClassGroupResult>;
  ufd: Guarded<UfdResult>;
  canUndo: boolean;
}

export interface MemberDirection {
  direction: number;
  ok: boolean;
  witnesses?: Record<string, string>;
  failingPower?: number;
  remainderNonzero?: boolean;
}

export interface MemberCertificate {
  member: boolean;
  starfishBasis: "full-rank" | "upper-bound-only";
  directions: MemberDirection[];
}

export interface PathVerdict {
  laurent_in_seed: boolean;
}

export interface PairingResult {
  direction: number;
  method: string;
  value: number;
}

export interface LocalFactorResult {
  exponents: number[];
  cofactor: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function unwrap<T>(resp: Response): Promise<T> {
  if (resp.ok) {
    return (await resp.json()) as T;
  }
  let code = `http-${resp.status}`;
  let message = `request failed with status ${resp.status}`;
  try {
    const body = await resp.json();
    if (body && typeof body.error === "string") {
      code = body.error;
      if (typeof body.message === "string") message = body.message;
    } else if (body && typeof body.detail === "string") {
      code = "not-found";
      message = body.detail;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(resp.status, code, message);
}

export class ApiClient {
  private readonly baseUrl: string;

  constructor(
    baseUrl: string,
    private readonly fetchImpl: FetchLike,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchImpl(this.baseUrl + path).then((r) => unwrap<T>(r));
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body ?? {}),
    }).then((r) => unwrap<T>(r));
  }

  fields(): Promise<{ fields: string[] }> {
    return this.get("/api/fields");
  }

  createSession(seed: unknown, field?: string): Promise<SessionState> {
    return this.post("/api/session", field ? { seed, field } : { seed });
  }

  getState(id: string, field?: string): Promise<SessionState> {
    const query = field ? `?field=${encodeURIComponent(field)}` : "";
    return this.get(`/api/session/${id}${query}`);
  }

  setField(id: string, field: string): Promise<SessionState> {
    return this.post(`/api/session/${id}/field`, { field });
  }

  mutate(id: string, k: number): Promise<SessionState> {
    return this.post(`/api/session/${id}/mutate`, { k });
  }

  undo(id: string): Promise<SessionState> {
    return this.post(`/api/session/${id}/undo`);
  }

  member(id: string, expr: string): Promise<MemberCertificate> {
    return this.post(`/api/session/${id}/member`, { expr });
  }

  memberAlongPath(id: string, expr: string, path: number[]): Promise<PathVerdict> {
    return this.post(`/api/session/${id}/member`, { expr, path });
  }

  pairing(
    id: string,
    expr: string,
    direction: number,
    method: "fast" | "iterative" = "fast",
  ): Promise<PairingResult> {
    return this.post(`/api/session/${id}/pairing`, { expr, direction, method });
  }

  localFactor(id: string, expr: string): Promise<LocalFactorResult> {
    return this.post(`/api/session/${id}/local-factor`, { expr });
  }
}
