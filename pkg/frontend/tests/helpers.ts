// Test plumbing: fixture loading and a fetch double that replays the
// recorded API responses. Each (method, path, body) key owns a queue of
// fixtures in recording order, so stateful flows (mutate, mutate, undo,
// undo) play back exactly as the live server answered them.

import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { FetchLike } from "../src/api.js";

const FIXTURE_DIR = join(process.cwd(), "tests", "fixtures");

export interface ManifestEntry {
  method: string;
  path: string;
  status: number;
  body: unknown;
}

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURE_DIR, `${name}.json`), "utf8");
}

export function fixtureJson<T = any>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export const manifest: Record<string, ManifestEntry> = fixtureJson("manifest");

function stableStringify(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) return `[${value.map(stableStringify).join(",")}]`;
  const record = value as Record<string, unknown>;
  const keys = Object.keys(record).sort();
  return `{${keys.map((k) => `${JSON.stringify(k)}:${stableStringify(record[k])}`).join(",")}}`;
}

function requestKey(method: string, pathAndQuery: string, body: unknown): string {
  const normalized =
    body !== null && typeof body === "object" && !Array.isArray(body) && Object.keys(body).length === 0
      ? null
      : body;
  return `${method} ${pathAndQuery} ${stableStringify(normalized)}`;
}

export interface RequestLog {
  method: string;
  path: string;
  body: unknown;
}

/** A fetch that replays recorded fixtures; throws on unrecorded requests. */
export function routedFetch(calls?: RequestLog[]): FetchLike {
  const queues = new Map<string, string[]>();
  for (const [name, meta] of Object.entries(manifest)) {
    const key = requestKey(meta.method, meta.path, meta.body);
    const queue = queues.get(key) ?? [];
    queue.push(name);
    queues.set(key, queue);
  }
  const consumed = new Map<string, number>();
  return async (url, init) => {
    const method = init?.method ?? "GET";
    const parsed = new URL(url);
    const pathAndQuery = decodeURIComponent(parsed.pathname + parsed.search);
    const body = init?.body ? JSON.parse(init.body as string) : null;
    calls?.push({ method, path: pathAndQuery, body });
    const key = requestKey(method, pathAndQuery, body);
    const queue = queues.get(key);
    if (!queue) throw new Error(`no fixture recorded for: ${key}`);
    const idx = Math.min(consumed.get(key) ?? 0, queue.length - 1);
    consumed.set(key, idx + 1);
    return fixtureResponse(queue[idx]);
  };
}

export function fixtureResponse(name: string): Response {
  return new Response(fixtureText(name), {
    status: manifest[name].status,
    headers: { "Content-Type": "application/json" },
  });
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
