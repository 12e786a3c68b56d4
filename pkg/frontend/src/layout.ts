// Deterministic force layout for small quivers.
// Starts vertices on a circle and runs a fixed number of spring steps,
// so the same input always yields the same coordinates (no randomness,
// easy to snapshot in tests).

export interface Point {
  x: number;
  y: number;
}

const MARGIN = 40;

export function forceLayout(
  count: number,
  edges: [number, number][],
  width: number,
  height: number,
  iterations = 200,
): Point[] {
  if (count <= 0) return [];
  const cx = width / 2;
  const cy = height / 2;
  if (count === 1) return [{ x: round1(cx), y: round1(cy) }];

  const radius = Math.min(width, height) / 2 - MARGIN - 20;
  const pts: Point[] = [];
  for (let i = 0; i < count; i++) {
    const angle = (2 * Math.PI * i) / count - Math.PI / 2;
    pts.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }

  const rest = Math.min(width, height) / 2.2;
  const repel = rest * rest;
  for (let step = 0; step < iterations; step++) {
    const heat = 0.08 * (1 - step / iterations) + 0.01;
    const force: Point[] = pts.map(() => ({ x: 0, y: 0 }));
    for (let a = 0; a < count; a++) {
      for (let b = a + 1; b < count; b++) {
        const dx = pts[a].x - pts[b].x;
        const dy = pts[a].y - pts[b].y;
        const dist2 = Math.max(dx * dx + dy * dy, 1);
        const push = repel / dist2;
        const dist = Math.sqrt(dist2);
        force[a].x += (dx / dist) * push;
        force[a].y += (dy / dist) * push;
        force[b].x -= (dx / dist) * push;
        force[b].y -= (dy / dist) * push;
      }
    }
    for (const [s, t] of edges) {
      if (s < 0 || t < 0 || s >= count || t >= count || s === t) continue;
      const dx = pts[t].x - pts[s].x;
      const dy = pts[t].y - pts[s].y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (dist - rest) * 0.5;
      force[s].x += (dx / dist) * pull;
      force[s].y += (dy / dist) * pull;
      force[t].x -= (dx / dist) * pull;
      force[t].y -= (dy / dist) * pull;
    }
    for (let i = 0; i < count; i++) {
      pts[i].x += force[i].x * heat;
      pts[i].y += force[i].y * heat;
      pts[i].x = Math.min(Math.max(pts[i].x, MARGIN), width - MARGIN);
      pts[i].y = Math.min(Math.max(pts[i].y, MARGIN), height - MARGIN);
    }
  }
  return pts.map((p) => ({ x: round1(p.x), y: round1(p.y) }));
}

function round1(v: number): number {
  return Math.round(v * 10) / 10;
}
