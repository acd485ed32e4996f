// Small force layout: spring forces along arrows, repulsion between all
// vertex pairs, pinned positions win. Enough for quivers of a few dozen
// vertices; no external dependency.

export interface Point {
  x: number;
  y: number;
}

export function computeLayout(
  n: number,
  arrows: [number, number, number][],
  pinned: [number, number][],
  iterations = 200,
): Point[] {
  if (pinned.length === n && n > 0) {
    return pinned.map(([x, y]) => ({ x, y }));
  }
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / Math.max(n, 1);
    pts.push({ x: 150 * Math.cos(angle), y: 150 * Math.sin(angle) });
  }
  const spring = 90;
  for (let step = 0; step < iterations; step++) {
    const fx = new Array(n).fill(0);
    const fy = new Array(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = pts[i].x - pts[j].x;
        const dy = pts[i].y - pts[j].y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const rep = 4000 / d2;
        const d = Math.sqrt(d2);
        fx[i] += (rep * dx) / d;
        fy[i] += (rep * dy) / d;
        fx[j] -= (rep * dx) / d;
        fy[j] -= (rep * dy) / d;
      }
    }
    for (const [i, j] of arrows) {
      const a = i - 1;
      const b = j - 1;
      const dx = pts[b].x - pts[a].x;
      const dy = pts[b].y - pts[a].y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = 0.02 * (d - spring);
      fx[a] += pull * (dx / d);
      fy[a] += pull * (dy / d);
      fx[b] -= pull * (dx / d);
      fy[b] -= pull * (dy / d);
    }
    const damp = 0.85 * (1 - step / iterations) + 0.05;
    for (let i = 0; i < n; i++) {
      pts[i].x += Math.max(-15, Math.min(15, fx[i])) * damp;
      pts[i].y += Math.max(-15, Math.min(15, fy[i])) * damp;
    }
  }
  return pts;
}
