"""SVG drawing of a 3-dimensional braid-type arrangement in the plane x1 + x2 + x3 = 0."""

from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .arrangement import Arrangement

# orthonormal basis of the plane x1 + x2 + x3 = 0
_E1 = (1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)
_E2 = (1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6))

PIXELS = 480


def project(point: Sequence[float]) -> tuple[float, float]:
    p = [float(v) for v in point]
    return (sum(a * b for a, b in zip(p, _E1)), sum(a * b for a, b in zip(p, _E2)))


def clip_line(normal: tuple[float, float], offset: float, half: float):
    """Segment of ``normal . (a, b) = offset`` inside the square ``[-half, half]^2``, or None."""
    na, nb = normal
    pts = []
    if abs(nb) > 1e-12:
        for a in (-half, half):
            b = (offset - na * a) / nb
            if -half - 1e-9 <= b <= half + 1e-9:
                pts.append((a, b))
    if abs(na) > 1e-12:
        for b in (-half, half):
            a = (offset - nb * b) / na
            if -half - 1e-9 <= a <= half + 1e-9:
                pts.append((a, b))
    uniq = []
    for p in pts:
        if all(math.dist(p, q) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def hyperplane_segment(i: int, j: int, s: int, half: float):
    d = [0.0, 0.0, 0.0]
    d[i - 1] += 1.0
    d[j - 1] -= 1.0
    normal = (sum(a * b for a, b in zip(d, _E1)), sum(a * b for a, b in zip(d, _E2)))
    return clip_line(normal, float(s), half)


def render_svg(A: Arrangement, labels: Optional[list[tuple[Sequence, str]]] = None) -> str:
    """SVG text; ``labels`` holds ``(point in R^3, text)`` pairs placed at the projected point."""
    if A.n != 3:
        raise ValueError(f"rendering needs n = 3, got n = {A.n}")
    half = A.m + 2.0
    scale = PIXELS / (2 * half)

    def screen(a, b):
        return ((a + half) * scale, (half - b) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" '
        f'viewBox="0 0 {PIXELS} {PIXELS}">',
        f'<rect x="0" y="0" width="{PIXELS}" height="{PIXELS}" fill="white" stroke="#999999"/>',
    ]
    drawn = 0
    for i, j, s in A.sorted_triples:
        seg = hyperplane_segment(i, j, s, half)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (screen(*p) for p in seg)
        out.append(
            f'<line class="hyperplane" data-triple="{i},{j},{s}" x1="{x1:.3f}" y1="{y1:.3f}" '
            f'x2="{x2:.3f}" y2="{y2:.3f}" stroke="black" stroke-width="1.5"/>'
        )
        drawn += 1
    for point, text in labels or []:
        a, b = project(point)
        if abs(a) > half or abs(b) > half:
            continue
        x, y = screen(a, b)
        out.append(
            f'<text x="{x:.3f}" y="{y:.3f}" font-size="10" font-family="monospace" '
            f'text-anchor="middle" fill="#1f4e9c">{escape(text)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def region_label_points(A: Arrangement, samples: int = 240):
    """One point per region visible in the window, with the region's unmarked tree.

    The point is the centroid of the window samples falling in the region, so
    labels sit inside regions rather than on their boundary.
    """
    import numpy as np

    from .face_map import face_sign_vector
    from .marked_trees import enumerate_admissible

    half = A.m + 2.0
    ticks = np.linspace(-half, half, samples)
    a, b = np.meshgrid(ticks, ticks)
    a, b = a.ravel(), b.ravel()
    pts = np.outer(a, _E1) + np.outer(b, _E2)
    signs = np.stack(
        [np.sign(pts[:, i - 1] - pts[:, j - 1] - s) for i, j, s in A.sorted_triples], axis=1
    ).astype(np.int8)
    out = []
    for t in enumerate_admissible(A):
        if t.marks:
            continue
        sv = face_sign_vector(A, t, check=False)
        hit = np.all(signs == np.array(sv.signs, dtype=np.int8), axis=1)
        if hit.any():
            out.append((pts[hit].mean(axis=0).tolist(), t.tree.bracket()))
    return out
