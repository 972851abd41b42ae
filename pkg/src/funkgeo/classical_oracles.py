"""Signed division ratios, the Menelaus and Ceva products, and cross ratios.

The division ratio of P relative to B and A is the t with
P = t B + (1 - t) A; its sign encodes betweenness (negative exactly when
A lies between B and P).  For a triangle ABC with points A', B', C' on
the side lines, the triple product

    (A'B/A'C) * (B'C/B'A) * (C'A/C'B)

equals +1 iff A', B', C' are aligned (Menelaus) and -1 iff the cevians
AA', BB', CC' are concurrent or parallel (Ceva).  The cross ratio of
four aligned points is the projective invariant whose logarithm is twice
the Hilbert distance.

All ratios are computed from scalar parameters along the carrier line —
never from norm quotients — so the signs are exact.
"""

from __future__ import annotations

import numpy as np

from . import tolerances as tol
from .convex_core import GeometryError, as_point


def _line_distance(p: np.ndarray, a: np.ndarray, d: np.ndarray) -> float:
    """Euclidean distance from p to the line a + span(d); |d| = 1."""
    w = p - a
    return float(np.linalg.norm(w - (w @ d) * d))


def division_ratio(a, b, p) -> float:
    """Signed t with p = t*b + (1-t)*a for collinear a, b, p."""
    a = as_point(a, name="A")
    b = as_point(b, a.size, name="B")
    p = as_point(p, a.size, name="P")
    ab = b - a
    length = float(np.linalg.norm(ab))
    if length <= tol.EPS_PT:
        raise GeometryError("division ratio needs A != B")
    d = ab / length
    if _line_distance(p, a, d) > tol.EPS_LINE * length:
        raise GeometryError("P does not lie on the line through A and B")
    return float((p - a) @ ab) / (length * length)


def _triangle_scale(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return max(np.linalg.norm(b - a), np.linalg.norm(c - a), np.linalg.norm(c - b))


def _check_triangle(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> None:
    scale = _triangle_scale(a, b, c)
    u, v = b - a, c - a
    area2 = float((u @ u) * (v @ v) - (u @ v) ** 2)  # squared doubled area
    if area2 <= (tol.EPS_AREA * scale * scale) ** 2:
        raise GeometryError("triangle is degenerate")


def _side_ratio(end1: np.ndarray, end2: np.ndarray, p: np.ndarray,
                label: str) -> float:
    """(lambda - 1)/lambda for p = lambda*end2 + (1 - lambda)*end1."""
    lam = division_ratio(end1, end2, p)
    if abs(lam) <= 1e-12:
        raise GeometryError(f"{label} coincides with a forbidden triangle vertex")
    return (lam - 1.0) / lam


def _triple_product(a, b, c, ap, bp, cp) -> float:
    a = as_point(a, name="A")
    b = as_point(b, a.size, name="B")
    c = as_point(c, a.size, name="C")
    ap = as_point(ap, a.size, name="A'")
    bp = as_point(bp, a.size, name="B'")
    cp = as_point(cp, a.size, name="C'")
    _check_triangle(a, b, c)
    # A' on line BC, B' on line CA, C' on line AB; ratios per side.
    r_a = _side_ratio(c, b, ap, "A'")
    r_b = _side_ratio(a, c, bp, "B'")
    r_c = _side_ratio(b, a, cp, "C'")
    return r_a * r_b * r_c


def menelaus_product(a, b, c, ap, bp, cp) -> float:
    """Menelaus triple product; equals +1 iff A', B', C' are aligned."""
    return _triple_product(a, b, c, ap, bp, cp)


def ceva_product(a, b, c, ap, bp, cp) -> float:
    """Ceva triple product; equals -1 iff AA', BB', CC' are concurrent or parallel."""
    return _triple_product(a, b, c, ap, bp, cp)


def cross_ratio(b, x, y, a) -> float:
    """Cross ratio of four aligned points, in the order (b, x, y, a).

    ((y - b)/(x - b)) * ((x - a)/(y - a)) in scalar parameters along the
    line; for boundary exits b, a of a chord through x, y its logarithm
    is twice the Hilbert distance.
    """
    b = as_point(b, name="b")
    x = as_point(x, b.size, name="x")
    y = as_point(y, b.size, name="y")
    a = as_point(a, b.size, name="a")
    pts = np.vstack([b, x, y, a])
    # Carrier direction from the farthest pair, for a stable collinearity test.
    far, best = (0, 1), -1.0
    for i in range(4):
        for j in range(i + 1, 4):
            dist = float(np.linalg.norm(pts[j] - pts[i]))
            if dist > best:
                far, best = (i, j), dist
    if best <= tol.EPS_PT:
        raise GeometryError("the four points coincide")
    d = (pts[far[1]] - pts[far[0]]) / best
    origin = pts[far[0]]
    for p in pts:
        if _line_distance(p, origin, d) > tol.EPS_LINE * best:
            raise GeometryError("the four points are not collinear")
    sb, sx, sy, sa = ((pts - origin) @ d)
    if abs(sx - sb) <= tol.EPS_PT * best or abs(sy - sa) <= tol.EPS_PT * best:
        raise GeometryError("cross ratio needs b != x and y != a")
    return float((sy - sb) / (sx - sb) * (sx - sa) / (sy - sa))
