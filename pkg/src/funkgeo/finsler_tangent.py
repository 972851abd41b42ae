"""The tangent Minkowski norm of the Funk distance.

At an interior point p the Funk distance is infinitesimally a weak
Minkowski norm whose unit ball is the domain translated by -p: the norm
of a vector v is the gauge 1/t*, where t* is the largest t with
p + t v inside the domain (0 for recession directions).  The difference
quotient F(p + t x, p + t y)/t converges to the norm of y - x at rate
O(t), which :func:`finite_difference_check` measures.
"""

from __future__ import annotations

import numpy as np

from . import tolerances as tol
from .convex_core import ConvexDomain, GeometryError, HPolytope, as_point
from .metric_engine import funk


def tangent_norm(domain: ConvexDomain, p, v) -> float:
    """Gauge of the translated domain at v (0 for the zero vector)."""
    p = as_point(p, domain.dim, "base point")
    if domain.contains(p) <= 0.0:
        raise GeometryError("base point must be interior to the domain")
    v = as_point(v, domain.dim, "vector")
    if np.linalg.norm(v) <= tol.EPS_PT:
        return 0.0
    hit = domain.ray_boundary(p, p + v)
    if hit.at_infinity:
        return 0.0
    return 1.0 / hit.t


def tangent_distance(domain: ConvexDomain, p, x, y) -> float:
    """Infinitesimal distance from x to y as seen from the base point p."""
    x = as_point(x, domain.dim, "x")
    y = as_point(y, domain.dim, "y")
    return tangent_norm(domain, p, y - x)


def finite_difference_check(domain: ConvexDomain, p, x, y, t_list
                            ) -> list[tuple[float, float, float]]:
    """Difference quotients F(p + t x, p + t y)/t against the tangent norm.

    Returns one (t, quotient, error) row per requested t.  Every sample
    point must stay interior.  t below about 1e-5 is dominated by
    cancellation noise and is better avoided.
    """
    p = as_point(p, domain.dim, "base point")
    x = as_point(x, domain.dim, "x")
    y = as_point(y, domain.dim, "y")
    limit = tangent_norm(domain, p, y - x)
    rows = []
    for t in t_list:
        t = float(t)
        if t <= 0.0:
            raise GeometryError("difference-quotient steps must be positive")
        a, b = p + t * x, p + t * y
        if domain.contains(a) <= 0.0 or domain.contains(b) <= 0.0:
            raise GeometryError(f"sample escapes the domain at t={t:g}")
        quotient = funk(domain, a, b) / t
        rows.append((t, quotient, abs(quotient - limit)))
    return rows


def convergence_order(rows) -> float:
    """Log-log slope of error against step size.

    Rows with error at the noise floor are dropped; if fewer than two
    informative rows remain the quotients already sit on the limit and
    the order is reported as ``inf``.
    """
    pts = [(t, e) for t, _, e in rows if e > 1e-14]
    if len(pts) < 2:
        return float("inf")
    ts = np.log([t for t, _ in pts])
    es = np.log([e for _, e in pts])
    return float(np.polyfit(ts, es, 1)[0])


def remainder_constant(rows) -> float:
    """Smallest C with error(t) <= C * t over the measured rows."""
    return max((e / t for t, _, e in rows), default=0.0)


def polytope_support_form(polytope: HPolytope, p, v) -> float:
    """Tangent norm of a polytope from its supporting functionals.

    max(0, max_j <a_j, v> / (s_j - <a_j, p>)) — the supremum of
    h(v)/(1 - h(p)) over supporting functionals h is attained on the
    constraint forms.  Kept as an independent identity for testing the
    geometric gauge.
    """
    p = as_point(p, polytope.dim, "base point")
    if polytope.contains(p) <= 0.0:
        raise GeometryError("base point must be interior to the polytope")
    v = as_point(v, polytope.dim, "vector")
    slack = polytope.b - polytope.A @ p
    return max(0.0, float(np.max((polytope.A @ v) / slack)))
