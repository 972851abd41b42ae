"""Metric balls of the Funk distance and their Euclidean geometry.

The forward ball B+(x, rho) = {y : F(x, y) < rho} is the image of the
domain under the Euclidean homothety at x with factor 1 - e^(-rho); the
backward ball B-(x, rho) = {y : F(y, x) < rho} is the intersection of
the domain with the point reflection (at x) of its homothety with factor
e^rho - 1.  Both are realized symbolically as new domains so that every
metric query can recurse on them.

For a bounded polytope, the Euclidean distances from an interior point x
to the boundary lie between lambda_x (minimal constraint-plane distance)
and Lambda_x (maximal vertex distance), which sandwiches every metric
sphere between two Euclidean spheres.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from . import tolerances as tol
from .convex_core import (
    AffineImage,
    AffineMap,
    ConvexDomain,
    EuclideanBall,
    GeometryError,
    HPolytope,
    IntersectionDomain,
    as_point,
)

FORWARD = "forward"
BACKWARD = "backward"

DEFAULT_SEED = 0


@dataclass(frozen=True)
class MetricBall:
    """A realized metric ball: center, radius and its domain geometry."""

    center: np.ndarray
    radius: float
    orientation: str
    realized: ConvexDomain
    ambient: ConvexDomain

    def radius_is_certified(self, point) -> bool:
        """Whether a boundary point of the realized ball lies at exact radius.

        Forward spheres are homothets of the domain boundary, so every
        point qualifies.  Backward spheres may clip at the domain
        boundary; only the reflected-homothet part is at exact distance.
        """
        if self.orientation == FORWARD:
            return True
        reflected = self.realized.parts[1]
        gate = 10.0 * tol.EPS_BD * max(1.0, float(np.linalg.norm(point)))
        return abs(reflected.contains(point)) <= gate


def _check_ball_inputs(domain: ConvexDomain, x, rho: float) -> np.ndarray:
    x = as_point(x, domain.dim, "center")
    if domain.contains(x) <= 0.0:
        raise GeometryError("ball center must be interior to the domain")
    if not (rho > 0.0 and np.isfinite(rho)):
        raise GeometryError("ball radius must be a positive finite number")
    return x


def _homothet(domain: ConvexDomain, center: np.ndarray, factor: float) -> ConvexDomain:
    """Image of the domain under the homothety at ``center`` with ``factor``."""
    if isinstance(domain, HPolytope):
        b_new = factor * domain.b + (1.0 - factor) * (domain.A @ center)
        verts = None
        if domain.vertices is not None:
            verts = center + factor * (domain.vertices - center)
        return HPolytope(domain.A, b_new, vertices=verts, witness=center)
    if isinstance(domain, EuclideanBall):
        return EuclideanBall(center + factor * (domain.center - center),
                             factor * domain.radius)
    return AffineImage(domain, AffineMap.homothety(center, factor))


def forward_ball(domain: ConvexDomain, x, rho: float) -> MetricBall:
    """The forward metric ball {y : F(x, y) < rho}, realized symbolically."""
    x = _check_ball_inputs(domain, x, rho)
    factor = -math.expm1(-rho)  # 1 - e^(-rho), exact for tiny rho
    realized = _homothet(domain, x, factor)
    return MetricBall(center=x, radius=float(rho), orientation=FORWARD,
                      realized=realized, ambient=domain)


def backward_ball(domain: ConvexDomain, x, rho: float) -> MetricBall:
    """The backward metric ball {y : F(y, x) < rho}.

    y belongs to it iff y is in the domain and x - (y - x)/(e^rho - 1) is
    in the domain; the realized set is the intersection of the domain
    with the reflected homothet.
    """
    x = _check_ball_inputs(domain, x, rho)
    mu = math.expm1(rho)  # e^rho - 1
    if isinstance(domain, HPolytope):
        reflected = HPolytope(-domain.A,
                              mu * domain.b - (mu + 1.0) * (domain.A @ x),
                              witness=x)
    elif isinstance(domain, EuclideanBall):
        reflected = EuclideanBall(x - mu * (domain.center - x), mu * domain.radius)
    else:
        reflected = AffineImage(
            domain, AffineMap(-mu * np.eye(domain.dim), (1.0 + mu) * x))
    realized = IntersectionDomain([domain, reflected], witness=x)
    return MetricBall(center=x, radius=float(rho), orientation=BACKWARD,
                      realized=realized, ambient=domain)


def sphere_directions(dim: int, k: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """k quasi-uniform unit directions, reproducible for a given seed.

    Two dimensions use equally spaced angles; higher dimensions map a
    seeded low-discrepancy sequence through the inverse normal CDF and
    normalize.
    """
    if dim == 2:
        angles = 2.0 * np.pi * np.arange(k) / k
        dirs = np.column_stack([np.cos(angles), np.sin(angles)])
        dirs[np.abs(dirs) < 1e-15] = 0.0  # exact axis directions
        return dirs
    sampler = qmc.Halton(d=dim, scramble=True, seed=seed)
    dirs = np.empty((0, dim))
    while dirs.shape[0] < k:
        block = ndtri(sampler.random(2 * k).clip(1e-12, 1 - 1e-12))
        norms = np.linalg.norm(block, axis=1)
        good = block[norms > 1e-8] / norms[norms > 1e-8, None]
        dirs = np.vstack([dirs, good])
    return dirs[:k]


def sphere_sample(ball: MetricBall, k: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """k points on the boundary of the realized ball, by ray casting.

    Deterministic for a given seed.  Directions along which the realized
    set is unbounded are skipped and replaced from the direction stream.
    """
    if k < 3:
        raise GeometryError("at least 3 sphere samples are required")
    center = ball.center
    dim = center.size
    for batch in range(17):
        count = k * (2 ** batch)
        dirs = sphere_directions(dim, count, seed if dim == 2 else seed + batch)
        out = []
        for u in dirs:
            hit = ball.realized.ray_boundary(center, center + u)
            if not hit.at_infinity:
                out.append(hit.point)
                if len(out) == k:
                    return np.array(out)
    raise GeometryError("could not find enough finite boundary directions")


@dataclass(frozen=True)
class SandwichConstants:
    """Extremal Euclidean boundary distances from an interior point."""

    lambda_x: float  # min distance to a constraint plane
    Lambda_x: float  # max distance to a vertex

    def forward_bracket(self, rho: float) -> tuple[float, float]:
        """Euclidean radii sandwiching the forward sphere of radius rho."""
        f = -math.expm1(-rho)
        return f * self.lambda_x, f * self.Lambda_x

    def backward_bracket(self, rho: float) -> tuple[float, float]:
        """Euclidean radii sandwiching the backward sphere (rho <= log 2)."""
        f = math.expm1(rho)
        return f * self.lambda_x, f * self.Lambda_x


def sandwich(polytope: HPolytope, x) -> SandwichConstants:
    """Boundary-distance extremes lambda_x <= |xi - x| <= Lambda_x.

    Needs a bounded polytope with vertex data (Lambda is a vertex max).
    """
    if not isinstance(polytope, HPolytope):
        raise GeometryError("sandwich constants are defined for polytopes")
    if polytope.vertices is None:
        raise GeometryError("sandwich constants need the vertex description")
    if not polytope.is_bounded():
        raise GeometryError("sandwich constants need a bounded polytope")
    x = as_point(x, polytope.dim, "x")
    if polytope.contains(x) <= 0.0:
        raise GeometryError("x must be interior to the polytope")
    lam = float(np.min((polytope.b - polytope.A @ x) / polytope._row_norms))
    Lam = float(np.max(np.linalg.norm(polytope.vertices - x, axis=1)))
    return SandwichConstants(lambda_x=lam, Lambda_x=Lam)
