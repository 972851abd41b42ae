"""The five weak metrics of a proper convex domain.

For interior points x != y let a be the point where the ray from x
through y leaves the domain.  The Funk distance is

    F(x, y) = log(|x - a| / |y - a|) = log(t / (t - 1)),

where t >= 1 is the ray parameter of a (a = x + t*(y - x)); when the ray
never leaves, F(x, y) = 0.  The reverse Funk metric swaps the arguments,
the Hilbert metric is their arithmetic mean, the max-symmetrization their
maximum, and the relative Funk metric adds the reverse distance of an
englobing domain.  All are weak metrics: nonnegative, zero on the
diagonal, triangle inequality, but possibly asymmetric and possibly zero
between distinct points (exactly when the domain is unbounded).

Distances are computed from the hit parameter, F = log1p(1/(t-1)), which
stays well conditioned when y approaches the boundary; values below
``tolerances.F_CLAMP`` are clamped to exactly 0 so that near-parallel
rays agree with the at-infinity classification.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .convex_core import (
    ConvexDomain,
    EuclideanBall,
    GeometryError,
    HPolytope,
    as_point,
)


def _from_parameter(t: float) -> float:
    if not np.isfinite(t):
        return 0.0
    if t - 1.0 < 1e-16:
        # slack ratio beyond 1e16: the target is on the boundary at double
        # precision and the distance cannot be represented honestly
        raise GeometryError("target point is numerically on the boundary")
    value = math.log1p(1.0 / (t - 1.0))
    return 0.0 if value < tol.F_CLAMP else value


def _check_interior(domain: ConvexDomain, p, name: str):
    p = as_point(p, domain.dim, name)
    if domain.contains(p) <= 0.0:
        raise GeometryError(f"{name} is not interior to the domain")
    return p


def funk(domain: ConvexDomain, x, y) -> float:
    """Funk distance from x to y (zero when the ray x->y never exits)."""
    x = _check_interior(domain, x, "x")
    y = _check_interior(domain, y, "y")
    if np.linalg.norm(y - x) <= tol.EPS_PT:
        return 0.0
    return _from_parameter(domain.ray_boundary(x, y).t)


def reverse_funk(domain: ConvexDomain, x, y) -> float:
    """Funk distance with swapped arguments."""
    return funk(domain, y, x)


def hilbert(domain: ConvexDomain, x, y) -> float:
    """Hilbert distance: the arithmetic mean of the two Funk distances.

    Equals half the logarithm of the cross ratio of (b, x, y, a) where a
    and b are the two exits of the line through x and y.
    """
    return 0.5 * (funk(domain, x, y) + funk(domain, y, x))


def max_symmetrized(domain: ConvexDomain, x, y) -> float:
    """Max-symmetrization of the Funk distance."""
    return max(funk(domain, x, y), funk(domain, y, x))


# Containment of omega in the englobing domain is validated by sampling the
# first time a pair of domains is seen; later calls reuse the verdict.
_CONTAINMENT_CACHE: dict[tuple[int, int], tuple] = {}
_CONTAINMENT_SAMPLES = 1000


def _validate_containment(omega: ConvexDomain, outer: ConvexDomain) -> None:
    key = (id(omega), id(outer))
    cached = _CONTAINMENT_CACHE.get(key)
    if cached is not None:
        ref_o, ref_u = cached
        if ref_o() is omega and ref_u() is outer:
            return
    rng = np.random.default_rng(20260808)
    pts = omega.interior_samples(_CONTAINMENT_SAMPLES, rng)
    margins = np.array([outer.contains(p) for p in pts])
    if np.any(margins <= 0.0):
        raise GeometryError(
            "relative Funk distance needs the domain inside the englobing "
            f"domain; {int(np.sum(margins <= 0.0))} of "
            f"{_CONTAINMENT_SAMPLES} sampled points fall outside")
    _CONTAINMENT_CACHE[key] = (weakref.ref(omega), weakref.ref(outer))


def relative_funk(omega: ConvexDomain, outer: ConvexDomain | None, x, y) -> float:
    """Funk distance of ``omega`` measured relative to an englobing domain.

    Combines the exit point of ``omega`` on the ray x->y with the exit
    point of ``outer`` on the reverse ray; exits at infinity contribute
    nothing.  ``outer=None`` means the whole affine patch, for which the
    relative and plain Funk distances coincide.
    """
    if outer is None:
        return funk(omega, x, y)
    if outer.dim != omega.dim:
        raise GeometryError("domain and englobing domain dimensions differ")
    if outer is not omega:
        _validate_containment(omega, outer)
    x = _check_interior(domain=omega, p=x, name="x")
    y = _check_interior(domain=omega, p=y, name="y")
    if np.linalg.norm(y - x) <= tol.EPS_PT:
        return 0.0
    value = _from_parameter(omega.ray_boundary(x, y).t) \
        + _from_parameter(outer.ray_boundary(y, x).t)
    return 0.0 if value < tol.F_CLAMP else value


def funk_polytope_closed_form(polytope: HPolytope, x, y) -> float:
    """Funk distance in a polytope as a maximum of slack log-ratios.

    F(x, y) = max(0, max_j log((s_j - <a_j, x>) / (s_j - <a_j, y>))).
    """
    x = _check_interior(polytope, x, "x")
    y = _check_interior(polytope, y, "y")
    sx = polytope.b - polytope.A @ x
    sy = polytope.b - polytope.A @ y
    value = max(0.0, float(np.max(np.log(sx / sy))))
    return 0.0 if value < tol.F_CLAMP else value


def funk_unit_ball_closed_form(x, y) -> float:
    """Funk distance in the unit ball centered at the origin.

    Uses the parallelogram-area identity |x ^ y|^2 = |x|^2 |y|^2 - <x,y>^2:

        F(x, y) = log((q + |x|^2 - <x,y>) / (q - |y|^2 + <x,y>)),
        q = sqrt(|y - x|^2 - |x ^ y|^2).
    """
    x = as_point(x, name="x")
    y = as_point(y, x.size, name="y")
    nx2 = float(x @ x)
    ny2 = float(y @ y)
    if nx2 >= 1.0 or ny2 >= 1.0:
        raise GeometryError("arguments must lie strictly inside the unit ball")
    if np.linalg.norm(y - x) <= tol.EPS_PT:
        return 0.0
    dot = float(x @ y)
    wedge2 = nx2 * ny2 - dot * dot
    radicand = float((y - x) @ (y - x)) - wedge2
    if radicand < -tol.EPS_GEOM:
        raise GeometryError("radicand is negative beyond the conditioning guard")
    q = math.sqrt(max(radicand, 0.0))
    value = math.log((q + nx2 - dot) / (q - ny2 + dot))
    return 0.0 if value < tol.F_CLAMP else value


@dataclass(frozen=True)
class Segment1D:
    """Open interval (low, high) of the real line, low < high."""

    low: float
    high: float

    def __post_init__(self):
        if not (self.low < self.high):
            raise GeometryError("segment needs low < high")


def funk_1d(seg: Segment1D, x: float, y: float) -> float:
    """Funk distance inside an interval.

    The ray from x through y meets the endpoint on y's side; the distance
    is the log-ratio of the distances of x and y to that endpoint.
    """
    x = float(x)
    y = float(y)
    if not (seg.low < x < seg.high) or not (seg.low < y < seg.high):
        raise GeometryError("both points must lie strictly inside the segment")
    if y == x:
        return 0.0
    if y > x:
        return math.log((seg.high - x) / (seg.high - y))
    return math.log((x - seg.low) / (y - seg.low))


def ratio_from_distances(fxy: float, fxz: float) -> float:
    """Division ratio t with z = x + t*(y - x) from two aligned distances.

    Requires F(x, y) > 0; the points x, y, z must share their boundary hit.
    """
    if fxy <= 0.0:
        raise GeometryError("reference distance F(x, y) must be positive")
    return math.exp(fxy - fxz) * math.expm1(fxz) / math.expm1(fxy)


def distance_from_ratio(fxy: float, t: float) -> float:
    """Inverse of :func:`ratio_from_distances`: F(x, z) from F(x, y) and t."""
    if fxy <= 0.0:
        raise GeometryError("reference distance F(x, y) must be positive")
    arg = math.exp(fxy) - t * math.expm1(fxy)
    if arg <= 0.0:
        raise GeometryError("ratio places z at or beyond the boundary")
    return fxy - math.log(arg)


def orthant_log_map(x) -> np.ndarray:
    """Componentwise logarithm, the isometry of the positive orthant.

    Pushes the orthant's Funk distance forward to
    ``max_i max(0, u_i - v_i)`` on all of n-space.
    """
    x = as_point(x, name="x")
    if np.any(x <= 0.0):
        raise GeometryError("all coordinates must be positive")
    return np.log(x)


def minkowski_max_distance(u, v) -> float:
    """The weak Minkowski distance max_i max(0, u_i - v_i)."""
    u = as_point(u, name="u")
    v = as_point(v, u.size, name="v")
    return max(0.0, float(np.max(u - v)))


def funk_batch(domain: ConvexDomain, X, Y) -> np.ndarray:
    """Funk distances for many point pairs at once.

    Vectorized ray casting for polytopes and balls; other domain kinds
    fall back to a per-pair loop.  Same formulas as :func:`funk`.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if X.shape != Y.shape or X.shape[1] != domain.dim:
        raise GeometryError("point arrays must be (m, dim) and congruent")

    if isinstance(domain, HPolytope):
        slack_x = domain.b - X @ domain.A.T  # (m, k)
        slack_y = domain.b - Y @ domain.A.T
        if np.min(slack_x) <= 0.0 or np.min(slack_y) <= 0.0:
            raise GeometryError("all points must be interior to the domain")
        D = Y - X
        lengths = np.linalg.norm(D, axis=1)
        deriv = D @ domain.A.T
        scaled = deriv / (domain._row_norms * np.maximum(lengths, tol.EPS_PT)[:, None])
        t_all = np.where(scaled > tol.EPS_DIR, slack_x / np.where(
            scaled > tol.EPS_DIR, deriv, 1.0), np.inf)
        t = np.min(t_all, axis=1)
        return _batch_from_parameters(t, lengths)

    if isinstance(domain, EuclideanBall):
        Wx = X - domain.center
        if np.max(np.linalg.norm(Wx, axis=1)) >= domain.radius \
                or np.max(np.linalg.norm(Y - domain.center, axis=1)) >= domain.radius:
            raise GeometryError("all points must be interior to the domain")
        D = Y - X
        lengths = np.linalg.norm(D, axis=1)
        alpha = np.einsum("ij,ij->i", D, D)
        beta = np.einsum("ij,ij->i", D, Wx)
        gamma = np.einsum("ij,ij->i", Wx, Wx) - domain.radius ** 2
        safe = lengths > tol.EPS_PT
        t = np.ones_like(lengths) * np.inf
        a, bq, g = alpha[safe], beta[safe], gamma[safe]
        root = np.sqrt(bq * bq - a * g)
        t[safe] = np.where(bq > 0.0, -g / (bq + root), (root - bq) / a)
        return _batch_from_parameters(t, lengths)

    return np.array([funk(domain, x, y) for x, y in zip(X, Y)])


def _batch_from_parameters(t: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    finite = np.isfinite(t) & (lengths > tol.EPS_PT)
    if np.any(finite & (t - 1.0 < 1e-16)):
        raise GeometryError("a target point is numerically on the boundary")
    out = np.zeros_like(t)
    out[finite] = np.log1p(1.0 / (t[finite] - 1.0))
    out[out < tol.F_CLAMP] = 0.0
    return out
