"""Triangle equality, geodesic criteria and unique-geodesy predicates.

The triangle inequality F(x, z) <= F(x, y) + F(y, z) holds with equality
exactly when the three boundary hits a(x, y), a(y, z), a(x, z) are
aligned in projective space (equivalently: lie in a common proper face
of the closure).  A polyline is geodesic iff its distance sum equals the
endpoint distance, which by the chained triangle inequality is
equivalent to additivity over every sub-triple.

The alignment flag is a rank test on stacked homogeneous coordinates and
handles finite and at-infinity hits uniformly.  Caveat: in dimension one,
and for triples where the forward hits collapse onto a single line
through coincident points, projective alignment is automatic while
additivity can still fail; the characterization is informative for
non-collinear triples in dimension two and up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .convex_core import (
    ConvexDomain,
    EuclideanBall,
    AffineImage,
    IntersectionDomain,
    GeometryError,
    HPolytope,
    as_point,
    to_projective,
)
from .metric_engine import funk, hilbert


@dataclass(frozen=True)
class TriangleReport:
    """Additivity defect and boundary-hit alignment for one triple."""

    defect: float
    hits: tuple[np.ndarray, np.ndarray, np.ndarray]  # projective coordinates
    aligned: bool
    singular_ratio: float


def triangle_report(domain: ConvexDomain, x, y, z,
                    eps_rank: float | None = None) -> TriangleReport:
    """Defect F(x,y) + F(y,z) - F(x,z) and alignment of the three hits."""
    x = as_point(x, domain.dim, "x")
    y = as_point(y, domain.dim, "y")
    z = as_point(z, domain.dim, "z")
    for p, q, name in ((x, y, "x, y"), (y, z, "y, z"), (x, z, "x, z")):
        if np.linalg.norm(q - p) <= tol.EPS_PT:
            raise GeometryError(f"triangle report needs distinct points ({name} coincide)")
    defect = funk(domain, x, y) + funk(domain, y, z) - funk(domain, x, z)
    rows = np.vstack([
        to_projective(domain.ray_boundary(x, y)),
        to_projective(domain.ray_boundary(y, z)),
        to_projective(domain.ray_boundary(x, z)),
    ])
    svals = np.linalg.svd(rows, compute_uv=False)
    ratio = float(svals[-1] / svals[0])
    eps = tol.EPS_RANK if eps_rank is None else eps_rank
    return TriangleReport(defect=float(defect),
                          hits=(rows[0], rows[1], rows[2]),
                          aligned=bool(ratio <= eps),
                          singular_ratio=ratio)


@dataclass(frozen=True)
class FaceCone:
    """Directions at a base point whose extended rays meet a polytope face.

    The face is identified by the set of constraint indices that are
    active on it.
    """

    base: np.ndarray
    face: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base, name="cone base"))
        face = frozenset(int(j) for j in self.face)
        if not face:
            raise GeometryError("a face cone needs a nonempty constraint set")
        object.__setattr__(self, "face", face)


def cone_member(polytope: HPolytope, cone: FaceCone, v) -> bool:
    """Whether the ray from the cone base in direction v meets the face.

    The zero vector belongs by definition.  A finite hit qualifies when
    every face-defining constraint is active at it; a ray that never
    exits qualifies when its direction is a recession direction of the
    face.
    """
    if max(cone.face) >= polytope.A.shape[0]:
        raise GeometryError("face constraint index out of range")
    v = as_point(v, polytope.dim, "direction")
    if np.linalg.norm(v) <= tol.EPS_PT:
        return True
    base = as_point(cone.base, polytope.dim, "cone base")
    if polytope.contains(base) <= 0.0:
        raise GeometryError("cone base must be interior")
    hit = polytope.ray_boundary(base, base + v)
    if hit.at_infinity:
        d = hit.direction / np.linalg.norm(hit.direction)
        idx = sorted(cone.face)
        on_face = np.all(np.abs(polytope.A[idx] @ d)
                         <= tol.EPS_FACE * polytope._row_norms[idx])
        return bool(on_face and polytope.recession_contains(d))
    return cone.face <= polytope.active_face(hit.point)


def verify_geodesic(domain: ConvexDomain, polyline,
                    eps: float | None = None) -> tuple[bool, float]:
    """Whether a polyline is a Funk geodesic, with its additivity defect.

    defect = sum of consecutive distances minus the endpoint distance;
    geodesic iff the defect is below ``eps`` (triangle-inequality chain).
    """
    pts = [as_point(p, domain.dim, f"polyline[{i}]") for i, p in enumerate(polyline)]
    if len(pts) < 2:
        raise GeometryError("a polyline needs at least two points")
    total = sum(funk(domain, pts[i], pts[i + 1]) for i in range(len(pts) - 1))
    defect = total - funk(domain, pts[0], pts[-1])
    eps = tol.EPS_GEODESIC if eps is None else eps
    return bool(defect <= eps), float(defect)


def verify_hilbert_geodesic(domain: ConvexDomain, polyline,
                            eps: float | None = None) -> tuple[bool, float]:
    """Geodesic test for the Hilbert distance (additivity of H)."""
    pts = [as_point(p, domain.dim, f"polyline[{i}]") for i, p in enumerate(polyline)]
    if len(pts) < 2:
        raise GeometryError("a polyline needs at least two points")
    total = sum(hilbert(domain, pts[i], pts[i + 1]) for i in range(len(pts) - 1))
    defect = total - hilbert(domain, pts[0], pts[-1])
    eps = tol.EPS_GEODESIC if eps is None else eps
    return bool(defect <= eps), float(defect)


def polyline_face_witness(polytope: HPolytope, polyline,
                          reverse: bool = False) -> frozenset[int]:
    """Constraint indices active at every consecutive-chord hit.

    A nonempty result names a face certifying the polyline geodesic (the
    reverse chords certify the reverse direction, as the Hilbert test
    needs).  Rays that never exit yield an empty witness.
    """
    pts = [as_point(p, polytope.dim, f"polyline[{i}]") for i, p in enumerate(polyline)]
    if len(pts) < 2:
        raise GeometryError("a polyline needs at least two points")
    common: frozenset[int] | None = None
    for i in range(len(pts) - 1):
        p, q = (pts[i + 1], pts[i]) if reverse else (pts[i], pts[i + 1])
        hit = polytope.ray_boundary(p, q)
        if hit.at_infinity:
            return frozenset()
        active = polytope.active_face(hit.point)
        common = active if common is None else (common & active)
    return common if common is not None else frozenset()


def _is_exposed(domain: ConvexDomain, a: np.ndarray) -> bool:
    if isinstance(domain, EuclideanBall):
        return True
    if isinstance(domain, HPolytope):
        idx = sorted(domain.active_face(a))
        return bool(np.linalg.matrix_rank(domain.A[idx], tol=1e-10) == domain.dim)
    if isinstance(domain, AffineImage):
        return _is_exposed(domain.inner, domain.map.invert(a))
    if isinstance(domain, IntersectionDomain):
        rows = []
        for part in domain.parts:
            if abs(part.contains(a)) > 10.0 * tol.EPS_BD:
                continue
            if isinstance(part, EuclideanBall):
                return True
            if isinstance(part, HPolytope):
                rows.extend(part.A[j] for j in part.active_face(a))
            else:
                rows.append(part.support_direction(a))
        if not rows:
            raise GeometryError("point is not on the intersection boundary")
        return bool(np.linalg.matrix_rank(np.array(rows), tol=1e-10) == domain.dim)
    raise GeometryError(f"exposedness undecided for {type(domain).__name__}")


def unique_geodesic_pair(domain: ConvexDomain, x, z) -> bool:
    """Whether the geodesic from x to z is unique (up to reparametrization).

    True exactly when the boundary hit of the ray x->z is an exposed
    point: always in a ball, and at a vertex of a polytope.  Undefined
    (raises) when the hit is at infinity.
    """
    x = as_point(x, domain.dim, "x")
    z = as_point(z, domain.dim, "z")
    if np.linalg.norm(z - x) <= tol.EPS_PT:
        raise GeometryError("unique-geodesy needs two distinct points")
    if domain.contains(x) <= 0.0 or domain.contains(z) <= 0.0:
        raise GeometryError("both points must be interior")
    hit = domain.ray_boundary(x, z)
    if hit.at_infinity:
        raise GeometryError(
            "unique-geodesy predicate is undefined for hits at infinity")
    return _is_exposed(domain, hit.point)
