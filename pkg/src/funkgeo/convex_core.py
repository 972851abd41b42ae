"""Convex domains and the geometric primitives every metric is built on.

A *proper convex domain* is an open, nonempty, convex subset of n-space
that is not the whole space.  Four representations are supported:

- ``HPolytope``       -- intersection of finitely many open half-spaces,
- ``EuclideanBall``   -- open ball with a center and a radius,
- ``AffineImage``     -- invertible affine image of another domain,
- ``IntersectionDomain`` -- intersection of several domains.

Every domain answers three questions through one uniform interface:

- ``contains(x)``     -- signed margin, positive iff x is strictly interior,
- ``ray_boundary(x, y)`` -- where the ray from x through y leaves the
  domain: either a finite boundary point with its ray parameter t >= 1
  (the exit point is x + t*(y - x)) or "at infinity" with the recession
  direction when the ray never leaves,
- ``support_direction(a)`` -- an outward normal direction at a boundary
  point, from which :func:`supporting_functional` builds the linear form
  h with h(a) = 1 and h < 1 on the domain (after recentering at an
  interior base point).

All values are immutable after construction and every operation is a pure
function, so domains are safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from ._linprog import chebyshev_center, recession_cone_is_trivial


class GeometryError(ValueError):
    """Invalid geometric input: dimension mismatch, point not interior, ..."""


class DomainSpecError(GeometryError):
    """A domain description violates a construction invariant."""


Vector = np.ndarray


def as_point(x, dim: int | None = None, name: str = "point") -> Vector:
    """Validate and convert a point-like object to a float vector."""
    p = np.asarray(x, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise GeometryError(f"{name} must be a 1-d coordinate vector")
    if not np.all(np.isfinite(p)):
        raise GeometryError(f"{name} has a non-finite coordinate")
    if dim is not None and p.size != dim:
        raise GeometryError(f"{name} has dimension {p.size}, expected {dim}")
    return p


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LinearForm:
    """Affine functional x -> <coeffs, x> + offset."""

    coeffs: Vector
    offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _readonly(np.atleast_1d(self.coeffs)))
        object.__setattr__(self, "offset", float(self.offset))

    def __call__(self, x) -> float:
        return float(self.coeffs @ np.asarray(x, dtype=float) + self.offset)

    @property
    def dim(self) -> int:
        return self.coeffs.size


@dataclass(frozen=True)
class Hit:
    """Result of casting a ray against a domain boundary.

    Finite hits carry the boundary point and the parameter t >= 1 with
    point = x + t*(y - x).  At-infinity hits carry the recession
    direction instead; their parameter is ``inf``.
    """

    t: float
    point: Vector | None = None
    direction: Vector | None = None

    @property
    def at_infinity(self) -> bool:
        return self.point is None

    @staticmethod
    def finite(point: Vector, t: float) -> "Hit":
        return Hit(t=float(t), point=_readonly(point))

    @staticmethod
    def escaped(direction: Vector) -> "Hit":
        return Hit(t=np.inf, direction=_readonly(direction))


def to_projective(hit: Hit) -> Vector:
    """Homogeneous coordinates of a hit, normalized to unit Euclidean norm.

    Finite points embed as (p, 1); hits at infinity as (direction, 0).
    """
    if hit.at_infinity:
        v = np.append(hit.direction, 0.0)
    else:
        v = np.append(hit.point, 1.0)
    return v / np.linalg.norm(v)


class ConvexDomain:
    """Base class for proper convex domains."""

    dim: int

    # -- interface ---------------------------------------------------------

    def contains(self, x) -> float:
        """Signed margin: > 0 strictly interior, < 0 exterior, ~ 0 boundary."""
        raise NotImplementedError

    def ray_boundary(self, x, y) -> Hit:
        """Exit of the ray from interior point x through y (x != y)."""
        raise NotImplementedError

    def support_direction(self, a) -> Vector:
        """Outward normal direction at a boundary point a."""
        raise NotImplementedError

    def base_point(self) -> Vector:
        """A designated interior point, used for recentering."""
        raise NotImplementedError

    def is_bounded(self) -> bool:
        raise NotImplementedError

    # -- shared helpers ----------------------------------------------------

    def _check_ray_inputs(self, x, y) -> tuple[Vector, Vector, Vector]:
        x = as_point(x, self.dim, "ray origin")
        y = as_point(y, self.dim, "ray target")
        if self.contains(x) <= 0.0:
            raise GeometryError("ray origin is not interior to the domain")
        d = y - x
        if np.linalg.norm(d) <= tol.EPS_PT:
            raise GeometryError("ray origin and target coincide")
        return x, y, d

    def interior_samples(self, k: int, rng: np.random.Generator,
                         reach: float = 1e3) -> np.ndarray:
        """k interior points, drawn by casting rays from the base point.

        Unbounded directions are truncated at ``reach``.  Not uniform; meant
        for validation sampling, not integration.
        """
        p = self.base_point()
        out = np.empty((k, self.dim))
        for i in range(k):
            u = rng.standard_normal(self.dim)
            u /= np.linalg.norm(u)
            hit = self.ray_boundary(p, p + u)
            t_max = min(hit.t, reach)
            frac = rng.random() ** (1.0 / self.dim)
            out[i] = p + (0.999 * frac * t_max) * u
        return out


class HPolytope(ConvexDomain):
    """Open polytope {x : A x < b}, optionally with a vertex description.

    When vertices are supplied they are checked for consistency: each
    vertex satisfies every constraint, touches at least one, and every
    constraint is touched by some vertex (so the two descriptions agree).
    """

    def __init__(self, A, b, vertices=None, witness=None):
        A = np.atleast_2d(np.asarray(A, dtype=float))
        b = np.asarray(b, dtype=float).ravel()
        if A.ndim != 2 or A.shape[0] != b.size:
            raise DomainSpecError("constraint matrix and thresholds disagree in shape")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise DomainSpecError("constraints contain non-finite entries")
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms <= 0.0):
            raise DomainSpecError("constraint rows must be nontrivial linear forms")
        self.A = _readonly(A)
        self.b = _readonly(b)
        self._row_norms = _readonly(norms)
        self.dim = A.shape[1]

        self.vertices = None
        if vertices is not None:
            V = np.atleast_2d(np.asarray(vertices, dtype=float))
            if V.shape[1] != self.dim:
                raise DomainSpecError("vertex dimension does not match constraints")
            self._validate_vertices(V)
            self.vertices = _readonly(V)

        self._witness = None
        if witness is not None:
            w = as_point(witness, self.dim, "witness")
            if self.contains(w) <= tol.EPS_PT:
                raise DomainSpecError("witness point is not strictly interior")
            self._witness = _readonly(w)
        self._base = None
        self._bounded = None

    def _validate_vertices(self, V: np.ndarray) -> None:
        # Scale-relative tolerance: vertex data is user input, not computed.
        scale = max(1.0, float(np.max(np.abs(V))))
        eps = 1e-7 * scale
        act = V @ self.A.T - self.b  # (m, k)
        act = act / self._row_norms
        if np.any(act > eps):
            i, j = np.unravel_index(np.argmax(act), act.shape)
            raise DomainSpecError(
                f"vertex {i} violates constraint {j} by {act[i, j]:.3g}")
        if np.any(np.min(np.abs(act), axis=1) > eps):
            i = int(np.argmax(np.min(np.abs(act), axis=1)))
            raise DomainSpecError(f"vertex {i} does not touch any constraint")
        slack_per_con = np.max(act, axis=0)
        if np.any(slack_per_con < -eps):
            j = int(np.argmin(slack_per_con))
            raise DomainSpecError(
                f"constraint {j} is not supported by any vertex")

    # -- ConvexDomain ------------------------------------------------------

    def contains(self, x) -> float:
        x = as_point(x, self.dim)
        return float(np.min(self.b - self.A @ x))

    def ray_boundary(self, x, y) -> Hit:
        x, y, d = self._check_ray_inputs(x, y)
        deriv = self.A @ d
        # Normalized derivative decides parallel-vs-hit; avoids huge finite t.
        scaled = deriv / (self._row_norms * np.linalg.norm(d))
        candidates = scaled > tol.EPS_DIR
        if not np.any(candidates):
            return Hit.escaped(d)
        slack = self.b - self.A @ x
        t = np.min(slack[candidates] / deriv[candidates])
        return Hit.finite(x + t * d, t)

    def support_direction(self, a) -> Vector:
        a = as_point(a, self.dim)
        dist = (self.b - self.A @ a) / self._row_norms
        if abs(np.min(dist)) > tol.EPS_BD:
            raise GeometryError("point is not on the domain boundary")
        # Most activated constraint; ties resolve to the lowest index.
        act = -dist
        j = int(np.flatnonzero(act >= np.max(act) - 1e-12)[0])
        return self.A[j] / self._row_norms[j]

    def base_point(self) -> Vector:
        if self._base is None:
            if self._witness is not None:
                base = self._witness
            elif self.vertices is not None:
                base = self.vertices.mean(axis=0)
            else:
                try:
                    base = chebyshev_center(self.A, self.b)
                except ValueError as exc:
                    raise DomainSpecError(
                        f"cannot pick an interior base point: {exc}") from exc
            if self.contains(base) <= 0.0:
                raise DomainSpecError("computed base point is not interior")
            self._base = _readonly(base)
        return self._base

    def is_bounded(self) -> bool:
        if self._bounded is None:
            self._bounded = recession_cone_is_trivial(self.A)
        return self._bounded

    # -- polytope extras ---------------------------------------------------

    def active_face(self, a) -> frozenset[int]:
        """Indices of constraints active at boundary point a (nonempty)."""
        a = as_point(a, self.dim)
        dist = (self.b - self.A @ a) / self._row_norms
        if abs(np.min(dist)) > tol.EPS_BD:
            raise GeometryError(
                "active face undefined: point is interior or exterior")
        active = frozenset(int(j) for j in np.flatnonzero(np.abs(dist) <= tol.EPS_FACE))
        if not active:
            raise GeometryError("empty active set")
        return active

    def recession_contains(self, v) -> bool:
        """True iff direction v is a recession direction of the closure."""
        v = as_point(v, self.dim)
        nv = np.linalg.norm(v)
        if nv <= tol.EPS_PT:
            return True
        return bool(np.all(self.A @ v <= tol.EPS_DIR * self._row_norms * nv))

    def shifted(self, b_new) -> "HPolytope":
        """Same normals with new thresholds (vertex data dropped)."""
        return HPolytope(self.A, b_new)

    @classmethod
    def box(cls, low, high) -> "HPolytope":
        """Axis-aligned open box, constraints ordered +e1, -e1, +e2, -e2, ...

        Vertices and the center witness are attached automatically.
        """
        low = np.asarray(low, dtype=float).ravel()
        high = np.asarray(high, dtype=float).ravel()
        if low.size != high.size or np.any(low >= high):
            raise DomainSpecError("box needs low < high componentwise")
        n = low.size
        rows, th = [], []
        for i in range(n):
            e = np.zeros(n)
            e[i] = 1.0
            rows += [e, -e]
            th += [high[i], -low[i]]
        corners = np.array(list(itertools.product(*zip(low, high))))
        return cls(np.array(rows), np.array(th), vertices=corners,
                   witness=(low + high) / 2.0)

    @classmethod
    def from_polygon_vertices(cls, vertices) -> "HPolytope":
        """2-d polytope from the vertices of a convex polygon (any order)."""
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        if V.shape[1] != 2 or V.shape[0] < 3:
            raise DomainSpecError("need at least three 2-d vertices")
        centroid = V.mean(axis=0)
        order = np.argsort(np.arctan2(V[:, 1] - centroid[1], V[:, 0] - centroid[0]))
        V = V[order]
        rows, th = [], []
        for i in range(V.shape[0]):
            p, q = V[i], V[(i + 1) % V.shape[0]]
            edge = q - p
            normal = np.array([edge[1], -edge[0]])
            if normal @ (centroid - p) > 0.0:
                normal = -normal
            rows.append(normal)
            th.append(normal @ p)
        return cls(np.array(rows), np.array(th), vertices=V, witness=centroid)


class EuclideanBall(ConvexDomain):
    """Open Euclidean ball with the given center and radius."""

    def __init__(self, center, radius):
        self.center = _readonly(as_point(center, name="center"))
        radius = float(radius)
        if not (radius > 0.0 and np.isfinite(radius)):
            raise DomainSpecError("ball radius must be a positive finite number")
        self.radius = radius
        self.dim = self.center.size

    def contains(self, x) -> float:
        x = as_point(x, self.dim)
        return self.radius - float(np.linalg.norm(x - self.center))

    def ray_boundary(self, x, y) -> Hit:
        x, y, d = self._check_ray_inputs(x, y)
        w = x - self.center
        alpha = float(d @ d)
        beta = float(d @ w)
        gamma = float(w @ w) - self.radius ** 2  # < 0: x interior
        disc = beta * beta - alpha * gamma
        root = np.sqrt(disc)
        # Stable positive quadratic root (avoid cancellation when beta > 0).
        t = (-gamma) / (beta + root) if beta > 0.0 else (root - beta) / alpha
        return Hit.finite(x + t * d, t)

    def support_direction(self, a) -> Vector:
        a = as_point(a, self.dim)
        w = a - self.center
        if abs(np.linalg.norm(w) - self.radius) > tol.EPS_BD:
            raise GeometryError("point is not on the ball boundary")
        return w / np.linalg.norm(w)

    def base_point(self) -> Vector:
        return self.center

    def is_bounded(self) -> bool:
        return True


class AffineMap:
    """Invertible affine map x -> matrix @ x + translation."""

    def __init__(self, matrix, translation):
        M = np.atleast_2d(np.asarray(matrix, dtype=float))
        t = as_point(translation, name="translation")
        if M.shape[0] != M.shape[1] or M.shape[0] != t.size:
            raise DomainSpecError("affine map needs a square matrix matching the translation")
        if not np.all(np.isfinite(M)):
            raise DomainSpecError("affine matrix has non-finite entries")
        svals = np.linalg.svd(M, compute_uv=False)
        if svals[-1] <= tol.EPS_DET * svals[0]:
            raise DomainSpecError("affine map is singular within tolerance")
        self.matrix = _readonly(M)
        self.translation = _readonly(t)
        self.inverse_matrix = _readonly(np.linalg.inv(M))
        self.sigma_min = float(svals[-1])
        self.dim = t.size

    def __call__(self, x) -> Vector:
        return np.asarray(x, dtype=float) @ self.matrix.T + self.translation

    def invert(self, y) -> Vector:
        return (np.asarray(y, dtype=float) - self.translation) @ self.inverse_matrix.T

    def push_direction(self, d) -> Vector:
        return self.matrix @ np.asarray(d, dtype=float)

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        return cls(np.eye(dim), np.zeros(dim))

    @classmethod
    def homothety(cls, center, factor: float) -> "AffineMap":
        center = as_point(center, name="homothety center")
        factor = float(factor)
        return cls(factor * np.eye(center.size), (1.0 - factor) * center)


class AffineImage(ConvexDomain):
    """Lazy affine image of another domain.

    Queries pull the inputs back, ask the inner domain, and push the
    answers forward.  Margins are the inner margins scaled by the map's
    smallest singular value, which keeps the sign exact and reproduces
    Euclidean margins for similarity maps.
    """

    def __init__(self, inner: ConvexDomain, amap: AffineMap):
        if amap.dim != inner.dim:
            raise DomainSpecError("affine map dimension does not match the domain")
        self.inner = inner
        self.map = amap
        self.dim = inner.dim

    def contains(self, x) -> float:
        x = as_point(x, self.dim)
        return self.map.sigma_min * self.inner.contains(self.map.invert(x))

    def ray_boundary(self, x, y) -> Hit:
        x, y, d = self._check_ray_inputs(x, y)
        hit = self.inner.ray_boundary(self.map.invert(x), self.map.invert(y))
        if hit.at_infinity:
            return Hit.escaped(self.map.push_direction(hit.direction))
        # The ray parameter is an affine ratio, hence shared by both charts.
        return Hit.finite(self.map(hit.point), hit.t)

    def support_direction(self, a) -> Vector:
        a = as_point(a, self.dim)
        c = self.inner.support_direction(self.map.invert(a))
        return self.map.inverse_matrix.T @ c

    def base_point(self) -> Vector:
        return self.map(self.inner.base_point())

    def is_bounded(self) -> bool:
        return self.inner.is_bounded()


class IntersectionDomain(ConvexDomain):
    """Intersection of several convex domains of equal dimension."""

    def __init__(self, parts, witness=None):
        parts = list(parts)
        if not parts:
            raise DomainSpecError("intersection needs at least one part")
        dims = {p.dim for p in parts}
        if len(dims) != 1:
            raise DomainSpecError("intersection parts have mixed dimensions")
        self.parts = tuple(parts)
        self.dim = parts[0].dim
        self._base = None
        if witness is not None:
            w = as_point(witness, self.dim, "witness")
            if min(p.contains(w) for p in parts) <= 0.0:
                raise DomainSpecError("witness is not interior to every part")
            self._base = _readonly(w)

    def contains(self, x) -> float:
        x = as_point(x, self.dim)
        return min(p.contains(x) for p in self.parts)

    def ray_boundary(self, x, y) -> Hit:
        x, y, d = self._check_ray_inputs(x, y)
        best = None
        for p in self.parts:
            hit = p.ray_boundary(x, y)
            if not hit.at_infinity and (best is None or hit.t < best.t):
                best = hit
        if best is None:
            return Hit.escaped(d)
        return best

    def support_direction(self, a) -> Vector:
        a = as_point(a, self.dim)
        for p in self.parts:  # lowest part index wins on shared boundaries
            if abs(p.contains(a)) <= _boundary_gate(p):
                return p.support_direction(a)
        raise GeometryError("point is not on the intersection boundary")

    def base_point(self) -> Vector:
        if self._base is None:
            guess = np.mean([p.base_point() for p in self.parts], axis=0)
            if self.contains(guess) <= 0.0:
                raise DomainSpecError(
                    "cannot infer an interior point of the intersection; "
                    "supply a witness")
            self._base = _readonly(guess)
        return self._base

    def is_bounded(self) -> bool:
        if any(p.is_bounded() for p in self.parts):
            return True
        if all(isinstance(p, HPolytope) for p in self.parts):
            return recession_cone_is_trivial(np.vstack([p.A for p in self.parts]))
        return False  # conservative for mixed unbounded parts


def _boundary_gate(domain: ConvexDomain) -> float:
    # Polytope margins are unnormalized slacks; widen by the largest row norm.
    if isinstance(domain, HPolytope):
        return tol.EPS_BD * float(np.max(domain._row_norms))
    return tol.EPS_BD


def supporting_functional(domain: ConvexDomain, a) -> LinearForm:
    """Linear form h with h(a) = 1 and h < 1 on the domain.

    The normalization is relative to the domain's base point p0: the
    returned form satisfies h(p0) = 0, which is the usual convention
    after translating the domain so that p0 is the origin.
    """
    a = as_point(a, domain.dim, "boundary point")
    c = domain.support_direction(a)
    p0 = domain.base_point()
    denom = float(c @ (a - p0))
    if denom <= 0.0:
        raise GeometryError("degenerate supporting direction")
    coeffs = c / denom
    return LinearForm(coeffs, -float(coeffs @ p0))


def affine_image(domain: ConvexDomain, amap: AffineMap) -> AffineImage:
    """The image of a domain under an invertible affine map."""
    return AffineImage(domain, amap)
