"""Reproducible property suites.

Each suite exercises one group of invariants at desk scale and returns a
list of check results; :func:`run_suite` wraps them in a deterministic
report (seed, tolerance and count overrides, one pass/fail entry per
check).  Checks are independent of each other and always executed and
reported in definition order, so reports are byte-stable for a fixed
seed apart from the single run-metadata line.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .ball_geometry import backward_ball, forward_ball, sandwich, sphere_sample
from .classical_oracles import ceva_product, cross_ratio, menelaus_product
from .convex_core import (
    AffineImage,
    AffineMap,
    EuclideanBall,
    GeometryError,
    HPolytope,
    IntersectionDomain,
    LinearForm,
    supporting_functional,
)
from .finsler_tangent import (
    convergence_order,
    finite_difference_check,
    polytope_support_form,
    tangent_norm,
)
from .geodesy import (
    FaceCone,
    cone_member,
    polyline_face_witness,
    triangle_report,
    unique_geodesic_pair,
    verify_geodesic,
    verify_hilbert_geodesic,
)
from .metric_engine import (
    distance_from_ratio,
    funk,
    funk_batch,
    funk_polytope_closed_form,
    funk_unit_ball_closed_form,
    hilbert,
    minkowski_max_distance,
    ratio_from_distances,
    relative_funk,
)
from .projection import (
    foot_certificate,
    forward_ball_reaches,
    is_perpendicular,
    nearest_on_convex,
    nearest_on_segment,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict


@dataclass
class RunConfig:
    """Seed, tolerance overrides and sample-count overrides for one run."""

    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def tol(self, key: str, default: float) -> float:
        return float(self.tolerances.get(key, default))

    def count(self, key: str, default: int) -> int:
        return int(self.counts.get(key, default))


# ---------------------------------------------------------------------------
# deterministic geometry generators


def unit_square() -> HPolytope:
    return HPolytope.box([-1.0, -1.0], [1.0, 1.0])


def unit_ball(dim: int = 2) -> EuclideanBall:
    return EuclideanBall(np.zeros(dim), 1.0)


def random_polytope(rng: np.random.Generator, dim: int, extra: int = 3) -> HPolytope:
    """Bounded polytope: a jittered box plus a few random cuts, 0 interior."""
    rows, th = [], []
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = 1.0
        rows += [e, -e]
        th += [1.0 + rng.uniform(0.0, 0.5), 1.0 + rng.uniform(0.0, 0.5)]
    for _ in range(extra):
        a = rng.standard_normal(dim)
        a /= np.linalg.norm(a)
        rows.append(a)
        th.append(rng.uniform(0.7, 1.5))
    return HPolytope(np.array(rows), np.array(th), witness=np.zeros(dim))


def random_polygon(rng: np.random.Generator, k: int = 6) -> HPolytope:
    """Random convex polygon with vertex data (points on a stretched circle)."""
    angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, k))
    while np.min(np.diff(angles)) < 0.15:
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, k))
    circle = np.column_stack([np.cos(angles), np.sin(angles)])
    stretch = np.diag(rng.uniform(0.7, 1.4, 2))
    return HPolytope.from_polygon_vertices(circle @ stretch)


def sample_interior(domain, rng: np.random.Generator, m: int,
                    bound: float = 1.7, min_margin: float = 1e-6) -> np.ndarray:
    """m interior points by rejection from a bounding box."""
    out = []
    while len(out) < m:
        block = rng.uniform(-bound, bound, size=(4 * m, domain.dim))
        for p in block:
            if domain.contains(p) > min_margin:
                out.append(p)
                if len(out) == m:
                    break
    return np.array(out)


def random_affine_map(rng: np.random.Generator, dim: int) -> AffineMap:
    while True:
        M = rng.standard_normal((dim, dim))
        svals = np.linalg.svd(M, compute_uv=False)
        if svals[-1] > 1e-3 * svals[0] and svals[-1] > 0.05:
            return AffineMap(M, rng.uniform(-0.5, 0.5, dim))


def random_projective_map(rng: np.random.Generator,
                          corners: np.ndarray) -> np.ndarray:
    """3x3 projective matrix keeping the given 2-d points well inside the chart."""
    while True:
        P = np.eye(3) + 0.2 * rng.standard_normal((3, 3))
        hom = np.column_stack([corners, np.ones(len(corners))]) @ P.T
        if np.min(hom[:, 2]) < 0.3:
            continue
        if abs(np.linalg.det(P)) < 1e-3:
            continue
        return P


def apply_projective(P: np.ndarray, pts: np.ndarray) -> np.ndarray:
    pts = np.atleast_2d(pts)
    hom = np.column_stack([pts, np.ones(len(pts))]) @ P.T
    return hom[:, :2] / hom[:, 2:]


def _intersect_lines(p0, d0, p1, d1):
    """Intersection of two parametrized 2-d lines, or None when near parallel."""
    M = np.column_stack([d0, -d1])
    det = float(np.linalg.det(M))
    if abs(det) < 1e-6:
        return None
    s = np.linalg.solve(M, p1 - p0)
    return p0 + s[0] * d0


# ---------------------------------------------------------------------------
# suites


def suite_convex_core(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(1)
    square = unit_square()
    ball = unit_ball()
    rotated = AffineImage(square, random_affine_map(rng, 2))
    inter = IntersectionDomain([square, EuclideanBall([0.3, 0.0], 1.1)],
                               witness=[0.0, 0.0])
    domains = [square, ball, rotated, inter]

    n = cfg.count("convex_core.rays", 2000)
    worst = 0.0
    for domain in domains:
        pts = sample_interior(domain, rng, n // len(domains), bound=2.0)
        for x in pts:
            y = x + 0.3 * rng.standard_normal(domain.dim)
            if domain.contains(y) <= 1e-6 or np.linalg.norm(y - x) < 1e-6:
                continue
            hit = domain.ray_boundary(x, y)
            if not hit.at_infinity:
                worst = max(worst, abs(domain.contains(hit.point)))
    gate = cfg.tol("convex_core.boundary", tol.EPS_BD)
    checks.append(CheckResult("ray_cast_boundary_consistency", worst <= gate,
                              {"max_abs_margin": worst, "tolerance": gate}))

    trials = cfg.count("convex_core.monotone", 300)
    ok = True
    worst_jump = 0.0
    for _ in range(trials):
        dim = int(rng.integers(2, 5))
        poly = random_polytope(rng, dim)
        x = sample_interior(poly, rng, 1, bound=1.6)[0]
        y = x + 0.2 * rng.standard_normal(dim)
        if poly.contains(y) <= 1e-6 or np.linalg.norm(y - x) < 1e-6:
            continue
        t_old = poly.ray_boundary(x, y).t
        j = int(rng.integers(0, poly.b.size))
        slack_x = poly.b[j] - poly.A[j] @ x
        b_new = poly.b.copy()
        b_new[j] -= 0.5 * slack_x
        t_new = poly.shifted(b_new).ray_boundary(x, y).t
        if np.isfinite(t_old) or np.isfinite(t_new):
            jump = t_new - t_old if np.isfinite(t_new) and np.isfinite(t_old) else (
                np.inf if np.isfinite(t_new) and not np.isfinite(t_old) else 0.0)
            worst_jump = max(worst_jump, jump)
            ok = ok and (jump <= 1e-12)
    checks.append(CheckResult("hit_parameter_monotone_in_slack", ok,
                              {"max_increase": worst_jump, "trials": trials}))

    trials = cfg.count("convex_core.equivariance", 300)
    worst = 0.0
    for _ in range(trials):
        amap = random_affine_map(rng, 2)
        image = AffineImage(square, amap)
        x = sample_interior(square, rng, 1, bound=1.0)[0]
        y = sample_interior(square, rng, 1, bound=1.0)[0]
        if np.linalg.norm(y - x) < 1e-4:
            continue
        hit = square.ray_boundary(x, y)
        hit_img = image.ray_boundary(amap(x), amap(y))
        if hit.at_infinity != hit_img.at_infinity:
            worst = np.inf
            continue
        if not hit.at_infinity:
            worst = max(worst, float(np.linalg.norm(hit_img.point - amap(hit.point))))
    gate = cfg.tol("convex_core.equivariance", tol.EPS_GEOM)
    checks.append(CheckResult("affine_equivariance_of_ray_cast", worst <= gate,
                              {"max_point_gap": worst, "tolerance": gate}))

    n = cfg.count("convex_core.support", 10_000)
    worst = -np.inf
    for domain in domains:
        boundary = []
        pts = sample_interior(domain, rng, 50, bound=2.0)
        for x in pts:
            y = x + rng.standard_normal(domain.dim)
            if domain.contains(y) <= 1e-6 or np.linalg.norm(y - x) < 1e-6:
                continue
            hit = domain.ray_boundary(x, y)
            if not hit.at_infinity:
                boundary.append(hit.point)
        samples = sample_interior(domain, rng, n // len(domains), bound=2.0)
        for a in boundary[:20]:
            h = supporting_functional(domain, a)
            worst = max(worst, float(np.max(samples @ h.coeffs + h.offset)))
    checks.append(CheckResult("supporting_functional_below_one", worst < 1.0 + tol.EPS_BD,
                              {"max_value_on_interior": worst}))

    trials = cfg.count("convex_core.intersection", 400)
    worst = 0.0
    parts = [square, EuclideanBall([0.3, 0.0], 1.1)]
    both = IntersectionDomain(parts, witness=[0.0, 0.0])
    pts = sample_interior(both, rng, trials, bound=1.0)
    for x, y in zip(pts[::2], pts[1::2]):
        if np.linalg.norm(y - x) < 1e-6:
            continue
        t_both = both.ray_boundary(x, y).t
        t_min = min(p.ray_boundary(x, y).t for p in parts)
        worst = max(worst, abs(t_both - t_min))
    gate = cfg.tol("convex_core.intersection", tol.EPS_GEOM)
    checks.append(CheckResult("intersection_hit_is_min_of_children", worst <= gate,
                              {"max_parameter_gap": worst, "tolerance": gate}))
    return checks


def suite_oracle_closedform(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(2)
    per_dim = cfg.count("oracle.pairs_per_dim", 2500)
    gate = cfg.tol("oracle.agreement", 1e-9)

    worst = 0.0
    for dim in (2, 3, 4, 5):
        poly = random_polytope(rng, dim)
        X = sample_interior(poly, rng, per_dim, bound=1.6)
        Y = sample_interior(poly, rng, per_dim, bound=1.6)
        for x, y in zip(X, Y):
            worst = max(worst, abs(funk_polytope_closed_form(poly, x, y)
                                   - funk(poly, x, y)))
    checks.append(CheckResult("polytope_closed_form_matches_ray_cast", worst <= gate,
                              {"max_gap": worst, "tolerance": gate,
                               "pairs": 4 * per_dim}))

    worst = 0.0
    for dim in (2, 3, 4, 5):
        ball = unit_ball(dim)
        X = sample_interior(ball, rng, per_dim, bound=1.0)
        Y = sample_interior(ball, rng, per_dim, bound=1.0)
        for x, y in zip(X, Y):
            worst = max(worst, abs(funk_unit_ball_closed_form(x, y)
                                   - funk(ball, x, y)))
    checks.append(CheckResult("unit_ball_closed_form_matches_ray_cast", worst <= gate,
                              {"max_gap": worst, "tolerance": gate,
                               "pairs": 4 * per_dim}))
    return checks


def suite_axioms(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(3)
    total = cfg.count("axioms.triples", 100_000)
    domains = [(unit_square(), 1.0), (random_polytope(rng, 3), 1.6),
               (unit_ball(), 1.0)]
    share = total // len(domains)

    # Samples stay 1e-2 clear of the boundary: the 1e-12 slack budget is a
    # statement about the metric, not about the conditioning of slacks of
    # nearly-boundary points (their relative error alone exceeds it).
    min_value = np.inf
    max_violation = -np.inf
    for domain, bound in domains:
        X = sample_interior(domain, rng, share, bound=bound, min_margin=1e-2)
        Y = sample_interior(domain, rng, share, bound=bound, min_margin=1e-2)
        Z = sample_interior(domain, rng, share, bound=bound, min_margin=1e-2)
        fxy = funk_batch(domain, X, Y)
        fyz = funk_batch(domain, Y, Z)
        fxz = funk_batch(domain, X, Z)
        min_value = min(min_value, float(np.min([fxy.min(), fyz.min(), fxz.min()])))
        max_violation = max(max_violation, float(np.max(fxz - fxy - fyz)))
    gate = cfg.tol("axioms.triangle_slack", 1e-12)
    checks.append(CheckResult("nonnegativity", min_value >= 0.0,
                              {"min_value": min_value, "triples": total}))
    checks.append(CheckResult("triangle_inequality", max_violation <= gate,
                              {"max_violation": max_violation, "tolerance": gate,
                               "triples": total}))

    n_proj = cfg.count("axioms.projectivity", 10_000)
    worst = 0.0
    for domain, bound in domains:
        X = sample_interior(domain, rng, n_proj // 3, bound=bound)
        Y = sample_interior(domain, rng, n_proj // 3, bound=bound)
        s = rng.uniform(0.05, 0.95, len(X))[:, None]
        Z = X + s * (Y - X)
        gap = np.abs(funk_batch(domain, X, Y)
                     - funk_batch(domain, X, Z) - funk_batch(domain, Z, Y))
        worst = max(worst, float(np.max(gap)))
    gate = cfg.tol("axioms.projectivity", 1e-9)
    checks.append(CheckResult("projectivity_on_segments", worst <= gate,
                              {"max_gap": worst, "tolerance": gate,
                               "triples": n_proj}))

    n_sep = cfg.count("axioms.separation", 5000)
    min_f = np.inf
    for domain, bound in [(unit_square(), 1.0), (unit_ball(), 1.0)]:
        X = sample_interior(domain, rng, n_sep // 2, bound=bound)
        Y = sample_interior(domain, rng, n_sep // 2, bound=bound)
        keep = np.linalg.norm(Y - X, axis=1) > 1e-6
        min_f = min(min_f, float(np.min(funk_batch(domain, X[keep], Y[keep]))))
    half_plane = HPolytope([[0.0, -1.0]], [0.0], witness=[0.0, 1.0])
    X = np.column_stack([rng.uniform(-3, 3, 200), rng.uniform(0.2, 3.0, 200)])
    Y = X + np.column_stack([rng.uniform(0.1, 2.0, 200), np.zeros(200)])
    parallel = funk_batch(half_plane, X, Y)
    checks.append(CheckResult(
        "separation_iff_bounded",
        min_f > 0.0 and float(np.max(np.abs(parallel))) == 0.0,
        {"min_bounded_value": min_f,
         "max_parallel_value": float(np.max(np.abs(parallel)))}))
    return checks


def suite_monotonicity(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(4)
    pairs = cfg.count("monotonicity.pairs", 4000)

    worst = -np.inf
    for dim in (2, 3):
        outer = random_polytope(rng, dim)
        inner = outer.shifted(outer.b - 0.15)
        X = sample_interior(inner, rng, pairs // 2, bound=1.6, min_margin=1e-2)
        Y = sample_interior(inner, rng, pairs // 2, bound=1.6, min_margin=1e-2)
        worst = max(worst, float(np.max(funk_batch(outer, X, Y)
                                        - funk_batch(inner, X, Y))))
    checks.append(CheckResult("smaller_domain_larger_distance", worst <= 1e-12,
                              {"max_violation": worst}))

    square = unit_square()
    disk = EuclideanBall([0.3, 0.0], 1.1)
    both = IntersectionDomain([square, disk], witness=[0.0, 0.0])
    X = sample_interior(both, rng, 500, bound=1.0)
    Y = sample_interior(both, rng, 500, bound=1.0)
    worst = 0.0
    for x, y in zip(X, Y):
        worst = max(worst, abs(funk(both, x, y)
                               - max(funk(square, x, y), funk(disk, x, y))))
    gate = cfg.tol("monotonicity.intersection", 1e-9)
    checks.append(CheckResult("intersection_distance_is_max", worst <= gate,
                              {"max_gap": worst, "tolerance": gate}))

    box3 = HPolytope.box([-1.0, -1.2, -0.9], [1.1, 1.0, 1.3])
    origin = np.array([0.1, 0.0, 0.05])
    U = np.linalg.qr(rng.standard_normal((3, 2)))[0][:, :2].T  # 2 x 3 chart
    slice_poly = HPolytope(box3.A @ U.T, box3.b - box3.A @ origin)
    Xp = sample_interior(slice_poly, rng, 400, bound=1.3)
    Yp = sample_interior(slice_poly, rng, 400, bound=1.3)
    ambient_x = origin + Xp @ U
    ambient_y = origin + Yp @ U
    gap = np.abs(funk_batch(slice_poly, Xp, Yp)
                 - funk_batch(box3, ambient_x, ambient_y))
    gate = cfg.tol("monotonicity.slice", 1e-9)
    checks.append(CheckResult("plane_slice_inherits_distance",
                              float(np.max(gap)) <= gate,
                              {"max_gap": float(np.max(gap)), "tolerance": gate}))
    return checks


def suite_invariance(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(5)
    square = unit_square()
    maps = cfg.count("invariance.affine_maps", 1000)
    pairs_per_map = cfg.count("invariance.pairs_per_map", 8)
    gate = cfg.tol("invariance.funk", 1e-9)

    worst = 0.0
    for _ in range(maps):
        amap = random_affine_map(rng, 2)
        image = AffineImage(square, amap)
        X = sample_interior(square, rng, pairs_per_map, bound=1.0)
        Y = sample_interior(square, rng, pairs_per_map, bound=1.0)
        for x, y in zip(X, Y):
            worst = max(worst, abs(funk(image, amap(x), amap(y)) - funk(square, x, y)))
    checks.append(CheckResult("funk_affine_invariance", worst <= gate,
                              {"max_gap": worst, "maps": maps, "tolerance": gate}))

    proj_maps = cfg.count("invariance.projective_maps", 1000)
    gate_h = cfg.tol("invariance.hilbert", 1e-9)
    corners = square.vertices
    worst = 0.0
    for _ in range(proj_maps):
        P = random_projective_map(rng, corners)
        try:
            image = HPolytope.from_polygon_vertices(apply_projective(P, corners))
        except GeometryError:
            continue
        X = sample_interior(square, rng, 4, bound=1.0, min_margin=1e-3)
        Y = sample_interior(square, rng, 4, bound=1.0, min_margin=1e-3)
        for x, y in zip(X, Y):
            xi, yi = apply_projective(P, np.vstack([x, y]))
            worst = max(worst, abs(hilbert(image, xi, yi) - hilbert(square, x, y)))
    checks.append(CheckResult("hilbert_projective_invariance", worst <= gate_h,
                              {"max_gap": worst, "maps": proj_maps,
                               "tolerance": gate_h}))

    n = cfg.count("invariance.symmetry_pairs", 10_000)
    X = sample_interior(square, rng, n, bound=1.0)
    Y = sample_interior(square, rng, n, bound=1.0)
    fwd = funk_batch(square, X, Y)
    bwd = funk_batch(square, Y, X)
    sym_gap = float(np.max(np.abs(0.5 * (fwd + bwd) - 0.5 * (bwd + fwd))))
    hil_gap = 0.0
    for x, y in zip(X[:200], Y[:200]):
        hil_gap = max(hil_gap, abs(hilbert(square, x, y) - hilbert(square, y, x)))
    checks.append(CheckResult("hilbert_symmetry", max(sym_gap, hil_gap) <= 1e-12,
                              {"max_gap": max(sym_gap, hil_gap)}))

    polys = [unit_square(), random_polygon(rng)]
    worst = -np.inf
    for poly in polys:
        diam = float(np.max([np.linalg.norm(u - v) for u in poly.vertices
                             for v in poly.vertices]))
        X = sample_interior(poly, rng, 100, bound=1.5)
        for x in X:
            lam = sandwich(poly, x).lambda_x
            bound = math.log(diam / lam)
            Y = sample_interior(poly, rng, 40, bound=1.5)
            rf = funk_batch(poly, Y, np.tile(x, (len(Y), 1)))
            worst = max(worst, float(np.max(rf)) - bound)
    gate_rb = cfg.tol("invariance.reverse_bound", 1e-9)
    checks.append(CheckResult("reverse_funk_diameter_bound", worst <= gate_rb,
                              {"max_excess": worst, "tolerance": gate_rb}))

    n = cfg.count("invariance.orthant_pairs", 10_000)
    worst = 0.0
    for dim in (2, 4):
        orthant = HPolytope(-np.eye(dim), np.zeros(dim), witness=np.ones(dim))
        X = np.exp(rng.uniform(-2, 2, size=(n // 2, dim)))
        Y = np.exp(rng.uniform(-2, 2, size=(n // 2, dim)))
        direct = funk_batch(orthant, X, Y)
        mapped = np.array([minkowski_max_distance(np.log(x), np.log(y))
                           for x, y in zip(X, Y)])
        worst = max(worst, float(np.max(np.abs(direct - mapped))))
    checks.append(CheckResult("orthant_log_isometry", worst <= 1e-12,
                              {"max_gap": worst, "pairs": n}))
    return checks


def suite_completeness(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(6)
    square = unit_square()
    b = np.array([-1.0, 0.0])
    a = np.array([1.0, 0.0])
    horizon = cfg.count("completeness.horizon", 10_000)

    def chord(k: int) -> np.ndarray:
        return b + (1.0 / k) * (a - b)

    # The sequence marches toward the boundary point b; the distance from a
    # later point back to an earlier one exits at the far endpoint a and
    # shrinks like log((1 - 1/m)/(1 - 1/k)), so the tail supremum vanishes
    # even though the points never converge inside the domain.
    sups = {}
    for k in (10, 100, 1000):
        ms = sorted(set(np.unique(np.geomspace(k, horizon, 40).astype(int))
                        .tolist() + [horizon]))
        sups[k] = max(funk(square, chord(m), chord(k)) for m in ms if m >= k)
    decreasing = sups[10] > sups[100] > sups[1000]
    limit_is_boundary = abs(square.contains(b)) <= tol.EPS_BD \
        and np.linalg.norm(chord(horizon) - b) < 1e-3
    gate = cfg.tol("completeness.tail", 1e-3)
    checks.append(CheckResult(
        "backward_cauchy_chord_tail", sups[1000] < gate and decreasing
        and limit_is_boundary,
        {"tail_sup_at_k1000": sups[1000], "tolerance": gate,
         "sups": {str(k): v for k, v in sups.items()}, "horizon": horizon}))

    configs = cfg.count("completeness.ball_configs", 50)
    ok = True
    worst_margin = np.inf
    for poly in (square, random_polygon(rng)):
        for _ in range(configs):
            x = sample_interior(poly, rng, 1, bound=1.5, min_margin=1e-2)[0]
            rho = rng.uniform(0.1, 3.0)
            ball = forward_ball(poly, x, rho)
            pts = sphere_sample(ball, 32, seed=cfg.seed)
            outer = (1.0 - math.exp(-rho)) * sandwich(poly, x).Lambda_x
            for p in pts:
                worst_margin = min(worst_margin, poly.contains(p))
                ok = ok and poly.contains(p) > 0.0
                ok = ok and np.linalg.norm(p - x) <= outer + 1e-9
    checks.append(CheckResult("forward_balls_relatively_compact", ok,
                              {"min_interior_margin": worst_margin}))
    return checks


def suite_ratio(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(7)
    n = cfg.count("ratio.configs", 10_000)
    gate = cfg.tol("ratio.round_trip", 1e-10)

    domains = [unit_square(), random_polytope(rng, 3), unit_ball()]
    worst_rt = 0.0
    worst_fwd = 0.0
    done = 0
    while done < n:
        domain = domains[done % len(domains)]
        bound = 1.0 if isinstance(domain, EuclideanBall) else 1.6
        x = sample_interior(domain, rng, 1, bound=bound)[0]
        y = sample_interior(domain, rng, 1, bound=bound)[0]
        if np.linalg.norm(y - x) < 1e-4:
            continue
        fxy = funk(domain, x, y)
        if fxy < 1e-6:
            continue
        t_max = domain.ray_boundary(x, y).t
        t = rng.uniform(0.0, 0.95 * min(t_max, 10.0))
        z = x + t * (y - x)
        fxz = funk(domain, x, z)
        t_back = ratio_from_distances(fxy, fxz)
        worst_rt = max(worst_rt, abs(distance_from_ratio(fxy, t_back) - fxz))
        worst_fwd = max(worst_fwd, abs(distance_from_ratio(fxy, t) - fxz))
        done += 1
    checks.append(CheckResult("ratio_round_trip", worst_rt <= gate,
                              {"max_gap": worst_rt, "configs": n, "tolerance": gate}))
    checks.append(CheckResult("distance_from_geometric_ratio", worst_fwd <= gate,
                              {"max_gap": worst_fwd, "tolerance": gate}))

    t_val = ratio_from_distances(math.log(2.0), math.log(4.0))
    back = distance_from_ratio(math.log(2.0), 1.5)
    worked = (abs(t_val - 1.5) <= 1e-12 and abs(back - math.log(4.0)) <= 1e-12
              and abs(ratio_from_distances(math.log(2.0), math.log(2.0)) - 1.0) <= 1e-12
              and abs(ratio_from_distances(math.log(2.0), 0.0)) <= 1e-12
              and abs(distance_from_ratio(math.log(2.0), 1.0) - math.log(2.0)) <= 1e-12
              and abs(distance_from_ratio(math.log(2.0), 0.0)) <= 1e-12)
    checks.append(CheckResult("worked_ratio_instance", worked,
                              {"t": t_val, "recovered_distance": back}))
    return checks


def suite_balls(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(8)
    square = unit_square()
    ball = unit_ball()
    gate = cfg.tol("balls.radius", 1e-8)
    samples = cfg.count("balls.sphere_samples", 1000)

    worst = 0.0
    domains = [square, ball, random_polygon(rng),
               AffineImage(square, random_affine_map(rng, 2))]
    for domain in domains:
        x = sample_interior(domain, rng, 1, bound=2.0, min_margin=1e-2)[0]
        rho = rng.uniform(0.2, 2.0)
        fb = forward_ball(domain, x, rho)
        for p in sphere_sample(fb, samples // len(domains), seed=cfg.seed):
            worst = max(worst, abs(funk(domain, x, p) - rho))
    checks.append(CheckResult("forward_sphere_at_exact_radius", worst <= gate,
                              {"max_gap": worst, "tolerance": gate}))

    x0 = np.array([0.3, -0.2])
    rho = 0.7
    fb = forward_ball(ball, x0, rho)
    realized = fb.realized
    center_gap = float(np.linalg.norm(realized.center - math.exp(-rho) * x0))
    radius_gap = abs(realized.radius - (1.0 - math.exp(-rho)))
    gate_b = cfg.tol("balls.unit_ball_form", 1e-9)
    checks.append(CheckResult(
        "unit_ball_forward_ball_is_euclidean",
        isinstance(realized, EuclideanBall)
        and center_gap <= gate_b and radius_gap <= gate_b,
        {"center_gap": center_gap, "radius_gap": radius_gap}))

    x1 = np.array([0.2, 0.1])
    x2 = np.array([-0.4, 0.3])
    rho1, rho2 = 0.5, 1.1
    b1 = forward_ball(square, x1, rho1)
    b2 = forward_ball(square, x2, rho2)
    lam1 = -math.expm1(-rho1)
    lam2 = -math.expm1(-rho2)
    worst = 0.0
    for p in sphere_sample(b1, 64, seed=cfg.seed):
        # Composite of the two homotheties: the dilation carrying ball 1 to 2.
        q = x2 + lam2 * (x1 - x2) + (lam2 / lam1) * (p - x1)
        worst = max(worst, abs(b2.realized.contains(q)))
    checks.append(CheckResult("forward_balls_similar", worst <= tol.EPS_GEOM,
                              {"max_boundary_margin": worst}))

    pts = sphere_sample(forward_ball(square, np.array([0.2, -0.3]), 0.8), 200,
                        seed=cfg.seed)
    idx = rng.permutation(len(pts))
    mids = 0.5 * (pts + pts[idx])
    fb_mid = forward_ball(square, np.array([0.2, -0.3]), 0.8)
    min_margin = min(fb_mid.realized.contains(m) for m in mids)
    checks.append(CheckResult("forward_balls_convex", min_margin >= -tol.EPS_GEOM,
                              {"min_midpoint_margin": min_margin}))

    bb = backward_ball(square, np.zeros(2), math.log(2.0))
    pts = sample_interior(square, rng, 300, bound=1.0)
    equal = all((bb.realized.contains(p) > 0.0) == (square.contains(p) > 0.0)
                for p in pts)
    bb_large = backward_ball(square, np.array([0.4, -0.2]), 4.0)
    covered = all(bb_large.realized.contains(p) > 0.0 for p in pts)
    checks.append(CheckResult("backward_ball_saturates_to_domain",
                              equal and covered, {"samples": len(pts)}))

    x = np.array([0.3, 0.2])
    rho = 0.5
    bb = backward_ball(square, x, rho)
    worst = 0.0
    certified = 0
    for p in sphere_sample(bb, 64, seed=cfg.seed):
        if bb.radius_is_certified(p):
            certified += 1
            worst = max(worst, abs(funk(square, p, x) - rho))
    checks.append(CheckResult("backward_sphere_radius_on_homothet_side",
                              certified > 0 and worst <= gate,
                              {"max_gap": worst, "certified_points": certified}))

    tiny = forward_ball(square, np.zeros(2), 1e-6)
    spread = float(np.max(np.linalg.norm(
        sphere_sample(tiny, 16, seed=cfg.seed), axis=1)))
    checks.append(CheckResult("forward_ball_shrinks_to_center", spread <= 2e-6,
                              {"max_distance": spread}))
    return checks


def suite_sandwich(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(9)
    configs = cfg.count("sandwich.configs", 100)
    polys = [unit_square(), random_polygon(rng),
             HPolytope.box([-0.8, -1.1, -0.9], [1.2, 0.9, 1.0])]

    fwd_ok, bwd_ok = True, True
    fwd_excess, bwd_excess = 0.0, 0.0
    for poly in polys:
        for _ in range(configs):
            x = sample_interior(poly, rng, 1, bound=1.5, min_margin=1e-2)[0]
            rho = rng.uniform(0.05, 2.5)
            cons = sandwich(poly, x)
            lo, hi = cons.forward_bracket(rho)
            for p in sphere_sample(forward_ball(poly, x, rho), 32, seed=cfg.seed):
                r = float(np.linalg.norm(p - x))
                fwd_ok = fwd_ok and (lo - 1e-9 <= r <= hi + 1e-9)
                fwd_excess = max(fwd_excess, lo - r, r - hi)
            if rho <= math.log(2.0):
                lo, hi = cons.backward_bracket(rho)
                for p in sphere_sample(backward_ball(poly, x, rho), 32,
                                       seed=cfg.seed):
                    r = float(np.linalg.norm(p - x))
                    bwd_ok = bwd_ok and (lo - 1e-9 <= r <= hi + 1e-9)
                    bwd_excess = max(bwd_excess, lo - r, r - hi)
    checks.append(CheckResult("forward_sphere_inside_euclidean_annulus", fwd_ok,
                              {"max_excess": fwd_excess, "configs": configs}))
    checks.append(CheckResult("backward_sphere_inside_euclidean_annulus", bwd_ok,
                              {"max_excess": bwd_excess}))

    sq = unit_square()
    c1 = sandwich(sq, np.zeros(2))
    c2 = sandwich(sq, np.array([0.5, 0.0]))
    exact = (abs(c1.lambda_x - 1.0) <= 1e-12
             and abs(c1.Lambda_x - math.sqrt(2.0)) <= 1e-12
             and abs(c2.lambda_x - 0.5) <= 1e-12
             and abs(c2.Lambda_x - math.sqrt(1.5 ** 2 + 1.0)) <= 1e-12)
    checks.append(CheckResult("square_constants_exact", exact,
                              {"lambda_center": c1.lambda_x, "Lambda_center": c1.Lambda_x}))
    return checks


def _edge_aligned_triple(rng: np.random.Generator) -> tuple:
    """Three square points whose forward hits all land on the edge x1 = 1.

    Heights stay within a narrow band so every chord's slope is small
    enough that its extension leaves through the right edge.
    """
    ys = 0.4 + rng.uniform(0.0, 0.05, 3)
    x = np.array([-0.5 + rng.uniform(-0.1, 0.1), ys[0]])
    y = np.array([rng.uniform(-0.05, 0.05), ys[1]])
    z = np.array([0.5 + rng.uniform(-0.1, 0.1), ys[2]])
    return x, y, z


def suite_triangle(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(10)
    square = unit_square()
    ball = unit_ball()
    gate = cfg.tol("triangle.defect", 1e-9)
    eps_rank = cfg.tol("triangle.rank", tol.EPS_RANK)

    n_edge = cfg.count("triangle.edge_triples", 1000)
    worst_defect = 0.0
    aligned_all = True
    for _ in range(n_edge):
        x, y, z = _edge_aligned_triple(rng)
        rep = triangle_report(square, x, y, z, eps_rank=eps_rank)
        worst_defect = max(worst_defect, abs(rep.defect))
        aligned_all = aligned_all and rep.aligned
    checks.append(CheckResult("square_edge_triples_reach_equality",
                              worst_defect <= gate and aligned_all,
                              {"max_defect": worst_defect, "triples": n_edge}))

    # Near-collinear triples are regenerated: the hits of an almost-straight
    # triple cluster on a short boundary arc, whose deviation from a line is
    # quadratic in the thinness, so the rank flag would be exercised inside
    # its own tolerance band rather than on genuinely bent triples.
    n_ball = cfg.count("triangle.ball_triples", 10_000)
    min_defect = np.inf
    misclassified = 0
    done = redrawn = 0
    while done < n_ball:
        pts = sample_interior(ball, rng, 3, bound=1.0)
        chord = pts[2] - pts[0]
        if min(np.linalg.norm(pts[1] - pts[0]), np.linalg.norm(chord),
               np.linalg.norm(pts[2] - pts[1])) < 1e-2:
            redrawn += 1
            continue
        leg = pts[1] - pts[0]
        off_line = abs(chord[0] * leg[1] - chord[1] * leg[0]) / np.linalg.norm(chord)
        if off_line < 1e-2:
            redrawn += 1
            continue
        rep = triangle_report(ball, pts[0], pts[1], pts[2], eps_rank=eps_rank)
        min_defect = min(min_defect, rep.defect)
        if rep.aligned or rep.defect <= 0.0:
            misclassified += 1
        done += 1
    checks.append(CheckResult("ball_triples_strictly_inside_inequality",
                              misclassified == 0,
                              {"min_defect": min_defect, "triples": n_ball,
                               "misclassified": misclassified,
                               "redrawn_near_collinear": redrawn}))

    # In a strictly convex domain only collinear triples reach equality, so
    # nudging the middle point off the chord must produce a visible defect.
    n_pert = cfg.count("triangle.perturbed", 300)
    min_pert = np.inf
    for _ in range(n_pert):
        x = sample_interior(ball, rng, 1, bound=1.0, min_margin=0.25)[0]
        z = sample_interior(ball, rng, 1, bound=1.0, min_margin=0.25)[0]
        if np.linalg.norm(z - x) < 0.3:
            continue
        d = (z - x) / np.linalg.norm(z - x)
        normal = np.array([-d[1], d[0]])
        y_off = x + rng.uniform(0.3, 0.7) * (z - x) + 1e-2 * normal
        rep = triangle_report(ball, x, y_off, z, eps_rank=eps_rank)
        min_pert = min(min_pert, rep.defect)
    checks.append(CheckResult("perturbation_breaks_equality", min_pert > 1e-6,
                              {"min_defect": min_pert}))
    return checks


def suite_geodesic(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(11)
    square = unit_square()
    ball = unit_ball()
    right_edge = next(iter(square.active_face(np.array([1.0, 0.0]))))

    n = cfg.count("geodesic.square_polylines", 200)
    all_pass = True
    cone_ok = True
    for _ in range(n):
        x, y, z = _edge_aligned_triple(rng)
        ok, _ = verify_geodesic(square, [x, y, z])
        all_pass = all_pass and ok
        witness = polyline_face_witness(square, [x, y, z])
        cone_ok = cone_ok and bool(witness)
        if witness:
            cone = FaceCone(base=x, face=witness)
            cone_ok = cone_ok and cone_member(square, cone, y - x)
            cone_ok = cone_ok and cone_member(
                square, FaceCone(base=y, face=witness), z - y)
    checks.append(CheckResult("square_face_aligned_polylines_are_geodesic",
                              all_pass, {"polylines": n}))
    checks.append(CheckResult("geodesics_admit_face_cone_witness", cone_ok, {}))

    n_ball = cfg.count("geodesic.ball_polylines", 1000)
    bent_fail = True
    done = 0
    while done < n_ball:
        pts = sample_interior(ball, rng, 3, bound=1.0)
        u, v = pts[1] - pts[0], pts[2] - pts[0]
        if float((u @ u) * (v @ v) - (u @ v) ** 2) < 1e-8:
            continue
        ok, defect = verify_geodesic(ball, [pts[0], pts[1], pts[2]])
        bent_fail = bent_fail and (not ok) and defect > 0.0
        done += 1
    checks.append(CheckResult("ball_bent_polylines_never_geodesic", bent_fail,
                              {"polylines": n_ball}))

    x = np.array([-0.5, 0.5])
    y = np.array([0.0, 0.6])
    z = np.array([0.5, 0.5])
    ok_h, defect_h = verify_hilbert_geodesic(square, [x, y, z])
    fwd = polyline_face_witness(square, [x, y, z])
    bwd = polyline_face_witness(square, [x, y, z], reverse=True)
    checks.append(CheckResult("hilbert_geodesic_needs_two_faces",
                              ok_h and bool(fwd) and bool(bwd),
                              {"defect": defect_h,
                               "forward_face": sorted(fwd),
                               "backward_face": sorted(bwd)}))

    x2 = np.array([-0.5, 0.9])
    y2 = np.array([0.0, 0.5])
    z2 = np.array([0.5, 0.45])
    ok_f, _ = verify_geodesic(square, [x2, y2, z2])
    ok_h2, defect_h2 = verify_hilbert_geodesic(square, [x2, y2, z2])
    bwd2 = polyline_face_witness(square, [x2, y2, z2], reverse=True)
    checks.append(CheckResult("one_sided_alignment_is_not_hilbert_geodesic",
                              ok_f and not ok_h2 and not bwd2,
                              {"hilbert_defect": defect_h2}))

    # Forward balls of a non-strictly-convex domain are not geodesically
    # convex: a bent geodesic joins two ball points through an outside point.
    px = np.array([-0.5, 0.45])
    py = np.array([0.0, 0.5])
    pz = np.array([0.5, 0.45])
    anchor = np.array([0.0, -0.5])
    rho_mid = 0.5 * (max(funk(square, anchor, px), funk(square, anchor, pz))
                     + funk(square, anchor, py))
    fb = forward_ball(square, anchor, rho_mid)
    bent_ok, _ = verify_geodesic(square, [px, py, pz])
    checks.append(CheckResult(
        "forward_balls_not_geodesically_convex_in_polytopes",
        bent_ok and fb.realized.contains(px) > 0.0
        and fb.realized.contains(pz) > 0.0 and fb.realized.contains(py) < 0.0,
        {"radius": rho_mid}))

    n_pairs = cfg.count("geodesic.unique_pairs", 300)
    ball_unique = all(
        unique_geodesic_pair(ball, p, q)
        for p, q in zip(sample_interior(ball, rng, n_pairs, bound=1.0),
                        sample_interior(ball, rng, n_pairs, bound=1.0))
        if np.linalg.norm(q - p) > 1e-3)
    edge_pair = not unique_geodesic_pair(square, np.array([0.0, 0.0]),
                                         np.array([0.5, 0.1]))
    corner_pair = unique_geodesic_pair(square, np.array([0.0, 0.0]),
                                       np.array([0.5, 0.5]))
    checks.append(CheckResult("unique_geodesy_matches_exposedness",
                              ball_unique and edge_pair and corner_pair,
                              {"right_edge_index": right_edge}))
    return checks


def suite_projection(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(12)
    square = unit_square()
    ball = unit_ball()

    restarts = cfg.count("projection.restarts", 100)
    configs = cfg.count("projection.configs", 4)
    worst_spread = 0.0
    for _ in range(configs):
        x = sample_interior(ball, rng, 1, bound=1.0, min_margin=0.2)[0]
        p = sample_interior(ball, rng, 1, bound=1.0, min_margin=0.15)[0]
        q = sample_interior(ball, rng, 1, bound=1.0, min_margin=0.15)[0]
        feet = [nearest_on_segment(ball, x, (p, q), t0=float(t0)).point
                for t0 in rng.uniform(0.05, 0.95, restarts)]
        feet = np.array(feet)
        spread = float(np.max(np.linalg.norm(feet - feet.mean(axis=0), axis=1)))
        worst_spread = max(worst_spread, spread)
    gate = cfg.tol("projection.uniqueness", 1e-8)
    checks.append(CheckResult("ball_feet_unique_under_restarts",
                              worst_spread <= gate,
                              {"max_spread": worst_spread, "restarts": restarts,
                               "tolerance": gate}))

    seg = (np.array([0.5, -0.25]), np.array([0.5, 0.25]))
    grid = np.linspace(0.0, 1.0, 101)
    values = np.array([funk(square, np.zeros(2), seg[0] + t * (seg[1] - seg[0]))
                       for t in grid])
    ties = np.flatnonzero(values <= values.min() + 1e-9)
    two_feet = ties.size >= 2 and (grid[ties[-1]] - grid[ties[0]]) > 0.5
    foot = nearest_on_segment(square, np.zeros(2), seg)
    checks.append(CheckResult(
        "square_flat_sphere_gives_multiple_feet",
        two_feet and abs(foot.distance - math.log(2.0)) <= 1e-10
        and float(np.linalg.norm(foot.point - np.array([0.5, 0.0]))) <= 1e-6,
        {"tie_count": int(ties.size), "foot": foot.point.tolist()}))

    a_set = HPolytope([[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, -1.0]],
                      [-0.5, 0.9, 0.9, 0.9],
                      vertices=[[0.5, -0.9], [0.5, 0.9], [0.9, -0.9], [0.9, 0.9]])
    foot = nearest_on_convex(square, np.zeros(2), a_set)
    cert_ok = foot.certificate is not None and foot_certificate(
        square, np.zeros(2), foot.point, a_set)
    halfspace_ok = (abs(foot.distance - math.log(2.0)) <= 1e-9
                    and abs(foot.point[0] - 0.5) <= 1e-8 and cert_ok)
    checks.append(CheckResult("halfspace_target_foot_and_certificate",
                              halfspace_ok,
                              {"distance": foot.distance,
                               "foot": foot.point.tolist()}))

    n_conv = cfg.count("projection.convex_targets", 25)
    all_cert = True
    non_near_false = True
    for _ in range(n_conv):
        lo = rng.uniform(-0.6, 0.2, 2)
        hi = lo + rng.uniform(0.15, 0.5, 2)
        hi = np.minimum(hi, 0.85)
        target = HPolytope.box(lo, hi)
        x = sample_interior(square, rng, 1, bound=1.0, min_margin=0.05)[0]
        if target.contains(x) >= -0.05:
            continue
        foot = nearest_on_convex(square, x, target)
        all_cert = all_cert and foot_certificate(square, x, foot.point, target)
        far = target.vertices[int(np.argmax(
            [funk(square, x, v) for v in target.vertices]))]
        if funk(square, x, far) > foot.distance + 1e-3:
            non_near_false = non_near_false and not foot_certificate(
                square, x, far, target)
    checks.append(CheckResult("nearest_on_convex_always_certifies", all_cert,
                              {"targets": n_conv}))
    checks.append(CheckResult("non_nearest_points_fail_certificate",
                              non_near_false, {}))

    trace: list = []
    nearest_on_convex(square, np.zeros(2), a_set, trace=trace)
    brackets_ok = all(lo < hi for lo, hi in trace) and all(
        trace[i][0] <= trace[i + 1][0] + 1e-15
        and trace[i][1] >= trace[i + 1][1] - 1e-15
        for i in range(len(trace) - 1))
    rho_grid = np.linspace(0.05, 1.5, 20)
    feas = [forward_ball_reaches(square, np.zeros(2), r, a_set) is not None
            for r in rho_grid]
    monotone = all(not (feas[i] and not feas[i + 1]) for i in range(len(feas) - 1))
    checks.append(CheckResult("bisection_brackets_monotone",
                              brackets_ok and monotone,
                              {"iterations": len(trace)}))

    plane = LinearForm([0.0, 1.0], 0.0)
    perp = is_perpendicular(ball, np.zeros(2), np.array([0.0, 1.0]), plane)
    tilted = is_perpendicular(ball, np.zeros(2), np.array([0.0, 1.0]),
                              LinearForm([-0.1, 1.0], 0.0))
    consistent = True
    for t in np.linspace(0.05, 0.9, 20):
        foot = nearest_on_segment(ball, np.array([0.0, float(t)]),
                                  (np.array([-0.9, 0.0]), np.array([0.9, 0.0])))
        consistent = consistent and float(np.linalg.norm(foot.point)) <= 1e-6
    checks.append(CheckResult("perpendicular_ray_projects_to_base",
                              perp and not tilted and consistent, {}))

    # Polytope variant via the LP route: the plane slice {x1 = 0} is a
    # degenerate polytope; flat spheres allow ties, so the base is asserted
    # to be *a* nearest point (equal distance), not the unique one.
    slab = HPolytope([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]],
                     [0.0, 0.0, 0.9, 0.9])
    perp_sq = is_perpendicular(square, np.zeros(2), np.array([1.0, 0.0]),
                               LinearForm([1.0, 0.0], 0.0))
    base_is_nearest = True
    for t in np.linspace(0.05, 0.9, 20):
        x = np.array([float(t), 0.0])
        foot = nearest_on_convex(square, x, slab)
        base_is_nearest = base_is_nearest and (
            funk(square, x, np.zeros(2)) <= foot.distance + 1e-9)
    checks.append(CheckResult("perpendicular_ray_base_is_nearest_on_slice",
                              perp_sq and base_is_nearest, {}))
    return checks


def suite_tangent(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(13)
    square = unit_square()
    ball = unit_ball()
    poly = random_polytope(rng, 3)

    grids = [10.0 ** -np.arange(1, 6)]
    min_order = np.inf
    for domain, bound in ((ball, 1.0), (square, 1.0), (poly, 1.6)):
        for _ in range(cfg.count("tangent.order_configs", 10)):
            p = sample_interior(domain, rng, 1, bound=bound, min_margin=0.2)[0]
            x = 0.3 * rng.standard_normal(domain.dim)
            y = 0.3 * rng.standard_normal(domain.dim)
            if np.linalg.norm(y - x) < 1e-3:
                continue
            rows = finite_difference_check(domain, p, x, y, grids[0])
            order = convergence_order(rows)
            min_order = min(min_order, order)
    gate = cfg.tol("tangent.order", 0.9)
    checks.append(CheckResult("difference_quotient_first_order", min_order >= gate,
                              {"min_order": min_order, "tolerance": gate}))

    n = cfg.count("tangent.identity_samples", 10_000)
    mismatches = 0
    band = cfg.tol("tangent.identity_band", 1e-7)
    done = 0
    while done < n:
        p = sample_interior(square, rng, 1, bound=1.0, min_margin=0.05)[0]
        v = rng.uniform(0.1, 2.5) * _unit(rng, 2)
        norm = tangent_norm(square, p, v)
        if abs(norm - 1.0) <= band:
            continue
        margin = square.contains(p + v)
        if (norm < 1.0) != (margin > 0.0):
            mismatches += 1
        done += 1
    checks.append(CheckResult("unit_ball_is_translated_domain", mismatches == 0,
                              {"samples": n, "mismatches": mismatches}))

    worst_h, worst_s, worst_id = 0.0, 0.0, 0.0
    for _ in range(cfg.count("tangent.algebra", 500)):
        p = sample_interior(poly, rng, 1, bound=1.6, min_margin=0.1)[0]
        u = rng.standard_normal(3)
        v = rng.standard_normal(3)
        lam = rng.uniform(0.1, 5.0)
        nu = tangent_norm(poly, p, u)
        nv = tangent_norm(poly, p, v)
        worst_h = max(worst_h, abs(tangent_norm(poly, p, lam * u) - lam * nu))
        worst_s = max(worst_s, tangent_norm(poly, p, u + v) - nu - nv)
        worst_id = max(worst_id, abs(nu - polytope_support_form(poly, p, u)))
    checks.append(CheckResult("positive_homogeneity", worst_h <= 1e-12,
                              {"max_gap": worst_h}))
    checks.append(CheckResult("subadditivity", worst_s <= 1e-10,
                              {"max_excess": worst_s}))
    checks.append(CheckResult("gauge_matches_support_form", worst_id <= 1e-12,
                              {"max_gap": worst_id}))
    return checks


def _unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def suite_appendix(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(14)
    n = cfg.count("appendix.constructions", 1000)
    gate = cfg.tol("appendix.product", 1e-9)

    hand = menelaus_product([0.0, 0.0], [1.0, 0.0], [0.0, 1.0],
                            [1.5, -0.5], [0.0, 0.25], [0.5, 0.0])
    checks.append(CheckResult("menelaus_hand_instance", abs(hand - 1.0) <= 1e-12,
                              {"product": hand}))

    worst = 0.0
    min_off = np.inf
    done = 0
    while done < n:
        A, B, C = rng.uniform(-2, 2, (3, 2))
        u, v = B - A, C - A
        if abs(u[0] * v[1] - u[1] * v[0]) < 0.2:
            continue
        p0 = rng.uniform(-1, 1, 2)
        d = _unit(rng, 2)
        Ap = _intersect_lines(p0, d, C, B - C)
        Bp = _intersect_lines(p0, d, A, C - A)
        Cp = _intersect_lines(p0, d, B, A - B)
        if Ap is None or Bp is None or Cp is None:
            continue
        if min(np.linalg.norm(Ap - C), np.linalg.norm(Bp - A),
               np.linalg.norm(Cp - B)) < 1e-3:
            continue
        worst = max(worst, abs(menelaus_product(A, B, C, Ap, Bp, Cp) - 1.0))
        done += 1
    checks.append(CheckResult("menelaus_transversals", worst <= gate,
                              {"max_gap": worst, "constructions": n}))

    # Independent random side points are almost surely non-aligned; the rare
    # near-aligned draw is a measure-zero coincidence and is redrawn.
    coincidences = 0
    done = 0
    while done < n:
        A, B, C = rng.uniform(-2, 2, (3, 2))
        u, v = B - A, C - A
        if abs(u[0] * v[1] - u[1] * v[0]) < 0.2:
            continue
        params = rng.uniform(-2.0, 3.0, 3)
        if np.any(np.abs(params) < 0.05) or np.any(np.abs(params - 1.0) < 0.05):
            continue
        Ap = params[0] * B + (1 - params[0]) * C
        Bp = params[1] * C + (1 - params[1]) * A
        Cp = params[2] * A + (1 - params[2]) * B
        off = menelaus_product(A, B, C, Ap, Bp, Cp)
        if abs(off - 1.0) <= 1e-4:
            coincidences += 1
            continue
        min_off = min(min_off, abs(off - 1.0))
        done += 1
    checks.append(CheckResult("menelaus_detects_misalignment",
                              min_off > 1e-4 and coincidences <= n // 20,
                              {"min_deviation": min_off,
                               "redrawn_coincidences": coincidences}))

    medians = ceva_product([0.0, 0.0], [2.0, 0.0], [0.0, 2.0],
                           [1.0, 1.0], [0.0, 1.0], [1.0, 0.0])
    worst = 0.0
    min_off = np.inf
    done = 0
    while done < n:
        A, B, C = rng.uniform(-2, 2, (3, 2))
        u, v = B - A, C - A
        if abs(u[0] * v[1] - u[1] * v[0]) < 0.2:
            continue
        w = rng.uniform(0.1, 1.0, 3)
        P = (w[0] * A + w[1] * B + w[2] * C) / w.sum()
        Ap = _intersect_lines(A, P - A, C, B - C)
        Bp = _intersect_lines(B, P - B, A, C - A)
        Cp = _intersect_lines(C, P - C, B, A - B)
        if Ap is None or Bp is None or Cp is None:
            continue
        worst = max(worst, abs(ceva_product(A, B, C, Ap, Bp, Cp) + 1.0))
        off = ceva_product(A, B, C, Ap, Bp,
                           Cp + 0.05 * (A - B) / np.linalg.norm(A - B))
        min_off = min(min_off, abs(off + 1.0))
        done += 1
    checks.append(CheckResult("ceva_concurrent_cevians",
                              abs(medians + 1.0) <= 1e-12 and worst <= gate,
                              {"max_gap": worst, "median_product": medians}))
    checks.append(CheckResult("ceva_detects_perturbation", min_off > 1e-3,
                              {"min_deviation": min_off}))

    base = cross_ratio([-1.0, 0.0], [0.0, 0.0], [0.5, 0.0], [1.0, 0.0])
    worst = 0.0
    for _ in range(cfg.count("appendix.cross_ratio_maps", 300)):
        pts = np.array([[-1.0, 0.0], [0.0, 0.0], [0.5, 0.0], [1.0, 0.0]])
        pts = pts + rng.uniform(-0.2, 0.2) * np.array([[1.0, 0.5]] * 4)
        P = random_projective_map(rng, pts)
        img = apply_projective(P, pts)
        worst = max(worst, abs(cross_ratio(*img) - cross_ratio(*pts)))
    gate_cr = cfg.tol("appendix.cross_ratio", 1e-9)
    checks.append(CheckResult("cross_ratio_projective_invariance",
                              abs(base - 3.0) <= 1e-12 and worst <= gate_cr,
                              {"unit_interval_value": base, "max_gap": worst}))

    # Distance-ratio replay of the triangle inequality: the product of the
    # two exit-ratio factors dominates the direct one, with equality only in
    # the aligned case.  Compared relatively (the ratios are exponentials).
    worst = -np.inf
    aligned_when_equal = True
    for _ in range(cfg.count("appendix.replay", 500)):
        poly = random_polygon(rng)
        pts = sample_interior(poly, rng, 3, bound=1.6, min_margin=1e-2)
        u, v = pts[1] - pts[0], pts[2] - pts[0]
        if abs(u[0] * v[1] - u[1] * v[0]) < 1e-3:
            continue
        x, y, z = pts
        a = poly.ray_boundary(x, y).point
        c = poly.ray_boundary(y, z).point
        ap = poly.ray_boundary(x, z).point
        lhs = (np.linalg.norm(x - a) / np.linalg.norm(y - a)) \
            * (np.linalg.norm(y - c) / np.linalg.norm(z - c))
        rhs = np.linalg.norm(x - ap) / np.linalg.norm(z - ap)
        worst = max(worst, rhs / lhs - 1.0)
        if abs(lhs - rhs) <= 1e-9 * rhs:
            rep = triangle_report(poly, x, y, z)
            aligned_when_equal = aligned_when_equal and rep.aligned
    checks.append(CheckResult("triangle_inequality_replay_via_cross_ratios",
                              worst <= 1e-12 and aligned_when_equal,
                              {"max_relative_violation": worst}))
    return checks


def suite_relative(cfg: RunConfig) -> list[CheckResult]:
    checks = []
    rng = cfg.rng(15)
    ball = unit_ball()

    n = cfg.count("relative.pairs", 500)
    X = sample_interior(ball, rng, n, bound=1.0)
    Y = sample_interior(ball, rng, n, bound=1.0)
    worst = 0.0
    for x, y in zip(X, Y):
        worst = max(worst, abs(relative_funk(ball, ball, x, y)
                               - 2.0 * hilbert(ball, x, y)))
    checks.append(CheckResult("self_relative_distance_doubles_hilbert",
                              worst <= 1e-12, {"max_gap": worst}))

    worst = 0.0
    for x, y in zip(X, Y):
        worst = max(worst, abs(relative_funk(ball, None, x, y) - funk(ball, x, y)))
    checks.append(CheckResult("whole_space_envelope_reduces_to_funk",
                              worst <= 0.0, {"max_gap": worst}))

    half = HPolytope([[0.0, -1.0]], [10.0], witness=[0.0, 0.0])  # x2 > -10
    addl = 0.0
    for x, y in zip(X[:200], Y[:200]):
        rel = relative_funk(ball, half, x, y)
        split = funk(ball, x, y) + funk(half, y, x)
        addl = max(addl, abs(rel - split))
    checks.append(CheckResult("relative_distance_splits_into_funk_parts",
                              addl <= 1e-12, {"max_gap": addl}))

    # Horizontal pairs: the reverse ray runs parallel to the envelope wall,
    # so the envelope term vanishes and only the inner distance remains.
    worst = 0.0
    for x in X[:200]:
        y = x + np.array([rng.uniform(0.05, 0.3), 0.0])
        if ball.contains(y) <= 1e-6:
            continue
        worst = max(worst, abs(relative_funk(ball, half, x, y) - funk(ball, x, y)))
    checks.append(CheckResult("parallel_envelope_exit_contributes_nothing",
                              worst <= 1e-15, {"max_gap": worst}))
    return checks


SUITES = {
    "convex-core": suite_convex_core,
    "oracle-closedform": suite_oracle_closedform,
    "axioms": suite_axioms,
    "monotonicity": suite_monotonicity,
    "invariance": suite_invariance,
    "completeness": suite_completeness,
    "ratio": suite_ratio,
    "balls": suite_balls,
    "sandwich": suite_sandwich,
    "triangle": suite_triangle,
    "geodesic": suite_geodesic,
    "projection": suite_projection,
    "tangent": suite_tangent,
    "appendix": suite_appendix,
    "relative": suite_relative,
}


def run_suite(name: str, cfg: RunConfig | None = None) -> dict:
    """Run one suite (or "all") and return a deterministic report."""
    cfg = cfg or RunConfig()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; available: {sorted(SUITES)} or 'all'")
    start = time.time()
    checks = []
    for suite_name in names:
        for result in SUITES[suite_name](cfg):
            checks.append({"suite": suite_name, "name": result.name,
                           "passed": bool(result.passed),
                           "detail": _jsonable(result.detail)})
    elapsed = time.time() - start
    return {
        "_runtime": f"{time.strftime('%Y-%m-%dT%H:%M:%S')} wall={elapsed:.3f}s",
        "suite": name,
        "seed": cfg.seed,
        "tolerance_overrides": dict(cfg.tolerances),
        "count_overrides": {k: int(v) for k, v in cfg.counts.items()},
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, float):
        return value
    return value
