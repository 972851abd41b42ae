import math

import numpy as np
import pytest
from scipy.optimize import linprog

from funkgeo import (
    GeometryError,
    HPolytope,
    LinearForm,
    foot_certificate,
    funk,
    is_perpendicular,
    nearest_on_convex,
    nearest_on_segment,
)
from funkgeo._linprog import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    chebyshev_center,
    feasible_point,
    recession_cone_is_trivial,
    solve_lp,
)
from funkgeo.projection import forward_ball_reaches

LOG2 = math.log(2.0)


# --- the little simplex -----------------------------------------------------

def test_lp_square_objective():
    # maximize x + y over the unit square
    A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    b = np.ones(4)
    status, x, value = solve_lp(np.array([1.0, 1.0]), A, b)
    assert status == OPTIMAL
    assert value == pytest.approx(2.0, abs=1e-9)


def test_lp_infeasible_and_unbounded():
    A = np.array([[1.0], [-1.0]])
    assert solve_lp(np.array([1.0]), A, np.array([1.0, -2.0]))[0] == INFEASIBLE
    assert solve_lp(np.array([1.0]), np.array([[-1.0]]), np.array([0.0]))[0] \
        == UNBOUNDED


def test_chebyshev_center_square():
    A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert chebyshev_center(A, np.ones(4)) == pytest.approx([0.0, 0.0], abs=1e-9)


def test_recession_cone_probe():
    box = np.vstack([np.eye(2), -np.eye(2)])
    assert recession_cone_is_trivial(box)
    assert not recession_cone_is_trivial(np.array([[0.0, -1.0]]))


def test_feasibility_matches_scipy(rng):
    for _ in range(60):
        m, n = int(rng.integers(3, 12)), int(rng.integers(2, 5))
        A = rng.normal(size=(m, n))
        b = rng.normal(size=m)
        ours = feasible_point(A, b)
        ref = linprog(np.zeros(n), A_ub=A, b_ub=b, bounds=[(None, None)] * n,
                      method="highs")
        assert (ours is not None) == ref.success
        if ours is not None:
            assert np.max(A @ ours - b) <= 1e-8


# --- nearest point on a segment ------------------------------------------------

def test_foot_on_containing_segment_is_the_point(square):
    foot = nearest_on_segment(square, [0.2, 0.0], ([0.0, 0.0], [0.5, 0.0]))
    assert foot.distance == pytest.approx(0.0, abs=1e-9)
    assert foot.point == pytest.approx([0.2, 0.0], abs=1e-6)


def test_ball_symmetric_segment_foot(ball):
    foot = nearest_on_segment(ball, [0.0, 0.0], ([0.5, -0.5], [0.5, 0.5]))
    assert foot.point == pytest.approx([0.5, 0.0], abs=1e-8)
    assert foot.distance == pytest.approx(LOG2, abs=1e-10)


def test_square_flat_plateau_returns_midpoint(square):
    # the whole target segment is at distance log 2; the midpoint is returned
    foot = nearest_on_segment(square, [0.0, 0.0], ([0.5, -0.25], [0.5, 0.25]))
    assert foot.point == pytest.approx([0.5, 0.0], abs=1e-6)
    assert foot.distance == pytest.approx(LOG2, abs=1e-12)


def test_segment_foot_independent_of_restart(ball, rng):
    x = np.array([-0.2, 0.1])
    seg = (np.array([0.1, -0.6]), np.array([0.4, 0.5]))
    feet = [nearest_on_segment(ball, x, seg, t0=float(t)).point
            for t in rng.uniform(0.05, 0.95, 25)]
    feet.append(nearest_on_segment(ball, x, seg).point)
    spread = np.max(np.linalg.norm(np.array(feet) - feet[0], axis=1))
    assert spread <= 1e-8


def test_segment_endpoints_must_be_interior(square):
    with pytest.raises(GeometryError):
        nearest_on_segment(square, [0.0, 0.0], ([0.5, 0.0], [2.0, 0.0]))


# --- nearest point on a convex subset --------------------------------------------

def test_singleton_target(square):
    z = np.array([0.5, 0.2])
    point_set = HPolytope(np.vstack([np.eye(2), -np.eye(2)]),
                          np.concatenate([z, -z]))
    foot = nearest_on_convex(square, np.zeros(2), point_set)
    assert foot.point == pytest.approx(z, abs=1e-8)
    assert foot.distance == pytest.approx(funk(square, np.zeros(2), z), abs=1e-9)


def test_halfspace_target_distance_log2(square):
    a_set = HPolytope([[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, -1.0]],
                      [-0.5, 0.9, 0.9, 0.9])
    foot = nearest_on_convex(square, np.zeros(2), a_set)
    assert foot.point[0] == pytest.approx(0.5, abs=1e-8)
    assert foot.distance == pytest.approx(LOG2, abs=1e-9)
    assert foot.certificate is not None
    # the certificate hyperplane passes through the foot and separates
    assert abs(foot.certificate(foot.point)) <= 1e-8
    assert foot.certificate(np.zeros(2)) < 0.0


def test_point_already_in_target(square):
    a_set = HPolytope.box([-0.2, -0.2], [0.2, 0.2])
    foot = nearest_on_convex(square, np.zeros(2), a_set)
    assert foot.distance == 0.0
    assert foot.point == pytest.approx([0.0, 0.0])


def test_convex_target_agrees_with_segment_search(square):
    # a thin box degenerates to (almost) a segment
    a_set = HPolytope.box([0.5, -0.25], [0.5 + 1e-9, 0.25])
    foot_lp = nearest_on_convex(square, np.zeros(2), a_set)
    foot_gs = nearest_on_segment(square, np.zeros(2),
                                 ([0.5, -0.25], [0.5, 0.25]))
    assert foot_lp.distance == pytest.approx(foot_gs.distance, abs=1e-8)


def test_target_outside_domain_rejected(square):
    with pytest.raises(GeometryError):
        nearest_on_convex(square, np.zeros(2), HPolytope.box([0.5, 0.5], [3.0, 3.0]))


def test_bisection_brackets_never_cross(square):
    a_set = HPolytope.box([0.4, -0.3], [0.8, 0.3])
    trace = []
    nearest_on_convex(square, np.zeros(2), a_set, trace=trace)
    assert all(lo < hi for lo, hi in trace)
    los = [lo for lo, _ in trace]
    his = [hi for _, hi in trace]
    assert all(a <= b + 1e-15 for a, b in zip(los, los[1:]))
    assert all(a >= b - 1e-15 for a, b in zip(his, his[1:]))


def test_reachability_monotone_in_radius(square):
    a_set = HPolytope.box([0.4, -0.3], [0.8, 0.3])
    flags = [forward_ball_reaches(square, np.zeros(2), rho, a_set) is not None
             for rho in np.linspace(0.05, 2.0, 25)]
    assert flags == sorted(flags)


# --- optimality certificates -------------------------------------------------------

def test_nearest_output_certifies(square):
    a_set = HPolytope.box([0.3, 0.1], [0.7, 0.5])
    foot = nearest_on_convex(square, np.array([-0.2, -0.4]), a_set)
    assert foot_certificate(square, np.array([-0.2, -0.4]), foot.point, a_set)


def test_non_nearest_point_fails_certificate(square):
    a_set = HPolytope.box([0.3, 0.1], [0.7, 0.5])
    x = np.array([-0.2, -0.4])
    foot = nearest_on_convex(square, x, a_set)
    worse = np.array([0.7, 0.5])
    assert funk(square, x, worse) > foot.distance + 1e-3
    assert not foot_certificate(square, x, worse, a_set)


def test_zero_distance_certifies_vacuously(half_plane):
    a_set = HPolytope([[0.0, -1.0], [0.0, 1.0], [1.0, 0.0], [-1.0, 0.0]],
                      [-0.5, 3.0, 3.0, 0.0])  # {0 <= x1 <= 3, 0.5 <= x2 <= 3}
    # moving parallel to the boundary costs nothing
    assert foot_certificate(half_plane, [-1.0, 1.0], [0.0, 1.0], a_set)


# --- perpendicularity -----------------------------------------------------------------

def test_perpendicular_tangent_plane(ball):
    plane = LinearForm([0.0, 1.0], 0.0)
    assert is_perpendicular(ball, [0.0, 0.0], [0.0, 1.0], plane)


def test_tilted_plane_not_perpendicular(ball):
    plane = LinearForm([-0.1, 1.0], 0.0)
    assert not is_perpendicular(ball, [0.0, 0.0], [0.0, 1.0], plane)


def test_perpendicular_square_edge(square):
    plane = LinearForm([1.0, 0.0], 0.0)  # {x1 = 0} through the origin
    assert is_perpendicular(square, [0.0, 0.0], [1.0, 0.0], plane)


def test_plane_must_contain_ray_base(ball):
    with pytest.raises(GeometryError):
        is_perpendicular(ball, [0.3, 0.0], [0.0, 1.0], LinearForm([0.0, 1.0], 1.0))


def test_perpendicular_ray_projects_to_base(ball):
    # every point of the perpendicular ray has its foot at the ray base
    seg = (np.array([-0.9, 0.0]), np.array([0.9, 0.0]))
    for t in np.linspace(0.05, 0.9, 20):
        foot = nearest_on_segment(ball, [0.0, float(t)], seg)
        assert np.linalg.norm(foot.point) <= 1e-6
