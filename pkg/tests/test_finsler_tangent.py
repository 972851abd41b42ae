import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funkgeo import (
    EuclideanBall,
    GeometryError,
    HPolytope,
    convergence_order,
    finite_difference_check,
    remainder_constant,
    tangent_distance,
    tangent_norm,
)
from funkgeo.finsler_tangent import polytope_support_form


def test_gauge_of_unit_ball_at_center(ball, rng):
    for _ in range(20):
        v = rng.normal(size=2)
        v /= np.linalg.norm(v)
        assert tangent_norm(ball, [0.0, 0.0], v) == pytest.approx(1.0, abs=1e-12)


def test_gauge_off_center(ball):
    assert tangent_norm(ball, [0.5, 0.0], [1.0, 0.0]) == pytest.approx(2.0, abs=1e-12)


def test_gauge_recession_direction(half_plane):
    assert tangent_norm(half_plane, [0.0, 1.0], [1.0, 0.0]) == 0.0
    assert tangent_norm(half_plane, [0.0, 1.0], [0.0, 1.0]) == 0.0
    assert tangent_norm(half_plane, [0.0, 1.0], [0.0, -1.0]) == pytest.approx(1.0)


def test_gauge_zero_vector(square):
    assert tangent_norm(square, [0.2, 0.1], [0.0, 0.0]) == 0.0


def test_gauge_requires_interior_base(square):
    with pytest.raises(GeometryError):
        tangent_norm(square, [2.0, 0.0], [1.0, 0.0])


def test_gauge_unit_level_set_is_translated_domain(square, rng):
    for _ in range(300):
        p = rng.uniform(-0.8, 0.8, 2)
        v = rng.uniform(0.05, 2.5) * (lambda u: u / np.linalg.norm(u))(rng.normal(size=2))
        norm = tangent_norm(square, p, v)
        if abs(norm - 1.0) <= 1e-7:
            continue
        assert (norm < 1.0) == (square.contains(p + v) > 0.0)


def test_difference_quotients_converge(ball):
    p = np.array([0.2, -0.1])
    x = np.array([0.0, 0.0])
    y = np.array([1.0, 0.4])
    ts = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5]
    rows = finite_difference_check(ball, p, x, y, ts)
    errors = [e for _, _, e in rows]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert convergence_order(rows) >= 0.9
    c = remainder_constant(rows)
    assert all(e <= c * t + 1e-15 for t, _, e in rows)


def test_difference_quotients_trivial_cases(ball, half_plane):
    rows = finite_difference_check(ball, [0.0, 0.0], [0.3, 0.1], [0.3, 0.1],
                                   [1e-2, 1e-3])
    assert all(q == 0.0 for _, q, _ in rows)
    rows = finite_difference_check(half_plane, [0.0, 1.0], [0.0, 0.0], [1.0, 0.0],
                                   [1e-1, 1e-2])
    assert all(q == 0.0 for _, q, _ in rows)
    assert convergence_order(rows) == math.inf


def test_difference_quotients_reject_escaping_samples(ball):
    with pytest.raises(GeometryError):
        finite_difference_check(ball, [0.9, 0.0], [0.0, 0.0], [1.0, 0.0], [0.5])


def test_quotient_from_center_of_ball_matches_radius():
    ball = EuclideanBall([0.0, 0.0], 1.0)
    rows = finite_difference_check(ball, [0.0, 0.0], [0.0, 0.0], [1.0, 0.0],
                                   [1e-2, 1e-3, 1e-4])
    for t, quotient, error in rows:
        # from the center, F(0, t e1) = -log(1 - t), so the error is ~ t/2
        assert quotient == pytest.approx(-math.log(1.0 - t) / t, abs=1e-10)
        assert error == pytest.approx(abs(-math.log(1.0 - t) / t - 1.0), abs=1e-10)


def test_tangent_distance_is_norm_of_difference(square):
    p = [0.1, 0.2]
    assert tangent_distance(square, p, [0.3, 0.0], [0.5, 0.4]) \
        == pytest.approx(tangent_norm(square, p, [0.2, 0.4]), abs=1e-15)


def test_polytope_support_form_matches_gauge(square, rng):
    for _ in range(200):
        p = rng.uniform(-0.8, 0.8, 2)
        v = rng.normal(size=2)
        assert tangent_norm(square, p, v) \
            == pytest.approx(polytope_support_form(square, p, v), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(lam=st.floats(0.01, 20.0), vx=st.floats(-1.0, 1.0), vy=st.floats(-1.0, 1.0))
def test_positive_homogeneity(lam, vx, vy):
    square = HPolytope.box([-1.0, -1.0], [1.0, 1.0])
    p = np.array([0.2, -0.3])
    v = np.array([vx, vy])
    if np.linalg.norm(v) < 1e-6:
        return
    assert tangent_norm(square, p, lam * v) \
        == pytest.approx(lam * tangent_norm(square, p, v), rel=1e-11, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(ux=st.floats(-1.0, 1.0), uy=st.floats(-1.0, 1.0),
       vx=st.floats(-1.0, 1.0), vy=st.floats(-1.0, 1.0))
def test_subadditivity(ux, uy, vx, vy):
    square = HPolytope.box([-1.0, -1.0], [1.0, 1.0])
    p = np.array([0.1, 0.4])
    u, v = np.array([ux, uy]), np.array([vx, vy])
    assert tangent_norm(square, p, u + v) \
        <= tangent_norm(square, p, u) + tangent_norm(square, p, v) + 1e-10
