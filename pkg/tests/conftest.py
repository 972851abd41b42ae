import numpy as np
import pytest

from funkgeo import EuclideanBall, HPolytope


@pytest.fixture
def square() -> HPolytope:
    return HPolytope.box([-1.0, -1.0], [1.0, 1.0])


@pytest.fixture
def ball() -> EuclideanBall:
    return EuclideanBall([0.0, 0.0], 1.0)


@pytest.fixture
def half_plane() -> HPolytope:
    # {x2 > 0}
    return HPolytope([[0.0, -1.0]], [0.0], witness=[0.0, 1.0])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)


def bisect_boundary(domain, x, y, t_hi_cap=1e9, iters=200):
    """Membership-only boundary finder, independent of the analytic ray cast.

    Doubles the parameter until the point leaves the domain, then bisects
    the sign change of the margin.  Returns the parameter t (point at
    x + t*(y - x)) or inf when the ray stays inside up to the cap.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = y - x
    t_hi = 1.0
    while domain.contains(x + t_hi * d) > 0.0:
        t_hi *= 2.0
        if t_hi > t_hi_cap:
            return np.inf
    t_lo = t_hi / 2.0 if t_hi > 1.0 else 0.0
    for _ in range(iters):
        mid = 0.5 * (t_lo + t_hi)
        if domain.contains(x + mid * d) > 0.0:
            t_lo = mid
        else:
            t_hi = mid
    return 0.5 * (t_lo + t_hi)
