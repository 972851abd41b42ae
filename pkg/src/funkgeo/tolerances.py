"""Numerical tolerance constants shared across the package.

All values are chosen for double precision at desk scale (domains of
diameter roughly 0.1 .. 100).  The CLI can override any of them with
``--tol NAME=VALUE``; overrides must stay at or above machine epsilon.
"""

# Boundary membership: |signed margin| below this counts as "on the boundary".
EPS_BD = 1e-9

# Ray-direction classification: a constraint whose normalized derivative along
# the ray is below this is treated as parallel (hit at infinity), never as a
# huge finite parameter.  Keeps the metric continuous near 0.
EPS_DIR = 1e-12

# Face activation: a constraint within this distance of equality is active.
EPS_FACE = 1e-7

# Generic geometric comparisons (points produced by two different routes).
EPS_GEOM = 1e-8

# Relative determinant / singular-value floor for invertible affine maps.
EPS_DET = 1e-12

# Two points closer than this are considered identical; distance ops
# short-circuit to 0 without casting a ray.
EPS_PT = 1e-13

# Distances below this are clamped to exactly 0 (agreement with the
# at-infinity classification).
F_CLAMP = 1e-14

# Rank test for projective alignment: smallest/largest singular value ratio.
EPS_RANK = 1e-7

# Collinearity of points, relative to the segment length.
EPS_LINE = 1e-9

# Degenerate-triangle threshold, relative to squared diameter.
EPS_AREA = 1e-12

# Hyperplane parallelism, on normalized coefficient vectors.
EPS_PARA = 1e-9

# Additivity defect below which a polyline counts as geodesic.
EPS_GEODESIC = 1e-9
