"""The check suites not already exercised by the acceptance module."""

import pytest

from funkgeo.suites import SUITES, RunConfig, run_suite

REDUCED = {
    "convex_core.rays": 600,
    "convex_core.monotone": 100,
    "convex_core.equivariance": 100,
    "convex_core.support": 3000,
    "convex_core.intersection": 200,
    "monotonicity.pairs": 1500,
    "geodesic.square_polylines": 80,
    "geodesic.ball_polylines": 250,
    "geodesic.unique_pairs": 80,
    "relative.pairs": 200,
}


@pytest.mark.parametrize("name", ["convex-core", "monotonicity", "geodesic",
                                  "relative"])
def test_suite_passes(name):
    results = SUITES[name](RunConfig(seed=0, counts=REDUCED))
    failed = [r.name for r in results if not r.passed]
    assert not failed, f"{name}: {failed}"


def test_report_shape_and_flags():
    report = run_suite("relative", RunConfig(seed=5, counts=REDUCED))
    assert report["suite"] == "relative"
    assert report["seed"] == 5
    assert report["passed"] is True
    assert all({"suite", "name", "passed", "detail"} <= set(c) for c in report["checks"])
    assert report["_runtime"].count("wall=") == 1


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_suite("nope", RunConfig())
