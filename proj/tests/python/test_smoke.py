import math

import pascalbez as pb


def test_pascal_product_alternating():
    for n in (4, 8, 32, 64):
        z = [(-1.0) ** i for i in range(n)]
        assert pb.pascal_product(z) == [1.0] + [0.0] * (n - 1)


def test_inverse_round_trip():
    v = [3.0, -1.0, 4.0, 1.0, -5.0]
    assert pb.pascal_inverse_action(pb.pascal_product(v)) == v


def test_exceptional():
    assert pb.enumerate_exceptional(100) == [(5, 2), (15, 6), (39, 15), (74, 28)]
    assert pb.compute_k(15) == 6
    assert pb.is_exceptional(16) is None


def test_optimal_t():
    p = pb.optimal_t(4)
    assert p.kind == pb.BalanceKind.InteriorOptimum
    assert math.isclose(p.t, math.sqrt(3.0), rel_tol=1e-14)
    assert pb.optimal_t(15).t == 6.0


def test_fast_multiply():
    r = pb.fast_pascal_multiply([1.0, -1.0] * 4)
    assert math.hypot(r[0] - 1.0, *r[1:]) <= 1e-12
    bad = pb.fast_pascal_multiply([1.0, -1.0] * 16, t=1.0)
    assert max(abs(x) for x in bad) > 1e6


def test_evaluate_curve_matches_casteljau():
    pts = pb.random_control_points(16, 7)
    grid = pb.dyadic_grid(7)
    a = pb.evaluate_curve(pts, grid)
    b = pb.evaluate_curve(pts, grid, strategy="casteljau")
    assert len(a) == 129
    assert max(max(abs(p[0] - q[0]), abs(p[1] - q[1])) for p, q in zip(a, b)) <= 1e-8
    assert pb.default_strategy(64) == ("pascal-piecewise-affine", [32767, 32767, 1023, 3])


def test_errors_raise():
    import pytest

    with pytest.raises(ValueError):
        pb.pascal_product([])
    with pytest.raises(ValueError):
        pb.evaluate_curve([(0.0, 0.0)], [0.5])
