import math

import numpy as np
import pytest

from loewner import Lind, PoleError
from loewner.critical import (c_iteration, collision_threshold_experiment, g_eval,
                              y_sequence, y_zero)


def test_g_values_by_substitution():
    assert g_eval(1, 2.0) == pytest.approx(0.0, abs=1e-15)
    assert g_eval(1, 4.0) == pytest.approx(3.0)
    assert g_eval(2, 4.0) == pytest.approx(8.0 / 3.0)
    # y - 4/(y - 4/y) = 0 at y^2 = 8
    assert g_eval(2, 2 * math.sqrt(2)) == pytest.approx(0.0, abs=1e-12)


def test_g_pole_error():
    with pytest.raises(PoleError):
        g_eval(2, 2.0)  # g_1(2) = 0 is a pole of g_2


def test_y_zeros():
    assert y_zero(1) == pytest.approx(2.0, abs=1e-10)
    assert y_zero(2) == pytest.approx(2 * math.sqrt(2), abs=1e-10)


def test_y_sequence_monotone_and_approaches_four():
    ys = y_sequence(50)
    assert np.all(np.diff(ys) > 0)
    assert np.all(ys < 4.0)
    assert ys[-1] > 3.99


def test_y_sequence_matches_cosine_closed_form():
    # derived conjecture validated against the bisection oracle, 1e-9 agreement
    ys = y_sequence(50)
    closed = 4.0 * np.cos(np.pi / (np.arange(1, 51) + 2))
    assert np.max(np.abs(ys - closed)) < 1e-9


def test_c_iteration_at_four_follows_closed_form():
    # with eps = 0 the iterates from c = 4 are exactly 2(n+2)/(n+1) -> 2
    res = c_iteration(4.0, eps=0.0, n_max=60)
    n = np.arange(res.values.size)
    assert np.allclose(res.values, 2.0 * (n + 2) / (n + 1), rtol=1e-12)
    assert res.verdict == "stays_positive"
    assert np.all(np.diff(res.values) < 0)


def test_c_iteration_below_threshold_crosses_zero():
    res = c_iteration(3.9, eps=1e-6)
    assert res.verdict == "crosses_zero"
    assert res.crossed_at is not None and res.crossed_at < 100


def test_c_iteration_above_threshold_converges_to_larger_root():
    eps = 1e-6
    res = c_iteration(4.2, eps=eps, n_max=500)
    assert res.verdict == "stays_positive"
    root = (4.2 + math.sqrt(4.2 ** 2 - 16.0 / (1 + eps))) / 2.0
    assert res.values[-1] == pytest.approx(root, rel=1e-10)


def test_iterates_stay_below_g_recursion():
    # c_n < g_n((1+eps) c) holds on every sample; positivity of all c_n then
    # forces (1+eps) c above every zero y_n. (The companion upper bound
    # g_n < (1+eps) c_n is false as stated: already at n = 1 the difference is
    # exactly 4 eps / ((1+eps) c) > 0, so only the lower half is asserted.)
    for c, eps in ((4.5, 0.01), (4.2, 1e-3), (5.0, 1e-6)):
        res = c_iteration(c, eps=eps, n_max=30)
        for n in range(1, res.values.size):
            if res.values[n] <= 0:
                break
            assert res.values[n] < g_eval(n, (1 + eps) * c)


def test_threshold_experiment_small_grid():
    exp = collision_threshold_experiment([3.5, 4.0, 4.4],
                                         x0_grid=np.geomspace(0.5, 4.0, 12))
    by_c = {v.c: v for v in exp.verdicts}
    assert not by_c[3.5].collides
    assert by_c[4.0].collides
    assert by_c[4.0].first_collision_t == pytest.approx(1.0, abs=1e-3)
    assert by_c[4.4].collides
    assert exp.is_monotone
    assert exp.threshold == 4.0


def test_lind_collision_from_x0_two():
    exp = collision_threshold_experiment([4.0], x0_grid=[2.0])
    v = exp.verdicts[0]
    assert v.collides and v.x0 == 2.0
    assert v.first_collision_t == pytest.approx(1.0, abs=1e-3)


def test_disk_side_verdicts_match():
    # converting lambda_c with a colliding/representative x0 and re-running
    # collision detection in the disk gives the same verdict per c
    from loewner.bridge import halfplane_to_disk
    from loewner.disk import evolve_disk_boundary

    # x0 = 1.9 sits strictly inside the colliding basin for c >= 4 (x0 = 2 is
    # the marginal separatrix, where interpolation noise flips the verdict);
    # the angle solution rides the interpolated chord at a gap of about
    # 2/(chord slope), so the disk threshold must sit above that surf gap
    # (~5e-6 with the 1e-10 tail) and below the subcritical minimum gap (~4e-2)
    grid = np.concatenate(([0.0], 1.0 - np.geomspace(1.0, 1e-10, 700)[1:], [1.0]))
    for c, hp_collides in ((3.6, False), (4.0, True), (4.3, True)):
        x0 = 1.9
        conv = halfplane_to_disk(Lind(c), x0, grid, tol=1e-10)
        traj = evolve_disk_boundary(conv.term, x0, conv.term.domain_end,
                                    tol=1e-9, collision_delta=1e-4)
        disk_collides = traj.is_swallowed and traj.swallowed_at <= 1.0 + 1e-3
        assert disk_collides == hp_collides
