import numpy as np
import pytest

from fuzzseed import (
    Dataset,
    EngineError,
    FcmConfig,
    fit_method,
    make_seeds,
    run_fcm,
    seed_kmeanspp,
    seed_macqueen2,
    seed_macqueen_first_k,
    seed_maxmin_linear,
    seed_maxmin_quadratic,
    seed_repeated,
)
from fuzzseed.rng import derive_seed
from fuzzseed.seeding import STRATEGIES, _farthest_fill


@pytest.fixture
def line3():
    return Dataset(points=[[0.0], [1.0], [10.0]], name="line3")


def test_macqueen1_first_k():
    ds = Dataset(points=[[5.0], [1.0], [9.0]])
    ss = seed_macqueen_first_k(ds, 2)
    assert ss.source_indices == (0, 1)
    assert list(ss.centroids[:, 0]) == [5.0, 1.0]


def test_macqueen1_k_equals_n():
    ds = Dataset(points=[[5.0], [1.0], [9.0]])
    assert seed_macqueen_first_k(ds, 3).source_indices == (0, 1, 2)


def test_macqueen1_is_order_sensitive():
    ds = Dataset(points=[[5.0], [1.0], [9.0]])
    shuffled = Dataset(points=[[9.0], [5.0], [1.0]])
    a = seed_macqueen_first_k(ds, 2).centroids
    b = seed_macqueen_first_k(shuffled, 2).centroids
    assert not np.array_equal(a, b)


def test_macqueen1_k_too_large():
    with pytest.raises(EngineError, match="exceeds"):
        seed_macqueen_first_k(Dataset(points=[[1.0]]), 2)


def test_macqueen2_exhausts_at_k_equals_n(line3):
    ss = seed_macqueen2(line3, 3, seed=9)
    assert sorted(ss.source_indices) == [0, 1, 2]


def test_macqueen2_deterministic_under_seed(line3):
    a = seed_macqueen2(line3, 2, seed=123)
    b = seed_macqueen2(line3, 2, seed=123)
    assert a.source_indices == b.source_indices
    assert np.array_equal(a.centroids, b.centroids)


def test_macqueen2_draws_fresh_seed_when_none(line3):
    ss = seed_macqueen2(line3, 2)
    assert ss.rng_seed is not None
    assert ss.rng == "numpy-pcg64"


def test_macqueen2_uniform_frequency():
    ds = Dataset(points=[[0.0], [1.0], [2.0], [3.0]])
    counts = np.zeros(4)
    for s in range(10_000):
        counts[seed_macqueen2(ds, 1, seed=s).source_indices[0]] += 1
    assert np.all(np.abs(counts / 10_000 - 0.25) <= 0.02)


def test_kmeanspp_certain_second_seed():
    # duplicates of the first seed carry zero weight; only (10) remains
    ds = Dataset(points=[[0.0], [0.0], [10.0]])
    for s in range(50):
        ss = seed_kmeanspp(ds, 2, seed=s)
        if ss.source_indices[0] in (0, 1):
            assert ss.source_indices[1] == 2


def test_kmeanspp_identical_points_fallback():
    ds = Dataset(points=[[3.0], [3.0], [3.0]])
    ss = seed_kmeanspp(ds, 2, seed=4)
    assert ss.uniform_fallback
    assert len(set(ss.source_indices)) == 2


def test_kmeanspp_d2_law_sanity():
    # weights 1 and 16 after first seed (0) -> P(next = index 2) = 16/17
    ds = Dataset(points=[[0.0], [1.0], [4.0]])
    hits = total = 0
    s = 0
    while total < 2_000:
        ss = seed_kmeanspp(ds, 2, seed=s)
        s += 1
        if ss.source_indices[0] == 0:
            total += 1
            hits += ss.source_indices[1] == 2
    assert hits / total == pytest.approx(16 / 17, abs=0.03)


def test_kmeanspp_distinct_indices():
    rng = np.random.default_rng(11)
    ds = Dataset(points=rng.normal(size=(20, 2)))
    ss = seed_kmeanspp(ds, 8, seed=5)
    assert len(set(ss.source_indices)) == 8


def test_repeated_r1_matches_single_run(line3):
    cfg = FcmConfig()
    seeds, res = seed_repeated("macqueen2", line3, 2, r=1, seed=77, cfg=cfg)
    direct = seed_macqueen2(line3, 2, seed=derive_seed(77, 0))
    ref = run_fcm(line3, direct, cfg)
    assert seeds.source_indices == direct.source_indices
    assert res.fw == ref.fw
    assert res.iterations == ref.iterations


def test_repeated_returns_min_fw_and_summed_iterations(ruspini_like):
    cfg = FcmConfig()
    r = 5
    seeds, res = seed_repeated("macqueen2", ruspini_like, 4, r=r, seed=3, cfg=cfg)
    assert seeds.relaunches == r
    assert seeds.rng_seed == 3
    fws, iters = [], []
    for i in range(r):
        ss = seed_macqueen2(ruspini_like, 4, seed=derive_seed(3, i))
        out = run_fcm(ruspini_like, ss, cfg)
        fws.append(out.fw)
        iters.append(out.iterations)
    assert res.fw == min(fws)
    assert res.iterations == sum(iters)


def test_repeated_validates_inputs(line3):
    with pytest.raises(ValueError, match="relaunch"):
        seed_repeated("macqueen2", line3, 2, r=0, seed=1)
    with pytest.raises(ValueError, match="stochastic"):
        seed_repeated("maxmin_linear", line3, 2, seed=1)


def test_maxmin_quadratic_line(line3):
    ss = seed_maxmin_quadratic(line3, 3)
    assert ss.source_indices == (0, 2, 1)
    assert ss.method == "maxmin"


def test_maxmin_quadratic_identical_pair():
    ds = Dataset(points=[[4.0], [4.0]])
    ss = seed_maxmin_quadratic(ds, 2)
    assert ss.source_indices == (0, 1)


def test_maxmin_quadratic_tie_breaks_to_lowest_pair():
    corners = Dataset(points=[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    # both diagonals tie at d2 = 2; lexicographically first pair wins
    assert seed_maxmin_quadratic(corners, 2).source_indices == (0, 3)


def test_maxmin_linear_line(line3):
    ss = seed_maxmin_linear(line3, 3)
    assert ss.source_indices == (1, 2, 0)
    assert ss.method == "maxmin_linear"


def test_maxmin_linear_symmetric_tie():
    ds = Dataset(points=[[-1.0], [1.0]])
    assert seed_maxmin_linear(ds, 2).source_indices == (0, 1)


def test_maxmin_linear_point_at_grand_mean():
    ds = Dataset(points=[[0.0], [6.0], [3.0]])  # mean is 3
    assert seed_maxmin_linear(ds, 2).source_indices[0] == 2


def test_maxmin_linear_eval_count():
    rng = np.random.default_rng(12)
    for n, k in [(10, 2), (50, 5), (200, 8)]:
        ds = Dataset(points=rng.normal(size=(n, 3)))
        ss = seed_maxmin_linear(ds, k)
        assert ss.distance_evals == n * k
        assert ss.distance_evals <= 2 * k * n


def test_maxmin_eval_counts_scale_linearly_vs_quadratically():
    rng = np.random.default_rng(13)
    small = Dataset(points=rng.normal(size=(60, 2)))
    big = Dataset(points=rng.normal(size=(120, 2)))
    k = 4
    lin_small = seed_maxmin_linear(small, k).distance_evals
    lin_big = seed_maxmin_linear(big, k).distance_evals
    assert lin_big == 2 * lin_small
    quad_small = seed_maxmin_quadratic(small, k).distance_evals
    quad_big = seed_maxmin_quadratic(big, k).distance_evals
    assert quad_small >= 60 * 59 // 2
    assert quad_big / quad_small > 3.5  # pair scan grows ~4x when n doubles


def test_maxmin_variants_deterministic(ruspini_like):
    for fn in (seed_maxmin_linear, seed_maxmin_quadratic):
        a, b = fn(ruspini_like, 4), fn(ruspini_like, 4)
        assert a.source_indices == b.source_indices
        assert np.array_equal(a.centroids, b.centroids)


def test_maxmin_suffix_equivalence():
    rng = np.random.default_rng(14)
    for _ in range(25):
        n = int(rng.integers(5, 60))
        k = int(rng.integers(3, min(8, n) + 1))
        points = rng.normal(size=(n, int(rng.integers(1, 4))))
        i, j = rng.choice(n, size=2, replace=False)
        linear, _ = _farthest_fill(points, [int(i), int(j)], k)
        # quadratic route: per-round argmax over matrix mins
        dmat = ((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
        chosen = [int(i), int(j)]
        while len(chosen) < k:
            dmin = dmat[:, chosen].min(axis=1)
            dmin[chosen] = -np.inf
            chosen.append(int(np.argmax(dmin)))
        assert linear == chosen


def test_maxmin_greedy_spread_property(ruspini_like):
    ss = seed_maxmin_linear(ruspini_like, 5)
    points = ruspini_like.points
    idx = list(ss.source_indices)
    for j in range(2, 5):
        prior = idx[:j]
        dmin = ((points[:, None, :] - points[prior][None, :, :]) ** 2).sum(axis=2).min(axis=1)
        others = np.setdiff1d(np.arange(points.shape[0]), prior)
        assert dmin[idx[j]] >= dmin[others].max() - 1e-12


def test_distinct_indices_across_strategies(ruspini_like):
    for method in STRATEGIES:
        ss = make_seeds(ruspini_like, 4, method, seed=21)
        assert len(set(ss.source_indices)) == 4
        assert all(0 <= i < ruspini_like.n for i in ss.source_indices)


def test_fit_method_dispatch(ruspini_like):
    for method in STRATEGIES:
        seeds, res = fit_method(ruspini_like, 4, method, seed=33)
        assert seeds.method == method
        assert res.method == method
        assert res.fw > 0
    with pytest.raises(ValueError, match="unknown"):
        fit_method(ruspini_like, 4, "pca_part")


def test_seedset_serialization(line3):
    ss = seed_maxmin_linear(line3, 2)
    payload = ss.to_dict()
    assert payload["method"] == "maxmin_linear"
    assert payload["rng_seed"] is None
    assert payload["source_indices"] == [1, 2]
    assert payload["k"] == 2
