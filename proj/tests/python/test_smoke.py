import json
import math

import numpy as np
import pytest

import nwinterp as nw


def line_set(points):
    xs = np.array([[x] for x, _ in points], dtype=float)
    ys = np.array([y for _, y in points], dtype=np.int32)
    return nw.TrainingSet(xs, ys)


def test_raw_score_and_predict():
    s = line_set([(0.0, 1)])
    r = nw.raw_score(np.array([0.5]), s, 1.0)
    assert r.sign == 1
    assert r.log_magnitude == pytest.approx(math.log(2.0))
    assert r.exact_hit is None

    tie = line_set([(-1.0, 1), (1.0, -1)])
    assert nw.predict(np.array([0.0]), tie, 2.0) == 1
    assert nw.predict(np.array([0.0]), tie, 2.0, tie_break=-1) == -1

    far = line_set([(0.0, 1), (1.0, -1)])
    assert nw.predict(np.array([0.25]), far, 400.0) == 1


def test_interpolation_and_batch():
    rng = np.random.default_rng(0)
    xs = rng.uniform(-1, 1, size=(60, 2))
    ys = rng.choice([-1, 1], size=60).astype(np.int32)
    s = nw.TrainingSet(xs, ys)
    assert len(s) == 60 and s.dim == 2
    out = nw.predict_batch(xs, s, 3.0)
    assert np.array_equal(out, ys)
    assert nw.knn_predict(xs[5], s, 1) == ys[5]


def test_validation_errors():
    s = line_set([(0.0, 1)])
    with pytest.raises(ValueError):
        nw.raw_score(np.array([0.5]), s, 0.0)
    with pytest.raises(ValueError):
        nw.raw_score(np.array([0.5, 0.5]), s, 1.0)
    with pytest.raises(ValueError):
        nw.TrainingSet(np.zeros((2, 1)), np.array([1, 0], dtype=np.int32))


def test_samplers_and_constants():
    s = nw.sample_1d_mixture(1000, seed=3)
    x = s.coords[:, 0]
    y = s.labels
    assert np.all((x > 0) & (x < 1))
    assert np.all((y == -1) == (x < 0.25))

    cap = nw.sample_sphere_cap(500, seed=4)
    assert np.allclose(np.linalg.norm(cap.coords, axis=1), 1.0)

    flipped = nw.flip_labels(s, 0.1, seed=5)
    frac = np.mean(flipped.labels != s.labels)
    assert 0.06 < frac < 0.14

    assert nw.tempered_constant(2.0) == pytest.approx(32.0, rel=1e-12)
    assert nw.catastrophic_mass_bound(0.5, 1, 1.0, 4.0) == pytest.approx(9.3167e-5, rel=1e-4)


def test_verifiers():
    rep = nw.order_stat_representation_check(10, 5, 10000, seed=1)
    assert rep.passed
    tail = nw.exp_partial_sum_tail(5, 20000, seed=2)
    assert tail.passed
    agree = nw.knn_agreement_unit_cube(2, 400.0, 200, 200, seed=3)
    assert agree.rate >= 0.99
    checks = nw.run_verify_suite("interpolation")
    assert all(passed for _, _, _, passed in checks)
    with pytest.raises(ValueError):
        nw.run_verify_suite("bogus")


def test_beta_sweep_rows():
    cfg = {
        "experiment": {"m": 100, "p_values": [0.05, 0.1], "betas": [1, 2], "reps": 2, "n_test": 50, "base_seed": 1},
        "distribution": {"type": "one_d_mixture"},
    }
    rows = nw.beta_sweep(json.dumps(cfg))
    assert [(r["p"], r["beta"]) for r in rows] == [(0.05, 1), (0.05, 2), (0.1, 1), (0.1, 2)]
    for r in rows:
        assert 0 <= r["ci_low"] <= r["mean_error"] <= r["ci_high"] <= 1
    assert rows == nw.beta_sweep(json.dumps(cfg))
    with pytest.raises(Exception):
        nw.beta_sweep(json.dumps({"experiment": {}, "distribution": {"type": "one_d_mixture"}}))
