import math
import os

import numpy as np
import pytest

import cogatr


def small_config(**extra):
    overrides = {
        "scene.elevations_deg": "12",
        "train.azimuth_step_deg": "5",
        "test.trials_per_class": "20",
        "sweep.snr_grid_db": "0, inf",
        "sweep.delta_theta_grid_deg": "0, 3.6",
        "run.threads": "1",
    }
    overrides.update(extra)
    return cogatr.ExperimentConfig(overrides=overrides)


def test_dft_matches_numpy():
    rng = np.random.default_rng(0)
    x = rng.normal(size=64) + 1j * rng.normal(size=64)
    np.testing.assert_allclose(cogatr.unitary_dft(x), np.fft.fft(x, norm="ortho"), atol=1e-12)


def test_scene_and_features():
    target = cogatr.make_target(cogatr.TargetClass.APC, 7)
    assert len(target.scatterers) >= 1
    k = cogatr.synthesize_kspace(target, cogatr.Geometry(10.0, 30.0, 12.0))
    assert k.shape == (64,) and k.dtype == np.complex128
    feat = np.array(cogatr.extract_features(k, cogatr.Domain.RANGE))
    assert math.isclose(float(np.sum(feat**2)), 1.0, rel_tol=1e-12)
    np.testing.assert_array_equal(cogatr.add_noise(k, math.inf, 1), k)
    assert cogatr.sector_of(14.4) == 1


def test_errors_are_python_exceptions():
    with pytest.raises(cogatr.GeometryError):
        cogatr.Geometry(0.0, 75.0, 12.0)
    with pytest.raises(cogatr.DegenerateSignal):
        cogatr.add_noise(np.zeros(8, dtype=complex), 10.0, 1)
    with pytest.raises(cogatr.ConfigError):
        small_config(**{"scene.beta_deg": "75"})


def test_shipped_config_loads():
    root = os.environ.get("COGATR_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", ".."))
    cfg = cogatr.ExperimentConfig(os.path.join(root, "configs", "canonical.conf"))
    assert cfg.master_seed == 20100512
    assert cfg.test_trials_per_class == 1000


def test_experiment_runs_and_is_deterministic(tmp_path):
    exp = cogatr.Experiment(small_config())
    rows = exp.sweep_snr()
    assert len(rows) == 6
    assert rows == cogatr.Experiment(small_config()).sweep_snr()
    for r in rows:
        total = r["pcc_percent"] + r["unclassified_percent"] + r["misclassified_percent"]
        assert math.isclose(total, 100.0)
    assert cogatr.sweep_csv(rows).startswith("variant,delta_theta_deg,snr_db")

    trial = exp.run_trial(cogatr.TargetClass.MBT, 3, cogatr.ProcessingVariant.TIME_FREQ_SIMULTANEOUS, 3.6, 10.0)
    assert 1 <= trial["perspectives_used"] <= 10
    assert sum(trial["votes"]) == 2 * trial["perspectives_used"]

    fixed = exp.fixed_two_perspective_baseline(5.0)
    assert fixed["median_perspectives"] == 2.0

    n = cogatr.write_dataset(small_config(), str(tmp_path / "ds.ndjson"))
    assert n == 4 * 72
    assert (tmp_path / "ds.ndjson").read_text().startswith("{")
