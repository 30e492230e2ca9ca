# Copyright 2026 The fdcache Authors
# SPDX-License-Identifier: Apache-2.0

import math

import pytest

import fdcache


def test_zipf_sums_to_one():
    p = fdcache.zipf_popularity(100, 0.7)
    assert len(p) == 100
    assert math.isclose(sum(p), 1.0, rel_tol=1e-12)
    assert all(a >= b for a, b in zip(p, p[1:]))


def test_cache_hit_in_unit_interval():
    catalog = fdcache.FileCatalog(100, 0.7, 1.0)
    q = fdcache.cache_hit_probability(catalog, fdcache.CacheModel.from_ratio(0.35, 100))
    assert 0.0 < q < 1.0
    assert fdcache.cache_hit_probability(catalog, fdcache.CacheModel(0)) == 0.0


def test_upsilon_hat_closed_form():
    params = fdcache.NetworkParams()
    s = 625.0
    a = params.alpha1
    expected = math.pi * (s * params.dl_power) ** (2 / a) / (a * math.sin(2 * math.pi / a))
    assert math.isclose(fdcache.upsilon_hat(s, params), expected, rel_tol=1e-12)
    assert fdcache.upsilon_tilde(s, params) >= fdcache.upsilon_hat(s, params)


def test_lower_bound_and_metrics():
    params = fdcache.NetworkParams()
    sc, dl = fdcache.hop_arguments(1.0, params)
    assert math.isclose(sc, 8000.0)
    assert math.isclose(dl, 625.0)
    lo = fdcache.success_probability_lb(1.0, 0.0, params)
    hi = fdcache.success_probability_lb(1.0, 0.5, params)
    assert 0.0 < lo < hi <= 1.0
    assert fdcache.area_spectral_efficiency(1.0, 0.5, 1e-4) == pytest.approx(5e-5)
    assert fdcache.throughput_gain(1.0, hi, params) > 0.0


def test_omega_bounds():
    params = fdcache.NetworkParams()
    w = fdcache.omega(625.0, 50.0, params)
    assert 0.0 < w < 1.0
    assert fdcache.omega(625.0, 50.0, params, fdcache.LinkKind.UL_TO_SC) > 0.0


def test_simulation_reproducible():
    cfg = fdcache.SimConfig()
    cfg.trials = 300
    cfg.seed = 7
    a = fdcache.estimate_success(cfg)
    b = fdcache.estimate_success(cfg)
    assert a.mean == b.mean
    assert a.trials == 300
    assert 0.0 <= a.mean <= 1.0
    assert a.half_width_95 >= 0.0


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        fdcache.zipf_popularity(0, 0.7)
    params = fdcache.NetworkParams()
    params.alpha1 = 2.0
    with pytest.raises((ValueError, ArithmeticError)):
        fdcache.upsilon_hat(1.0, params)


def test_config_round_trip_and_run():
    spec = fdcache.parse_config(
        "sweep = lambda\nvalues = 1e-4, 2e-4\nmetric = p_suc\ntrials = 200\n"
    )
    assert spec.values == [1e-4, 2e-4]
    again = fdcache.parse_config(fdcache.format_config(spec))
    assert fdcache.format_config(again) == fdcache.format_config(spec)
    rows = fdcache.run_experiment(spec)
    assert [r["sweep_value"] for r in rows] == [1e-4, 2e-4]
    assert all(r["trials"] == 200 for r in rows)
    assert rows[0]["analytic"] > rows[1]["analytic"]


def test_config_errors():
    with pytest.raises(fdcache.ConfigError, match="bogus"):
        fdcache.parse_config("bogus = 1\n")
    with pytest.raises(fdcache.ConfigError):
        fdcache.load_preset("nope")
    assert fdcache.load_preset("fig3").sweep == "lambda"
