import json
import math

import pytest

import besov_lab as bl


def test_constants():
    assert bl.nu_n(2) == 2 * math.pi
    assert bl.nu_n(3) == 4 * math.pi
    assert abs(bl.gauss_constant(1.0) - math.sqrt(2 / math.pi)) < 1e-12
    assert abs(bl.c_t(1.0) - (math.pi / 2 - math.asin(math.exp(-1.0)))) < 1e-12
    assert bl.sigma_upper_constant(1) == pytest.approx(6.0)


def test_corpus_and_indicator_omega():
    names = [e["name"] for e in bl.default_corpus()]
    assert "indicator_1d" in names and "g_h1" in names
    eps = [0.1, 0.5, 1.5]
    curve = bl.omega_curve("indicator_1d", 1.0, eps, 1 / 64)
    for e, v in zip(curve["eps"], curve["values"]):
        assert abs(v - min(2 * e, 2)) <= 2 / 64


def test_sigma_below_upper_estimate():
    eps = [0.05, 0.1, 0.2]
    s = bl.sigma_curve("bump_1d", 2.0, eps, 1 / 32)
    w = bl.omega_curve("bump_1d", 2.0, eps, 1 / 32)
    for a, b in zip(s["values"], w["values"]):
        assert a <= 6.0 * b * (1 + 1e-6)


def test_gaussian_modulus_of_h1():
    for t in (0.1, 1.0):
        assert abs(bl.a_gamma("g_h1", 2.0, t) - math.sqrt(2 * (1 - math.exp(-t)))) < 1e-8


def test_chaos_best_approx_is_monotone():
    e = bl.chaos_best_approx("g_poly", 6)
    assert all(x >= y - 1e-12 for x, y in zip(e, e[1:]))
    assert e[-1] < 1e-8


def test_run_suite(tmp_path):
    rep = bl.run_suite("moduli", {"corpus": ["zero_1d"]}, out_dir=tmp_path)
    assert rep["exit_code"] == 0
    assert rep["counts"]["fail"] == 0
    assert json.loads((tmp_path / "report.json").read_text())["config_hash"] == rep["config_hash"]


def test_bad_config_raises():
    with pytest.raises(ValueError):
        bl.run_suite("moduli", {"colour": 1})
    spec = {"name": "x", "space": "euclidean", "n": 1, "constructor": "nope"}
    with pytest.raises(RuntimeError):
        bl.omega_curve(spec, 1.0, [0.1], 0.1)
