import json
import math

import numpy as np
import pytest

import compactwave as cw


def test_spectrum_ratio_limit():
    assert cw.r_of_n(1) == pytest.approx(2.4, rel=1e-14)
    assert cw.cfl_limit() == pytest.approx(math.sqrt(2.0) / 3.0, rel=1e-14)
    c = cw.SchemeCoefficients()
    a = np.array(cw.toeplitz_spectrum(cw.matrix_a(c, 12)))
    b = np.array(cw.toeplitz_spectrum(cw.matrix_b(c, 12)))
    assert np.min(np.abs(b / a)) == pytest.approx(cw.r_of_n(12), rel=1e-12)


def test_thomas_roundtrip():
    m = cw.TriDiagToeplitz(order=20, diag=1.0, offdiag=0.1)
    rng = np.random.default_rng(7)
    x = rng.standard_normal(20)
    y = cw.apply_toeplitz(m, x.tolist())
    np.testing.assert_allclose(cw.thomas_solve(m, y), x, rtol=0, atol=1e-13)


def test_second_derivative_of_cubic_is_exact():
    h = 0.1
    xs = np.arange(1, 10) * h
    f = lambda x: x**3 - 2 * x
    d2 = cw.second_derivative_line(f(xs).tolist(), f(0.0), f(1.0), 0.0, 6.0, h)
    np.testing.assert_allclose(d2, 6 * xs, atol=1e-12)


def test_cfl_report():
    ok = cw.cfl_check(max_speed=1.0, tau=0.01, h=0.1, n=9)
    assert ok.passed and ok.courant == pytest.approx(0.1)
    bad = cw.cfl_check(max_speed=1.0, tau=0.06, h=0.1, n=9)
    assert not bad.passed
    assert "courant" in str(bad).lower()


def test_ricker_peak():
    src = cw.RickerSource(peak_frequency=10.0, delay=0.05)
    assert cw.ricker_amplitude(0.05, src) == pytest.approx(1.0)
    assert cw.ricker_derivative(1, 0.05, src) == pytest.approx(0.0, abs=1e-12)


def test_example1_sweep_orders():
    rows = cw.convergence_sweep("example1", [1 / 8, 1 / 10], tau_rule="h_squared", t_final=0.1)
    assert len(rows) == 2
    order = rows[1].report["order_max"]
    assert order is not None and 3.0 < order < 5.0
    csv = cw.format_table_csv(rows)
    assert csv.splitlines()[0].startswith("example,integrator,h,tau")


def test_solve_example_shape():
    u, report = cw.solve_example("example2", 7, 0.0125, integrator="rk4", t_final=0.05)
    assert u.shape == (7, 7, 7)
    assert np.all(np.isfinite(u))
    assert report["e_max"] < 1e-4


def test_config_errors_raise_value_error():
    with pytest.raises(ValueError):
        cw.run_config(json.dumps({"problem": "example1", "bogus": 1}))


def test_run_config_writes_table(tmp_path):
    cfg = {
        "problem": "example1",
        "sweep": {"h": ["1/8", "1/10"]},
        "time": {"t_final": 0.05},
        "output_dir": str(tmp_path),
    }
    cw.run_config(json.dumps(cfg))
    assert (tmp_path / "table.csv").read_text().count("\n") == 3
