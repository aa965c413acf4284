import json
import math

import pytest

import gaugedyn as gd


def test_fixed_points_mu_parametrization():
    m = gd.ExpMap.from_mu(2.0)
    assert m.beta == 2.0
    assert 0 < m.alpha < 1
    lam = 2.0 * math.exp(-2.0)
    assert m.lam == pytest.approx(lam, rel=1e-15)
    assert gd.repelling_fixed_point(lam) == pytest.approx(2.0, rel=1e-12)


def test_koenigs_functional_equation():
    ev = gd.KoenigsEvaluator(2.0)
    for x in (0.3, 1.7, 8.0, 120.0):
        lhs = ev(2.0 * math.expm1(x))
        rhs = 2.0 * ev(x)
        assert lhs == pytest.approx(rhs, rel=1e-9)


def test_gauge_and_gamma_star():
    h = gd.GaugeFunction(2.0, 1.0)
    t = 1e-8
    assert h(t) > 0
    assert h.t_max == pytest.approx(1.0 / 3.0)
    assert gd.dichotomy_gamma_star(2.0, 1e-6) == pytest.approx(1.0, abs=1e-4)
    with pytest.raises(ValueError):
        h(1.0)


def test_equivalence_requires_matching_products():
    st = gd.equivalence_probe(2.0, 1.0, 4.0, 0.5)
    assert st.max_ratio >= st.min_ratio > 0
    with pytest.raises(ValueError):
        gd.equivalence_probe(2.0, 1.0, 4.0, 0.7)


def test_packing_density():
    pk = gd.build_packing(0.0, 0.0, 65.0, 0.0, 0.05, 0.3)
    assert pk["density"] > gd.packing_density_bound(0.3, 0.05)
    assert len(pk["boxes"]) > 0


def test_orbit_classification():
    m = gd.ExpMap.from_mu(2.0)
    verdict, _ = m.classify_orbit(0.1 + 0.0j, 64)
    assert verdict == "attracted"
    verdict, steps = m.classify_orbit(700.0 + 0.0j, 64)
    assert verdict == "escaping_candidate" and steps == 0


def test_probe_rows():
    reps = gd.dichotomy_probe(2.0, [1.5], levels=3, max_steps=64)
    assert len(reps) == 1
    rows = reps[0]["rows"]
    assert len(rows) == 3
    assert rows[1][0] == pytest.approx(rows[0][0] / 2.0)


def test_cli_roundtrip():
    code, out, err = gd.run_cli(["fixpoint", "--mu", "2"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["result"]["beta"] == 2.0
    code, out, _ = gd.run_cli(["product", "--mu", "2", "--gamma", "1.2",
                               "--eps", "0.01", "--kmax", "10"])
    assert code == 0
    values = [float(line.split(",")[1]) for line in out.splitlines()
              if line and not line.startswith("#") and not line.startswith("k,")]
    assert all(b > a for a, b in zip(values, values[1:]))
    code, _, _ = gd.run_cli(["fixpoint"])
    assert code == 64
