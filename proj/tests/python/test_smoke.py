import math
import xml.etree.ElementTree as ET

import pytest

import coverbound as cb


def test_fundamental_bound():
    assert cb.beta_fundamental(1) == 1.0
    assert cb.beta_fundamental(4) == pytest.approx(1 - 0.75**4, abs=1e-12)
    assert cb.beta_fundamental(10) == pytest.approx(1 - 0.9**10, abs=1e-12)


def test_bound_formulas_at_the_ends():
    n = 7
    assert cb.beta_total(0.0, n) == 1.0
    assert cb.beta_total(1.0, n) == pytest.approx(cb.beta_fundamental(n), abs=1e-12)
    assert cb.beta_elemental(1.0, n) == pytest.approx(cb.beta_fundamental(n), abs=1e-12)
    assert cb.beta_greedy(1.0, n) == pytest.approx(1.0 / n, abs=1e-12)


def test_builtins_round_trip():
    names = cb.builtin_names()
    assert names == ["blank600", "maze600", "general600"]
    for name in names:
        text = cb.builtin_text(name)
        assert cb.normalize_scenario(text) == text


def test_solve_small_instance():
    res = cb.solve("blank600", agents=3, pitch=150, resolution=20, delta=200)
    assert res["ground_size"] == 16
    assert len(res["agents"]) == 3
    assert len(res["selection"]) == 16
    for key in ("beta_f", "beta_g", "beta_e", "beta_u"):
        assert 0.0 < res[key] <= 1.0
    assert res["best_bound"] >= res["beta_f"]


def test_sweep_csv():
    csv = cb.sweep("theta", [0.0, 1.0], agents=2, pitch=200, resolution=15)
    lines = csv.splitlines()
    assert lines[0] == "param,beta_f,beta_t,beta_g,beta_e,beta_p,beta_u,H_greedy,runtime_ms"
    assert len(lines) == 3
    assert not csv.endswith("\r\n")


def test_validation_errors_map_to_value_error():
    with pytest.raises(ValueError):
        cb.solve("blank600", theta=1.5)
    with pytest.raises(ValueError):
        cb.normalize_scenario("[mission]\nouter = 0,0; 1,0; 1,1; 0,1\n[sensing]\nbogus = 1\n")


def test_render_is_xml():
    svg = cb.render([0, 5], "blank600", agents=2, pitch=150, resolution=10)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    for el in root.iter():
        for attr in ("x", "y", "cx", "cy", "width", "height"):
            if attr in el.attrib:
                assert math.isfinite(float(el.attrib[attr]))
