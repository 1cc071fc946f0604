import json
import math

import pytest

import hkc

UNIT = {
    "graph": {"kind": "path", "n": 8},
    "space": {"dim": 1, "norm": "l1", "shape": {"box": {"lo": [0], "hi": [1]}}},
    "tau": 0.8,
    "trials": 200,
    "seed": 3,
}


def test_distance_norms():
    assert hkc.distance([0, 0], [3, 4], "l2") == 5.0
    assert hkc.distance([0, 0], [3, 4], "l1") == 7.0
    assert hkc.distance([0, 0], [3, 4], "linf") == 4.0
    with pytest.raises(ValueError):
        hkc.distance([0], [1, 2], "l2")


def test_center_and_radius():
    c, r = hkc.center_and_radius([0], [1], "l1")
    assert c == [0.5] and r == 0.5


def test_bound_closed_form():
    assert math.isclose(hkc.theoretical_bound(0.25, 0.8, 0.5), 1 / 6)
    doc = json.loads(hkc.bound(json.dumps(UNIT)))
    assert math.isclose(doc["bound"], 1 / 6)


def test_estimate_is_deterministic():
    a = hkc.estimate(json.dumps(UNIT), 1)
    b = hkc.estimate(json.dumps(UNIT), 4)
    assert a == b
    report = hkc.estimate_dict(UNIT)
    assert report["ci_high"] >= report["bound"]
    assert report["undetermined_count"] == 0


def test_simulate_stops():
    doc = json.loads(hkc.simulate(json.dumps(UNIT)))
    assert doc["stopped"] is True
    assert len(doc["final"]) == 8


def test_drift_and_invariants():
    drift = hkc.generator_drift([[0.0], [0.5], [1.0]], [(0, 1), (1, 2)], 0.6, "l1", [0.0])
    assert drift <= 1e-12
    assert hkc.check_invariants(50, 1)["ok"]


def test_bad_config_raises():
    with pytest.raises(ValueError):
        hkc.estimate(json.dumps({**UNIT, "colour": "red"}))
