import json
import math

import pytest

import coversys


def test_z12_is_a_tight_minimal_cover():
    c = coversys.CoverSystem.from_progressions([(0, "2"), (0, "3"), (1, "4"), (5, "6"), (7, "12")])
    assert c.is_cover()
    assert c.is_minimal()
    assert c.simpson() == {"bound": 5, "size": 5, "tight": True}
    assert c.greedy_certified()


def test_hyperplane_system_round_trip():
    c = coversys.CoverSystem([2, 2], [[0, None], [1, 0], [1, 1]])
    assert c.is_minimal()
    again = coversys.CoverSystem.from_json(c.to_json())
    assert again.planes == c.planes
    assert coversys.analyze(c)["generalized_valid"]


def test_uncovered_point():
    c = coversys.CoverSystem.from_progressions([(0, "2")])
    assert not c.is_cover()
    assert c.uncovered() == [1]


def test_counting_quantities():
    assert coversys.q_value("2*3") == pytest.approx(2 * math.log(2), abs=1e-12)
    assert coversys.simpson_bound("2^2*3") == 5
    assert len(coversys.frame_family("12")) == 9
    value, bound = coversys.tau()
    assert 0.9765 <= value <= 0.9785 and bound < 1e-9


def test_census():
    r = coversys.census(4, shards=2)
    assert r["total"] == 22
    assert r["by_lcm"] == {"2^2": 1, "2*3": 17, "2^3": 4}


def test_cli_entry_point():
    code, out, _ = coversys.run_cli(["simpson", "-"], json.dumps(
        {"progressions": [{"a": 0, "d": 2}, {"a": 1, "d": 2}]}))
    assert code == 0
    assert json.loads(out) == {"bound": 2, "size": 2, "tight": True}
    code, _, err = coversys.run_cli(["nope"])
    assert code == 2 and err


def test_capacity_error():
    with pytest.raises(coversys.CapacityError):
        coversys.census(9)
