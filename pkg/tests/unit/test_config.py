#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.
import logging

import pytest
import yaml

from config import (
    ConfigError,
    GridPoint,
    GridValidationError,
    Settings,
    load_grid,
    load_options,
)

SMALL_GRID = {
    "suites": [
        {"target": "theorem1", "points": [{"n": [5, 7], "r0": [0, 1]}]},
        {"target": "lemma:l2_5", "points": [{"nn": 2}]},
        {"target": "corollary:c1_2", "points": [{"p": 5, "r": 2, "method": "naive"}]},
    ]
}


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.yaml"
    path.write_text(yaml.safe_dump(SMALL_GRID))
    return path


def test_option_defaults():
    assert load_options() == {"naive-threshold": 2000, "max-n": 2000, "jobs": 1, "format": "table"}


def test_settings_overlay():
    settings = Settings.load({"jobs": 4, "max-n": None, "format": "json"})
    assert settings == Settings(naive_threshold=2000, max_n=2000, jobs=4, format="json")
    assert settings.is_valid


def test_settings_reject_unknown_options():
    with pytest.raises(ConfigError):
        Settings.load({"colour": "blue"})


def test_settings_reject_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        Settings.load(path=tmp_path / "missing.yaml")
    (tmp_path / "empty.yaml").write_text("{}")
    with pytest.raises(ConfigError):
        load_options(tmp_path / "empty.yaml")


@pytest.mark.parametrize(
    "settings, message",
    (
        (Settings(jobs=0), "`jobs` must be a positive integer"),
        (Settings(max_n=-3), "`max-n` must be a positive integer"),
        (Settings(naive_threshold=True), "`naive-threshold` must be a positive integer"),
        (Settings(format="xml"), "`format` must be one of table, json"),
    ),
)
def test_settings_validation(settings, message, caplog):
    with caplog.at_level(logging.ERROR):
        assert not settings.is_valid
    assert message in caplog.text


def test_grid_expands_in_file_order(grid_file):
    points = load_grid(grid_file)
    assert [(p.target, p.param_dict) for p in points] == [
        ("theorem1", {"n": 5, "r0": 0}),
        ("theorem1", {"n": 5, "r0": 1}),
        ("theorem1", {"n": 7, "r0": 0}),
        ("theorem1", {"n": 7, "r0": 1}),
        ("lemma:l2_5", {"nn": 2}),
        ("corollary:c1_2", {"p": 5, "r": 2}),
    ]
    assert points[-1].method == "naive"
    assert points[0].method is None


def test_grid_max_n_keeps_exact_targets(grid_file, caplog):
    with caplog.at_level(logging.INFO):
        points = load_grid(grid_file, max_n=10)
    assert [p.size for p in points] == [5, 10, 7, 0]
    assert "skipping 2 grid points" in caplog.text


def test_grid_target_filter(grid_file):
    points = load_grid(grid_file, target="corollary:c1_2")
    assert points == [GridPoint("corollary:c1_2", (("p", 5), ("r", 2)), "naive")]
    assert load_grid(grid_file, target="theorem2") == []


@pytest.mark.parametrize(
    "document",
    (
        {"suites": [{"target": "bogus", "points": [{"n": 5}]}]},
        {"suites": [{"target": "theorem1", "points": []}]},
        {"suites": [{"target": "theorem1", "points": [{"n": 5, "method": "quick"}]}]},
        {"suites": [{"target": "theorem1", "points": [{"n": 5}], "extra": 1}]},
        {"grids": []},
    ),
)
def test_grid_validation(tmp_path, document):
    path = tmp_path / "grid.yaml"
    path.write_text(yaml.safe_dump(document))
    with pytest.raises(GridValidationError) as exc:
        load_grid(path)
    assert isinstance(exc.value, ConfigError)
    assert "invalid grid" in str(exc.value)


@pytest.mark.parametrize(
    "point, size",
    (
        (GridPoint("theorem1", (("n", 35), ("r0", 2))), 140),
        (GridPoint("theorem2", (("n", 25),)), 25),
        (GridPoint("corollary:c1_3", (("p1", 5), ("r1", 1), ("p2", 7), ("r2", 2))), 245),
        (GridPoint("literature:eq1_3", (("p", 5), ("r", 3))), 125),
        (GridPoint("literature:eq1_1", (("p", 7),)), 7),
        (GridPoint("lemma:l2_1", (("p", 30), ("m", 2), ("r", 1), ("k", 3))), 0),
        (GridPoint("lemma:l2_4", (("m", 2), ("k", 3), ("x", "1/2"))), 0),
    ),
)
def test_grid_point_size(point, size):
    assert point.size == size


def test_shipped_grid_loads():
    points = load_grid()
    assert points[0] == GridPoint("literature:eq1_1", (("p", 5),))
    targets = {p.target for p in points}
    assert {"theorem1", "theorem2", "lemma:l2_7", "corollary:c1_5"} <= targets
    small = load_grid(max_n=100)
    assert all(p.size <= 100 for p in small)
    assert len(small) < len(points)
