"""Battery structure, canonical serialization, and the built-in defaults."""
import json

import pytest

from mtstreams.stats.battery import (
    BUILTIN_BATTERIES,
    MINI_CRUSH_V1,
    Battery,
    TestDefinition,
    battery_sha256,
    dump_battery,
    load_battery,
)


def test_builtin_battery_shape():
    assert MINI_CRUSH_V1.name == "mini-crush-v1"
    assert MINI_CRUSH_V1.threshold == 1e-10
    assert MINI_CRUSH_V1.test_ids == (
        "linearcomp.r0",
        "linearcomp.r29",
        "collisionover.a",
        "collisionover.b",
        "closepairs.a",
        "closepairs.b",
        "randomwalk.a",
        "randomwalk.b",
        "serial.a",
    )
    assert BUILTIN_BATTERIES["mini-crush-v1"] is MINI_CRUSH_V1


def test_builtin_battery_parameters_are_in_regime():
    by_id = {t.id: t.params for t in MINI_CRUSH_V1.tests}
    for key in ("collisionover.a", "collisionover.b"):
        p = by_id[key]
        assert p["d"] ** p["t"] >= 4 * p["n"], key
    assert by_id["linearcomp.r0"]["n_bits"] == 50000
    assert by_id["linearcomp.r0"]["n_bits"] >= 2 * 19937 + 1000


def test_battery_rejects_duplicate_ids():
    t = TestDefinition("x", "SerialUniformity", {"n": 1000, "cells": 10})
    with pytest.raises(ValueError, match="unique"):
        Battery("b", 1e-10, (t, t))


def test_battery_rejects_bad_threshold():
    t = TestDefinition("x", "SerialUniformity", {"n": 1000, "cells": 10})
    for bad in (0.0, 0.5, 1.0, -1e-10):
        with pytest.raises(ValueError, match="threshold"):
            Battery("b", bad, (t,))


def test_battery_rejects_unknown_family_and_bad_params():
    with pytest.raises(ValueError, match="unknown family"):
        Battery("b", 1e-10, (TestDefinition("x", "Mystery", {}),))
    with pytest.raises(ValueError, match="test x"):
        Battery(
            "b", 1e-10, (TestDefinition("x", "SerialUniformity", {"n": 5, "cells": 10}),)
        )
    with pytest.raises(ValueError, match="test x"):
        Battery("b", 1e-10, (TestDefinition("x", "SerialUniformity", {"n": 1000}),))


def test_dump_battery_is_stable_and_parseable():
    text = dump_battery(MINI_CRUSH_V1)
    assert text.endswith("\n")
    assert dump_battery(MINI_CRUSH_V1) == text
    doc = json.loads(text)
    assert doc["name"] == "mini-crush-v1"
    assert doc["threshold"] == 1e-10
    assert [t["id"] for t in doc["tests"]] == list(MINI_CRUSH_V1.test_ids)


def test_battery_sha256_tracks_content():
    base = battery_sha256(MINI_CRUSH_V1)
    assert len(base) == 64
    assert battery_sha256(MINI_CRUSH_V1) == base
    variant = Battery(MINI_CRUSH_V1.name, 1e-9, MINI_CRUSH_V1.tests)
    assert battery_sha256(variant) != base


def test_load_battery_builtin_and_file_roundtrip(tmp_path):
    assert load_battery("mini-crush-v1") is MINI_CRUSH_V1
    path = tmp_path / "custom.json"
    path.write_text(dump_battery(MINI_CRUSH_V1))
    loaded = load_battery(str(path))
    assert loaded.name == MINI_CRUSH_V1.name
    assert loaded.threshold == MINI_CRUSH_V1.threshold
    assert loaded.test_ids == MINI_CRUSH_V1.test_ids
    assert dump_battery(loaded) == dump_battery(MINI_CRUSH_V1)
    assert battery_sha256(loaded) == battery_sha256(MINI_CRUSH_V1)


def test_load_battery_unknown_name_errors():
    with pytest.raises(FileNotFoundError, match="unknown battery"):
        load_battery("maxi-crush-v9")


def test_load_battery_malformed_file_errors(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "b", "threshold": 1e-10, "tests": [{"id": "x"}]}')
    with pytest.raises(ValueError, match="malformed battery file"):
        load_battery(str(path))
