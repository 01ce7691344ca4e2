import json

import pytest

from addcomb import RecordStore


def test_append_and_read(tmp_path):
    store = RecordStore(tmp_path / "records.jsonl")
    store.append({"type": "qk", "value": 1})
    store.append({"type": "qk", "value": 2})
    records = store.read_all()
    assert [r["value"] for r in records] == [1, 2]
    assert all(r["schema_version"] == 1 for r in records)


def test_corrupt_trailing_line_tolerated(tmp_path):
    path = tmp_path / "records.jsonl"
    store = RecordStore(path)
    store.append({"type": "qk", "value": 1})
    with open(path, "ab") as fh:
        fh.write(b'{"type": "qk", "val')  # interrupted write
    assert [r["value"] for r in store.read_all()] == [1]
    # appending truncates the bad tail and continues
    store.append({"type": "qk", "value": 2})
    assert [r["value"] for r in store.read_all()] == [1, 2]
    lines = path.read_bytes().decode().strip().split("\n")
    assert all(json.loads(line) for line in lines)


def test_corrupt_mid_file_raises(tmp_path):
    path = tmp_path / "records.jsonl"
    path.write_text('{"a": 1}\nnot json\n{"b": 2}\n')
    with pytest.raises(ValueError, match="corrupt record mid-file"):
        RecordStore(path).read_all()


def test_trailing_scalar_treated_as_corrupt(tmp_path):
    path = tmp_path / "records.jsonl"
    path.write_text('{"a": 1}\n42')
    assert RecordStore(path).read_all() == [{"a": 1}]


def test_last_checkpoint(tmp_path):
    store = RecordStore(tmp_path / "records.jsonl")
    store.append({"type": "checkpoint", "config_key": "x", "frontier": {"r": 1}})
    store.append({"type": "checkpoint", "config_key": "y", "frontier": {"r": 5}})
    store.append({"type": "checkpoint", "config_key": "x", "frontier": {"r": 9}})
    found = store.last_checkpoint("x")
    assert found is not None and found["frontier"]["r"] == 9
    assert store.last_checkpoint("z") is None


def test_missing_file_reads_empty(tmp_path):
    assert RecordStore(tmp_path / "nope.jsonl").read_all() == []
