"""Document store: atomicity, locking, key handling."""

import threading

import pytest

from nephrocare.diary import BlobStore, JsonStore


def test_read_missing_returns_none(store):
    assert store.read("patients/nope") is None


def test_write_read_round_trip(store):
    store.write("patients/abc", {"profile": {"id": "abc"}})
    assert store.read("patients/abc") == {"profile": {"id": "abc"}}


def test_update_creates_default(store):
    store.update("counters/x", lambda d: d.__setitem__("n", d.get("n", 0) + 1))
    assert store.read("counters/x") == {"n": 1}


def test_concurrent_updates_do_not_lose_writes(store):
    def bump():
        for _ in range(50):
            store.update("counters/shared", lambda d: d.__setitem__("n", d.get("n", 0) + 1))

    threads = [threading.Thread(target=bump) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert store.read("counters/shared")["n"] == 200


def test_list_keys(store):
    store.write("patients/b", {})
    store.write("patients/a", {})
    store.write("doctors/c", {})
    assert store.list_keys("patients") == ["a", "b"]
    assert store.list_keys("missing") == []


def test_key_escape_rejected(store):
    with pytest.raises(ValueError):
        store.write("../outside", {})


def test_no_temp_files_left_behind(store, tmp_path):
    for i in range(10):
        store.write("patients/x", {"i": i})
    leftovers = list((tmp_path / "store").rglob(".tmp-*"))
    assert leftovers == []


def test_blob_content_addressing(blobs):
    ref = blobs.put(b"image-bytes")
    again = blobs.put(b"image-bytes")
    assert ref == again
    assert ref.split("/")[0] == ref.split("/")[1][:2]
    assert blobs.get(ref) == b"image-bytes"
    assert blobs.exists(ref)
    assert not blobs.exists("aa/" + "0" * 64)


def test_blob_layout_on_disk(tmp_path):
    blobs = BlobStore(tmp_path / "b")
    ref = blobs.put(b"xyz")
    first2, digest = ref.split("/")
    assert (tmp_path / "b" / first2 / digest).is_file()
