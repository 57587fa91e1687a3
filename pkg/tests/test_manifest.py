"""
Tests for dataset manifests.
"""

# ----

import json
from pathlib import Path

import numpy
import pytest

from behgan.dataio.glyph import GlyphImage, save_image
from behgan.dataio.manifest import (
    MANIFEST_NAME,
    ManifestRecord,
    build_manifest,
    merge_manifests,
    read_manifest,
    split_manifest,
    subset_manifest,
    validate_manifest,
    write_manifest,
)
from behgan.exceptions import DataIOError, LabelLengthMismatch, MissingLabel

# ----


def test_build_counts_by_length(dataset_root, latin_vocab):
    manifest = build_manifest(dataset_root, latin_vocab)
    assert manifest.counts_by_length == {1: 8, 2: 6, 3: 4}
    assert all(r.provenance == "raw" for r in manifest.records)
    assert manifest.by_length(3)[0].label == "klm"
    assert "all" in manifest.summary()


def test_empty_root_counts_zero_per_length(tmp_path, latin_vocab):
    manifest = build_manifest(tmp_path / "empty", latin_vocab)
    assert len(manifest) == 0
    assert manifest.counts_by_length == {1: 0, 2: 0, 3: 0}


def test_write_and_read(dataset_root, latin_vocab):
    manifest = build_manifest(dataset_root, latin_vocab)
    write_manifest(manifest, dataset_root / MANIFEST_NAME)
    first = json.loads((dataset_root / MANIFEST_NAME).read_text(encoding="utf-8").splitlines()[0])
    assert first["image_path"] == "one/00001.png"
    loaded = read_manifest(dataset_root)
    assert [(r.label, r.n_chars) for r in loaded.records] == [(r.label, r.n_chars) for r in manifest.records]
    assert [Path(r.image_path).resolve() for r in loaded.records] == [
        Path(r.image_path).resolve() for r in manifest.records
    ]


def test_missing_label(dataset_root, latin_vocab):
    (dataset_root / "two" / "00001.txt").unlink()
    with pytest.raises(MissingLabel):
        build_manifest(dataset_root, latin_vocab)


def test_label_length_mismatch(dataset_root, latin_vocab):
    (dataset_root / "two" / "00001.txt").write_text("klm\n", encoding="utf-8")
    with pytest.raises(LabelLengthMismatch):
        build_manifest(dataset_root, latin_vocab)


def test_unknown_directories_are_ignored(dataset_root, latin_vocab):
    (dataset_root / "notes").mkdir()
    assert len(build_manifest(dataset_root, latin_vocab)) == 18


def test_record_checks():
    with pytest.raises(DataIOError):
        ManifestRecord(image_path="a.png", label="k", n_chars=1, provenance="scanned")
    with pytest.raises(LabelLengthMismatch):
        ManifestRecord(image_path="a.png", label="kl", n_chars=1)


def test_split_is_disjoint_and_stratified(dataset_root, latin_vocab):
    manifest = build_manifest(dataset_root, latin_vocab)
    (kept, held) = split_manifest(manifest, fraction=0.5, seed=3)
    assert len(kept) + len(held) == len(manifest)
    assert not {r.image_path for r in kept.records} & {r.image_path for r in held.records}
    assert held.counts_by_length == {1: 4, 2: 3, 3: 2}
    again = split_manifest(manifest, fraction=0.5, seed=3)[1]
    assert again.records == held.records
    with pytest.raises(DataIOError):
        split_manifest(manifest, fraction=1.0, seed=3)


def test_subset_and_merge(dataset_root, latin_vocab):
    manifest = build_manifest(dataset_root, latin_vocab)
    subset = subset_manifest(manifest, n_records=5, seed=0)
    assert len(subset) == 5
    assert set(subset.records) <= set(manifest.records)
    assert subset_manifest(manifest, n_records=100, seed=0) is manifest
    assert len(merge_manifests(manifest, subset)) == 23


def test_validate_flags_bad_geometry(dataset_root, latin_vocab):
    manifest = build_manifest(dataset_root, latin_vocab)
    assert validate_manifest(manifest) == []
    bad = GlyphImage(pixels=numpy.full((30, 20), 255, dtype=numpy.uint8), n_chars=1)
    save_image(bad, manifest.records[0].image_path)
    issues = validate_manifest(manifest)
    assert [path for path, _ in issues] == [manifest.records[0].image_path]
