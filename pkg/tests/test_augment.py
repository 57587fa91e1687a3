"""
Tests for geometric augmentation.
"""

# ----

from dataclasses import replace

import numpy
import pytest

from behgan.dataio.augment import AugmentParams, augment, augment_manifest, load_augment_params
from behgan.dataio.manifest import build_manifest, read_manifest
from behgan.exceptions import DataIOError

# ----


def test_default_params_from_config():
    params = load_augment_params()
    assert params == AugmentParams()
    assert params.copies_per_image == 3


def test_config_override(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("augment:\n  copies_per_image: 5\n  rotation_range: 0.0\n", encoding="utf-8")
    params = load_augment_params(yaml_file=str(path))
    assert params.copies_per_image == 5
    assert params.rotation_range == 0.0
    assert params.scale_range == (0.9, 1.1)


@pytest.mark.parametrize(
    "kwargs", [{"copies_per_image": 0}, {"scale_range": (1.2, 1.0)}, {"rotation_range": -1.0}]
)
def test_invalid_params(kwargs):
    with pytest.raises(DataIOError):
        AugmentParams(**kwargs)


def test_copies_keep_geometry_and_background(draw):
    img = draw([0, 1, 2])
    copies = augment(img, AugmentParams(copies_per_image=4), seed=7)
    assert len(copies) == 4
    for copy in copies:
        assert copy.pixels.shape == img.pixels.shape
        assert copy.n_chars == 3
        assert copy.pixels[0, 0] == 255


def test_augment_is_seeded(draw):
    img = draw([3, 4])
    (a, b) = (augment(img, AugmentParams(), seed=1), augment(img, AugmentParams(), seed=1))
    for x, y in zip(a, b):
        numpy.testing.assert_array_equal(x.pixels, y.pixels)


def test_identity_ranges_copy_input(draw):
    img = draw([1])
    params = AugmentParams(scale_range=(1.0, 1.0), rotation_range=0.0, translation_range=0.0)
    for copy in augment(img, params, seed=0):
        numpy.testing.assert_array_equal(copy.pixels, img.pixels)


def test_augment_manifest_expands(dataset_root, latin_vocab, tmp_path):
    manifest = build_manifest(dataset_root, latin_vocab)
    params = replace(AugmentParams(), copies_per_image=2)
    out = augment_manifest(manifest, params, seed=0, out_root=tmp_path / "aug")
    assert len(out) == 3 * len(manifest)
    assert sum(r.provenance == "augmented" for r in out.records) == 2 * len(manifest)
    assert out.records[1].label == out.records[0].label
    assert len(read_manifest(tmp_path / "aug")) == len(out)
    assert out.counts_by_length == {n: 3 * c for n, c in manifest.counts_by_length.items()}
