"""
Tests for word images: normalization, slot-grid resizing and the
quality gate.
"""

# ----

import numpy
import pytest
from PIL import Image

from behgan.dataio.glyph import (
    GlyphImage,
    dirname_for_length,
    ink_ratio,
    length_for_dirname,
    load_image,
    normalize_background,
    quality_gate,
    resize_to_slots,
    save_image,
)
from behgan.exceptions import BlankImage, DataIOError, InvalidCharCount

# ----


def _raw_scan(height=60, width=100, paper=180, ink=60):
    pixels = numpy.full((height, width), paper, dtype=numpy.uint8)
    pixels[10:50, 20:26] = ink
    pixels[25:30, 15:85] = ink
    return GlyphImage(pixels=pixels, n_chars=3)


def test_invalid_images():
    with pytest.raises(DataIOError):
        GlyphImage(pixels=numpy.zeros((2, 2, 3), dtype=numpy.uint8), n_chars=1)
    with pytest.raises(InvalidCharCount):
        GlyphImage(pixels=numpy.zeros((32, 16), dtype=numpy.uint8), n_chars=0)


def test_length_directories():
    assert [dirname_for_length(n) for n in (1, 2, 3, 4)] == ["one", "two", "three", "len_4"]
    assert length_for_dirname("three") == 3
    assert length_for_dirname("len_12") == 12
    assert length_for_dirname("misc") is None


def test_normalize_maps_paper_to_white():
    img = normalize_background(_raw_scan())
    assert numpy.median(img.pixels) == 255
    assert img.pixels.min() == 0


def test_normalize_is_idempotent():
    once = normalize_background(_raw_scan())
    twice = normalize_background(once)
    numpy.testing.assert_array_equal(once.pixels, twice.pixels)


def test_uniform_image_is_blank():
    with pytest.raises(BlankImage):
        normalize_background(GlyphImage(pixels=numpy.full((32, 48), 200, dtype=numpy.uint8), n_chars=3))


@pytest.mark.parametrize("shape", [(60, 100), (20, 200), (32, 48), (128, 30)])
@pytest.mark.parametrize("n_chars", [1, 3, 5])
def test_resize_to_slot_grid(shape, n_chars):
    pixels = numpy.full(shape, 255, dtype=numpy.uint8)
    pixels[shape[0] // 4 : shape[0] // 2, :] = 0
    img = resize_to_slots(GlyphImage(pixels=pixels, n_chars=n_chars), n_chars=n_chars)
    assert img.pixels.shape == (32, 16 * n_chars)
    assert img.is_slot_grid()
    assert img.violations() == []


def test_violations_report_geometry(draw):
    img = draw([0, 1])
    assert img.violations() == []
    wrong = GlyphImage(pixels=img.pixels[:, :20], n_chars=2)
    assert any("geometry" in v for v in wrong.violations())


def test_quality_gate(draw):
    assert quality_gate(draw([0, 1, 2]), n_chars=3)
    dark = GlyphImage(pixels=numpy.zeros((32, 16), dtype=numpy.uint8), n_chars=1)
    assert not quality_gate(dark, n_chars=1)
    speckle = numpy.full((32, 16), 255, dtype=numpy.uint8)
    speckle[::4, ::4] = 0
    assert not quality_gate(GlyphImage(pixels=speckle, n_chars=1), n_chars=1)


def test_ink_ratio(draw):
    img = draw([0])
    assert 0.005 <= ink_ratio(img) <= 0.40


def test_save_and_load(tmp_path, draw):
    img = draw([2, 3])
    save_image(img, tmp_path / "two" / "00001.png")
    loaded = load_image(tmp_path / "two" / "00001.png", n_chars=2)
    numpy.testing.assert_array_equal(loaded.pixels, img.pixels)
    with Image.open(tmp_path / "two" / "00001.png") as pil:
        assert pil.mode == "L"


def test_transparency_composites_on_white(tmp_path):
    rgba = numpy.zeros((32, 16, 4), dtype=numpy.uint8)
    rgba[10:20, 5:8] = (0, 0, 0, 255)
    Image.fromarray(rgba).save(tmp_path / "a.png")
    img = load_image(tmp_path / "a.png", n_chars=1)
    assert img.pixels[0, 0] == 255
    assert img.pixels[15, 6] == 0


def test_missing_file(tmp_path):
    with pytest.raises(DataIOError):
        load_image(tmp_path / "missing.png", n_chars=1)
