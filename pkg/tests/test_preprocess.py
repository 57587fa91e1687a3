"""
Tests for raw dataset preprocessing.
"""

# ----

import numpy

from behgan.dataio.glyph import GlyphImage, load_image, save_image
from behgan.dataio.manifest import MANIFEST_NAME, read_manifest
from behgan.dataio.preprocess import preprocess_image, preprocess_tree

# ----


def _scan(width, paper=170, ink=50):
    pixels = numpy.full((70, width), paper, dtype=numpy.uint8)
    pixels[15:55, 10:16] = ink
    pixels[30:36, 8 : width - 8] = ink
    return GlyphImage(pixels=pixels, n_chars=1)


def test_preprocess_image_reaches_slot_grid():
    img = preprocess_image(_scan(80), n_chars=2)
    assert img.is_slot_grid()
    assert numpy.median(img.pixels) == 255


def test_preprocess_image_gates_speckle():
    pixels = numpy.full((32, 32), 255, dtype=numpy.uint8)
    pixels[::3, ::3] = 0
    assert preprocess_image(GlyphImage(pixels=pixels, n_chars=1), n_chars=1) is None


def test_preprocess_tree(tmp_path, latin_vocab):
    src = tmp_path / "raw"
    for idx, (dirname, label, width) in enumerate([("one", "k", 40), ("two", "lm", 80), ("two", "np", 90)]):
        path = src / dirname / f"scan_{idx}.jpg"
        save_image(_scan(width), path.with_suffix(".png"))
        path.with_suffix(".txt").write_text(label, encoding="utf-8")
    save_image(GlyphImage(pixels=numpy.full((40, 60), 200, dtype=numpy.uint8), n_chars=1), src / "one" / "blank.png")
    (src / "one" / "blank.txt").write_text("p", encoding="utf-8")

    manifest = preprocess_tree(src, tmp_path / "clean", latin_vocab)
    assert manifest.counts_by_length == {1: 1, 2: 2, 3: 0}
    assert (tmp_path / "clean" / MANIFEST_NAME).is_file()
    assert sorted(r.label for r in read_manifest(tmp_path / "clean").records) == ["k", "lm", "np"]
    for record in manifest.records:
        assert load_image(record.image_path, n_chars=record.n_chars).violations() == []
    assert (tmp_path / "clean" / "two" / "00002.txt").read_text(encoding="utf-8").strip() in ("lm", "np")
